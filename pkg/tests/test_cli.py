import json

import pytest

from genhyper.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_info_json(capsys):
    code, out, _ = run(capsys, "group", "info", "--name", "F20", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["order"] == 20 and data["rank"] == 2 and data["frattini_order"] == 1


def test_lattice_csv(capsys):
    code, out, _ = run(capsys, "lattice", "--construct", "symmetric:3", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "id,order,index,moebius,maximal,normal"
    assert len(lines) == 7


def test_hypergraph_text_and_dot(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "hypergraph", "--construct", "quaternion8", "--kind", "gamma",
                       "--dot", str(dot))
    assert code == 0
    assert any(line.split() == ["hyperedge_count", "12"] for line in out.splitlines())
    assert dot.read_text().startswith('graph "quaternion8"')


def test_dirichlet_recover(capsys):
    code, out, _ = run(capsys, "dirichlet", "--name", "A4", "--t", "1,2", "--recover",
                       "--bruteforce", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["round_trip"] is True
    assert data["P"] == data["P_bruteforce"]


def test_solvable_a5(capsys):
    code, out, _ = run(capsys, "solvable", "--name", "A5", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["solvable_detector"] is False and data["solvable_oracle"] is False


def test_solvable_single_prime(capsys):
    code, out, _ = run(capsys, "solvable", "--name", "S4", "--p", "3", "--format", "json")
    assert code == 0 and json.loads(out)["3-solvable_detector"] is True


def test_mgse_structure(capsys):
    code, out, _ = run(capsys, "mgse", "--name", "F20", "--structure", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["mgse"] is False and data["structure"]["predicted_mgse"] is False


def test_corpus_run(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"version": 1, "groups": [
        {"name": "S3", "construction": "symmetric", "params": {"n": 3}},
        {"name": "F20", "degree": 5, "generators": ["(2,3,4,5)", "(1,2,3,5,4)"]},
    ]}))
    code, out, _ = run(capsys, "corpus", "run", "--suite", str(path), "--format", "csv", "--jobs", "2")
    assert code == 0
    assert out.splitlines()[0].startswith("name,order,rank")
    assert len(out.strip().splitlines()) == 3


def test_exit_code_parse_error(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"name": "x", "degree": 3, "generators": ["(1,2"]}))
    code, _, err = run(capsys, "group", "info", "--group", str(path))
    assert code == 2 and "offset 4" in err


@pytest.mark.parametrize("argv", [
    ["group", "info"],
    ["group", "info", "--name", "nosuch"],
    ["group", "info", "--construct", "cyclic:3", "--name", "S3"],
    ["solvable", "--name", "S3", "--p", "6"],
    ["group", "info", "--group", "/nonexistent.json"],
])
def test_exit_code_input_errors(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_exit_code_limits(capsys):
    assert run(capsys, "lattice", "--construct", "symmetric:6")[0] == 3
    assert run(capsys, "mgse", "--construct", "symmetric:6")[0] == 3


def test_exit_code_skipped_corpus_row(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps([{"name": "S6", "construction": "symmetric", "params": {"n": 6}}]))
    code, out, err = run(capsys, "corpus", "run", "--suite", str(path))
    assert code == 3 and "skipped" in out


def test_exit_code_violation(monkeypatch, tmp_path, capsys):
    from genhyper import corpus

    real = corpus._fill_row

    def broken(row, spec, config):
        real(row, spec, config)
        row.checks["injected"] = False

    monkeypatch.setattr(corpus, "_fill_row", broken)
    path = tmp_path / "c.json"
    path.write_text(json.dumps([{"name": "S3", "construction": "symmetric", "params": {"n": 3}}]))
    code, _, err = run(capsys, "corpus", "run", "--suite", str(path))
    assert code == 1 and "S3" in err
