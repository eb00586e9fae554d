"""Standard group constructions and group-definition files.

A group definition is a JSON object, either explicit generators::

    {"name": "F20", "degree": 5, "generators": ["(2,3,4,5)", "(1,2,3,5,4)"]}

or a named construction::

    {"name": "D12", "construction": "dihedral", "params": {"n": 6}}
    {"name": "C2xC6", "construction": "direct_product",
     "params": {"factors": [{"construction": "cyclic", "params": {"n": 2}},
                            {"construction": "cyclic", "params": {"n": 6}}]}}

A corpus file is ``{"version": ..., "groups": [<definition>, ...]}``.

Constructions and their parameters:

==================  ===================  ==========================
kind                params               order
==================  ===================  ==========================
cyclic              n                    n
dihedral            n                    2n
symmetric           n                    n!
alternating         n                    n!/2
elementary_abelian  p, k                 p^k
quaternion8         (none)               8
direct_product      factors              product of factor orders
semidirect_vx       q, p, delta          q^delta * p
==================  ===================  ==========================

On the command line the same constructions are written ``kind:a,b,c``
(positional, in the order above) and direct products as
``direct_product:cyclic:2*cyclic:6``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import InputError, ParseError
from .fields import field as gf, prime_power
from .group import DEGREE_CAP, ORDER_CAP, FiniteGroup, prime_factors, close
from .perm import Permutation, parse_cycles

KINDS = {
    "cyclic": ("n",),
    "dihedral": ("n",),
    "symmetric": ("n",),
    "alternating": ("n",),
    "elementary_abelian": ("p", "k"),
    "quaternion8": (),
    "direct_product": ("factors",),
    "semidirect_vx": ("q", "p", "delta"),
}


@dataclass
class GroupSpec:
    name: str
    degree: int | None = None
    generators: list[str] | None = None
    construction: str | None = None
    params: dict = field(default_factory=dict)
    lattice_only: bool = False

    @classmethod
    def from_dict(cls, data: dict, where: str = "") -> GroupSpec:
        if not isinstance(data, dict):
            raise InputError(f"{where}group definition must be an object")
        name = str(data.get("name", data.get("construction", "G")))
        lattice_only = bool(data.get("lattice_only", False))
        if "generators" in data:
            if "degree" not in data:
                raise InputError(f"{where}{name}: 'degree' is required with 'generators'")
            gens = data["generators"]
            if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
                raise InputError(f"{where}{name}: 'generators' must be a list of cycle strings")
            return cls(name, degree=int(data["degree"]), generators=list(gens),
                       lattice_only=lattice_only)
        kind = data.get("construction")
        if kind not in KINDS:
            raise InputError(f"{where}{name}: unknown construction {kind!r}")
        params = dict(data.get("params", {}))
        if kind == "direct_product":
            params["factors"] = [f if isinstance(f, GroupSpec) else cls.from_dict(f, where)
                                 for f in params.get("factors", [])]
        return cls(name, construction=kind, params=params, lattice_only=lattice_only)

    def to_dict(self) -> dict:
        if self.generators is not None:
            out = {"name": self.name, "degree": self.degree, "generators": self.generators}
        else:
            params = dict(self.params)
            if "factors" in params:
                params["factors"] = [f.to_dict() for f in params["factors"]]
            out = {"name": self.name, "construction": self.construction, "params": params}
        if self.lattice_only:
            out["lattice_only"] = True
        return out


def _perm_from_images(images) -> Permutation:
    return Permutation(tuple(images))


def cyclic(n: int) -> list[Permutation]:
    if n < 1:
        raise InputError("cyclic group needs n >= 1")
    return [_perm_from_images([(i + 1) % n for i in range(n)])]


def dihedral(n: int) -> list[Permutation]:
    """Dihedral group of order 2n acting on the n-gon (n >= 3)."""
    if n < 3:
        raise InputError("dihedral(n) needs n >= 3; use direct_product for n = 2")
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return [_perm_from_images(rot), _perm_from_images(ref)]


def symmetric(n: int) -> list[Permutation]:
    if n < 1:
        raise InputError("symmetric group needs n >= 1")
    if n == 1:
        return [Permutation.identity(1)]
    if n == 2:
        return [_perm_from_images([1, 0])]
    return [parse_cycles("(1,2)", n), parse_cycles("(" + ",".join(map(str, range(1, n + 1))) + ")", n)]


def alternating(n: int) -> list[Permutation]:
    if n < 1:
        raise InputError("alternating group needs n >= 1")
    if n < 3:
        return [Permutation.identity(n)]
    return [parse_cycles(f"(1,2,{k})", n) for k in range(3, n + 1)]


def quaternion8() -> list[Permutation]:
    """Q8 in its right regular representation on 8 points."""
    # units 1, i, j, k; product table of units with sign
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, u) for s in (1, -1) for u in range(4)]
    index = {e: i for i, e in enumerate(elems)}

    def right_mult(g):
        imgs = []
        for s, u in elems:
            sg, ug = g
            sm, um = unit_mul[(u, ug)]
            imgs.append(index[(s * sg * sm, um)])
        return _perm_from_images(imgs)

    return [right_mult((1, 1)), right_mult((1, 2))]


def direct_product_gens(factor_gens: list[list[Permutation]]) -> list[Permutation]:
    degrees = [fg[0].degree for fg in factor_gens]
    total = sum(degrees)
    out = []
    offset = 0
    for gens, deg in zip(factor_gens, degrees):
        for g in gens:
            imgs = list(range(total))
            for p in range(deg):
                imgs[offset + p] = offset + g.images[p]
            out.append(_perm_from_images(imgs))
        offset += deg
    return out


def semidirect_vx(q: int, p: int, delta: int) -> list[Permutation]:
    """``V^delta x| <x>`` with V = GF(q) and x an order-p scalar.

    Acts on ``q * delta`` points: point ``k*q + a`` is field element ``a``
    in coordinate ``k``; elements are the maps ``a -> s*a + w_k``.
    """
    if prime_factors(p) != [p]:
        raise InputError(f"p = {p} must be prime")
    prime_power(q)
    if (q - 1) % p:
        raise InputError(f"p = {p} does not divide q - 1 = {q - 1}")
    if delta < 1:
        raise InputError("delta must be >= 1")
    F = gf(q)
    zeta = F.elements_of_order(p)[0]
    deg = q * delta
    scal = [k * q + int(F.mul[zeta, a]) for k in range(delta) for a in range(q)]
    gens = [_perm_from_images(scal)]
    for k in range(delta):
        for i in range(F.k):
            b = F.p ** i
            imgs = list(range(deg))
            for a in range(q):
                imgs[k * q + a] = k * q + int(F.add[a, b])
            gens.append(_perm_from_images(imgs))
    return gens


def vx_coordinates(G: FiniteGroup, q: int, delta: int, idx: int) -> tuple[list[int], int]:
    """Translation vector and scalar of element ``idx`` of a ``semidirect_vx`` group."""
    F = gf(q)
    img = G.elements[idx]
    w = [int(img[k * q]) - k * q for k in range(delta)]
    s = F.sub(int(img[1]), w[0])
    return w, s


def _int_param(params, key, kind):
    if key not in params:
        raise InputError(f"{kind}: missing parameter {key!r}")
    try:
        return int(params[key])
    except (TypeError, ValueError):
        raise InputError(f"{kind}: parameter {key!r} must be an integer") from None


def spec_generators(spec: GroupSpec, degree_cap: int = DEGREE_CAP) -> list[Permutation]:
    if spec.generators is not None:
        if not 1 <= spec.degree <= degree_cap:
            raise InputError(f"{spec.name}: degree {spec.degree} outside 1..{degree_cap}")
        gens = []
        for i, text in enumerate(spec.generators):
            try:
                gens.append(parse_cycles(text, spec.degree))
            except ParseError as exc:
                raise ParseError(f"{spec.name}: generator {i} {text!r}: {exc.reason}",
                                 offset=exc.offset) from None
        return gens or [Permutation.identity(spec.degree)]
    kind, params = spec.construction, spec.params
    if kind == "cyclic":
        gens = cyclic(_int_param(params, "n", kind))
    elif kind == "dihedral":
        gens = dihedral(_int_param(params, "n", kind))
    elif kind == "symmetric":
        gens = symmetric(_int_param(params, "n", kind))
    elif kind == "alternating":
        gens = alternating(_int_param(params, "n", kind))
    elif kind == "elementary_abelian":
        p, k = _int_param(params, "p", kind), _int_param(params, "k", kind)
        if prime_factors(p) != [p] or k < 1:
            raise InputError("elementary_abelian needs a prime p and k >= 1")
        gens = direct_product_gens([cyclic(p)] * k)
    elif kind == "quaternion8":
        gens = quaternion8()
    elif kind == "direct_product":
        factors = params.get("factors") or []
        if not factors:
            raise InputError("direct_product needs at least one factor")
        gens = direct_product_gens([spec_generators(f, degree_cap) for f in factors])
    elif kind == "semidirect_vx":
        gens = semidirect_vx(_int_param(params, "q", kind), _int_param(params, "p", kind),
                             _int_param(params, "delta", kind))
    else:
        raise InputError(f"unknown construction {kind!r}")
    if gens[0].degree > degree_cap:
        raise InputError(f"{spec.name}: degree {gens[0].degree} exceeds cap {degree_cap}")
    return gens


def build(spec: GroupSpec, order_cap: int = ORDER_CAP, degree_cap: int = DEGREE_CAP) -> FiniteGroup:
    return close(spec_generators(spec, degree_cap), name=spec.name, order_cap=order_cap)


def expected_order(spec: GroupSpec) -> int | None:
    """Order predicted by the construction formula (None for generator lists)."""
    k, p = spec.construction, spec.params
    if k == "cyclic":
        return int(p["n"])
    if k == "dihedral":
        return 2 * int(p["n"])
    if k == "symmetric":
        return math.factorial(int(p["n"]))
    if k == "alternating":
        n = int(p["n"])
        return max(1, math.factorial(n) // 2)
    if k == "elementary_abelian":
        return int(p["p"]) ** int(p["k"])
    if k == "quaternion8":
        return 8
    if k == "direct_product":
        return math.prod(expected_order(f) or 0 for f in p["factors"])
    if k == "semidirect_vx":
        return int(p["q"]) ** int(p["delta"]) * int(p["p"])
    return None


def _loads(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", offset=exc.pos,
                         line=exc.lineno, column=exc.colno) from None


def load_group_file(path) -> GroupSpec:
    path = Path(path)
    data = _loads(path.read_text(), str(path))
    if isinstance(data, dict) and "groups" in data:
        groups = data["groups"]
        if len(groups) != 1:
            raise InputError(f"{path}: expected a single group, found {len(groups)}")
        data = groups[0]
    return GroupSpec.from_dict(data, f"{path}: ")


def load_corpus_file(path) -> list[GroupSpec]:
    path = Path(path)
    data = _loads(path.read_text(), str(path))
    return _corpus_from_data(data, f"{path}: ")


def _corpus_from_data(data, where) -> list[GroupSpec]:
    if isinstance(data, dict) and "groups" in data:
        entries = data["groups"]
    elif isinstance(data, list):
        entries = data
    else:
        entries = [data]
    return [GroupSpec.from_dict(e, where) for e in entries]


def default_corpus() -> list[GroupSpec]:
    text = resources.files("genhyper").joinpath("data/default_corpus.json").read_text()
    return _corpus_from_data(json.loads(text), "default corpus: ")


def corpus_entry(name: str) -> GroupSpec:
    for spec in default_corpus():
        if spec.name == name:
            return spec
    raise InputError(f"no corpus group named {name!r}")


def parse_construct(text: str) -> GroupSpec:
    """``kind:a,b,...`` or ``direct_product:kind:a*kind:b``."""
    text = text.strip()
    kind, _, rest = text.partition(":")
    if kind not in KINDS:
        raise InputError(f"unknown construction {kind!r}")
    if kind == "direct_product":
        factors = [parse_construct(part) for part in rest.split("*") if part.strip()]
        return GroupSpec(text, construction=kind, params={"factors": factors})
    names = KINDS[kind]
    values = [v.strip() for v in rest.split(",")] if rest.strip() else []
    if len(values) != len(names):
        raise InputError(f"{kind} takes {len(names)} parameter(s) {names}, got {len(values)}")
    try:
        params = {k: int(v) for k, v in zip(names, values)}
    except ValueError:
        raise InputError(f"{kind}: parameters must be integers") from None
    return GroupSpec(text, construction=kind, params=params)
