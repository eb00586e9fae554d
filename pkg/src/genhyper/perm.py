"""Permutations on {0, ..., degree-1} and cycle-notation parsing.

Products act left to right: ``compose(a, b)`` applies ``a`` first, then ``b``.
Cycle strings are 1-based, as they are usually written by hand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, ParseError


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InputError(f"not a bijection on {len(imgs)} points: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its least point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            p = self.images[start]
            while p != start:
                cyc.append(p)
                seen.add(p)
                p = self.images[p]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def to_cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)

    def __str__(self):
        return self.to_cycle_string()


def compose(a: Permutation, b: Permutation) -> Permutation:
    if a.degree != b.degree:
        raise InputError(f"degree mismatch: {a.degree} vs {b.degree}")
    bi = b.images
    return Permutation(tuple(bi[p] for p in a.images))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for p, q in enumerate(a.images):
        inv[q] = p
    return Permutation(tuple(inv))


def element_order(a: Permutation) -> int:
    order = 1
    for c in a.cycles():
        order = math.lcm(order, len(c))
    return order


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of disjoint cycles such as ``"(1,2)(3,4)"``.

    Points are 1-based in the text. ``"()"`` (or an empty string) is the
    identity. Raises :class:`ParseError` with the character offset of the
    first problem.
    """
    if degree < 1:
        raise InputError(f"degree must be >= 1, got {degree}")
    images = list(range(degree))
    used: set[int] = set()
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    skip_ws()
    while pos < n:
        if text[pos] != "(":
            raise ParseError(f"expected '(' but found {text[pos]!r}", offset=pos)
        pos += 1
        cycle: list[int] = []
        skip_ws()
        if pos < n and text[pos] == ")":
            pos += 1
            skip_ws()
            continue
        while True:
            skip_ws()
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if start == pos:
                if pos >= n:
                    raise ParseError("unterminated cycle", offset=pos)
                raise ParseError(f"expected a point but found {text[pos]!r}", offset=pos)
            point = int(text[start:pos])
            if not 1 <= point <= degree:
                raise ParseError(f"point {point} out of range 1..{degree}", offset=start)
            if point in used:
                raise ParseError(f"point {point} repeated", offset=start)
            used.add(point)
            cycle.append(point - 1)
            skip_ws()
            if pos >= n:
                raise ParseError("unterminated cycle", offset=pos)
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == ")":
                pos += 1
                break
            raise ParseError(f"expected ',' or ')' but found {text[pos]!r}", offset=pos)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
        skip_ws()
    return Permutation(tuple(images))
