"""Permutations on points 0..d-1 and the named permutation groups.

Composition applies the right factor first: ``(a * b)(i) == a(b(i))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from importlib import resources
from math import factorial, lcm

from .errors import DegreeMismatch, UnknownName

_CYCLES_RE = re.compile(r"\s*(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)*")


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> Permutation:
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse disjoint-cycle notation such as ``(0 1 2)(3 4)``."""
        if not _CYCLES_RE.fullmatch(text):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle ({body})")
            if pts:
                cycles.append(pts)
        if any(pt >= degree for cyc in cycles for pt in cyc):
            raise ValueError(f"{text!r} moves a point outside 0..{degree - 1}")
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return perm_compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self):
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"


def perm_compose(a: Permutation, b: Permutation) -> Permutation:
    if a.degree != b.degree:
        raise DegreeMismatch(f"degree {a.degree} vs {b.degree}")
    return Permutation(tuple(a.images[i] for i in b.images))


def perm_order(p: Permutation) -> int:
    return reduce(lcm, (len(c) for c in p.cycles()), 1)


@dataclass(frozen=True)
class SporadicRecord:
    name: str
    degree: int
    expected_order: int
    generators: tuple[Permutation, ...]


def load_sporadic_generators(text: str | None = None) -> dict[str, SporadicRecord]:
    """Parse the shipped sporadic-generator data file (or ``text``)."""
    if text is None:
        text = resources.files("invcensus").joinpath("data/sporadic_generators.txt").read_text()
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            name, degree, order, gens = line.split(None, 3)
            degree, order = int(degree), int(order)
        except ValueError:
            raise ValueError(f"sporadic data line {lineno}: malformed {line!r}") from None
        perms = tuple(Permutation.parse(g, degree) for g in gens.split(";"))
        out[name] = SporadicRecord(name, degree, order, perms)
    return out


def expected_order(name: str) -> int:
    if name == "cyclic:2":
        return 2
    if name.startswith("alt:"):
        return factorial(int(name[4:])) // 2
    try:
        return load_sporadic_generators()[name].expected_order
    except KeyError:
        raise UnknownName(name) from None


def standard_generators(name: str) -> list[Permutation]:
    """Generators for ``alt:n`` (3 <= n <= 10), ``m11``, ``m12`` or ``cyclic:2``."""
    if name == "cyclic:2":
        return [Permutation((1, 0))]
    if name.startswith("alt:"):
        try:
            n = int(name[4:])
        except ValueError:
            raise UnknownName(name) from None
        if not 3 <= n <= 10:
            raise UnknownName(f"{name}: alternating degree must be in 3..10")
        return [Permutation.from_cycles(n, [[0, 1, k]]) for k in range(2, n)]
    records = load_sporadic_generators()
    if name not in records:
        raise UnknownName(name)
    return list(records[name].generators)
