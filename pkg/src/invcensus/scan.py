"""The catalog of constructible simple groups and the conjecture scanners."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .cache import GroupProfile, SpectrumCache, profile_of
from .census import group_order_formula
from .engine import DEFAULT_CAP, Group, OrderSpectrum, order_spectrum
from .groups import FamilyId, GroupId, build_group
from .numtheory import prime_power

log = logging.getLogger(__name__)

# known coincidences among catalog members; labels are documentation only
ISO_CLASSES = {
    "alt:5": "A5",
    "psl2:4": "A5",
    "psl2:5": "A5",
    "alt:6": "A6",
    "psl2:9": "A6",
    "psl2:7": "L2(7)",
    "psl3:2": "L2(7)",
    "alt:8": "A8=L4(2)",
}


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    family: FamilyId
    expected_order: int
    iso_class: str | None = None


class CatalogIntegrityError(AssertionError):
    pass


def _candidate_ids() -> list[str]:
    ids = [f"alt:{n}" for n in range(5, 11)]
    ids += [f"psl2:{q}" for q in range(4, 126) if prime_power(q)]
    ids += [f"psl3:{q}" for q in (2, 3, 4, 5)]
    ids += [f"psu3:{q}" for q in (3, 4, 5)]
    ids += ["psp4:3", "m11", "m12"]
    return ids


def build_catalog(max_order: int) -> list[CatalogEntry]:
    """Every catalog group of order <= max_order, sorted by (order, id)."""
    out = []
    for text in _candidate_ids():
        gid = GroupId.parse(text)
        order = group_order_formula(gid.family)
        if order <= max_order:
            out.append(CatalogEntry(text, gid.family, order, ISO_CLASSES.get(text)))
    return sorted(out, key=lambda e: (e.expected_order, e.id))


def compute_profile(group_id: str, cap: int = DEFAULT_CAP) -> GroupProfile:
    return profile_of(build_group(group_id, cap))


def _compute_checked(args) -> GroupProfile:
    group_id, expected, cap = args
    prof = compute_profile(group_id, cap)
    if expected is not None and prof.order != expected:
        raise CatalogIntegrityError(f"{group_id}: enumerated order {prof.order} != expected {expected}")
    return prof


def load_profiles(
    catalog: Iterable[CatalogEntry],
    cache: SpectrumCache | None = None,
    workers: int = 1,
    cap: int = DEFAULT_CAP,
) -> dict[str, GroupProfile]:
    """Profiles for every entry, from the cache where valid, else computed.

    The result does not depend on ``workers`` or on the cache state.
    """
    catalog = list(catalog)
    out: dict[str, GroupProfile] = {}
    todo = []
    for e in catalog:
        prof = cache.load(e.id, e.expected_order) if cache is not None else None
        if prof is not None:
            out[e.id] = prof
        else:
            todo.append((e.id, e.expected_order, cap))
    # largest first keeps the pool busy
    todo.sort(key=lambda t: -t[1])
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(_compute_checked, todo))
    else:
        computed = [_compute_checked(t) for t in todo]
    for prof in computed:
        out[prof.id] = prof
        if cache is not None:
            cache.store(prof)
    return {e.id: out[e.id] for e in catalog}


@dataclass(frozen=True)
class CollisionRecord:
    id_a: str
    id_b: str
    i2: int
    order_a: int
    order_b: int
    same_order: bool
    odd_prime_matches: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "idA": self.id_a,
            "idB": self.id_b,
            "i2": self.i2,
            "orderA": self.order_a,
            "orderB": self.order_b,
            "sameOrder": self.same_order,
            "oddPrimeMatches": list(self.odd_prime_matches),
        }


def odd_prime_matches(a: OrderSpectrum, b: OrderSpectrum) -> tuple[int, ...]:
    """Odd primes in both prime spectra with equal element counts."""
    common = set(a.primes) & set(b.primes)
    return tuple(p for p in sorted(common) if p != 2 and a[p] == b[p])


def _representatives(catalog: list[CatalogEntry]) -> list[CatalogEntry]:
    seen: set[str] = set()
    reps = []
    for e in catalog:
        if e.iso_class is not None:
            if e.iso_class in seen:
                continue
            seen.add(e.iso_class)
        reps.append(e)
    return reps


def herzog_collision_scan(
    catalog: Iterable[CatalogEntry],
    cache: SpectrumCache | None = None,
    workers: int = 1,
    cap: int = DEFAULT_CAP,
    profiles: Mapping[str, GroupProfile] | None = None,
) -> list[CollisionRecord]:
    """All pairs of non-isomorphic catalog groups with equal involution counts.

    Known isomorphism classes are collapsed to their first catalog member.
    A record with ``same_order`` false contradicts the conjecture that equal
    involution counts force equal orders.
    """
    reps = _representatives(list(catalog))
    if profiles is None:
        profiles = load_profiles(reps, cache, workers, cap)
    records = []
    for a, b in combinations(reps, 2):
        pa, pb = profiles[a.id], profiles[b.id]
        if pa.i2 != pb.i2:
            continue
        records.append(
            CollisionRecord(
                a.id,
                b.id,
                pa.i2,
                pa.order,
                pb.order,
                pa.order == pb.order,
                odd_prime_matches(pa.spectrum, pb.spectrum),
            )
        )
    records.sort(key=lambda r: (r.i2, r.id_a, r.id_b))
    return records


def conjecture15_scan(
    catalog: Iterable[CatalogEntry],
    cache: SpectrumCache | None = None,
    workers: int = 1,
    cap: int = DEFAULT_CAP,
    profiles: Mapping[str, GroupProfile] | None = None,
) -> list[CollisionRecord]:
    """Collisions that also agree on I_p for some odd prime p dividing both orders.

    Such a record with ``same_order`` false would refute the strengthened
    conjecture.
    """
    records = herzog_collision_scan(catalog, cache, workers, cap, profiles)
    return [r for r in records if r.odd_prime_matches]


def zar_distinctness_check(g: Group | GroupProfile | OrderSpectrum) -> list[tuple[int, int]]:
    """Pairs of distinct primes p < r in pi(G) with I_p(G) == I_r(G)."""
    if isinstance(g, Group):
        sp = order_spectrum(g)
    elif isinstance(g, GroupProfile):
        sp = g.spectrum
    else:
        sp = g
    return [(p, r) for p, r in combinations(sp.primes, 2) if sp[p] == sp[r]]


@dataclass(frozen=True)
class ZarResult:
    id: str
    order: int
    violations: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {"id": self.id, "order": self.order, "violations": [list(v) for v in self.violations]}


def zar_scan(
    catalog: Iterable[CatalogEntry],
    cache: SpectrumCache | None = None,
    workers: int = 1,
    cap: int = DEFAULT_CAP,
    profiles: Mapping[str, GroupProfile] | None = None,
) -> list[ZarResult]:
    catalog = list(catalog)
    if profiles is None:
        profiles = load_profiles(catalog, cache, workers, cap)
    return [
        ZarResult(e.id, profiles[e.id].order, tuple(zar_distinctness_check(profiles[e.id])))
        for e in catalog
    ]
