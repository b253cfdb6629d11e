"""Herzog's involution census as executable formulas.

``predicted_involutions`` and ``classify_by_involutions`` only speak where
the theorem speaks: a PSL(2, q) prediction needs q = +-1 (mod 8), the
three-dimensional families need their mod-4 conditions, and anything else
raises ``ConditionViolated`` rather than extrapolating. Group orders for
the q-families are standard formulas; the test-suite checks every one of
them against enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, gcd, isqrt

from .engine import DEFAULT_CAP, InvolutionClassReport, involution_class_decomposition, involution_count
from .errors import ConditionViolated, HypothesisViolated
from .groups import FamilyId, build_group
from .numtheory import prime_power, two_part

Q_FAMILIES = ("PSL2", "PSL3", "PSU3", "PSP4")


@dataclass(frozen=True)
class TheoremRow:
    family: FamilyId
    predicted_i: int
    epsilon: int
    condition: str

    def to_json_dict(self) -> dict:
        return {
            "family": self.family.tag,
            "parameter": self.family.parameter,
            "predictedI": self.predicted_i,
            "epsilon": self.epsilon,
            "condition": self.condition,
        }


def _odd_prime_power(f: FamilyId) -> int:
    q = f.parameter
    pp = prime_power(q) if q is not None else None
    if pp is None:
        raise ConditionViolated(f"{f}: q must be a prime power")
    if pp[0] == 2:
        raise ConditionViolated(f"{f}: q must be odd")
    return q


def predicted_involutions(f: FamilyId) -> TheoremRow:
    """The involution count the theorem attaches to ``f``."""
    tag = f.tag
    if tag == "CYCLIC2":
        return TheoremRow(f, 1, 0, "G cyclic of order 2")
    if tag == "ALT":
        if f.parameter != 7:
            raise ConditionViolated(f"{f}: A_7 is the only alternating group in the theorem")
        return TheoremRow(f, 105, 0, "G = A_7")
    if tag == "M11":
        return TheoremRow(f, 165, 0, "G = M_11")
    if tag == "PSL2":
        q = _odd_prime_power(f)
        if q <= 3:
            raise ConditionViolated(f"{f}: needs q > 3")
        r = q % 8
        if r not in (1, 7):
            raise ConditionViolated(f"{f}: q = {r} (mod 8); the theorem needs q = +-1 (mod 8)")
        eps = 1 if r == 1 else -1
        return TheoremRow(f, q * (q + eps) // 2, eps, f"q = {eps:+d} (mod 8)")
    if tag == "PSL3":
        q = _odd_prime_power(f)
        if q % 4 != 3:
            raise ConditionViolated(f"{f}: needs q = -1 (mod 4)")
        return TheoremRow(f, q * q * (q * q + q + 1), 0, "q = -1 (mod 4)")
    if tag == "PSU3":
        q = _odd_prime_power(f)
        if q % 4 != 1:
            raise ConditionViolated(f"{f}: needs q = 1 (mod 4)")
        return TheoremRow(f, q * q * (q * q - q + 1), 0, "q = 1 (mod 4)")
    raise ConditionViolated(f"{f} is not one of the theorem's families")


def group_order_formula(f: FamilyId) -> int:
    tag, n = f.tag, f.parameter
    if tag == "CYCLIC2":
        return 2
    if tag == "M11":
        return 7920
    if tag == "M12":
        return 95040
    if tag == "ALT":
        if n is None or n < 3:
            raise ConditionViolated(f"{f}: needs n >= 3")
        return factorial(n) // 2
    if tag not in Q_FAMILIES:
        raise ConditionViolated(f"unknown family {f}")
    q = n
    if q is None or prime_power(q) is None:
        raise ConditionViolated(f"{f}: q must be a prime power")
    if tag == "PSL2":
        return q * (q * q - 1) // gcd(2, q - 1)
    if tag == "PSL3":
        return q**3 * (q**3 - 1) * (q * q - 1) // gcd(3, q - 1)
    if tag == "PSU3":
        return q**3 * (q**3 + 1) * (q * q - 1) // gcd(3, q + 1)
    # for odd q this is q^4 (q^2+1) (q^2-1)^2 / 2; the centre is trivial for even q
    return q**4 * (q * q + 1) * (q * q - 1) ** 2 // gcd(2, q - 1)


def _iroot4(n: int) -> int:
    return isqrt(isqrt(n))


def classify_by_involutions(i: int) -> list[TheoremRow]:
    """Every row of the theorem compatible with ``i`` involutions."""
    if i < 1 or i % 4 != 1:
        raise HypothesisViolated(f"I = {i} does not satisfy I = 1 (mod 4)")
    rows: list[TheoremRow] = []
    if i == 1:
        rows.append(predicted_involutions(FamilyId("CYCLIC2")))
    if i == 105:
        rows.append(predicted_involutions(FamilyId("ALT", 7)))
    if i == 165:
        rows.append(predicted_involutions(FamilyId("M11")))
    disc = 1 + 8 * i
    s = isqrt(disc)
    psl2 = []
    if s * s == disc:
        for eps in (1, -1):
            if (s - eps) % 2 == 0:
                q = (s - eps) // 2
                pp = prime_power(q)
                if pp and pp[0] != 2 and q > 3 and q % 8 == eps % 8:
                    psl2.append(predicted_involutions(FamilyId("PSL2", q)))
    rows.extend(sorted(psl2, key=lambda r: r.family.parameter))
    for q in range(3, _iroot4(i) + 2):
        pp = prime_power(q)
        if not pp or pp[0] == 2:
            continue
        for tag in ("PSL3", "PSU3"):
            try:
                row = predicted_involutions(FamilyId(tag, q))
            except ConditionViolated:
                continue
            if row.predicted_i == i:
                rows.append(row)
    return rows


@dataclass(frozen=True)
class CounterexampleReport:
    group_a: str
    group_b: str
    i2_a: int
    i2_b: int
    order_a: int
    order_b: int
    classes_a: InvolutionClassReport | None = field(default=None, repr=False, compare=False)
    classes_b: InvolutionClassReport | None = field(default=None, repr=False, compare=False)

    @property
    def is_counterexample(self) -> bool:
        return self.i2_a == self.i2_b and self.order_a != self.order_b

    def to_json_dict(self) -> dict:
        return {
            "groupA": self.group_a,
            "groupB": self.group_b,
            "i2A": self.i2_a,
            "i2B": self.i2_b,
            "orderA": self.order_a,
            "orderB": self.order_b,
            "isCounterexample": self.is_counterexample,
        }


class VerificationFailed(AssertionError):
    pass


def verify_counterexample(cap: int = DEFAULT_CAP) -> CounterexampleReport:
    """Enumerate PSp(4,3) and PSL(3,4) and compare their involution counts.

    All numbers come from the enumerations. Also checks the class-level
    facts: PSp(4,3) has two involution classes with centralizers of order
    576 and 96, PSL(3,4) a single one whose centralizer has the 2-part of
    the group order.
    """
    a = build_group("psp4:3", cap)
    b = build_group("psl3:4", cap)
    ca = involution_class_decomposition(a)
    cb = involution_class_decomposition(b)
    report = CounterexampleReport(
        "psp4:3", "psl3:4", involution_count(a), involution_count(b), a.order, b.order, ca, cb
    )
    cent_a = sorted(c.centralizer_order for c in ca.classes)
    if cent_a != [96, 576]:
        raise VerificationFailed(f"PSp(4,3) involution centralizers {cent_a}, expected [96, 576]")
    cent_b = [c.centralizer_order for c in cb.classes]
    if cent_b != [two_part(b.order)]:
        raise VerificationFailed(f"PSL(3,4) involution centralizers {cent_b}, expected [{two_part(b.order)}]")
    return report
