"""Group ids (``alt:7``, ``psl3:4``, ``m11`` ...) and their constructions."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .engine import DEFAULT_CAP, Group, enumerate_closure
from .errors import GroupIdError
from .fields import MAX_DEGREE
from .linear import center_scalars, generators
from .numtheory import prime_power
from .perms import standard_generators

# prefix -> (family tag, linear family, max q); the bounds keep codes in 64 bits
_Q_FAMILIES = {
    "psl2": ("PSL2", "SL2", 2**20),
    "psl3": ("PSL3", "SL3", 127),
    "psu3": ("PSU3", "SU3", 11),
    "psp4": ("PSP4", "SP4", 13),
}
_FIXED = {"m11": "M11", "m12": "M12", "cyclic:2": "CYCLIC2"}
_ID_RE = re.compile(r"(alt|psl2|psl3|psu3|psp4):(\d+)")


@dataclass(frozen=True, order=True)
class FamilyId:
    """A family tag with its parameter (n for ALT, q for the q-families)."""

    tag: str
    parameter: int | None = None

    def __str__(self):
        return self.tag if self.parameter is None else f"{self.tag}({self.parameter})"


@dataclass(frozen=True)
class GroupId:
    prefix: str
    parameter: int | None = None

    @classmethod
    def parse(cls, text: str) -> GroupId:
        text = text.strip()
        if text in _FIXED:
            return cls(text)
        m = _ID_RE.fullmatch(text)
        if not m:
            raise GroupIdError(f"unrecognised group id {text!r}")
        prefix, value = m.group(1), int(m.group(2))
        if prefix == "alt":
            if not 3 <= value <= 10:
                raise GroupIdError(f"{text}: alternating degree must be in 3..10")
            return cls(prefix, value)
        _, _, qmax = _Q_FAMILIES[prefix]
        pp = prime_power(value)
        if pp is None:
            raise GroupIdError(f"{text}: {value} is not a prime power")
        field_degree = pp[1] * (2 if prefix == "psu3" else 1)
        if value > qmax or field_degree > MAX_DEGREE:
            raise GroupIdError(f"{text}: q={value} is outside the supported range")
        return cls(prefix, value)

    def __str__(self):
        return self.prefix if self.parameter is None else f"{self.prefix}:{self.parameter}"

    @property
    def family(self) -> FamilyId:
        if self.prefix in _FIXED:
            return FamilyId(_FIXED[self.prefix])
        if self.prefix == "alt":
            return FamilyId("ALT", self.parameter)
        return FamilyId(_Q_FAMILIES[self.prefix][0], self.parameter)


def as_group_id(gid: GroupId | str) -> GroupId:
    return gid if isinstance(gid, GroupId) else GroupId.parse(gid)


def build_group(gid: GroupId | str, cap: int = DEFAULT_CAP) -> Group:
    """Enumerate the group named by ``gid``."""
    gid = as_group_id(gid)
    name = str(gid)
    if gid.prefix in _Q_FAMILIES:
        _, linear_family, _ = _Q_FAMILIES[gid.prefix]
        q = gid.parameter
        return enumerate_closure(
            generators(linear_family, q),
            cap=cap,
            center_scalars=center_scalars(linear_family, q),
            group_id=name,
        )
    return enumerate_closure(standard_generators(name), cap=cap, group_id=name)
