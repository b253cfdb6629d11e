"""On-disk cache of group profiles (order spectrum plus involution classes).

One JSON file per group id, ``<dir>/<group-id>.spectrum.json``. A file is
only trusted if it parses, carries the current format version and passes
the internal consistency checks; anything else is treated as a miss.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .engine import Group, OrderSpectrum, involution_class_decomposition, order_spectrum

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
ENV_VAR = "INVCENSUS_CACHE_DIR"


@dataclass(frozen=True)
class GroupProfile:
    """Everything the scanners need to know about one group."""

    id: str
    order: int
    spectrum: OrderSpectrum
    # (class size, centralizer order), sorted by class size
    involution_classes: tuple[tuple[int, int], ...]

    @property
    def i2(self) -> int:
        return self.spectrum[2]

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "order": self.order,
            "spectrum": [[k, c] for k, c in self.spectrum.items()],
            "involutionClasses": [list(c) for c in self.involution_classes],
            "formatVersion": FORMAT_VERSION,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> GroupProfile:
        order = int(d["order"])
        entries = {int(k): int(c) for k, c in d["spectrum"]}
        classes = tuple((int(s), int(c)) for s, c in d["involutionClasses"])
        return cls(str(d["id"]), order, OrderSpectrum(entries, order), classes)

    def check(self) -> None:
        """Raise ValueError if the profile is internally inconsistent."""
        sp = self.spectrum.entries
        if sum(sp.values()) != self.order:
            raise ValueError("spectrum does not sum to the group order")
        if sp.get(1) != 1:
            raise ValueError("I_1 must be 1")
        if any(c <= 0 or self.order % k for k, c in sp.items()):
            raise ValueError("spectrum has a non-divisor order or empty count")
        if sum(s for s, _ in self.involution_classes) != sp.get(2, 0):
            raise ValueError("involution classes do not add up to I_2")
        if any(s * c != self.order for s, c in self.involution_classes):
            raise ValueError("class size times centralizer order is not |G|")
        if list(self.involution_classes) != sorted(self.involution_classes):
            raise ValueError("involution classes not sorted")


def profile_of(group: Group) -> GroupProfile:
    report = involution_class_decomposition(group)
    classes = tuple(sorted((c.class_size, c.centralizer_order) for c in report.classes))
    return GroupProfile(group.id, group.order, order_spectrum(group), classes)


def default_cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR) or "cache")


class SpectrumCache:
    def __init__(self, root: os.PathLike | str | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def path(self, group_id: str) -> Path:
        return self.root / f"{group_id}.spectrum.json"

    def load(self, group_id: str, expected_order: int | None = None) -> GroupProfile | None:
        path = self.path(group_id)
        if not path.exists():
            return None
        try:
            d = json.loads(path.read_text(encoding="utf-8"))
            if d.get("formatVersion") != FORMAT_VERSION:
                raise ValueError(f"format version {d.get('formatVersion')!r}")
            prof = GroupProfile.from_json_dict(d)
            if prof.id != group_id:
                raise ValueError(f"file is for {prof.id!r}")
            if expected_order is not None and prof.order != expected_order:
                raise ValueError(f"order {prof.order} != expected {expected_order}")
            prof.check()
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring corrupt cache file %s: %s", path, exc)
            return None
        return prof

    def store(self, profile: GroupProfile) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        text = json.dumps(profile.to_json_dict()) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, self.path(profile.id))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def clear(self) -> int:
        n = 0
        if self.root.is_dir():
            for p in self.root.glob("*.spectrum.json"):
                p.unlink()
                n += 1
        return n
