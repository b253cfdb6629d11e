"""Enumeration and counting core.

Every element of a group is identified by a canonical int64 *code*. An
``ElementKind`` converts between codes and batched numpy representations
and multiplies batches, so all heavy loops run vectorised over thousands
of elements at once. A ``Group`` is just its kind, generator codes and
the sorted array of all element codes.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CapExceeded, DegreeMismatch, DimMismatch, FieldMismatch
from .fields import FieldElement, FieldSpec
from .linear import Matrix, mat_inv
from .numtheory import is_prime
from .perms import Permutation

log = logging.getLogger(__name__)

DEFAULT_CAP = 5_000_000
CHUNK = 1 << 16
_INT64_MAX = np.iinfo(np.int64).max


class ElementKind(ABC):
    """Codec and batch arithmetic for one ambient element type."""

    name: str

    @abstractmethod
    def encode(self, batch: np.ndarray) -> np.ndarray:
        """Canonical codes of a batch (after any quotient canonicalisation)."""

    @abstractmethod
    def decode(self, codes: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Row-wise products; either side may have a single row that broadcasts."""

    @abstractmethod
    def to_batch(self, elements: Sequence) -> np.ndarray:
        ...

    @abstractmethod
    def to_element(self, code: int):
        ...

    @abstractmethod
    def inverse(self, element):
        ...

    @cached_property
    def identity_code(self) -> int:
        return int(self.encode(self.identity_batch())[0])

    @abstractmethod
    def identity_batch(self) -> np.ndarray:
        ...

    def is_identity(self, batch: np.ndarray) -> np.ndarray:
        return self.encode(batch) == self.identity_code

    def code_of(self, element) -> int:
        return int(self.encode(self.to_batch([element]))[0])


class PermutationKind(ElementKind):
    """Permutations of degree d <= 15; code = image vector as base-d digits."""

    name = "permutation"

    def __init__(self, degree: int):
        if not 1 <= degree <= 15:
            raise DegreeMismatch(f"degree {degree} does not fit a 64-bit code")
        self.degree = degree
        self._weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)

    def encode(self, batch):
        return batch.astype(np.int64) @ self._weights

    def decode(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        return ((codes[:, None] // self._weights[None, :]) % self.degree).astype(np.int8)

    def multiply(self, a, b):
        # (a*b)(i) = a(b(i))
        if a.shape[0] == 1:
            return a[0][b]
        if b.shape[0] == 1:
            return a[:, b[0]]
        return np.take_along_axis(a, b.astype(np.intp), axis=1)

    def to_batch(self, elements):
        for e in elements:
            if not isinstance(e, Permutation) or e.degree != self.degree:
                raise DegreeMismatch(f"expected permutations of degree {self.degree}, got {e!r}")
        return np.array([e.images for e in elements], dtype=np.int8).reshape(-1, self.degree)

    def is_identity(self, batch):
        return (batch == np.arange(self.degree, dtype=batch.dtype)).all(axis=1)

    def to_element(self, code):
        return Permutation(tuple(int(v) for v in self.decode(np.array([code]))[0]))

    def inverse(self, element):
        return element.inverse()

    def identity_batch(self):
        return np.arange(self.degree, dtype=np.int8)[None, :]


class MatrixKind(ElementKind):
    """d x d matrices over GF(q) modulo a group of central scalars.

    Codes are row-major base-q digits, first entry most significant; the
    code of an element is the minimum over its orbit under the scalars.
    """

    name = "matrix-projective"

    def __init__(self, fld: FieldSpec, dim: int, center_scalars: Sequence[FieldElement] = ()):
        self.field = fld
        self.dim = dim
        q = fld.q
        if q ** (dim * dim) - 1 > _INT64_MAX:
            raise DimMismatch(f"{dim}x{dim} matrices over {fld!r} do not fit a 64-bit code")
        scalars = sorted({int(s.value) for s in center_scalars} | {1})
        for s in center_scalars:
            if s.field != fld:
                raise FieldMismatch("center scalars must lie in the matrix field")
        self.scalars = tuple(scalars)
        self._weights = q ** np.arange(dim * dim - 1, -1, -1, dtype=np.int64)
        self._prime = fld.n == 1
        if not self._prime:
            self._mul_flat = fld.mul_table.ravel()
            self._add_flat = fld.add_table.ravel()

    def _fmul(self, a, b):
        if self._prime:
            return a * b
        return self._mul_flat[a * self.field.q + b]

    def _fadd(self, a, b):
        if self._prime:
            return a + b
        if self.field.p == 2:
            return a ^ b
        return self._add_flat[a * self.field.q + b]

    def multiply(self, a, b):
        d = self.dim
        n = max(a.shape[0], b.shape[0])
        out = np.empty((n, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                acc = self._fmul(a[:, i, 0], b[:, 0, j])
                for k in range(1, d):
                    acc = self._fadd(acc, self._fmul(a[:, i, k], b[:, k, j]))
                out[:, i, j] = acc
        if self._prime:
            out %= self.field.p
        return out

    def raw_codes(self, batch):
        return batch.reshape(batch.shape[0], -1) @ self._weights

    def scale(self, lam: int, batch):
        if lam == 1:
            return batch
        if self._prime:
            return batch * lam % self.field.p
        return self._mul_flat[lam * self.field.q + batch]

    def encode(self, batch):
        codes = self.raw_codes(batch)
        for lam in self.scalars:
            if lam != 1:
                codes = np.minimum(codes, self.raw_codes(self.scale(lam, batch)))
        return codes

    def decode(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        d = self.dim
        digits = (codes[:, None] // self._weights[None, :]) % self.field.q
        return digits.reshape(-1, d, d)

    def to_batch(self, elements):
        for e in elements:
            if not isinstance(e, Matrix) or e.field != self.field or e.dim != self.dim:
                raise DimMismatch(f"expected {self.dim}x{self.dim} matrices over {self.field!r}")
        return np.array([e.entries for e in elements], dtype=np.int64).reshape(-1, self.dim, self.dim)

    def is_identity(self, batch):
        # identity of the quotient: lam*I with lam a center scalar
        d = self.dim
        diag = batch[:, 0, 0]
        mask = np.isin(diag, self.scalars)
        for i in range(d):
            for j in range(d):
                if i == j:
                    if i:
                        mask &= batch[:, i, i] == diag
                else:
                    mask &= batch[:, i, j] == 0
        return mask

    def to_element(self, code):
        arr = self.decode(np.array([code]))[0]
        return Matrix(self.field, tuple(tuple(int(v) for v in row) for row in arr))

    def inverse(self, element):
        return mat_inv(element)

    def identity_batch(self):
        return np.eye(self.dim, dtype=np.int64)[None, :, :]


def _chunks(n: int, size: int = CHUNK):
    for start in range(0, n, size):
        yield slice(start, min(n, start + size))


@dataclass(frozen=True, eq=False)
class Group:
    """A fully enumerated finite group; ``elements`` is sorted and read-only."""

    id: str
    kind: ElementKind
    generators: tuple[int, ...]
    elements: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    @property
    def element_kind(self) -> str:
        return self.kind.name

    @property
    def identity(self) -> int:
        return self.kind.identity_code

    def index(self, codes) -> np.ndarray:
        """Positions of ``codes`` in ``elements``; raises if any is absent."""
        codes = np.asarray(codes, dtype=np.int64)
        pos = np.searchsorted(self.elements, codes)
        pos = np.minimum(pos, self.order - 1)
        if not np.array_equal(self.elements[pos], codes):
            raise KeyError("code not in group")
        return pos

    def code(self, x) -> int:
        if isinstance(x, (int, np.integer)):
            return int(x)
        return self.kind.code_of(x)

    def __contains__(self, x) -> bool:
        c = self.code(x)
        i = int(np.searchsorted(self.elements, c))
        return i < self.order and int(self.elements[i]) == c

    def element(self, code: int):
        return self.kind.to_element(code)

    def batch(self, codes=None) -> np.ndarray:
        return self.kind.decode(self.elements if codes is None else codes)

    @cached_property
    def generator_batches(self) -> list[np.ndarray]:
        return [self.kind.decode(np.array([g])) for g in self.generators]

    @cached_property
    def inverse_generator_batches(self) -> list[np.ndarray]:
        inv = [self.kind.inverse(self.element(g)) for g in self.generators]
        return [self.kind.to_batch([x]) for x in inv]

    @cached_property
    def element_orders(self) -> np.ndarray:
        """Order of every element, aligned with ``elements``."""
        out = np.empty(self.order, dtype=np.int64)
        for sl in _chunks(self.order):
            out[sl] = _batch_orders(self.kind, self.batch(self.elements[sl]))
        out.setflags(write=False)
        return out

    def conjugate_codes(self, codes, gen: int) -> np.ndarray:
        """Codes of g x g^-1 for generator index ``gen``."""
        out = np.empty(len(codes), dtype=np.int64)
        g, gi = self.generator_batches[gen], self.inverse_generator_batches[gen]
        for sl in _chunks(len(codes)):
            x = self.kind.decode(codes[sl])
            out[sl] = self.kind.encode(self.kind.multiply(self.kind.multiply(g, x), gi))
        return out

    @cached_property
    def class_labels(self) -> np.ndarray:
        """Conjugacy-class label per element (labels are arbitrary ints)."""
        return _orbit_labels(self, self.elements)


def _batch_orders(kind: ElementKind, batch: np.ndarray) -> np.ndarray:
    n = batch.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    power = batch
    k = 1
    while active.size:
        done = kind.is_identity(power)
        orders[active[done]] = k
        keep = ~done
        active = active[keep]
        power = kind.multiply(power[keep], batch[active])
        k += 1
    return orders


def _orbit_labels(group: Group, codes: np.ndarray) -> np.ndarray:
    """Component labels of ``codes`` (a conjugation-closed sorted set)."""
    n = len(codes)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rows, cols = [], []
    src = np.arange(n)
    for gen in range(len(group.generators)):
        img = group.conjugate_codes(codes, gen)
        pos = np.searchsorted(codes, img)
        pos = np.minimum(pos, n - 1)
        if not np.array_equal(codes[pos], img):
            raise AssertionError("conjugation left the given element set")
        rows.append(src)
        cols.append(pos)
    if not rows:
        return src.copy()
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n)).tocsr()
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels.astype(np.int64)


# -- public operations ----------------------------------------------------------


def kind_for(generators: Sequence, center_scalars: Sequence[FieldElement] | None = None) -> ElementKind:
    if not generators:
        raise ValueError("need at least one generator")
    first = generators[0]
    if isinstance(first, Permutation):
        return PermutationKind(first.degree)
    if isinstance(first, Matrix):
        return MatrixKind(first.field, first.dim, center_scalars or ())
    raise TypeError(f"unsupported element type {type(first).__name__}")


def enumerate_closure(
    generators: Sequence,
    cap: int = DEFAULT_CAP,
    center_scalars: Sequence[FieldElement] | None = None,
    group_id: str = "",
    kind: ElementKind | None = None,
) -> Group:
    """Breadth-first closure of ``generators`` under multiplication.

    Matrices are taken modulo ``center_scalars``. Raises CapExceeded as
    soon as more than ``cap`` distinct elements have been seen.
    """
    kind = kind or kind_for(generators, center_scalars)
    gen_batch = kind.to_batch(list(generators))
    inv_batch = kind.to_batch([kind.inverse(g) for g in generators])
    gen_codes = tuple(sorted(set(int(c) for c in kind.encode(gen_batch))))
    steps_codes = np.unique(np.concatenate([kind.encode(gen_batch), kind.encode(inv_batch)]))
    steps = kind.decode(steps_codes)

    seen = np.unique(np.concatenate([[kind.identity_code], gen_codes]).astype(np.int64))
    if seen.size > cap:
        raise CapExceeded(cap, group_id or None)
    frontier = seen
    while frontier.size:
        found = []
        for sl in _chunks(frontier.size):
            xs = kind.decode(frontier[sl])
            for s in range(steps.shape[0]):
                found.append(kind.encode(kind.multiply(xs, steps[s : s + 1])))
            if sum(len(f) for f in found) > 4 * CHUNK * steps.shape[0]:
                found = [np.unique(np.concatenate(found))]
        cand = np.unique(np.concatenate(found))
        new = cand[~np.isin(cand, seen, assume_unique=True)]
        if seen.size + new.size > cap:
            raise CapExceeded(cap, group_id or None)
        seen = np.union1d(seen, new)
        frontier = new
        log.debug("closure %s: %d elements", group_id, seen.size)
    seen.setflags(write=False)
    return Group(group_id, kind, gen_codes, seen)


def element_order(g, group: Group) -> int:
    """Least m >= 1 with g^m equal to the identity (of the quotient, for matrices)."""
    kind = group.kind
    batch = kind.decode(np.array([g])) if isinstance(g, (int, np.integer)) else kind.to_batch([g])
    return int(_batch_orders(kind, batch)[0])


@dataclass(frozen=True)
class OrderSpectrum:
    """Map k -> number of elements of order k (zero counts are absent)."""

    entries: dict[int, int]
    group_order: int

    @property
    def primes(self) -> list[int]:
        """Primes p for which some element has order p."""
        return sorted(k for k in self.entries if is_prime(k))

    def __getitem__(self, k: int) -> int:
        return self.entries.get(k, 0)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.entries.items())


def order_spectrum(g: Group) -> OrderSpectrum:
    counts = np.bincount(g.element_orders)
    entries = {int(k): int(c) for k, c in enumerate(counts) if c}
    return OrderSpectrum(entries, g.order)


def involution_count(g: Group) -> int:
    return int(np.count_nonzero(g.element_orders == 2))


def conjugacy_classes(g: Group) -> list[tuple[int, int]]:
    """(minimum-code representative, class size), sorted by (size, representative)."""
    labels = g.class_labels
    sizes = np.bincount(labels)
    # elements are sorted, so the first index seen per label is its minimum code
    _, first = np.unique(labels, return_index=True)
    reps = g.elements[first]
    out = [(int(reps[i]), int(sizes[i])) for i in range(len(first))]
    return sorted(out, key=lambda t: (t[1], t[0]))


def conjugacy_class(g: Group, x) -> np.ndarray:
    """Sorted codes of the class of a single element (orbit under generator conjugation)."""
    c = g.code(x)
    orbit = np.array([c], dtype=np.int64)
    frontier = orbit
    while frontier.size:
        imgs = np.unique(np.concatenate([g.conjugate_codes(frontier, i) for i in range(len(g.generators))]))
        new = imgs[~np.isin(imgs, orbit, assume_unique=True)]
        orbit = np.union1d(orbit, new)
        frontier = new
    return orbit


def centralizer_order(g: Group, x) -> int:
    """|C_G(x)| by orbit-stabilizer."""
    return g.order // len(conjugacy_class(g, x))


def direct_centralizer_order(g: Group, x) -> int:
    """|C_G(x)| by scanning every element for commutation; an oracle, O(|G|)."""
    return int(direct_centralizer_orders(g, [x])[0])


def direct_centralizer_orders(g: Group, xs) -> np.ndarray:
    """Direct commuting-element counts for each of ``xs``."""
    kind = g.kind
    whole = [g.batch(g.elements[sl]) for sl in _chunks(g.order)]
    out = np.empty(len(xs), dtype=np.int64)
    for i, x in enumerate(xs):
        xb = kind.decode(np.array([g.code(x)]))
        out[i] = sum(
            int(np.count_nonzero(kind.encode(kind.multiply(h, xb)) == kind.encode(kind.multiply(xb, h))))
            for h in whole
        )
    return out


@dataclass(frozen=True)
class InvolutionClass:
    representative: int
    class_size: int
    centralizer_order: int


@dataclass(frozen=True)
class InvolutionClassReport:
    group_order: int
    classes: tuple[InvolutionClass, ...]

    @property
    def k2(self) -> int:
        return len(self.classes)

    @property
    def total_involutions(self) -> int:
        return sum(c.class_size for c in self.classes)

    def index_sum(self) -> int:
        """Sum of |G : C_G(t_i)| over the class representatives."""
        return sum(self.group_order // c.centralizer_order for c in self.classes)


def involution_class_decomposition(g: Group) -> InvolutionClassReport:
    """Involution classes with their centralizer orders.

    Only the involutions are partitioned (conjugation preserves order), so
    this is much cheaper than the full class list on large groups.
    """
    inv_codes = g.elements[g.element_orders == 2]
    labels = _orbit_labels(g, inv_codes)
    classes = []
    if inv_codes.size:
        sizes = np.bincount(labels)
        _, first = np.unique(labels, return_index=True)
        for lab, i in enumerate(first):
            size = int(sizes[lab])
            if g.order % size:
                raise AssertionError("class size does not divide the group order")
            classes.append(InvolutionClass(int(inv_codes[i]), size, g.order // size))
    classes.sort(key=lambda c: (c.class_size, c.representative))
    report = InvolutionClassReport(g.order, tuple(classes))
    if report.total_involutions != inv_codes.size or report.index_sum() != inv_codes.size:
        raise AssertionError("involution classes do not partition the involutions")
    return report


def check_closure(g: Group, samples: int = 200, seed: int = 0) -> None:
    """Raise AssertionError unless ``g`` looks like a group.

    Right multiplication by every generator is checked on every element;
    products and inverses of random pairs are spot-checked.
    """
    kind = g.kind
    if g.identity not in g:
        raise AssertionError("identity missing")
    for sl in _chunks(g.order):
        xs = g.batch(g.elements[sl])
        for gb in g.generator_batches:
            g.index(kind.encode(kind.multiply(xs, gb)))
    rng = np.random.default_rng(seed)
    picks = g.elements[rng.integers(0, g.order, size=(samples, 2))]
    a, b = kind.decode(picks[:, 0]), kind.decode(picks[:, 1])
    g.index(kind.encode(kind.multiply(a, b)))
    for c in picks[: min(samples, 50), 0]:
        if kind.inverse(g.element(int(c))) not in g:
            raise AssertionError("inverse missing")
