"""Indifference-graph (unit interval) representations.

An :class:`IntervalAssignment` gives every vertex an integer left endpoint
and all vertices one common integer length ``L``; ``u ~ v`` iff
``|left(u) - left(v)| <= L``.  A :class:`CubeRepresentation` stacks such
assignments, one per axis, and represents ``G`` iff the intersection of the
induced graphs is ``G``.  Endpoints stay integral throughout; the unit-cube
export divides exactly, using :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .graph import Graph, GraphError, GraphFormatError

__all__ = [
    "Permutation",
    "Bipartition",
    "IntervalAssignment",
    "CubeRepresentation",
    "Verdict",
    "project",
    "construct_m",
    "induced_graph",
    "union_assignments",
    "verify_representation",
    "scale_to_unit",
    "read_representation",
    "write_representation",
    "write_unit_representation",
]


class Permutation:
    """Bijection ``{1..n} -> {1..n}`` with forward and inverse lookup.

    ``values[u - 1] == pi(u)``.
    """

    def __init__(self, values: Sequence[int] | np.ndarray):
        vals = np.asarray(values, dtype=np.int64).ravel()
        n = vals.size
        if n and not np.array_equal(np.sort(vals), np.arange(1, n + 1)):
            raise ValueError("not a permutation of 1..n")
        inv = np.empty(n, dtype=np.int64)
        inv[vals - 1] = np.arange(1, n + 1)
        vals.flags.writeable = False
        inv.flags.writeable = False
        self.values = vals
        self.inverse = inv

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(1, n + 1))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Permutation":
        n = len(mapping)
        return cls([mapping[u] for u in range(1, n + 1)])

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __call__(self, u: int) -> int:
        return int(self.values[u - 1])

    def inv(self, i: int) -> int:
        return int(self.inverse[i - 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"Permutation({self.values.tolist()})"


class Bipartition:
    """Split of ``1..n`` into sides A and B; ``in_a[u - 1]`` is True for A."""

    def __init__(self, in_a: Sequence[bool] | np.ndarray):
        arr = np.asarray(in_a, dtype=bool).ravel().copy()
        arr.flags.writeable = False
        self.in_a = arr

    @classmethod
    def from_a(cls, n: int, a: Iterable[int]) -> "Bipartition":
        in_a = np.zeros(n, dtype=bool)
        for u in a:
            if not 1 <= u <= n:
                raise ValueError(f"vertex {u} outside 1..{n}")
            in_a[u - 1] = True
        return cls(in_a)

    @property
    def n(self) -> int:
        return int(self.in_a.size)

    @property
    def a(self) -> set[int]:
        return set((np.flatnonzero(self.in_a) + 1).tolist())

    @property
    def b(self) -> set[int]:
        return set((np.flatnonzero(~self.in_a) + 1).tolist())

    def side(self, u: int) -> str:
        return "A" if self.in_a[u - 1] else "B"


@dataclass(frozen=True, eq=False)
class IntervalAssignment:
    """Vertex ``u`` gets the closed interval ``[left[u-1], left[u-1] + length]``."""

    left: np.ndarray
    length: int

    def __post_init__(self):
        left = np.array(self.left, dtype=np.int64).ravel()
        left.flags.writeable = False
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "length", int(self.length))
        if self.length <= 0:
            raise ValueError(f"interval length must be positive, got {self.length}")

    @property
    def n(self) -> int:
        return int(self.left.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalAssignment):
            return NotImplemented
        return self.length == other.length and np.array_equal(self.left, other.left)

    def adjacent(self, u: int, v: int) -> bool:
        return abs(int(self.left[u - 1]) - int(self.left[v - 1])) <= self.length


@dataclass(frozen=True, eq=False)
class CubeRepresentation:
    """Ordered sequence of interval assignments over a common vertex set."""

    n: int
    dims: tuple[IntervalAssignment, ...] = field(default=())

    def __post_init__(self):
        dims = tuple(self.dims)
        for j, d in enumerate(dims, start=1):
            if d.n != self.n:
                raise ValueError(f"dimension {j} has {d.n} vertices, expected {self.n}")
        object.__setattr__(self, "dims", dims)

    @property
    def k(self) -> int:
        return len(self.dims)

    def lefts_matrix(self) -> np.ndarray:
        """``(n, k)`` int64 matrix; row ``u - 1`` holds vertex ``u`` across axes."""
        if not self.dims:
            return np.zeros((self.n, 0), dtype=np.int64)
        return np.ascontiguousarray(np.stack([d.left for d in self.dims], axis=1))

    def lengths(self) -> np.ndarray:
        return np.array([d.length for d in self.dims], dtype=np.int64)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeRepresentation):
            return NotImplemented
        return self.n == other.n and self.dims == other.dims


# ---------------------------------------------------------------------------


def project(pi: Permutation, x: Iterable[int]) -> dict[int, int]:
    """Order-preserving relabelling of ``x`` to ``1..|x|`` by ascending ``pi``."""
    xs = set(x)
    if not xs:
        raise ValueError("cannot project onto an empty set")
    for u in xs:
        if not 1 <= u <= pi.n:
            raise ValueError(f"vertex {u} outside 1..{pi.n}")
    ordered = sorted(xs, key=pi)
    return {u: i for i, u in enumerate(ordered, start=1)}


def construct_m(g: Graph, pi: Permutation, part: Bipartition, length: int | None = None) -> IntervalAssignment:
    """Indifference supergraph of ``g`` from a permutation and a bipartition.

    B-vertices go to ``L + pi(u)``; an A-vertex goes to the largest ``pi``
    among its B-neighbours, or 0 when it has none.  ``length`` defaults to
    ``g.n`` and may be larger (the induced graph does not change), which is
    how pieces are embedded in a bigger host.
    """
    n = g.n
    if length is None:
        length = max(n, 1)
    if length < n:
        raise ValueError(f"interval length {length} smaller than n = {n}")
    if pi.n != n or part.n != n:
        raise GraphError("permutation / bipartition size does not match the graph")
    lefts = _kernels.m_lefts(g.indptr, g.indices, pi.values, part.in_a, np.int64(length))
    return IntervalAssignment(lefts, length)


def induced_graph(ia: IntervalAssignment) -> Graph:
    n = ia.n
    order = np.argsort(ia.left, kind="stable")
    srt = ia.left[order]
    # for each position, last position whose left is within length
    hi = np.searchsorted(srt, srt + ia.length, side="right")
    counts = hi - np.arange(n) - 1
    if counts.sum() == 0:
        return Graph(n)
    src = np.repeat(np.arange(n), counts)
    offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    dst = src + 1 + offs
    a, b = order[src], order[dst]
    lo, hi_ = np.minimum(a, b), np.maximum(a, b)
    return Graph._from_keys(n, np.sort(lo * n + hi_))


def union_assignments(
    n: int, parts: Sequence[tuple[Sequence[int] | np.ndarray, IntervalAssignment]]
) -> IntervalAssignment:
    """Glue assignments living on disjoint vertex sets of the host ``1..n``.

    Each part is ``(host_ids, assignment)`` where local vertex ``i`` of the
    assignment is host vertex ``host_ids[i - 1]``.
    """
    if not parts:
        raise ValueError("no parts to unite")
    length = parts[0][1].length
    left = np.zeros(n, dtype=np.int64)
    owner = np.zeros(n, dtype=bool)
    for ids, ia in parts:
        ids = np.asarray(ids, dtype=np.int64)
        if ia.length != length:
            raise ValueError(f"mismatched interval lengths {ia.length} and {length}")
        if ids.size != ia.n:
            raise ValueError("part vertex list does not match its assignment size")
        if ids.size and (ids.min() < 1 or ids.max() > n):
            raise ValueError(f"part vertex outside 1..{n}")
        idx = ids - 1
        if owner[idx].any() or np.unique(idx).size != idx.size:
            raise ValueError("parts overlap")
        owner[idx] = True
        left[idx] = ia.left
    if not owner.all():
        missing = (np.flatnonzero(~owner) + 1).tolist()
        raise ValueError(f"parts do not cover vertices {missing[:10]}")
    return IntervalAssignment(left, length)


@dataclass
class Verdict:
    """Outcome of :func:`verify_representation`.

    ``missing`` holds ``(u, v, dim)`` for an edge of ``g`` that axis ``dim``
    (1-based) separates; ``extra`` holds non-edges of ``g`` that no axis
    separates.  Both sorted.
    """

    missing: list[tuple[int, int, int]]
    extra: list[tuple[int, int]]

    @property
    def valid(self) -> bool:
        return not self.missing and not self.extra

    def __bool__(self) -> bool:
        return self.valid

    def lines(self) -> list[str]:
        out = [f"missing {u} {v} dim {d}" for u, v, d in self.missing]
        out.extend(f"extra {u} {v}" for u, v in self.extra)
        return out


def verify_representation(g: Graph, rep: CubeRepresentation) -> Verdict:
    """Check that the axes' induced graphs intersect exactly to ``g``."""
    if rep.n != g.n:
        raise GraphError(f"vertex-count mismatch: graph {g.n}, representation {rep.n}")
    lefts = rep.lefts_matrix()
    lengths = rep.lengths()
    e = g.edge_array()
    missing: list[tuple[int, int, int]] = []
    if rep.k and e.shape[0]:
        sep = _kernels.edge_separation(lefts, lengths, e[:, 0], e[:, 1])
        ei, di = np.nonzero(sep)
        missing = [(int(e[i, 0]) + 1, int(e[i, 1]) + 1, int(d) + 1) for i, d in zip(ei, di)]
    if rep.k == 0:
        iu, iv = np.triu_indices(g.n, k=1)
        su, sv = iu.astype(np.int64), iv.astype(np.int64)
    else:
        su, sv = _kernels.surviving_pairs(lefts, lengths)
    keys = su * g.n + sv
    extra_mask = ~np.isin(keys, g.keys, assume_unique=True)
    extra = [(int(a) + 1, int(b) + 1) for a, b in zip(su[extra_mask], sv[extra_mask])]
    return Verdict(missing, extra)


def scale_to_unit(rep: CubeRepresentation) -> list[list[Fraction]]:
    """Left endpoints divided by their axis length, as exact rationals.

    Row ``u - 1`` lists vertex ``u`` across the axes; adjacency becomes
    ``max_j |x_j(u) - x_j(v)| <= 1``.
    """
    return [
        [Fraction(int(d.left[u]), d.length) for d in rep.dims]
        for u in range(rep.n)
    ]


# -- text format -----------------------------------------------------------


def write_representation(rep: CubeRepresentation) -> str:
    lines = [f"{rep.n} {rep.k}", " ".join(str(d.length) for d in rep.dims)]
    lefts = rep.lefts_matrix()
    lines.extend(" ".join(map(str, row)) for row in lefts.tolist())
    return "\n".join(lines) + "\n"


def write_unit_representation(rep: CubeRepresentation) -> str:
    lines = [f"{rep.n} {rep.k}", " ".join("1" for _ in rep.dims)]
    for row in scale_to_unit(rep):
        lines.append(" ".join(f"{x.numerator}/{x.denominator}" for x in row))
    return "\n".join(lines) + "\n"


def read_representation(text: str) -> CubeRepresentation:
    """Parse ``n k`` / ``L_1 .. L_k`` / n rows of k left endpoints.

    Comments (``#``) may precede the header.  Body tokens are read in order,
    so a ``k = 0`` file may have blank lines or none at all.
    """
    lines = text.splitlines()
    i = 0
    while i < len(lines) and (not lines[i].strip() or lines[i].lstrip().startswith("#")):
        i += 1
    if i == len(lines):
        raise GraphFormatError("missing 'n k' header")
    head = lines[i].split()
    try:
        n, k = (int(t) for t in head)
    except ValueError:
        raise GraphFormatError("header must be 'n k'", i + 1) from None
    if n < 0 or k < 0:
        raise GraphFormatError("header values must be non-negative", i + 1)
    tokens: list[tuple[int, str]] = []
    for j in range(i + 1, len(lines)):
        tokens.extend((j + 1, t) for t in lines[j].split())
    if len(tokens) != k + n * k:
        raise GraphFormatError(f"expected {k + n * k} integers after the header, found {len(tokens)}")
    vals = []
    for lineno, t in tokens:
        try:
            vals.append(int(t))
        except ValueError:
            raise GraphFormatError(f"non-integer token {t!r}", lineno) from None
    lengths = vals[:k]
    lefts = np.array(vals[k:], dtype=np.int64).reshape(n, k)
    for j, L in enumerate(lengths):
        if L <= 0:
            raise GraphFormatError(f"length of dimension {j + 1} must be positive", i + 2)
    dims = tuple(IntervalAssignment(lefts[:, j], lengths[j]) for j in range(k))
    return CubeRepresentation(n, dims)
