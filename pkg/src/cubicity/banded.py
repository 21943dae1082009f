"""Linear arrangements and the bandwidth-driven builder.

Given an arrangement ``v_1..v_n`` of width ``b``, vertices are cut into
consecutive blocks of ``b`` positions.  Any edge joins equal or adjacent
blocks, so

* one axis placing block ``i`` at ``i * n`` (length ``n``) separates every
  pair at block distance two or more, and
* the remaining pairs all live inside some two-block piece ``H_p``; pieces
  with ``p`` in one residue class mod 3 are far apart, so their
  deterministic representations can share axes, with every other vertex
  parked at ``n`` (which meets every piece interval).

This gives at most ``3t + 1`` axes with ``t = ceil(4(D+1) ln 2b)``.
"""

from __future__ import annotations

import math
import time
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .builders import BuildReport, build_det, dimension_bound
from .graph import Graph, GraphError, GraphFormatError, max_degree
from .intervals import (
    CubeRepresentation,
    IntervalAssignment,
    union_assignments,
    verify_representation,
)

__all__ = [
    "LinearArrangement",
    "BlockDecomposition",
    "Piece",
    "width",
    "heuristic_arrangement",
    "decompose",
    "banded_pieces",
    "build_i0",
    "build_detband",
    "detband_bound",
    "read_arrangement",
    "write_arrangement",
]


class LinearArrangement:
    """Bijection between positions ``1..n`` and vertices ``1..n``.

    ``order[i - 1]`` is the vertex at position ``i``; ``positions[u - 1]``
    is the position of vertex ``u``.
    """

    def __init__(self, order: Sequence[int] | np.ndarray):
        order = np.asarray(order, dtype=np.int64).ravel()
        n = order.size
        if n and not np.array_equal(np.sort(order), np.arange(1, n + 1)):
            raise GraphError("arrangement is not a bijection onto 1..n")
        pos = np.empty(n, dtype=np.int64)
        pos[order - 1] = np.arange(1, n + 1)
        order.flags.writeable = False
        pos.flags.writeable = False
        self.order = order
        self.positions = pos

    @classmethod
    def identity(cls, n: int) -> "LinearArrangement":
        return cls(np.arange(1, n + 1))

    @property
    def n(self) -> int:
        return int(self.order.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearArrangement):
            return NotImplemented
        return np.array_equal(self.order, other.order)

    def __repr__(self) -> str:
        return f"LinearArrangement({self.order.tolist()})"


def width(g: Graph, arr: LinearArrangement) -> int:
    """Largest position gap over the edges; 0 for an edgeless graph."""
    if arr.n != g.n:
        raise GraphError(f"arrangement covers {arr.n} vertices, graph has {g.n}")
    if g.m == 0:
        return 0
    e = g.edge_array()
    p = arr.positions
    return int(np.abs(p[e[:, 0]] - p[e[:, 1]]).max())


def heuristic_arrangement(g: Graph) -> LinearArrangement:
    """Reverse Cuthill-McKee.

    Each component is searched breadth-first from its minimum-degree vertex
    (lowest id on ties), neighbours queued by ascending degree then id; the
    concatenated visit order is reversed.
    """
    n = g.n
    deg = g.degrees
    visited = np.zeros(n, dtype=bool)
    by_degree = np.lexsort((np.arange(n), deg))
    order: list[int] = []
    for start in by_degree.tolist():
        if visited[start]:
            continue
        visited[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            order.append(u)
            nbrs = g.indices[g.indptr[u]:g.indptr[u + 1]]
            nbrs = nbrs[~visited[nbrs]]
            if nbrs.size:
                nbrs = nbrs[np.lexsort((nbrs, deg[nbrs]))]
                visited[nbrs] = True
                queue.extend(nbrs.tolist())
    order.reverse()
    return LinearArrangement(np.asarray(order, dtype=np.int64) + 1)


@dataclass(frozen=True)
class BlockDecomposition:
    """Consecutive blocks of ``b`` positions; the last may be shorter.

    ``blocks[j]`` lists the vertices (1-based) of ``B_j`` in arrangement order.
    """

    b: int
    blocks: tuple[np.ndarray, ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    def block_of(self, n: int) -> np.ndarray:
        """Block index per vertex; entry ``u - 1`` for vertex ``u``."""
        out = np.empty(n, dtype=np.int64)
        for j, blk in enumerate(self.blocks):
            out[blk - 1] = j
        return out

    def flatten(self) -> np.ndarray:
        if not self.blocks:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(self.blocks)


def decompose(arr: LinearArrangement, b: int) -> BlockDecomposition:
    if b < 1:
        raise ValueError(f"block size must be >= 1, got {b}")
    blocks = tuple(arr.order[s:s + b].copy() for s in range(0, arr.n, b))
    return BlockDecomposition(int(b), blocks)


@dataclass(frozen=True)
class Piece:
    """``H_index``: the subgraph induced on two consecutive blocks.

    Local vertex ``i`` of ``graph`` is host vertex ``host[i - 1]``.
    """

    index: int
    graph: Graph
    host: np.ndarray


def banded_pieces(g: Graph, dec: BlockDecomposition) -> list[Piece]:
    out = []
    for i in range(dec.k - 1):
        host = np.concatenate([dec.blocks[i], dec.blocks[i + 1]])
        out.append(Piece(i, g.induced_subgraph(host.tolist()), host))
    return out


def build_i0(g: Graph, dec: BlockDecomposition) -> IntervalAssignment:
    """Block ``i`` sits at ``i * n`` with length ``n``."""
    n = g.n
    return IntervalAssignment(dec.block_of(n) * n, max(n, 1))


def detband_bound(delta: int, b: int) -> tuple[int, int, int]:
    """``(t, 3t + 1, 12(D+1) ceil(ln 2b) + 1)`` for block size ``b``."""
    t = dimension_bound(delta, 2 * b, 4)
    stated = 12 * (delta + 1) * math.ceil(math.log(2 * b)) + 1
    return t, 3 * t + 1, stated


def _constant(n_local: int, value: int, length: int) -> IntervalAssignment:
    return IntervalAssignment(np.full(n_local, value, dtype=np.int64), length)


def _induces_complete(ia: IntervalAssignment) -> bool:
    return ia.n == 0 or int(ia.left.max()) - int(ia.left.min()) <= ia.length


def build_detband(
    g: Graph, arr: LinearArrangement, b: int | None = None, scan_cap: int = 10_000
) -> tuple[CubeRepresentation, BuildReport]:
    """Bandwidth-driven builder.

    ``b`` defaults to the arrangement's width (at least 1); a larger ``b``
    is allowed, a smaller one is an error.  Axes that would induce the
    complete graph (a residue class with no pieces, ``I_0`` with fewer than
    three blocks) are left out.
    """
    n = g.n
    w = width(g, arr)
    if b is None:
        b = max(w, 1)
    if b < 1:
        raise ValueError(f"block size must be >= 1, got {b}")
    if w > b:
        raise GraphError(f"arrangement width {w} exceeds the declared b = {b}")
    delta = max_degree(g)
    t, bound, stated = detband_bound(delta, b)
    report = BuildReport("detband", n, g.m, delta, k_bound=bound)
    report.extra.update({"b": b, "width": w, "t": t, "k_bound_stated": stated})
    t0 = time.perf_counter()
    if g.is_complete():
        report.extra["path"] = "complete"
        report.verified = True
        report.surviving_nonedge_trace = [0]
        report.elapsed = {"construct": 0.0, "verify": 0.0}
        return CubeRepresentation(n, ()), report

    dec = decompose(arr, b)
    report.extra["blocks"] = dec.k
    if dec.k <= 1:
        rep, sub = build_det(g, scan_cap=scan_cap)
        report.extra["path"] = "det"
        report.k_achieved = rep.k
        report.seeds = sub.seeds
        report.fallback = sub.fallback
        report.verified = sub.verified
        report.surviving_nonedge_trace = sub.surviving_nonedge_trace
        report.elapsed = dict(sub.elapsed)
        return rep, report

    report.extra["path"] = "banded"
    pieces = banded_pieces(g, dec)
    piece_reps: dict[int, CubeRepresentation] = {}
    for piece in pieces:
        rep_p, sub = build_det(piece.graph, length=n, scan_cap=scan_cap)
        if not sub.verified:
            raise GraphError(f"DET failed on piece H_{piece.index}")
        report.fallback |= sub.fallback
        report.seeds.extend(sub.seeds)
        piece_reps[piece.index] = rep_p

    dims: list[IntervalAssignment] = []
    i0 = build_i0(g, dec)
    if not _induces_complete(i0):
        dims.append(i0)
    per_residue = []
    for i in range(3):
        members = [p for p in pieces if p.index % 3 == i]
        covered = np.zeros(n, dtype=bool)
        for p in members:
            covered[p.host - 1] = True
        gap = np.flatnonzero(~covered) + 1
        t_i = max((piece_reps[p.index].k for p in members), default=0)
        per_residue.append(t_i)
        for j in range(t_i):
            parts = []
            for p in members:
                rp = piece_reps[p.index]
                ia = rp.dims[j] if j < rp.k else _constant(p.graph.n, n, n)
                parts.append((p.host, ia))
            if gap.size:
                parts.append((gap, _constant(gap.size, n, n)))
            dims.append(union_assignments(n, parts))
    report.extra["axes_per_residue"] = ",".join(map(str, per_residue))
    t1 = time.perf_counter()
    rep = CubeRepresentation(n, tuple(dims))
    verdict = verify_representation(g, rep)
    t2 = time.perf_counter()
    report.k_achieved = rep.k
    report.verified = verdict.valid
    report.surviving_nonedge_trace = [len(verdict.extra)]
    report.elapsed = {"construct": t1 - t0, "verify": t2 - t1}
    return rep, report


# -- arrangement files -----------------------------------------------------


def read_arrangement(text: str, n: int | None = None) -> LinearArrangement:
    """One vertex id per non-comment line; line ``i`` holds position ``i``."""
    order = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            order.append(int(line))
        except ValueError:
            raise GraphFormatError(f"expected one vertex id, got {line!r}", lineno) from None
    if n is not None and len(order) != n:
        raise GraphFormatError(f"arrangement lists {len(order)} vertices, graph has {n}")
    return LinearArrangement(order)


def write_arrangement(arr: LinearArrangement) -> str:
    return "".join(f"{u}\n" for u in arr.order.tolist())

