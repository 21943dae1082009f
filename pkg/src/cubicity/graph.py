"""Simple undirected graphs on vertices ``1..n``.

Storage is a sorted CSR adjacency (0-based internally) for neighbour scans
plus a hash set of pair keys for constant-time adjacency queries.  Every
public interface speaks 1-based vertex ids.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from functools import cached_property

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "GraphFormatError",
    "NonEdgeSet",
    "max_degree",
    "intersect",
    "is_supergraph",
    "non_edges",
    "read_graph",
    "write_graph",
    "complete_graph",
    "empty_graph",
    "path_graph",
    "cycle_graph",
    "star_graph",
    "binary_tree",
    "gnp_graph",
]


class GraphError(ValueError):
    """Structural problem: bad vertex id, loop, duplicate edge, size mismatch."""


class GraphFormatError(GraphError):
    """Malformed edge-list text.  ``lineno`` is 1-based (0 when unknown)."""

    def __init__(self, msg: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


class Graph:
    """Immutable simple undirected graph on ``1..n``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (u, v)
        1-based endpoints.  Self-loops and repeated pairs (in either
        orientation) raise :class:`GraphError`.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        n = int(n)
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 1 or arr.max() > n):
            bad = arr[(arr < 1).any(axis=1) | (arr > n).any(axis=1)][0]
            raise GraphError(f"edge {tuple(bad.tolist())} has a vertex outside 1..{n}")
        if (arr[:, 0] == arr[:, 1]).any():
            bad = int(arr[arr[:, 0] == arr[:, 1]][0, 0])
            raise GraphError(f"self-loop at vertex {bad}")
        lo = np.minimum(arr[:, 0], arr[:, 1]) - 1
        hi = np.maximum(arr[:, 0], arr[:, 1]) - 1
        keys = lo * n + hi
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        if keys.size > 1:
            dup = np.flatnonzero(keys[1:] == keys[:-1])
            if dup.size:
                k = int(keys[dup[0]])
                raise GraphError(f"duplicate edge ({k // n + 1}, {k % n + 1})")
        self._n = n
        self._keys = keys
        self._keys.flags.writeable = False
        self._build_csr()

    @classmethod
    def _from_keys(cls, n: int, keys: np.ndarray) -> "Graph":
        # keys must already be sorted, unique, canonical (u < v)
        g = cls.__new__(cls)
        g._n = int(n)
        g._keys = np.ascontiguousarray(keys, dtype=np.int64)
        g._keys.flags.writeable = False
        g._build_csr()
        return g

    def _build_csr(self) -> None:
        n = self._n
        eu, ev = (self._keys // n, self._keys % n) if n else (self._keys, self._keys)
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        order = np.lexsort((dst, src))
        self._indices = dst[order]
        counts = np.bincount(src, minlength=n)
        self._indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self._indptr[1:])
        self._degrees = counts.astype(np.int64)
        for a in (self._indices, self._indptr, self._degrees):
            a.flags.writeable = False

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return int(self._keys.size)

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @property
    def degrees(self) -> np.ndarray:
        """Degree array, index ``u - 1`` holds ``d(u)``."""
        return self._degrees

    @property
    def keys(self) -> np.ndarray:
        """Sorted pair keys ``(u-1) * n + (v-1)`` with ``u < v``."""
        return self._keys

    @cached_property
    def _edge_set(self) -> frozenset[int]:
        return frozenset(self._keys.tolist())

    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` array of 0-based endpoints, ``u < v``, sorted."""
        if self._n == 0:
            return np.empty((0, 2), dtype=np.int64)
        return np.stack([self._keys // self._n, self._keys % self._n], axis=1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self.edge_array().tolist():
            yield u + 1, v + 1

    def neighbors(self, u: int) -> np.ndarray:
        self._check_vertex(u)
        return self._indices[self._indptr[u - 1]:self._indptr[u]] + 1

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return int(self._degrees[u - 1])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return False
        a, b = (u, v) if u < v else (v, u)
        return (a - 1) * self._n + (b - 1) in self._edge_set

    def is_complete(self) -> bool:
        return self.m == self._n * (self._n - 1) // 2

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on ``vertices``; vertex ``vertices[i]`` becomes ``i + 1``."""
        vs = np.asarray(list(vertices), dtype=np.int64)
        local = np.full(self._n, -1, dtype=np.int64)
        local[vs - 1] = np.arange(vs.size)
        e = self.edge_array()
        lu, lv = local[e[:, 0]], local[e[:, 1]]
        keep = (lu >= 0) & (lv >= 0)
        lu, lv = lu[keep], lv[keep]
        a, b = np.minimum(lu, lv), np.maximum(lu, lv)
        return Graph._from_keys(vs.size, np.sort(a * vs.size + b))

    def _check_vertex(self, u: int) -> None:
        if not 1 <= u <= self._n:
            raise GraphError(f"vertex {u} outside 1..{self._n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._keys, other._keys)

    def __hash__(self) -> int:
        return hash((self._n, self._keys.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


class NonEdgeSet:
    """Unordered non-adjacent pairs of a reference graph.

    Held as two parallel 0-based arrays ``u < v``; iteration yields 1-based
    tuples in lexicographic order.
    """

    def __init__(self, n: int, u: np.ndarray, v: np.ndarray):
        self.n = n
        self.u = np.asarray(u, dtype=np.int64)
        self.v = np.asarray(v, dtype=np.int64)

    def __len__(self) -> int:
        return int(self.u.size)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for a, b in zip(self.u.tolist(), self.v.tolist()):
            yield a + 1, b + 1

    def __contains__(self, pair: object) -> bool:
        a, b = sorted(pair)  # type: ignore[call-overload]
        key = (a - 1) * self.n + (b - 1)
        keys = self.u * self.n + self.v
        i = np.searchsorted(keys, key)
        return bool(i < keys.size and keys[i] == key)

    def to_set(self) -> set[tuple[int, int]]:
        return set(self)

    def subset(self, mask: np.ndarray) -> "NonEdgeSet":
        return NonEdgeSet(self.n, self.u[mask], self.v[mask])


def max_degree(g: Graph) -> int:
    return int(g.degrees.max()) if g.n else 0


def _check_same_n(g1: Graph, g2: Graph) -> None:
    if g1.n != g2.n:
        raise GraphError(f"vertex-count mismatch: {g1.n} vs {g2.n}")


def intersect(g1: Graph, g2: Graph) -> Graph:
    _check_same_n(g1, g2)
    return Graph._from_keys(g1.n, np.intersect1d(g1.keys, g2.keys, assume_unique=True))


def is_supergraph(h: Graph, g: Graph) -> bool:
    """True iff every edge of ``g`` is an edge of ``h``."""
    _check_same_n(h, g)
    if g.m > h.m:
        return False
    return bool(np.isin(g.keys, h.keys, assume_unique=True).all())


def non_edges(g: Graph) -> NonEdgeSet:
    n = g.n
    if n < 2:
        empty = np.empty(0, dtype=np.int64)
        return NonEdgeSet(n, empty, empty)
    iu, iv = np.triu_indices(n, k=1)
    keys = iu * n + iv
    keep = ~np.isin(keys, g.keys, assume_unique=True)
    return NonEdgeSet(n, iu[keep].astype(np.int64), iv[keep].astype(np.int64))


# -- text format -----------------------------------------------------------


def read_graph(text: str) -> Graph:
    """Parse the edge-list format.

    Comment lines start with ``#``.  The first data line is ``n m``,
    followed by exactly ``m`` lines ``u v``.
    """
    header = None
    n = m = 0
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(nums) != 2 or nums[0] < 0 or nums[1] < 0:
                raise GraphFormatError("header must be 'n m' with n, m >= 0", lineno)
            header = lineno
            n, m = nums
            continue
        if len(nums) != 2:
            raise GraphFormatError(f"edge line must hold two ids, got {line!r}", lineno)
        u, v = nums
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex id out of range 1..{n} in {line!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        if len(edges) == m:
            raise GraphFormatError(f"more than the declared {m} edges", lineno)
        edges.append((u, v))
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}", header)
    return Graph(n, edges)


def write_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- generators ------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    iu, iv = np.triu_indices(n, k=1)
    return Graph._from_keys(n, (iu * n + iv).astype(np.int64))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs n >= 3")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star_graph(leaves: int) -> Graph:
    """Vertex 1 joined to ``leaves`` leaves."""
    return Graph(leaves + 1, [(1, i) for i in range(2, leaves + 2)])


def binary_tree(height: int) -> Graph:
    """Complete binary tree with ``2**(height+1) - 1`` vertices, heap-numbered."""
    if height < 0:
        raise GraphError("height must be >= 0")
    n = 2 ** (height + 1) - 1
    return Graph(n, [(i // 2, i) for i in range(2, n + 1)])


def gnp_graph(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p) drawn from ``numpy.random.PCG64(seed)``."""
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph._from_keys(n, (iu[keep] * n + iv[keep]).astype(np.int64))
