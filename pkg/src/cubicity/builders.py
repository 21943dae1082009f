"""Randomized and derandomized k-cube builders.

Randomness
----------
Every draw comes from ``numpy.random.Generator(PCG64(seed))`` with a 64-bit
seed.  Per-invocation seeds are derived from a batch seed with
:func:`derive_seed` (a ``SeedSequence`` spawn key), so invocations are
independent of each other and of execution order.  A draw consumes, in this
order, ``n`` bounded integers for the Fisher-Yates swaps and ``n`` fair coins
for the A/B split.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .graph import Graph, GraphError, max_degree, non_edges
from .intervals import (
    Bipartition,
    CubeRepresentation,
    IntervalAssignment,
    Permutation,
    construct_m,
    verify_representation,
)

__all__ = [
    "BuildReport",
    "BuildError",
    "RetryCapExhausted",
    "derive_seed",
    "draw_permutation_and_partition",
    "rand_invocation",
    "survival_bound",
    "survival_probability_given_pi",
    "dimension_bound",
    "build_rand",
    "build_det",
]

U64 = (1 << 64) - 1
MODES = {"expected": 4, "whp": 6}


class BuildError(RuntimeError):
    """A builder gave up.  ``report`` describes the state when it stopped."""

    def __init__(self, msg: str, report: "BuildReport"):
        super().__init__(msg)
        self.report = report


class RetryCapExhausted(BuildError):
    def __init__(self, msg: str, report: "BuildReport", surviving: list[tuple[int, int]]):
        super().__init__(msg, report)
        self.surviving = surviving


@dataclass
class BuildReport:
    algorithm: str
    n: int
    m: int
    delta: int
    k_achieved: int = 0
    k_bound: int = 0
    seeds: list[int] = field(default_factory=list)
    surviving_nonedge_trace: list[int] = field(default_factory=list)
    elapsed: dict[str, float] = field(default_factory=dict)
    verified: bool = False
    fallback: bool = False
    extra: dict[str, object] = field(default_factory=dict)

    def as_dict(self) -> dict[str, object]:
        d: dict[str, object] = {
            "algorithm": self.algorithm,
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "k_achieved": self.k_achieved,
            "k_bound": self.k_bound,
        }
        d.update(self.extra)
        d["seeds"] = ",".join(map(str, self.seeds))
        d["surviving_nonedge_trace"] = ",".join(map(str, self.surviving_nonedge_trace))
        d["fallback"] = int(self.fallback)
        d["verified"] = int(self.verified)
        for phase, secs in self.elapsed.items():
            d[f"time_{phase}"] = f"{secs:.6f}"
        return d

    def to_kv(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.as_dict().items())

    def to_human(self) -> str:
        lines = [
            f"algorithm      : {self.algorithm}",
            f"graph          : n={self.n} m={self.m} max degree={self.delta}",
            f"dimensions     : {self.k_achieved} (bound {self.k_bound})",
        ]
        for k, v in self.extra.items():
            lines.append(f"{k:<15}: {v}")
        if self.seeds:
            shown = ", ".join(map(str, self.seeds[:8])) + (" ..." if len(self.seeds) > 8 else "")
            lines.append(f"seeds          : {shown}")
        if self.fallback:
            lines.append("fallback       : yes (progress quota missed at least once)")
        timing = ", ".join(f"{p} {s:.3f}s" for p, s in self.elapsed.items())
        lines.append(f"timings        : {timing}")
        lines.append(f"verified       : {'yes' if self.verified else 'NO'}")
        return "\n".join(lines) + "\n"


def derive_seed(base: int, *path: int) -> int:
    """Child seed of ``base`` along ``path``, stable across runs and platforms."""
    ss = np.random.SeedSequence(int(base) & U64, spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def draw_permutation_and_partition(n: int, seed: int) -> tuple[Permutation, Bipartition]:
    rng = np.random.Generator(np.random.PCG64(int(seed) & U64))
    swaps = rng.integers(0, np.arange(1, n + 1)) if n else np.empty(0, dtype=np.int64)
    perm = _kernels.fisher_yates(np.asarray(swaps, dtype=np.int64))
    coins = rng.integers(0, 2, size=n)
    return Permutation(perm + 1), Bipartition(coins == 0)


def rand_invocation(g: Graph, seed: int, length: int | None = None) -> IntervalAssignment:
    """One RAND step: uniform permutation, fair-coin split, then ``construct_m``."""
    pi, part = draw_permutation_and_partition(g.n, seed)
    return construct_m(g, pi, part, length)


def survival_bound(delta: int) -> Fraction:
    """Upper bound ``(2D+1)/(2D+2)`` on a non-edge surviving one RAND draw."""
    return Fraction(2 * delta + 1, 2 * delta + 2)


def survival_probability_given_pi(g: Graph, pi: Permutation, u: int, v: int) -> Fraction:
    """Exact probability that non-edge ``(u, v)`` survives, over the coins only.

    With ``a`` neighbours of ``u`` ranked above ``v`` and ``b`` neighbours of
    ``v`` ranked above ``u``, the pair survives when both land on the same
    side (1/2), or ``u`` in A, ``v`` in B and one of the ``a`` in B, or
    symmetrically.
    """
    if u == v:
        raise GraphError("u and v must differ")
    if g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is an edge")
    pv, pu = pi(v), pi(u)
    a = int((pi.values[g.neighbors(u) - 1] > pv).sum())
    b = int((pi.values[g.neighbors(v) - 1] > pu).sum())
    quarter = Fraction(1, 4)
    return Fraction(1, 2) + quarter * (1 - Fraction(1, 2**a)) + quarter * (1 - Fraction(1, 2**b))


def dimension_bound(delta: int, size: int, factor: int = 4) -> int:
    """``ceil(factor * (delta + 1) * ln size)``; 0 when ``size <= 1``."""
    if size <= 1:
        return 0
    return math.ceil(factor * (delta + 1) * math.log(size))


def _empty_result(g: Graph, report: BuildReport) -> tuple[CubeRepresentation, BuildReport]:
    report.verified = True
    report.surviving_nonedge_trace = [0]
    return CubeRepresentation(g.n, ()), report


def build_rand(
    g: Graph, mode: str = "expected", seed: int = 0, retries: int = 16
) -> tuple[CubeRepresentation, BuildReport]:
    """Intersect ``k`` independent RAND draws, retrying whole batches.

    ``mode="expected"`` uses ``k = ceil(4(D+1) ln n)``, ``mode="whp"`` uses
    ``ceil(6(D+1) ln n)``.  Batch ``r`` is seeded with ``seed + r``;
    invocation ``i`` of a batch with ``derive_seed(batch_seed, i)``.

    Raises
    ------
    RetryCapExhausted
        No batch among ``retries`` verified.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {sorted(MODES)}, got {mode!r}")
    if retries < 1:
        raise ValueError("retries must be >= 1")
    delta = max_degree(g)
    k = dimension_bound(delta, g.n, MODES[mode])
    report = BuildReport("rand" if mode == "expected" else "rand-whp", g.n, g.m, delta, k_bound=k)
    report.elapsed = {"construct": 0.0, "verify": 0.0}
    if g.is_complete():
        return _empty_result(g, report)

    extra: list[tuple[int, int]] = []
    for r in range(retries):
        batch_seed = (int(seed) + r) & U64
        report.seeds.append(batch_seed)
        t0 = time.perf_counter()
        dims = tuple(rand_invocation(g, derive_seed(batch_seed, i)) for i in range(k))
        rep = CubeRepresentation(g.n, dims)
        t1 = time.perf_counter()
        verdict = verify_representation(g, rep)
        t2 = time.perf_counter()
        report.elapsed["construct"] += t1 - t0
        report.elapsed["verify"] += t2 - t1
        # RAND only ever yields supergraphs
        assert not verdict.missing, verdict.missing[:5]
        extra = verdict.extra
        report.surviving_nonedge_trace.append(len(extra))
        if verdict.valid:
            report.k_achieved = rep.k
            report.verified = True
            report.extra["batches"] = r + 1
            return rep, report
    report.extra["batches"] = retries
    raise RetryCapExhausted(
        f"no batch of {k} RAND draws represented the graph after {retries} attempts; "
        f"{len(extra)} non-edges survived the last one",
        report,
        extra,
    )


def build_det(
    g: Graph,
    length: int | None = None,
    scan_cap: int = 10_000,
    base_seed: int = 0,
) -> tuple[CubeRepresentation, BuildReport]:
    """Deterministic builder with at most ``ceil(4(D+1) ln n)`` axes.

    Keeps the set ``R`` of non-edges not yet separated.  For the ``j``-th axis
    it scans the seed schedule ``derive_seed(base_seed, j, s)``, ``s = 0, 1,
    ...`` and keeps the first draw separating at least
    ``ceil(|R| / (2D + 2))`` members of ``R``.  Averaging over a uniform
    draw guarantees such a draw exists, and the quota shrinks ``|R|`` by a
    factor ``1 - 1/(2D+2)`` per axis, which pins the axis count below the
    bound.  If ``scan_cap`` draws pass without meeting the quota, the best
    draw seen is taken (if it separates anything) and ``report.fallback`` is
    set.

    ``length`` sets the common interval length (default ``n``); anything
    ``>= n`` induces the same graphs.
    """
    delta = max_degree(g)
    t = dimension_bound(delta, g.n, 4)
    report = BuildReport("det", g.n, g.m, delta, k_bound=t)
    report.extra["scan_cap"] = scan_cap
    L = max(g.n, 1) if length is None else int(length)
    if L < g.n:
        raise ValueError(f"interval length {L} smaller than n = {g.n}")
    t0 = time.perf_counter()
    if g.is_complete():
        report.elapsed = {"construct": 0.0, "verify": 0.0}
        return _empty_result(g, report)

    R = non_edges(g)
    ru, rv = R.u, R.v
    divisor = 2 * delta + 2
    trace = [int(ru.size)]
    dims: list[IntervalAssignment] = []
    draws = 0
    j = 0
    while ru.size:
        quota = -(-ru.size // divisor)
        best_sep = None
        best_count = 0
        best_seed = -1
        chosen = None
        for s in range(scan_cap):
            sd = derive_seed(base_seed, j, s)
            pi, part = draw_permutation_and_partition(g.n, sd)
            lefts = _kernels.m_lefts(g.indptr, g.indices, pi.values, part.in_a, np.int64(L))
            sep = _kernels.separated_mask(lefts, np.int64(L), ru, rv)
            c = int(sep.sum())
            draws += 1
            if c > best_count:
                best_sep, best_count, best_seed, best_lefts = sep, c, sd, lefts
            if c >= quota:
                chosen = (sep, sd, lefts)
                break
        if chosen is None:
            if best_count == 0:
                report.surviving_nonedge_trace = trace
                raise BuildError(
                    f"axis {j + 1}: no draw among {scan_cap} separated any of {ru.size} non-edges",
                    report,
                )
            report.fallback = True
            chosen = (best_sep, best_seed, best_lefts)
        sep, sd, lefts = chosen
        dims.append(IntervalAssignment(lefts, L))
        report.seeds.append(sd)
        keep = ~sep
        ru, rv = ru[keep], rv[keep]
        trace.append(int(ru.size))
        j += 1
    t1 = time.perf_counter()
    rep = CubeRepresentation(g.n, tuple(dims))
    verdict = verify_representation(g, rep)
    t2 = time.perf_counter()
    report.k_achieved = rep.k
    report.surviving_nonedge_trace = trace
    report.verified = verdict.valid
    report.extra["draws"] = draws
    report.elapsed = {"construct": t1 - t0, "verify": t2 - t1}
    return rep, report
