"""Level-by-level count of stacked strip arrangements.

``M^l[A, k]`` is the number of independent 2l x 2n arrangements whose top
strip is ``(A, k)``.  Level 1 is all ones and

    M^l[A, k] = sum over B <= A of sum_{i = p(A,B,k)}^{q(A,B,k)} M^{l-1}[B, i].

Rows are indexed by the integer value of A's bit mask and columns by
``k - 1``.  Summing ``M^m`` gives the number of maximum arrangements on the
2m x 2n board.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from kings.bounds import bounds_arrays, p_bound, q_bound
from kings.strips import mirror_mask

DEFAULT_MAX_N = 16
INT64_SAFE = 1 << 62
# pairs handled per vectorised block
CHUNK_PAIRS = 1 << 17


class ResourceLimitError(RuntimeError):
    pass


class PartialSequenceError(ResourceLimitError):
    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


@dataclass
class CountMatrix:
    n: int
    level: int
    cells: np.ndarray  # shape (2**n, n+1), dtype object (python ints)

    def total(self) -> int:
        return int(sum(int(x) for x in self.cells.ravel()))

    def row(self, A: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.cells[A])

    def get(self, A: int, k: int) -> int:
        return int(self.cells[A, k - 1])


@dataclass
class CountResult:
    n: int
    m: int
    count: int
    levels_computed: int
    elapsed: float
    # per-level (A, B) pairs times split columns evaluated
    level_work: list[int] = field(default_factory=list)
    level_seconds: list[float] = field(default_factory=list)


def init_matrix(n: int, max_n: int = DEFAULT_MAX_N) -> CountMatrix:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if n > max_n:
        raise ResourceLimitError(
            f"n={n} exceeds the configured ceiling of {max_n} "
            f"({(1 << n) * (n + 1)} cells per level, {3 ** n} subset pairs)")
    cells = np.empty((1 << n, n + 1), dtype=object)
    cells.fill(1)
    return CountMatrix(n, 1, cells)


# -- pair generation --------------------------------------------------------
#
# A pair B <= A <= [n] is a ternary word: digit 0 = square not in A,
# 1 = in A only, 2 = in A and B.  The low ``h`` digits come from one lookup
# table and the rest from another, so a block of consecutive high words gives
# a dense batch of pairs without any python-level loop over submasks.

def _ternary_table(digits: int) -> tuple[np.ndarray, np.ndarray]:
    A = np.zeros(1, dtype=np.int64)
    B = np.zeros(1, dtype=np.int64)
    for j in range(digits):
        bit = np.int64(1 << j)
        A = np.concatenate([A, A | bit, A | bit])
        B = np.concatenate([B, B, B | bit])
    return A, B


class _PairSource:
    def __init__(self, n: int):
        self.n = n
        self.low_digits = min(n, 8)
        self.high_digits = n - self.low_digits
        self.low_a, self.low_b = _ternary_table(self.low_digits)
        self.high_a, self.high_b = _ternary_table(self.high_digits)
        self.high_count = len(self.high_a)
        self.per_high = len(self.low_a)

    def blocks(self, start: int, stop: int):
        """Yield (A, B) arrays for high words start..stop-1, in chunks."""
        step = max(1, CHUNK_PAIRS // self.per_high)
        shift = self.low_digits
        for lo in range(start, stop, step):
            hi = min(stop, lo + step)
            ha = (self.high_a[lo:hi] << shift)[:, None]
            hb = (self.high_b[lo:hi] << shift)[:, None]
            yield (ha | self.low_a).ravel(), (hb | self.low_b).ravel()


def _prefix(prev: np.ndarray) -> np.ndarray:
    rows, cols = prev.shape
    P = np.zeros((rows, cols + 1), dtype=prev.dtype)
    P[:, 1:] = np.cumsum(prev, axis=1)
    return P


def _partial_step(n: int, P: np.ndarray, cols: np.ndarray, start: int, stop: int):
    """Contribution of high words start..stop-1 to the next level."""
    src = _PairSource(n)
    out = np.zeros((1 << n, len(cols)), dtype=P.dtype)
    work = 0
    for A, B in src.blocks(start, stop):
        p, q = bounds_arrays(A, B, n)
        p = p[:, cols].astype(np.intp)
        q = q[:, cols].astype(np.intp)
        rowsB = B[:, None]
        vals = P[rowsB, q] - P[rowsB, p - 1]
        np.add.at(out, A, vals)
        work += vals.size
    return out, work


def _split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    edges = [total * i // parts for i in range(parts + 1)]
    return [(edges[i], edges[i + 1]) for i in range(parts) if edges[i] < edges[i + 1]]


def resolve_workers(workers: int | None) -> int:
    if workers is None or workers == 0:
        workers = int(os.environ.get("KINGS_WORKERS", "0") or 0)
    if workers <= 0:
        workers = 1
    return workers


def _mirror_perm(n: int) -> np.ndarray:
    return np.array([mirror_mask(a, n) for a in range(1 << n)], dtype=np.intp)


def step(prev: CountMatrix, workers: int | None = None, mirror: bool = False,
         executor: ProcessPoolExecutor | None = None, _stats: dict | None = None) -> CountMatrix:
    """Advance one level.

    ``mirror=True`` computes only the splits ``k <= ceil((n+1)/2)`` and fills
    the rest from ``M[A, k] = M[rho(A), n+2-k]``.
    """
    n = prev.n
    workers = resolve_workers(workers)
    total = prev.total()
    fast = total < INT64_SAFE
    prev_cells = prev.cells.astype(np.int64) if fast else prev.cells
    P = _prefix(prev_cells)

    ncols = (n + 2) // 2 if mirror else n + 1
    cols = np.arange(ncols, dtype=np.intp)

    src = _PairSource(n)
    ranges = _split_ranges(src.high_count, workers)
    if len(ranges) == 1:
        parts = [_partial_step(n, P, cols, *ranges[0])]
    else:
        own = executor is None
        pool = executor or ProcessPoolExecutor(max_workers=len(ranges))
        try:
            futures = [pool.submit(_partial_step, n, P, cols, a, b) for a, b in ranges]
            parts = [f.result() for f in futures]
        finally:
            if own:
                pool.shutdown()

    # fixed-order reduction keeps results independent of scheduling
    acc = parts[0][0]
    for out, _ in parts[1:]:
        acc = acc + out
    work = sum(w for _, w in parts)

    new = np.empty((1 << n, n + 1), dtype=object)
    new[:, :ncols] = acc.astype(object) if fast else acc
    if mirror:
        rho = _mirror_perm(n)
        for k in range(ncols + 1, n + 2):
            new[:, k - 1] = new[rho, n + 1 - k]
    if _stats is not None:
        _stats["work"] = work
    return CountMatrix(n, prev.level + 1, new)


def step_direct(prev: CountMatrix) -> CountMatrix:
    """Literal double sum with the scalar bound functions; slow, for cross-checks."""
    n = prev.n
    new = np.empty_like(prev.cells)
    for A in range(1 << n):
        for k in range(1, n + 2):
            s = 0
            B = A
            while True:
                for i in range(p_bound(A, B, k, n), q_bound(A, B, k, n) + 1):
                    s += int(prev.cells[B, i - 1])
                if B == 0:
                    break
                B = (B - 1) & A
            new[A, k - 1] = s
    return CountMatrix(n, prev.level + 1, new)


def levels(n: int, m: int | None = None, **kw):
    """Yield ``M^1 .. M^m`` for strip size n."""
    m = n if m is None else m
    M = init_matrix(n, max_n=kw.pop("max_n", DEFAULT_MAX_N))
    yield M
    for _ in range(m - 1):
        M = step(M, **kw)
        yield M


def count_kings_rect(n: int, m: int, workers: int | None = None, mirror: bool = False,
                     max_n: int = DEFAULT_MAX_N) -> CountResult:
    """Maximum king arrangements on a 2m x 2n board, 1 <= m <= n."""
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    if m > n:
        raise ValueError(f"m={m} exceeds n={n}; swap the arguments")
    t0 = time.perf_counter()
    M = init_matrix(n, max_n=max_n)
    workers = resolve_workers(workers)
    level_work, level_seconds = [], []
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 and m > 1 else None
    try:
        for _ in range(m - 1):
            stats: dict = {}
            ts = time.perf_counter()
            M = step(M, workers=workers, mirror=mirror, executor=pool, _stats=stats)
            level_seconds.append(time.perf_counter() - ts)
            level_work.append(stats["work"])
    finally:
        if pool is not None:
            pool.shutdown()
    return CountResult(n, m, M.total(), M.level, time.perf_counter() - t0,
                       level_work, level_seconds)


def count_kings(n: int, **kw) -> CountResult:
    """Maximum king arrangements on the 2n x 2n board."""
    return count_kings_rect(n, n, **kw)


def sequence(max_n: int, m_policy: str | int = "square", ceiling: int = DEFAULT_MAX_N,
             **kw) -> list[CountResult]:
    """Independent results for n = 1..max_n.

    ``m_policy`` is ``"square"`` or a fixed height m.  For n < m the board is
    transposed (2m x 2n has the same count as 2n x 2m) and the result keeps the
    requested (n, m).  ``ceiling`` is the largest strip size attempted.
    """
    if max_n < 1:
        raise ValueError(f"max_n must be at least 1, got {max_n}")
    kw["max_n"] = ceiling
    out: list[CountResult] = []
    for n in range(1, max_n + 1):
        try:
            if m_policy == "square":
                out.append(count_kings(n, **kw))
                continue
            m = int(m_policy)
            if m <= n:
                out.append(count_kings_rect(n, m, **kw))
            else:
                r = count_kings_rect(m, n, **kw)
                out.append(CountResult(n, m, r.count, r.levels_computed, r.elapsed,
                                       r.level_work, r.level_seconds))
        except (ResourceLimitError, MemoryError) as exc:
            raise PartialSequenceError(f"stopped at n={n}: {exc}", out) from exc
    return out
