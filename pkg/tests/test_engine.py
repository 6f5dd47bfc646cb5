import numpy as np
import pytest

from kings import engine
from kings.bounds import bounds_profile
from kings.engine import (
    PartialSequenceError,
    ResourceLimitError,
    count_kings,
    count_kings_rect,
    init_matrix,
    levels,
    sequence,
    step,
    step_direct,
)
from kings.oracle import oracle_count
from kings.strips import mirror_mask

# Printed n = 3 matrices.  Rows run {1,2,3}, {2,3}, {1,3}, {1,2}, {3}, {2},
# {1}, {}: larger sets first, ties by descending bit-mask value.
PAPER_M2 = [
    [32, 32, 32, 32],
    [12, 16, 16, 16],
    [14, 14, 14, 14],
    [16, 16, 16, 12],
    [7, 7, 8, 8],
    [6, 8, 8, 6],
    [8, 8, 7, 7],
    [4, 4, 4, 4],
]
PAPER_M3 = [
    [408, 408, 408, 408],
    [88, 134, 134, 134],
    [110, 110, 110, 110],
    [134, 134, 134, 88],
    [38, 38, 46, 46],
    [30, 44, 44, 30],
    [46, 46, 38, 38],
    [16, 16, 16, 16],
]

K2 = 79  # oracle_count(4, 4), pinned


PAPER_ROW_ORDER = sorted(range(8), key=lambda a: (-bin(a).count("1"), -a))


def as_lists(M):
    return [list(M.row(A)) for A in range(M.cells.shape[0])]


def test_init_matrix():
    M = init_matrix(3)
    assert M.cells.shape == (8, 4) and M.level == 1
    assert all(v == 1 for v in M.cells.ravel())
    assert init_matrix(1).cells.shape == (2, 2)
    for n in range(1, 8):
        assert init_matrix(n).total() == 2 ** n * (n + 1)


def test_init_matrix_rejects():
    with pytest.raises(ValueError):
        init_matrix(0)
    with pytest.raises(ResourceLimitError):
        init_matrix(9, max_n=8)


def test_printed_matrices_cell_for_cell():
    M1 = init_matrix(3)
    M2 = step(M1)
    M3 = step(M2)
    assert PAPER_ROW_ORDER == [7, 6, 5, 3, 4, 2, 1, 0]
    assert [list(M2.row(a)) for a in PAPER_ROW_ORDER] == PAPER_M2
    assert [list(M3.row(a)) for a in PAPER_ROW_ORDER] == PAPER_M3
    assert M2.row(0b111) == (32, 32, 32, 32)
    assert M2.row(0) == (4, 4, 4, 4)
    assert M3.row(0b111) == (408, 408, 408, 408)
    assert M3.level == 3


@pytest.mark.parametrize("n", range(1, 6))
def test_step_matches_direct_double_sum(n):
    fast = slow = init_matrix(n)
    for _ in range(n - 1):
        fast, slow = step(fast), step_direct(slow)
        assert as_lists(fast) == as_lists(slow)


def test_count_examples():
    assert count_kings(1).count == 4
    assert count_kings(2).count == K2
    assert count_kings(3).count == 3600
    assert count_kings_rect(3, 1).count == 32
    assert count_kings_rect(3, 2).count == 408
    assert count_kings_rect(2, 2).count == count_kings(2).count


def test_count_result_metadata():
    r = count_kings_rect(4, 3)
    assert (r.n, r.m, r.levels_computed) == (4, 3, 3)
    assert len(r.level_work) == 2 and r.elapsed >= 0
    assert r.level_work[0] == 3 ** 4 * 5


def test_rect_rejects():
    with pytest.raises(ValueError):
        count_kings_rect(2, 3)
    with pytest.raises(ValueError):
        count_kings_rect(2, 0)


@pytest.mark.parametrize("n", range(1, 5))
def test_rect_matches_oracle(n):
    for m in range(1, n + 1):
        assert count_kings_rect(n, m).count == oracle_count(2 * n, 2 * m).count


@pytest.mark.parametrize("n", range(1, 9))
def test_mirror_flag_is_bit_identical(n):
    plain = list(levels(n))
    mirrored = list(levels(n, mirror=True))
    for a, b in zip(plain, mirrored):
        assert as_lists(a) == as_lists(b)


@pytest.mark.parametrize("workers", [2, 3])
def test_worker_count_does_not_change_cells(workers):
    for n in (3, 7, 9):
        one = list(levels(n, workers=1))
        many = list(levels(n, workers=workers))
        for a, b in zip(one, many):
            assert as_lists(a) == as_lists(b)


def test_env_var_sets_workers(monkeypatch):
    monkeypatch.setenv("KINGS_WORKERS", "2")
    assert engine.resolve_workers(None) == 2
    assert engine.resolve_workers(0) == 2
    assert engine.resolve_workers(3) == 3
    monkeypatch.delenv("KINGS_WORKERS")
    assert engine.resolve_workers(None) == 1


def test_bigint_path_agrees_with_int64_path(monkeypatch):
    expected = [count_kings(n).count for n in range(1, 8)]
    monkeypatch.setattr(engine, "INT64_SAFE", 0)
    assert [count_kings(n).count for n in range(1, 8)] == expected


def test_counts_exceed_64_bits():
    # arbitrary precision is needed well before n = 26
    assert count_kings(10).count > 2 ** 64


def test_small_chunks_give_same_result(monkeypatch):
    expected = count_kings(9).count
    monkeypatch.setattr(engine, "CHUNK_PAIRS", 1)
    assert count_kings(9).count == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_row_relabelling_leaves_sums_unchanged(n):
    # store row A at position perm[A] and run the recursion in that layout
    perm = np.random.default_rng(n).permutation(1 << n)
    inv = np.argsort(perm)
    cells = np.ones((1 << n, n + 1), dtype=object)
    reference = list(levels(n))
    for level in range(2, n + 1):
        new = np.zeros_like(cells)
        for pos in range(1 << n):
            A = int(inv[pos])
            for k in range(1, n + 2):
                new[pos, k - 1] = sum(
                    cells[perm[B], i - 1]
                    for B in range(1 << n) if not B & ~A
                    for i in bounds_profile(A, B, n).interval(k))
        cells = new
        assert sum(cells.ravel()) == reference[level - 1].total()
        assert as_lists(reference[level - 1]) == [list(cells[perm[A]]) for A in range(1 << n)]


@pytest.mark.parametrize("n", range(1, 9))
def test_structural_invariants(n):
    rho = [mirror_mask(a, n) for a in range(1 << n)]
    full = (1 << n) - 1
    prev = None
    for M in levels(n):
        cells = M.cells
        assert all(int(v) >= 1 for v in cells.ravel())
        for A in range(1 << n):
            for k in range(1, n + 2):
                assert cells[A, k - 1] == cells[rho[A], n + 1 - k]
        if prev is not None:
            assert all(v == prev.total() for v in M.row(full))
            assert np.all(cells >= prev.cells)
        prev = M


def test_sequence_square():
    res = sequence(3)
    assert [r.count for r in res] == [4, K2, 3600]
    assert [r.n for r in res] == [1, 2, 3]
    assert [r.count for r in sequence(1)] == [4]


def test_sequence_fixed_height():
    res = sequence(4, m_policy=2)
    assert [(r.n, r.m) for r in res] == [(1, 2), (2, 2), (3, 2), (4, 2)]
    assert res[0].count == count_kings_rect(2, 1).count
    assert res[2].count == 408


def test_sequence_matches_oracle():
    for r in sequence(4):
        assert r.count == oracle_count(2 * r.n, 2 * r.n).count


def test_sequence_partial_on_ceiling():
    with pytest.raises(PartialSequenceError) as info:
        sequence(5, ceiling=3)
    assert [r.count for r in info.value.partial] == [4, K2, 3600]
    with pytest.raises(ValueError):
        sequence(0)
