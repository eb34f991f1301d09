import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splithad.bmsph import (
    cluster_rows,
    compose,
    construct_bmsph,
    decompose,
    half_selections,
    pair_profile,
    sample_selections,
    selection_values,
    sign_normalize,
    verify_exhaustive,
    verify_structural,
)
from splithad.constructions import OrthogonalArray, field_of_order, hadamard_core, oa_from_affine_plane, paley_hadamard
from splithad.errors import (
    BudgetExceeded,
    ClassSizeViolation,
    IndexOutOfRange,
    InvalidOA,
    NotMultiSplittable,
    ShapeMismatch,
)
from splithad.exactmat import BlockedMatrix


def naive_is_bmsph(M, p):
    """Literal definition: every half-selection gram has off-diagonal entries +-(p+1)/2."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if not (M @ M.T == p * (p + 1) * np.eye(n)).all():
        return False
    off = ~np.eye(n, dtype=bool)
    for sel in itertools.combinations(range(p + 1), (p + 1) // 2):
        cols = [j for i in sel for j in range(i * p, (i + 1) * p)]
        G = M[:, cols] @ M[:, cols].T
        if not (np.abs(G[off]) == (p + 1) // 2).all():
            return False
    return True


def perturb(h, rng):
    """Random row permutation, row signs, block permutation and within-block column signs."""
    p = h.block_width
    M = h.matrix.astype(np.int8)
    M = M[rng.permutation(M.shape[0])] * rng.choice(np.array([-1, 1], np.int8), M.shape[0])[:, None]
    blocks = rng.permutation(p + 1)
    cols = np.concatenate([np.arange(b * p, (b + 1) * p)[rng.permutation(p)] for b in blocks])
    M = M[:, cols] * rng.choice(np.array([-1, 1], np.int8), M.shape[1])[None, :]
    return BlockedMatrix(M, p)


def test_golden_example_passes(golden_9x12):
    assert naive_is_bmsph(golden_9x12.matrix, 3)
    assert verify_structural(golden_9x12).passed
    rep = verify_exhaustive(golden_9x12)
    assert rep.passed and set(rep.observed) == {-2, 2}
    assert rep.checks_run == 1 + 3


def test_golden_bibd_as_matrix(golden_49x56):
    M = 1 - 2 * golden_49x56.table.astype(np.int8)
    h = BlockedMatrix(M, 7)
    assert verify_structural(h).passed
    rep = verify_exhaustive(h)
    assert rep.passed and set(rep.observed) == {-4, 4}
    assert rep.checks_run == 1 + 35


@pytest.mark.parametrize("p", [3, 7])
def test_construct_matches_definition(p):
    h = construct_bmsph(p)
    assert h.shape == (p * p, p * (p + 1))
    assert naive_is_bmsph(h.matrix, p)
    assert verify_structural(h).passed
    for method in ("profile", "gram"):
        rep = verify_exhaustive(h, method=method)
        assert rep.passed and set(rep.observed) == {-(p + 1) // 2, (p + 1) // 2}


def test_distinct_cores_per_block():
    rng = np.random.default_rng(3)
    L = hadamard_core(paley_hadamard(3))
    cores = []
    for _ in range(4):
        perm = rng.permutation(3)
        cores.append(L[perm])
    h = compose(oa_from_affine_plane(field_of_order(3)), cores)
    assert naive_is_bmsph(h.matrix, 3)
    assert verify_structural(h).passed and verify_exhaustive(h).passed


def test_compose_rejects_bad_inputs():
    oa = oa_from_affine_plane(field_of_order(3))
    L = hadamard_core(paley_hadamard(3))
    with pytest.raises(ShapeMismatch):
        compose(oa, [L] * 3)
    t = oa.table.copy()
    t[0, 0] = 1
    with pytest.raises(InvalidOA):
        compose(OrthogonalArray(t, levels=3), [L] * 4)


def test_pair_profile_shapes(h3):
    oa = oa_from_affine_plane(field_of_order(3)).table
    # two runs agreeing only in column 2
    x, y = next(
        (x, y) for x, y in itertools.combinations(range(9), 2) if np.flatnonzero(oa[x] == oa[y]).tolist() == [2]
    )
    assert pair_profile(h3, x, y).tolist() == [-1, -1, 3, -1]
    with pytest.raises(ValueError):
        pair_profile(h3, 2, 2)
    with pytest.raises(IndexOutOfRange):
        pair_profile(h3, 0, 9)


@pytest.mark.parametrize("p", [3, 7])
def test_profiles_sum_to_zero(p):
    h = construct_bmsph(p)
    for x, y in itertools.combinations(range(0, p * p, max(1, p // 3)), 2):
        a = pair_profile(h, x, y)
        assert a.sum() == 0
        assert sorted(np.abs(a).tolist()) == [1] * p + [p]


def test_single_flip_fails_both(h3, rng):
    for _ in range(20):
        M = h3.matrix.copy()
        i, j = rng.integers(9), rng.integers(12)
        M[i, j] *= -1
        bad = BlockedMatrix(M, 3)
        assert not naive_is_bmsph(M, 3)
        rep = verify_structural(bad)
        assert not rep.passed and rep.witness.startswith("rows (")
        assert not verify_exhaustive(bad).passed
        assert not verify_exhaustive(bad, method="gram").passed


def test_half_selections_counts():
    assert len(list(half_selections(4))) == 6
    reps = list(half_selections(8, representatives=True))
    assert len(reps) == 35 and all(0 in s for s in reps)
    assert len(list(half_selections(8))) == math.comb(8, 4)


def test_sampling_is_seeded(h7):
    a = sample_selections(8, 50, seed=42)
    assert a == sample_selections(8, 50, seed=42)
    assert all(len(s) == 4 and list(s) == sorted(s) for s in a)
    with pytest.raises(ValueError):
        verify_exhaustive(h7, "sample", samples=10)


@pytest.mark.slow
def test_sample_p19_deterministic():
    h = construct_bmsph(19)
    r1 = verify_exhaustive(h, "sample", samples=1000, seed=42)
    r2 = verify_exhaustive(h, "sample", samples=1000, seed=42)
    assert r1.passed and r1 == r2
    assert set(r1.observed) == {-10, 10}


def test_budget(h7):
    with pytest.raises(BudgetExceeded):
        verify_exhaustive(h7, budget=10)


def test_selection_values(golden_9x12):
    for sel in itertools.combinations(range(4), 2):
        assert set(selection_values(golden_9x12, sel).tolist()) <= {-2, 2}


def test_sign_normalize_idempotent(h7):
    rowp, out = sign_normalize(h7)
    assert rowp.is_identity() and out == h7


def test_sign_normalize_restores_negated_rows(h7):
    M = h7.matrix.copy()
    M[3:6] *= -1
    rowp, out = sign_normalize(BlockedMatrix(M, 7))
    assert np.flatnonzero(rowp.signs < 0).tolist() == [3, 4, 5]
    assert out == h7


def test_random_matrix_is_rejected(rng):
    M = rng.choice(np.array([-1, 1], np.int8), size=(9, 12))
    with pytest.raises(NotMultiSplittable):
        decompose(BlockedMatrix(M, 3))
    assert not verify_structural(BlockedMatrix(M, 3)).passed


@pytest.mark.parametrize("p", [3, 7])
def test_decompose_round_trip(p):
    oa = oa_from_affine_plane(field_of_order(p))
    L = hadamard_core(paley_hadamard(p))
    rng = np.random.default_rng(p)
    cores = [L[rng.permutation(p)] for _ in range(p + 1)]
    h = compose(oa, cores)
    oa2, cores2, rowp = decompose(h)
    assert rowp.is_identity()
    for i in range(p + 1):
        # symbols agree up to a bijection, cores up to the same row reordering
        pairs = set(zip(oa.table[:, i].tolist(), oa2.table[:, i].tolist()))
        assert len(pairs) == p
        for s, s2 in pairs:
            assert (cores[i][s] == cores2[i][s2]).all()
    assert compose(oa2, cores2) == h


def test_decompose_golden(golden_9x12):
    from splithad.constructions import check_core, verify_oa

    oa, cores, _ = decompose(golden_9x12)
    assert oa.table.shape == (9, 4) and verify_oa(oa).passed
    assert len(cores) == 4
    for L in cores:
        check_core(L)


def test_merged_classes_violate_class_sizes(h7):
    oa, cores, _ = decompose(h7)
    M = h7.matrix.copy()
    rows = np.flatnonzero(oa.table[:, 3] == 2)
    M[rows, 21:28] = cores[3][1]
    with pytest.raises(ClassSizeViolation):
        decompose(BlockedMatrix(M, 7))


def test_cluster_rows_first_occurrence():
    block = np.array([[1, -1], [1, 1], [1, -1], [1, 1], [-1, 1]], np.int8)
    labels, reps = cluster_rows(block)
    assert labels.tolist() == [0, 1, 0, 1, 2]
    assert (reps == block[[0, 1, 4]]).all()


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_verifiers_invariant_under_equivalence(seed):
    h = construct_bmsph(3)
    g = perturb(h, np.random.default_rng(seed))
    assert verify_structural(g).passed
    assert verify_exhaustive(g).passed
    oa, cores, rowp = decompose(g)
    assert compose(oa, cores) == sign_normalize(g)[1]


@given(st.integers(0, 2**32 - 1), st.integers(0, 80), st.integers(0, 80))
@settings(max_examples=40, deadline=None)
def test_structural_agrees_with_definition_on_mutants(seed, a, b):
    rng = np.random.default_rng(seed)
    M = perturb(construct_bmsph(3), rng).matrix.copy()
    for k in {a, b}:
        M[k // 12 % 9, k % 12] *= -1
    h = BlockedMatrix(M, 3)
    want = naive_is_bmsph(M, 3)
    assert verify_structural(h).passed == want
    assert verify_exhaustive(h).passed == want
