import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splithad.bibd import (
    bibd_parameters,
    concurrence_values,
    from_bibd,
    to_bibd,
    verify_bibd,
    verify_splittable_bibd,
)
from splithad.bmsph import construct_bmsph, verify_exhaustive, verify_structural
from splithad.constructions import IncidenceMatrix
from splithad.errors import BadParameters, BudgetExceeded
from splithad.exactmat import BlockedMatrix
from splithad.regular_embed import regularize


def naive_concurrences(D, p, sel):
    cols = [j for i in sel for j in range(i * p, (i + 1) * p)]
    G = D[:, cols].astype(np.int64) @ D[:, cols].T
    return set(G[~np.eye(D.shape[0], dtype=bool)].tolist())


def test_parameters():
    assert bibd_parameters(7) == (49, 56, 24, 21, 10)
    assert bibd_parameters(3) == (9, 12, 4, 3, 1)
    assert concurrence_values(7) == (6, 4)
    assert concurrence_values(3) == (1, 0)


def test_golden_incidence(golden_49x56):
    d = golden_49x56
    assert d.params == (49, 56, 24, 21, 10) and d.block_width == 7
    assert verify_bibd(d).passed
    rep = verify_splittable_bibd(d)
    assert rep.passed and set(rep.observed) <= {4, 6}
    assert rep.checks_run == 3 + 70
    for sel in itertools.combinations(range(8), 4):
        assert naive_concurrences(d.table, 7, sel) <= {4, 6}
    per_block = d.table.astype(np.int64).reshape(49, 8, 7).sum(axis=2)
    assert (per_block == 3).all()


def test_golden_incidence_to_matrix(golden_49x56):
    h = from_bibd(golden_49x56)
    assert verify_structural(h).passed
    assert set(verify_exhaustive(h).observed) == {-4, 4}


@pytest.mark.parametrize("p", [3, 7, 11])
def test_round_trip(p):
    h = regularize(construct_bmsph(p)).matrix
    d = to_bibd(h)
    assert d.params == bibd_parameters(p)
    assert verify_bibd(d).passed
    assert from_bibd(d) == h


def test_p3_design():
    d = to_bibd(construct_bmsph(3))
    assert d.lam == 1 and verify_bibd(d).passed
    rep = verify_splittable_bibd(d)
    assert rep.passed and set(rep.observed) <= {0, 1}


def test_to_bibd_regularizes_first(h7):
    M = h7.matrix.copy()
    M[:, :7] *= -1
    d = to_bibd(BlockedMatrix(M, 7))
    assert verify_bibd(d).passed
    assert verify_splittable_bibd(d).passed


def test_wrong_lambda():
    d = to_bibd(construct_bmsph(3))
    bad = IncidenceMatrix(d.table, r=d.r, k=d.k, lam=2, block_width=3)
    with pytest.raises(BadParameters):
        from_bibd(bad)
    with pytest.raises(BadParameters):
        from_bibd(IncidenceMatrix(d.table, r=d.r, k=d.k, lam=d.lam))


def test_flipped_cell_fails(golden_49x56):
    t = golden_49x56.table.copy()
    t[5, 9] ^= 1
    d = IncidenceMatrix(t, *golden_49x56.params[2:], block_width=7)
    rep = verify_bibd(d)
    assert not rep.passed and rep.witness
    assert not verify_splittable_bibd(d).passed


def test_corrupted_column_fails(golden_49x56):
    # swapping two entries of a column keeps every sum but breaks concurrences
    t = golden_49x56.table.copy()
    i = int(np.flatnonzero(t[:, 0] == 1)[0])
    j = int(np.flatnonzero(t[:, 0] == 0)[0])
    t[[i, j], 0] = t[[j, i], 0]
    d = IncidenceMatrix(t, *golden_49x56.params[2:], block_width=7)
    assert not verify_splittable_bibd(d).passed


def test_sample_mode_and_budget(golden_49x56):
    rep = verify_splittable_bibd(golden_49x56, "sample", samples=20, seed=5)
    assert rep.passed
    with pytest.raises(ValueError):
        verify_splittable_bibd(golden_49x56, "sample", samples=20)
    with pytest.raises(BudgetExceeded):
        verify_splittable_bibd(golden_49x56, budget=5)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=15, deadline=None)
def test_concurrences_match_bruteforce(seed):
    rng = np.random.default_rng(seed)
    h = construct_bmsph(3)
    M = h.matrix * rng.choice(np.array([-1, 1], np.int8), 12)[None, :]
    d = to_bibd(BlockedMatrix(M, 3))
    want = set().union(*(naive_concurrences(d.table, 3, s) for s in itertools.combinations(range(4), 2)))
    assert want <= {0, 1}
    assert set(verify_splittable_bibd(d).observed) == want
