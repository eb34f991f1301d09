import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splithad.constructions import field_of_order, oa_from_affine_plane
from splithad.errors import BadResidueClass, InvalidCore
from splithad.quaternary import (
    QuatMatrix,
    check_quat_core,
    construct_quaternary,
    hermitian_gram,
    q_compose,
    q_verify,
    quaternary_core,
    quaternary_hadamard,
    question1_probe,
)

UNITS = np.array([1, 1j, -1, -1j])


def complex_gram(E):
    """Oracle through Python complex arithmetic (exact at these sizes)."""
    H = UNITS[np.asarray(E, dtype=np.int64) % 4]
    return H @ H.conj().T


@pytest.mark.parametrize("q", [5, 9, 13])
def test_seed_matrix(q):
    H = quaternary_hadamard(q)
    assert H.shape == (q + 1, q + 1)
    G = complex_gram(H.exponents)
    assert np.array_equal(G, (q + 1) * np.eye(q + 1))
    re, im = hermitian_gram(H)
    assert (re == G.real).all() and (im == G.imag).all()


def test_seed_residue_class():
    with pytest.raises(BadResidueClass):
        quaternary_hadamard(7)


@pytest.mark.parametrize("q", [5, 9])
def test_core(q):
    L = quaternary_core(quaternary_hadamard(q))
    assert L.shape == (q, q)
    assert np.array_equal(complex_gram(L), (q + 1) * np.eye(q) - 1)


def test_bad_core():
    with pytest.raises(InvalidCore):
        check_quat_core(np.zeros((5, 5), np.uint8))


@pytest.mark.parametrize("q", [5, 9, 13])
def test_construct_and_verify(q):
    h = construct_quaternary(q)
    assert h.shape == (q * q, q * (q + 1)) and h.block_width == q
    rep = q_verify(h)
    t = (q + 1) // 2
    assert rep.passed and set(rep.observed) == {-t, t}
    assert q_verify(h, prefilter=False).passed


def test_selection_values_by_oracle():
    q = 5
    h = construct_quaternary(q)
    off = ~np.eye(q * q, dtype=bool)
    for sel in itertools.combinations(range(q + 1), 3):
        cols = [j for i in sel for j in range(i * q, (i + 1) * q)]
        G = complex_gram(h.exponents[:, cols])
        assert set(np.abs(G[off]).round(9).tolist()) == {3.0}
        assert np.allclose(np.diag(G), q * (q + 1) / 2)


@pytest.mark.parametrize("prefilter", [True, False])
def test_flipped_entry_fails(prefilter, rng):
    h = construct_quaternary(5)
    for _ in range(10):
        E = h.exponents.copy()
        i, j = rng.integers(25), rng.integers(30)
        E[i, j] = (E[i, j] + rng.integers(1, 4)) % 4
        rep = q_verify(QuatMatrix(E, 5), prefilter=prefilter)
        assert not rep.passed and rep.witness


def test_sample_mode():
    h = construct_quaternary(9)
    rep = q_verify(h, "sample", samples=30, seed=1)
    assert rep.passed
    with pytest.raises(ValueError):
        q_verify(h, "sample", samples=30)


@pytest.mark.parametrize("q", [5, 9])
def test_probe_plain(q):
    h = construct_quaternary(q)
    res = question1_probe(h)
    assert res.succeeded, res.detail
    assert q_compose(res.oa, res.cores).exponents.shape == h.shape


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=15, deadline=None)
def test_probe_with_row_phases(seed):
    rng = np.random.default_rng(seed)
    q = 5
    h = construct_quaternary(q)
    phases = rng.integers(0, 4, size=q * q)
    E = (h.exponents.astype(np.int64) + phases[:, None]) % 4
    g = QuatMatrix(E, q)
    # unit row phases keep every modulus but need not keep values real
    G = complex_gram(E)
    assert np.allclose(np.abs(G), np.abs(complex_gram(h.exponents)))
    res = question1_probe(g)
    assert res.succeeded
    recomposed = q_compose(res.oa, res.cores).exponents.astype(np.int64)
    assert (recomposed == (E + res.row_phases[:, None]) % 4).all()


def test_probe_distinct_cores():
    q = 5
    oa = oa_from_affine_plane(field_of_order(q))
    L = quaternary_core(quaternary_hadamard(q))
    rng = np.random.default_rng(0)
    h = q_compose(oa, [L[rng.permutation(q)] for _ in range(q + 1)])
    assert q_verify(h).passed
    assert question1_probe(h).succeeded


def test_probe_reports_failure(rng):
    E = rng.integers(0, 4, size=(25, 30))
    res = question1_probe(QuatMatrix(E, 5))
    assert not res.succeeded and res.detail
