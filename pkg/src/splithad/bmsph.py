"""Balancedly multi-splittable partial Hadamard matrices.

A ``p^2 x p(p+1)`` sign matrix in ``p + 1`` blocks of width ``p`` (``p = 3 mod
4``) is balancedly multi-splittable when every choice of ``(p + 1) / 2`` blocks
gives a submatrix whose row gram has all off-diagonal entries equal to
``+-(p + 1) / 2``.

Two checkers are provided.  :func:`verify_structural` looks at the per-block
inner products of every row pair (the *pair profile*) and accepts exactly when
each profile is ``(p + 1) e_i - 1`` or its negative.  :func:`verify_exhaustive`
tests the definition directly, selection by selection.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence

import numpy as np

from ._validation import check_selection
from .constructions import (
    OrthogonalArray,
    check_core,
    field_of_order,
    hadamard_core,
    oa_from_affine_plane,
    paley_hadamard,
    verify_oa,
)
from .errors import (
    BudgetExceeded,
    ClassSizeViolation,
    IndexOutOfRange,
    InvalidCore,
    InvalidOA,
    NotMultiSplittable,
    ShapeMismatch,
)
from .exactmat import (
    BlockedMatrix,
    SignedPermutation,
    VerifyReport,
    gram,
    pair_profiles,
    select_blocks,
)

__all__ = [
    "EXHAUSTIVE_BUDGET",
    "compose",
    "construct_bmsph",
    "pair_profile",
    "profile_signs",
    "verify_structural",
    "verify_exhaustive",
    "half_selections",
    "sample_selections",
    "sign_normalize",
    "decompose",
    "cluster_rows",
    "selection_values",
]

#: Largest number of half-selections ``verify_exhaustive(mode="all")`` accepts.
EXHAUSTIVE_BUDGET = 10**6


def compose(oa: OrthogonalArray, cores: Sequence[np.ndarray]) -> BlockedMatrix:
    """Substitute core rows for OA symbols: block ``(x, i)`` is ``cores[i][oa[x, i]]``."""
    p = oa.levels
    if len(cores) != oa.factors or oa.factors != p + 1 or oa.runs != p * p:
        raise ShapeMismatch(
            f"need an OA({p * p}, {p + 1}, {p}, 2) and {p + 1} cores, "
            f"got a {oa.runs}x{oa.factors} array and {len(cores)} cores"
        )
    rep = verify_oa(oa)
    if not rep.passed:
        raise InvalidOA(rep.witness)
    Ls = [check_core(c) for c in cores]
    if any(L.shape != (p, p) for L in Ls):
        raise ShapeMismatch(f"every core must be {p}x{p}")
    H = np.hstack([Ls[i][oa.table[:, i]] for i in range(p + 1)])
    return BlockedMatrix(H, p)


def construct_bmsph(p: int) -> BlockedMatrix:
    """The affine-plane array of order ``p`` composed with ``p + 1`` Paley cores."""
    oa = oa_from_affine_plane(field_of_order(p))
    core = hadamard_core(paley_hadamard(p))
    return compose(oa, [core] * (p + 1))


def pair_profile(h: BlockedMatrix, x: int, y: int) -> np.ndarray:
    """Per-block inner products ``a_i`` of rows ``x`` and ``y``."""
    n = h.shape[0]
    if not (0 <= x < n and 0 <= y < n):
        raise IndexOutOfRange(f"rows ({x}, {y}) outside 0..{n - 1}")
    if x == y:
        raise ValueError("pair_profile needs two distinct rows")
    p = h.block_width
    prod = (h.matrix[x].astype(np.int64) * h.matrix[y]).reshape(p + 1, p)
    return prod.sum(axis=1)


def profile_signs(A: np.ndarray, p: int) -> np.ndarray:
    """Classify profiles row by row.

    +1 where the row equals ``(p + 1) e_i - 1`` for some ``i``, -1 where it is
    the negative of such a vector, 0 otherwise.
    """
    A = np.atleast_2d(A)
    pos = ((A == p).sum(axis=1) == 1) & ((A == -1).sum(axis=1) == p)
    neg = ((A == -p).sum(axis=1) == 1) & ((A == 1).sum(axis=1) == p)
    return pos.astype(np.int8) - neg.astype(np.int8)


def verify_structural(h: BlockedMatrix) -> VerifyReport:
    xs, ys, A = pair_profiles(h)
    sgn = profile_signs(A, h.block_width)
    bad = np.flatnonzero(sgn == 0)
    if bad.size:
        k = int(bad[0])
        return VerifyReport(
            False,
            k + 1,
            f"rows ({xs[k]}, {ys[k]}): block profile {A[k].tolist()} is not +-((p+1)e_i - 1)",
        )
    return VerifyReport(True, int(A.shape[0]))


def half_selections(block_count: int, *, representatives: bool = False):
    """Half-size block selections in lexicographic order.

    With ``representatives=True`` only the selections containing block 0 are
    produced, one from each complementary pair.
    """
    k = block_count // 2
    if representatives:
        for rest in itertools.combinations(range(1, block_count), k - 1):
            yield (0,) + rest
    else:
        yield from itertools.combinations(range(block_count), k)


def sample_selections(block_count: int, count: int, seed: int) -> list[tuple[int, ...]]:
    """``count`` uniformly random half-selections from a PCG64 stream seeded by ``seed``."""
    rng = np.random.Generator(np.random.PCG64(seed))
    k = block_count // 2
    return [tuple(sorted(rng.choice(block_count, size=k, replace=False).tolist())) for _ in range(count)]


def _selection_matrix(selections, block_count: int) -> np.ndarray:
    W = np.zeros((len(selections), block_count), dtype=np.float64)
    for r, sel in enumerate(selections):
        W[r, list(sel)] = 1.0
    return W


def verify_exhaustive(
    h: BlockedMatrix,
    mode: str = "all",
    *,
    samples: int | None = None,
    seed: int | None = None,
    budget: int = EXHAUSTIVE_BUDGET,
    method: str = "profile",
) -> VerifyReport:
    """Check the balanced-splitting condition for half-selections.

    Parameters
    ----------
    h : BlockedMatrix
    mode : {"all", "sample"}
        ``"all"`` tests one selection from every complementary pair (after
        checking that the full gram is ``p(p+1) I``, the complement's
        off-diagonal gram is the negative of the tested one).  ``"sample"``
        tests ``samples`` random selections drawn with ``seed``.
    budget : int
        Largest ``C(p+1, (p+1)/2)`` allowed under ``mode="all"``.
    method : {"profile", "gram"}
        ``"gram"`` forms ``gram(select_blocks(h, S))`` for each selection;
        ``"profile"`` sums per-block inner products over ``S`` and tests each
        distinct pair profile once.  Both give identical reports.

    Returns
    -------
    VerifyReport
        The witness is the first failure in (selection, row pair) order.
    """
    p = h.block_width
    blocks = h.block_count
    half = target = blocks // 2
    n = h.shape[0]

    if mode == "all":
        total = math.comb(blocks, half)
        if total > budget:
            raise BudgetExceeded(
                f"{total} half-selections exceed the budget of {budget}; use mode='sample'"
            )
        selections = list(half_selections(blocks, representatives=True))
    elif mode == "sample":
        if samples is None or seed is None:
            raise ValueError("mode='sample' needs both samples and seed")
        selections = sample_selections(blocks, samples, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    G = gram(h)
    off = G - p * (p + 1) * np.eye(n, dtype=np.int64)
    if off.any():
        x, y = np.argwhere(off != 0)[0]
        return VerifyReport(False, 1, f"rows ({x}, {y}) of the full matrix have inner product {G[x, y]}")

    if method == "gram":
        return _exhaustive_by_gram(h, selections, target, mode == "all")
    if method != "profile":
        raise ValueError(f"unknown method {method!r}")

    xs, ys, A = pair_profiles(h)
    uniq, inverse = np.unique(A, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    Uf = uniq.astype(np.float64)
    observed: set[int] = set()
    checks = 1
    chunk = max(1, 2**22 // max(1, uniq.shape[0]))
    for start in range(0, len(selections), chunk):
        batch = selections[start : start + chunk]
        sums = np.rint(Uf @ _selection_matrix(batch, blocks).T).astype(np.int64)
        checks += sums.shape[1]
        bad = np.abs(sums) != target
        observed.update(np.unique(sums).tolist())
        if bad.any():
            s = int(np.flatnonzero(bad.any(axis=0))[0])
            bad_profiles = np.flatnonzero(bad[:, s])
            k = int(np.flatnonzero(np.isin(inverse, bad_profiles))[0])
            value = int(sums[inverse[k], s])
            sel = batch[s]
            return VerifyReport(
                False,
                checks,
                f"selection {list(sel)}: rows ({xs[k]}, {ys[k]}) have inner product {value}, "
                f"expected +-{target}",
            )
    if mode == "all":
        observed |= {-v for v in observed}
    return VerifyReport(True, checks, observed=tuple(sorted(observed)))


def _exhaustive_by_gram(h, selections, target, symmetric) -> VerifyReport:
    p = h.block_width
    n = h.shape[0]
    diag = p * target
    iu = np.triu_indices(n, k=1)
    observed: set[int] = set()
    checks = 1
    for sel in selections:
        G = gram(select_blocks(h, sel))
        checks += 1
        if (np.diag(G) != diag).any():  # pragma: no cover - impossible for sign matrices
            i = int(np.argmax(np.diag(G) != diag))
            return VerifyReport(False, checks, f"selection {list(sel)}: row {i} has norm {G[i, i]}")
        offd = G[iu]
        observed.update(np.unique(offd).tolist())
        bad = np.flatnonzero(np.abs(offd) != target)
        if bad.size:
            k = int(bad[0])
            return VerifyReport(
                False,
                checks,
                f"selection {list(sel)}: rows ({iu[0][k]}, {iu[1][k]}) have inner product "
                f"{offd[k]}, expected +-{target}",
            )
    if symmetric:
        observed |= {-v for v in observed}
    return VerifyReport(True, checks, observed=tuple(sorted(observed)))


def _anchor_signs(h: BlockedMatrix) -> np.ndarray:
    """Row signs making every row's profile against row 0 the positive pattern."""
    p = h.block_width
    n = h.shape[0]
    M = h.matrix.astype(np.int64)
    A = (M * M[0]).reshape(n, p + 1, p).sum(axis=2)[1:]
    sgn = profile_signs(A, p)
    bad = np.flatnonzero(sgn == 0)
    if bad.size:
        y = int(bad[0]) + 1
        raise NotMultiSplittable(
            f"rows (0, {y}): block profile {A[y - 1].tolist()} matches neither sign pattern"
        )
    return np.concatenate([[1], sgn]).astype(np.int8)


def sign_normalize(h: BlockedMatrix) -> tuple[SignedPermutation, BlockedMatrix]:
    """Negate rows so that every pair profile is ``(p + 1) e_i - 1``.

    Row 0 is the anchor and keeps its sign.
    """
    signs = _anchor_signs(h)
    normalized = BlockedMatrix(h.matrix * signs[:, None], h.block_width)
    xs, ys, A = pair_profiles(normalized)
    sgn = profile_signs(A, h.block_width)
    bad = np.flatnonzero(sgn != 1)
    if bad.size:
        k = int(bad[0])
        raise NotMultiSplittable(
            f"after normalization rows ({xs[k]}, {ys[k]}) have profile {A[k].tolist()}"
        )
    return SignedPermutation.from_signs(signs), normalized


def cluster_rows(block: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Group identical rows.

    Returns ``(labels, representatives)``; classes are numbered by the row
    index of their first member.
    """
    uniq, first, inverse = np.unique(block, axis=0, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.shape[0])
    labels = rank[inverse.ravel()]
    return labels, block[first[order]]


def decompose(h: BlockedMatrix) -> tuple[OrthogonalArray, list[np.ndarray], SignedPermutation]:
    """Recover an orthogonal array and ``p + 1`` cores from a multi-splittable matrix.

    Steps: sign-normalize against row 0, cluster the rows of each block into
    identical classes (there must be ``p`` classes of ``p`` rows), take class
    representatives as core rows and class labels as OA symbols.  The result
    is checked by recomposing, so ``compose(oa, cores)`` equals the
    normalized input exactly.

    Raises
    ------
    ClassSizeViolation
        A block does not split into ``p`` classes of size ``p``.
    NotMultiSplittable
        Any other failure (bad profiles, invalid cores or array).
    """
    p = h.block_width
    signs = _anchor_signs(h)
    normalized = h.matrix * signs[:, None]

    table = np.empty((p * p, p + 1), dtype=np.int64)
    cores = []
    for i in range(p + 1):
        labels, reps = cluster_rows(normalized[:, i * p : (i + 1) * p])
        sizes = np.bincount(labels)
        if sizes.shape[0] != p or (sizes != p).any():
            raise ClassSizeViolation(
                f"block {i} splits into {sizes.shape[0]} row classes of sizes {sizes.tolist()}, "
                f"expected {p} classes of size {p}"
            )
        try:
            cores.append(check_core(reps))
        except InvalidCore as exc:
            raise NotMultiSplittable(f"block {i}: {exc}") from exc
        table[:, i] = labels

    oa = OrthogonalArray(table, levels=p)
    rep = verify_oa(oa)
    if not rep.passed:
        raise NotMultiSplittable(f"extracted symbol table is not an orthogonal array: {rep.witness}")
    if not np.array_equal(compose(oa, cores).matrix, normalized):  # pragma: no cover
        raise NotMultiSplittable("recomposition does not reproduce the normalized matrix")
    return oa, cores, SignedPermutation.from_signs(signs)


def selection_values(h: BlockedMatrix, selection) -> np.ndarray:
    """Distinct off-diagonal values of ``gram(select_blocks(h, selection))``."""
    sel = check_selection(selection, h.block_count)
    G = gram(select_blocks(h, sel))
    return np.unique(G[np.triu_indices(G.shape[0], k=1)])
