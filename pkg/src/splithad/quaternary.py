"""Quaternary variant for ``q = 1 (mod 4)``: matrices over ``{1, i, -1, -i}``.

Entries are stored as exponents ``e`` of ``i``.  Hermitian inner products are
computed exactly as Gaussian integers (pairs of integer arrays); nothing goes
through floating point complex numbers.

The balanced-splitting values used here are diagonal ``q(q+1)/2`` and
off-diagonal ``+-(q+1)/2`` for every half-selection, the same values the
real case produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._validation import check_exponents
from .bmsph import EXHAUSTIVE_BUDGET, half_selections, sample_selections
from .constructions import OrthogonalArray, conference_matrix, field_of_order, oa_from_affine_plane, verify_oa
from .errors import BudgetExceeded, DimensionMismatch, InvalidCore, InvalidOA, NotHadamard, ShapeMismatch
from .exactmat import VerifyReport

__all__ = [
    "GaussInt",
    "QuatMatrix",
    "hermitian_gram",
    "quaternary_hadamard",
    "quaternary_core",
    "check_quat_core",
    "q_compose",
    "construct_quaternary",
    "q_verify",
    "ProbeResult",
    "question1_probe",
]

_RE = np.array([1, 0, -1, 0], dtype=np.int64)
_IM = np.array([0, 1, 0, -1], dtype=np.int64)


class GaussInt(NamedTuple):
    real: int
    imag: int

    def __str__(self) -> str:
        if self.imag == 0:
            return str(self.real)
        return f"{self.real}{self.imag:+d}i"


@dataclass(frozen=True, eq=False)
class QuatMatrix:
    exponents: np.ndarray
    block_width: int | None = None

    def __post_init__(self):
        E = check_exponents(self.exponents, name="exponents").copy()
        if self.block_width is not None:
            q = self.block_width
            if E.shape[1] % q:
                raise DimensionMismatch(f"{E.shape[1]} columns do not split into blocks of width {q}")
        E.setflags(write=False)
        object.__setattr__(self, "exponents", E)

    @property
    def shape(self) -> tuple[int, int]:
        return self.exponents.shape

    @property
    def block_count(self) -> int:
        return self.shape[1] // self.block_width

    def block(self, i: int) -> np.ndarray:
        q = self.block_width
        return self.exponents[:, i * q : (i + 1) * q]

    def __eq__(self, other):
        if not isinstance(other, QuatMatrix):
            return NotImplemented
        return self.block_width == other.block_width and np.array_equal(self.exponents, other.exponents)

    __hash__ = None


def _parts(E: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    E = np.asarray(E, dtype=np.int64) % 4
    return _RE[E], _IM[E]


def hermitian_gram(E, F=None) -> tuple[np.ndarray, np.ndarray]:
    """Real and imaginary parts of ``H K^*`` for exponent matrices ``E`` and ``F``."""
    E = E.exponents if isinstance(E, QuatMatrix) else np.asarray(E)
    F = E if F is None else (F.exponents if isinstance(F, QuatMatrix) else np.asarray(F))
    if E.shape[1] != F.shape[1]:
        raise DimensionMismatch(f"cannot multiply {E.shape} by the adjoint of {F.shape}")
    R1, M1 = (x.astype(np.float64) for x in _parts(E))
    R2, M2 = (x.astype(np.float64) for x in _parts(F))
    # (R1 + i M1)(R2 - i M2)^T
    re = np.rint(R1 @ R2.T + M1 @ M2.T).astype(np.int64)
    im = np.rint(M1 @ R2.T - R1 @ M2.T).astype(np.int64)
    return re, im


def _is_scaled_identity(re, im, c) -> bool:
    n = re.shape[0]
    return bool((re == c * np.eye(n, dtype=np.int64)).all() and not im.any())


def quaternary_hadamard(q: int) -> QuatMatrix:
    """``C + iI`` for the symmetric conference matrix ``C`` of order ``q + 1``."""
    C = conference_matrix(q)
    E = np.where(C == 1, 0, 2).astype(np.uint8)
    np.fill_diagonal(E, 1)
    H = QuatMatrix(E)
    re, im = hermitian_gram(H)
    if not _is_scaled_identity(re, im, q + 1):  # pragma: no cover
        raise AssertionError("C + iI is not a quaternary Hadamard matrix")
    return H


def quaternary_core(h: QuatMatrix) -> np.ndarray:
    """Normalize by unit row/column scalings and strip the border.

    Rows are scaled so column 0 reads ``(1, -1, ..., -1)``, then columns so
    row 0 is all ones; the remaining ``q x q`` block satisfies
    ``L L^* = (q + 1) I - J``.
    """
    E = np.asarray(h.exponents, dtype=np.int64)
    n = E.shape[0]
    re, im = hermitian_gram(E)
    if E.shape != (n, n) or not _is_scaled_identity(re, im, n):
        raise NotHadamard("input is not a quaternary Hadamard matrix")
    target = np.full(n, 2)
    target[0] = 0
    E = (E + (target - E[:, 0])[:, None]) % 4
    E = (E - E[0][None, :]) % 4
    core = E[1:, 1:].astype(np.uint8)
    check_quat_core(core)
    return core


def check_quat_core(core) -> np.ndarray:
    L = check_exponents(core, name="core")
    q = L.shape[0]
    if L.shape != (q, q):
        raise InvalidCore(f"core must be square, got {L.shape}")
    re, im = hermitian_gram(L)
    want = (q + 1) * np.eye(q, dtype=np.int64) - 1
    if not ((re == want).all() and not im.any()):
        i, j = np.argwhere((re != want) | (im != 0))[0]
        raise InvalidCore(
            f"core Hermitian gram entry ({i}, {j}) is {GaussInt(int(re[i, j]), int(im[i, j]))}, "
            f"expected {want[i, j]}"
        )
    return L


def q_compose(oa: OrthogonalArray, cores) -> QuatMatrix:
    """Block ``(x, i)`` is row ``oa[x, i]`` of ``cores[i]``."""
    q = oa.levels
    if len(cores) != oa.factors or oa.factors != q + 1 or oa.runs != q * q:
        raise ShapeMismatch(
            f"need an OA({q * q}, {q + 1}, {q}, 2) and {q + 1} cores, "
            f"got a {oa.runs}x{oa.factors} array and {len(cores)} cores"
        )
    rep = verify_oa(oa)
    if not rep.passed:
        raise InvalidOA(rep.witness)
    Ls = [check_quat_core(c) for c in cores]
    if any(L.shape != (q, q) for L in Ls):
        raise ShapeMismatch(f"every core must be {q}x{q}")
    return QuatMatrix(np.hstack([Ls[i][oa.table[:, i]] for i in range(q + 1)]), q)


def construct_quaternary(q: int) -> QuatMatrix:
    """``q_compose`` of the affine-plane array with identical cores from ``C + iI``."""
    oa = oa_from_affine_plane(field_of_order(q))
    core = quaternary_core(quaternary_hadamard(q))
    return q_compose(oa, [core] * (q + 1))


def _quat_profiles(h: QuatMatrix):
    n = h.shape[0]
    xs, ys = np.triu_indices(n, k=1)
    blocks = h.block_count
    Are = np.empty((xs.shape[0], blocks), dtype=np.int64)
    Aim = np.empty_like(Are)
    for i in range(blocks):
        re, im = hermitian_gram(h.block(i))
        Are[:, i] = re[xs, ys]
        Aim[:, i] = im[xs, ys]
    return xs, ys, Are, Aim


def q_verify(
    h: QuatMatrix,
    mode: str = "all",
    *,
    samples: int | None = None,
    seed: int | None = None,
    budget: int = EXHAUSTIVE_BUDGET,
    prefilter: bool = True,
) -> VerifyReport:
    """Check a blocked quaternary matrix for balanced multi-splitting.

    With ``prefilter`` the per-pair block profiles are checked first (each
    must be real and equal ``+-((q+1) e_i - 1)``).  Then the full Hermitian
    gram must be ``q(q+1) I`` and, for every tested half-selection ``S``,
    ``H_S H_S^*`` must have off-diagonal entries that are real and equal to
    ``+-(q+1)/2``.  Selection grams are formed directly from the selected
    columns.
    """
    q = h.block_width
    if q is None:
        raise ValueError("q_verify needs a blocked matrix")
    n = h.shape[0]
    if h.shape != (q * q, q * (q + 1)):
        raise DimensionMismatch(f"shape {h.shape} is not (q^2, q(q+1)) for q = {q}")
    blocks = q + 1
    t = blocks // 2

    if mode == "all":
        total = math.comb(blocks, t)
        if total > budget:
            raise BudgetExceeded(f"{total} half-selections exceed the budget of {budget}")
        selections = list(half_selections(blocks, representatives=True))
    elif mode == "sample":
        if samples is None or seed is None:
            raise ValueError("mode='sample' needs both samples and seed")
        selections = sample_selections(blocks, samples, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    checks = 0
    if prefilter:
        xs, ys, Are, Aim = _quat_profiles(h)
        checks += Are.shape[0]
        pos = ((Are == q).sum(axis=1) == 1) & ((Are == -1).sum(axis=1) == q)
        neg = ((Are == -q).sum(axis=1) == 1) & ((Are == 1).sum(axis=1) == q)
        bad = np.flatnonzero(Aim.any(axis=1) | ~(pos | neg))
        if bad.size:
            k = int(bad[0])
            prof = [str(GaussInt(int(a), int(b))) for a, b in zip(Are[k], Aim[k])]
            return VerifyReport(
                False, checks, f"rows ({xs[k]}, {ys[k]}): block profile {prof} is not +-((q+1)e_i - 1)"
            )

    re, im = hermitian_gram(h)
    checks += 1
    if not _is_scaled_identity(re, im, q * (q + 1)):
        x, y = np.argwhere((re != q * (q + 1) * np.eye(n, dtype=np.int64)) | (im != 0))[0]
        val = GaussInt(int(re[x, y]), int(im[x, y]))
        return VerifyReport(False, checks, f"rows ({x}, {y}) of the full matrix give {val}")

    iu = np.triu_indices(n, k=1)
    observed: set[int] = set()
    for sel in selections:
        cols = np.concatenate([np.arange(i * q, (i + 1) * q) for i in sel])
        s_re, s_im = hermitian_gram(h.exponents[:, cols])
        checks += 1
        off_re, off_im = s_re[iu], s_im[iu]
        observed.update(np.unique(off_re).tolist())
        badsel = np.flatnonzero((np.abs(off_re) != t) | (off_im != 0))
        if badsel.size:
            k = int(badsel[0])
            val = GaussInt(int(off_re[k]), int(off_im[k]))
            return VerifyReport(
                False, checks, f"selection {list(sel)}: rows ({iu[0][k]}, {iu[1][k]}) give {val}"
            )
    if mode == "all":
        observed |= {-v for v in observed}
    return VerifyReport(True, checks, observed=tuple(sorted(observed)))


@dataclass
class ProbeResult:
    """Outcome of running the decomposition pipeline on a quaternary matrix."""

    succeeded: bool
    detail: str
    oa: OrthogonalArray | None = None
    cores: list[np.ndarray] | None = None
    row_phases: np.ndarray | None = None


def question1_probe(h: QuatMatrix) -> ProbeResult:
    """Try to recover an orthogonal array and cores from ``h``.

    Row 0 is scaled so its first entry is 1; each other row is scaled by the
    unit that makes its profile against row 0 equal ``(q + 1) e_i - 1``.  The
    rows of each block are then clustered and the result is recomposed and
    compared.  This is empirical evidence only: success on an instance says
    nothing about inputs the probe was not run on.
    """
    q = h.block_width
    E = np.asarray(h.exponents, dtype=np.int64)
    n = E.shape[0]
    phases = np.zeros(n, dtype=np.int64)
    phases[0] = (-E[0, 0]) % 4
    E0 = (E[0] + phases[0]) % 4
    for y in range(1, n):
        for u in range(4):
            row = (E[y] + u) % 4
            re, im = hermitian_gram(E0.reshape(q + 1, q), row.reshape(q + 1, q))
            a_re, a_im = np.diag(re), np.diag(im)
            if not a_im.any() and (a_re == q).sum() == 1 and (a_re == -1).sum() == q:
                phases[y] = u
                break
        else:
            return ProbeResult(False, f"row {y}: no unit phase gives the pattern against row 0")
    N = (E + phases[:, None]) % 4

    table = np.empty((q * q, q + 1), dtype=np.int64)
    cores = []
    for i in range(q + 1):
        block = N[:, i * q : (i + 1) * q]
        uniq, first, inverse = np.unique(block, axis=0, return_index=True, return_inverse=True)
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(order.shape[0])
        labels = rank[inverse.ravel()]
        sizes = np.bincount(labels)
        if sizes.shape[0] != q or (sizes != q).any():
            return ProbeResult(False, f"block {i}: row classes of sizes {sizes.tolist()}", row_phases=phases)
        reps = block[first[order]]
        try:
            cores.append(check_quat_core(reps))
        except InvalidCore as exc:
            return ProbeResult(False, f"block {i}: {exc}", row_phases=phases)
        table[:, i] = labels
    oa = OrthogonalArray(table, levels=q)
    rep = verify_oa(oa)
    if not rep.passed:
        return ProbeResult(False, f"symbol table is not an orthogonal array: {rep.witness}", row_phases=phases)
    if not np.array_equal(q_compose(oa, cores).exponents, N):  # pragma: no cover
        return ProbeResult(False, "recomposition differs from the phase-normalized matrix", row_phases=phases)
    return ProbeResult(True, f"recovered OA({q * q}, {q + 1}, {q}, 2) and {q + 1} cores", oa, cores, phases)
