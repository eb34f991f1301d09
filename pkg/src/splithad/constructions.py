"""Classical ingredients: Paley matrices, cores, orthogonal arrays, planes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._validation import check_sign_matrix
from .errors import BadResidueClass, InvalidCore, InvalidOA, NotHadamard, NotPrimePower
from .exactmat import VerifyReport, gram
from .gfield import Field, build_field, prime_power

__all__ = [
    "OrthogonalArray",
    "IncidenceMatrix",
    "field_of_order",
    "jacobsthal",
    "paley_hadamard",
    "conference_matrix",
    "hadamard_core",
    "check_core",
    "core_to_partial",
    "oa_from_affine_plane",
    "verify_oa",
    "plane_from_oa",
    "verify_incidence",
]


@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    """Symbol table of an OA(runs, factors, levels, strength) with given index."""

    table: np.ndarray
    levels: int
    strength: int = 2
    index: int = 1

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        if t.ndim != 2:
            raise InvalidOA("orthogonal array table must be 2-dimensional")
        if t.size and (t.min() < 0 or t.max() >= self.levels):
            raise InvalidOA(f"symbols must lie in 0..{self.levels - 1}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def runs(self) -> int:
        return self.table.shape[0]

    @property
    def factors(self) -> int:
        return self.table.shape[1]

    def __eq__(self, other):
        if not isinstance(other, OrthogonalArray):
            return NotImplemented
        return (self.levels, self.strength, self.index) == (
            other.levels,
            other.strength,
            other.index,
        ) and np.array_equal(self.table, other.table)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """0/1 point-by-block incidence with design parameters ``(v, b, r, k, lam)``."""

    table: np.ndarray
    r: int
    k: int
    lam: int
    block_width: int | None = None

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int8)
        if t.ndim != 2 or (t.size and not np.isin(t, (0, 1)).all()):
            raise ValueError("incidence table must be a 2-d 0/1 matrix")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def v(self) -> int:
        return self.table.shape[0]

    @property
    def b(self) -> int:
        return self.table.shape[1]

    @property
    def params(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.b, self.r, self.k, self.lam)

    def __eq__(self, other):
        if not isinstance(other, IncidenceMatrix):
            return NotImplemented
        return (
            self.params == other.params
            and self.block_width == other.block_width
            and np.array_equal(self.table, other.table)
        )

    __hash__ = None


def field_of_order(q: int) -> Field:
    pp = prime_power(q)
    if pp is None:
        raise NotPrimePower(f"{q} is not a prime power")
    return build_field(*pp)


def jacobsthal(f: Field) -> np.ndarray:
    """``Q[i, j] = chi(g_i - g_j)`` over the fixed element enumeration."""
    q = f.order
    diff = f.add_table[np.arange(q)[:, None], f.neg_table[None, :]]
    return f.character_table[diff].astype(np.int8)


def paley_hadamard(p: int) -> np.ndarray:
    """Paley I Hadamard matrix of order ``p + 1`` for a prime power ``p = 3 mod 4``.

    The result is ``I + S`` with ``S = [[0, 1^T], [-1, Q]]`` and ``Q`` the
    Jacobsthal matrix, so row 0 is all ones and column 0 is ``(1, -1, ..., -1)``.
    """
    if p % 4 != 3:
        raise BadResidueClass(f"Paley I needs p = 3 (mod 4), got p = {p}")
    Q = jacobsthal(field_of_order(p))
    n = p + 1
    S = np.zeros((n, n), dtype=np.int8)
    S[0, 1:] = 1
    S[1:, 0] = -1
    S[1:, 1:] = Q
    H = S + np.eye(n, dtype=np.int8)
    if not (gram(H) == n * np.eye(n, dtype=np.int64)).all():  # pragma: no cover
        raise AssertionError("Paley I construction failed")
    return H


def conference_matrix(q: int) -> np.ndarray:
    """Symmetric conference matrix of order ``q + 1`` for a prime power ``q = 1 mod 4``."""
    if q % 4 != 1:
        raise BadResidueClass(f"a symmetric conference matrix needs q = 1 (mod 4), got q = {q}")
    Q = jacobsthal(field_of_order(q))
    n = q + 1
    C = np.zeros((n, n), dtype=np.int8)
    C[0, 1:] = 1
    C[1:, 0] = 1
    C[1:, 1:] = Q
    if not (gram(C) == q * np.eye(n, dtype=np.int64)).all():  # pragma: no cover
        raise AssertionError("conference matrix construction failed")
    return C


def hadamard_core(h) -> np.ndarray:
    """Normalize a Hadamard matrix and strip its border.

    Rows are negated so column 0 reads ``(+1, -1, ..., -1)``, then columns so
    row 0 is all ``+1``.  Deleting row 0 and column 0 leaves ``L`` with
    ``L L^T = n I - J``.
    """
    h = check_sign_matrix(h)
    n = h.shape[0]
    if h.shape != (n, n) or not (gram(h) == n * np.eye(n, dtype=np.int64)).all():
        raise NotHadamard("input is not a Hadamard matrix")
    target = -np.ones(n, dtype=np.int8)
    target[0] = 1
    h = h * (h[:, 0] * target)[:, None]
    h = h * h[0][None, :]
    core = np.ascontiguousarray(h[1:, 1:], dtype=np.int8)
    check_core(core)
    return core


def check_core(core) -> np.ndarray:
    """Validate ``L L^T = (p + 1) I - J``; returns the core as int8."""
    try:
        L = check_sign_matrix(core, name="core")
    except ValueError as exc:
        raise InvalidCore(str(exc)) from exc
    p = L.shape[0]
    if L.shape != (p, p):
        raise InvalidCore(f"core must be square, got {L.shape}")
    want = (p + 1) * np.eye(p, dtype=np.int64) - 1
    G = gram(L)
    if not (G == want).all():
        i, j = np.argwhere(G != want)[0]
        raise InvalidCore(f"core gram entry ({i}, {j}) is {G[i, j]}, expected {want[i, j]}")
    return L


def core_to_partial(core) -> np.ndarray:
    """``K = [1 | L]``, a ``p x (p + 1)`` partial Hadamard matrix."""
    L = check_core(core)
    K = np.hstack([np.ones((L.shape[0], 1), dtype=np.int8), L])
    n = L.shape[0] + 1
    if not (gram(K) == n * np.eye(L.shape[0], dtype=np.int64)).all():  # pragma: no cover
        raise AssertionError("K is not partial Hadamard")
    return K


def oa_from_affine_plane(f: Field) -> OrthogonalArray:
    """OA(q^2, q + 1, q, 2) from the lines of the affine plane over ``f``.

    Run ``x = a * q + b`` for the elements with indices ``a, b``; column ``m``
    holds the index of ``a * g_m + b`` and the last column holds ``a``.
    """
    q = f.order
    a = np.repeat(np.arange(q), q)
    b = np.tile(np.arange(q), q)
    table = np.empty((q * q, q + 1), dtype=np.int64)
    for m in range(q):
        table[:, m] = f.add_table[f.mul_table[a, m], b]
    table[:, q] = a
    return OrthogonalArray(table, levels=q)


def verify_oa(oa: OrthogonalArray) -> VerifyReport:
    """Check strength 2 with the declared index and pairwise agreement in one column.

    The witness names the first offending column pair (strength check) or run
    pair (agreement check).
    """
    t, s = oa.table, oa.levels
    checks = 0
    if oa.runs != oa.index * s * s:
        return VerifyReport(False, 0, f"{oa.runs} runs cannot give index {oa.index} over {s} levels")
    for c1, c2 in itertools.combinations(range(oa.factors), 2):
        counts = np.bincount(t[:, c1] * s + t[:, c2], minlength=s * s)
        checks += 1
        if (counts != oa.index).any():
            k = int(np.argmax(counts != oa.index))
            return VerifyReport(
                False,
                checks,
                f"columns ({c1}, {c2}): symbol pair ({k // s}, {k % s}) occurs {counts[k]} times",
            )
    if oa.index == 1:
        for x in range(oa.runs - 1):
            agree = (t[x + 1 :] == t[x]).sum(axis=1)
            checks += agree.shape[0]
            bad = np.flatnonzero(agree != 1)
            if bad.size:
                y = x + 1 + int(bad[0])
                return VerifyReport(
                    False, checks, f"runs ({x}, {y}) agree in {agree[bad[0]]} columns"
                )
    return VerifyReport(True, checks)


def plane_from_oa(oa: OrthogonalArray) -> IncidenceMatrix:
    """Projective plane of order ``q`` from an OA(q^2, q + 1, q, 2).

    Points: the ``q^2`` runs, then one point at infinity per column.  Lines:
    for each column ``c`` and symbol ``s`` the runs with symbol ``s`` in column
    ``c`` plus the infinite point of ``c``; the last line is the line at
    infinity.
    """
    rep = verify_oa(oa)
    if not rep.passed:
        raise InvalidOA(rep.witness)
    q = oa.levels
    n = q * q + q + 1
    inc = np.zeros((n, n), dtype=np.int8)
    line = 0
    for c in range(q + 1):
        for s in range(q):
            inc[np.flatnonzero(oa.table[:, c] == s), line] = 1
            inc[q * q + c, line] = 1
            line += 1
    inc[q * q :, line] = 1
    return IncidenceMatrix(inc, r=q + 1, k=q + 1, lam=1)


def verify_incidence(d: IncidenceMatrix) -> VerifyReport:
    """Row sums ``r``, column sums ``k`` and ``D D^T = (r - lam) I + lam J``."""
    t = d.table.astype(np.int64)
    rows = t.sum(axis=1)
    if (rows != d.r).any():
        i = int(np.argmax(rows != d.r))
        return VerifyReport(False, 1, f"point {i} lies in {rows[i]} blocks, expected r = {d.r}")
    cols = t.sum(axis=0)
    if (cols != d.k).any():
        j = int(np.argmax(cols != d.k))
        return VerifyReport(False, 2, f"block {j} has {cols[j]} points, expected k = {d.k}")
    G = gram(t)
    want = (d.r - d.lam) * np.eye(d.v, dtype=np.int64) + d.lam
    if not (G == want).all():
        i, j = np.argwhere(G != want)[0]
        return VerifyReport(
            False, 3, f"points ({i}, {j}) have concurrence {G[i, j]}, expected {want[i, j]}"
        )
    return VerifyReport(True, 3)
