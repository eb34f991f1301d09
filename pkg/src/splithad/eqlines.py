"""Equiangular lines carried by half-selections of a multi-splittable matrix.

Lines are stored as unnormalized +-1 vectors with a common squared norm
``n``; a set is equiangular with ``|cos| = t / n`` when every distinct pair
has ``|<u, v>| = t``.  All checks are integer comparisons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._validation import check_selection, check_sign_matrix
from .bmsph import decompose, half_selections, verify_structural
from .errors import BadSelectionSize, BudgetExceeded, NotMultiSplittable
from .exactmat import BlockedMatrix, VerifyReport, gram, select_blocks

__all__ = [
    "LineSet",
    "extract_lines",
    "verify_equiangular",
    "structured_candidates",
    "structured_extensions",
    "ExtensionReport",
    "extend_exhaustive",
    "saturation_ratio",
    "canonical_line",
    "surviving_rows",
]


@dataclass(frozen=True, eq=False)
class LineSet:
    vectors: np.ndarray
    target_abs_inner: int

    def __post_init__(self):
        V = check_sign_matrix(self.vectors, name="vectors", copy=True)
        V.setflags(write=False)
        object.__setattr__(self, "vectors", V)

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    @property
    def norm_sq(self) -> int:
        return self.dimension

    @property
    def cosine(self) -> Fraction:
        return Fraction(self.target_abs_inner, self.norm_sq)

    def __len__(self) -> int:
        return self.vectors.shape[0]


def canonical_line(v: np.ndarray) -> np.ndarray:
    """Representative of the line through ``v`` whose first nonzero entry is +1."""
    v = np.asarray(v)
    nz = np.flatnonzero(v)
    return v * np.sign(v[nz[0]]) if nz.size else v


def _require_valid(h: BlockedMatrix) -> None:
    rep = verify_structural(h)
    if not rep.passed:
        raise NotMultiSplittable(rep.witness)


def extract_lines(h: BlockedMatrix, selection) -> LineSet:
    """The ``p^2`` rows of a half-selection, as an equiangular set with ``|cos| = 1/p``."""
    sel = check_selection(selection, h.block_count)
    if len(sel) != h.block_count // 2 or len(set(selection)) != len(sel):
        raise BadSelectionSize(f"need {h.block_count // 2} distinct blocks, got {list(selection)}")
    _require_valid(h)
    ls = LineSet(select_blocks(h, sel), h.block_count // 2)
    rep = verify_equiangular(ls)
    if not rep.passed:  # pragma: no cover - implied by verify_structural
        raise NotMultiSplittable(rep.witness)
    return ls


def verify_equiangular(ls: LineSet) -> VerifyReport:
    V = ls.vectors
    n = V.shape[0]
    G = gram(V)
    iu = np.triu_indices(n, k=1)
    off = np.abs(G[iu])
    bad = np.flatnonzero(off != ls.target_abs_inner)
    checks = n + iu[0].shape[0]
    if bad.size:
        k = int(bad[0])
        return VerifyReport(
            False,
            checks,
            f"lines ({iu[0][k]}, {iu[1][k]}) have |inner product| {off[k]}, "
            f"expected {ls.target_abs_inner}",
        )
    return VerifyReport(True, checks)


def structured_candidates(h: BlockedMatrix) -> list[np.ndarray]:
    """Rows of the two shapes allowed for a single extension line.

    For every block ``i``, distinct block row ``r`` and sign ``s``: ``s * r``
    on block ``i`` and ``-s`` elsewhere; then the two constant rows ``+1`` and
    ``-1``.  The distinct rows of a block are those of the sign-normalized
    matrix, so there are ``2 (p + 1) p + 2`` candidates.
    """
    p = h.block_width
    _, cores, _ = decompose(h)
    out = []
    for i, L in enumerate(cores):
        for row in L:
            for s in (1, -1):
                c = np.full(p * (p + 1), -s, dtype=np.int8)
                c[i * p : (i + 1) * p] = s * row
                out.append(c)
    for s in (1, -1):
        out.append(np.full(p * (p + 1), s, dtype=np.int8))
    return out


def _survives(h: BlockedMatrix, rows: np.ndarray, selections) -> np.ndarray:
    """Mask of ``rows`` keeping every half-selection equiangular when appended alone."""
    p = h.block_width
    t = h.block_count // 2
    n_blocks = h.block_count
    # per-block inner products of each candidate with each matrix row
    M = h.matrix.astype(np.float64)
    R = rows.astype(np.float64)
    per_block = np.stack(
        [R[:, i * p : (i + 1) * p] @ M[:, i * p : (i + 1) * p].T for i in range(n_blocks)], axis=2
    )
    ok = np.ones(rows.shape[0], dtype=bool)
    for sel in selections:
        s = np.rint(per_block[:, :, list(sel)].sum(axis=2)).astype(np.int64)
        ok &= (np.abs(s) == t).all(axis=1)
    return ok


def _pair_survives(a: np.ndarray, b: np.ndarray, p: int, selections, t: int) -> bool:
    prods = (a.astype(np.int64) * b).reshape(p + 1, p).sum(axis=1)
    return all(abs(int(prods[list(sel)].sum())) == t for sel in selections)


@dataclass
class ExtensionReport:
    """Outcome of :func:`structured_extensions`."""

    survivors: list[np.ndarray]
    candidates_tested: int
    surviving_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def pair_free(self) -> bool:
        return not self.surviving_pairs


def structured_extensions(h: BlockedMatrix) -> ExtensionReport:
    """Single rows that extend every half-selection's line set, among the structured shapes.

    Also lists the survivor pairs that could be added jointly; none are
    expected.
    """
    _require_valid(h)
    p = h.block_width
    cands = structured_candidates(h)
    selections = list(half_selections(h.block_count))
    mask = _survives(h, np.array(cands), selections)
    survivors = [c for c, keep in zip(cands, mask) if keep]
    t = h.block_count // 2
    pairs = [
        (a, b)
        for a, b in itertools.combinations(range(len(survivors)), 2)
        if _pair_survives(survivors[a], survivors[b], p, selections, t)
    ]
    return ExtensionReport(survivors, len(cands), pairs)


def surviving_rows(h: BlockedMatrix, rows) -> np.ndarray:
    """Mask over arbitrary candidate ``rows`` (same test as :func:`structured_extensions`)."""
    rows = check_sign_matrix(rows, name="rows")
    return _survives(h, rows, list(half_selections(h.block_count)))


def extend_exhaustive(ls: LineSet, max_dim: int = 12) -> LineSet:
    """Largest extension of ``ls`` by +-1 vectors of the same dimension.

    Candidates are all sign vectors with first entry +1 that are compatible
    with every current line and not already present (up to sign).  A maximum
    clique of mutually compatible candidates is found by depth-first search;
    among maximum cliques the lexicographically first (in the ``'+' < '-'``
    order of the text format) is kept, and appended in that order.
    """
    d = ls.dimension
    if d > max_dim:
        raise BudgetExceeded(f"dimension {d} exceeds the exhaustive budget {max_dim}")
    t = ls.target_abs_inner
    # row r of `allv` is the sign vector whose '-' positions spell r in binary, MSB first
    codes = np.arange(2 ** (d - 1), dtype=np.int64)
    bits = (codes[:, None] >> np.arange(d - 2, -1, -1)) & 1
    allv = np.hstack([np.ones((codes.size, 1), np.int8), (1 - 2 * bits).astype(np.int8)])
    existing = {canonical_line(v).tobytes() for v in ls.vectors}
    fresh = np.array([v.tobytes() not in existing for v in allv], dtype=bool)
    if len(ls):
        compat = (np.abs(gram(allv, ls.vectors)) == t).all(axis=1)
    else:
        compat = np.ones(codes.size, dtype=bool)
    cand = allv[fresh & compat]
    if cand.shape[0] == 0:
        return ls
    adj = np.abs(gram(cand)) == t
    best = _max_clique(adj)
    return LineSet(np.vstack([ls.vectors, cand[best]]), t)


def _max_clique(adj: np.ndarray) -> list[int]:
    """Lexicographically first maximum clique by branch and bound."""
    n = adj.shape[0]
    nbrs = [set(np.flatnonzero(adj[i]).tolist()) - {i} for i in range(n)]
    best: list[int] = []

    def grow(clique: list[int], cand: list[int]) -> None:
        nonlocal best
        if len(clique) > len(best):
            best = clique[:]
        for k, v in enumerate(cand):
            if len(clique) + len(cand) - k <= len(best):
                return
            rest = [w for w in cand[k + 1 :] if w in nbrs[v]]
            grow(clique + [v], rest)

    grow([], list(range(n)))
    return best


def saturation_ratio(p: int) -> tuple[int, int, Fraction]:
    """Constructed count ``p^2``, the bound ``(p + 1)^2``, and their exact ratio."""
    if p < 3:
        raise ValueError("p must be at least 3")
    return p * p, (p + 1) ** 2, Fraction(p * p, (p + 1) ** 2)
