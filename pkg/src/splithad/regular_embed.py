"""Regular form of a multi-splittable matrix and its Hadamard embedding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_sign_matrix
from .bmsph import decompose, verify_structural
from .constructions import paley_hadamard
from .errors import EmbeddingFailure, NotHadamard, NotMultiSplittable, RegularityFailure
from .exactmat import BlockedMatrix, VerifyReport, gram

__all__ = ["RegularBMSPH", "regularize", "embed", "verify_hadamard", "check_regular"]


@dataclass(frozen=True, eq=False)
class RegularBMSPH:
    """A multi-splittable matrix whose blocks all have row sum 1 and column sum ``p``.

    ``per_block_signs[i]`` is the diagonal of the column sign matrix applied
    to block ``i``; ``row_signs`` records the row negations of the sign
    normalization that preceded it.
    """

    matrix: BlockedMatrix
    per_block_signs: tuple[np.ndarray, ...]
    row_signs: np.ndarray

    @property
    def block_width(self) -> int:
        return self.matrix.block_width

    @property
    def column_signs(self) -> np.ndarray:
        return np.concatenate(self.per_block_signs)


def check_regular(h: BlockedMatrix) -> str | None:
    """Return a description of the first regularity defect, or None."""
    p = h.block_width
    M = h.matrix.astype(np.int64)
    block_sums = M.reshape(M.shape[0], p + 1, p).sum(axis=2)
    if (block_sums != 1).any():
        x, i = np.argwhere(block_sums != 1)[0]
        return f"row {x} of block {i} sums to {block_sums[x, i]}, expected 1"
    col = M.sum(axis=0)
    if (col != p).any():
        j = int(np.argmax(col != p))
        return f"column {j} sums to {col[j]}, expected {p}"
    return None


def regularize(h: BlockedMatrix) -> RegularBMSPH:
    """Sign-normalize rows, then scale block ``i`` by ``diag(x_i)``.

    ``x_i`` is the sum of the ``p`` distinct rows of block ``i``.  For a
    multi-splittable input it is a sign vector, and after scaling every block
    row sums to 1 and every column to ``p``.
    """
    p = h.block_width
    oa, cores, rowp = decompose(h)
    signs = []
    for i, L in enumerate(cores):
        x = L.astype(np.int64).sum(axis=0)
        if not np.isin(x, (-1, 1)).all():
            raise RegularityFailure(f"block {i}: row sum vector {x.tolist()} is not a sign vector")
        signs.append(x.astype(np.int8))
    colsigns = np.concatenate(signs)
    M = h.matrix * rowp.signs[:, None] * colsigns[None, :]
    out = BlockedMatrix(M, p)
    defect = check_regular(out)
    if defect is not None:  # pragma: no cover - guaranteed by the decomposition
        raise RegularityFailure(defect)
    if not verify_structural(out).passed:  # pragma: no cover
        raise NotMultiSplittable("column scaling broke the pair profiles")
    return RegularBMSPH(out, tuple(signs), rowp.signs.copy())


def verify_hadamard(m) -> VerifyReport:
    m = check_sign_matrix(m)
    n = m.shape[0]
    if m.shape != (n, n):
        return VerifyReport(False, 0, f"matrix of shape {m.shape} is not square")
    G = gram(m)
    want = n * np.eye(n, dtype=np.int64)
    if not (G == want).all():
        i, j = np.argwhere(G != want)[0]
        return VerifyReport(False, n * (n + 1) // 2, f"rows ({i}, {j}) have inner product {G[i, j]}")
    return VerifyReport(True, n * (n + 1) // 2)


def embed(r: RegularBMSPH, border_seed=None) -> np.ndarray:
    """Complete a regular matrix to a Hadamard matrix of order ``p(p + 1)``.

    The seed (default: the Paley matrix of order ``p + 1``) is normalized so
    its first row is all ones.  Border row ``j`` (``j = 1..p``) repeats entry
    ``i`` of seed row ``j`` across block ``i``.  Only ``p`` border rows are
    appended; the all-ones seed row is skipped, which is what makes the
    result square.
    """
    p = r.block_width
    if border_seed is None:
        border_seed = paley_hadamard(p)
    L = check_sign_matrix(border_seed, name="border_seed")
    if L.shape != (p + 1, p + 1) or not verify_hadamard(L).passed:
        raise NotHadamard(f"border seed must be a Hadamard matrix of order {p + 1}")
    L = L * L[0][None, :]
    border = np.repeat(L[1:], p, axis=1)
    E = np.vstack([r.matrix.matrix, border]).astype(np.int8)
    rep = verify_hadamard(E)
    if not rep.passed:
        raise EmbeddingFailure(rep.witness)
    return E
