"""scikit-learn style wrappers around decomposition and regularization.

Both transformers are fitted on one multi-splittable matrix and then act
row-wise, so ``fit_transform`` on the training matrix and ``transform`` on
rows of it agree.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_block_width, check_sign_matrix
from .bmsph import compose, decompose
from .constructions import OrthogonalArray
from .errors import NotMultiSplittable
from .exactmat import BlockedMatrix
from .regular_embed import regularize

__all__ = ["MultiSplitDecomposer", "Regularizer"]


def _as_blocked(X, block_width):
    X = check_sign_matrix(check_array(X, dtype=None))
    p = check_block_width(X.shape[0], X.shape[1], block_width)
    return BlockedMatrix(X, p)


class MultiSplitDecomposer(TransformerMixin, BaseEstimator):
    """Encode rows of a multi-splittable matrix as orthogonal-array runs.

    Parameters
    ----------
    block_width : int or None
        Width ``p`` of each column block; inferred from the row count when None.

    Attributes
    ----------
    oa_ : OrthogonalArray
        Symbol table of the training matrix after sign normalization.
    cores_ : list of ndarray
        One ``p x p`` core per block; symbol ``s`` in block ``i`` stands for
        ``cores_[i][s]``.
    row_signs_ : ndarray
        Row negations applied to the training matrix by the normalization.
    block_width_ : int
    """

    def __init__(self, block_width=None):
        self.block_width = block_width

    def fit(self, X, y=None):
        h = _as_blocked(X, self.block_width)
        oa, cores, rowp = decompose(h)
        self.block_width_ = h.block_width
        self.oa_ = oa
        self.cores_ = cores
        self.row_signs_ = rowp.signs.copy()
        self.n_features_in_ = h.shape[1]
        return self

    def transform(self, X):
        """Symbols of each row, after negating the row if that is needed to match.

        Returns an ``(n_rows, p + 1)`` integer array.  A row whose blocks are
        not all (consistently signed) core rows raises ``NotMultiSplittable``.
        """
        check_is_fitted(self, "cores_")
        X = check_sign_matrix(check_array(X, dtype=None))
        p = self.block_width_
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        lookup = [{row.tobytes(): s for s, row in enumerate(L)} for L in self.cores_]
        out = np.empty((X.shape[0], p + 1), dtype=np.int64)
        for r, row in enumerate(X):
            for sign in (1, -1):
                srow = (sign * row).astype(np.int8)
                syms = [lookup[i].get(srow[i * p : (i + 1) * p].tobytes()) for i in range(p + 1)]
                if None not in syms:
                    out[r] = syms
                    break
            else:
                raise NotMultiSplittable(f"row {r} is not a signed composition of the fitted cores")
        return out

    def inverse_transform(self, X):
        """Compose symbol rows back into sign-normalized matrix rows."""
        check_is_fitted(self, "cores_")
        S = check_array(X, dtype=np.int64)
        p = self.block_width_
        if S.shape[1] != p + 1 or S.min(initial=0) < 0 or S.max(initial=0) >= p:
            raise ValueError(f"symbols must form an (n, {p + 1}) array over 0..{p - 1}")
        if S.shape[0] == p * p:
            try:
                return compose(OrthogonalArray(S, levels=p), self.cores_).matrix.copy()
            except ValueError:
                pass
        return np.hstack([self.cores_[i][S[:, i]] for i in range(p + 1)])


class Regularizer(TransformerMixin, BaseEstimator):
    """Rescale columns so every block row sums to 1.

    Attributes
    ----------
    per_block_signs_ : tuple of ndarray
        Column signs for each block.
    row_signs_ : ndarray
        Row signs used on the training matrix.
    """

    def __init__(self, block_width=None):
        self.block_width = block_width

    def fit(self, X, y=None):
        h = _as_blocked(X, self.block_width)
        r = regularize(h)
        self.block_width_ = h.block_width
        self.per_block_signs_ = r.per_block_signs
        self.row_signs_ = r.row_signs
        self.n_features_in_ = h.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "per_block_signs_")
        X = check_sign_matrix(check_array(X, dtype=None))
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        p = self.block_width_
        Y = X * np.concatenate(self.per_block_signs_)[None, :]
        # regular rows have block sums all +1 or all -1; the first block decides
        flip = np.where(Y[:, :p].astype(np.int64).sum(axis=1) < 0, -1, 1).astype(np.int8)
        return (Y * flip[:, None]).astype(np.int8)
