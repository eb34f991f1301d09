"""Input validation helpers in the spirit of ``sklearn.utils.check_array``."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange


def check_sign_matrix(X, *, name: str = "X", copy: bool = False) -> np.ndarray:
    """Return ``X`` as a 2-d ``int8`` array whose entries are all +1 or -1."""
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.size and not np.isin(arr, (-1, 1)).all():
        bad = np.argwhere(~np.isin(arr, (-1, 1)))[0]
        raise ValueError(f"{name} has a non-sign entry {arr[tuple(bad)]!r} at {tuple(bad.tolist())}")
    out = arr.astype(np.int8, copy=copy)
    return out


def check_zero_one(X, *, name: str = "X") -> np.ndarray:
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must be a 0/1 matrix")
    return arr.astype(np.int8)


def check_exponents(X, *, name: str = "X") -> np.ndarray:
    """Exponents of i; entries must lie in 0..3."""
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.size and ((arr < 0) | (arr > 3)).any():
        raise ValueError(f"{name} entries must be exponents in 0..3")
    return arr.astype(np.uint8)


def check_block_width(n_rows: int, n_cols: int, block_width: int | None) -> int:
    """Infer or validate the block width ``p`` of a ``p^2 x p(p+1)`` matrix."""
    if block_width is None:
        p = int(round(n_rows**0.5))
        if p * p != n_rows:
            raise DimensionMismatch(f"{n_rows} rows is not a perfect square; pass block_width")
        block_width = p
    p = block_width
    if p < 1 or n_cols != p * (p + 1) or n_rows != p * p:
        raise DimensionMismatch(
            f"shape ({n_rows}, {n_cols}) is not (p^2, p(p+1)) for block width {p}"
        )
    return p


def check_selection(selection, block_count: int) -> tuple[int, ...]:
    sel = tuple(sorted({int(i) for i in selection}))
    for i in sel:
        if not 0 <= i < block_count:
            raise IndexOutOfRange(f"block index {i} outside 0..{block_count - 1}")
    return sel
