"""Exact kernels for +-1 matrices.

Sign matrices are plain ``int8`` numpy arrays.  Inner products between sign
vectors are small integers, so a float64 BLAS product is exact as long as the
vector length stays below 2**53; :func:`gram` relies on that and converts back
to ``int64``.  :func:`gram_popcount` is an independent route through packed
bit words (``<u, v> = n - 2 * popcount(u xor v)``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_block_width, check_selection, check_sign_matrix
from .errors import DimensionMismatch

__all__ = [
    "BlockedMatrix",
    "SignedPermutation",
    "VerifyReport",
    "gram",
    "gram_popcount",
    "pack_signs",
    "select_blocks",
    "apply_signed_perms",
    "block_grams",
    "pair_profiles",
]

_EXACT_LIMIT = 2**53


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a verifier.

    ``observed`` collects the distinct off-diagonal values seen by checkers
    that have a notion of one (selection grams, concurrences); it is empty
    otherwise.
    """

    passed: bool
    checks_run: int
    witness: str | None = None
    observed: tuple[int, ...] = ()

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError("a passing report cannot carry a witness")

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True, eq=False)
class BlockedMatrix:
    """A ``p^2 x p(p+1)`` sign matrix split into ``p + 1`` blocks of width ``p``."""

    matrix: np.ndarray
    block_width: int

    def __post_init__(self):
        m = check_sign_matrix(self.matrix, name="matrix", copy=True)
        p = check_block_width(*m.shape, self.block_width)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "block_width", p)

    @classmethod
    def from_array(cls, X, block_width: int | None = None) -> "BlockedMatrix":
        X = check_sign_matrix(X)
        return cls(X, check_block_width(*X.shape, block_width))

    @property
    def block_count(self) -> int:
        return self.block_width + 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def block(self, i: int) -> np.ndarray:
        p = self.block_width
        return self.matrix[:, i * p : (i + 1) * p]

    def __eq__(self, other):
        if not isinstance(other, BlockedMatrix):
            return NotImplemented
        return self.block_width == other.block_width and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SignedPermutation:
    """Row (or column) map ``i -> signs[i] * e_{permutation[i]}``."""

    permutation: np.ndarray
    signs: np.ndarray = field(default=None)

    def __post_init__(self):
        perm = np.asarray(self.permutation, dtype=np.int64)
        n = perm.shape[0]
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(n)):
            raise ValueError("permutation is not a bijection on 0..n-1")
        signs = np.ones(n, dtype=np.int8) if self.signs is None else check_sign_matrix(self.signs)[0]
        if signs.shape[0] != n:
            raise DimensionMismatch("signs and permutation differ in length")
        object.__setattr__(self, "permutation", perm)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(np.arange(n))

    @classmethod
    def from_signs(cls, signs) -> "SignedPermutation":
        signs = np.asarray(signs)
        return cls(np.arange(signs.shape[0]), signs)

    def __len__(self) -> int:
        return self.permutation.shape[0]

    def is_identity(self) -> bool:
        return bool((self.permutation == np.arange(len(self))).all() and (self.signs == 1).all())

    def __eq__(self, other):
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        return np.array_equal(self.permutation, other.permutation) and np.array_equal(
            self.signs, other.signs
        )

    __hash__ = None


def _as_matrix(h) -> np.ndarray:
    return h.matrix if isinstance(h, BlockedMatrix) else np.asarray(h)


def gram(a, b=None) -> np.ndarray:
    """All pairwise row inner products of ``a`` and ``b`` as an int64 matrix."""
    a = _as_matrix(a)
    b = a if b is None else _as_matrix(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise DimensionMismatch(f"cannot take row inner products of {a.shape} and {b.shape}")
    n = a.shape[1]
    if n == 0:
        return np.zeros((a.shape[0], b.shape[0]), dtype=np.int64)
    amax = int(np.abs(a).max(initial=0))
    bmax = int(np.abs(b).max(initial=0))
    if n * amax * bmax >= _EXACT_LIMIT:  # pragma: no cover - never hit by sign matrices
        return a.astype(object) @ b.astype(object).T
    prod = a.astype(np.float64) @ b.astype(np.float64).T
    return np.rint(prod).astype(np.int64)


def pack_signs(a) -> np.ndarray:
    """Pack rows of a sign matrix into uint64 words, bit set where the entry is -1."""
    a = check_sign_matrix(_as_matrix(a))
    bits = np.packbits(a < 0, axis=1, bitorder="little")
    pad = (-bits.shape[1]) % 8
    if pad:
        bits = np.pad(bits, ((0, 0), (0, pad)))
    return np.ascontiguousarray(bits).view(np.uint64)


def gram_popcount(a, b=None) -> np.ndarray:
    """Same as :func:`gram` for sign matrices, computed with popcounts."""
    a = _as_matrix(a)
    b = a if b is None else _as_matrix(b)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch(f"cannot take row inner products of {a.shape} and {b.shape}")
    n = a.shape[1]
    pa, pb = pack_signs(a), pack_signs(b)
    out = np.empty((a.shape[0], b.shape[0]), dtype=np.int64)
    for i in range(pa.shape[0]):
        mism = np.bitwise_count(pa[i] ^ pb).sum(axis=1, dtype=np.int64)
        out[i] = n - 2 * mism
    return out


def select_blocks(h: BlockedMatrix, selection) -> np.ndarray:
    """Columns of the selected blocks, concatenated in ascending block order."""
    sel = check_selection(selection, h.block_count)
    p = h.block_width
    if not sel:
        return np.zeros((h.shape[0], 0), dtype=np.int8)
    cols = np.concatenate([np.arange(i * p, (i + 1) * p) for i in sel])
    return h.matrix[:, cols]


def apply_signed_perms(h, rowp: SignedPermutation, colp: SignedPermutation) -> np.ndarray:
    """Entry ``(i, j)`` of the result is ``r_i * c_j * h[rowp(i), colp(j)]``."""
    m = _as_matrix(h)
    if len(rowp) != m.shape[0] or len(colp) != m.shape[1]:
        raise DimensionMismatch(
            f"permutations of sizes ({len(rowp)}, {len(colp)}) do not fit matrix {m.shape}"
        )
    out = m[np.ix_(rowp.permutation, colp.permutation)]
    return (out * rowp.signs[:, None] * colp.signs[None, :]).astype(m.dtype)


def block_grams(h: BlockedMatrix) -> np.ndarray:
    """Stack of per-block grams, shape ``(p + 1, p^2, p^2)``."""
    return np.stack([gram(h.block(i)) for i in range(h.block_count)])


def pair_profiles(h: BlockedMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-block inner products for every unordered row pair ``x < y``.

    Returns ``(xs, ys, A)`` with ``A[k, i] = <row xs[k] of block i, row ys[k] of block i>``;
    pairs come in row-major order.
    """
    n = h.shape[0]
    xs, ys = np.triu_indices(n, k=1)
    A = np.empty((xs.shape[0], h.block_count), dtype=np.int64)
    for i in range(h.block_count):
        A[:, i] = gram(h.block(i))[xs, ys]
    return xs, ys, A
