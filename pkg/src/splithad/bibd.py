"""Balancedly multi-splittable BIBDs and their correspondence with regular matrices.

With ``D = (J - H) / 2`` a regular multi-splittable matrix ``H`` becomes the
incidence matrix of a BIBD with parameters

    v = p^2, b = p^2 + p, r = (p^2 - 1) / 2, k = (p^2 - p) / 2, lam = (p^2 - p - 2) / 4

and in every half-selection of blocks two distinct points meet in either
``(p^2 - 1) / 8`` or ``(p^2 - 2p - 3) / 8`` blocks.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from .bmsph import EXHAUSTIVE_BUDGET, half_selections, sample_selections
from .constructions import IncidenceMatrix, verify_incidence
from .errors import BadParameters, BudgetExceeded, NotRegular
from .exactmat import BlockedMatrix, VerifyReport, gram
from .regular_embed import RegularBMSPH, check_regular, regularize

__all__ = [
    "bibd_parameters",
    "concurrence_values",
    "to_bibd",
    "from_bibd",
    "verify_bibd",
    "verify_splittable_bibd",
]

logger = logging.getLogger(__name__)


def bibd_parameters(p: int) -> tuple[int, int, int, int, int]:
    return (p * p, p * p + p, (p * p - 1) // 2, (p * p - p) // 2, (p * p - p - 2) // 4)


def concurrence_values(p: int) -> tuple[int, int]:
    """The two admissible concurrences inside a half-selection, larger first."""
    return ((p * p - 1) // 8, (p * p - 2 * p - 3) // 8)


def to_bibd(h: RegularBMSPH | BlockedMatrix) -> IncidenceMatrix:
    """Incidence matrix ``D = (J - H) / 2`` of a regular multi-splittable matrix.

    A plain :class:`BlockedMatrix` is passed through :func:`regularize` first,
    which leaves already-regular input unchanged.
    """
    if isinstance(h, BlockedMatrix):
        if check_regular(h) is not None:
            logger.info("input is not regular; regularizing before conversion")
        h = regularize(h)
    H = h.matrix
    defect = check_regular(H)
    if defect is not None:
        raise NotRegular(defect)
    p = H.block_width
    D = ((1 - H.matrix.astype(np.int16)) // 2).astype(np.int8)
    _, _, r, k, lam = bibd_parameters(p)
    d = IncidenceMatrix(D, r=r, k=k, lam=lam, block_width=p)
    rep = verify_incidence(d)
    if not rep.passed:  # pragma: no cover - follows from regularity and orthogonality
        raise NotRegular(rep.witness)
    per_block = D.reshape(D.shape[0], p + 1, p).sum(axis=2)
    if (per_block != (p - 1) // 2).any():  # pragma: no cover
        raise NotRegular("block row sums differ from (p - 1) / 2")
    return d


def _check_params(d: IncidenceMatrix) -> int:
    p = d.block_width
    if p is None:
        raise BadParameters("incidence matrix has no declared block width")
    if p % 4 != 3:
        raise BadParameters(f"block width {p} is not 3 mod 4")
    if d.params != bibd_parameters(p):
        raise BadParameters(f"parameters {d.params} differ from {bibd_parameters(p)} for p = {p}")
    return p


def from_bibd(d: IncidenceMatrix) -> BlockedMatrix:
    """``H = J - 2D`` for a BIBD with the multi-splittable parameters."""
    p = _check_params(d)
    rep = verify_incidence(d)
    if not rep.passed:
        raise BadParameters(rep.witness)
    return BlockedMatrix(1 - 2 * d.table.astype(np.int8), p)


def verify_bibd(d: IncidenceMatrix) -> VerifyReport:
    return verify_incidence(d)


def verify_splittable_bibd(
    d: IncidenceMatrix,
    mode: str = "all",
    *,
    samples: int | None = None,
    seed: int | None = None,
    budget: int = EXHAUSTIVE_BUDGET,
) -> VerifyReport:
    """Check the concurrence condition in half-selections of blocks.

    Every selection is tested under ``mode="all"``: without regularity a
    selection and its complement need not carry related concurrences.
    """
    base = verify_incidence(d)
    if not base.passed:
        return base
    try:
        p = _check_params(d)
    except BadParameters as exc:
        return VerifyReport(False, base.checks_run, str(exc))
    blocks = p + 1
    k = blocks // 2
    if mode == "all":
        total = math.comb(blocks, k)
        if total > budget:
            raise BudgetExceeded(f"{total} half-selections exceed the budget of {budget}")
        selections = list(half_selections(blocks))
    elif mode == "sample":
        if samples is None or seed is None:
            raise ValueError("mode='sample' needs both samples and seed")
        selections = sample_selections(blocks, samples, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    allowed = np.array(concurrence_values(p))
    D = d.table.astype(np.int64)
    n = D.shape[0]
    iu = np.triu_indices(n, k=1)
    block_conc = [gram(D[:, i * p : (i + 1) * p])[iu] for i in range(blocks)]
    observed: set[int] = set()
    checks = base.checks_run
    for sel in selections:
        conc = sum(block_conc[i] for i in sel)
        checks += 1
        observed.update(np.unique(conc).tolist())
        bad = np.flatnonzero(~np.isin(conc, allowed))
        if bad.size:
            j = int(bad[0])
            return VerifyReport(
                False,
                checks,
                f"selection {list(sel)}: points ({iu[0][j]}, {iu[1][j]}) meet in {conc[j]} blocks, "
                f"expected one of {allowed.tolist()}",
            )
    return VerifyReport(True, checks, observed=tuple(sorted(observed)))
