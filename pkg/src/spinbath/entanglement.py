"""Wootters concurrence of an arbitrary two-qubit density matrix."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BasisMismatch, NumericalFailure
from .states import COMPUTATIONAL, DensityMatrix

# sigma_y (x) sigma_y is real in the computational basis
_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)

_WARN_EIG = -1e-9  # warn below this, fail at 1000x
_FAIL_EIG = -1e-6


@dataclass(frozen=True)
class ConcurrenceResult:
    """value = max(0, e1 - e2 - e3 - e4) with sqrt_eigs the descending e_i."""

    value: float
    sqrt_eigs: np.ndarray


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """(sy (x) sy) rho* (sy (x) sy), conjugation taken in the computational basis."""
    if rho.basis != COMPUTATIONAL:
        raise BasisMismatch("spin_flip is defined in the computational basis")
    return _YY @ rho.matrix.conj() @ _YY


def _sqrt_psd(m: np.ndarray, context: str) -> np.ndarray:
    """Square root of a Hermitian PSD matrix; round-off negatives are clamped.

    Eigenvalues below the warn threshold get a warning, far-negative ones
    raise instead of being papered over.
    """
    try:
        ev, vec = np.linalg.eigh(0.5 * (m + m.conj().T))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalFailure(f"eigensolver failed in {context}") from exc
    lo = float(ev.min())
    if lo < _FAIL_EIG:
        raise NumericalFailure(f"{context}: eigenvalue {lo:.3e} far below zero")
    if lo < _WARN_EIG:
        warnings.warn(f"{context}: clamping eigenvalue {lo:.3e} to zero", stacklevel=3)
    ev = np.clip(ev, 0.0, None)
    return (vec * np.sqrt(ev)) @ vec.conj().T


def wootters_concurrence(rho: DensityMatrix) -> ConcurrenceResult:
    """Concurrence from the square-rooted spectrum of rho * spin_flip(rho).

    Computed through the equivalent Hermitian problem: with Y = sy (x) sy,
    the matrix M = sqrt(rho) Y conj(sqrt(rho)) satisfies
    M M^+ = sqrt(rho) rho~ sqrt(rho), which shares its spectrum with
    rho rho~.  The square-rooted eigenvalues are therefore the singular
    values of M -- real and nonnegative by construction, and accurate to
    machine precision even when the spectrum touches zero (a plain sqrt of
    computed eigenvalues would lose half the digits there).
    """
    if rho.basis != COMPUTATIONAL:
        raise BasisMismatch("wootters_concurrence is defined in the computational basis")
    sq = _sqrt_psd(rho.matrix, "wootters_concurrence")
    try:
        e = np.linalg.svd(sq @ _YY @ sq.conj(), compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalFailure("singular value decomposition failed") from exc
    value = max(0.0, float(e[0] - e[1] - e[2] - e[3]))
    return ConcurrenceResult(value=value, sqrt_eigs=e)
