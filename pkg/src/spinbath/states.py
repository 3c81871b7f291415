"""Two-qubit density matrices, the initial-state family, and basis changes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BasisMismatch, InvalidState
from .model import EigenSystem

COMPUTATIONAL = "computational"
EIGEN = "eigen"

_SLACK = 1e-12  # round-off slack for inequality invariants


@dataclass
class DensityMatrix:
    """4x4 complex state of the two spins plus its basis tag.

    Treat instances as immutable.  `validate` enforces Hermiticity, unit
    trace and positive semidefiniteness within numerical tolerance.
    """

    matrix: np.ndarray
    basis: str

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (4, 4):
            raise InvalidState(f"density matrix must be 4x4, got shape {self.matrix.shape}")
        if self.basis not in (COMPUTATIONAL, EIGEN):
            raise InvalidState(f"unknown basis tag {self.basis!r}")

    def validate(self, herm_tol=1e-10, trace_tol=1e-10, psd_tol=-1e-9) -> "DensityMatrix":
        m = self.matrix
        herm = np.abs(m - m.conj().T).max()
        if herm > herm_tol:
            raise InvalidState(f"not Hermitian: max |rho - rho^+| = {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > trace_tol:
            raise InvalidState(f"trace {tr} differs from 1 by {abs(tr - 1.0):.3e}")
        lo = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())
        if lo < psd_tol:
            raise InvalidState(f"not positive semidefinite: min eigenvalue {lo:.3e}")
        return self

    def min_eigenvalue(self) -> float:
        m = self.matrix
        return float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())


@dataclass(frozen=True)
class InitialState:
    """Populations p0..p2 (p3 = 1 - p0 - p1 - p2) plus the |01><10| coherence c12."""

    p0: float
    p1: float
    p2: float
    c12: complex = 0j

    def __post_init__(self):
        ps = (self.p0, self.p1, self.p2)
        if any(p < 0 for p in ps):
            raise InvalidState(f"populations must be nonnegative, got {ps}")
        if self.p0 + self.p1 + self.p2 > 1 + _SLACK:
            raise InvalidState(f"p0 + p1 + p2 = {self.p0 + self.p1 + self.p2} exceeds 1")
        if abs(self.c12) ** 2 > self.p1 * self.p2 + _SLACK:
            raise InvalidState(
                f"|c12|^2 = {abs(self.c12)**2:.3e} exceeds p1*p2 = {self.p1 * self.p2:.3e}"
            )

    @property
    def p3(self) -> float:
        return 1.0 - self.p0 - self.p1 - self.p2


def initial_density(init: InitialState) -> DensityMatrix:
    """Computational-basis matrix: diagonal populations plus the (1,2)/(2,1) coherence."""
    m = np.diag([init.p0, init.p1, init.p2, init.p3]).astype(complex)
    m[1, 2] = init.c12
    m[2, 1] = np.conjugate(init.c12)
    return DensityMatrix(m, COMPUTATIONAL)


def to_eigen(rho: DensityMatrix, es: EigenSystem) -> DensityMatrix:
    """rho' = U^+ rho U; trace, Hermiticity and spectrum are preserved."""
    if rho.basis != COMPUTATIONAL:
        raise BasisMismatch(f"to_eigen expects a computational-basis state, got {rho.basis!r}")
    u = es.eigvecs
    return DensityMatrix(u.T @ rho.matrix @ u, EIGEN)


def to_computational(rho: DensityMatrix, es: EigenSystem) -> DensityMatrix:
    """rho' = U rho U^+, inverse of `to_eigen`."""
    if rho.basis != EIGEN:
        raise BasisMismatch(f"to_computational expects an eigenbasis state, got {rho.basis!r}")
    u = es.eigvecs
    return DensityMatrix(u @ rho.matrix @ u.T, COMPUTATIONAL)


@dataclass
class Trajectory:
    """Time grid with per-time states and diagnostics.

    states holds computational-basis matrices, shape (n, 4, 4).
    populations_eigen / coherence_eigen carry the eigenbasis diagonal and
    the (3,4) coherence, the natural outputs of the analytic propagators.
    min_eigenvalue monitors positivity along the run.
    """

    times: np.ndarray
    states: np.ndarray
    concurrence: np.ndarray
    populations_eigen: np.ndarray
    coherence_eigen: np.ndarray
    min_eigenvalue: np.ndarray = field(default=None)
