"""Relaxation with an exponential memory kernel k(t) = gamma0 exp(-gamma0 t).

The population generator B (eigenvalues 0, -x, -y, -x-y) is diagonalized by
the mode matrix S; under the memory kernel each eigenmode with eigenvalue
lambda evolves by the scalar mode function

    xi(lambda, t) = (gamma0 e^{lambda t} + lambda e^{-gamma0 t}) / (gamma0 + lambda)

instead of e^{lambda t}.  gamma0 -> infinity recovers the memoryless
dynamics; the long-time state is the same fixed point for every gamma0.
The (3,4) coherence is itself an eigenmode and evolves by xi of its complex
decay constant.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .entanglement import wootters_concurrence
from .errors import DomainError, SingularS
from .markov import coherence_eigenvalue, _require_family
from .model import EigenSystem, Rates
from .states import (
    COMPUTATIONAL,
    EIGEN,
    BasisMismatch,
    DensityMatrix,
    Trajectory,
    to_computational,
    to_eigen,
)

DEGENERATE_TOL = 1e-8  # quotient cancellation loses ~8 digits at this separation


@dataclass(frozen=True)
class MemoryKernel:
    """Exponential kernel rate; the kernel integrates to 1 by construction."""

    gamma0: float

    def __post_init__(self):
        if not self.gamma0 > 0:
            raise DomainError(f"kernel rate gamma0 must be positive, got {self.gamma0}")


@dataclass(frozen=True)
class JordanForm:
    """Eigendecomposition of the population generator: B = S diag(J) S^-1.

    J holds the diagonal (0, -x, -y, -x-y); cond is the condition number
    of S, reported for diagnostics.
    """

    S: np.ndarray
    Sinv: np.ndarray
    J: np.ndarray
    cond: float


def jordan_form(rates: Rates) -> JordanForm:
    """Mode matrix built from rate ratios; column 0 spans the steady state.

    The left eigenvector of the zero mode (row 0 of S^-1) is proportional
    to (1,1,1,1), the trace functional.
    """
    xp, xm, yp, ym = rates.x_plus, rates.x_minus, rates.y_plus, rates.y_minus
    s = np.array(
        [
            [yp / ym, yp / ym, -1.0, -1.0],
            [xm / xp, -1.0, xm / xp, -1.0],
            [xm * yp / (xp * ym), -yp / ym, -xm / xp, 1.0],
            [1.0, 1.0, 1.0, 1.0],
        ]
    )
    det = np.linalg.det(s)
    scale = np.prod(np.linalg.norm(s, axis=0))
    if abs(det) < 1e-12 * scale:
        raise SingularS(f"mode matrix is numerically singular: |det| = {abs(det):.3e}")
    return JordanForm(
        S=s,
        Sinv=np.linalg.inv(s),
        J=np.array([0.0, -rates.x, -rates.y, -rates.x - rates.y]),
        cond=float(np.linalg.cond(s)),
    )


def xi(lam: complex, kernel: MemoryKernel, t: float) -> complex:
    """Mode function; xi(lam, 0) = 1 for every lam and gamma0.

    At lam ~ -gamma0 the quotient degenerates; within DEGENERATE_TOL of
    that point the analytic limit (1 + gamma0 t) e^{-gamma0 t} is used.
    """
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    g0 = kernel.gamma0
    den = g0 + lam
    if abs(den) < DEGENERATE_TOL * max(g0, abs(lam)):
        return (1.0 + g0 * t) * cmath.exp(-g0 * t)
    return (g0 * cmath.exp(lam * t) + lam * cmath.exp(-g0 * t)) / den


@dataclass(frozen=True)
class PostMarkovPropagator:
    """Bundles everything needed to evolve a state under the memory kernel."""

    jordan: JordanForm
    kernel: MemoryKernel
    es: EigenSystem
    rates: Rates

    @classmethod
    def build(cls, es: EigenSystem, rates_: Rates, gamma0: float) -> "PostMarkovPropagator":
        return cls(jordan=jordan_form(rates_), kernel=MemoryKernel(gamma0), es=es, rates=rates_)

    def propagate(self, rho0: DensityMatrix, t: float) -> DensityMatrix:
        return postmarkov_propagate(self.jordan, self.kernel, self.es, self.rates, rho0, t)


def postmarkov_propagate(
    jf: JordanForm,
    kernel: MemoryKernel,
    es: EigenSystem,
    rates: Rates,
    rho0: DensityMatrix,
    t: float,
) -> DensityMatrix:
    """Evolve an eigenbasis state: populations via S diag(xi) S^-1, coherence via xi(s34).

    The zero mode has xi = 1 identically, so the trace is conserved exactly.
    Hermiticity is exact by construction; positivity is not guaranteed in
    closed form and is monitored along trajectories.
    """
    if rho0.basis != EIGEN:
        raise BasisMismatch("postmarkov_propagate expects an eigenbasis state")
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    m = rho0.matrix
    _require_family(m)
    mode_factors = np.array([xi(lam, kernel, t).real for lam in jf.J])
    pops = jf.S @ (mode_factors * (jf.Sinv @ np.real(np.diag(m))))
    out = np.diag(pops).astype(complex)
    out[2, 3] = xi(coherence_eigenvalue(es, rates), kernel, t) * m[2, 3]
    out[3, 2] = np.conjugate(out[2, 3])
    return DensityMatrix(out, EIGEN)


def concurrence_trajectory(propagator, rho0: DensityMatrix, t_grid) -> Trajectory:
    """Concurrence and state along a strictly increasing time grid.

    Works with any propagator exposing `.propagate(rho, t)` and `.es`
    (memoryless or memory-kernel).  Each grid point is an independent
    closed-form evaluation; no sequential stepping is involved.  The
    returned trajectory carries computational-basis states, eigenbasis
    populations and (3,4) coherence, and the minimum eigenvalue per time
    as a positivity monitor.
    """
    ts = np.asarray(t_grid, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise DomainError("t_grid must be a nonempty 1-d array")
    if ts[0] < 0:
        raise DomainError(f"times must be nonnegative, got t0 = {ts[0]}")
    if ts.size > 1 and not np.all(np.diff(ts) > 0):
        raise DomainError("t_grid must be strictly increasing")
    es = propagator.es
    rho0_e = to_eigen(rho0, es) if rho0.basis == COMPUTATIONAL else rho0

    n = ts.size
    states = np.empty((n, 4, 4), dtype=complex)
    conc = np.empty(n)
    pops = np.empty((n, 4))
    coh = np.empty(n, dtype=complex)
    min_eig = np.empty(n)
    for i, t in enumerate(ts):
        rho_e = propagator.propagate(rho0_e, float(t))
        rho_c = to_computational(rho_e, es)
        states[i] = rho_c.matrix
        conc[i] = wootters_concurrence(rho_c).value
        pops[i] = np.real(np.diag(rho_e.matrix))
        coh[i] = rho_e.matrix[2, 3]
        min_eig[i] = rho_c.min_eigenvalue()
    return Trajectory(
        times=ts,
        states=states,
        concurrence=conc,
        populations_eigen=pops,
        coherence_eigen=coh,
        min_eigenvalue=min_eig,
    )
