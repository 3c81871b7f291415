"""Closed-form relaxation for memoryless baths.

Populations in the eigenbasis factor into two independent two-level
balance processes (the omega2 channel with x rates, the omega1 channel
with y rates); the (3,4) coherence decays as a single exponential mode.
Both results are exact for the initial-state family whose only coherence
sits in the (3,4) eigenbasis block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedCoherence
from .model import EigenSystem, Rates
from .states import COMPUTATIONAL, EIGEN, BasisMismatch, DensityMatrix

COHERENCE_TOL = 1e-12


@dataclass(frozen=True)
class MarkovPropagator:
    """Cheap value object bundling the rates and spectrum; freely copyable."""

    rates: Rates
    es: EigenSystem

    def propagate(self, rho0: DensityMatrix, t: float) -> DensityMatrix:
        return markov_propagate(self, rho0, t)


def coherence_eigenvalue(es: EigenSystem, rates: Rates) -> complex:
    """Decay constant of the (3,4) eigenbasis coherence: -2i*lambda3 - (x+y)/2."""
    return -2j * es.lambdas[2] - (rates.x + rates.y) / 2


def _require_family(m: np.ndarray) -> None:
    """Reject coherences outside the (3,4) block; the closed form does not cover them."""
    off = np.abs(m - np.diag(np.diag(m)))
    off[2, 3] = off[3, 2] = 0.0
    worst = off.max()
    if worst > COHERENCE_TOL:
        raise UnsupportedCoherence(
            f"coherence of magnitude {worst:.3e} outside the (3,4) eigenbasis block; "
            "use the numerical integrator for such states"
        )


def a_coefficients(prop: MarkovPropagator, t: float) -> np.ndarray:
    """Population transfer matrix at time t, normalized so columns sum to x*y.

    Dividing by x*y gives the column-stochastic propagator of the eigenbasis
    populations (rho_ii ordered 1..4).
    """
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    r = prop.rates
    xp, xm, yp, ym = r.x_plus, r.x_minus, r.y_plus, r.y_minus
    ex = math.exp(-t * r.x)
    ey = math.exp(-t * r.y)
    return np.array(
        [
            [
                (xp + xm * ex) * (yp + ym * ey),
                (1 - ex) * (1 - ey) * xp * yp,
                (1 - ex) * xp * (yp + ym * ey),
                (xp + xm * ex) * (1 - ey) * yp,
            ],
            [
                (1 - ex) * (1 - ey) * xm * ym,
                (xm + xp * ex) * (ym + yp * ey),
                (xm + xp * ex) * (1 - ey) * ym,
                (1 - ex) * xm * (ym + yp * ey),
            ],
            [
                (1 - ex) * xm * (yp + ym * ey),
                (xm + xp * ex) * (1 - ey) * yp,
                (xm + xp * ex) * (yp + ym * ey),
                (1 - ex) * (1 - ey) * xm * yp,
            ],
            [
                (xp + xm * ex) * (1 - ey) * ym,
                (1 - ex) * xp * (ym + yp * ey),
                (1 - ex) * (1 - ey) * xp * ym,
                (xp + xm * ex) * (ym + yp * ey),
            ],
        ]
    )


def markov_propagate(prop: MarkovPropagator, rho0: DensityMatrix, t: float) -> DensityMatrix:
    """Evolve an eigenbasis state for time t >= 0.

    Populations go through `a_coefficients`; the (3,4) coherence picks up
    exp(-2i*lambda3*t - (x+y)t/2).  Any other initial coherence raises
    UnsupportedCoherence.
    """
    if rho0.basis != EIGEN:
        raise BasisMismatch("markov_propagate expects an eigenbasis state")
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    m = rho0.matrix
    _require_family(m)
    r = prop.rates
    pops = a_coefficients(prop, t) @ np.real(np.diag(m)) / (r.x * r.y)
    out = np.diag(pops).astype(complex)
    phase = np.exp(coherence_eigenvalue(prop.es, r) * t)
    out[2, 3] = phase * m[2, 3]
    out[3, 2] = np.conjugate(out[2, 3])
    return DensityMatrix(out, EIGEN)


def steady_populations(rates: Rates) -> np.ndarray:
    """Long-time eigenbasis populations (x+y+, x-y-, x-y+, x+y-)/(x*y)."""
    r = rates
    return np.array(
        [r.x_plus * r.y_plus, r.x_minus * r.y_minus, r.x_minus * r.y_plus, r.x_plus * r.y_minus]
    ) / (r.x * r.y)


def steady_state(prop: MarkovPropagator) -> DensityMatrix:
    """Unique fixed point, rotated to the computational basis.

    Diagonal in the eigenbasis (the (3,4) coherence decays away); the
    rotation produces the (1,2)/(2,1) coherence with the
    cos(theta/2)sin(theta/2) weight.
    """
    u = prop.es.eigvecs
    m = u @ np.diag(steady_populations(prop.rates)).astype(complex) @ u.T
    return DensityMatrix(m, COMPUTATIONAL)


def steady_state_concurrence(prop: MarkovPropagator) -> float:
    """Closed-form concurrence of the steady state, in [0, 1].

    Equals the Wootters concurrence of `steady_state` (cross-checked in the
    test suite): the steady state is an X state whose single coherence is
    sin(theta)/2 * (x-y+ - x+y-)/(x*y).
    """
    r = prop.rates
    sin_theta = math.sin(prop.es.theta)
    val = (
        sin_theta / 2 * abs(r.x_plus * r.y_minus - r.x_minus * r.y_plus)
        - math.sqrt(r.x_plus * r.x_minus * r.y_plus * r.y_minus)
    )
    return (2.0 / (r.x * r.y)) * max(0.0, val)
