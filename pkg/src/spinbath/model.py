"""Two exchange-coupled spins, each attached to its own bosonic bath.

Units are chosen so that hbar = k_B = 1; every quantity is dimensionless.
The system Hamiltonian is

    H = eps1/2 s1z + eps2/2 s2z + K (s1+ s2- + s1- s2+)

with the computational basis ordered |00>, |01>, |10>, |11> and the
convention sz|1> = +|1>.  The |00>/|11> states are energy eigenstates;
the single-excitation states mix through the angle theta into |l3>, |l4>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonPositiveTransitionFrequency


@dataclass(frozen=True)
class ModelParams:
    """Full physical configuration of one experiment.

    eps1, eps2 : spin energies
    K          : exchange coupling (restricted to K > 0)
    gamma1/2   : frequency-independent bath coupling constants
    T1, T2     : bath temperatures (strictly positive)
    """

    eps1: float
    eps2: float
    K: float
    gamma1: float
    gamma2: float
    T1: float
    T2: float

    def __post_init__(self):
        if not self.K > 0:
            raise DomainError(f"coupling K must be positive, got {self.K}")
        if not (self.T1 > 0 and self.T2 > 0):
            raise DomainError(f"bath temperatures must be positive, got T1={self.T1}, T2={self.T2}")
        if not (self.gamma1 > 0 and self.gamma2 > 0):
            raise DomainError(
                f"bath couplings must be positive, got gamma1={self.gamma1}, gamma2={self.gamma2}"
            )


@dataclass(frozen=True)
class EigenSystem:
    """Spectrum of the two-spin Hamiltonian.

    lambdas : the four eigenvalues (-(e1+e2)/2, +(e1+e2)/2, +kappa, -kappa)
    kappa   : sqrt(K^2 + (eps1-eps2)^2/4), half the single-excitation splitting
    theta   : mixing angle, atan2(2K, eps1-eps2) in (0, pi)
    omega1  : lower transition frequency, lambdas[1] - kappa
    omega2  : upper transition frequency, lambdas[1] + kappa
    eigvecs : orthogonal 4x4 matrix, column i is |l_{i+1}> in the computational basis
    """

    lambdas: np.ndarray
    kappa: float
    theta: float
    omega1: float
    omega2: float
    eigvecs: np.ndarray

    @property
    def cos_half(self) -> float:
        return math.cos(self.theta / 2)

    @property
    def sin_half(self) -> float:
        return math.sin(self.theta / 2)


def hamiltonian(params: ModelParams) -> np.ndarray:
    """H in the computational basis (|00>, |01>, |10>, |11>)."""
    de = params.eps1 - params.eps2
    tot = params.eps1 + params.eps2
    h = np.diag([-tot / 2, -de / 2, de / 2, tot / 2]).astype(complex)
    h[1, 2] = h[2, 1] = params.K
    return h


def eigensystem(params: ModelParams) -> EigenSystem:
    """Diagonalize H in closed form.

    Raises NonPositiveTransitionFrequency when kappa >= (eps1+eps2)/2,
    i.e. when the |11> <-> |l3> gap closes.
    """
    de = params.eps1 - params.eps2
    kappa = math.hypot(params.K, de / 2)
    lam2 = (params.eps1 + params.eps2) / 2
    omega1 = lam2 - kappa
    omega2 = lam2 + kappa
    if omega1 <= 0:
        raise NonPositiveTransitionFrequency(
            f"kappa={kappa} >= (eps1+eps2)/2={lam2}; lower transition frequency {omega1} <= 0"
        )
    theta = math.atan2(2 * params.K, de)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    # columns: |00>, |11>, c|10>+s|01>, -s|10>+c|01>
    u = np.zeros((4, 4))
    u[0, 0] = 1.0
    u[3, 1] = 1.0
    u[1, 2], u[2, 2] = s, c
    u[1, 3], u[2, 3] = c, -s
    return EigenSystem(
        lambdas=np.array([-lam2, lam2, kappa, -kappa]),
        kappa=kappa,
        theta=theta,
        omega1=omega1,
        omega2=omega2,
        eigvecs=u,
    )


@dataclass(frozen=True)
class TransitionOperators:
    """Lowering eigenoperators of H through which the baths couple, in the eigenbasis.

    Each operator satisfies [H, V] = -omega V with its own transition
    frequency: V11 and V21 connect the omega2 transitions
    (|l3>->|l1>, |l2>->|l4>), V12 and V22 the omega1 transitions
    (|l2>->|l3>, |l4>->|l1>).  Bath 1 couples with amplitude cos(theta/2)
    on the omega2 channel and sin(theta/2) on the omega1 channel; bath 2
    with the complementary amplitudes.
    """

    V11: np.ndarray
    V12: np.ndarray
    V21: np.ndarray
    V22: np.ndarray
    omega1: float
    omega2: float

    def channels(self):
        """(operator, transition frequency, bath index) for all four couplings."""
        return (
            (self.V11, self.omega2, 1),
            (self.V12, self.omega1, 1),
            (self.V21, self.omega2, 2),
            (self.V22, self.omega1, 2),
        )


def transition_operators(es: EigenSystem) -> TransitionOperators:
    """Decompose the spin lowering operators s1-, s2- into eigenoperators of H."""
    c, s = es.cos_half, es.sin_half

    def ketbra(i, j):
        m = np.zeros((4, 4))
        m[i, j] = 1.0
        return m

    v11 = c * (ketbra(0, 2) + ketbra(3, 1))
    v12 = s * (ketbra(2, 1) - ketbra(0, 3))
    v21 = s * (ketbra(0, 2) - ketbra(3, 1))
    v22 = c * (ketbra(2, 1) + ketbra(0, 3))
    return TransitionOperators(
        V11=v11, V12=v12, V21=v21, V22=v22, omega1=es.omega1, omega2=es.omega2
    )


def planck_occupation(omega: float, T: float) -> float:
    """Bose-Einstein occupation 1/(exp(omega/T) - 1) for omega, T > 0."""
    if omega <= 0 or T <= 0:
        raise DomainError(f"planck_occupation needs omega > 0 and T > 0, got omega={omega}, T={T}")
    x = omega / T
    if x > 700:  # expm1 would overflow; 1/(e^x - 1) ~ e^-x here
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def spectral_density(bath: int, omega: float, params: ModelParams) -> float:
    """Bath spectral function: gamma*n(omega) for omega > 0, gamma*(n(|omega|)+1) for omega < 0.

    The negative-frequency branch describes emission into the bath; the two
    branches obey detailed balance J(-omega) = exp(omega/T) J(omega).
    """
    if bath == 1:
        gamma, temp = params.gamma1, params.T1
    elif bath == 2:
        gamma, temp = params.gamma2, params.T2
    else:
        raise DomainError(f"bath index must be 1 or 2, got {bath}")
    if omega == 0:
        raise DomainError("spectral_density is undefined at omega = 0")
    if omega > 0:
        return gamma * planck_occupation(omega, temp)
    return gamma * (planck_occupation(-omega, temp) + 1.0)


@dataclass(frozen=True)
class Rates:
    """Decay (+) and excitation (-) rates of the two dissipative channels.

    x_plus/x_minus govern the channel through the upper transition
    frequency omega2 (cos^2(theta/2) weight on bath 1); y_plus/y_minus the
    omega1 channel with the complementary weights.  Each channel's spectral
    densities are evaluated at that channel's own transition frequency,
    which is what makes the equal-temperature steady state thermal.
    """

    x_plus: float
    x_minus: float
    y_plus: float
    y_minus: float

    @property
    def x(self) -> float:
        return self.x_plus + self.x_minus

    @property
    def y(self) -> float:
        return self.y_plus + self.y_minus


def rates(es: EigenSystem, params: ModelParams) -> Rates:
    """Channel rates from the bath spectral densities at +-omega1, +-omega2."""
    c2 = es.cos_half**2
    s2 = es.sin_half**2

    def j(bath, omega):
        return spectral_density(bath, omega, params)

    return Rates(
        x_plus=2 * (c2 * j(1, -es.omega2) + s2 * j(2, -es.omega2)),
        x_minus=2 * (c2 * j(1, es.omega2) + s2 * j(2, es.omega2)),
        y_plus=2 * (s2 * j(1, -es.omega1) + c2 * j(2, -es.omega1)),
        y_minus=2 * (s2 * j(1, es.omega1) + c2 * j(2, es.omega1)),
    )


def rates_sum_difference_form(es: EigenSystem, params: ModelParams) -> Rates:
    """Algebraically equivalent form of `rates` built from sums and differences.

    Uses 2cos^2(theta/2) = 1 + de/sqrt(4K^2 + de^2); kept as an independent
    cross-check of the trigonometric weights.
    """
    de_over_root = math.cos(es.theta)  # = delta_eps / sqrt(4K^2 + delta_eps^2)

    def j(bath, omega):
        return spectral_density(bath, omega, params)

    def x_form(omega):
        return (j(1, omega) + j(2, omega)) + de_over_root * (j(1, omega) - j(2, omega))

    def y_form(omega):
        return (j(1, omega) + j(2, omega)) - de_over_root * (j(1, omega) - j(2, omega))

    return Rates(
        x_plus=x_form(-es.omega2),
        x_minus=x_form(es.omega2),
        y_plus=y_form(-es.omega1),
        y_minus=y_form(es.omega1),
    )
