import numpy as np
import pytest

from spinbath import (
    InitialState,
    MarkovPropagator,
    ModelParams,
    eigensystem,
    initial_density,
    rates,
    to_eigen,
)

# parameter sets behind the three published dynamics figures
FIG1_MODEL = ModelParams(eps1=2.0, eps2=1.1, K=1.0, gamma1=0.001, gamma2=0.001, T1=0.2, T2=0.5)
FIG2_MODEL = ModelParams(eps1=2.0, eps2=1.1, K=1.0, gamma1=0.001, gamma2=0.001, T1=1.2, T2=1.5)
FIG3_MODEL = ModelParams(eps1=1.5, eps2=1.1, K=1.0, gamma1=0.001, gamma2=0.001, T1=2.2, T2=2.5)

# |1,0><1,0|: first spin excited, second in the ground state
EXCITED_FIRST = InitialState(p0=0.0, p1=0.0, p2=1.0)


@pytest.fixture
def fig1_model():
    return FIG1_MODEL


@pytest.fixture
def fig1_es():
    return eigensystem(FIG1_MODEL)


@pytest.fixture
def fig1_rates(fig1_es):
    return rates(fig1_es, FIG1_MODEL)


@pytest.fixture
def fig1_prop(fig1_es, fig1_rates):
    return MarkovPropagator(rates=fig1_rates, es=fig1_es)


@pytest.fixture
def rho0_excited_eigen(fig1_es):
    return to_eigen(initial_density(EXCITED_FIRST), fig1_es)


def random_params(rng) -> ModelParams:
    """Valid random parameters with the lower transition frequency bounded away from 0."""
    while True:
        p = dict(
            eps1=rng.uniform(0.6, 3.0),
            eps2=rng.uniform(0.6, 3.0),
            K=rng.uniform(0.2, 1.2),
            gamma1=rng.uniform(1e-4, 5e-3),
            gamma2=rng.uniform(1e-4, 5e-3),
            T1=rng.uniform(0.1, 3.0),
            T2=rng.uniform(0.1, 3.0),
        )
        if np.hypot(p["K"], (p["eps1"] - p["eps2"]) / 2) < (p["eps1"] + p["eps2"]) / 2 - 0.02:
            return ModelParams(**p)


def random_initial(rng) -> InitialState:
    w = rng.dirichlet(np.ones(4))
    mag = np.sqrt(w[1] * w[2]) * rng.uniform(0, 1)
    phase = rng.uniform(0, 2 * np.pi)
    return InitialState(p0=w[0], p1=w[1], p2=w[2], c12=mag * np.exp(1j * phase))
