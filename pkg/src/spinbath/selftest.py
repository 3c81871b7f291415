"""Fast built-in invariant suite: identities plus reduced-grid oracle cross-checks.

Each check either returns a one-line detail string or raises AssertionError.
The whole suite is meant to finish well under a minute.
"""

from __future__ import annotations

import numpy as np

from .entanglement import wootters_concurrence
from .markov import (
    MarkovPropagator,
    a_coefficients,
    coherence_eigenvalue,
    markov_propagate,
    steady_populations,
    steady_state,
    steady_state_concurrence,
)
from .model import (
    ModelParams,
    eigensystem,
    hamiltonian,
    planck_occupation,
    rates,
    rates_sum_difference_form,
    spectral_density,
    transition_operators,
)
from .oracle import (
    build_lindbladian,
    integrate_markov,
    integrate_postmarkov_mode,
    population_block,
    vec,
)
from .postmarkov import MemoryKernel, PostMarkovPropagator, jordan_form, xi
from .states import (
    COMPUTATIONAL,
    EIGEN,
    DensityMatrix,
    InitialState,
    initial_density,
    to_computational,
    to_eigen,
)

FIG_MODEL = ModelParams(eps1=2.0, eps2=1.1, K=1.0, gamma1=0.001, gamma2=0.001, T1=0.2, T2=0.5)
EXCITED_FIRST = InitialState(p0=0.0, p1=0.0, p2=1.0)  # |1,0><1,0|


def _random_params(rng) -> ModelParams:
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


def _random_initial(rng) -> InitialState:
    w = rng.dirichlet(np.ones(4))
    mag = np.sqrt(w[1] * w[2]) * rng.uniform(0, 1)
    phase = rng.uniform(0, 2 * np.pi)
    return InitialState(p0=w[0], p1=w[1], p2=w[2], c12=mag * np.exp(1j * phase))


def check_spectrum_identities():
    es = eigensystem(FIG_MODEL)
    de = FIG_MODEL.eps1 - FIG_MODEL.eps2
    assert abs(es.kappa**2 - (FIG_MODEL.K**2 + de**2 / 4)) < 1e-12
    assert abs(es.omega1 + es.omega2 - (FIG_MODEL.eps1 + FIG_MODEL.eps2)) < 1e-12
    assert abs(es.omega2 - es.omega1 - 2 * es.kappa) < 1e-12
    u = es.eigvecs
    assert np.abs(u.T @ u - np.eye(4)).max() < 1e-12
    h = hamiltonian(FIG_MODEL)
    assert np.abs(u.T @ h @ u - np.diag(es.lambdas)).max() < 1e-12
    return f"kappa={es.kappa:.6f}, omega1={es.omega1:.6f}, omega2={es.omega2:.6f}"


def check_transition_operators():
    es = eigensystem(FIG_MODEL)
    h = np.diag(es.lambdas)
    worst = 0.0
    for v, omega, _bath in transition_operators(es).channels():
        worst = max(worst, np.abs(h @ v - v @ h + omega * v).max())
    assert worst < 1e-12
    return f"max |[H,V] + omega V| = {worst:.2e}"


def check_detailed_balance():
    worst = 0.0
    for omega in (0.3, 1.0, 2.5):
        for bath, temp in ((1, FIG_MODEL.T1), (2, FIG_MODEL.T2)):
            jm = spectral_density(bath, -omega, FIG_MODEL)
            jp = spectral_density(bath, omega, FIG_MODEL)
            worst = max(worst, abs(jm / jp - np.exp(omega / temp)) / np.exp(omega / temp))
    assert worst < 1e-12
    return f"max relative detailed-balance error = {worst:.2e}"


def check_rates_forms():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        params = _random_params(rng)
        es = eigensystem(params)
        r1, r2 = rates(es, params), rates_sum_difference_form(es, params)
        for a, b in ((r1.x_plus, r2.x_plus), (r1.x_minus, r2.x_minus),
                     (r1.y_plus, r2.y_plus), (r1.y_minus, r2.y_minus)):
            assert a > 0
            worst = max(worst, abs(a - b) / a)
        ratio = r1.x_plus / r1.x_minus
        bounds = sorted((np.exp(es.omega2 / params.T1), np.exp(es.omega2 / params.T2)))
        assert bounds[0] - 1e-9 <= ratio <= bounds[1] + 1e-9
    assert worst < 1e-12
    return f"two algebraic forms agree to {worst:.2e} relative"


def check_population_propagator():
    es = eigensystem(FIG_MODEL)
    r = rates(es, FIG_MODEL)
    prop = MarkovPropagator(rates=r, es=es)
    xy = r.x * r.y
    assert np.abs(a_coefficients(prop, 0.0) - xy * np.eye(4)).max() < 1e-12 * xy
    worst = 0.0
    for t in (0.5, 100.0, 2000.0):
        a = a_coefficients(prop, t) / xy
        worst = max(worst, np.abs(a.sum(axis=0) - 1.0).max())
        assert a.min() >= 0 and a.max() <= 1 + 1e-12
    tail = a_coefficients(prop, 1e7) / xy
    target = np.outer(steady_populations(r), np.ones(4))
    assert np.abs(tail - target).max() < 1e-12
    assert worst < 1e-12
    return f"column sums deviate by {worst:.2e}"


def check_markov_vs_integrator():
    es = eigensystem(FIG_MODEL)
    prop = MarkovPropagator(rates=rates(es, FIG_MODEL), es=es)
    superop = build_lindbladian(FIG_MODEL, es)
    rho0 = to_eigen(initial_density(EXCITED_FIRST), es)
    grid = np.linspace(0.0, 200.0, 41)
    traj = integrate_markov(superop, rho0, grid, step=0.004, es=es)
    worst = 0.0
    for i, t in enumerate(grid):
        exact = to_computational(markov_propagate(prop, rho0, float(t)), es)
        worst = max(worst, np.abs(exact.matrix - traj.states[i]).max())
    assert worst < 1e-6
    return f"closed form vs integrator max error = {worst:.2e}"


def check_steady_state():
    es = eigensystem(FIG_MODEL)
    r = rates(es, FIG_MODEL)
    prop = MarkovPropagator(rates=r, es=es)
    superop = build_lindbladian(FIG_MODEL, es)
    rho_inf = steady_state(prop)
    resid = np.linalg.norm(superop.matrix @ vec(to_eigen(rho_inf, es).matrix))
    assert resid < 1e-10

    # equal temperatures: thermal state of H
    eq = ModelParams(eps1=2.0, eps2=1.1, K=1.0, gamma1=0.001, gamma2=0.002, T1=0.7, T2=0.7)
    es_eq = eigensystem(eq)
    prop_eq = MarkovPropagator(rates=rates(es_eq, eq), es=es_eq)
    gibbs = np.diag(np.exp(-es_eq.lambdas / eq.T1))
    gibbs = gibbs / np.trace(gibbs)
    gibbs_c = es_eq.eigvecs @ gibbs @ es_eq.eigvecs.T
    gibbs_err = np.abs(steady_state(prop_eq).matrix - gibbs_c).max()
    assert gibbs_err < 1e-10

    worst = 0.0
    for tm in np.linspace(0.5, 2.0, 8):
        for dt in np.linspace(-0.8, 0.8, 8):
            t1, t2 = tm + dt / 2, tm - dt / 2
            if t1 <= 0 or t2 <= 0:
                continue
            p = ModelParams(eps1=2.0, eps2=1.1, K=1.0, gamma1=0.001, gamma2=0.001, T1=t1, T2=t2)
            e = eigensystem(p)
            pr = MarkovPropagator(rates=rates(e, p), es=e)
            worst = max(
                worst,
                abs(steady_state_concurrence(pr) - wootters_concurrence(steady_state(pr)).value),
            )
    assert worst < 1e-10
    return f"|L rho_inf| = {resid:.2e}, Gibbs error = {gibbs_err:.2e}, C_inf error = {worst:.2e}"


def check_mode_decomposition():
    rng = np.random.default_rng(11)
    worst_b = 0.0
    worst_ev = 0.0
    for i in range(6):
        params = FIG_MODEL if i == 0 else _random_params(rng)
        es = eigensystem(params)
        r = rates(es, params)
        jf = jordan_form(r)
        b = population_block(build_lindbladian(params, es))
        worst_b = max(worst_b, np.abs(jf.S @ np.diag(jf.J) @ jf.Sinv - b).max())
        ev = np.sort(np.real(np.linalg.eigvals(b)))
        worst_ev = max(worst_ev, np.abs(ev - np.sort(jf.J)).max())
    assert worst_b < 1e-9 and worst_ev < 1e-9
    return f"S J S^-1 error = {worst_b:.2e}, eigenvalue error = {worst_ev:.2e}"


def check_mode_function():
    kernel = MemoryKernel(0.37)
    for lam in (0.0, -0.002, -1.0 + 0j, -0.01 - 2.2j):
        assert abs(xi(lam, kernel, 0.0) - 1.0) < 1e-15
    # degenerate point agrees with the analytic limit from both sides
    g0, t = 0.5, 3.0
    k = MemoryKernel(g0)
    limit = (1 + g0 * t) * np.exp(-g0 * t)
    for side in (1 + 1e-9, 1 - 1e-9):
        assert abs(xi(-g0 * side, k, t) - limit) < 1e-7
    # memoryless limit: sup_t |xi - e^{lam t}| shrinks monotonically
    lam = -0.05 - 1.5j
    ts = np.linspace(0.0, 40.0, 200)
    sups = []
    for g in (1e2, 1e4, 1e6):
        kk = MemoryKernel(g)
        sups.append(max(abs(xi(lam, kk, t) - np.exp(lam * t)) for t in ts))
    assert sups[0] > sups[1] > sups[2]
    return f"memoryless-limit sup errors: {sups[0]:.1e} > {sups[1]:.1e} > {sups[2]:.1e}"


def check_mode_integrator():
    es = eigensystem(FIG_MODEL)
    r = rates(es, FIG_MODEL)
    kernel = MemoryKernel(0.1)
    grid = np.linspace(0.0, 400.0, 21)
    lam = -r.x
    mu = integrate_postmarkov_mode(lam, kernel, 1.0, grid, step=0.02)
    err_pop = max(abs(mu[i] - xi(lam, kernel, t)) for i, t in enumerate(grid))
    lam34 = coherence_eigenvalue(es, r)
    grid34 = np.linspace(0.0, 30.0, 16)
    mu34 = integrate_postmarkov_mode(lam34, kernel, 1.0, grid34, step=1e-4)
    err_coh = max(abs(mu34[i] - xi(lam34, kernel, t)) for i, t in enumerate(grid34))
    assert err_pop < 1e-6 and err_coh < 1e-6
    return f"population mode error = {err_pop:.2e}, coherence mode error = {err_coh:.2e}"


def check_memoryless_recovery():
    es = eigensystem(FIG_MODEL)
    r = rates(es, FIG_MODEL)
    markov_prop = MarkovPropagator(rates=r, es=es)
    pm = PostMarkovPropagator.build(es, r, 1e6)
    rho0 = to_eigen(initial_density(EXCITED_FIRST), es)
    worst = 0.0
    for t in np.linspace(0.0, 3000.0, 61):
        a = markov_propagate(markov_prop, rho0, float(t)).matrix
        b = pm.propagate(rho0, float(t)).matrix
        worst = max(worst, np.abs(a - b).max())
    assert worst < 1e-4
    return f"gamma0=1e6 vs memoryless max difference = {worst:.2e}"


def check_entanglement_measure():
    bell = np.zeros((4, 4), dtype=complex)
    bell[1, 1] = bell[2, 2] = bell[1, 2] = bell[2, 1] = 0.5
    assert abs(wootters_concurrence(DensityMatrix(bell, COMPUTATIONAL)).value - 1.0) < 1e-12
    prod = np.zeros((4, 4), dtype=complex)
    prod[2, 2] = 1.0
    assert wootters_concurrence(DensityMatrix(prod, COMPUTATIONAL)).value == 0.0
    for p, expected in ((0.0, 0.0), (1 / 3, 0.0), (0.5, 0.25), (1.0, 1.0)):
        werner = p * bell + (1 - p) * np.eye(4) / 4
        got = wootters_concurrence(DensityMatrix(werner, COMPUTATIONAL)).value
        assert abs(got - expected) < 1e-12
    rng = np.random.default_rng(3)
    c_ref = wootters_concurrence(DensityMatrix(bell, COMPUTATIONAL)).value
    worst = 0.0
    for _ in range(20):
        q1, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        q2, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        u = np.kron(q1, q2)
        c = wootters_concurrence(DensityMatrix(u @ bell @ u.conj().T, COMPUTATIONAL)).value
        worst = max(worst, abs(c - c_ref))
    assert worst < 1e-10
    return f"Werner values exact, local-unitary drift = {worst:.2e}"


def check_state_preservation():
    rng = np.random.default_rng(5)
    es = eigensystem(FIG_MODEL)
    r = rates(es, FIG_MODEL)
    prop = MarkovPropagator(rates=r, es=es)
    t_scale = 1.0 / min(r.x, r.y)
    worst_semigroup = 0.0
    for _ in range(100):
        rho0 = to_eigen(initial_density(_random_initial(rng)), es)
        for frac in (0.3, 2.0):
            markov_propagate(prop, rho0, frac * t_scale).validate()
        t1, t2 = rng.uniform(0, t_scale, size=2)
        once = markov_propagate(prop, rho0, t1 + t2).matrix
        twice = markov_propagate(prop, markov_propagate(prop, rho0, t1), t2).matrix
        worst_semigroup = max(worst_semigroup, np.abs(once - twice).max())
    assert worst_semigroup < 1e-10
    return f"100 random states stay valid; semigroup error = {worst_semigroup:.2e}"


CHECKS = (
    ("spectrum identities", check_spectrum_identities),
    ("transition operators", check_transition_operators),
    ("detailed balance", check_detailed_balance),
    ("rate forms", check_rates_forms),
    ("population propagator", check_population_propagator),
    ("closed form vs integrator", check_markov_vs_integrator),
    ("steady state", check_steady_state),
    ("mode decomposition", check_mode_decomposition),
    ("mode function", check_mode_function),
    ("mode integrator", check_mode_integrator),
    ("memoryless recovery", check_memoryless_recovery),
    ("entanglement measure", check_entanglement_measure),
    ("state preservation", check_state_preservation),
)


def run_selftest(print_fn=print) -> int:
    """Run every check, print one pass/fail line each, return the failure count."""
    failures = 0
    for name, fn in CHECKS:
        try:
            detail = fn()
            print_fn(f"[PASS] {name}: {detail}")
        except AssertionError as exc:
            failures += 1
            print_fn(f"[FAIL] {name}: {exc or 'assertion failed'}")
        except Exception as exc:  # genuine crash counts as failure, with context
            failures += 1
            print_fn(f"[FAIL] {name}: {type(exc).__name__}: {exc}")
    return failures
