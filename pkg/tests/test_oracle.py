import numpy as np
import pytest

from spinbath import (
    DomainError,
    EIGEN,
    DensityMatrix,
    MarkovPropagator,
    MemoryKernel,
    StepTooLarge,
    Superoperator,
    build_lindbladian,
    coherence_eigenvalue,
    eigensystem,
    initial_density,
    integrate_markov,
    integrate_postmarkov_mode,
    jordan_form,
    markov_propagate,
    population_block,
    population_closure_residual,
    rates,
    steady_state,
    to_computational,
    to_eigen,
    xi,
)
from spinbath.oracle import unvec, vec

from conftest import EXCITED_FIRST, FIG1_MODEL, random_initial, random_params


@pytest.fixture(scope="module")
def fig1_superop():
    return build_lindbladian(FIG1_MODEL)


@pytest.fixture(scope="module")
def fig1_setup():
    es = eigensystem(FIG1_MODEL)
    return es, rates(es, FIG1_MODEL)


class TestBuildLindbladian:
    def test_trace_preservation(self, fig1_superop):
        trace_row = vec(np.eye(4))
        assert np.abs(trace_row @ fig1_superop.matrix).max() < 1e-12

    def test_hermiticity_preservation(self, fig1_superop):
        rng = np.random.default_rng(21)
        for _ in range(10):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            herm = a + a.conj().T
            out = fig1_superop(herm)
            assert np.abs(out - out.conj().T).max() < 1e-12

    def test_annihilates_steady_state(self, fig1_superop, fig1_setup):
        es, r = fig1_setup
        prop = MarkovPropagator(rates=r, es=es)
        rho_inf = to_eigen(steady_state(prop), es)
        assert np.linalg.norm(fig1_superop.matrix @ vec(rho_inf.matrix)) < 1e-10

    def test_single_simple_zero_eigenvalue(self, fig1_superop, fig1_setup):
        es, r = fig1_setup
        w, v = np.linalg.eig(fig1_superop.matrix)
        order = np.argsort(np.abs(w))
        assert np.abs(w[order[0]]) < 1e-12
        assert np.abs(w[order[1]]) > 1e-6  # the zero is simple
        assert np.real(w).max() < 1e-12  # dissipativity
        # the null vector reshapes to the steady state
        rho = unvec(v[:, order[0]])
        rho = rho / np.trace(rho)
        rho = 0.5 * (rho + rho.conj().T)
        prop = MarkovPropagator(rates=r, es=es)
        target = to_eigen(steady_state(prop), es).matrix
        np.testing.assert_allclose(rho, target, atol=1e-9)

    def test_population_sector_matches_mode_decomposition(self, fig1_superop, fig1_setup):
        es, r = fig1_setup
        assert population_closure_residual(fig1_superop) < 1e-14
        b = population_block(fig1_superop)
        jf = jordan_form(r)
        np.testing.assert_allclose(jf.S @ np.diag(jf.J) @ jf.Sinv, b, atol=1e-9)
        ev = np.sort(np.real(np.linalg.eigvals(b)))
        np.testing.assert_allclose(ev, np.sort(jf.J), atol=1e-9)

    def test_coherence_sector_eigenvalue(self, fig1_superop, fig1_setup):
        es, r = fig1_setup
        i34 = 2 + 4 * 3  # column-major index of element (3,4), 1-based labels
        row = fig1_superop.matrix[i34].copy()
        diag = row[i34]
        row[i34] = 0
        assert np.abs(row).max() < 1e-14  # the mode is closed
        assert diag == pytest.approx(coherence_eigenvalue(es, r), abs=1e-10)

    def test_population_eigenvalues_random_params(self):
        rng = np.random.default_rng(22)
        for _ in range(10):
            params = random_params(rng)
            es = eigensystem(params)
            r = rates(es, params)
            b = population_block(build_lindbladian(params, es))
            ev = np.sort(np.real(np.linalg.eigvals(b)))
            np.testing.assert_allclose(
                ev, np.sort([0.0, -r.x, -r.y, -r.x - r.y]), atol=1e-9
            )


class TestIntegrateMarkov:
    def test_zero_generator_constant_trajectory(self, fig1_setup):
        es, _ = fig1_setup
        zero = Superoperator(matrix=np.zeros((16, 16), dtype=complex))
        rho0 = to_eigen(initial_density(EXCITED_FIRST), es)
        traj = integrate_markov(zero, rho0, np.linspace(0, 10, 5), step=0.05, es=es)
        for k in range(5):
            np.testing.assert_allclose(
                traj.states[k], to_computational(rho0, es).matrix, atol=1e-15
            )

    def test_fourth_order_convergence(self, fig1_superop, fig1_setup):
        es, _ = fig1_setup
        rho0 = to_eigen(initial_density(EXCITED_FIRST), es)
        grid = np.array([20.0])
        exact = markov_propagate(
            MarkovPropagator(rates=fig1_setup[1], es=es), rho0, 20.0
        )
        exact_c = to_computational(exact, es).matrix
        errors = []
        for h in (0.02, 0.01):
            traj = integrate_markov(fig1_superop, rho0, grid, step=h, es=es)
            errors.append(np.abs(traj.states[0] - exact_c).max())
        ratio = errors[0] / errors[1]
        assert 8 <= ratio <= 32  # halving h cuts the error ~16x

    def test_matches_closed_form(self, fig1_superop, fig1_setup):
        es, r = fig1_setup
        prop = MarkovPropagator(rates=r, es=es)
        rho0 = to_eigen(initial_density(EXCITED_FIRST), es)
        grid = np.linspace(0.0, 300.0, 31)
        traj = integrate_markov(fig1_superop, rho0, grid, step=0.004, es=es)
        worst = 0.0
        for i, t in enumerate(grid):
            expect = to_computational(markov_propagate(prop, rho0, float(t)), es).matrix
            worst = max(worst, np.abs(traj.states[i] - expect).max())
        assert worst < 1e-6

    def test_trace_drift_bounded(self, fig1_superop, fig1_setup):
        es, _ = fig1_setup
        rho0 = to_eigen(initial_density(EXCITED_FIRST), es)
        traj = integrate_markov(fig1_superop, rho0, np.array([2000.0]), step=0.01, es=es)
        assert abs(np.trace(traj.states[0]) - 1.0) < 1e-9

    def test_step_guard(self, fig1_superop, fig1_setup):
        es, _ = fig1_setup
        rho0 = to_eigen(initial_density(EXCITED_FIRST), es)
        with pytest.raises(StepTooLarge):
            integrate_markov(fig1_superop, rho0, np.array([1.0]), step=1.0, es=es)

    def test_grid_validation(self, fig1_superop, fig1_setup):
        es, _ = fig1_setup
        rho0 = to_eigen(initial_density(EXCITED_FIRST), es)
        with pytest.raises(DomainError):
            integrate_markov(fig1_superop, rho0, np.array([3.0, 1.0]), step=0.01, es=es)


class TestIntegratePostmarkovMode:
    def test_zero_mode_constant(self):
        kernel = MemoryKernel(0.3)
        grid = np.linspace(0, 100, 11)
        mu = integrate_postmarkov_mode(0.0, kernel, 0.7 + 0.2j, grid, step=0.05)
        np.testing.assert_allclose(mu, (0.7 + 0.2j) * np.ones(11), atol=1e-12)

    def test_population_mode_matches_mode_function(self, fig1_setup):
        _, r = fig1_setup
        kernel = MemoryKernel(0.1)
        grid = np.linspace(0.0, 600.0, 25)
        mu = integrate_postmarkov_mode(-r.x, kernel, 1.0, grid, step=0.02)
        worst = max(abs(mu[i] - xi(-r.x, kernel, t)) for i, t in enumerate(grid))
        assert worst < 1e-6

    def test_coherence_mode_matches_mode_function(self, fig1_setup):
        es, r = fig1_setup
        lam = coherence_eigenvalue(es, r)
        kernel = MemoryKernel(0.1)
        grid = np.linspace(0.0, 40.0, 17)
        mu0 = -es.cos_half * es.sin_half
        mu = integrate_postmarkov_mode(lam, kernel, mu0, grid, step=1e-4)
        worst = max(abs(mu[i] - xi(lam, kernel, t) * mu0) for i, t in enumerate(grid))
        assert worst < 1e-6

    def test_memoryless_limit(self, fig1_setup):
        _, r = fig1_setup
        lam = -r.y
        kernel = MemoryKernel(1e6)
        grid = np.linspace(0.0, 500.0, 11)
        mu = integrate_postmarkov_mode(lam, kernel, 1.0, grid, step=2e-8)
        worst = max(abs(mu[i] - np.exp(lam * t)) for i, t in enumerate(grid))
        assert worst < 1e-4

    def test_step_guard_and_lattice(self):
        kernel = MemoryKernel(2.0)
        with pytest.raises(StepTooLarge):
            integrate_postmarkov_mode(-1.0, kernel, 1.0, np.array([1.0]), step=0.2)
        with pytest.raises(DomainError):
            integrate_postmarkov_mode(-1.0, kernel, 1.0, np.array([0.0333]), step=0.01)


class TestOracleAgainstRandomStates:
    def test_integrated_trajectories_stay_physical(self, fig1_superop, fig1_setup):
        es, _ = fig1_setup
        rng = np.random.default_rng(23)
        rho0 = to_eigen(initial_density(random_initial(rng)), es)
        grid = np.linspace(0.0, 400.0, 9)
        traj = integrate_markov(fig1_superop, rho0, grid, step=0.01, es=es)
        for k in range(9):
            m = traj.states[k]
            assert abs(np.trace(m) - 1.0) < 1e-9
            assert np.abs(m - m.conj().T).max() < 1e-10
            assert np.linalg.eigvalsh(m).min() > -1e-9
