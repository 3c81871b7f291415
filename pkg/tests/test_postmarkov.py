import numpy as np
import pytest

from spinbath import (
    DomainError,
    EIGEN,
    DensityMatrix,
    InitialState,
    MarkovPropagator,
    MemoryKernel,
    PostMarkovPropagator,
    UnsupportedCoherence,
    build_lindbladian,
    coherence_eigenvalue,
    concurrence_trajectory,
    initial_density,
    jordan_form,
    markov_propagate,
    population_block,
    postmarkov_propagate,
    steady_state,
    to_eigen,
    wootters_concurrence,
    xi,
)

from conftest import EXCITED_FIRST, FIG1_MODEL, random_params
from spinbath import eigensystem, rates


class TestMemoryKernel:
    def test_rejects_nonpositive_rate(self):
        with pytest.raises(DomainError):
            MemoryKernel(0.0)
        with pytest.raises(DomainError):
            MemoryKernel(-0.1)


class TestJordanForm:
    def test_zero_mode_is_steady_direction(self, fig1_rates):
        jf = jordan_form(fig1_rates)
        r = fig1_rates
        col = jf.S[:, 0]
        steady = np.array(
            [r.x_plus * r.y_plus, r.x_minus * r.y_minus, r.x_minus * r.y_plus, r.x_plus * r.y_minus]
        )
        np.testing.assert_allclose(col / col.sum(), steady / steady.sum(), rtol=1e-12)

    def test_zero_mode_left_vector_is_trace(self, fig1_rates):
        jf = jordan_form(fig1_rates)
        row = jf.Sinv[0]
        np.testing.assert_allclose(row / row[0], np.ones(4), rtol=1e-12)

    def test_diagonalizes_population_generator(self, fig1_model, fig1_es, fig1_rates):
        jf = jordan_form(fig1_rates)
        b = population_block(build_lindbladian(fig1_model, fig1_es))
        np.testing.assert_allclose(jf.S @ np.diag(jf.J) @ jf.Sinv, b, atol=1e-9)

    def test_decay_constants(self, fig1_rates):
        jf = jordan_form(fig1_rates)
        np.testing.assert_allclose(
            jf.J, [0.0, -fig1_rates.x, -fig1_rates.y, -fig1_rates.x - fig1_rates.y], atol=0
        )

    def test_condition_number_reported(self, fig1_rates):
        jf = jordan_form(fig1_rates)
        assert np.isfinite(jf.cond) and jf.cond >= 1.0


class TestXi:
    def test_unity_at_t0(self):
        kernel = MemoryKernel(0.42)
        for lam in (0.0, -0.003, -5.0, -0.01 - 2.2j, 0.7j):
            assert xi(lam, kernel, 0.0) == 1.0

    def test_zero_mode_stays_unity(self):
        kernel = MemoryKernel(3.0)
        for t in (0.0, 1.0, 57.0, 1e4):
            assert xi(0.0, kernel, t) == pytest.approx(1.0, abs=1e-15)

    def test_degenerate_limit(self):
        # L'Hopital limit of the quotient at lam = -gamma0
        g0, t = 0.8, 2.5
        kernel = MemoryKernel(g0)
        limit = (1 + g0 * t) * np.exp(-g0 * t)
        assert xi(-g0, kernel, t) == pytest.approx(limit, abs=1e-15)

    def test_degenerate_limit_bracketing(self):
        g0, t = 0.5, 3.0
        kernel = MemoryKernel(g0)
        limit = (1 + g0 * t) * np.exp(-g0 * t)
        for side in (1 + 1e-9, 1 - 1e-9):
            assert abs(xi(-g0 * side, kernel, t) - limit) < 1e-7

    def test_memoryless_limit(self):
        lam = -0.04 - 1.9j
        ts = np.linspace(0, 50, 101)
        sups = []
        for g0 in (1e2, 1e4, 1e6):
            kernel = MemoryKernel(g0)
            sups.append(max(abs(xi(lam, kernel, t) - np.exp(lam * t)) for t in ts))
        assert sups[0] > sups[1] > sups[2]
        kernel = MemoryKernel(1e6 * abs(lam))
        rel = max(
            abs(xi(lam, kernel, t) - np.exp(lam * t)) / abs(np.exp(lam * t)) for t in ts[1:]
        )
        assert rel < 1e-4

    def test_rejects_negative_time(self):
        with pytest.raises(DomainError):
            xi(-1.0, MemoryKernel(1.0), -0.5)


class TestPostMarkovPropagate:
    def test_t0_returns_input(self, fig1_es, fig1_rates, rho0_excited_eigen):
        prop = PostMarkovPropagator.build(fig1_es, fig1_rates, 0.1)
        out = prop.propagate(rho0_excited_eigen, 0.0)
        np.testing.assert_allclose(out.matrix, rho0_excited_eigen.matrix, atol=1e-15)

    def test_trace_exact_and_hermitian(self, fig1_es, fig1_rates, rho0_excited_eigen):
        prop = PostMarkovPropagator.build(fig1_es, fig1_rates, 0.05)
        for t in (0.7, 31.0, 800.0):
            m = prop.propagate(rho0_excited_eigen, t).matrix
            assert abs(np.trace(m) - 1.0) < 1e-13
            assert np.abs(m - m.conj().T).max() == 0.0

    def test_memoryless_limit_matches_markov(self, fig1_es, fig1_rates, rho0_excited_eigen):
        markov = MarkovPropagator(rates=fig1_rates, es=fig1_es)
        pm = PostMarkovPropagator.build(fig1_es, fig1_rates, 1e6)
        worst = 0.0
        for t in np.linspace(0, 3000, 121):
            a = markov_propagate(markov, rho0_excited_eigen, float(t)).matrix
            b = pm.propagate(rho0_excited_eigen, float(t)).matrix
            worst = max(worst, np.abs(a - b).max())
        assert worst < 1e-4

    def test_long_time_limit_is_markov_steady_state(self, fig1_es, fig1_rates, rho0_excited_eigen):
        markov = MarkovPropagator(rates=fig1_rates, es=fig1_es)
        target = to_eigen(steady_state(markov), fig1_es).matrix
        for gamma0 in (10.0, 0.1, 0.01):
            prop = PostMarkovPropagator.build(fig1_es, fig1_rates, gamma0)
            out = prop.propagate(rho0_excited_eigen, 1e7).matrix
            np.testing.assert_allclose(out, target, atol=1e-10)

    def test_coherence_uses_full_complex_mode(self, fig1_es, fig1_rates, rho0_excited_eigen):
        kern = MemoryKernel(0.1)
        jf = jordan_form(fig1_rates)
        t = 12.0
        out = postmarkov_propagate(jf, kern, fig1_es, fig1_rates, rho0_excited_eigen, t)
        s34 = coherence_eigenvalue(fig1_es, fig1_rates)
        expected = xi(s34, kern, t) * rho0_excited_eigen.matrix[2, 3]
        assert out.matrix[2, 3] == pytest.approx(expected, abs=1e-15)

    def test_rejects_unsupported_coherence(self, fig1_es, fig1_rates):
        prop = PostMarkovPropagator.build(fig1_es, fig1_rates, 0.1)
        m = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
        m[0, 1] = m[1, 0] = 0.05
        with pytest.raises(UnsupportedCoherence):
            prop.propagate(DensityMatrix(m, EIGEN), 1.0)

    def test_positivity_monitored_along_trajectories(self, fig1_es, fig1_rates):
        rho0 = initial_density(EXCITED_FIRST)
        for gamma0 in (1.0, 0.1, 0.01):
            prop = PostMarkovPropagator.build(fig1_es, fig1_rates, gamma0)
            traj = concurrence_trajectory(prop, rho0, np.linspace(0, 2000, 201))
            assert traj.min_eigenvalue.min() >= -1e-9


class TestConcurrenceTrajectory:
    def test_single_point_grid(self, fig1_es, fig1_rates):
        prop = MarkovPropagator(rates=fig1_rates, es=fig1_es)
        rho0 = initial_density(EXCITED_FIRST)
        traj = concurrence_trajectory(prop, rho0, np.array([0.0]))
        assert traj.concurrence.shape == (1,)
        assert traj.concurrence[0] == pytest.approx(
            wootters_concurrence(rho0).value, abs=1e-14
        )
        assert traj.concurrence[0] < 1e-14  # product state, zero up to round-off

    def test_accepts_either_basis(self, fig1_es, fig1_rates):
        prop = MarkovPropagator(rates=fig1_rates, es=fig1_es)
        grid = np.linspace(0, 50, 11)
        a = concurrence_trajectory(prop, initial_density(EXCITED_FIRST), grid)
        b = concurrence_trajectory(
            prop, to_eigen(initial_density(EXCITED_FIRST), fig1_es), grid
        )
        np.testing.assert_allclose(a.concurrence, b.concurrence, atol=1e-14)

    def test_rejects_bad_grids(self, fig1_es, fig1_rates):
        prop = MarkovPropagator(rates=fig1_rates, es=fig1_es)
        rho0 = initial_density(EXCITED_FIRST)
        with pytest.raises(DomainError):
            concurrence_trajectory(prop, rho0, np.array([1.0, 0.5]))
        with pytest.raises(DomainError):
            concurrence_trajectory(prop, rho0, np.array([-1.0, 0.5]))
        with pytest.raises(DomainError):
            concurrence_trajectory(prop, rho0, np.array([]))

    def test_memory_suppresses_oscillations(self, fig1_es, fig1_rates):
        # oscillation amplitude of C(t) decreases with stronger memory
        rho0 = initial_density(EXCITED_FIRST)
        grid = np.arange(0.0, 25.0, 0.02)
        period = 2 * np.pi / (2 * fig1_es.kappa)
        win = int(round(period / 0.02))
        amps = []
        markov = MarkovPropagator(rates=fig1_rates, es=fig1_es)
        for prop in (
            markov,
            PostMarkovPropagator.build(fig1_es, fig1_rates, 1.0),
            PostMarkovPropagator.build(fig1_es, fig1_rates, 0.1),
            PostMarkovPropagator.build(fig1_es, fig1_rates, 0.01),
        ):
            c = concurrence_trajectory(prop, rho0, grid).concurrence
            trend = np.convolve(c, np.ones(win) / win, mode="same")
            resid = (c - trend)[win:-win]
            amps.append(resid.max() - resid.min())
        assert amps[0] > amps[1] > amps[2] > amps[3]
