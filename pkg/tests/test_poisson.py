"""Bracket pencil, Casimirs, involution, Poisson maps, ranks, cluster form."""

import cmath
import math

import numpy as np
import pytest

from crd.continuants import closure_residuals
from crd.polygon import cross_ratios
from crd.poisson import (
    BracketSpec,
    bracket,
    bracket1_matrix,
    bracket2_matrix,
    casimir_residual,
    cluster_bracket_matrix,
    cluster_form_vs_bracket,
    cluster_to_u,
    cluster_to_u_poisson_residual,
    coordinate,
    e_alpha_func,
    f_k_func,
    fd_gradient,
    hamiltonian_span,
    independence_rank,
    invariance_residual,
    involution_report,
    jacobi_residual,
    max_principal_angle,
    normalized_f,
    normalized_f_square,
    parity_ratio_func,
    rho_embedding,
    rho_head_inverse,
    rho_poisson_residual,
    structure_corank,
    subspace_containment_angle,
    u_bracket_matrix,
    u_monomial_func,
    x_bracket_matrix,
)


def rand_point(rng, n):
    return np.array(
        [complex(rng.uniform(0.3, 1.5), rng.uniform(-0.5, 0.5)) for _ in range(n)]
    )


class TestGradients:
    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_f_k_exact_vs_fd(self, k, rng):
        z = rand_point(rng, 7)
        f = f_k_func(7, k)
        assert np.abs(f.gradient(z) - fd_gradient(f, z)).max() < 1e-7

    def test_e_alpha(self, rng):
        z = rand_point(rng, 6)
        f = e_alpha_func(6, 0.4 + 0.1j)
        assert np.abs(f.gradient(z) - fd_gradient(f, z)).max() < 1e-6


class TestBracketTable:
    def test_sparse_zeroes(self, rng):
        z = rand_point(rng, 7)
        b1 = BracketSpec("C1")
        assert bracket(b1, coordinate(1), coordinate(4), z) == 0.0
        assert bracket(b1, coordinate(1), coordinate(3), z) == 0.0

    def test_pencil_values(self, rng):
        z = rand_point(rng, 7)
        alpha = 0.5 + 0.3j
        spec = BracketSpec("CPencil", 1.0 / alpha)
        val = bracket(spec, coordinate(1), coordinate(3), z)
        # eqn:PoissonAlpha form is -alpha times this pencil member
        assert abs(-alpha * val - z[0] * z[1] * z[2]) < 1e-12
        val2 = bracket(spec, coordinate(1), coordinate(2), z)
        assert abs(-alpha * val2 - z[0] * z[1] * (z[0] + z[1] - alpha)) < 1e-12

    def test_antisymmetry(self, rng):
        z = rand_point(rng, 6)
        f = f_k_func(6, 2)
        assert abs(bracket(BracketSpec("C2"), f, f, z)) < 1e-12

    def test_x_and_u_brackets(self, rng):
        x = rand_point(rng, 5)
        m = x_bracket_matrix(x)
        assert m[0, 1] == x[0] * (1 - x[0]) * x[1] * (1 - x[1])
        u = rand_point(rng, 5)
        mu = u_bracket_matrix(u)
        assert mu[4, 0] == u[4] * u[0]
        assert u_bracket_matrix(u, cyclic=False)[4, 0] == 0.0

    def test_cluster_values(self, rng):
        x = rand_point(rng, 4)
        m = cluster_bracket_matrix(x)
        assert m[0, 1] == -x[0] * x[1]
        assert m[0, 3] == -x[0] * x[3]
        assert m[1, 2] == 0.0
        assert m[0, 2] == 0.0


class TestJacobi:
    @pytest.mark.parametrize("chart,par", [
        ("C1", 0.0), ("C2", 0.0), ("CPencil", 0.7 - 0.2j), ("X", 0.0),
        ("U", 0.0), ("ClusterX", 0.0),
    ])
    def test_specs(self, chart, par, rng):
        n = 4 if chart == "ClusterX" else 6
        z = rand_point(rng, n)
        assert jacobi_residual(BracketSpec(chart, par), z) < 1e-7

    def test_pencil_compatibility(self, rng):
        for _ in range(5):
            s = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            t = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))

            class Mix:
                chart = "mix"

                def matrix(self, z):
                    return s * bracket1_matrix(z) + t * bracket2_matrix(z)

            assert jacobi_residual(Mix(), rand_point(rng, 6)) < 1e-7


class TestCasimirs:
    def test_e_alpha(self, rng):
        alpha = 0.6 + 0.4j
        spec = BracketSpec("CPencil", 1.0 / alpha)
        for n in (6, 7):
            z = rand_point(rng, n)
            assert casimir_residual(spec, e_alpha_func(n, alpha), z) < 1e-7

    def test_parity_ratio_even(self, rng):
        spec = BracketSpec("CPencil", 0.9)
        z = rand_point(rng, 6)
        assert casimir_residual(spec, parity_ratio_func(6), z) < 1e-7

    def test_u_monomials(self, rng):
        u = rand_point(rng, 6)
        spec = BracketSpec("U")
        assert casimir_residual(spec, u_monomial_func(6, range(1, 7)), u) < 1e-12
        assert casimir_residual(spec, u_monomial_func(6, range(1, 7, 2)), u) < 1e-12
        assert casimir_residual(spec, u_monomial_func(6, range(2, 7, 2)), u) < 1e-12


class TestInvolution:
    @pytest.mark.parametrize("n", [6, 7])
    def test_pairwise_and_ladder(self, n, rng):
        pts = [rand_point(rng, n) for _ in range(3)]
        rep = involution_report(n, pts)
        assert rep["pairwise"] < 1e-6
        assert rep["ladder"] < 1e-6

    def test_f_square_commutes_with_casimir(self, rng):
        n, alpha = 7, 0.5 + 0.3j
        spec = BracketSpec("CPencil", 1.0 / alpha)
        z = rand_point(rng, n)
        v = bracket(spec, normalized_f_square(n, 2), e_alpha_func(n, alpha), z)
        assert abs(v) < 1e-9


class TestCorank:
    @pytest.mark.parametrize("n,expect", [(5, 1), (7, 1), (9, 1), (6, 2), (8, 2)])
    def test_pencil_corank(self, n, expect, rng):
        spec = BracketSpec("CPencil", 0.7)
        for _ in range(3):
            assert structure_corank(spec, rand_point(rng, n)) == expect


class TestHamiltonianSpan:
    def test_independent_of_pencil_member(self, rng):
        n = 7
        z = rand_point(rng, n)
        funcs = [normalized_f_square(n, k) for k in range(1, n // 2 + 1)]
        base = hamiltonian_span(BracketSpec("C1"), z, funcs)
        for par in (0.45, -1.2, 2.3 + 0.5j):
            other = hamiltonian_span(BracketSpec("CPencil", par), z, funcs)
            assert max_principal_angle(base, other) < 1e-5

    def test_bracket2_contained(self, rng):
        # the t = infinity member spans one dimension fewer (ladder endpoint)
        n = 7
        z = rand_point(rng, n)
        funcs = [normalized_f_square(n, k) for k in range(1, n // 2 + 1)]
        base = hamiltonian_span(BracketSpec("C1"), z, funcs)
        two = hamiltonian_span(BracketSpec("C2"), z, funcs)
        assert two.shape[1] == base.shape[1] - 1
        assert subspace_containment_angle(two, base) < 1e-5


class TestInvariance:
    def test_pencil_member_invariant_under_map(self, make_closed, make_c):
        c5 = np.array(cross_ratios(make_closed(5)).values)
        assert invariance_residual(c5, -1.0 + 0j) < 1e-5
        c6 = np.array(make_c(6))
        assert invariance_residual(c6, 0.8 + 0.4j) < 1e-5

    def test_tau_preserves_x_bracket(self, rng):
        # x -> 1 - x flips both gradient factors, the structure is untouched
        x = rand_point(rng, 6)
        m1 = x_bracket_matrix(x)
        m2 = x_bracket_matrix(1.0 - x)
        jac = -np.eye(6, dtype=complex)
        assert np.abs(jac @ m1 @ jac.T - m2).max() < 1e-14


class TestRho:
    def test_example_point(self):
        c = rho_embedding([1.0, 1.0])
        expect = [0.5, 0.25, 0.5, 1.0 / 3.0, 1.0 / 3.0]
        assert max(abs(a - b) for a, b in zip(c.values, expect)) < 1e-14
        assert max(abs(r) for r in closure_residuals(c.values)) < 1e-14

    def test_lands_in_closed_locus(self, rng):
        u = [complex(rng.uniform(0.4, 1.3), rng.uniform(-0.3, 0.3)) for _ in range(5)]
        c = rho_embedding(u)
        assert max(abs(r) for r in closure_residuals(c.values)) < 1e-9

    def test_head_inverse(self, rng):
        u = [complex(rng.uniform(0.4, 1.3), rng.uniform(-0.3, 0.3)) for _ in range(4)]
        c = rho_embedding(u)
        back = rho_head_inverse(c.values[: len(u)])
        assert max(abs(a - b) for a, b in zip(back, u)) < 1e-12

    @pytest.mark.parametrize("n", [6, 7])
    def test_poisson_map(self, n, rng):
        u = [complex(rng.uniform(0.4, 1.3), rng.uniform(-0.3, 0.3))
             for _ in range(n - 3)]
        assert rho_poisson_residual(u) < 1e-6


class TestCluster:
    @pytest.mark.parametrize("n", [5, 7, 9])
    def test_form_inverse_matches_bracket(self, n, rng):
        x = rand_point(rng, n - 3)
        assert cluster_form_vs_bracket(x) < 1e-10

    @pytest.mark.parametrize("n", [5, 7, 9])
    def test_chain_map_poisson_up_to_sign(self, n, rng):
        # the frieze chart map pushes the cluster bracket to MINUS the u-chain
        # bracket (an internal orientation convention of the symplectic form);
        # the defect against the sign-corrected target vanishes
        x = rand_point(rng, n - 3)
        assert cluster_to_u_poisson_residual(x) == pytest.approx(2.0, abs=1e-6)
        m = len(x)
        jac = np.zeros((m, m), dtype=complex)
        h = 1e-7
        for j in range(m):
            dz = h * max(1.0, abs(x[j]))
            xp, xm = x.copy(), x.copy()
            xp[j] += dz
            xm[j] -= dz
            jac[:, j] = (np.array(cluster_to_u(xp)) - np.array(cluster_to_u(xm))) / (2 * dz)
        pushed = jac @ cluster_bracket_matrix(x) @ jac.T
        target = -u_bracket_matrix(np.array(cluster_to_u(x)), cyclic=False)
        assert np.abs(pushed - target).max() < 1e-6 * max(1.0, np.abs(target).max())


class TestIndependence:
    @pytest.mark.parametrize("n", range(5, 13))
    def test_random_rank(self, n, make_c):
        assert independence_rank(make_c(n)) == n // 2 + 1

    @pytest.mark.parametrize("n", range(5, 13))
    def test_epsilon_witness(self, n):
        eps = 1e-2
        c = np.array([eps ** i for i in range(1, n + 1)], dtype=complex)
        assert independence_rank(c) == n // 2 + 1

    @pytest.mark.parametrize("n", [6, 8, 9, 11])
    def test_closed_drop_by_one(self, n, make_closed):
        c = np.array(cross_ratios(make_closed(n)).values)
        assert independence_rank(c) == n // 2
