import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from casimir_entropy import gaussian as g


def thermal_entropy_by_fock_sum(nu: float, n_terms: int = 20000) -> float:
    """-sum p_k log p_k for the geometric distribution with mean (nu - 1)/2."""
    nbar = 0.5 * (nu - 1.0)
    if nbar == 0:
        return 0.0
    k = np.arange(n_terms)
    logp = k * math.log(nbar) - (k + 1) * math.log1p(nbar)
    p = np.exp(logp)
    return float(-np.sum(p * logp))


def squeezed(r: float, sign: int = 1) -> np.ndarray:
    return g.BogoliubovMap([[math.cosh(r)]], [[sign * 1j * math.sinh(r)]]).matrix


class TestSymplecticForm:
    def test_single_mode_block(self):
        np.testing.assert_array_equal(g.standard_form(1).matrix, -1j * np.array([[0, 1], [-1, 0]]))

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_determinant(self, n):
        assert np.linalg.det(g.standard_form(n).matrix) == pytest.approx((-1) ** n)

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_square(self, n):
        # with Omega = -i [[0, I], [-I, 0]] one gets Omega^2 = +I
        om = g.standard_form(n).matrix
        np.testing.assert_allclose(om @ om, np.eye(2 * n))
        np.testing.assert_allclose(g.standard_form(n).inverse, om)

    def test_invalid(self):
        with pytest.raises(ValueError):
            g.standard_form(0)


class TestBogoliubov:
    def test_identity_leaves_state(self, rng):
        G = g.apply_bogoliubov(g.random_symplectic(3, rng, 0.5), g.vacuum(3))
        out = g.apply_bogoliubov(g.BogoliubovMap.identity(3), G)
        np.testing.assert_allclose(out.matrix, G.matrix)

    @pytest.mark.parametrize("r", [0.0, 0.3, 1.0, 2.5])
    def test_squeezed_vacuum_off_diagonal(self, r):
        G = g.apply_bogoliubov(squeezed(r), g.vacuum(1)).matrix
        assert G[0, 1].real == pytest.approx(math.cosh(2 * r))
        assert abs(G[0, 0]) == pytest.approx(math.sinh(2 * r))

    def test_random_single_mode_pure(self, rng):
        for _ in range(10):
            G = g.apply_bogoliubov(g.random_symplectic(1, rng), g.vacuum(1)).matrix
            assert -np.linalg.det(G).real == pytest.approx(1.0, abs=1e-9)

    def test_rejects_bad_maps(self):
        with pytest.raises(ValueError):
            g.apply_bogoliubov(2 * np.eye(2), g.vacuum(1))
        with pytest.raises(ValueError):
            g.apply_bogoliubov(np.eye(4), g.vacuum(1))

    def test_matrix_round_trip(self, rng):
        M = g.random_symplectic(2, rng)
        b = g.BogoliubovMap.from_matrix(M)
        np.testing.assert_allclose(b.matrix, M)


class TestIsSymplectic:
    def test_cases(self):
        assert g.is_symplectic(np.eye(2))
        assert not g.is_symplectic(np.diag([2.0, 2.0]))
        for x in (0.0, 0.7, 3.0):
            assert g.is_symplectic(squeezed(x), tol=1e-10 * math.cosh(x) ** 2)

    def test_shapes(self):
        assert not g.is_symplectic(np.eye(3))
        assert not g.is_symplectic(np.ones(4))


class TestRestrict:
    def test_plain_selection(self, rng):
        G = g.apply_bogoliubov(g.random_symplectic(2, rng), g.vacuum(2)).matrix
        GA = g.restrict(G, g.Subsystem((1,))).matrix
        np.testing.assert_array_equal(GA, G[np.ix_([1, 3], [1, 3])])

    @pytest.mark.parametrize("n,k", [(1, 0), (3, 2), (5, 1)])
    def test_vacuum_block(self, n, k):
        np.testing.assert_array_equal(g.restrict(g.vacuum(n), g.Subsystem((k,))).matrix, [[0, 1], [1, 0]])

    def test_mixed_resonant_mode(self):
        x = 0.8
        M = np.eye(8, dtype=complex)
        M[np.ix_([0, 4], [0, 4])] = squeezed(x, sign=-1)
        G = g.apply_bogoliubov(M, g.vacuum(4))
        GA = g.restrict(G, g.Subsystem((0,), mixing=g.beam_splitter(4, 0, 1))).matrix
        c2, s2 = math.cosh(x) ** 2, math.sinh(2 * x)
        np.testing.assert_allclose(GA, [[0.5j * s2, c2], [c2, -0.5j * s2]], atol=1e-14)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            g.restrict(g.vacuum(2), g.Subsystem((2,)))

    def test_subsystem_validation(self):
        with pytest.raises(ValueError):
            g.Subsystem((0, 0))
        with pytest.raises(ValueError):
            g.Subsystem((0,), mixing=2 * np.eye(4))


class TestComplexStructure:
    def test_vacuum_eigenvalues(self):
        ev = np.linalg.eigvals(1j * g.complex_structure(g.vacuum(1)))
        np.testing.assert_allclose(sorted(ev.real), [-1, 1])

    def test_mixed_mode_magnitudes(self):
        x = 1.3
        c2, s2 = math.cosh(x) ** 2, math.sinh(2 * x)
        GA = np.array([[0.5j * s2, c2], [c2, -0.5j * s2]])
        nu = g.symplectic_eigenvalues(GA)
        assert nu[0] == pytest.approx(math.cosh(x), rel=1e-12)

    def test_sign_conventions(self):
        G = g.vacuum(2)
        np.testing.assert_allclose(g.complex_structure(G, restricted=False), -g.complex_structure(G))

    def test_unphysical(self):
        with pytest.raises(g.UnphysicalStateError):
            g.symplectic_eigenvalues(0.5 * g.vacuum(1).matrix)

    def test_clamps_near_one(self):
        assert g.symplectic_eigenvalues((1 - 1e-11) * g.vacuum(1).matrix)[0] == 1.0


class TestEntropies:
    def test_vacuum_zero(self):
        for n in (1, 3):
            assert g.renyi_entropy(g.vacuum(n)) == 0.0
            assert g.entanglement_entropy(g.vacuum(n)) == 0.0

    def test_mixed_mode_renyi(self):
        x = 1.11072
        c2, s2 = math.cosh(x) ** 2, math.sinh(2 * x)
        GA = np.array([[0.5j * s2, c2], [c2, -0.5j * s2]])
        assert g.renyi_entropy(GA) == pytest.approx(math.log(math.cosh(x)), abs=1e-13)
        assert g.renyi_entropy(GA) == pytest.approx(0.520538, abs=1e-6)

    @pytest.mark.parametrize("nu", [1.0, 1.01, 1.68281, 3.0, 50.0, 1e3])
    def test_single_mode_entropy_vs_fock_sum(self, nu):
        n_terms = 20000 if nu < 100 else 200000
        assert g.single_mode_entropy(nu) == pytest.approx(thermal_entropy_by_fock_sum(nu, n_terms), abs=1e-9)

    def test_quoted_single_mode_value(self):
        assert g.single_mode_entropy(1.68281) == pytest.approx(0.76091, abs=2e-5)
        assert g.entropy_from_renyi_single_mode(math.log(1.68281)) == pytest.approx(g.single_mode_entropy(1.68281), abs=1e-14)

    def test_from_renyi_limits(self):
        assert g.entropy_from_renyi_single_mode(0.0) == 0.0
        assert g.entropy_from_renyi_single_mode(10.0) == pytest.approx(11 - math.log(2), abs=1e-4)
        # asymptotic branch joins the exact formula smoothly
        for R in (5.9, 6.0, 6.1):
            assert g.entropy_from_renyi_single_mode(R) == pytest.approx(g.single_mode_entropy(math.exp(R)), abs=1e-12)
        with pytest.raises(ValueError):
            g.entropy_from_renyi_single_mode(-1.0)

    @given(st.floats(0.0, 4.0), st.sampled_from([1, -1]))
    def test_single_mode_formulas_agree(self, r, sign):
        GA = g.apply_bogoliubov(squeezed(r, sign), g.vacuum(1)).matrix
        # a single squeezed mode is pure
        assert g.renyi_entropy(GA) == pytest.approx(0.0, abs=1e-9)

    @given(st.integers(0, 2**31 - 1), st.floats(0.05, 1.2))
    def test_entropy_bounds_random_states(self, seed, scale):
        rng = np.random.default_rng(seed)
        G = g.apply_bogoliubov(g.random_symplectic(3, rng, scale), g.vacuum(3))
        assert g.purity_defect(G, relative=True) < 1e-9
        for modes in [(0,), (1, 2)]:
            GA = g.restrict(G, g.Subsystem(modes))
            R, S = g.renyi_entropy(GA), g.entanglement_entropy(GA)
            assert S >= R - 1e-10 >= -1e-10
            if len(modes) == 1:
                nu = g.symplectic_eigenvalues(GA)[0]
                assert abs(S - g.single_mode_entropy(nu)) < 1e-8 * max(1.0, S)

    @given(st.integers(0, 2**31 - 1))
    def test_complement_invariance(self, seed):
        rng = np.random.default_rng(seed)
        G = g.apply_bogoliubov(g.random_symplectic(3, rng, 0.6), g.vacuum(3))
        A = g.Subsystem((0,))
        U = np.eye(6, dtype=complex)
        idx = [1, 2, 4, 5]
        U[np.ix_(idx, idx)] = g.random_symplectic(2, rng, 0.8)
        G2 = g.apply_bogoliubov(U, G)
        assert abs(g.entanglement_entropy(g.restrict(G2, A)) - g.entanglement_entropy(g.restrict(G, A))) < 1e-9
        assert abs(g.renyi_entropy(g.restrict(G2, A)) - g.renyi_entropy(g.restrict(G, A))) < 1e-9

    @given(st.integers(0, 2**31 - 1))
    def test_factored_renyi_matches_covariance(self, seed):
        rng = np.random.default_rng(seed)
        M = g.random_symplectic(3, rng, 0.6)
        A = g.Subsystem((0, 2), mixing=g.beam_splitter(3, 0, 1))
        direct = g.renyi_entropy(g.restrict(g.apply_bogoliubov(M, g.vacuum(3)), A))
        assert g.renyi_entropy_from_map(M, A) == pytest.approx(direct, abs=1e-9)

    def test_precision_guard(self):
        M = np.eye(4, dtype=complex)
        M[np.ix_([0, 2], [0, 2])] = squeezed(40.0)
        with pytest.raises(g.PrecisionLossError):
            g.renyi_entropy_from_map(M, g.Subsystem((0,), mixing=g.beam_splitter(2, 0, 1)))

    @pytest.mark.parametrize("r", [0.5, 10.0, 40.0])
    def test_decoupled_mode_is_exactly_pure(self, r):
        M = np.eye(6, dtype=complex)
        M[np.ix_([1, 4], [1, 4])] = squeezed(r)
        assert g.renyi_entropy_from_map(M, g.Subsystem((1,))) == 0.0
        assert g.renyi_entropy_from_map(M, g.Subsystem((0, 1))) == 0.0

    def test_negative_phase_rejected(self):
        with pytest.raises(g.UnphysicalStateError):
            g.renyi_entropy(np.array([[0, 1j], [1j, 0]]))


class TestPurity:
    def test_vacuum(self):
        assert g.purity_defect(g.vacuum(4)) == 0.0

    def test_mixed_state_detected(self):
        G = g.apply_bogoliubov(g.beam_splitter(2, 0, 1), g.vacuum(2))
        assert g.purity_defect(g.restrict(G, g.Subsystem((0,)))) < 1e-12
        x = 1.0
        c2, s2 = math.cosh(x) ** 2, math.sinh(2 * x)
        assert g.purity_defect(np.array([[0.5j * s2, c2], [c2, -0.5j * s2]])) > 0.1


class TestRandomSymplectic:
    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_is_bogoliubov(self, n, rng):
        M = g.random_symplectic(n, rng)
        assert g.is_symplectic(M, tol=1e-9)
        # block structure [[a^T, b^H], [b^T, a^H]]
        np.testing.assert_allclose(M[n:, n:], np.conj(M[:n, :n]), atol=1e-12)

    def test_beam_splitter(self):
        B = g.beam_splitter(3, 0, 2)
        assert g.is_symplectic(B)
        np.testing.assert_allclose(B @ B, np.eye(6), atol=1e-15)
        with pytest.raises(ValueError):
            g.beam_splitter(2, 1, 1)
