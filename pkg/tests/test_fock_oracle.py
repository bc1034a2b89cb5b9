import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pacsqc.special import laguerre, pacs_overlap
from pacsqc.states import (
    LimitRegimeError,
    ModelParams,
    bell_state,
    ghz_rho12,
    ghz_rho23,
    ghz_split_1_23,
)
from pacsqc import correlations
from pacsqc.fock_oracle import (
    FIELD_BOUNDS,
    DensityMatrix,
    FockVector,
    MeasurementPoint,
    TruncationError,
    add_photons,
    build_bell_pair,
    build_tripartite,
    coherent_vector,
    default_nmax,
    discord_numeric,
    inner,
    jacobi_eigh,
    partial_trace,
    tripartite_state,
    verification_grid,
    verify,
    von_neumann_entropy,
    wootters_concurrence,
)

DISCORD_FIELDS = ("D12", "D23", "Delta123")


class TestFockVectors:
    def test_vacuum(self):
        v = coherent_vector(0.0, 6)
        assert v.amplitudes[0] == 1.0
        assert np.all(v.amplitudes[1:] == 0.0)

    def test_coherent_amplitudes(self):
        v = coherent_vector(1.0, 40)
        for n in range(6):
            expected = math.exp(-0.5) / math.sqrt(math.factorial(n))
            assert v.amplitudes[n].real == pytest.approx(expected, abs=1e-15)
        assert v.norm_sq() == pytest.approx(1.0, abs=1e-12)

    def test_opposite_phase_overlap(self):
        nmax = default_nmax(1.0, 0)
        plus = coherent_vector(1.0, nmax)
        minus = coherent_vector(-1.0, nmax)
        assert inner(minus, plus).real == pytest.approx(math.exp(-2.0), abs=1e-12)

    def test_truncation_guard(self):
        with pytest.raises(TruncationError):
            coherent_vector(3.0, 5)

    def test_add_photons_on_vacuum(self):
        v = add_photons(coherent_vector(0.0, 8), 3)
        expected = np.zeros(9)
        expected[3] = 1.0
        assert_allclose(v.amplitudes.real, expected, atol=1e-15)

    def test_add_photons_norm(self):
        nmax = default_nmax(1.0, 2)
        raw1 = add_photons(coherent_vector(1.0, nmax), 1, normalize=False)
        assert raw1.norm_sq() == pytest.approx(1.0 * laguerre(1, -1.0), abs=1e-10)
        raw2 = add_photons(coherent_vector(1.0, nmax), 2, normalize=False)
        assert raw2.norm_sq() == pytest.approx(2.0 * laguerre(2, -1.0), abs=1e-10)

    def test_added_pair_overlap_matches_closed_form(self):
        nmax = default_nmax(1.0, 2)
        plus = add_photons(coherent_vector(1.0, nmax), 2)
        minus = add_photons(coherent_vector(-1.0, nmax), 2)
        assert inner(minus, plus).real == pytest.approx(pacs_overlap(2, 1.0), abs=1e-10)

    def test_headroom_guard(self):
        top_heavy = FockVector(np.array([0.0, 0.0, 1.0], dtype=complex))
        with pytest.raises(TruncationError):
            add_photons(top_heavy, 1)


class TestJacobiEigensolver:
    @pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
    def test_matches_lapack(self, n):
        rng = np.random.default_rng(7 + n)
        raw = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = raw + raw.conj().T
        assert_allclose(jacobi_eigh(h), np.linalg.eigvalsh(h), atol=1e-12)

    def test_eigenvectors_reconstruct(self):
        rng = np.random.default_rng(3)
        raw = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        h = raw + raw.conj().T
        lam, vec = jacobi_eigh(h, vectors=True)
        assert_allclose((vec * lam) @ vec.conj().T, h, atol=1e-12)

    def test_diagonal_input(self):
        assert_allclose(jacobi_eigh(np.diag([3.0, 1.0, 2.0]).astype(complex)), [1.0, 2.0, 3.0])


class TestDensityMatrix:
    def test_validation(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(4, dtype=complex), (2, 2))  # trace 4
        skew = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
        skew[0, 1] = 0.3
        with pytest.raises(ValueError):
            DensityMatrix(skew, (2, 2))  # not Hermitian
        negative = np.diag([1.2, -0.2]).astype(complex)
        with pytest.raises(ValueError):
            DensityMatrix(negative, (2,))

    def test_purity(self):
        rho = DensityMatrix(np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex), (2, 2))
        assert rho.purity() == pytest.approx(0.5, abs=1e-12)


class TestPartialTrace:
    def test_full_trace_is_unit(self):
        rho = build_tripartite(ModelParams(0.8, 1, 0))
        unit = partial_trace(rho, ())
        assert unit.data.shape == (1, 1)
        assert unit.data[0, 0] == pytest.approx(1.0, abs=1e-12)

    def test_matches_states_rho12(self):
        params = ModelParams(1.0, 1, 0)
        reduced = partial_trace(build_tripartite(params), (0, 1))
        assert_allclose(reduced.data, ghz_rho12(params).to_matrix(), atol=1e-8)

    def test_matches_states_rho23(self):
        params = ModelParams(0.5, 2, 1)
        reduced = partial_trace(build_tripartite(params), (1, 2))
        assert_allclose(reduced.data, ghz_rho23(params).to_matrix(), atol=1e-8)

    def test_rho13_equals_rho12(self):
        params = ModelParams(0.7, 2, 0)
        rho = build_tripartite(params)
        assert_allclose(
            partial_trace(rho, (0, 2)).data, partial_trace(rho, (0, 1)).data, atol=1e-12
        )

    def test_invalid_labels(self):
        rho = build_tripartite(ModelParams(0.8, 0, 0))
        with pytest.raises(ValueError):
            partial_trace(rho, (3,))


class TestEntropyAndConcurrence:
    def test_pure_state_entropy(self):
        rho = build_tripartite(ModelParams(1.0, 0, 0))
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-10)

    def test_balanced_mixture(self):
        rho = np.diag([0.5, 0.5]).astype(complex)
        assert von_neumann_entropy(rho) == pytest.approx(1.0, abs=1e-12)

    def test_single_mode_entropy_matches_closed_form(self):
        params = ModelParams(0.7, 2, 0)
        rho1 = partial_trace(build_tripartite(params), (0,))
        s1 = correlations.entropies(params)[0]
        assert von_neumann_entropy(rho1) == pytest.approx(s1, abs=1e-10)

    def test_wootters_on_pure_states(self):
        vec = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / math.sqrt(2.0)
        assert wootters_concurrence(np.outer(vec, vec.conj())) == pytest.approx(1.0, abs=1e-12)
        product = np.zeros((4, 4), dtype=complex)
        product[0, 0] = 1.0
        assert wootters_concurrence(product) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("params", [ModelParams(1.0, 1, 0), ModelParams(0.7, 2, 0), ModelParams(0.4, 3, 1)])
    def test_wootters_matches_closed_forms(self, params):
        rho123 = build_tripartite(params)
        c23, c13, _ = correlations.ghz_concurrences(params)
        assert wootters_concurrence(partial_trace(rho123, (1, 2))) == pytest.approx(c23, abs=1e-8)
        assert wootters_concurrence(partial_trace(rho123, (0, 1))) == pytest.approx(c13, abs=1e-8)

    @pytest.mark.parametrize("params", [ModelParams(0.3, 0, 1), ModelParams(1.2, 2, 0)])
    def test_wootters_on_pure_coefficients(self, params):
        # on pure two-qubit projectors the spin-flip spectrum reduces to
        # 2 |C00 C11 - C01 C10|
        for pure in (bell_state(params), ghz_split_1_23(params)):
            vec = pure.normalized().reshape(4)
            rho = np.outer(vec, vec.conj())
            assert wootters_concurrence(rho) == pytest.approx(pure.concurrence(), abs=1e-10)


class TestTripartiteBuilder:
    def test_projector_purity(self):
        rho = build_tripartite(ModelParams(1.0, 1, 0))
        assert rho.purity() == pytest.approx(1.0, abs=1e-10)

    def test_normalization_constant(self):
        params = ModelParams(1.0, 1, 0)
        state = tripartite_state(params)
        closed = 1.0 / math.sqrt(2.0 + 2.0 * params.kappa_m * math.exp(-6.0) * params.sign)
        assert state.norm_constant == pytest.approx(closed, abs=1e-10)

    def test_w_state_limit(self):
        state = tripartite_state(ModelParams(1e-4, 0, 1))
        overlap = (
            state.fock_amplitude(1, 0, 0)
            + state.fock_amplitude(0, 1, 0)
            + state.fock_amplitude(0, 0, 1)
        ) / math.sqrt(3.0)
        assert abs(overlap) ** 2 >= 1.0 - 1e-3

    def test_schmidt_weights_match_split(self):
        params = ModelParams(1.0, 0, 0)
        lam_closed = ghz_split_1_23(params).schmidt_coefficients()
        rho1 = partial_trace(build_tripartite(params), (0,))
        lam_oracle = np.sort(rho1.eigenvalues())[::-1]
        assert_allclose(lam_closed, lam_oracle, atol=1e-8)

    def test_spectrum_matches_states_rho12(self):
        params = ModelParams(1.0, 1, 0)
        oracle = partial_trace(build_tripartite(params), (0, 1)).eigenvalues()
        assert_allclose(ghz_rho12(params).eigenvalues(), oracle, atol=1e-8)

    def test_spectrum_matches_states_rho23(self):
        params = ModelParams(0.5, 2, 1)
        oracle = partial_trace(build_tripartite(params), (1, 2)).eigenvalues()
        assert_allclose(ghz_rho23(params).eigenvalues(), oracle, atol=1e-8)

    def test_degenerate_point_refused(self):
        with pytest.raises(LimitRegimeError):
            build_tripartite(ModelParams(0.0, 0, 1))

    def test_strong_field_gram_path(self):
        # overlaps underflow to zero at alpha2 = 20; the orthonormalization
        # must survive and give back the GHZ mixture spectrum
        rho12 = partial_trace(build_tripartite(ModelParams(20.0, 0, 0)), (0, 1))
        assert_allclose(rho12.eigenvalues(), [0.0, 0.0, 0.5, 0.5], atol=1e-10)

    def test_bell_pair_matches_closed_concurrence(self):
        for params in (ModelParams(0.6, 1, 0), ModelParams(0.25, 2, 1)):
            oracle = wootters_concurrence(build_bell_pair(params))
            assert oracle == pytest.approx(correlations.bell_concurrence(params), abs=1e-8)


class TestMeasurementPoint:
    def test_ranges(self):
        with pytest.raises(ValueError):
            MeasurementPoint(-0.1, 0.0)
        with pytest.raises(ValueError):
            MeasurementPoint(0.5, 7.0)
        spin = MeasurementPoint(math.pi / 2.0, 0.0).spinor()
        assert_allclose(np.abs(spin), [math.sqrt(0.5), math.sqrt(0.5)], atol=1e-12)


class TestDiscordNumeric:
    def test_product_state(self):
        rho = np.kron(np.diag([0.3, 0.7]), np.array([[0.6, 0.2], [0.2, 0.4]])).astype(complex)
        value = discord_numeric(DensityMatrix(rho, (2, 2)), measured=0)
        assert abs(value) <= 1e-9

    def test_maximally_entangled(self):
        vec = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / math.sqrt(2.0)
        rho = DensityMatrix(np.outer(vec, vec.conj()), (2, 2))
        assert discord_numeric(rho, measured=0) == pytest.approx(1.0, abs=1e-6)

    def test_measured_side(self):
        # rho12 is not symmetric under swapping the measured side
        params = ModelParams(0.4, 2, 0)
        rho12 = partial_trace(build_tripartite(params), (0, 1))
        d_mode1 = discord_numeric(rho12, measured=0)
        assert d_mode1 == pytest.approx(correlations.discord_12(params), abs=1e-3)
        with pytest.raises(ValueError):
            discord_numeric(rho12, measured=2)

    @pytest.mark.parametrize("params", [ModelParams(0.4, 2, 0), ModelParams(1.0, 1, 1)])
    def test_measuring_second_mode(self, params):
        # measuring mode 2 of rho12 leaves S2 - S12 + E13, and S2 = S12 by
        # purity of the three-mode state, so the discord collapses to E13
        rho12 = partial_trace(build_tripartite(params), (0, 1))
        e13 = correlations.eof_from_concurrence(correlations.ghz_concurrences(params)[1])
        assert discord_numeric(rho12, measured=1) == pytest.approx(e13, abs=1e-3)

    @pytest.mark.parametrize(
        "params",
        [ModelParams(0.3, 0, 0), ModelParams(1.0, 1, 0), ModelParams(0.6, 3, 1), ModelParams(2.5, 2, 1)],
    )
    def test_matches_koashi_winter_route(self, params):
        rho123 = build_tripartite(params)
        d12 = discord_numeric(partial_trace(rho123, (0, 1)), measured=0)
        d23 = discord_numeric(partial_trace(rho123, (1, 2)), measured=0)
        assert d12 == pytest.approx(correlations.discord_12(params), abs=1e-3)
        assert d23 == pytest.approx(correlations.discord_23(params), abs=1e-3)


class TestVerify:
    @pytest.mark.parametrize(
        "params",
        [ModelParams(1.0, 0, 0), ModelParams(0.3, 3, 1), ModelParams(20.0, 0, 0)],
    )
    def test_spec_points(self, params):
        record = verify(params)
        assert record.passes()
        for name, deviation in record.deviations.items():
            bound = 1e-3 if name in DISCORD_FIELDS else 1e-8
            assert abs(deviation) <= bound, (name, deviation)

    def test_below_grid_strengths(self):
        # agreement also holds below the default grid's 0.1 edge, where the
        # weak-strength monogamy violations live
        for alpha2 in (0.05, 0.07):
            for k in (0, 1):
                assert verify(ModelParams(alpha2, 1, k)).passes()

    def test_truncation_doubling_stability(self):
        params = ModelParams(0.9, 2, 1)
        base_nmax = default_nmax(params.alpha2, params.m)
        first = verify(params, nmax=base_nmax)
        second = verify(params, nmax=2 * base_nmax)
        for name in first.deviations:
            assert abs(first.deviations[name] - second.deviations[name]) <= 1e-10

    def test_record_bounds_and_worst(self):
        record = verify(ModelParams(0.5, 1, 0))
        assert record.bounds == FIELD_BOUNDS
        assert not record.passes(bound_override=1e-18)
        name, dev = record.worst()
        assert name in record.deviations
        assert record.deviations[name] == dev
        assert record.max_abs_deviation == max(abs(v) for v in record.deviations.values())

    def test_default_grid_shape(self):
        grid = verification_grid()
        assert len(grid) == 400
        assert grid[0] == ModelParams(0.1, 0, 0)
        assert grid[-1] == ModelParams(4.0, 4, 1)
