import numpy as np
import pytest

from groupmask import (
    approximation_and_details,
    decompose,
    make_basis,
    reconstruct,
    reconstruction_matrix,
)
from groupmask.datasets import ITALY_2001
from groupmask.wavelet import approximate_from_coefficients

from reference_values import (
    A2_DB1_4DP,
    A2_DB2_4DP,
    APPROX_DB1_4DP,
    APPROX_DB2_4DP,
    WRM_DB2_4DP,
    round4,
)


def italy_delta():
    q = np.array(ITALY_2001.population, dtype=float)
    return (np.array(ITALY_2001.young_males) - np.array(ITALY_2001.young_females)) / q


class TestMakeBasis:
    def test_db1_filter(self):
        basis = make_basis("db1")
        assert np.allclose(basis.lowpass, (1 / np.sqrt(2), 1 / np.sqrt(2)))
        assert np.allclose(basis.highpass, (1 / np.sqrt(2), -1 / np.sqrt(2)))

    def test_db2_filter(self):
        basis = make_basis("db2")
        s3 = np.sqrt(3)
        expected = np.array([1 + s3, 3 + s3, 3 - s3, 1 - s3]) / (4 * np.sqrt(2))
        assert np.allclose(basis.lowpass, expected)

    def test_custom_filter_accepted(self):
        taps = make_basis("db2").lowpass
        basis = make_basis(list(taps))
        assert basis.name == "custom4"
        assert np.allclose(basis.lowpass, taps)

    def test_unit_norm_but_wrong_sum_rejected(self):
        with pytest.raises(ValueError, match="sum to sqrt"):
            make_basis([1.0, 0.0])

    def test_odd_length_rejected(self):
        v = np.ones(3) / np.sqrt(3)
        with pytest.raises(ValueError, match="even length"):
            make_basis(v)

    def test_non_orthogonal_rejected(self):
        # unit norm and sum sqrt(2), but correlated with its own double shift
        v = np.array([1 / np.sqrt(2), 0.0, 1 / np.sqrt(2), 0.0])
        with pytest.raises(ValueError, match="orthogonal"):
            make_basis(v)

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown wavelet basis"):
            make_basis("db3")

    @pytest.mark.parametrize("name", ["db1", "db2"])
    def test_admissibility_invariants(self, name):
        basis = make_basis(name)
        low, high = basis.low(), basis.high()
        assert abs(np.dot(low, low) - 1.0) < 1e-12
        assert abs(low.sum() - np.sqrt(2)) < 1e-12
        assert abs(np.dot(low, high)) < 1e-12


class TestDecompose:
    def test_db1_level2_coefficients(self):
        dec = decompose(italy_delta(), make_basis("db1"), 2)
        assert np.array_equal(round4(dec.approx), A2_DB1_4DP)

    def test_db2_level2_coefficients(self):
        dec = decompose(italy_delta(), make_basis("db2"), 2)
        assert np.array_equal(round4(dec.approx), A2_DB2_4DP)

    def test_constant_signal_haar(self):
        c = 0.7
        dec = decompose(np.full(8, c), make_basis("db1"), 1)
        assert np.allclose(dec.approx, c * np.sqrt(2))
        assert np.allclose(dec.details[0], 0.0)

    def test_coefficient_lengths(self):
        dec = decompose(np.arange(16.0), make_basis("db2"), 2)
        assert len(dec.approx) == 4
        assert [len(d) for d in dec.details] == [8, 4]

    def test_indivisible_length_rejected(self):
        with pytest.raises(ValueError, match="not divisible"):
            decompose(np.arange(10.0), make_basis("db1"), 2)

    def test_level_zero_rejected(self):
        with pytest.raises(ValueError, match="level"):
            decompose(np.arange(8.0), make_basis("db1"), 0)


class TestReconstructionMatrix:
    def test_db1_block_structure(self):
        matrix = reconstruction_matrix(make_basis("db1"), 20, 2)
        expected = np.zeros((20, 5))
        for j in range(5):
            expected[4 * j : 4 * j + 4, j] = 0.5
        assert np.allclose(matrix.entries, expected, atol=1e-12)

    def test_db2_matrix_matches_golden(self):
        matrix = reconstruction_matrix(make_basis("db2"), 20, 2)
        assert np.max(np.abs(matrix.entries - WRM_DB2_4DP)) < 5e-5

    def test_db2_wraparound_corners(self):
        entries = reconstruction_matrix(make_basis("db2"), 20, 2).entries
        assert abs(entries[0, 4] - -0.1373) < 5e-5
        assert abs(entries[17, 0] - 0.2333) < 5e-5
        assert abs(entries[19, 0] - 0.5123) < 5e-5

    def test_minimal_haar_column(self):
        matrix = reconstruction_matrix(make_basis("db1"), 2, 1)
        assert np.allclose(matrix.entries, np.array([[1], [1]]) / np.sqrt(2))

    def test_indivisible_length_rejected(self):
        with pytest.raises(ValueError, match="not divisible"):
            reconstruction_matrix(make_basis("db1"), 18, 2)

    @pytest.mark.parametrize("name", ["db1", "db2"])
    def test_matrix_equals_filter_path(self, name):
        rng = np.random.default_rng(7)
        basis = make_basis(name)
        matrix = reconstruction_matrix(basis, 24, 2)
        for _ in range(20):
            coeffs = rng.normal(size=6)
            via_filters = approximate_from_coefficients(coeffs, basis, 24)
            assert np.max(np.abs(matrix @ coeffs - via_filters)) < 1e-9


class TestApproximationAndDetails:
    def test_db1_approximation_golden(self):
        approx, _ = approximation_and_details(italy_delta(), make_basis("db1"), 2)
        assert np.array_equal(round4(approx), APPROX_DB1_4DP)

    def test_db2_approximation_golden(self):
        approx, _ = approximation_and_details(italy_delta(), make_basis("db2"), 2)
        assert np.array_equal(round4(approx), APPROX_DB2_4DP)

    def test_parts_sum_to_signal(self):
        s = np.random.default_rng(3).normal(size=32)
        approx, details = approximation_and_details(s, make_basis("db2"), 2)
        assert np.allclose(approx + details, s, atol=1e-12)


class TestReconstruct:
    def test_round_trip_on_demo_delta(self):
        delta = italy_delta()
        for name in ("db1", "db2"):
            dec = decompose(delta, make_basis(name), 2)
            assert np.max(np.abs(reconstruct(dec) - delta)) < 1e-9

    def test_zero_coefficients_give_zero_signal(self):
        dec = decompose(np.zeros(16), make_basis("db2"), 2)
        assert np.allclose(reconstruct(dec), 0.0)

    def test_round_trip_random(self):
        rng = np.random.default_rng(42)
        for name in ("db1", "db2"):
            basis = make_basis(name)
            for level in (1, 2):
                for _ in range(25):
                    m = 4 * int(rng.integers(2, 16))
                    s = rng.normal(size=m)
                    err = np.max(np.abs(reconstruct(decompose(s, basis, level)) - s))
                    assert err < 1e-9

    def test_inconsistent_lengths_rejected(self):
        dec = decompose(np.arange(16.0), make_basis("db1"), 2)
        bad = type(dec)(basis=dec.basis, length=32, approx=dec.approx, details=dec.details)
        with pytest.raises(ValueError, match="inconsistent"):
            reconstruct(bad)


class TestInvariants:
    @pytest.mark.parametrize("name,level", [("db1", 1), ("db1", 2), ("db2", 1), ("db2", 2)])
    def test_linearity(self, name, level):
        rng = np.random.default_rng(11)
        basis = make_basis(name)
        s, t = rng.normal(size=24), rng.normal(size=24)
        a, b = 1.7, -0.4
        left = decompose(a * s + b * t, basis, level)
        right_s, right_t = decompose(s, basis, level), decompose(t, basis, level)
        assert np.max(np.abs(left.approx - (a * right_s.approx + b * right_t.approx))) < 1e-9
        for dl, ds, dt in zip(left.details, right_s.details, right_t.details):
            assert np.max(np.abs(dl - (a * ds + b * dt))) < 1e-9

    @pytest.mark.parametrize("name,level", [("db1", 1), ("db1", 2), ("db2", 1), ("db2", 2)])
    def test_energy_conservation(self, name, level):
        rng = np.random.default_rng(13)
        basis = make_basis(name)
        for _ in range(20):
            s = rng.normal(size=16)
            dec = decompose(s, basis, level)
            energy = np.sum(dec.approx**2) + sum(np.sum(d**2) for d in dec.details)
            assert abs(np.sum(s**2) - energy) < 1e-9

    @pytest.mark.parametrize("name", ["db1", "db2"])
    def test_replacing_coefficients_preserves_details(self, name):
        rng = np.random.default_rng(17)
        basis = make_basis(name)
        s = rng.normal(size=32)
        dec = decompose(s, basis, 2)
        matrix = reconstruction_matrix(basis, 32, 2)
        replacement = rng.normal(size=8)
        masked = matrix @ replacement + (s - matrix @ dec.approx)
        dec_masked = decompose(masked, basis, 2)
        assert np.max(np.abs(dec_masked.approx - replacement)) < 1e-9
        for d_new, d_old in zip(dec_masked.details, dec.details):
            assert np.max(np.abs(d_new - d_old)) < 1e-9
