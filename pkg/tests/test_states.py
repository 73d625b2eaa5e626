import numpy as np
import pytest

from lu_invar.errors import (
    BadCutError,
    BadLengthError,
    DimensionMismatchError,
    NotHermitianError,
    NotPSDError,
    NotUnitTraceError,
    NotUnitaryError,
)
from lu_invar.invariants import gram_matrix
from lu_invar.linalg import char_poly, haar_unitary
from lu_invar.states import (
    apply_local_unitary,
    apply_local_unitary_density,
    eigen_decomposition,
    flatten_multipartite,
    mix_decomposition,
    pad_with_zeros,
    random_density,
    reconstruct,
    total_weight,
    validate_density,
)
from oracles import reconstruct_loops

SWAP2 = np.array([[0.0, 1.0], [1.0, 0.0]])


class TestValidateDensity:
    def test_rho1_valid(self):
        rho = validate_density(np.diag([0.5, 0.5, 0.0, 0.0]), (2, 2))
        assert rho.dims == (2, 2)
        assert rho.size == 4

    def test_stores_tolerance(self):
        rho = validate_density(np.diag([0.5, 0.5]), (2,), tol=1e-9)
        assert rho.tol == 1e-9

    def test_trace_two_rejected(self):
        with pytest.raises(NotUnitTraceError, match="NotUnitTrace"):
            validate_density(np.diag([1.0, 1.0]), (2,))

    def test_non_hermitian_rejected(self):
        mat = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
        mat[0, 1] = 1e-3
        with pytest.raises(NotHermitianError, match="NotHermitian"):
            validate_density(mat, (2, 2))

    def test_negative_eigenvalue_rejected(self):
        mat = np.diag([0.6, 0.5, -0.1, 0.0])
        with pytest.raises(NotPSDError, match="NotPSD"):
            validate_density(mat, (2, 2))

    def test_size_mismatch_rejected(self):
        with pytest.raises(DimensionMismatchError):
            validate_density(np.eye(3) / 3.0, (2, 2))

    def test_subsystem_dimension_one_rejected(self):
        with pytest.raises(DimensionMismatchError):
            validate_density(np.eye(2) / 2.0, (2, 1))


class TestEigenDecomposition:
    def test_rho1(self, rho1):
        d = eigen_decomposition(rho1)
        assert len(d) == 2
        assert d.n == 2 and d.m == 2
        assert np.abs(reconstruct(d) - rho1.mat).max() < 1e-10
        # degenerate spectrum: any orthonormal basis is fine, weights fixed
        assert all(abs(np.vdot(a, a).real - 0.5) < 1e-12 for a in d.mats)

    def test_sigma2_entries(self, sigma2):
        d = eigen_decomposition(sigma2)
        assert len(d) == 2
        expected0 = np.zeros((2, 2)); expected0[0, 0] = np.sqrt(2.0 / 3.0)
        expected1 = np.zeros((2, 2)); expected1[1, 1] = 1.0 / np.sqrt(3.0)
        # eigenvectors carry an arbitrary global phase
        assert np.abs(np.abs(d.mats[0]) - expected0).max() < 1e-12
        assert np.abs(np.abs(d.mats[1]) - expected1).max() < 1e-12

    def test_pure_state(self):
        rho = validate_density(np.diag([1.0, 0.0, 0.0, 0.0]), (2, 2))
        d = eigen_decomposition(rho)
        assert len(d) == 1
        assert np.abs(np.abs(d.mats[0]) - np.array([[1.0, 0.0], [0.0, 0.0]])).max() < 1e-12

    def test_reconstruction_roundtrip_random(self):
        for trial in range(12):
            dims = [(2, 2), (2, 3), (3, 3)][trial % 3]
            rank = trial % 4 + 1
            rho = random_density(dims, rank, seed=100 + trial)
            d = eigen_decomposition(rho)
            assert len(d) == rank
            assert np.abs(reconstruct(d) - rho.mat).max() < 1e-9
            assert abs(total_weight(d) - 1.0) < 1e-10

    def test_reconstruct_agrees_with_loop_oracle(self):
        rho = random_density((2, 3), 3, seed=5)
        d = eigen_decomposition(rho)
        assert np.abs(reconstruct(d) - reconstruct_loops(d.mats)).max() < 1e-12

    def test_gram_is_diagonal_of_eigenvalues(self):
        rho = random_density((2, 2), 3, seed=6)
        d = eigen_decomposition(rho)
        omega = gram_matrix(d).omega
        w = np.sort(np.linalg.eigvalsh(rho.mat))[::-1][:3]
        assert np.abs(omega - np.diag(w)).max() < 1e-10


class TestMixDecomposition:
    def test_identity_is_noop(self, rho1_decomp):
        mixed = mix_decomposition(rho1_decomp, np.eye(2))
        for a, b in zip(mixed.mats, rho1_decomp.mats):
            assert np.array_equal(a, b)

    def test_hadamard_mix_of_rho1(self, rho1_decomp, rho1):
        u = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
        mixed = mix_decomposition(rho1_decomp, u)
        for b in mixed.mats:
            assert np.abs(np.abs(b[0]) - 0.5).max() < 1e-12  # two entries of size 1/2 in row 0
            assert np.abs(b[1]).max() < 1e-12
        assert np.abs(reconstruct(mixed) - rho1.mat).max() < 1e-10

    def test_phase_mix_conjugates_gram(self):
        rho = random_density((2, 2), 2, seed=8)
        d = eigen_decomposition(rho)
        u = np.diag(np.exp(1j * np.array([0.3, -1.1])))
        omega = gram_matrix(d).omega
        mixed_omega = gram_matrix(mix_decomposition(d, u)).omega
        assert np.abs(mixed_omega - u @ omega @ u.conj().T).max() < 1e-10

    def test_reconstruction_preserved_many_mixings(self):
        rho = random_density((2, 3), 3, seed=9)
        d = eigen_decomposition(rho)
        for k in range(100):
            mixed = mix_decomposition(d, haar_unitary(3, seed=1000 + k))
            assert np.abs(reconstruct(mixed) - rho.mat).max() < 1e-9

    def test_wrong_size_rejected(self, rho1_decomp):
        with pytest.raises(DimensionMismatchError):
            mix_decomposition(rho1_decomp, np.eye(3))

    def test_non_unitary_rejected(self, rho1_decomp):
        with pytest.raises(NotUnitaryError):
            mix_decomposition(rho1_decomp, np.array([[1.0, 0.0], [1.0, 1.0]]))


class TestPadWithZeros:
    def test_identity_when_equal(self, rho1_decomp):
        padded = pad_with_zeros(rho1_decomp, 2)
        assert len(padded) == 2

    def test_char_poly_gains_lambda_factor(self, rho1_decomp):
        base = char_poly(gram_matrix(rho1_decomp).omega)
        padded = pad_with_zeros(rho1_decomp, 4)
        bigger = char_poly(gram_matrix(padded).omega)
        assert np.allclose(bigger.coeffs, base.shifted(2).coeffs, atol=1e-12)

    def test_padded_pure_state_gram(self):
        rho = validate_density(np.diag([1.0, 0.0, 0.0, 0.0]), (2, 2))
        d = pad_with_zeros(eigen_decomposition(rho), 3)
        assert np.abs(gram_matrix(d).omega - np.diag([1.0, 0.0, 0.0])).max() < 1e-12

    def test_shrinking_rejected(self, rho1_decomp):
        with pytest.raises(BadLengthError):
            pad_with_zeros(rho1_decomp, 1)

    def test_pad_then_mix_still_reconstructs(self, rho1_decomp, rho1):
        padded = pad_with_zeros(rho1_decomp, 4)
        mixed = mix_decomposition(padded, haar_unitary(4, seed=17))
        assert np.abs(reconstruct(mixed) - rho1.mat).max() < 1e-9


class TestApplyLocalUnitary:
    def test_identity_noop(self, rho1_decomp):
        out = apply_local_unitary(rho1_decomp, np.eye(2), np.eye(2))
        for a, b in zip(out.mats, rho1_decomp.mats):
            assert np.abs(a - b).max() < 1e-15

    def test_swap_on_rho1_moves_row_keeps_gram(self, rho1_decomp):
        out = apply_local_unitary(rho1_decomp, SWAP2, np.eye(2))
        assert abs(out.mats[0][1, 0] - 1.0 / np.sqrt(2.0)) < 1e-12
        assert abs(out.mats[1][1, 1] - 1.0 / np.sqrt(2.0)) < 1e-12
        assert np.abs(gram_matrix(out).omega - np.diag([0.5, 0.5])).max() < 1e-12

    def test_gram_entries_invariant_random(self):
        rho = random_density((2, 3), 3, seed=42)
        d = eigen_decomposition(rho)
        p = haar_unitary(2, seed=43)
        q = haar_unitary(3, seed=44)
        out = apply_local_unitary(d, p, q)
        stack_in, stack_out = d.stacked(), out.stacked()
        for i in range(3):
            for j in range(3):
                before = np.trace(stack_in[i] @ stack_in[j].conj().T)
                after = np.trace(stack_out[i] @ stack_out[j].conj().T)
                assert abs(before - after) < 1e-10

    def test_commutes_with_density_action(self):
        rho = random_density((2, 2), 2, seed=45)
        p = haar_unitary(2, seed=46)
        q = haar_unitary(2, seed=47)
        via_decomp = reconstruct(apply_local_unitary(eigen_decomposition(rho), p, q))
        via_density = apply_local_unitary_density(rho, [p, q]).mat
        assert np.abs(via_decomp - via_density).max() < 1e-9

    def test_wrong_shape_rejected(self, rho1_decomp):
        with pytest.raises(DimensionMismatchError):
            apply_local_unitary(rho1_decomp, np.eye(3), np.eye(2))

    def test_non_unitary_rejected(self, rho1_decomp):
        with pytest.raises(NotUnitaryError):
            apply_local_unitary(rho1_decomp, 2.0 * np.eye(2), np.eye(2))


class TestApplyLocalUnitaryDensity:
    def test_identity(self, rho1):
        out = apply_local_unitary_density(rho1, [np.eye(2), np.eye(2)])
        assert np.abs(out.mat - rho1.mat).max() < 1e-12

    def test_swap_on_first_qubit(self, rho1):
        out = apply_local_unitary_density(rho1, [SWAP2, np.eye(2)])
        assert np.abs(out.mat - np.diag([0.0, 0.0, 0.5, 0.5])).max() < 1e-12

    def test_spectrum_preserved(self):
        rho = random_density((2, 3), 4, seed=48)
        locals_ = [haar_unitary(2, seed=49), haar_unitary(3, seed=50)]
        out = apply_local_unitary_density(rho, locals_)
        w_in = np.linalg.eigvalsh(rho.mat)
        w_out = np.linalg.eigvalsh(out.mat)
        assert np.abs(w_in - w_out).max() < 1e-10

    def test_wrong_count_rejected(self, rho1):
        with pytest.raises(DimensionMismatchError):
            apply_local_unitary_density(rho1, [np.eye(4)])


class TestFlattenMultipartite:
    def test_bipartite_matches_plain_reshape(self):
        coeffs = np.arange(6, dtype=complex)
        out = flatten_multipartite(coeffs, (2, 3), 1)
        assert np.array_equal(out, coeffs.reshape(2, 3))

    def test_ghz_cut_one(self):
        ghz = np.zeros(8, dtype=complex)
        ghz[0] = ghz[7] = 1.0 / np.sqrt(2.0)
        out = flatten_multipartite(ghz, (2, 2, 2), 1)
        expected = np.zeros((2, 4), dtype=complex)
        expected[0, 0] = expected[1, 3] = 1.0 / np.sqrt(2.0)
        assert np.array_equal(out, expected)

    def test_product_state_rank_one_every_cut(self):
        rng = np.random.default_rng(51)
        parts = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for d in (2, 3, 2)]
        coeffs = np.einsum("i,j,k->ijk", *parts).reshape(-1)
        for cut in (1, 2):
            out = flatten_multipartite(coeffs, (2, 3, 2), cut)
            assert np.linalg.matrix_rank(out) == 1

    def test_bad_cut(self):
        with pytest.raises(BadCutError):
            flatten_multipartite(np.zeros(4), (2, 2), 2)

    def test_bad_length(self):
        with pytest.raises(BadLengthError):
            flatten_multipartite(np.zeros(5), (2, 2), 1)
