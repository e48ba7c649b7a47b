import numpy as np
import pytest

from qcorrel import (
    DensityMatrix,
    InvariantViolation,
    KindMismatchError,
    LabelError,
    PureState,
    SubsystemLayout,
    UnsupportedDimensionError,
    eigh,
    partial_trace,
    partial_transpose,
    purify,
    random_pure_state,
    random_unitary,
    tensor,
)

from oracles import brute_partial_trace, random_density_entries

LAY1 = SubsystemLayout((2,), ("A",))
LAY2 = SubsystemLayout((2, 2), ("A", "B"))
LAY3 = SubsystemLayout((2, 2, 2), ("A", "B", "E"))


def ket(amps, layout):
    return PureState(np.asarray(amps, dtype=complex), layout)


def bell():
    return ket(np.array([1, 0, 0, 1]) / np.sqrt(2), LAY2)


def ghz():
    amps = np.zeros(8)
    amps[0] = amps[7] = 1 / np.sqrt(2)
    return ket(amps, LAY3)


class TestLayout:
    def test_mismatched_lengths(self):
        with pytest.raises(InvariantViolation):
            SubsystemLayout((2, 2), ("A",))

    def test_dimension_below_two(self):
        with pytest.raises(InvariantViolation):
            SubsystemLayout((2, 1), ("A", "B"))

    def test_duplicate_labels(self):
        with pytest.raises(InvariantViolation):
            SubsystemLayout((2, 2), ("A", "A"))

    def test_total_dimension_cap(self):
        with pytest.raises(UnsupportedDimensionError):
            SubsystemLayout((16, 16), ("A", "B"))

    def test_unknown_label(self):
        with pytest.raises(LabelError):
            LAY2.index("Z")


class TestValidation:
    def test_pure_norm(self):
        with pytest.raises(InvariantViolation) as err:
            ket([1.0, 1.0], LAY1)
        assert err.value.invariant == "norm"

    def test_density_trace(self):
        with pytest.raises(InvariantViolation) as err:
            DensityMatrix(0.98 * np.eye(2) / 2, LAY1)
        assert err.value.invariant == "trace"

    def test_density_hermitian(self):
        m = np.eye(2, dtype=complex) / 2
        m[0, 1] = 1e-3
        with pytest.raises(InvariantViolation) as err:
            DensityMatrix(m, LAY1)
        assert err.value.invariant == "hermitian"

    def test_density_positive(self):
        m = np.diag([1.5, -0.5]).astype(complex)
        with pytest.raises(InvariantViolation) as err:
            DensityMatrix(m, LAY1)
        assert err.value.invariant == "positive"


class TestTensor:
    def test_basis_kets(self):
        zero = ket([1, 0], LAY1)
        one = ket([0, 1], SubsystemLayout((2,), ("B",)))
        prod = tensor(zero, one)
        assert np.array_equal(prod.amplitudes, [0, 1, 0, 0])
        assert prod.layout.labels == ("A", "B")

    def test_identity_halves(self):
        ia = DensityMatrix(np.eye(2) / 2, LAY1)
        ib = DensityMatrix(np.eye(2) / 2, SubsystemLayout((2,), ("B",)))
        prod = tensor(ia, ib)
        assert np.allclose(prod.entries, np.eye(4) / 4)
        assert prod.layout.dims == (2, 2)

    def test_plus_times_zero_projector(self):
        plus = DensityMatrix(np.full((2, 2), 0.5), LAY1)
        zero = DensityMatrix(np.diag([1.0, 0.0]), SubsystemLayout((2,), ("B",)))
        prod = tensor(plus, zero)
        expected = np.zeros((4, 4))
        for i, j in ((0, 0), (0, 2), (2, 0), (2, 2)):
            expected[i, j] = 0.5
        assert np.allclose(prod.entries, expected, atol=1e-15)

    def test_kind_mismatch(self):
        with pytest.raises(KindMismatchError):
            tensor(ket([1, 0], LAY1), DensityMatrix(np.eye(2) / 2,
                                                    SubsystemLayout((2,), ("B",))))

    def test_associativity(self):
        states = [random_pure_state(SubsystemLayout((2,), (l,)), s).to_density()
                  for l, s in zip("XYZ", (1, 2, 3))]
        left = tensor(tensor(states[0], states[1]), states[2])
        right = tensor(states[0], tensor(states[1], states[2]))
        assert np.abs(left.entries - right.entries).max() < 1e-12
        assert left.layout == right.layout

    def test_label_collision_rejected(self):
        with pytest.raises(InvariantViolation):
            tensor(ket([1, 0], LAY1), ket([1, 0], LAY1))


class TestPartialTrace:
    def test_product_factorizes(self):
        rho_a = DensityMatrix(np.array([[0.75, 0.25j], [-0.25j, 0.25]]), LAY1)
        rho_e = DensityMatrix(np.diag([0.1, 0.9]).astype(complex),
                              SubsystemLayout((2,), ("E",)))
        joint = tensor(rho_a, rho_e)
        back = partial_trace(joint, "A")
        assert np.allclose(back.entries, rho_a.entries, atol=1e-14)

    def test_bell_marginal_maximally_mixed(self):
        marg = partial_trace(bell().to_density(), "A")
        assert np.allclose(marg.entries, np.eye(2) / 2, atol=1e-14)

    def test_ghz_pair_vs_bruteforce(self):
        rho = ghz().to_density()
        kept = partial_trace(rho, ("A", "B"))
        oracle = brute_partial_trace(rho.entries, (2, 2, 2), (0, 1))
        assert np.abs(kept.entries - oracle).max() < 1e-14
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[3, 3] = 0.5
        assert np.allclose(kept.entries, expected, atol=1e-14)

    def test_keep_order_is_layout_order(self):
        rho = ghz().to_density()
        kept = partial_trace(rho, ("E", "A"))
        assert kept.layout.labels == ("A", "E")

    def test_keep_all_is_identity(self):
        rho = bell().to_density()
        full = partial_trace(rho, ("A", "B"))
        assert np.array_equal(full.entries, rho.entries)

    def test_unknown_label(self):
        with pytest.raises(LabelError):
            partial_trace(bell().to_density(), "Q")

    def test_trace_and_hermiticity_preserved(self):
        for seed, dims in ((0, (2, 2, 2)), (1, (2, 4)), (2, (4, 2, 2)), (3, (8, 2))):
            lay = SubsystemLayout(dims, tuple("STUV"[: len(dims)]))
            rho = DensityMatrix(random_density_entries(lay.total_dim, seed), lay)
            red = partial_trace(rho, lay.labels[0])
            assert abs(red.entries.trace() - 1.0) < 1e-12
            assert np.abs(red.entries - red.entries.conj().T).max() < 1e-10


class TestPartialTranspose:
    def test_product_state_spectrum_unchanged(self):
        rho_a = DensityMatrix(np.array([[0.6, 0.2], [0.2, 0.4]]), LAY1)
        rho_b = DensityMatrix(np.diag([0.3, 0.7]).astype(complex),
                              SubsystemLayout((2,), ("B",)))
        joint = tensor(rho_a, rho_b)
        pt = partial_transpose(joint, "A")
        w_original = np.sort(np.linalg.eigvalsh(joint.entries))
        w_pt = np.sort(np.linalg.eigvalsh(pt))
        assert np.allclose(w_original, w_pt, atol=1e-12)
        assert w_pt[0] > -1e-12

    def test_bell_minimum_eigenvalue(self):
        pt = partial_transpose(bell().to_density(), "A")
        assert np.abs(pt - pt.conj().T).max() < 1e-14
        assert abs(np.linalg.eigvalsh(pt)[0] - (-0.5)) < 1e-12

    def test_identity_invariant(self):
        rho = DensityMatrix(np.eye(4) / 4, LAY2)
        assert np.array_equal(partial_transpose(rho, "B"), np.eye(4) / 4)

    def test_involution_is_bit_exact(self):
        # separable state so the transposed matrix is itself a valid state
        # and the operation can be applied through the public surface twice
        lay = SubsystemLayout((2, 4), ("A", "B"))
        mix = np.zeros((8, 8), dtype=complex)
        for k in range(3):
            mix += 0.5 ** (k + 1) * np.kron(random_density_entries(2, 50 + k),
                                            random_density_entries(4, 60 + k))
        mix += (1 - mix.trace()) * np.eye(8) / 8
        rho = DensityMatrix(mix, lay)
        once = partial_transpose(rho, "B")
        twice = partial_transpose(DensityMatrix(once, lay), "B")
        assert np.array_equal(twice, rho.entries)

    def test_unknown_label(self):
        with pytest.raises(LabelError):
            partial_transpose(bell().to_density(), "Q")


class TestPurify:
    def test_pure_input_gets_trivial_ancilla(self):
        psi = random_pure_state(LAY1, 9)
        out = purify(psi.to_density(), "anc")
        assert out.layout.dims == (2, 2)
        anc = partial_trace(out.to_density(), "anc")
        assert np.allclose(anc.entries, np.diag([1.0, 0.0]), atol=1e-10)

    def test_maximally_mixed_qubit(self):
        out = purify(DensityMatrix(np.eye(2) / 2, LAY1), "anc")
        assert out.layout.dims == (2, 2)
        back = partial_trace(out.to_density(), "A")
        assert np.allclose(back.entries, np.eye(2) / 2, atol=1e-12)

    def test_schmidt_coefficients(self):
        rho = DensityMatrix(np.diag([0.7, 0.3]).astype(complex), LAY1)
        out = purify(rho, "anc")
        svals = np.linalg.svd(out.amplitudes.reshape(2, 2), compute_uv=False)
        assert np.allclose(svals, [np.sqrt(0.7), np.sqrt(0.3)], atol=1e-12)

    def test_roundtrip_on_random_density_matrices(self):
        worst = 0.0
        for seed in range(100):
            dim = (2, 4, 8)[seed % 3]
            lay = SubsystemLayout((dim,), ("S",))
            rho = DensityMatrix(random_density_entries(dim, 1000 + seed), lay)
            out = purify(rho, "anc")
            back = partial_trace(out.to_density(), "S")
            worst = max(worst, np.abs(back.entries - rho.entries).max())
        assert worst < 1e-10

    def test_low_rank_ancilla_dimension(self):
        rho = DensityMatrix(random_density_entries(4, 3, rank=2), LAY2)
        out = purify(rho, "anc")
        assert out.layout.dims == (2, 2, 2)


class TestEigh:
    def test_pauli_z(self):
        w, _ = eigh(np.diag([1.0, -1.0]).astype(complex))
        assert np.allclose(w, [-1.0, 1.0])

    def test_pauli_x(self):
        w, v = eigh(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
        assert np.allclose(w, [-1.0, 1.0])
        minus = v[:, 0]
        assert abs(abs(minus @ np.array([1, -1]) / np.sqrt(2)) - 1.0) < 1e-12

    def test_reconstruction_random(self):
        rng = np.random.default_rng(8)
        h = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        h = (h + h.conj().T) / 2
        w, v = eigh(h)
        assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() < 1e-9

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvariantViolation):
            eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestRandomStates:
    def test_pure_state_deterministic(self):
        a = random_pure_state(LAY3, 123)
        b = random_pure_state(LAY3, 123)
        assert np.array_equal(a.amplitudes, b.amplitudes)

    def test_pure_state_norm(self):
        for seed in range(20):
            psi = random_pure_state(LAY2, seed)
            assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12

    def test_haar_first_moment(self):
        # E |<0|psi>|^2 = 1/d for Haar states; d = 2 here
        vals = [abs(random_pure_state(LAY1, s).amplitudes[0]) ** 2
                for s in range(10_000)]
        assert abs(np.mean(vals) - 0.5) < 0.02

    def test_unitary_dim_one(self):
        u = random_unitary(1, 4)
        assert abs(abs(u.entries[0, 0]) - 1.0) < 1e-12

    def test_unitarity_residual(self):
        for seed, dim in ((0, 2), (1, 4), (2, 8), (3, 16)):
            u = random_unitary(dim, seed).entries
            assert np.abs(u @ u.conj().T - np.eye(dim)).max() < 1e-10

    def test_unitary_deterministic(self):
        assert np.array_equal(random_unitary(4, 77).entries,
                              random_unitary(4, 77).entries)

    def test_haar_trace_moment(self):
        # E |Tr U|^2 = 1 for the Haar measure on U(2)
        vals = [abs(random_unitary(2, s).entries.trace()) ** 2
                for s in range(10_000)]
        assert abs(np.mean(vals) - 1.0) < 0.05
