import numpy as np
import pytest

from qnetcontrol.closure import (
    ClosureResult,
    DenseSpace,
    IndeterminateError,
    PauliSpace,
    lie_closure,
    space_for,
)
from qnetcontrol.network import Heisenberg, coupling_operator
from qnetcontrol.operators import (
    DimensionError,
    PauliPolynomial,
    embed_local,
    hs_inner,
    pauli,
    su_basis,
)

from conftest import naive_closure_dim, random_skew_traceless, random_unitary

X, Y, Z = pauli("X"), pauli("Y"), pauli("Z")


def heis_generators():
    h = coupling_operator(Heisenberg(1.0, 1.0))
    local = [embed_local(g, [0], [2, 2]) for g in su_basis(2)]
    return local + [1j * h]


class TestExamples:
    def test_abelian(self):
        assert lie_closure([1j * X]).dim == 1

    def test_su2(self):
        res = lie_closure([1j * X, 1j * Y])
        assert res.dim == 3 and res.saturated

    def test_heisenberg_pair(self):
        assert lie_closure(heis_generators()).dim == 15

    def test_target_dim_stops_early(self):
        res = lie_closure(heis_generators(), target_dim=5)
        assert res.dim == 5 and res.saturated

    def test_pauli_inputs(self):
        gens = [PauliPolynomial({"XI": 1.0}, 2), PauliPolynomial({"XX": 1.0, "YY": 1.0, "ZZ": 1.0}, 2)]
        assert lie_closure(gens).dim == lie_closure([g.to_dense() for g in gens]).dim


class TestValidation:
    def test_nonpositive_tol(self):
        with pytest.raises(ValueError):
            lie_closure([1j * X], tol=0)

    def test_empty(self):
        with pytest.raises(ValueError):
            lie_closure([])

    def test_trace_rejected(self):
        with pytest.raises(ValueError, match="traceless"):
            lie_closure([1j * np.eye(2)])

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            lie_closure([1j * X, 1j * np.diag([1, -1, 0])])

    def test_mixed_types(self):
        with pytest.raises(TypeError):
            lie_closure([1j * X, PauliPolynomial({"X": 1.0}, 1)])

    def test_bad_target(self):
        with pytest.raises(ValueError):
            lie_closure([1j * X], target_dim=4)

    def test_zero_generators_give_empty_basis(self):
        res = lie_closure([np.zeros((2, 2), dtype=complex)])
        assert res.dim == 0 and res.basis == []

    def test_indeterminate(self):
        # a second generator sitting at relative distance ~3e-10 from the first
        eps = 3e-10
        gens = [1j * X, 1j * (X + eps * Y)]
        with pytest.raises(IndeterminateError) as info:
            lie_closure(gens, tol=1e-9)
        assert 1e-10 <= info.value.residual <= 1e-9

    def test_clear_decisions_either_side_of_band(self):
        assert lie_closure([1j * X, 1j * (X + 1e-12 * Y)], tol=1e-9).dim == 1
        assert lie_closure([1j * X, 1j * (X + 1e-6 * Y)], tol=1e-9).dim == 3


class TestSpaces:
    def test_dense_coordinates_are_isometric(self, rng):
        space = DenseSpace(4)
        a, b = random_skew_traceless(rng, 4), random_skew_traceless(rng, 4)
        ca, cb = space.to_coords([a, b])
        assert ca @ cb == pytest.approx(hs_inner(a, b))
        assert np.allclose(space.from_coords(ca[None])[0], a)

    def test_pauli_coordinates_are_isometric(self, rng):
        a, b = random_skew_traceless(rng, 8), random_skew_traceless(rng, 8)
        pa, pb = PauliPolynomial.from_dense(a, 3), PauliPolynomial.from_dense(b, 3)
        space = PauliSpace(3)
        ca, cb = space.to_coords([pa, pb])
        assert ca @ cb == pytest.approx(hs_inner(a, b))

    def test_space_for(self):
        assert isinstance(space_for([1j * X]), DenseSpace)
        assert isinstance(space_for([PauliPolynomial({"XZ": 1.0}, 2)]), PauliSpace)


def _orthonormal(res: ClosureResult):
    b = res.basis
    if isinstance(b[0], PauliPolynomial):
        b = [p.to_dense() for p in b]
    gram = np.array([[hs_inner(x, y) for y in b] for x in b])
    return np.max(np.abs(gram - np.eye(len(b))))


class TestProperties:
    def test_orthonormal_basis(self):
        res = lie_closure(heis_generators())
        assert _orthonormal(res) <= 1e-8

    def test_pauli_orthonormal_basis(self):
        gens = [PauliPolynomial.from_dense(g, 2) for g in heis_generators()]
        assert _orthonormal(lie_closure(gens)) <= 1e-8

    def test_basis_is_closed(self, rng):
        gens = [embed_local(1j * X, [0], [2, 2]), 1j * np.kron(Z, Z), 0.3j * np.kron(Y, X)]
        res = lie_closure(gens)
        span = np.array([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in res.basis])
        for a in res.basis:
            for b in res.basis:
                c = a @ b - b @ a
                v = np.concatenate([c.real.ravel(), c.imag.ravel()])
                coef, *_ = np.linalg.lstsq(span.T, v, rcond=None)
                assert np.linalg.norm(span.T @ coef - v) <= 1e-8 * (1 + np.linalg.norm(v))

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_against_naive_oracle(self, rng, d):
        for trial in range(6):
            k = int(rng.integers(1, 4))
            gens = [random_skew_traceless(rng, d) for _ in range(k)]
            if trial % 2:
                # sparse generators give proper subalgebras more often
                gens = [g * (rng.random(g.shape) < 0.3) for g in gens]
                gens = [(g - g.conj().T) / 2 for g in gens]
                gens = [g - np.trace(g) / d * np.eye(d) for g in gens if np.any(g)]
                if not gens:
                    continue
            assert lie_closure(gens).dim == naive_closure_dim(gens)

    def test_proper_subalgebra_against_oracle(self):
        # embedded su(2) (x) 1 plus a commuting diagonal on two qutrit-like blocks
        gens = [embed_local(1j * X, [0], [2, 3]), embed_local(1j * np.diag([1, -1, 0]), [1], [2, 3])]
        assert lie_closure(gens).dim == naive_closure_dim(gens) == 2

    def test_idempotent(self):
        res = lie_closure([embed_local(1j * X, [0], [2, 2]), 1j * np.kron(Z, Z)])
        again = lie_closure(res.basis)
        assert again.dim == res.dim

    def test_monotone(self, rng):
        gens = [embed_local(1j * Z, [0], [2, 2])]
        dims = []
        for g in (1j * np.kron(X, X), 1j * np.kron(Y, Y), embed_local(1j * X, [1], [2, 2])):
            gens.append(g)
            dims.append(lie_closure(gens).dim)
        assert dims == sorted(dims)

    def test_remixing_invariance(self, rng):
        base = [embed_local(1j * X, [0], [2, 2]), 1j * np.kron(Z, Z)]
        dim = lie_closure(base).dim
        for _ in range(5):
            q, _ = np.linalg.qr(rng.normal(size=(2, 2)))
            mixed = [q[i, 0] * base[0] + q[i, 1] * base[1] for i in range(2)]
            assert lie_closure(mixed).dim == dim

    def test_unitary_conjugation_invariance(self, rng):
        base = heis_generators()[1:]  # iY1, iZ1, iH: proper subalgebra plus more
        dim = lie_closure(base).dim
        for _ in range(5):
            u = random_unitary(rng, 4)
            assert lie_closure([u @ g @ u.conj().T for g in base]).dim == dim

    def test_representations_agree(self, rng):
        for n in (2, 3):
            d = 2 ** n
            for _ in range(3):
                gens = [random_skew_traceless(rng, d) * (rng.random((d, d)) < 0.2) for _ in range(2)]
                gens = [(g - g.conj().T) / 2 for g in gens]
                gens = [g - np.trace(g) / d * np.eye(d) for g in gens if np.any(g)]
                if not gens:
                    continue
                dense = lie_closure(gens).dim
                pauli_dim = lie_closure([PauliPolynomial.from_dense(g, n) for g in gens]).dim
                assert dense == pauli_dim

    def test_deterministic(self):
        a = lie_closure(heis_generators())
        b = lie_closure(heis_generators())
        assert all(np.array_equal(x, y) for x, y in zip(a.basis, b.basis))
