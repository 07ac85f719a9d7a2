import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qnetcontrol.network import AKLT, XX, Custom, Heisenberg, Ising, coupling_operator
from qnetcontrol.operators import pauli
from qnetcontrol.propagation import propagation_check, propagation_generators

from conftest import naive_closure_dim, random_unitary


class TestTable:
    @pytest.mark.parametrize("delta", [0.5, 1.0, 2.0, -1.0, 0.1])
    def test_heisenberg(self, delta):
        rep = propagation_check(Heisenberg(1.0, delta))
        assert rep.propagating and rep.closure_dim == 15 == rep.target_dim

    def test_xx(self):
        rep = propagation_check(XX(1.0))
        assert not rep.propagating and rep.closure_dim < 15

    def test_heisenberg_delta0_is_xx(self):
        assert propagation_check(Heisenberg(1.0, 0.0)).closure_dim == propagation_check(XX(1.0)).closure_dim

    def test_ising(self):
        rep = propagation_check(Ising(1.0))
        assert not rep.propagating
        gens = propagation_generators(Ising(1.0), 2, 2)
        assert rep.closure_dim == naive_closure_dim(gens)

    @pytest.mark.parametrize("a,b", [(1.0, 1.0), (1 / 3, 1.0), (0.27, 0.81)])
    def test_aklt(self, a, b):
        rep = propagation_check(AKLT(1.0, a, b), 3, 3)
        assert rep.propagating and rep.closure_dim == 80

    @pytest.mark.parametrize("model", [Heisenberg(1.0, 0.5), XX(1.0), Ising(1.0)])
    def test_sides_agree_for_symmetric_couplings(self, model):
        assert propagation_check(model, side="n").closure_dim == propagation_check(model, side="m").closure_dim

    def test_bad_side(self):
        with pytest.raises(ValueError):
            propagation_check(XX(1.0), side="x")


class TestOracles:
    @pytest.mark.parametrize("model", [Heisenberg(1.0, 0.7), XX(0.9), Ising(1.3)])
    def test_naive_agreement(self, model):
        gens = propagation_generators(model, 2, 2)
        assert propagation_check(model).closure_dim == naive_closure_dim(gens)

    def test_local_unitary_invariance(self, rng):
        # conjugating H by u_n (x) u_m does not change the propagation verdict
        h = coupling_operator(Heisenberg(1.0, 0.6))
        for _ in range(3):
            u = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
            rep = propagation_check(Custom(u @ h @ u.conj().T))
            assert rep.closure_dim == 15

    def test_asymmetric_custom_coupling(self):
        # X_n Z_m + Z_n: from n the local su(2) only reaches part of the pair
        X, Z, I2 = pauli("X"), pauli("Z"), pauli("I")
        h = np.kron(X, Z) + np.kron(I2, Z)
        n = propagation_check(Custom(h), side="n")
        m = propagation_check(Custom(h), side="m")
        gens_n = propagation_generators(Custom(h), 2, 2, "n")
        gens_m = propagation_generators(Custom(h), 2, 2, "m")
        assert n.closure_dim == naive_closure_dim(gens_n)
        assert m.closure_dim == naive_closure_dim(gens_m)

    def test_mixed_dims(self, rng):
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        h = a + a.conj().T
        rep = propagation_check(Custom(h), 2, 3)
        assert rep.target_dim == 35 and rep.closure_dim == 35


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 20), st.floats(-3, 3).filter(lambda d: abs(d) > 1e-3))
def test_scale_invariance(c, delta):
    assert propagation_check(Heisenberg(c, delta)).closure_dim == 15
