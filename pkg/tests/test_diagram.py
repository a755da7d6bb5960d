import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from photonet import (
    BS, TBS, Create, Diagram, DiagramSum, H, Id, NumOp, Phase, Scalar, Select, Swap, Symbol,
    Ty, X, Z, bit, mode, qmode, qubit,
)
from photonet import diagram as diagram_mod
from photonet.errors import EmptySum, TypeMismatch, UnknownSymbol, WireDropped, WireReuse
from photonet.evaluate import dense_array
from photonet.generators import ansatz

from _util import random_lo


def mat(d, in_caps, out_caps):
    """Matrix of a diagram, rows indexed by outputs."""
    a = dense_array(d, in_caps, out_caps)
    return a.reshape(int(np.prod(in_caps)), int(np.prod(out_caps))).T


# -- types ------------------------------------------------------------------

def test_ty_unit_and_associativity():
    a, b, c = Ty(qubit), Ty(mode), Ty(bit, qmode)
    assert Ty() @ a == a == a @ Ty()
    assert (a @ b) @ c == a @ (b @ c)
    assert len(qmode ** 3) == 3


def test_wire_kinds():
    assert bit[0].classical and mode[0].classical
    assert qubit[0].quantum and qmode[0].quantum
    assert bit[0].fixed_dim and qubit[0].fixed_dim
    assert not mode[0].fixed_dim


# -- sequential composition ---------------------------------------------------

def test_compose_identity():
    assert (Id(qubit) >> Id(qubit)) == Id(qubit)


def test_compose_type_mismatch_reports_index():
    with pytest.raises(TypeMismatch, match="factor 1"):
        Id(qubit @ qubit) >> Id(qubit @ qmode)


def test_compose_is_matrix_product():
    d = Z(1, 2) >> X(2, 1)
    assert d.dom == qubit and d.cod == qubit
    ref = mat(X(2, 1), [2, 2], [2]) @ mat(Z(1, 2), [2], [2, 2])
    assert np.allclose(mat(d, [2], [2]), ref, atol=1e-12)


def test_hom_preparation_is_state():
    d = Create(1, 1) >> BS
    assert d.dom == Ty() and d.cod == qmode ** 2


# -- parallel composition -----------------------------------------------------

def test_tensor_unit():
    d = Z(1, 2)
    assert (Id() @ d) == d.to_diagram()


def test_create_tensor_create():
    a = dense_array(Create(1) @ Create(1), [], [2, 2])
    b = dense_array(Create(1, 1), [], [2, 2])
    assert np.allclose(a, b)


def test_tensor_is_kronecker():
    d = Phase(0.25) @ Id(qmode)
    ref = np.kron(mat(Phase(0.25), [2], [2]), np.eye(2))
    assert np.allclose(mat(d, [2, 2], [2, 2]), ref, atol=1e-12)


# -- dagger -------------------------------------------------------------------

def test_dagger_identity():
    assert Id(qmode).dagger() == Id(qmode)


def test_dagger_create_is_select():
    a = dense_array(Create(1).dagger(), [3], [])
    b = dense_array(Select(1), [3], [])
    assert np.allclose(a, b)


@pytest.mark.parametrize("theta", [0.0, 0.13, 0.37, 0.81])
def test_dagger_conjugate_transposes(theta):
    m = mat(TBS(theta), [3, 3], [3, 3])
    md = mat(TBS(theta).dagger(), [3, 3], [3, 3])
    assert np.allclose(md, m.conj().T, atol=1e-12)


def test_dagger_conjugates_scalars():
    d = Scalar(1j) @ Id(qubit)
    assert d.dagger().scalar_factor == -1j


@given(st.integers(0, 2**32 - 1))
def test_dagger_involution(seed):
    d = random_lo(np.random.default_rng(seed), 3, 2) >> NumOp() @ qmode ** 2
    assert d.dagger().dagger() == d


# -- sums ---------------------------------------------------------------------

def test_sum_of_one_term():
    d = Create(1) >> NumOp()
    a = DiagramSum([d]).eval().array
    assert np.allclose(a, d.eval().array)


def test_sum_numop_twice():
    s = Create(1) >> (NumOp() + NumOp())
    amps = s.eval().amplitudes()
    assert amps == pytest.approx({(1,): 2.0})


def test_sum_errors():
    with pytest.raises(EmptySum):
        DiagramSum([])
    with pytest.raises(TypeMismatch):
        Id(qubit) + Id(qmode)


@given(st.floats(0, 1), st.floats(0, 1))
def test_sum_distributes_over_tensor(a, b):
    s1, s2 = Create(1) >> Phase(a), Create(1) >> Phase(b)
    d = Create(2)
    lhs = ((s1 + s2) @ d).eval().array
    rhs = (s1 @ d + s2 @ d).eval().array
    assert np.allclose(lhs, rhs, atol=1e-12)


# -- parameters ---------------------------------------------------------------

def test_substitute_to_zero_phase():
    s = Symbol("s")
    d = Phase(s).to_diagram().subs({s: 0})
    assert np.allclose(mat(d, [3], [3]), np.eye(3))


def test_substitute_ansatz_uniform():
    a = ansatz(3, 4)
    rng = np.random.default_rng(0)
    num = a.subs({s: rng.uniform() for s in a.free_symbols})
    assert num.free_symbols == set()


def test_substitute_then_evaluate_matches_literal():
    s = Symbol("theta")
    d = Create(1, 1) >> TBS(s)
    rng = np.random.default_rng(3)
    for theta in rng.uniform(0, 1, 10):
        a = d.subs({s: theta}).eval().array
        b = (Create(1, 1) >> TBS(float(theta))).eval().array
        assert np.allclose(a, b, atol=1e-12)


def test_substitute_unknown_symbol_warns_or_raises(monkeypatch):
    d = Phase(Symbol("a")).to_diagram()
    with pytest.warns(diagram_mod.UnknownSymbolWarning):
        d.subs({"nope": 1.0})
    monkeypatch.setattr(diagram_mod, "STRICT_SUBS", True)
    with pytest.raises(UnknownSymbol):
        d.subs({"nope": 1.0})


def test_subs_accepts_names_and_pairs():
    d = Phase(Symbol("a")).to_diagram()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert d.subs(a=0.5).free_symbols == set()
        assert d.subs(("a", 0.5)).free_symbols == set()


def test_free_symbols():
    assert BS.free_symbols == set()
    a = ansatz(3, 4)
    # brick wall on 3 modes: one MZI per layer
    assert len(a.free_symbols) == 2 * 4
    assert a.subs({s: 0.1 for s in a.free_symbols}).free_symbols == set()


# -- named wires --------------------------------------------------------------

def test_from_callable_identity():
    @Diagram.from_callable(dom=qubit @ qmode, cod=qubit @ qmode)
    def ident(a, b):
        return a, b

    assert ident == Id(qubit @ qmode)


def test_from_callable_reverse_is_permutation():
    @Diagram.from_callable(dom=qubit ** 3, cod=qubit ** 3)
    def rev(a, b, c):
        return c, b, a

    P = mat(rev, [2] * 3, [2] * 3)
    ref = np.zeros((8, 8))
    for i in range(8):
        bits = [(i >> k) & 1 for k in (2, 1, 0)]
        j = bits[2] * 4 + bits[1] * 2 + bits[0]
        ref[j, i] = 1
    assert np.allclose(P, ref)


def test_from_callable_linearity_errors():
    with pytest.raises(WireDropped):
        @Diagram.from_callable(dom=qubit @ qubit, cod=qubit)
        def drop(a, b):
            return a

    with pytest.raises(WireReuse):
        @Diagram.from_callable(dom=qubit, cod=qubit @ qubit)
        def reuse(a):
            return a, a


def test_from_callable_matches_monoidal():
    @Diagram.from_callable(dom=qubit @ qubit, cod=qubit @ qubit)
    def f(a, b):
        b = H()(b)
        return b, a

    g = Id(qubit) @ H() >> Swap(qubit, qubit)
    assert np.allclose(mat(f, [2, 2], [2, 2]), mat(g, [2, 2], [2, 2]))


# -- invariants ---------------------------------------------------------------

@given(st.integers(0, 2**32 - 1))
def test_interchange_law(seed):
    rng = np.random.default_rng(seed)
    a, c = TBS(float(rng.uniform())), Phase(float(rng.uniform())) @ qmode
    b, e = Phase(float(rng.uniform())), NumOp()
    lhs = (a @ b) >> (c @ e)
    rhs = (a >> c) @ (b >> e)
    caps = [3, 3, 3]
    assert np.allclose(mat(lhs, caps, caps), mat(rhs, caps, caps), atol=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(1, 3))
def test_constructed_diagrams_are_well_typed(seed, m, depth):
    d = random_lo(np.random.default_rng(seed), m, depth)
    assert d.check()
    assert d.dagger().check()
