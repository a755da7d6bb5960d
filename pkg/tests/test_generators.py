import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from photonet import (
    BBS, BS, MZI, TBS, Add, And, BinaryMatrix, BitControlledGate, ClassicalFunction, Create,
    CtrlX, CtrlZ, DenseBox, Divide, DualRail, FusionTypeI, FusionTypeII, H, HadamardBS,
    Mod2, Multiply, Not, NumOp, NumberResolvingMeasurement, Or, Phase, PhotonThresholdMeasurement,
    PostselectBit, Scalar, Select, Sub, Ty, W, X, Xor, Z, bit, mode, qmode, qubit,
)
from photonet.errors import NormError, TableIncomplete, TypeMismatch
from photonet.evaluate import dense_array
from photonet.generators import annihilation, ansatz, creation, lo_unitary, mzi_positions
from photonet.permanent.linear_optics import extract_unitary

HAD = np.array([[1, 1], [1, -1]]) / math.sqrt(2)


def fock_basis(m, cap):
    return list(product(range(cap), repeat=m))


def fock_unitary(U, cap):
    """Fock-space action of a single-photon unitary via the many-body generator."""
    m = U.shape[0]
    basis = fock_basis(m, cap)
    index = {b: i for i, b in enumerate(basis)}
    lam, V = np.linalg.eig(U)
    G = V @ np.diag(np.angle(lam)) @ np.linalg.inv(V)
    Hm = np.zeros((len(basis), len(basis)), dtype=complex)
    for b in basis:
        for j in range(m):
            for k in range(m):
                if b[k] == 0:
                    continue
                o = list(b)
                amp = math.sqrt(o[k])
                o[k] -= 1
                o[j] += 1
                if o[j] >= cap:
                    continue
                amp *= math.sqrt(o[j])
                Hm[index[tuple(o)], index[b]] += G[j, k] * amp
    w, P = np.linalg.eigh((Hm + Hm.conj().T) / 2)
    return P @ np.diag(np.exp(1j * w)) @ P.conj().T


def close(got, ref, tol=1e-9):
    """Compare outcome dictionaries, treating missing keys as zero."""
    return all(abs(got.get(k, 0) - ref.get(k, 0)) <= tol for k in set(got) | set(ref))


def mat(d, in_caps, out_caps):
    a = dense_array(d, in_caps, out_caps)
    return a.reshape(int(np.prod(in_caps)), int(np.prod(out_caps))).T


# -- ZX -------------------------------------------------------------------------

def z_oracle(n_in, n_out, alpha):
    t = np.zeros((2,) * (n_in + n_out), dtype=complex)
    t[(0,) * (n_in + n_out)] = 1
    t[(1,) * (n_in + n_out)] = np.exp(2j * np.pi * alpha)
    return t


@given(st.integers(0, 2), st.integers(0, 2), st.floats(0, 1))
def test_spiders_match_oracle(n_in, n_out, alpha):
    if n_in + n_out == 0:
        return
    z = dense_array(Z(n_in, n_out, alpha), [2] * n_in, [2] * n_out)
    assert np.allclose(z, z_oracle(n_in, n_out, alpha), atol=1e-12)
    x = z_oracle(n_in, n_out, alpha)
    for ax in range(x.ndim):
        x = np.moveaxis(np.tensordot(HAD, x, axes=(1, ax)), 0, ax)
    got = dense_array(X(n_in, n_out, alpha), [2] * n_in, [2] * n_out)
    assert np.allclose(got, x, atol=1e-12)


def test_bell_state():
    amps = (Scalar(0.5 ** 0.5) @ Z(0, 2)).eval().amplitudes()
    assert amps == pytest.approx({(0, 0): 0.5 ** 0.5, (1, 1): 0.5 ** 0.5})


def test_classical_x_is_not():
    m = mat(X(1, 1, 0.5, ty=bit), [2], [2])
    assert np.allclose(m, [[0, 1], [1, 0]], atol=1e-12)


def test_trivial_spider_and_hadamard():
    assert np.allclose(mat(Z(1, 1, 0), [2], [2]), np.eye(2))
    assert np.allclose(mat(H(), [2], [2]), HAD)
    assert np.allclose(mat(H() >> H(), [2], [2]), np.eye(2), atol=1e-12)
    assert (DenseBox("zero", Ty(), qubit, [1, 0]) >> H()).eval().amplitudes() == \
        pytest.approx({(0,): 0.5 ** 0.5, (1,): 0.5 ** 0.5})


# -- ZW -------------------------------------------------------------------------

def w_oracle(n, cap_in, cap_out):
    t = np.zeros((cap_in,) + (cap_out,) * n)
    for m in range(cap_in):
        for ks in product(range(cap_out), repeat=n):
            if sum(ks) == m:
                t[(m,) + ks] = math.sqrt(math.factorial(m) / math.prod(map(math.factorial, ks)))
    return t


def test_w_split_on_small_states():
    a = (Create(1) >> W(2)).eval().amplitudes()
    assert a == pytest.approx({(1, 0): 1.0, (0, 1): 1.0})
    a = (Create(2) >> W(2)).eval().amplitudes()
    assert a == pytest.approx({(2, 0): 1.0, (1, 1): math.sqrt(2), (0, 2): 1.0})


@pytest.mark.parametrize("n", [2, 3])
def test_w_matches_multinomial_oracle(n):
    assert np.allclose(dense_array(W(n), [4], [4] * n), w_oracle(n, 4, 4))


def test_w_merge_after_split():
    split = w_oracle(2, 4, 4).reshape(4, 16).T
    ref = split.T @ split
    got = mat(W(2) >> W(2).dagger(), [4], [4])
    assert np.allclose(got, ref)
    assert not np.allclose(got, np.eye(4))


def test_create_and_select():
    assert (Create(0)).eval().amplitudes() == pytest.approx({(0,): 1.0})
    assert (Create(0) >> Select(0)).eval().scalar == pytest.approx(1.0)
    assert (Create(1) >> Select(1)).eval().scalar == pytest.approx(1.0)
    assert (Create(1) >> Select(0)).eval().scalar == pytest.approx(0.0)


def test_create_rejects_unnormalised_internal_state():
    with pytest.raises(NormError):
        Create(1, internal_states=[(1.0, 1.0)])
    Create(1, internal_states=[(1.0, 1e-12)])


@pytest.mark.parametrize("n", range(5))
def test_annihilation(n):
    a = (Create(n) >> annihilation()).eval().amplitudes()
    if n == 0:
        assert all(abs(v) < 1e-12 for v in a.values())
    else:
        assert a == pytest.approx({(n - 1,): math.sqrt(n)})


def test_numop():
    assert all(abs(v) < 1e-12 for v in (Create(0) >> NumOp()).eval().amplitudes().values())
    assert (Create(3) >> NumOp()).eval().amplitudes() == pytest.approx({(3,): 3.0})


def test_numop_expectation_against_dense_operator():
    rng = np.random.default_rng(4)
    U_diag = TBS(float(rng.uniform())) >> Phase(float(rng.uniform())) @ qmode
    U = extract_unitary(U_diag)
    d = Create(1, 1) >> U_diag >> NumOp() @ (NumOp() >> NumOp()) >> U_diag.dagger() \
        >> Create(1, 1).dagger()
    got = d.eval().scalar
    cap = 3
    FU = fock_unitary(U, cap)
    n = np.diag(np.arange(cap))
    O = np.kron(n, n @ n)
    psi = np.zeros(cap * cap)
    psi[1 * cap + 1] = 1
    ref = psi @ FU.conj().T @ O @ FU @ psi
    assert abs(got - ref) < 1e-10


# -- linear optics ------------------------------------------------------------

def test_beamsplitter_conventions():
    assert np.allclose(lo_unitary(BS), np.array([[1, 1j], [1j, 1]]) / math.sqrt(2))
    assert np.allclose(lo_unitary(BBS(0.0)), lo_unitary(BS))
    assert np.allclose(lo_unitary(HadamardBS()), HAD)
    assert np.allclose(lo_unitary(TBS(0)), np.eye(2))
    t = 0.17
    c, s = math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)
    assert np.allclose(lo_unitary(TBS(t)), [[c, 1j * s], [1j * s, c]])
    assert np.allclose(lo_unitary(BBS(0.3)), lo_unitary(TBS(1.3 / 8)))
    assert np.allclose(lo_unitary(Phase(0.3)), [[np.exp(0.6j * np.pi)]])


def test_mzi_definition():
    psi, phi = 0.21, 0.64
    ref = (Phase(psi) @ qmode >> HadamardBS() >> Phase(phi) @ qmode >> HadamardBS())
    assert np.allclose(extract_unitary(MZI(psi, phi)), extract_unitary(ref))


def test_hom_on_bs():
    amps = (Create(1, 1) >> BS).eval().amplitudes()
    assert abs(amps.get((1, 1), 0)) < 1e-12
    assert abs(amps[(2, 0)]) ** 2 == pytest.approx(0.5)


def test_dual_rail_phase_correction_is_x():
    corr = HadamardBS() >> Phase(0.5) @ qmode >> HadamardBS()
    # Phase(0.5) on the first rail is -Z, so the correction is -X
    assert np.allclose(extract_unitary(corr), [[0, -1], [-1, 0]], atol=1e-12)


@given(st.floats(0, 1), st.floats(0, 1), st.floats(-1, 1))
def test_single_photon_matrices_unitary(theta, psi, bias):
    for g in (TBS(theta), Phase(psi), BBS(bias), MZI(psi, theta), HadamardBS()):
        U = lo_unitary(g) if not hasattr(g, "ops") else extract_unitary(g)
        assert np.allclose(U @ U.conj().T, np.eye(len(U)), atol=1e-12)


@given(st.floats(0, 1))
def test_fock_lift_conserves_photons(theta):
    a = dense_array(TBS(theta), [4, 4], [4, 4])
    for idx in zip(*np.nonzero(np.abs(a) > 1e-12)):
        assert idx[0] + idx[1] == idx[2] + idx[3]


@given(st.floats(0, 1), st.floats(0, 1))
def test_fock_lift_matches_many_body_oracle(theta, psi):
    g = TBS(theta) >> Phase(psi) @ qmode
    U = extract_unitary(g)
    FU = fock_unitary(U, 3)
    got = mat(g, [3, 3], [3, 3])
    # restrict to states whose photons cannot overflow the cap
    keep = [i for i, b in enumerate(fock_basis(2, 3)) if sum(b) <= 2]
    assert np.allclose(got[np.ix_(keep, keep)], FU[np.ix_(keep, keep)], atol=1e-10)


CATALOG = [
    (Z(1, 2, 0.3), [2], [2, 2]), (X(2, 1, 0.1), [2, 2], [2]), (H(), [2], [2]),
    (W(2), [4], [4, 4]), (W(3), [3], [3, 3, 3]), (Create(1, 2), [], [4, 4]),
    (Select(2), [4], []), (NumOp(), [4], [4]), (TBS(0.2), [4, 4], [4, 4]),
    (Phase(0.3), [4], [4]), (BBS(0.4), [3, 3], [3, 3]), (HadamardBS(), [4, 4], [4, 4]),
    (annihilation(), [4], [4]), (creation(), [4], [4]),
]


@pytest.mark.parametrize("box,ins,outs", CATALOG, ids=lambda x: repr(x)[:30])
def test_dagger_consistency(box, ins, outs):
    m = mat(box, ins, outs)
    md = mat(box.dagger(), outs, ins)
    assert np.allclose(md, m.conj().T, atol=1e-12)


# -- ansatz -----------------------------------------------------------------------

def test_ansatz_layout():
    a = ansatz(2, 1)
    assert len(a.free_symbols) == 2 and mzi_positions(2, 1) == [(0, 0)]
    assert mzi_positions(4, 3) == [(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)]
    assert len(ansatz(4, 3).free_symbols) == 10


@given(st.integers(0, 2**32 - 1))
def test_ansatz_unitary(seed):
    rng = np.random.default_rng(seed)
    a = ansatz(4, 3)
    U = extract_unitary(a.subs({s: rng.uniform() for s in a.free_symbols}))
    assert np.allclose(U @ U.conj().T, np.eye(4), atol=1e-10)


# -- dual rail ----------------------------------------------------------------------

def test_dual_rail():
    zero = DenseBox("zero", Ty(), qubit, [1, 0])
    assert (zero >> DualRail(1)).eval().amplitudes() == pytest.approx({(1, 0): 1.0})
    enc = mat(DualRail(1), [2], [2, 2])
    dec = mat(DualRail(1).dagger(), [2, 2], [2])
    assert np.allclose(dec @ enc, np.eye(2))
    with pytest.raises(NormError):
        DualRail(1, internal_states=[(0.5, 0.5)])


# -- fusion -------------------------------------------------------------------------

FUSION_RULE = {(0, 0, 1, 1): (1, 0), (1, 1, 0, 0): (1, 0), (0, 1, 0, 1): (1, 1),
               (1, 0, 1, 0): (1, 1)}


def fusion_oracle(c):
    """Brute force over click patterns for two dual-rail photons with amplitudes ``c``."""
    U = np.zeros((4, 4), dtype=complex)
    for a, b in [(0, 1), (2, 3)]:
        U[np.ix_([a, b], [a, b])] = HAD
    V = np.eye(4, dtype=complex)
    for a, b in [(0, 3), (1, 2)]:
        V[np.ix_([a, b], [a, b])] = HAD
    U = V @ U
    T = np.zeros((4, 4), dtype=complex)
    for q0, q1 in product(range(2), repeat=2):
        T += c[q0, q1] * np.outer(U[:, q0], U[:, 2 + q1])
    probs = {}
    for j, l in product(range(4), repeat=2):
        if j > l:
            continue
        t = [0] * 4
        t[j] += 1
        t[l] += 1
        amp = T[j, l] + T[l, j] if j != l else math.sqrt(2) * T[j, j]
        probs[tuple(t)] = abs(amp) ** 2
    out = {}
    for t, p in probs.items():
        m0, m1 = t[0], t[1]
        key = FUSION_RULE.get(t, (0, (m0 + m1) % 2))
        out[key] = out.get(key, 0) + p
    return out


@pytest.mark.parametrize("name,vec", [
    ("++", np.full((2, 2), 0.5)), ("00", np.array([[1, 0], [0, 0]])),
    ("01", np.array([[0, 1], [0, 0]])),
])
def test_fusion_type_ii_against_brute_force(name, vec):
    prep = DenseBox(name, Ty(), qubit ** 2, vec.ravel())
    got = (prep >> DualRail(1) @ DualRail(1) >> FusionTypeII()).eval().prob_dist()
    ref = fusion_oracle(vec.astype(complex))
    for k in set(got) | set(ref):
        assert abs(got[k] - ref.get(k, 0)) < 1e-9


def test_fusion_success_probabilities():
    s = 0.5 ** 0.5
    plus = DenseBox("plus", Ty(), qubit, [s, s])
    p = (plus @ plus >> DualRail(1) @ DualRail(1) >> FusionTypeII()).eval().prob_dist()
    # |++> lies in the span of the two heralded Bell states
    assert p[1, 0] + p[1, 1] == pytest.approx(1.0)
    zero = DenseBox("zero", Ty(), qubit, [1, 0])
    p = (zero @ zero >> DualRail(1) @ DualRail(1) >> FusionTypeII()).eval().prob_dist()
    assert p[1, 0] + p[1, 1] == pytest.approx(0.5)


def test_fusion_on_vacuum():
    p = (Create(0, 0, 0, 0) >> FusionTypeII()).eval().prob_dist()
    assert p == pytest.approx({(0, 0): 1.0})


def test_fusion_type_i_shape():
    f = FusionTypeI()
    assert f.dom == qmode ** 4 and f.cod == qmode ** 2 @ bit ** 2


# -- measurements ---------------------------------------------------------------

def test_threshold_measurement():
    assert (Create(0) >> PhotonThresholdMeasurement(1)).eval().prob_dist() == \
        pytest.approx({(0,): 1.0})
    for n in (1, 2):
        assert (Create(n) >> PhotonThresholdMeasurement(1)).eval().prob_dist() == \
            pytest.approx({(1,): 1.0})
    d = Create(1, 1) >> BS >> PhotonThresholdMeasurement(2)
    assert close(d.eval().prob_dist(), {(1, 0): 0.5, (0, 1): 0.5})


def test_number_resolving_measurement():
    d = Create(1, 1) >> BS >> NumberResolvingMeasurement(2)
    p = d.eval().prob_dist()
    assert p[2, 0] == pytest.approx(0.5) and p[1, 1] == pytest.approx(0.0, abs=1e-12)


# -- classical -------------------------------------------------------------------

def classical_table(box, in_caps, out_caps):
    return dense_array(box, in_caps, out_caps).real


def test_classical_examples():
    add = classical_table(Add(2), [3, 3], [5])
    assert add[1, 0, 1] == 1
    assert classical_table(Xor(), [2, 2], [2])[1, 1, 0] == 1
    assert np.allclose(classical_table(BinaryMatrix([[1, 1]]), [2, 2], [2]),
                       classical_table(Xor(), [2, 2], [2]))
    assert np.allclose(classical_table(Not(), [2], [2]), [[0, 1], [1, 0]])
    assert classical_table(And(), [2, 2], [2])[1, 1, 1] == 1
    assert classical_table(Or(), [2, 2], [2])[0, 1, 1] == 1
    assert classical_table(Sub(), [3, 3], [3])[1, 2, 0] == 1
    assert classical_table(Multiply(), [3, 3], [5])[2, 2, 4] == 1
    assert classical_table(Mod2(), [4], [2])[3, 1] == 1


@pytest.mark.parametrize("box,ins,outs", [
    (Add(2), [3, 3], [5]), (Xor(), [2, 2], [2]), (And(3), [2, 2, 2], [2]),
    (BinaryMatrix([[1, 0, 1], [1, 1, 0]]), [2, 2, 2], [2, 2]), (Mod2(), [4], [2]),
    (ClassicalFunction({(a,): ((a * a) % 3,) for a in range(3)}, mode, mode), [3], [3]),
])
def test_classical_tensors_are_functions(box, ins, outs):
    t = classical_table(box, ins, outs).reshape(int(np.prod(ins)), -1)
    assert set(np.unique(t)) <= {0.0, 1.0}
    assert np.all(t.sum(axis=1) == 1)


def test_classical_function_table_incomplete():
    f = ClassicalFunction({(0,): (1,)}, mode, mode)
    with pytest.raises(TableIncomplete):
        dense_array(f, [2], [2])


def test_divide_by_zero_warns():
    with pytest.warns(RuntimeWarning):
        t = classical_table(Divide(), [3, 3], [3])
    assert t[2, 0].sum() == 0
    assert t[2, 1, 2] == 1


def test_postselect_bit():
    one = DenseBox("one", Ty(), bit, [0, 1])
    assert (one >> PostselectBit(1)).eval().scalar == pytest.approx(1)
    assert (one >> PostselectBit(0)).eval().scalar == pytest.approx(0)


# -- classical control ---------------------------------------------------------------

def test_controlled_gates():
    X_ = np.array([[0, 1], [1, 0]])
    m = mat(CtrlX(), [2, 2], [2]).reshape(2, 2, 2)   # (out, ctrl, target)
    assert np.allclose(m[:, 0, :], np.eye(2))
    assert np.allclose(m[:, 1, :], X_)
    m = mat(CtrlZ(), [2, 2], [2]).reshape(2, 2, 2)
    assert np.allclose(m[:, 1, :], np.diag([1, -1]))


def test_bit_controlled_gate():
    body = HadamardBS() >> Phase(0.5) @ qmode >> HadamardBS()
    g = BitControlledGate(body)
    assert g.dom == bit @ qmode ** 2 and g.cod == qmode ** 2
    with pytest.raises(TypeMismatch):
        BitControlledGate(Create(1))
    one = DenseBox("one", Ty(), bit, [0, 1])
    amps = (one @ Create(1, 0) >> g).eval().amplitudes()
    assert close(amps, {(0, 1): -1.0})
    zero = DenseBox("zero", Ty(), bit, [1, 0])
    amps = (zero @ Create(1, 0) >> g).eval().amplitudes()
    assert close(amps, {(1, 0): 1.0})
