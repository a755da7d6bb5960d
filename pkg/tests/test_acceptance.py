"""End-to-end acceptance checks, one group per criterion.

Each test carries ``@pytest.mark.criterion(n, title)``; ``conftest.py`` prints
one PASS/FAIL line per criterion at the end of the run.
"""

import time

import numpy as np
import pytest

from photonet import (
    BitFlipError, Create, DenseBox, DephasingError, Diagram, Id, Ty, X, Z, qubit,
)
from photonet import experiments as ex
from photonet.cli.bench import STATUSES, agreement, depth, run_bench
from photonet.evaluate import dense_array, eval_channel
from photonet.permanent import perm_glynn, perm_naive, perm_ryser
from photonet.permanent.fock import amplitude, patterns
from photonet.streams import Delay, delay, feedback
from photonet.tn import contract, plan_greedy, plan_optimal
from photonet.vqe import Objective, bose_hubbard_energy, finite_difference, gradient_descent

from _util import einsum_oracle, haar_unitary, pauli_states, random_lo, random_network, \
    random_occupation

criterion = pytest.mark.criterion


# -- 1: HOM dip -------------------------------------------------------------

@criterion(1, "HOM dip on both backends")
@pytest.mark.parametrize("backend", ["tn", "permanent"])
def test_hom_dip(backend):
    t0 = time.perf_counter()
    p = ex.hom(backend)
    elapsed = time.perf_counter() - t0
    assert abs(p[1, 1]) <= 1e-9
    assert abs(p[2, 0] - 0.5) <= 1e-9
    assert abs(p[0, 2] - 0.5) <= 1e-9
    assert elapsed < 1.0


# -- 2: distinguishable HOM ---------------------------------------------------

@criterion(2, "distinguishable HOM and overlap sweep")
def test_hom_distinguishable():
    t0 = time.perf_counter()
    assert abs(ex.hom_distinguishable() - 0.05) <= 1e-6
    sweep = ex.hom_overlap_sweep(10)
    assert len(sweep) == 10
    for x, p in sweep:
        assert abs(p - (0.5 - 0.5 * x * x)) <= 1e-6
    assert time.perf_counter() - t0 < 10.0


# -- 3: lossy HOM -------------------------------------------------------------

@criterion(3, "lossy HOM detects one photon with probability 0.2")
def test_hom_loss():
    assert abs(ex.hom_loss(0.8) - 0.2) <= 1e-9


# -- 4: ZX teleportation ------------------------------------------------------

@criterion(4, "ZX teleportation is the identity channel")
@pytest.mark.parametrize("syntax", ["function", "monoidal"])
def test_teleport_zx(syntax):
    S = ex.superoperator(ex.teleport_zx(syntax))
    assert S.shape == (4, 4)
    assert np.abs(S - np.eye(4)).max() <= 1e-9


# -- 5: fusion teleportation --------------------------------------------------

@criterion(5, "fusion teleportation equals identity times 0.5^(1/2)")
def test_teleport_fusion():
    a = eval_channel(ex.teleport_fusion()).array
    b = eval_channel(ex.teleport_fusion_reference()).array
    assert a.shape == b.shape
    assert np.abs(a - b).max() <= 1e-9
    # the doubled reference is the identity superoperator scaled by |0.5^(1/2)|^2
    assert np.abs(a.reshape(4, 4).T - 0.5 * np.eye(4)).max() <= 1e-9


# -- 6: fusion fidelity sweep -------------------------------------------------

@criterion(6, "fusion fidelity endpoint, monotonicity and success probability")
def test_fusion_fidelity_sweep():
    rows = sorted(ex.fusion_fidelity_sweep(30))
    assert len(rows) == 30
    assert abs(rows[-1][0] - 1.0) <= 1e-12
    assert abs(rows[-1][1] - 1.0) <= 1e-6
    for (_, f0, _), (_, f1, _) in zip(rows, rows[1:]):
        assert f1 >= f0 - 1e-9
    for _, _, p in rows:
        assert 0.0 < p <= 1.0


# -- 7: permanents ------------------------------------------------------------

@criterion(7, "Ryser, Glynn and naive permanents agree; amplitudes normalised")
def test_permanent_algorithms_agree():
    rng = np.random.default_rng(7)
    for k in range(100):
        n = 1 + k % 8
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        ref = perm_naive(a)
        scale = max(abs(ref), 1e-300)
        assert abs(perm_ryser(a) - ref) / scale <= 1e-9
        assert abs(perm_glynn(a) - ref) / scale <= 1e-9


@criterion(7, "Ryser, Glynn and naive permanents agree; amplitudes normalised")
def test_amplitudes_normalised():
    rng = np.random.default_rng(17)
    for m in range(1, 6):
        U = haar_unitary(rng, m)
        for n in range(0, 5):
            for s in patterns(n, m):
                total = sum(abs(amplitude(U, s, t)) ** 2 for t in patterns(n, m))
                assert abs(total - 1.0) <= 1e-9


# -- 8: cross-backend oracle --------------------------------------------------

@criterion(8, "TN and permanent backends agree on random linear-optical circuits")
def test_cross_backend_distributions():
    rng = np.random.default_rng(8)
    for _ in range(20):
        m = int(rng.integers(2, 6))
        occ = random_occupation(rng, m, 4)
        d = Create(*occ) >> random_lo(rng, m, int(rng.integers(1, 5)))
        p_tn = d.eval(backend="tn").prob_dist()
        p_perm = d.eval(backend="permanent").prob_dist()
        keys = set(p_tn) | set(p_perm)
        assert keys
        for k in keys:
            assert abs(p_tn[k] - p_perm[k]) <= 1e-8


# -- 9: qubit noise -----------------------------------------------------------

X_ = np.array([[0, 1], [1, 0]], dtype=complex)
Z_ = np.diag([1, -1]).astype(complex)


@criterion(9, "bit-flip and dephasing on all Pauli eigenstates")
@pytest.mark.parametrize("p", [0.0, 0.3, 1.0])
@pytest.mark.parametrize("kind", ["bitflip", "dephasing"])
def test_qubit_noise(kind, p):
    channel, pauli = (BitFlipError, X_) if kind == "bitflip" else (DephasingError, Z_)
    for name, psi in pauli_states().items():
        rho = np.outer(psi, psi.conj())
        expected = (1 - p) * rho + p * pauli @ rho @ pauli
        prep = DenseBox(f"psi_{name}", Ty(), qubit, psi)
        got = eval_channel(prep >> channel(p)).density_matrix()
        assert np.abs(got - expected).max() <= 1e-12


# -- 10: contraction planner --------------------------------------------------

@criterion(10, "optimal plan never costs more than greedy; paths agree")
def test_planner_random_networks():
    rng = np.random.default_rng(10)
    for _ in range(50):
        tn = random_network(rng, int(rng.integers(2, 11)))
        g, o = plan_greedy(tn), plan_optimal(tn)
        assert o.cost <= g.cost
        a, b = contract(tn, g), contract(tn, o)
        ref = einsum_oracle(tn)
        scale = max(np.abs(ref).max(), 1e-300)
        assert np.abs(a - b).max() / scale <= 1e-12
        assert np.abs(a - ref).max() / scale <= 1e-10


# -- 11: VQE ------------------------------------------------------------------

@pytest.fixture(scope="module")
def bh_objective():
    return Objective(bose_hubbard_energy(), backend="permanent")


@criterion(11, "Bose-Hubbard gradient descent lowers the energy; gradients match FD")
def test_vqe_descent(bh_objective):
    t0 = time.perf_counter()
    x0 = np.random.default_rng(0).uniform(0, 1, len(bh_objective.symbols))
    tr = gradient_descent(bh_objective, x0, lr=0.001, steps=30)
    assert len(tr.energies) == 31
    assert tr.energies[-1] < tr.energies[0]
    assert time.perf_counter() - t0 < 120.0


@criterion(11, "Bose-Hubbard gradient descent lowers the energy; gradients match FD")
def test_vqe_gradient_vs_finite_differences(bh_objective):
    rng = np.random.default_rng(11)
    for _ in range(10):
        x = rng.uniform(0, 1, len(bh_objective.symbols))
        g = bh_objective.gradient(x)
        fd = finite_difference(bh_objective.energy, x, h=1e-5)
        assert np.linalg.norm(g - fd) <= 1e-5 * np.linalg.norm(fd)


# -- 12: benchmark harness ----------------------------------------------------

@criterion(12, "benchmark harness: three depth rules, n = 2..6, backends agree")
def test_bench_harness(tmp_path):
    assert depth("constant", 6) == 2
    assert depth("linear", 6) == 4
    records, values = run_bench(photons=[2, 3, 4, 5, 6], timeout=60.0, jobs=4,
                                out_dir=tmp_path)
    assert len(records) == 5 * 3 * 2
    assert {r.status for r in records} <= set(STATUSES)
    for r in records:
        assert r.status != "timeout"
    csv_lines = (tmp_path / "bench.csv").read_text().splitlines()
    assert csv_lines[0] == "circuit_id,modes,photons,depth_class,backend,wall_time_s,peak_size,status"
    assert len(csv_lines) == 31
    both = agreement(values)
    assert len(both) == 15
    assert max(both.values()) <= 1e-6


# -- 13: streams --------------------------------------------------------------

@criterion(13, "delay as feedback of swap; CNOT ladder unrolling")
def test_delay_constructions_agree():
    from photonet import qmode

    seed = Create(0)
    a = delay(qmode, seed).unroll(3)
    b = Delay(qmode, seed).unroll(3)
    assert a.dom == b.dom and a.cod == b.cod
    caps = [2] * 3
    ta = dense_array(a, caps, caps + [2])
    tb = dense_array(b, caps, caps + [2])
    assert ta.shape == tb.shape
    assert np.abs(ta - tb).max() <= 1e-12


def _cnot_body():
    from photonet import Swap
    return X(1, 2) @ qubit >> qubit @ Z(2, 1) >> Swap(qubit, qubit)


@criterion(13, "delay as feedback of swap; CNOT ladder unrolling")
def test_cnot_ladder_unroll():
    from photonet import Swap

    body = _cnot_body()
    stream = feedback(body, dom=qubit, cod=qubit, mem=qubit, initial_state=Z(0, 1))
    d = stream.unroll(3)
    d.check()
    assert d.dom == qubit ** 3 and d.cod == qubit ** 4

    sw = Swap(qubit, qubit)
    hand = (Z(0, 1) @ qubit ** 3
            >> body @ qubit ** 2
            >> sw @ qubit ** 2
            >> qubit @ body @ qubit
            >> qubit @ sw @ qubit
            >> qubit ** 2 @ body
            >> qubit ** 2 @ sw)
    assert hand.dom == d.dom and hand.cod == d.cod
    got = dense_array(d, [2] * 3, [2] * 4)
    assert np.abs(got - dense_array(hand, [2] * 3, [2] * 4)).max() <= 1e-12

    # independent einsum oracle from the one-step tensor
    B = dense_array(body, [2, 2], [2, 2])
    s = dense_array(Z(0, 1), [], [2])
    ref = np.einsum("a,aibj,bkcl,cmdn->ikmjlnd", s, B, B, B)
    assert np.abs(got - ref).max() <= 1e-12
