"""Reference experiments shared by the CLI, the tests and the README."""

from __future__ import annotations

import math

import numpy as np

from .channels import Discard, Measure, NumberResolvingMeasurement, PhotonLoss
from .diagram import Diagram, Id, Scalar
from .evaluate import eval_channel
from .fusion import FusionTypeII
from .generators import (
    BS, Add, BitControlledGate, Create, CtrlX, CtrlZ, DualRail, H, HadamardBS, Phase,
    PostselectBit, X, Z, ansatz,
)
from .types import bit, qmode, qubit


# -- Hong-Ou-Mandel ---------------------------------------------------------

def hom_diagram():
    return Create(1) @ Create(1) >> BS


def hom(backend="tn"):
    """Output distribution of two photons on a balanced beamsplitter."""
    return hom_diagram().eval(backend=backend).prob_dist()


def hom_distinguishable(s1=(1, 0), s2=(math.sqrt(0.9), math.sqrt(0.1))):
    """Coincidence probability P(1, 1) for photons with internal states ``s1, s2``."""
    create = Create(1, 1, internal_states=(s1, s2))
    d = create >> BS >> NumberResolvingMeasurement(2)
    return d.inflate(len(s1)).eval().prob_dist()[(1, 1)]


def hom_overlap_sweep(n=10):
    """``(|<s1|s2>|, P(1,1))`` with ``s2`` rotated away from ``s1 = (1, 0)``."""
    rows = []
    for k in range(n):
        theta = k * (math.pi / 2) / (n - 1)
        s2 = (math.cos(theta), math.sin(theta))
        rows.append((abs(s2[0]), hom_distinguishable((1.0, 0.0), s2)))
    return rows


def hom_loss(p=0.8):
    """Probability of detecting exactly one photon when one arm transmits ``p``."""
    d = Create(1, 1) >> PhotonLoss(p) @ Id(qmode) >> BS >> NumberResolvingMeasurement(2) >> Add(2)
    return d.eval().prob_dist()[(1,)]


# -- teleportation ----------------------------------------------------------

def _cnot():
    @Diagram.from_callable(dom=qubit @ qubit, cod=qubit @ qubit)
    def cnot(a, b):
        c, d = Z(1, 2)(a)
        Scalar(2 ** 0.5)()
        return c, X(2, 1)(d, b)

    return cnot


def teleport_zx(syntax="function"):
    """Qubit teleportation with measurement and classically controlled corrections."""
    bell = Scalar(0.5 ** 0.5) @ Z(0, 2)
    cnot = _cnot()
    if syntax == "monoidal":
        return (qubit @ bell >> cnot @ qubit >> H() @ qubit ** 2
                >> Measure(1) @ Measure(1) @ qubit >> bit @ CtrlX() >> CtrlZ())

    @Diagram.from_callable(dom=qubit, cod=qubit)
    def teleportation(c):
        a, b = bell()
        cc, aa = cnot(c, a)
        c_ = Measure(1)(H()(cc))
        a_ = Measure(1)(aa)
        bb = CtrlX()(a_, b)
        return CtrlZ()(c_, bb)

    return teleportation


def superoperator(d):
    """Channel of a ``qubit -> qubit`` diagram as a 4x4 matrix on vec(rho)."""
    return eval_channel(d).array.reshape(4, 4).T


def teleport_fusion():
    """Dual-rail teleportation through a Bell pair and a type II fusion."""
    correction = BitControlledGate(HadamardBS() >> (Phase(0.5) @ qmode) >> HadamardBS())
    channel_bell = Z(0, 2) @ Scalar(0.5 ** 0.5) >> DualRail(1) @ DualRail(1)
    return (DualRail(1) @ channel_bell >> FusionTypeII() @ qmode ** 2
            >> PostselectBit(1) @ correction >> DualRail(1).dagger())


def teleport_fusion_reference():
    return Id(1) @ Scalar(0.5 ** 0.5)


# -- fusion-mediated entanglement --------------------------------------------

def rotated_unit_vectors(n=30):
    for i in range(n):
        theta = i * (math.pi / 2) / (n - 1)
        yield (math.cos(theta), math.sin(theta))


def fusion_fidelity(s1, s2):
    """``(fidelity, success probability)`` of heralded fusion of two Bell pairs."""
    bell_state = Z(0, 2) @ Scalar(0.5 ** 0.5)
    post_select = PostselectBit(1) @ PostselectBit(0)
    encoding = DualRail(1, internal_states=[s1]) @ DualRail(1, internal_states=[s2])
    experiment = (bell_state @ bell_state
                  >> Id(1) @ (encoding >> FusionTypeII() >> post_select) @ Id(1))
    num = (experiment >> bell_state.dagger()).inflate(len(s1)).eval().array
    den = (experiment >> Discard(2)).inflate(len(s1)).eval().array
    num, den = complex(num).real, complex(den).real
    return num / den, den


def fusion_fidelity_sweep(n=30):
    """Rows ``(overlap, fidelity, p_succ)`` as the second internal state rotates."""
    s1 = (1.0, 0.0)
    rows = []
    for s2 in rotated_unit_vectors(n):
        F, p = fusion_fidelity(s1, s2)
        rows.append((float(np.inner(s2, s1)), F, p))
    return rows


# -- monomial observables ---------------------------------------------------

def chip_mzi(w, l, rng):
    """Random MZI mesh with parameters drawn uniformly from [0, 1]."""
    a = ansatz(w, l)
    return a.subs({s: float(rng.uniform(0, 1)) for s in sorted(a.free_symbols)})


def monomial_diagram(powers=(1, 2, 1, 3), layers=4, seed=0, occupations=None):
    """``<psi| U† (prod_k n_k^p_k) U |psi>`` with ``psi`` a Fock product state."""
    from .vqe import monomial_layer

    w = len(powers)
    occ = tuple(occupations) if occupations is not None else (1,) * w
    U = chip_mzi(w, layers, np.random.default_rng(seed))
    return Create(*occ) >> U >> monomial_layer(powers) >> U.dagger() >> Create(*occ).dagger()


__all__ = [
    "chip_mzi", "fusion_fidelity", "fusion_fidelity_sweep", "hom", "hom_diagram",
    "hom_distinguishable", "hom_loss", "hom_overlap_sweep", "monomial_diagram",
    "rotated_unit_vectors", "superoperator", "teleport_fusion", "teleport_fusion_reference",
    "teleport_zx",
]
