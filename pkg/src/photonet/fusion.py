"""Fusion measurements on dual-rail qubits.

Mode order for two dual-rail qubits ``a`` and ``b`` is ``(a0, a1, b0, b1)``.

Type II interferes the rails pairwise and counts photons in all four modes.
The click pattern is mapped to two bits ``(success, parity)``:

======================  =======  ======  ===========================
pattern (m0,m1,m2,m3)   success  parity  projects the input onto
======================  =======  ======  ===========================
(0,0,1,1), (1,1,0,0)    1        0       (|00> + |11>) / sqrt 2
(0,1,0,1), (1,0,1,0)    1        1       (|01> + |10>) / sqrt 2
anything else           0        m0+m1   (failure)
======================  =======  ======  ===========================

The table was found by brute force so that a parity-controlled dual-rail X
correction (``HadamardBS >> Phase(0.5) @ qmode >> HadamardBS``) completes
fusion-based teleportation.
"""

from __future__ import annotations

from .channels import Measure
from .diagram import Diagram
from .generators.classical import ClassicalBox
from .generators.optics import HadamardBS
from .types import bit, mode, qmode


def _fusion_rule(m):
    m0, m1, m2, m3 = m
    success = int(m0 + m3 == 1 and m1 + m2 == 1)
    return (success, (m0 + m1) % 2)


def fusion_outcome():
    """Classical map from a 4-mode click pattern to ``(success, parity)``."""
    return ClassicalBox("FusionOutcome", mode ** 4, bit ** 2, _fusion_rule)


def FusionTypeII():
    """Type II fusion: ``qmode^4 -> bit^2`` reporting ``(success, parity)``."""
    hbs = HadamardBS()

    @Diagram.from_callable(dom=qmode ** 4, cod=mode ** 4)
    def optics(a0, a1, b0, b1):
        a0, a1 = hbs(a0, a1)
        b0, b1 = hbs(b0, b1)
        a0, b1 = hbs(a0, b1)
        a1, b0 = hbs(a1, b0)
        return Measure(qmode ** 4)(a0, a1, b0, b1)

    return optics >> fusion_outcome()


def _type_one_rule(m):
    total = m[0] + m[1]
    return (int(total == 1), m[1] % 2)


def FusionTypeI():
    """Type I fusion: ``qmode^4 -> qmode^2 @ bit^2``.

    The inner rails ``a1, b0`` meet on a Hadamard beamsplitter and are both
    counted; the outer rails ``a0, b1`` are kept.  The bits report
    ``(success, which)`` where success means exactly one photon was counted.
    """
    hbs = HadamardBS()
    outcome = ClassicalBox("FusionIOutcome", mode ** 2, bit ** 2, _type_one_rule)

    @Diagram.from_callable(dom=qmode ** 4, cod=qmode ** 2 @ bit ** 2)
    def fuse(a0, a1, b0, b1):
        a1, b0 = hbs(a1, b0)
        m = Measure(qmode ** 2)(a1, b0)
        s, w = outcome(*m)
        return a0, b1, s, w

    return fuse


__all__ = ["FusionTypeI", "FusionTypeII", "fusion_outcome"]
