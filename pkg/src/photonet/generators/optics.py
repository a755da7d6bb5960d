"""Passive linear-optical gates and dual-rail encoding.

Each gate is defined by its single-photon matrix ``U`` (``U[j, i]`` is the
amplitude from input mode ``i`` to output mode ``j``).  Its action on Fock
states is computed from permanents of ``U``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ..diagram import BasisTransition, Box, Diagram, DiagramSum, exp_i2pi
from ..errors import SymbolicDiagram
from ..permanent.fock import lift_column
from ..symbols import Symbol, numeric
from ..types import qmode, qubit
from .zw import NumOp, PowerBox, W, annihilation, creation


@lru_cache(maxsize=65536)
def _lift(gate, inp):
    return tuple(lift_column(gate.unitary(), inp))


class LOGate(Box):
    """Base class: a passive gate on ``n_modes`` qmode wires."""

    number_preserving = True

    def __init__(self, name, n_modes, params=()):
        self.n_modes = n_modes
        super().__init__(name, qmode ** n_modes, qmode ** n_modes, params)

    def unitary(self) -> np.ndarray:
        raise NotImplementedError

    def generator(self, symbol):
        """Matrix ``K`` with ``dU/dsymbol = K @ U``."""
        raise NotImplementedError(f"{self.name} is not differentiable")

    def transitions(self, inp, out_caps=None):
        if self.free_symbols:
            raise SymbolicDiagram(f"{self!r} has unbound symbols")
        for t, a in _lift(self, tuple(int(x) for x in inp)):
            yield BasisTransition(t, a)

    def forward_bounds(self, in_bounds):
        return (sum(in_bounds),) * self.n_modes

    def backward_bounds(self, out_bounds):
        return (sum(out_bounds),) * self.n_modes

    def diff(self, symbol):
        if symbol not in self.free_symbols:
            return None
        return self.to_diagram() >> second_quantize(self.generator(symbol))

    def inflate(self, d):
        if d == 1:
            return self.to_diagram()
        return InflatedGate(self, d).to_diagram()


def second_quantize(K) -> DiagramSum:
    """The operator ``sum_jl K[j, l] a_j† a_l`` as a sum of diagrams."""
    K = np.asarray(K, dtype=complex)
    m = K.shape[0]
    terms = []
    for j in range(m):
        for l in range(m):
            if K[j, l] == 0:
                continue
            parts = [Diagram.id(qmode)] * m
            if j == l:
                parts[j] = NumOp().to_diagram()
            else:
                parts[l] = annihilation()
                parts[j] = creation()
            terms.append(Diagram.tensor(*parts) * complex(K[j, l]))
    if not terms:
        return DiagramSum([Diagram.id(qmode ** m) * 0])
    return DiagramSum(terms)


class Phase(LOGate):
    """Single-mode phase shift ``exp(2 pi i psi n)``; ``psi`` in turns."""

    def __init__(self, psi):
        super().__init__("Phase", 1, (psi,))

    def _with_params(self, params):
        return Phase(params[0])

    def unitary(self):
        return np.array([[exp_i2pi(numeric(self.params[0]))]])

    def generator(self, symbol):
        return np.array([[2j * math.pi]])

    def conjugate(self):
        if isinstance(self.params[0], Symbol):
            return super().conjugate()
        return Phase(-self.params[0])


def _tbs_matrix(theta):
    c, s = math.cos(2 * math.pi * theta), math.sin(2 * math.pi * theta)
    return np.array([[c, 1j * s], [1j * s, c]])


class TBS(LOGate):
    """Tunable beamsplitter ``[[cos 2 pi t, i sin 2 pi t], [i sin 2 pi t, cos 2 pi t]]``."""

    def __init__(self, theta):
        super().__init__("TBS", 2, (theta,))

    def _with_params(self, params):
        return TBS(params[0])

    def unitary(self):
        return _tbs_matrix(numeric(self.params[0]))

    def generator(self, symbol):
        return 2j * math.pi * np.array([[0, 1], [1, 0]])


class BBS(LOGate):
    """Biased beamsplitter, ``TBS((1 + bias) / 8)``; balanced at ``bias = 0``."""

    def __init__(self, bias=0.0):
        super().__init__("BBS", 2, (bias,))

    def _with_params(self, params):
        return BBS(params[0])

    def unitary(self):
        return _tbs_matrix((1 + numeric(self.params[0])) / 8)

    def generator(self, symbol):
        return 2j * math.pi / 8 * np.array([[0, 1], [1, 0]])


class HadamardBS(LOGate):
    """Beamsplitter ``[[1, 1], [1, -1]] / sqrt 2``: the Hadamard on a dual-rail qubit."""

    def __init__(self):
        super().__init__("HadamardBS", 2)

    def unitary(self):
        return np.array([[1, 1], [1, -1]]) / math.sqrt(2)

    def dagger(self):
        return self

    def conjugate(self):
        return self


class Gate(LOGate):
    """Arbitrary numeric interferometer matrix."""

    def __init__(self, U, name="Gate"):
        U = np.asarray(U, dtype=complex)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise ValueError("gate matrix must be square")
        self.U = U
        super().__init__(name, U.shape[0])

    def _payload(self):
        return (self.U,)

    def unitary(self):
        return self.U

    def dagger(self):
        name = self.name[:-1] if self.name.endswith("†") else self.name + "†"
        return Gate(self.U.conj().T, name)

    def conjugate(self):
        return Gate(self.U.conj(), self.name + "*")


class InflatedGate(LOGate):
    """``inner`` acting identically on each of ``d`` internal copies: ``U ⊗ I_d``."""

    def __init__(self, inner: LOGate, d: int):
        self.inner, self.d = inner, d
        super().__init__(inner.name, inner.n_modes * d, inner.params)

    def _payload(self):
        return (self.inner._key(), self.d)

    def __repr__(self):
        return f"Inflated({self.inner!r}, {self.d})"

    def subs(self, bindings):
        inner = self.inner.subs(bindings)
        return self if inner is self.inner else InflatedGate(inner, self.d)

    def unitary(self):
        return np.kron(lo_unitary(self.inner), np.eye(self.d))

    def generator(self, symbol):
        return np.kron(lo_generator(self.inner, symbol), np.eye(self.d))

    def diff(self, symbol):
        if symbol not in self.free_symbols:
            return None
        return self.to_diagram() >> second_quantize(self.generator(symbol))

    @property
    def free_symbols(self):
        return self.inner.free_symbols


BS = BBS(0.0)


def lo_unitary(box) -> np.ndarray:
    """Single-photon matrix of an LO gate, possibly daggered or conjugated."""
    from ..diagram import ConjugateBox, DaggerBox

    if isinstance(box, DaggerBox):
        return lo_unitary(box.inner).conj().T
    if isinstance(box, ConjugateBox):
        return lo_unitary(box.inner).conj()
    return box.unitary()


def lo_generator(box, symbol):
    from ..diagram import ConjugateBox, DaggerBox

    if isinstance(box, (DaggerBox, ConjugateBox)):
        raise NotImplementedError("generator of a wrapped gate")
    return box.generator(symbol)


def is_lo(box) -> bool:
    from ..diagram import ConjugateBox, DaggerBox

    while isinstance(box, (DaggerBox, ConjugateBox)):
        box = box.inner
    return isinstance(box, LOGate)


def MZI(psi, phi):
    """Mach-Zehnder interferometer with internal and external phases."""
    q = Diagram.id(qmode)
    return (Phase(psi) @ q) >> HadamardBS() >> (Phase(phi) @ q) >> HadamardBS()


def mzi_positions(width, layers):
    """``(layer, first_mode)`` for every MZI of the brick-wall mesh."""
    out = []
    for layer in range(layers):
        start = 0 if layer % 2 == 0 else 1
        for k in range(start, width - 1, 2):
            out.append((layer, k))
    return out


def ansatz(width, layers, prefix=""):
    """Brick-wall MZI mesh with two fresh symbols per MZI.

    Layers alternate between mode pairs (0,1),(2,3),... and (1,2),(3,4),...
    """
    if width < 2 or layers < 1:
        raise ValueError("ansatz needs width >= 2 and layers >= 1")
    d = Diagram.id(qmode ** width)
    for layer, k in mzi_positions(width, layers):
        psi = Symbol(f"{prefix}psi_{layer:02d}_{k:02d}")
        phi = Symbol(f"{prefix}phi_{layer:02d}_{k:02d}")
        block = Diagram.id(qmode ** k) @ MZI(psi, phi) @ Diagram.id(qmode ** (width - k - 2))
        d = d >> block
    return d


class DualRail(Box):
    """Encode qubits as one photon in two modes: ``|0> -> |1,0>``, ``|1> -> |0,1>``."""

    def __init__(self, n=1, internal_states=None):
        from .zw import _check_states

        self.n = n
        self.internal_states = _check_states(internal_states, n)
        super().__init__("DualRail", qubit ** n, qmode ** (2 * n), (n,))

    def _payload(self):
        return (self.internal_states,)

    def transitions(self, inp, out_caps=None):
        out = []
        for b in inp:
            out += [0, 1] if b else [1, 0]
        yield BasisTransition(tuple(out), 1.0)

    def forward_bounds(self, in_bounds):
        return (1,) * (2 * self.n)

    def photon_gain(self, in_bounds):
        return self.n

    def backward_bounds(self, out_bounds):
        return (1,) * self.n

    def conjugate(self):
        if self.internal_states is None:
            return self
        return DualRail(self.n, [np.conj(s) for s in self.internal_states])

    def inflate(self, d):
        if d == 1 and (self.internal_states is None or len(self.internal_states[0]) == 1):
            return self.to_diagram()
        from ..errors import DimensionMismatch, MissingInternalState

        if self.internal_states is None:
            raise MissingInternalState("DualRail without internal states cannot be inflated")
        parts = []
        for s in self.internal_states:
            if len(s) != d:
                raise DimensionMismatch(f"internal state dimension {len(s)} != {d}")
            spread = W(d) >> Diagram.tensor(*[PowerBox(c) for c in s])
            parts.append(DualRail(1) >> spread @ spread)
        return Diagram.tensor(*parts)


def PhaseShiftDR(alpha):
    """Dual-rail Z rotation: phase ``alpha`` (turns) on the ``|1>`` rail."""
    return Diagram.id(qmode) @ Phase(alpha)


__all__ = [
    "LOGate", "Phase", "TBS", "BBS", "BS", "HadamardBS", "Gate", "InflatedGate",
    "MZI", "ansatz", "mzi_positions", "DualRail", "PhaseShiftDR", "second_quantize",
    "lo_unitary", "is_lo",
]
