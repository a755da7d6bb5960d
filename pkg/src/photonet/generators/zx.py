"""ZX-calculus generators on qubit (or classical bit) wires.

Phases are measured in turns: ``Z(1, 1, 0.5)`` is Pauli Z.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from ..diagram import BasisTransition, Box, exp_i2pi
from ..symbols import Symbol, numeric
from ..types import WireType, as_ty, qubit


class Spider(Box):
    """Z or X spider with ``n_in`` inputs, ``n_out`` outputs and a phase."""

    def __init__(self, kind, n_in, n_out, phase=0.0, ty=qubit):
        if kind not in ("Z", "X"):
            raise ValueError(f"spider kind must be Z or X, got {kind!r}")
        ty = as_ty(ty)
        if len(ty) != 1 or ty[0] not in (WireType.QUBIT, WireType.BIT):
            raise TypeError("ZX spiders act on qubit or bit wires")
        self.kind, self.n_in, self.n_out, self.phase, self.ty = kind, n_in, n_out, phase, ty
        super().__init__(kind, ty ** n_in, ty ** n_out, (phase,))

    def __repr__(self):
        p = f", {self.phase!r}" if self.phase != 0 else ""
        return f"{self.kind}({self.n_in}, {self.n_out}{p})"

    def _with_params(self, params):
        return Spider(self.kind, self.n_in, self.n_out, params[0], self.ty)

    def transitions(self, inp, out_caps=None):
        alpha = numeric(self.phase)
        if self.kind == "Z":
            values = (0, 1) if not inp else ((inp[0],) if len(set(inp)) == 1 else ())
            for b in values:
                yield BasisTransition((b,) * self.n_out, exp_i2pi(alpha * b))
            return
        n = self.n_in + self.n_out
        norm = 2 ** (-n / 2)
        w = exp_i2pi(alpha)
        s_in = sum(inp)
        for out in product((0, 1), repeat=self.n_out):
            amp = norm * (1 + w * (-1) ** ((s_in + sum(out)) % 2))
            if abs(amp) > 1e-15:
                yield BasisTransition(out, amp)

    def dagger(self):
        if isinstance(self.phase, Symbol):
            return super().dagger()
        return Spider(self.kind, self.n_out, self.n_in, -self.phase, self.ty)

    def conjugate(self):
        if isinstance(self.phase, Symbol):
            return super().conjugate()
        return Spider(self.kind, self.n_in, self.n_out, -self.phase, self.ty)

    def inflate(self, d):
        return self.to_diagram()


def Z(n_in, n_out, phase=0.0, ty=qubit):
    return Spider("Z", n_in, n_out, phase, ty)


def X(n_in, n_out, phase=0.0, ty=qubit):
    return Spider("X", n_in, n_out, phase, ty)


class Hadamard(Box):
    def __init__(self):
        super().__init__("H", qubit, qubit)

    def transitions(self, inp, out_caps=None):
        r = 1 / math.sqrt(2)
        yield BasisTransition((0,), r)
        yield BasisTransition((1,), -r if inp[0] else r)

    def dagger(self):
        return self

    def conjugate(self):
        return self


def H():
    return Hadamard()


class DenseBox(Box):
    """A box on fixed-dimension (bit/qubit) wires given by an explicit array.

    ``array`` has axes ``(inputs..., outputs...)``, each of size 2.
    """

    def __init__(self, name, dom, cod, array):
        dom, cod = as_ty(dom), as_ty(cod)
        if not all(t.fixed_dim for t in dom @ cod):
            raise TypeError("DenseBox only supports bit and qubit wires")
        arr = np.asarray(array, dtype=complex).reshape((2,) * (len(dom) + len(cod)))
        super().__init__(name, dom, cod)
        self.array = arr

    def _payload(self):
        return (self.array,)

    def transitions(self, inp, out_caps=None):
        col = self.array[tuple(inp)]
        for out in zip(*np.nonzero(col)):
            yield BasisTransition(tuple(int(o) for o in out), complex(col[out]))

    def dagger(self):
        k = len(self.dom)
        arr = self.array.transpose(list(range(k, self.array.ndim)) + list(range(k))).conj()
        return DenseBox(_dagger_name(self.name), self.cod, self.dom, arr)

    def conjugate(self):
        return DenseBox(self.name + "*", self.dom, self.cod, self.array.conj())


def _dagger_name(name):
    return name[:-1] if name.endswith("†") else name + "†"


def qubit_gate(name, matrix):
    """Single-qubit gate from a 2x2 matrix acting as ``|out> = M |in>``."""
    m = np.asarray(matrix, dtype=complex)
    return DenseBox(name, qubit, qubit, m.T)


__all__ = ["Spider", "Z", "X", "Hadamard", "H", "DenseBox", "qubit_gate"]
