"""Classical gates on bit and mode wires, and classical control of quantum gates."""

from __future__ import annotations

import warnings
from math import prod

import numpy as np

from ..diagram import INF, BasisTransition, Box, Diagram, as_diagram
from ..errors import TableIncomplete, TypeMismatch
from ..types import Ty, as_ty, bit, mode, qmode
from .zx import X, Z


class ClassicalBox(Box):
    """Deterministic map on classical wires given by ``rule(inp) -> out``.

    ``rule`` returns the output tuple, or ``None`` for a zero column.
    """

    deterministic = True

    def __init__(self, name, dom, cod, rule, fwd=None, bwd=None, params=()):
        super().__init__(name, dom, cod, params)
        if not (self.dom @ self.cod).classical:
            raise TypeError(f"{name} acts on classical wires only")
        self._rule, self._fwd, self._bwd = rule, fwd, bwd

    def transitions(self, inp, out_caps=None):
        out = self._rule(tuple(inp))
        if out is not None:
            yield BasisTransition(tuple(out), 1.0)

    def forward_bounds(self, in_bounds):
        if self._fwd is not None:
            return tuple(self._fwd(tuple(in_bounds)))
        return super().forward_bounds(in_bounds)

    def backward_bounds(self, out_bounds):
        if self._bwd is not None:
            return tuple(self._bwd(tuple(out_bounds)))
        return super().backward_bounds(out_bounds)

    def conjugate(self):
        return self

    def inflate(self, d):
        return self.to_diagram()


def Not():
    return ClassicalBox("Not", bit, bit, lambda x: (1 - x[0],))


def Xor(n=2):
    return ClassicalBox("Xor", bit ** n, bit, lambda x: (sum(x) % 2,), params=(n,))


def And(n=2):
    return ClassicalBox("And", bit ** n, bit, lambda x: (int(all(x)),), params=(n,))


def Or(n=2):
    return ClassicalBox("Or", bit ** n, bit, lambda x: (int(any(x)),), params=(n,))


def Add(k=2):
    """Sum of ``k`` mode values."""
    return ClassicalBox("Add", mode ** k, mode, lambda x: (sum(x),),
                        fwd=lambda b: (sum(b),), bwd=lambda b: (b[0],) * k, params=(k,))


def Sub():
    """Truncated subtraction ``max(a - b, 0)``."""
    return ClassicalBox("Sub", mode ** 2, mode, lambda x: (max(x[0] - x[1], 0),),
                        fwd=lambda b: (b[0],))


def Multiply():
    return ClassicalBox("Multiply", mode ** 2, mode, lambda x: (x[0] * x[1],),
                        fwd=lambda b: (b[0] * b[1],))


def _divide(x):
    if x[1] == 0:
        warnings.warn("division by zero gives amplitude 0", RuntimeWarning, stacklevel=2)
        return None
    return (x[0] // x[1],)


def Divide():
    """Integer division; a zero divisor contributes amplitude 0."""
    return ClassicalBox("Divide", mode ** 2, mode, _divide, fwd=lambda b: (b[0],))


def Mod2():
    return ClassicalBox("Mod2", mode, bit, lambda x: (x[0] % 2,))


def Threshold():
    """Click detector post-processing: occupation ``m`` to ``min(m, 1)``."""
    return ClassicalBox("Threshold", mode, bit, lambda x: (min(x[0], 1),))


def Copy(n=2, ty=bit):
    """Classical copy ``1 -> n``."""
    ty = as_ty(ty)
    return ClassicalBox("Copy", ty, ty ** n, lambda x: x * n,
                        fwd=lambda b: b * n, bwd=lambda b: (min(b),), params=(n,))


class PostselectBit(Box):
    """Keep only runs where the bit equals ``b``."""

    deterministic = True

    def __init__(self, b=1):
        super().__init__("PostselectBit", bit, Ty(), (int(b),))

    def transitions(self, inp, out_caps=None):
        if inp[0] == self.params[0]:
            yield BasisTransition((), 1.0)

    def conjugate(self):
        return self

    def inflate(self, d):
        return self.to_diagram()


class BinaryMatrix(ClassicalBox):
    """Linear map over GF(2): ``out = M @ in mod 2``."""

    def __init__(self, matrix):
        M = np.asarray(matrix, dtype=int) % 2
        self.matrix = M
        super().__init__("BinaryMatrix", bit ** M.shape[1], bit ** M.shape[0],
                         lambda x: tuple(int(v) for v in M.dot(x) % 2))

    def _payload(self):
        return (self.matrix,)


class ClassicalFunction(ClassicalBox):
    """Classical map given by an explicit ``{input tuple: output tuple}`` table."""

    def __init__(self, table, dom, cod, name="ClassicalFunction"):
        dom, cod = as_ty(dom), as_ty(cod)
        self.table = {tuple(k): tuple(v) for k, v in dict(table).items()}
        outs = list(self.table.values())
        top = tuple(max((o[i] for o in outs), default=0) for i in range(len(cod)))

        def rule(x):
            if x not in self.table:
                raise TableIncomplete(f"{name}: no entry for input {x}")
            return self.table[x]

        super().__init__(name, dom, cod, rule, fwd=lambda b: top)

    def _payload(self):
        return (tuple(sorted(self.table.items())),)


class BitControlledGate(Box):
    """Apply ``body`` when the control bit is 1, the identity when it is 0."""

    def __init__(self, body):
        body = as_diagram(body)
        if body.dom != body.cod:
            raise TypeMismatch(f"controlled body must be an endomorphism, got {body.dom!r} -> {body.cod!r}")
        self.body = body
        super().__init__("BitControlled", bit @ body.dom, body.cod)

    def _payload(self):
        return (self.body,)

    def __repr__(self):
        return f"BitControlledGate({self.body!r})"

    @property
    def free_symbols(self):
        return self.body.free_symbols

    def subs(self, bindings):
        return BitControlledGate(self.body.subs(bindings)) if self.free_symbols else self

    def forward_bounds(self, in_bounds):
        from ..tn.dims import diagram_forward_bounds

        rest = tuple(in_bounds[1:])
        body = diagram_forward_bounds(self.body, rest)
        return tuple(max(a, b) for a, b in zip(rest, body))

    def photon_gain(self, in_bounds):
        from ..tn.dims import diagram_photon_gain

        return diagram_photon_gain(self.body, tuple(in_bounds[1:]))

    def backward_bounds(self, out_bounds):
        from ..tn.dims import diagram_backward_bounds

        body = diagram_backward_bounds(self.body, tuple(out_bounds))
        return (1,) + tuple(max(a, b) for a, b in zip(out_bounds, body))

    def to_array(self, in_caps, out_caps, fwd_caps=None):
        from ..evaluate import dense_array

        in_caps, out_caps = tuple(in_caps), tuple(out_caps)
        arr = np.zeros(in_caps + out_caps, dtype=complex)
        rest = in_caps[1:]
        ident = np.zeros(rest + out_caps, dtype=complex)
        for idx in np.ndindex(*rest):
            if all(i < c for i, c in zip(idx, out_caps)):
                ident[idx + idx] = 1
        arr[0] = ident
        arr[1] = dense_array(self.body, rest, out_caps)
        return arr

    def transitions(self, inp, out_caps=None):
        if out_caps is None:
            out_caps = tuple(int(b) + 1 for b in self.forward_bounds(tuple(inp)))
        in_caps = tuple(i + 1 for i in inp)
        col = self.to_array(in_caps, out_caps)[tuple(inp)]
        for out in zip(*np.nonzero(col)):
            yield BasisTransition(tuple(int(o) for o in out), complex(col[out]))

    def conjugate(self):
        return BitControlledGate(self.body.conjugate())

    def diff(self, symbol):
        if symbol not in self.free_symbols:
            return None
        raise NotImplementedError("differentiating classically controlled gates")

    def inflate(self, d):
        return BitControlledGate(self.body.inflate(d)).to_diagram()


def CtrlX():
    return BitControlledGate(X(1, 1, 0.5))


def CtrlZ():
    return BitControlledGate(Z(1, 1, 0.5))


def BitControlledPhaseShift(alpha):
    from .optics import Phase

    return BitControlledGate(Phase(alpha))


__all__ = [
    "ClassicalBox", "Not", "Xor", "And", "Or", "Add", "Sub", "Multiply", "Divide", "Mod2",
    "Threshold", "Copy", "PostselectBit", "BinaryMatrix", "ClassicalFunction",
    "BitControlledGate", "CtrlX", "CtrlZ", "BitControlledPhaseShift",
]
