"""Synchronous stream processes with a memory wire, unrolled into diagrams.

A stream is a time-invariant one-step body ``mem @ dom -> mem @ cod`` plus a
state preparing the initial memory.  :meth:`Stream.unroll` exposes the
final memory as a trailing output; discard it explicitly if needed.
"""

from __future__ import annotations

from .diagram import Diagram, _first_mismatch, as_diagram
from .errors import TypeMismatch
from .types import Ty, as_ty


def _wires(res):
    if res is None:
        return []
    return list(res) if isinstance(res, tuple) else [res]


def _check(name, got, want):
    if got != want:
        k = _first_mismatch(got, want)
        raise TypeMismatch(f"{name}: expected {want!r}, got {got!r} (first mismatch at factor {k})")


class Stream:
    """A time-invariant stream process."""

    def __init__(self, body, dom, cod, mem, initial_state):
        self.body = as_diagram(body)
        self.dom, self.cod, self.mem = as_ty(dom), as_ty(cod), as_ty(mem)
        self.initial_state = as_diagram(initial_state)
        _check("body domain", self.body.dom, self.mem @ self.dom)
        _check("body codomain", self.body.cod, self.mem @ self.cod)
        _check("initial state domain", self.initial_state.dom, Ty())
        _check("initial state codomain", self.initial_state.cod, self.mem)

    def __repr__(self):
        return f"Stream({self.dom!r} -> {self.cod!r}, mem={self.mem!r})"

    def step(self, mem_wires, in_wires):
        """Apply one step on named wires inside a builder; returns (mem', outputs)."""
        out = _wires(self.body(*mem_wires, *in_wires))
        k = len(self.mem)
        return out[:k], out[k:]

    def unroll(self, n: int) -> Diagram:
        """The first ``n`` steps as a diagram ``dom**n -> cod**n @ mem``."""
        if n < 1:
            raise ValueError("unroll needs n >= 1")
        dx = len(self.dom)

        @Diagram.from_callable(dom=self.dom ** n, cod=self.cod ** n @ self.mem)
        def unrolled(*xs):
            mem = _wires(self.initial_state())
            ys = []
            for i in range(n):
                mem, y = self.step(mem, xs[i * dx:(i + 1) * dx])
                ys += y
            return tuple(ys + mem)

        return unrolled

    def then(self, other: "Stream") -> "Stream":
        """Feed the outputs of this stream into ``other``; memories sit side by side."""
        _check("stream composition", self.cod, other.dom)
        k1, k2, dx = len(self.mem), len(other.mem), len(self.dom)

        @Diagram.from_callable(dom=self.mem @ other.mem @ self.dom,
                               cod=self.mem @ other.mem @ other.cod)
        def body(*ws):
            m1, m2, x = ws[:k1], ws[k1:k1 + k2], ws[k1 + k2:k1 + k2 + dx]
            m1, y = self.step(m1, x)
            m2, z = other.step(m2, y)
            return tuple(m1 + m2 + z)

        return Stream(body, self.dom, other.cod, self.mem @ other.mem,
                      self.initial_state @ other.initial_state)

    __rshift__ = then

    def tensor(self, other: "Stream") -> "Stream":
        """Run two streams side by side."""
        k1, k2 = len(self.mem), len(other.mem)
        d1 = len(self.dom)

        @Diagram.from_callable(dom=self.mem @ other.mem @ self.dom @ other.dom,
                               cod=self.mem @ other.mem @ self.cod @ other.cod)
        def body(*ws):
            m1, m2 = ws[:k1], ws[k1:k1 + k2]
            x1, x2 = ws[k1 + k2:k1 + k2 + d1], ws[k1 + k2 + d1:]
            m1, y1 = self.step(m1, x1)
            m2, y2 = other.step(m2, x2)
            return tuple(m1 + m2 + y1 + y2)

        return Stream(body, self.dom @ other.dom, self.cod @ other.cod, self.mem @ other.mem,
                      self.initial_state @ other.initial_state)

    __matmul__ = tensor


def feedback(body, dom, cod, mem, initial_state) -> Stream:
    """Turn ``body: mem @ dom -> mem @ cod`` into a stream seeded by ``initial_state``."""
    return Stream(body, dom, cod, mem, initial_state)


def delay(ty, initial_state) -> Stream:
    """Unit delay on ``ty``, built as the feedback of a swap."""
    ty = as_ty(ty)
    return feedback(Diagram.swap(ty, ty), dom=ty, cod=ty, mem=ty, initial_state=initial_state)


def delay_n(ty, initial_state, steps: int) -> Stream:
    """``steps`` unit delays in sequence."""
    if steps < 1:
        raise ValueError("a delay needs at least one step")
    s = delay(ty, initial_state)
    for _ in range(steps - 1):
        s = s.then(delay(ty, initial_state))
    return s


class Delay:
    """Unit delay unrolled directly as a wiring, without a feedback body."""

    def __init__(self, ty, initial_state):
        self.ty = as_ty(ty)
        self.initial_state = as_diagram(initial_state)
        _check("initial state domain", self.initial_state.dom, Ty())
        _check("initial state codomain", self.initial_state.cod, self.ty)

    def unroll(self, n: int) -> Diagram:
        if n < 1:
            raise ValueError("unroll needs n >= 1")
        # outputs are seed, x_0, ..., x_{n-2}; the last input is the final memory
        return self.initial_state @ Diagram.id(self.ty ** n)


__all__ = ["Stream", "feedback", "delay", "delay_n", "Delay"]
