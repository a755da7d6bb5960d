"""Typed string diagrams stored as port graphs.

A :class:`Diagram` is a list of boxes applied to explicit wire ids.  Every
wire has one producer (a box output or the input boundary) and one consumer
(a box input or the output boundary).  Sequential composition ``>>`` glues
output wires to input wires, parallel composition ``@`` places diagrams side
by side, and ``+`` forms a :class:`DiagramSum`.
"""

from __future__ import annotations

import cmath
import contextvars
import math
import warnings
from collections import namedtuple
from functools import reduce
from numbers import Number

import numpy as np

from .errors import (
    DaggerUndefined,
    EmptySum,
    InflationUnsupported,
    TypeMismatch,
    UnknownSymbol,
    WireDropped,
    WireReuse,
)
from .symbols import Symbol, normalize_bindings, resolve
from .types import Ty, WireType, as_ty

INF = math.inf

Op = namedtuple("Op", "box ins outs")
BasisTransition = namedtuple("BasisTransition", "out amp")

#: raise instead of warn when ``subs`` names a symbol that does not occur
STRICT_SUBS = False


def _freeze(x):
    """Turn parameters and payloads into hashable keys."""
    if isinstance(x, np.ndarray):
        return ("nd", x.shape, tuple(complex(v) for v in x.ravel()))
    if isinstance(x, (list, tuple)):
        return tuple(_freeze(v) for v in x)
    if isinstance(x, dict):
        return tuple(sorted((k, _freeze(v)) for k, v in x.items()))
    return x


def _first_mismatch(a: Ty, b: Ty) -> int:
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return min(len(a), len(b))


class Box:
    """A generator with a fixed boundary and a basis-transition rule.

    Subclasses implement :meth:`transitions` (the action on one basis state)
    and the light-cone rules :meth:`forward_bounds` and
    :meth:`backward_bounds`.  A dense tensor with axes ``(inputs..., outputs...)``
    is assembled by :meth:`to_array`.
    """

    #: ``False`` for boxes whose amplitudes do not fit the transition API
    enumerable = True
    #: ``True`` when the box never changes the photon count (so neither does its dagger)
    number_preserving = False

    def __init__(self, name, dom, cod, params=()):
        self.name = name
        self.dom = as_ty(dom)
        self.cod = as_ty(cod)
        self.params = tuple(params)

    # identity -----------------------------------------------------------

    def _payload(self):
        return ()

    def _key(self):
        return (type(self).__name__, self.name, self.dom, self.cod,
                _freeze(self.params), _freeze(self._payload()))

    def __eq__(self, other):
        return isinstance(other, Box) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.params:
            return f"{self.name}({', '.join(map(repr, self.params))})"
        return self.name

    # semantics ----------------------------------------------------------

    def transitions(self, inp, out_caps=None):
        """Yield :class:`BasisTransition` for the basis input ``inp``."""
        raise NotImplementedError(f"{self.name} has no transition rule")

    def forward_bounds(self, in_bounds):
        """Upper bounds on output occupations given input bounds."""
        out = []
        total = sum(b for b, t in zip(in_bounds, self.dom) if t.photonic)
        for t in self.cod:
            out.append(1 if t.fixed_dim else total)
        return tuple(out)

    def backward_bounds(self, out_bounds):
        """Upper bounds on inputs that can reach outputs within ``out_bounds``."""
        return tuple(1 if t.fixed_dim else INF for t in self.dom)

    def photon_gain(self, in_bounds):
        """Most photons the box can add to quantum mode wires, or ``None`` if unknown."""
        if self.number_preserving or not any(t == WireType.QMODE for t in self.cod):
            return 0
        return None

    def to_array(self, in_caps, out_caps, fwd_caps=None):
        """Dense tensor of shape ``in_caps + out_caps``.

        ``fwd_caps`` are the forward light-cone caps of the outputs; an
        emitted transition beyond them is an inference bug and raises
        :class:`CapOverflow`.  Transitions beyond ``out_caps`` (but inside
        ``fwd_caps``) cannot reach the diagram's outputs and are dropped.
        """
        from .errors import CapOverflow

        in_caps, out_caps = tuple(in_caps), tuple(out_caps)
        arr = np.zeros(in_caps + out_caps, dtype=complex)
        gen_caps = tuple(fwd_caps) if fwd_caps is not None else out_caps
        for inp in np.ndindex(*in_caps):
            for out, amp in self.transitions(inp, gen_caps):
                if fwd_caps is not None and any(o >= c for o, c in zip(out, fwd_caps)):
                    raise CapOverflow(f"{self!r}: output {out} exceeds caps {fwd_caps}")
                if any(o >= c for o, c in zip(out, out_caps)):
                    continue
                arr[inp + tuple(out)] += amp
        return arr

    def dagger(self):
        return DaggerBox(self)

    def conjugate(self):
        return ConjugateBox(self)

    @property
    def is_channel(self):
        return False

    # parameters ---------------------------------------------------------

    @property
    def free_symbols(self):
        return {p for p in self.params if isinstance(p, Symbol)}

    def subs(self, bindings):
        if not self.free_symbols:
            return self
        return self._with_params(tuple(resolve(p, bindings) for p in self.params))

    def _with_params(self, params):
        raise NotImplementedError(f"{type(self).__name__} cannot rebind parameters")

    def diff(self, symbol):
        """Derivative as a Diagram or DiagramSum, ``None`` if independent."""
        if symbol not in self.free_symbols:
            return None
        raise NotImplementedError(f"{self.name} is not differentiable")

    def inflate(self, d):
        if d == 1 or not any(t == WireType.QMODE for t in self.dom @ self.cod):
            return Diagram.from_box(self)
        raise InflationUnsupported(f"cannot inflate {self!r} on qmode wires")

    # sugar ----------------------------------------------------------------

    def to_diagram(self):
        return Diagram.from_box(self)

    def __rshift__(self, other):
        return self.to_diagram() >> other

    def __rrshift__(self, other):
        return as_diagram(other) >> self.to_diagram()

    def __matmul__(self, other):
        return self.to_diagram() @ other

    def __rmatmul__(self, other):
        return as_diagram(other) @ self.to_diagram()

    def __add__(self, other):
        return self.to_diagram() + other

    def __radd__(self, other):
        return as_diagram(other) + self.to_diagram()

    def __mul__(self, c):
        return self.to_diagram() * c

    __rmul__ = __mul__

    def __call__(self, *wires):
        return self.to_diagram()(*wires)

    def eval(self, *args, **kwargs):
        return self.to_diagram().eval(*args, **kwargs)

    def inflate_diagram(self, d):
        return self.to_diagram().inflate(d)


class DaggerBox(Box):
    """Conjugate transpose of another box."""

    def __init__(self, inner: Box):
        if getattr(inner, "daggerable", True) is False:
            raise DaggerUndefined(f"{inner!r} cannot be daggered")
        super().__init__(inner.name + "†", inner.cod, inner.dom, inner.params)
        self.inner = inner
        self.number_preserving = inner.number_preserving

    def _payload(self):
        return (self.inner._key(),)

    def dagger(self):
        return self.inner

    def forward_bounds(self, in_bounds):
        return self.inner.backward_bounds(in_bounds)

    def backward_bounds(self, out_bounds):
        return self.inner.forward_bounds(out_bounds)

    def to_array(self, in_caps, out_caps, fwd_caps=None):
        arr = self.inner.to_array(tuple(out_caps), tuple(in_caps))
        k = len(out_caps)
        return arr.transpose(list(range(k, arr.ndim)) + list(range(k))).conj()

    def transitions(self, inp, out_caps=None):
        if out_caps is None:
            out_caps = tuple(int(b) + 1 for b in self.forward_bounds(inp))
        in_caps = tuple(i + 1 for i in inp)
        arr = self.to_array(in_caps, out_caps)
        col = arr[tuple(inp)]
        for out in zip(*np.nonzero(col)):
            yield BasisTransition(tuple(int(o) for o in out), complex(col[out]))

    @property
    def free_symbols(self):
        return self.inner.free_symbols

    def subs(self, bindings):
        inner = self.inner.subs(bindings)
        return self if inner is self.inner else inner.dagger()

    def diff(self, symbol):
        d = self.inner.diff(symbol)
        return None if d is None else d.dagger()

    def inflate(self, d):
        return self.inner.inflate(d).dagger()

    @property
    def is_channel(self):
        return self.inner.is_channel


class ConjugateBox(Box):
    """Elementwise complex conjugate of another box."""

    def __init__(self, inner: Box):
        super().__init__(inner.name + "*", inner.dom, inner.cod, inner.params)
        self.inner = inner
        self.number_preserving = inner.number_preserving

    def photon_gain(self, in_bounds):
        return self.inner.photon_gain(in_bounds)

    def _payload(self):
        return (self.inner._key(),)

    def conjugate(self):
        return self.inner

    def forward_bounds(self, in_bounds):
        return self.inner.forward_bounds(in_bounds)

    def backward_bounds(self, out_bounds):
        return self.inner.backward_bounds(out_bounds)

    def to_array(self, in_caps, out_caps, fwd_caps=None):
        return self.inner.to_array(in_caps, out_caps, fwd_caps).conj()

    def transitions(self, inp, out_caps=None):
        for out, amp in self.inner.transitions(inp, out_caps):
            yield BasisTransition(out, complex(amp).conjugate())

    @property
    def free_symbols(self):
        return self.inner.free_symbols

    def subs(self, bindings):
        inner = self.inner.subs(bindings)
        return self if inner is self.inner else inner.conjugate()

    def diff(self, symbol):
        d = self.inner.diff(symbol)
        return None if d is None else d.conjugate()

    def inflate(self, d):
        return self.inner.inflate(d).conjugate()


# ---------------------------------------------------------------------------
# named-wire builder


_BUILDER = contextvars.ContextVar("photonet_builder", default=None)


class Wire:
    """A handle on a wire inside :meth:`Diagram.from_callable`."""

    __slots__ = ("builder", "id", "type")

    def __init__(self, builder, wid, wtype):
        self.builder, self.id, self.type = builder, wid, wtype

    def __repr__(self):
        return f"Wire({self.id}: {self.type.value})"


class _Builder:
    def __init__(self):
        self.ops = []
        self.wtype = {}
        self.scalars = []
        self.live = set()
        self.next = 0

    def fresh(self, t):
        w = self.next
        self.next += 1
        self.wtype[w] = t
        self.live.add(w)
        return Wire(self, w, t)

    def apply(self, d: "Diagram", wires):
        if len(wires) != len(d.dom):
            raise TypeMismatch(f"{d!r} takes {len(d.dom)} wires, got {len(wires)}")
        seen = set()
        for i, (w, t) in enumerate(zip(wires, d.dom)):
            if not isinstance(w, Wire) or w.builder is not self:
                raise TypeMismatch(f"argument {i} is not a wire of this diagram")
            if w.id not in self.live or w.id in seen:
                raise WireReuse(f"wire {w.id} is used twice")
            if w.type != t:
                raise TypeMismatch(f"argument {i}: expected {t.value}, got {w.type.value}")
            seen.add(w.id)
        self.live -= seen
        sub = {src: w.id for src, w in zip(d.inputs, wires)}

        def f(x):
            if x not in sub:
                sub[x] = self.fresh(d.wtype[x]).id
            return sub[x]

        for box, ins, outs in d.ops:
            ins = tuple(f(x) for x in ins)
            for x in ins:
                self.live.discard(x)
            self.ops.append(Op(box, ins, tuple(f(x) for x in outs)))
        outs = [f(x) for x in d.outputs]
        self.live.update(outs)
        self.scalars.extend(d.scalars)
        res = tuple(Wire(self, x, self.wtype[x]) for x in outs)
        return res[0] if len(res) == 1 else res


def _flatten_wires(res):
    if res is None:
        return []
    if isinstance(res, Wire):
        return [res]
    out = []
    for r in res:
        out.extend(_flatten_wires(r))
    return out


# ---------------------------------------------------------------------------


class Diagram:
    """An immutable port-graph diagram."""

    __slots__ = ("dom", "cod", "inputs", "outputs", "ops", "wtype", "scalars")

    def __init__(self, dom, cod, inputs, outputs, ops, wtype, scalars=()):
        self.dom = as_ty(dom)
        self.cod = as_ty(cod)
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.ops = tuple(ops)
        self.wtype = dict(wtype)
        self.scalars = tuple(complex(s) for s in scalars)

    # constructors -------------------------------------------------------

    @classmethod
    def id(cls, ty=Ty()):
        ty = as_ty(ty)
        ids = tuple(range(len(ty)))
        return cls(ty, ty, ids, ids, (), dict(zip(ids, ty)))

    @classmethod
    def from_box(cls, box: Box):
        n, m = len(box.dom), len(box.cod)
        ins, outs = tuple(range(n)), tuple(range(n, n + m))
        wtype = dict(zip(ins, box.dom))
        wtype.update(zip(outs, box.cod))
        return cls(box.dom, box.cod, ins, outs, (Op(box, ins, outs),), wtype)

    @classmethod
    def scalar(cls, c):
        return cls(Ty(), Ty(), (), (), (), {}, (c,))

    @classmethod
    def swap(cls, left, right):
        left, right = as_ty(left), as_ty(right)
        ty = left @ right
        ids = tuple(range(len(ty)))
        outs = ids[len(left):] + ids[:len(left)]
        return cls(ty, right @ left, ids, outs, (), dict(zip(ids, ty)))

    @classmethod
    def permutation(cls, perm, dom):
        """Wiring with output ``j`` taken from input ``perm[j]``."""
        dom = as_ty(dom)
        if sorted(perm) != list(range(len(dom))):
            raise ValueError(f"not a permutation: {perm}")
        ids = tuple(range(len(dom)))
        return cls(dom, Ty(dom[p] for p in perm), ids, tuple(perm), (), dict(zip(ids, dom)))

    @classmethod
    def from_callable(cls, dom, cod):
        """Decorator building a diagram from a function on named wires.

        The function receives one :class:`Wire` per factor of ``dom`` and
        must return the wires of ``cod`` in order, using each wire exactly
        once.  Boxes and diagrams are applied by calling them on wires.
        """
        dom, cod = as_ty(dom), as_ty(cod)

        def decorate(fn):
            b = _Builder()
            ins = [b.fresh(t) for t in dom]
            token = _BUILDER.set(b)
            try:
                res = fn(*ins)
            finally:
                _BUILDER.reset(token)
            outs = _flatten_wires(res)
            seen = set()
            for w in outs:
                if w.builder is not b:
                    raise TypeMismatch("returned wire belongs to another diagram")
                if w.id not in b.live or w.id in seen:
                    raise WireReuse(f"wire {w.id} returned after being consumed")
                seen.add(w.id)
            left = b.live - seen
            if left:
                raise WireDropped(f"{len(left)} wire(s) neither consumed nor returned")
            got = Ty(w.type for w in outs)
            if got != cod:
                raise TypeMismatch(f"returned {got!r}, expected {cod!r}")
            return cls(dom, cod, [w.id for w in ins], [w.id for w in outs],
                       b.ops, b.wtype, b.scalars)

        return decorate

    # composition --------------------------------------------------------

    def _next_id(self):
        return max(self.wtype, default=-1) + 1

    def then(self, *others):
        """Sequential composition; ``Diagram.then(a, b, c)`` also works."""
        d = as_diagram(self)
        for o in others:
            d = d._then(as_diagram(o))
        return d

    def _then(self, other):
        if self.cod != other.dom:
            i = _first_mismatch(self.cod, other.dom)
            raise TypeMismatch(
                f"cannot compose: codomain {self.cod!r} vs domain {other.dom!r} "
                f"(first difference at factor {i})")
        off = self._next_id()
        sub = {w + off: v for w, v in zip(other.inputs, self.outputs)}

        def f(w):
            w += off
            return sub.get(w, w)

        ops = self.ops + tuple(Op(b, tuple(map(f, i)), tuple(map(f, o))) for b, i, o in other.ops)
        wtype = dict(self.wtype)
        for w, t in other.wtype.items():
            wtype.setdefault(f(w), t)
        return Diagram(self.dom, other.cod, self.inputs, tuple(map(f, other.outputs)),
                       ops, wtype, self.scalars + other.scalars)

    def tensor(self, *others):
        """Parallel composition; ``Diagram.tensor(a, b, c)`` also works."""
        d = as_diagram(self)
        for o in others:
            d = d._tensor(as_diagram(o))
        return d

    def _tensor(self, other):
        off = self._next_id()

        def f(w):
            return w + off

        ops = self.ops + tuple(Op(b, tuple(map(f, i)), tuple(map(f, o))) for b, i, o in other.ops)
        wtype = dict(self.wtype)
        wtype.update({f(w): t for w, t in other.wtype.items()})
        return Diagram(self.dom @ other.dom, self.cod @ other.cod,
                       self.inputs + tuple(map(f, other.inputs)),
                       self.outputs + tuple(map(f, other.outputs)),
                       ops, wtype, self.scalars + other.scalars)

    def __rshift__(self, other):
        if isinstance(other, DiagramSum):
            return DiagramSum([self]) >> other
        return self.then(other)

    def __rrshift__(self, other):
        return as_diagram(other).then(self)

    def __matmul__(self, other):
        if isinstance(other, DiagramSum):
            return DiagramSum([self]) @ other
        return self.tensor(other)

    def __rmatmul__(self, other):
        return as_diagram(other).tensor(self)

    def __pow__(self, n):
        return Diagram.id() if n == 0 else self.tensor(*[self] * (n - 1))

    def __add__(self, other):
        return DiagramSum([self]) + other

    def __radd__(self, other):
        if other == 0:
            return DiagramSum([self])
        return as_diagram(other) + self

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return Diagram(self.dom, self.cod, self.inputs, self.outputs, self.ops,
                       self.wtype, self.scalars + (c,))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __call__(self, *wires):
        b = _BUILDER.get()
        if b is None:
            raise TypeError("diagrams can only be called on wires inside from_callable")
        return b.apply(self, wires)

    # structure ----------------------------------------------------------

    def dagger(self):
        ops = tuple(Op(b.dagger(), o, i) for b, i, o in reversed(self.ops))
        return Diagram(self.cod, self.dom, self.outputs, self.inputs, ops, self.wtype,
                       tuple(c.conjugate() for c in self.scalars))

    def conjugate(self):
        ops = tuple(Op(b.conjugate(), i, o) for b, i, o in self.ops)
        return Diagram(self.dom, self.cod, self.inputs, self.outputs, ops, self.wtype,
                       tuple(c.conjugate() for c in self.scalars))

    @property
    def boxes(self):
        return [op.box for op in self.ops]

    @property
    def scalar_factor(self) -> complex:
        return reduce(lambda a, b: a * b, self.scalars, 1 + 0j)

    def is_channel(self):
        return any(op.box.is_channel for op in self.ops)

    def check(self):
        """Re-verify the port-graph invariants; raise on violation."""
        produced = {}
        consumed = {}
        for w in self.inputs:
            if w in produced:
                raise WireReuse(f"input wire {w} repeated")
            produced[w] = "dom"
        for k, (box, ins, outs) in enumerate(self.ops):
            for i, (w, t) in enumerate(zip(ins, box.dom)):
                if w not in produced:
                    raise TypeMismatch(f"op {k} ({box!r}) reads wire {w} before it is produced")
                if w in consumed:
                    raise WireReuse(f"wire {w} consumed twice")
                if self.wtype[w] != t:
                    raise TypeMismatch(f"op {k} ({box!r}) input {i}: {self.wtype[w]} vs {t}")
                consumed[w] = k
            if len(ins) != len(box.dom) or len(outs) != len(box.cod):
                raise TypeMismatch(f"op {k} ({box!r}) has wrong arity")
            for w, t in zip(outs, box.cod):
                if w in produced:
                    raise WireReuse(f"wire {w} produced twice")
                if self.wtype[w] != t:
                    raise TypeMismatch(f"op {k} ({box!r}) output type mismatch on wire {w}")
                produced[w] = k
        for w in self.outputs:
            if w not in produced or w in consumed:
                raise WireReuse(f"output wire {w} is not free")
            consumed[w] = "cod"
        if set(produced) != set(consumed):
            raise WireDropped("some wires are never consumed")
        if Ty(self.wtype[w] for w in self.inputs) != self.dom:
            raise TypeMismatch("domain does not match input wires")
        if Ty(self.wtype[w] for w in self.outputs) != self.cod:
            raise TypeMismatch("codomain does not match output wires")
        return True

    def _canonical(self):
        ren = {}

        def r(w):
            if w not in ren:
                ren[w] = len(ren)
            return ren[w]

        ins = tuple(map(r, self.inputs))
        ops = tuple((b, tuple(map(r, i)), tuple(map(r, o))) for b, i, o in self.ops)
        outs = tuple(map(r, self.outputs))
        scal = tuple(sorted((c.real, c.imag) for c in self.scalars))
        return (self.dom, self.cod, ins, ops, outs, scal)

    def __eq__(self, other):
        if isinstance(other, Box):
            other = other.to_diagram()
        return isinstance(other, Diagram) and self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def __repr__(self):
        body = " >> ".join(repr(op.box) for op in self.ops) or f"Id({self.dom!r})"
        if self.scalars:
            body += f" * {self.scalar_factor:.6g}"
        return f"Diagram[{self.dom!r} -> {self.cod!r}]({body})"

    # parameters ---------------------------------------------------------

    @property
    def free_symbols(self):
        out = set()
        for op in self.ops:
            out |= op.box.free_symbols
        return out

    def subs(self, *args, **kwargs):
        """Bind symbols: ``subs({s: 0.1})``, ``subs((s, 0.1), ...)`` or ``subs(s=0.1)``."""
        bindings = _bindings_from(args, kwargs)
        unknown = set(bindings) - self.free_symbols
        if unknown:
            _report_unknown(unknown)
        ops = tuple(Op(b.subs(bindings), i, o) for b, i, o in self.ops)
        return Diagram(self.dom, self.cod, self.inputs, self.outputs, ops, self.wtype, self.scalars)

    def lambdify(self, *symbols):
        symbols = [s if isinstance(s, Symbol) else Symbol(str(s)) for s in symbols]
        return lambda *xs: self.subs(dict(zip(symbols, xs)))

    def _replace_op(self, k, d: "Diagram") -> "Diagram":
        box, ins, outs = self.ops[k]
        off = self._next_id()
        sub = dict(zip(d.inputs, ins))
        sub.update(zip(d.outputs, outs))

        def f(w):
            return sub.get(w, w + off)

        new = tuple(Op(b, tuple(map(f, i)), tuple(map(f, o))) for b, i, o in d.ops)
        wtype = dict(self.wtype)
        for w, t in d.wtype.items():
            wtype.setdefault(f(w), t)
        ops = self.ops[:k] + new + self.ops[k + 1:]
        return Diagram(self.dom, self.cod, self.inputs, self.outputs, ops, wtype,
                       self.scalars + d.scalars)

    def grad(self, symbol) -> "DiagramSum":
        """Derivative by the product rule over occurrences of ``symbol``."""
        if not isinstance(symbol, Symbol):
            symbol = Symbol(str(symbol))
        terms = []
        for k, op in enumerate(self.ops):
            if symbol not in op.box.free_symbols:
                continue
            d = op.box.diff(symbol)
            if d is None:
                continue
            for t in as_sum(d).terms:
                terms.append(self._replace_op(k, t))
        if not terms:
            return DiagramSum([self * 0])
        return DiagramSum(terms)

    # evaluation ---------------------------------------------------------

    def inflate(self, d: int) -> "Diagram":
        """Replace each qmode wire by ``d`` copies carrying the internal state."""
        from .channels import inflate
        return inflate(self, d)

    def double(self) -> "Diagram":
        from .channels import double
        return double(self)

    def eval(self, backend="tn", **kwargs):
        from .evaluate import evaluate
        return evaluate(self, backend=backend, **kwargs)

    def feedback(self, dom, cod, mem, initial_state):
        from .streams import feedback
        return feedback(self, dom=dom, cod=cod, mem=mem, initial_state=initial_state)

    @staticmethod
    def delay(ty, initial_state):
        from .streams import delay
        return delay(ty, initial_state)


class DiagramSum:
    """A formal sum of diagrams sharing one boundary."""

    def __init__(self, terms):
        terms = [as_diagram(t) for t in terms]
        if not terms:
            raise EmptySum("a sum needs at least one term")
        dom, cod = terms[0].dom, terms[0].cod
        for t in terms[1:]:
            if t.dom != dom or t.cod != cod:
                raise TypeMismatch(f"sum terms disagree: {dom!r}->{cod!r} vs {t.dom!r}->{t.cod!r}")
        self.terms = tuple(terms)
        self.dom, self.cod = dom, cod

    def __repr__(self):
        return " + ".join(map(repr, self.terms))

    def __add__(self, other):
        if isinstance(other, Number) and other == 0:
            return self
        return DiagramSum(self.terms + as_sum(other).terms)

    def __radd__(self, other):
        if isinstance(other, Number) and other == 0:
            return self
        return as_sum(other) + self

    def __rshift__(self, other):
        other = as_sum(other)
        return DiagramSum([a >> b for a in self.terms for b in other.terms])

    def __rrshift__(self, other):
        return as_sum(other) >> self

    def then(self, *others):
        out = self
        for o in others:
            out = out >> o
        return out

    def __matmul__(self, other):
        other = as_sum(other)
        return DiagramSum([a @ b for a in self.terms for b in other.terms])

    def __rmatmul__(self, other):
        return as_sum(other) @ self

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return DiagramSum([t * c for t in self.terms])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        return isinstance(other, DiagramSum) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def dagger(self):
        return DiagramSum([t.dagger() for t in self.terms])

    def conjugate(self):
        return DiagramSum([t.conjugate() for t in self.terms])

    @property
    def free_symbols(self):
        out = set()
        for t in self.terms:
            out |= t.free_symbols
        return out

    def subs(self, *args, **kwargs):
        bindings = _bindings_from(args, kwargs)
        unknown = set(bindings) - self.free_symbols
        if unknown:
            _report_unknown(unknown)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnknownSymbolWarning)
            return DiagramSum([t.subs(bindings) for t in self.terms])

    def lambdify(self, *symbols):
        symbols = [s if isinstance(s, Symbol) else Symbol(str(s)) for s in symbols]
        return lambda *xs: self.subs(dict(zip(symbols, xs)))

    def grad(self, symbol):
        out = []
        for t in self.terms:
            out.extend(t.grad(symbol).terms)
        return DiagramSum(out)

    def inflate(self, d):
        return DiagramSum([t.inflate(d) for t in self.terms])

    def is_channel(self):
        return any(t.is_channel() for t in self.terms)

    def eval(self, backend="tn", **kwargs):
        from .evaluate import evaluate
        return evaluate(self, backend=backend, **kwargs)


class UnknownSymbolWarning(UserWarning):
    pass


def _bindings_from(args, kwargs):
    bindings = {}
    for a in args:
        if isinstance(a, dict):
            bindings.update(a)
        elif isinstance(a, tuple) and len(a) == 2:
            bindings[a[0]] = a[1]
        else:
            raise TypeError(f"cannot interpret binding {a!r}")
    bindings.update(kwargs)
    return normalize_bindings(bindings)


def _report_unknown(unknown):
    names = ", ".join(sorted(s.name for s in unknown))
    if STRICT_SUBS:
        raise UnknownSymbol(names)
    warnings.warn(f"binding for symbols not in diagram: {names}", UnknownSymbolWarning, stacklevel=3)


def as_diagram(x) -> Diagram:
    if isinstance(x, Diagram):
        return x
    if isinstance(x, Box):
        return x.to_diagram()
    if isinstance(x, (Ty, WireType)):
        return Diagram.id(as_ty(x))
    if isinstance(x, DiagramSum):
        raise TypeError("expected a single diagram, got a sum")
    raise TypeError(f"cannot convert {type(x).__name__} to a diagram")


def as_sum(x) -> DiagramSum:
    if isinstance(x, DiagramSum):
        return x
    return DiagramSum([as_diagram(x)])


def Id(ty=Ty()) -> Diagram:
    """Identity; an integer ``n`` means ``n`` qubits."""
    if isinstance(ty, int):
        ty = Ty(WireType.QUBIT) ** ty
    return Diagram.id(ty)


def Swap(left, right) -> Diagram:
    return Diagram.swap(left, right)


class _ScalarMaker:
    """``Scalar(c)`` is the closed diagram with weight ``c``."""

    def __call__(self, c):
        return Diagram.scalar(c)


Scalar = _ScalarMaker()


def exp_i2pi(x):
    return cmath.exp(2j * math.pi * x)
