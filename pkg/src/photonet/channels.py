"""Classical-quantum channels, doubling and the inflation functor.

A :class:`Channel` is given by one pure Kraus diagram whose trailing outputs
form an environment that is traced out.  :func:`double` lowers a diagram
containing channels to a pure diagram on doubled wires: every quantum wire
becomes a (ket, bra) pair, every classical wire stays a single index shared
by the two copies.
"""

from __future__ import annotations

import math

import numpy as np

from .diagram import INF, BasisTransition, Box, Diagram, Op, as_diagram
from .errors import NotAState, RangeError, ShapeMismatch
from .generators.classical import Add, Threshold
from .generators.optics import TBS
from .generators.zw import Create
from .generators.zx import DenseBox
from .types import Ty, WireType, as_ty, qmode, qubit


def _qty(ty):
    """Accept an int as a number of qubits, as in ``Discard(2)``."""
    return qubit ** ty if isinstance(ty, int) else as_ty(ty)


class Channel(Box):
    """A CP map given by a Kraus diagram with ``env`` as trailing outputs."""

    daggerable = False

    def __init__(self, name, kraus, env=Ty(), params=()):
        kraus = as_diagram(kraus)
        env = as_ty(env)
        k = len(kraus.cod) - len(env)
        if k < 0 or kraus.cod[k:] != env:
            raise ShapeMismatch(f"environment {env!r} is not a tail of {kraus.cod!r}")
        self.kraus, self.env = kraus, env
        super().__init__(name, kraus.dom, kraus.cod[:k], params)

    def _payload(self):
        return (self.kraus, self.env)

    @property
    def is_channel(self):
        return True

    def forward_bounds(self, in_bounds):
        from .tn.dims import diagram_forward_bounds

        return diagram_forward_bounds(self.kraus, tuple(in_bounds))[:len(self.cod)]

    def backward_bounds(self, out_bounds):
        from .tn.dims import diagram_backward_bounds

        return diagram_backward_bounds(self.kraus, tuple(out_bounds) + (INF,) * len(self.env))

    def photon_gain(self, in_bounds):
        from .tn.dims import diagram_photon_gain

        return diagram_photon_gain(self.kraus, tuple(in_bounds))

    def kraus_array(self, in_caps, out_caps):
        """Kraus tensor with axes ``(inputs..., outputs..., environment...)``."""
        from .evaluate import dense_array

        return dense_array(self.kraus, tuple(in_caps), tuple(out_caps) + (None,) * len(self.env))

    def to_array(self, in_caps, out_caps, fwd_caps=None):
        raise TypeError(f"channel {self.name} has no pure tensor; evaluate the doubled diagram")

    def conjugate(self):
        return Channel(self.name, self.kraus.conjugate(), self.env, self.params)

    @property
    def free_symbols(self):
        return self.kraus.free_symbols

    def subs(self, bindings):
        return Channel(self.name, self.kraus.subs(bindings), self.env) if self.free_symbols else self

    def inflate(self, d):
        env = Ty([f for t in self.env for f in ([t] * d if t == WireType.QMODE else [t])])
        return Channel(self.name, self.kraus.inflate(d), env, self.params).to_diagram()


class _Delta(Box):
    """Basis-preserving map between a quantum type and its classical twin."""

    def __init__(self, name, dom, cod):
        super().__init__(name, dom, cod)

    def transitions(self, inp, out_caps=None):
        yield BasisTransition(tuple(inp), 1.0)

    def forward_bounds(self, in_bounds):
        return tuple(in_bounds)

    def backward_bounds(self, out_bounds):
        return tuple(out_bounds)

    def conjugate(self):
        return self


class MeasureKraus(_Delta):
    def __init__(self, ty):
        ty = as_ty(ty)
        super().__init__("measure", ty, ty.measured())

    def dagger(self):
        return EncodeKraus(self.cod)


class EncodeKraus(_Delta):
    def __init__(self, ty):
        ty = as_ty(ty)
        super().__init__("encode", ty, ty.encoded())

    def dagger(self):
        return MeasureKraus(self.cod)

    def photon_gain(self, in_bounds):
        return sum(b for b, t in zip(in_bounds, self.cod) if t == WireType.QMODE)


class MeasureChannel(Channel):
    """Computational-basis (occupation-number) measurement of quantum wires."""

    def __init__(self, ty):
        self.ty = ty = as_ty(ty)
        super().__init__("Measure", Diagram.tensor(Diagram.id(), *[MeasureKraus(t) for t in ty]))

    def _payload(self):
        return (self.ty,)

    def conjugate(self):
        return self

    def subs(self, bindings):
        return self

    def inflate(self, d):
        # each internal copy is read out separately; the detector reports the sum
        if d == 1 or WireType.QMODE not in self.ty:
            return self.to_diagram()
        adders = [Add(d) if t == WireType.QMODE else Diagram.id(t.measured()) for t in self.ty]
        return Measure(inflated_type(self.ty, d)) >> Diagram.tensor(Diagram.id(), *adders)


def Measure(ty=1):
    """Computational-basis (occupation-number) measurement of quantum wires.

    Built wire by wire so that doubling yields small tensors.
    """
    return Diagram.tensor(Diagram.id(), *[MeasureChannel(t) for t in _qty(ty)])


def Encode(ty=1):
    """Prepare quantum wires in the basis state given by classical data."""
    ty = as_ty(ty) if not isinstance(ty, int) else Ty(WireType.BIT) ** ty
    return Diagram.tensor(Diagram.id(), *[Channel("Encode", EncodeKraus(t)) for t in ty])


def Discard(ty=1):
    """Trace out (or marginalise) the given wires."""
    return Diagram.tensor(Diagram.id(), *[Channel("Discard", Diagram.id(t), env=t) for t in _qty(ty)])


def NumberResolvingMeasurement(n=1):
    return Measure(qmode ** n)


def PhotonThresholdMeasurement(n=1):
    """Click detectors: 1 when at least one photon arrives."""
    return Measure(qmode ** n) >> Diagram.tensor(Diagram.id(), *[Threshold()] * n)


def PhotonLoss(p):
    """Each photon survives with probability ``p``.

    Realised as a beamsplitter of amplitude transmissivity ``sqrt(p)``
    coupling the mode to a vacuum environment mode that is discarded.
    """
    if not 0 <= p <= 1:
        raise RangeError(f"transmission probability {p} outside [0, 1]")
    theta = math.acos(math.sqrt(p)) / (2 * math.pi)
    kraus = Diagram.id(qmode) @ Create(0) >> TBS(theta)
    return Channel("PhotonLoss", kraus, env=qmode, params=(p,))


def _pauli_channel(name, p, pauli):
    if not 0 <= p <= 1:
        raise RangeError(f"error probability {p} outside [0, 1]")
    K0 = math.sqrt(1 - p) * np.eye(2)
    K1 = math.sqrt(p) * np.asarray(pauli, dtype=complex)
    arr = np.zeros((2, 2, 2), dtype=complex)  # (in, out, env)
    arr[:, :, 0] = K0.T
    arr[:, :, 1] = K1.T
    return Channel(name, DenseBox(name + "Kraus", qubit, qubit @ qubit, arr), env=qubit, params=(p,))


def BitFlipError(p):
    """``rho -> (1-p) rho + p X rho X``."""
    return _pauli_channel("BitFlip", p, [[0, 1], [1, 0]])


def DephasingError(p):
    """``rho -> (1-p) rho + p Z rho Z``."""
    return _pauli_channel("Dephasing", p, [[1, 0], [0, -1]])


def ZMeasurementDR():
    """Dual-rail Z-basis readout: count photons on both rails."""
    return NumberResolvingMeasurement(2)


def XMeasurementDR():
    """Dual-rail X-basis readout: Hadamard beamsplitter, then count."""
    from .generators.optics import HadamardBS

    return HadamardBS() >> NumberResolvingMeasurement(2)


# ---------------------------------------------------------------------------
# doubling


def doubled_type(ty):
    out = []
    for t in as_ty(ty):
        out += [t, t] if t.quantum else [t]
    return Ty(out)


def _split(values, ty):
    """Split doubled-wire values into (ket side, bra side)."""
    ket, bra, k = [], [], 0
    for t in ty:
        if t.quantum:
            ket.append(values[k])
            bra.append(values[k + 1])
            k += 2
        else:
            ket.append(values[k])
            bra.append(values[k])
            k += 1
    return tuple(ket), tuple(bra)


def _join(ket, bra, ty, combine):
    out = []
    for a, b, t in zip(ket, bra, ty):
        out += [a, b] if t.quantum else [combine(a, b)]
    return tuple(out)


class DoubledBox(Box):
    """``K ⊗ conj(K)`` with classical legs shared and the environment traced."""

    def __init__(self, box: Box):
        self.box = box
        super().__init__(f"Double({box.name})", doubled_type(box.dom), doubled_type(box.cod))

    def _payload(self):
        return (self.box._key(),)

    def __repr__(self):
        return f"Double({self.box!r})"

    def forward_bounds(self, in_bounds):
        k, b = _split(in_bounds, self.box.dom)
        return _join(self.box.forward_bounds(k), self.box.forward_bounds(b), self.box.cod, min)

    def backward_bounds(self, out_bounds):
        k, b = _split(out_bounds, self.box.cod)
        return _join(self.box.backward_bounds(k), self.box.backward_bounds(b), self.box.dom, min)

    def photon_gain(self, in_bounds):
        return self.box.photon_gain(_split(in_bounds, self.box.dom)[0])

    def _kraus(self, in_caps, out_caps):
        if isinstance(self.box, Channel):
            return self.box.kraus_array(in_caps, out_caps)
        return self.box.to_array(in_caps, out_caps)

    def to_array(self, in_caps, out_caps, fwd_caps=None):
        dom, cod = self.box.dom, self.box.cod
        ik, ib = _split(in_caps, dom)
        ok, ob = _split(out_caps, cod)
        K = self._kraus(ik, ok)
        Kb = K if (ik, ok) == (ib, ob) else self._kraus(ib, ob)
        n = len(dom) + len(cod)
        env_k, env_b = K.shape[n:], Kb.shape[n:]
        if env_k != env_b:
            shape = tuple(max(a, b) for a, b in zip(env_k, env_b))
            K = _pad(K, K.shape[:n] + shape)
            Kb = _pad(Kb, Kb.shape[:n] + shape)
        # einsum labels: one per doubled axis, env shared between copies
        lk, lb, out = [], [], []
        nxt = 0
        for t in tuple(dom) + tuple(cod):
            if t.quantum:
                lk.append(nxt)
                lb.append(nxt + 1)
                out += [nxt, nxt + 1]
                nxt += 2
            else:
                lk.append(nxt)
                lb.append(nxt)
                out.append(nxt)
                nxt += 1
        for _ in range(K.ndim - n):
            lk.append(nxt)
            lb.append(nxt)
            nxt += 1
        return np.einsum(K, lk, Kb.conj(), lb, out)


def _pad(arr, shape):
    out = np.zeros(shape, dtype=arr.dtype)
    out[tuple(slice(0, s) for s in arr.shape)] = arr
    return out


def double(d, return_map=False):
    """Pure diagram on doubled wires evaluating the CP map of ``d``.

    With ``return_map`` also returns the map from each original wire to its
    doubled wires (ket, bra) or (shared,).
    """
    d = as_diagram(d)
    wmap, wtype = {}, {}
    nxt = 0
    for w in sorted(d.wtype):
        t = d.wtype[w]
        if t.quantum:
            wmap[w] = (nxt, nxt + 1)
            wtype[nxt] = wtype[nxt + 1] = t
            nxt += 2
        else:
            wmap[w] = (nxt,)
            wtype[nxt] = t
            nxt += 1

    def flat(ws):
        return tuple(x for w in ws for x in wmap[w])

    ops = []
    for b, i, o in d.ops:
        legs = b.dom @ b.cod
        if isinstance(b, Channel) or not (legs.quantum or getattr(b, "deterministic", False)):
            ops.append(Op(DoubledBox(b), flat(i), flat(o)))
        elif legs.quantum:
            # independent ket and bra copies keep the tensors small
            ket = tuple(wmap[w][0] for w in i), tuple(wmap[w][0] for w in o)
            bra = tuple(wmap[w][1] for w in i), tuple(wmap[w][1] for w in o)
            ops.append(Op(b, *ket))
            ops.append(Op(b.conjugate(), *bra))
        else:
            # 0/1 classical tensors satisfy K * conj(K) == K
            ops.append(Op(b, flat(i), flat(o)))
    scalars = [abs(c) ** 2 for c in d.scalars]
    dd = Diagram(doubled_type(d.dom), doubled_type(d.cod), flat(d.inputs), flat(d.outputs),
                 ops, wtype, scalars)
    return (dd, wmap) if return_map else dd


# ---------------------------------------------------------------------------
# inflation


def inflated_type(ty, d):
    return Ty([f for t in as_ty(ty) for f in ([t] * d if t == WireType.QMODE else [t])])


def inflate(diagram, d: int) -> Diagram:
    """Functor replacing each qmode wire by ``d`` internal copies."""
    diagram = as_diagram(diagram)
    if d < 1:
        raise ValueError("inflation dimension must be positive")
    dom, cod = inflated_type(diagram.dom, d), inflated_type(diagram.cod, d)

    @Diagram.from_callable(dom=dom, cod=cod)
    def build(*ws):
        wmap, k = {}, 0
        for w in diagram.inputs:
            n = d if diagram.wtype[w] == WireType.QMODE else 1
            wmap[w] = list(ws[k:k + n])
            k += n
        for box, ins, outs in diagram.ops:
            args = [x for w in ins for x in wmap[w]]
            res = box.inflate(d)(*args)
            res = [res] if not isinstance(res, tuple) else list(res)
            k = 0
            for w in outs:
                n = d if diagram.wtype[w] == WireType.QMODE else 1
                wmap[w] = res[k:k + n]
                k += n
        for c in diagram.scalars:
            Diagram.scalar(c)()
        return tuple(x for w in diagram.outputs for x in wmap[w])

    return build


# ---------------------------------------------------------------------------


def fidelity(rho, target, tol=1e-8) -> float:
    """``<target| rho |target>`` for a density matrix and a pure target state."""
    rho = np.asarray(rho, dtype=complex)
    target = np.asarray(target, dtype=complex).ravel()
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] != target.size:
        raise ShapeMismatch(f"rho {rho.shape} vs target of size {target.size}")
    if abs(np.linalg.norm(target) - 1) > tol:
        raise NotAState("target is not normalised")
    if abs(np.trace(rho) - 1) > tol:
        raise NotAState(f"trace {np.trace(rho)} differs from 1")
    herm = (rho + rho.conj().T) / 2
    if np.max(np.abs(rho - herm)) > tol or np.linalg.eigvalsh(herm).min() < -tol:
        raise NotAState("density matrix is not positive semidefinite")
    return float(np.real(target.conj() @ rho @ target))


__all__ = [
    "Channel", "Measure", "Encode", "Discard", "NumberResolvingMeasurement",
    "PhotonThresholdMeasurement", "PhotonLoss", "BitFlipError", "DephasingError",
    "ZMeasurementDR", "XMeasurementDR", "double", "doubled_type", "inflate",
    "inflated_type", "fidelity", "DoubledBox", "MeasureKraus", "EncodeKraus",
]
