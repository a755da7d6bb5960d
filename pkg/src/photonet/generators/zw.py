"""ZW-calculus generators on photonic (mode/qmode) wires."""

from __future__ import annotations

from math import factorial, prod, sqrt

import numpy as np

from ..diagram import BasisTransition, Box, Diagram
from ..errors import DimensionMismatch, InflationUnsupported, MissingInternalState, NormError
from ..types import Ty, as_ty, qmode

NORM_TOL = 1e-9


def _compositions(m, n):
    """All ``n``-tuples of nonnegative ints summing to ``m``."""
    if n == 1:
        yield (m,)
        return
    for k in range(m + 1):
        for rest in _compositions(m - k, n - 1):
            yield (k,) + rest


def _photonic(ty):
    ty = as_ty(ty)
    if len(ty) != 1 or not ty[0].photonic:
        raise TypeError("expected a single mode or qmode type")
    return ty


class W(Box):
    """Binomial split ``1 -> n`` (or merge ``n -> 1`` when ``merge=True``).

    Split sends ``|m>`` to the sum over compositions ``k`` of ``m`` with
    amplitude ``sqrt(m! / prod k_i!)``; merge is its adjoint.
    """

    number_preserving = True

    def __init__(self, n, merge=False, ty=qmode):
        if n < 1:
            raise ValueError("W needs at least one leg")
        ty = _photonic(ty)
        self.n, self.merge, self.ty = n, merge, ty
        dom, cod = (ty ** n, ty) if merge else (ty, ty ** n)
        super().__init__("W†" if merge else "W", dom, cod, (n,))

    def __repr__(self):
        return f"W({self.n}){'.dagger()' if self.merge else ''}"

    def transitions(self, inp, out_caps=None):
        if self.merge:
            m = sum(inp)
            yield BasisTransition((m,), sqrt(factorial(m) / prod(factorial(k) for k in inp)))
            return
        m = inp[0]
        for ks in _compositions(m, self.n):
            yield BasisTransition(ks, sqrt(factorial(m) / prod(factorial(k) for k in ks)))

    def forward_bounds(self, in_bounds):
        return (sum(in_bounds),) if self.merge else (in_bounds[0],) * self.n

    def backward_bounds(self, out_bounds):
        return (out_bounds[0],) * self.n if self.merge else (sum(out_bounds),)

    def dagger(self):
        return W(self.n, not self.merge, self.ty)

    def conjugate(self):
        return self

    def inflate(self, d):
        if d == 1:
            return self.to_diagram()
        raise InflationUnsupported("W nodes are not inflated; use linear-optical gates")


def _check_states(states, n_photons):
    if states is None:
        return None
    states = tuple(tuple(complex(x) for x in s) for s in states)
    if len(states) != n_photons:
        raise ValueError(f"{len(states)} internal states for {n_photons} photons")
    dims = {len(s) for s in states}
    if len(dims) > 1:
        raise DimensionMismatch(f"internal states have different dimensions {sorted(dims)}")
    for s in states:
        nrm = float(np.linalg.norm(s))
        if abs(nrm - 1) > NORM_TOL:
            raise NormError(f"internal state {s} has norm {nrm}")
    return states


class Create(Box):
    """Prepare the Fock state with the given occupations.

    ``internal_states`` holds one unit vector per photon, used by
    :meth:`Diagram.inflate` to model distinguishability.
    """

    def __init__(self, *occupations, internal_states=None, ty=qmode):
        if len(occupations) == 1 and isinstance(occupations[0], (list, tuple)):
            occupations = tuple(occupations[0])
        occ = tuple(int(n) for n in occupations)
        if any(n < 0 for n in occ):
            raise ValueError("occupations must be nonnegative")
        ty = _photonic(ty)
        self.occupations, self.ty = occ, ty
        self.internal_states = _check_states(internal_states, sum(occ))
        super().__init__("Create", Ty(), ty ** len(occ), occ)

    def _payload(self):
        return (self.internal_states,)

    def __repr__(self):
        return f"Create{self.occupations}"

    def transitions(self, inp, out_caps=None):
        yield BasisTransition(self.occupations, 1.0)

    def forward_bounds(self, in_bounds):
        return self.occupations

    def photon_gain(self, in_bounds):
        return sum(self.occupations)

    def dagger(self):
        if self.internal_states is not None:
            return super().dagger()
        return Select(*self.occupations, ty=self.ty)

    def conjugate(self):
        if self.internal_states is None:
            return self
        states = [np.conj(s) for s in self.internal_states]
        return Create(*self.occupations, internal_states=states, ty=self.ty)

    def inflate(self, d):
        if d == 1 and (self.internal_states is None or len(self.internal_states[0]) == 1):
            return self.to_diagram()
        return inflate_source(self.occupations, self.internal_states, d, self.ty)


def inflate_source(occupations, states, d, ty=qmode):
    """Create photons spread over ``d`` internal copies per mode."""
    n_ph = sum(occupations)
    if n_ph == 0:
        return Create(*([0] * (len(occupations) * d)), ty=ty).to_diagram()
    if states is None:
        raise MissingInternalState("photons without internal states cannot be inflated")
    if len(states[0]) != d:
        raise DimensionMismatch(f"internal states have dimension {len(states[0])}, not {d}")
    parts = []
    k = 0
    for n in occupations:
        if n == 0:
            parts.append(Create(*([0] * d), ty=ty).to_diagram())
            continue
        mode_states = states[k:k + n]
        k += n
        if any(not np.allclose(s, mode_states[0]) for s in mode_states):
            raise DimensionMismatch("photons sharing a mode must share an internal state")
        s = mode_states[0]
        layer = Diagram.tensor(*[PowerBox(c, ty) for c in s])
        parts.append(Create(n, ty=ty) >> W(d, ty=ty) >> layer)
    return Diagram.tensor(*parts)


class Select(Box):
    """Post-select the given occupations (the effect dual to :class:`Create`)."""

    def __init__(self, *occupations, ty=qmode):
        if len(occupations) == 1 and isinstance(occupations[0], (list, tuple)):
            occupations = tuple(occupations[0])
        occ = tuple(int(n) for n in occupations)
        ty = _photonic(ty)
        self.occupations, self.ty = occ, ty
        super().__init__("Select", ty ** len(occ), Ty(), occ)

    def __repr__(self):
        return f"Select{self.occupations}"

    def transitions(self, inp, out_caps=None):
        if tuple(inp) == self.occupations:
            yield BasisTransition((), 1.0)

    def forward_bounds(self, in_bounds):
        return ()

    def backward_bounds(self, out_bounds):
        return self.occupations

    def dagger(self):
        return Create(*self.occupations, ty=self.ty)

    def conjugate(self):
        return self

    def inflate(self, d):
        if d == 1:
            return self.to_diagram()
        if any(self.occupations):
            raise InflationUnsupported("post-selecting photons on inflated modes is ambiguous")
        return Select(*([0] * (len(self.occupations) * d)), ty=self.ty).to_diagram()


class NumOp(Box):
    """Number operator ``|n> -> n |n>``."""

    number_preserving = True

    def __init__(self, ty=qmode):
        ty = _photonic(ty)
        self.ty = ty
        super().__init__("NumOp", ty, ty)

    def __repr__(self):
        return "NumOp()"

    def transitions(self, inp, out_caps=None):
        if inp[0]:
            yield BasisTransition((inp[0],), float(inp[0]))

    def forward_bounds(self, in_bounds):
        return tuple(in_bounds)

    def backward_bounds(self, out_bounds):
        return tuple(out_bounds)

    def dagger(self):
        return self

    def conjugate(self):
        return self


class PowerBox(Box):
    """Diagonal map ``|n> -> c**n |n>``; attaches an internal amplitude to photons."""

    number_preserving = True

    def __init__(self, c, ty=qmode):
        ty = _photonic(ty)
        self.ty = ty
        super().__init__("Pow", ty, ty, (complex(c),))

    def transitions(self, inp, out_caps=None):
        amp = self.params[0] ** inp[0]
        if amp != 0:
            yield BasisTransition(tuple(inp), amp)

    def forward_bounds(self, in_bounds):
        return tuple(in_bounds)

    def backward_bounds(self, out_bounds):
        return tuple(out_bounds)

    def dagger(self):
        return PowerBox(self.params[0].conjugate(), self.ty)

    def conjugate(self):
        return PowerBox(self.params[0].conjugate(), self.ty)


class ZBox(Box):
    """ZW Z-spider: all legs carry the same occupation ``n`` with amplitude ``amps[n]``."""

    def __init__(self, n_in, n_out, amps=(1.0,), ty=qmode):
        ty = _photonic(ty)
        self.n_in, self.n_out, self.ty = n_in, n_out, ty
        self.amps = tuple(complex(a) for a in amps)
        super().__init__("ZW", ty ** n_in, ty ** n_out, (n_in, n_out))

    def _payload(self):
        return (self.amps,)

    def transitions(self, inp, out_caps=None):
        if inp:
            if len(set(inp)) != 1:
                return
            values = (inp[0],)
        else:
            values = range(len(self.amps))
        for n in values:
            if n < len(self.amps) and self.amps[n] != 0:
                yield BasisTransition((n,) * self.n_out, self.amps[n])

    def forward_bounds(self, in_bounds):
        b = min(in_bounds) if in_bounds else len(self.amps) - 1
        return (b,) * self.n_out

    def backward_bounds(self, out_bounds):
        b = min(out_bounds) if out_bounds else len(self.amps) - 1
        return (b,) * self.n_in

    def dagger(self):
        return ZBox(self.n_out, self.n_in, [a.conjugate() for a in self.amps], self.ty)

    def conjugate(self):
        return ZBox(self.n_in, self.n_out, [a.conjugate() for a in self.amps], self.ty)


def creation(ty=qmode):
    """Creation operator ``a†``: ``|n> -> sqrt(n+1) |n+1>``."""
    return Create(1, ty=ty) @ Diagram.id(ty) >> W(2, merge=True, ty=ty)


def annihilation(ty=qmode):
    """Annihilation operator ``a``: ``|n> -> sqrt(n) |n-1>``."""
    return W(2, ty=ty) >> Select(1, ty=ty) @ Diagram.id(ty)


__all__ = ["W", "Create", "Select", "NumOp", "PowerBox", "ZBox", "creation", "annihilation",
           "inflate_source"]
