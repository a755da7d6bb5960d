"""Light-cone inference of Fock-space truncation caps."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from ..types import WireType

INF = math.inf


def default_cap() -> int:
    """Cap for open photonic inputs: ``PHOTONET_CAP`` or 2."""
    return int(os.environ.get("PHOTONET_CAP", "2"))


@dataclass
class WireDims:
    """Per-wire dimensions plus the forward light-cone caps used for checks."""

    caps: dict = field(default_factory=dict)
    fwd: dict = field(default_factory=dict)

    def __getitem__(self, w):
        return self.caps[w]

    def cap_list(self, wires):
        return tuple(self.caps[w] for w in wires)


def _finite(b, fallback):
    return fallback if b == INF else b


def forward_pass(d, in_bounds=None, default=None, local=None):
    """Upper bound on the occupation of every wire, scanning inputs to outputs.

    Besides the local rules of each box, quantum mode wires are clamped by a
    global photon budget: the open-input photons plus every photon added by
    boxes upstream.  ``local``, if given, receives the bounds
    before budget clamping; they bound what a box can emit for any input
    inside its (clamped) input caps.
    """
    default = default_cap() if default is None else default
    bounds = {}
    budget = 0
    for i, w in enumerate(d.inputs):
        t = d.wtype[w]
        if t.fixed_dim:
            bounds[w] = 1
        elif in_bounds is not None:
            bounds[w] = in_bounds[i]
        else:
            bounds[w] = default - 1
        if t == WireType.QMODE:
            budget += bounds[w]
    for box, ins, outs in d.ops:
        ib = tuple(bounds[w] for w in ins)
        ob = box.forward_bounds(ib)
        gain = box.photon_gain(ib)
        budget = INF if gain is None else budget + gain
        for w, b, t in zip(outs, ob, box.cod):
            if local is not None:
                local[w] = 1 if t.fixed_dim else _finite(b, default - 1)
            if t.fixed_dim:
                bounds[w] = 1
            else:
                if t == WireType.QMODE:
                    b = min(b, budget)
                bounds[w] = _finite(b, default - 1)
    return bounds


def diagram_photon_gain(d, in_bounds):
    """Photons the boxes of ``d`` can add in total, or ``None`` if unknown."""
    fwd = forward_pass(d, in_bounds)
    total = 0
    for box, ins, outs in d.ops:
        g = box.photon_gain(tuple(fwd[w] for w in ins))
        if g is None:
            return None
        total += g
    return total


def backward_pass(d, out_bounds=None):
    """Bound on occupations that can still reach the outputs, scanning backwards."""
    bounds = {}
    for i, w in enumerate(d.outputs):
        t = d.wtype[w]
        if t.fixed_dim:
            bounds[w] = 1
        elif out_bounds is not None:
            bounds[w] = out_bounds[i]
        else:
            bounds[w] = INF
    for box, ins, outs in reversed(d.ops):
        ib = box.backward_bounds(tuple(bounds[w] for w in outs))
        for w, b, t in zip(ins, ib, box.dom):
            bounds[w] = 1 if t.fixed_dim else b
    return bounds


def infer_dims(d, default=None, in_caps=None, out_caps=None) -> WireDims:
    """Caps for every wire: ``min(forward, backward) + 1``.

    ``in_caps``/``out_caps`` pin the boundary dimensions (used when a box is
    materialised from a sub-diagram); ``None`` entries are left to inference.
    """
    in_bounds = None if in_caps is None else [c - 1 for c in in_caps]
    out_bounds = None if out_caps is None else [INF if c is None else c - 1 for c in out_caps]
    local = {}
    fwd = forward_pass(d, in_bounds, default, local)
    bwd = backward_pass(d, out_bounds)
    caps, fcaps = {}, {}
    for w, t in d.wtype.items():
        if t.fixed_dim:
            caps[w] = fcaps[w] = 2
            continue
        f = int(fwd[w])
        caps[w] = int(min(f, bwd[w])) + 1
        fcaps[w] = int(local.get(w, f)) + 1
    if out_caps is not None:
        for w, c in zip(d.outputs, out_caps):
            if c is not None:
                caps[w] = c
    if in_caps is not None:
        for w, c in zip(d.inputs, in_caps):
            caps[w] = c
    return WireDims(caps, fcaps)


def map_dims(dims: WireDims, wmap) -> WireDims:
    """Carry caps over to a diagram whose wires were split by ``wmap``."""
    caps, fwd = {}, {}
    for w, news in wmap.items():
        for x in news:
            caps[x], fwd[x] = dims.caps[w], dims.fwd[w]
    return WireDims(caps, fwd)


def diagram_forward_bounds(d, in_bounds):
    b = forward_pass(d, in_bounds)
    return tuple(b[w] for w in d.outputs)


def diagram_backward_bounds(d, out_bounds):
    b = backward_pass(d, out_bounds)
    return tuple(b[w] for w in d.inputs)
