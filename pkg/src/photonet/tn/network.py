"""Tensor networks built from diagrams."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .dims import WireDims, infer_dims


@dataclass
class TensorNetwork:
    """Dense tensors with shared integer labels; ``open`` lists boundary labels."""

    nodes: list = field(default_factory=list)
    open: list = field(default_factory=list)
    scalar: complex = 1 + 0j

    def dims(self):
        out = {}
        for arr, labels in self.nodes:
            for lab, n in zip(labels, arr.shape):
                out[lab] = n
        return out

    def check(self):
        seen = {}
        for k, (arr, labels) in enumerate(self.nodes):
            if arr.ndim != len(labels):
                raise ValueError(f"node {k}: rank {arr.ndim} vs {len(labels)} labels")
            for lab in labels:
                seen[lab] = seen.get(lab, 0) + 1
        for lab in self.open:
            seen[lab] = seen.get(lab, 0) + 1
        bad = [lab for lab, n in seen.items() if n != 2]
        if bad:
            raise ValueError(f"labels not appearing exactly twice: {bad}")
        return True

    def summary(self):
        return {
            "nodes": [{"shape": list(a.shape), "labels": [str(x) for x in l]}
                      for a, l in self.nodes],
            "open": [str(x) for x in self.open],
            "scalar": [self.scalar.real, self.scalar.imag],
        }


@lru_cache(maxsize=4096)
def box_array(box, in_caps, out_caps, fwd_caps):
    arr = box.to_array(in_caps, out_caps, fwd_caps)
    arr.setflags(write=False)
    return arr


def to_tensor_network(d, dims: WireDims | None = None) -> TensorNetwork:
    """One node per box; pass-through wires get an explicit identity node."""
    from ..diagram import as_diagram
    from ..errors import SymbolicDiagram

    d = as_diagram(d)
    if d.free_symbols:
        names = ", ".join(sorted(s.name for s in d.free_symbols))
        raise SymbolicDiagram(f"unbound symbols: {names}")
    dims = infer_dims(d) if dims is None else dims
    nodes = []
    for box, ins, outs in d.ops:
        arr = box_array(box, dims.cap_list(ins), dims.cap_list(outs),
                        tuple(dims.fwd[w] for w in outs))
        nodes.append((arr, tuple(ins) + tuple(outs)))
    produced = {w for op in d.ops for w in op.outs}
    open_out = []
    next_label = max(d.wtype, default=-1) + 1
    for w in d.outputs:
        if w in produced:
            open_out.append(w)
        else:
            lab = next_label
            next_label += 1
            nodes.append((np.eye(dims[w], dtype=complex), (w, lab)))
            open_out.append(lab)
    return TensorNetwork(nodes, list(d.inputs) + open_out, d.scalar_factor)
