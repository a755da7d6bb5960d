"""Evaluate diagrams on the tensor-network or permanent backend."""

from __future__ import annotations

from math import prod

import numpy as np

from .diagram import Diagram, DiagramSum, as_diagram
from .errors import BackendIneligible, NotAState, SymbolicDiagram
from .tn import contract, infer_dims, plan, to_tensor_network
from .tn.contract import ContractionStats
from .types import Ty, as_ty


class ProbDist(dict):
    """Outcome -> probability; missing outcomes have probability 0."""

    def __missing__(self, key):
        return 0.0

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        return super().__getitem__(key)


class EvalResult:
    """A contracted boundary tensor with convenience views.

    ``array`` has axes ``(inputs..., outputs...)``.  For doubled (channel)
    results each quantum factor contributes a ket axis followed by a bra axis
    and each classical factor a single axis.
    """

    def __init__(self, array, dom, cod, doubled=False, report=None):
        self.array = np.asarray(array, dtype=complex)
        self.dom, self.cod = as_ty(dom), as_ty(cod)
        self.doubled = doubled
        self.report = report or {}

    @property
    def tensor(self):
        return self.array

    def _axes(self, ty):
        return sum(2 if (self.doubled and t.quantum) else 1 for t in ty)

    @property
    def in_shape(self):
        return self.array.shape[:self._axes(self.dom)]

    @property
    def out_shape(self):
        return self.array.shape[self._axes(self.dom):]

    @property
    def scalar(self) -> complex:
        if self.array.ndim:
            raise NotAState("result has open wires; it is not a scalar")
        return complex(self.array)

    def matrix(self):
        """Shape ``(prod(out axes), prod(in axes))``; a superoperator when doubled."""
        din, dout = prod(self.in_shape), prod(self.out_shape)
        return self.array.reshape(din, dout).T

    def amplitudes(self):
        """Nonzero amplitudes of a pure state, keyed by outcome tuple."""
        if self.doubled:
            raise NotAState("amplitudes are only defined for pure diagrams")
        if len(self.dom):
            raise NotAState("amplitudes need a state (empty domain)")
        out = {}
        for idx in zip(*np.nonzero(self.array)):
            out[tuple(int(i) for i in idx)] = complex(self.array[idx])
        return out

    @property
    def weights(self) -> dict:
        """Unnormalised outcome weights (sub-normalised after post-selection)."""
        if len(self.dom):
            raise NotAState("a probability distribution needs an empty domain")
        w = {}
        if not self.doubled:
            p = np.abs(self.array) ** 2
            for idx in zip(*np.nonzero(p)):
                w[tuple(int(i) for i in idx)] = float(p[idx])
            return w
        sizes = []
        k = 0
        for t in self.cod:
            sizes.append(min(self.array.shape[k:k + 2]) if t.quantum else self.array.shape[k])
            k += 2 if t.quantum else 1
        for out in np.ndindex(*sizes):
            idx = []
            for o, t in zip(out, self.cod):
                idx += [o, o] if t.quantum else [o]
            v = self.array[tuple(idx)]
            if v.real != 0:
                w[tuple(out)] = float(v.real)
        return w

    def prob_dist(self) -> ProbDist:
        w = self.weights
        total = sum(w.values())
        if total <= 0:
            return ProbDist()
        return ProbDist({k: v / total for k, v in w.items()})

    def trace(self) -> float:
        return float(sum(self.weights.values()))

    def density_matrix(self):
        """Density matrix over all outputs; classical outputs sit on the diagonal."""
        if len(self.dom):
            raise NotAState("a density matrix needs an empty domain")
        if not self.doubled:
            psi = self.array.ravel()
            return np.outer(psi, psi.conj())
        sizes = []
        k = 0
        for t in self.cod:
            sizes.append(self.array.shape[k])
            k += 2 if t.quantum else 1
        D = prod(sizes)
        rho = np.zeros((D, D), dtype=complex)
        for ket in np.ndindex(*sizes):
            for bra in np.ndindex(*sizes):
                idx = []
                ok = True
                for a, b, t in zip(ket, bra, self.cod):
                    if t.quantum:
                        idx += [a, b]
                    elif a != b:
                        ok = False
                        break
                    else:
                        idx.append(a)
                if ok:
                    rho[np.ravel_multi_index(ket, sizes), np.ravel_multi_index(bra, sizes)] = \
                        self.array[tuple(idx)]
        return rho

    def __repr__(self):
        kind = "channel" if self.doubled else "pure"
        return f"EvalResult({kind}, {self.dom!r} -> {self.cod!r}, shape={self.array.shape})"


def _pad_to(arr, shape):
    if arr.shape == tuple(shape):
        return arr
    out = np.zeros(shape, dtype=complex)
    out[tuple(slice(0, s) for s in arr.shape)] = arr
    return out


def _sum_results(results):
    shape = tuple(max(s) for s in zip(*(r.array.shape for r in results))) if results[0].array.ndim else ()
    total = sum(_pad_to(r.array, shape) for r in results)
    r0 = results[0]
    return EvalResult(total, r0.dom, r0.cod, r0.doubled, {"terms": len(results)})


def evaluate(d, backend="tn", cap=None, planner="auto", channel=None, algo="auto"):
    """Evaluate a diagram or a sum of diagrams.

    ``channel=None`` doubles only when the diagram contains channels;
    ``True`` always evaluates the CP map.
    """
    if isinstance(d, DiagramSum):
        if channel is None:
            channel = d.is_channel()
        return _sum_results([evaluate(t, backend, cap, planner, channel, algo) for t in d.terms])
    d = as_diagram(d)
    if d.free_symbols:
        names = ", ".join(sorted(s.name for s in d.free_symbols))
        raise SymbolicDiagram(f"bind symbols before evaluating: {names}")
    doubled = d.is_channel() if channel is None else channel
    if backend == "permanent":
        if doubled:
            raise BackendIneligible("the permanent backend evaluates pure linear-optical diagrams only")
        from .permanent.linear_optics import evaluate_permanent

        return evaluate_permanent(d, cap=cap, algo=algo)
    if backend != "tn":
        raise ValueError(f"unknown backend {backend!r}")
    dims = infer_dims(d, default=cap)
    if doubled:
        from .channels import double
        from .tn.dims import map_dims

        dd, wmap = double(d, return_map=True)
        dims = map_dims(dims, wmap)
    else:
        dd = d
    tn = to_tensor_network(dd, dims)
    path = plan(tn, planner)
    stats = ContractionStats()
    arr = contract(tn, path, stats)
    report = {"network": tn, "path": path, "stats": stats}
    return EvalResult(arr, d.dom, d.cod, doubled, report)


def eval_channel(d, backend="tn", **kwargs):
    """Evaluate the CP map of ``d`` (doubling pure diagrams as well)."""
    return evaluate(d, backend=backend, channel=True, **kwargs)


def dense_array(d: Diagram, in_caps, out_caps, planner="auto"):
    """Dense tensor of a pure sub-diagram at fixed boundary caps.

    ``None`` entries in ``out_caps`` are inferred from the forward light-cone.
    """
    d = as_diagram(d)
    dims = infer_dims(d, in_caps=tuple(in_caps), out_caps=tuple(out_caps))
    tn = to_tensor_network(d, dims)
    return contract(tn, plan(tn, planner))


__all__ = ["EvalResult", "ProbDist", "evaluate", "eval_channel", "dense_array", "Ty"]
