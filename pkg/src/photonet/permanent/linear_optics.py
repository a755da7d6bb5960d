"""Permanent backend: sparse Fock-state propagation through linear optics.

The state is kept as a dictionary from occupation tuples (over the wires
currently alive) to amplitudes.  Linear-optical blocks are applied through
permanents of the single-photon matrix, so no truncation is needed.
"""

from __future__ import annotations

from collections import defaultdict
from math import prod

import numpy as np

from ..diagram import ConjugateBox, DaggerBox, DiagramSum, as_diagram
from ..errors import BackendIneligible, SymbolicDiagram
from ..generators.optics import is_lo, lo_unitary
from ..generators.zw import Create, NumOp, PowerBox, Select, W, ZBox
from ..types import qmode
from .fock import amplitude, lift_column, patterns

STRICT = (Create, Select)
LENIENT = (Create, Select, NumOp, W, PowerBox, ZBox)


def _unwrap(box):
    while isinstance(box, (DaggerBox, ConjugateBox)):
        box = box.inner
    return box


def check_eligible(d, strict=False):
    """Raise :class:`BackendIneligible` naming the first unsupported box."""
    allowed = STRICT if strict else LENIENT
    for k, (box, ins, outs) in enumerate(d.ops):
        if is_lo(box):
            continue
        if isinstance(_unwrap(box), allowed) and all(t.photonic for t in box.dom @ box.cod):
            continue
        raise BackendIneligible(f"box {k} ({box!r}) is not supported by the permanent backend")


def extract_unitary(d) -> np.ndarray:
    """Single-photon matrix of a diagram built from LO gates and wiring only."""
    d = as_diagram(d)
    if d.free_symbols:
        raise SymbolicDiagram("bind symbols before extracting a unitary")
    if d.dom != d.cod or any(t != qmode[0] for t in d.dom):
        raise BackendIneligible(f"expected qmode^m -> qmode^m, got {d.dom!r} -> {d.cod!r}")
    m = len(d.dom)
    rows = {w: np.eye(m, dtype=complex)[i] for i, w in enumerate(d.inputs)}
    for k, (box, ins, outs) in enumerate(d.ops):
        if not is_lo(box):
            raise BackendIneligible(f"box {k} ({box!r}) is not a linear-optical gate")
        U = lo_unitary(box)
        block = U @ np.array([rows.pop(w) for w in ins])
        for w, r in zip(outs, block):
            rows[w] = r
    # diagram scalars are global factors, not part of the single-photon matrix
    return np.array([rows[w] for w in d.outputs]).reshape(m, m)


class Interferometer:
    """An ``m x m`` single-photon matrix with a Fock input pattern."""

    def __init__(self, U, input_occupation):
        self.U = np.asarray(U, dtype=complex)
        self.s = tuple(int(x) for x in input_occupation)
        if self.U.shape != (len(self.s), len(self.s)):
            raise ValueError(f"matrix {self.U.shape} does not match {len(self.s)} modes")

    @property
    def n_photons(self):
        return sum(self.s)

    def amplitude(self, t, algo="auto"):
        return amplitude(self.U, self.s, t, algo)

    def prob_dist(self, algo="auto"):
        from ..evaluate import ProbDist

        out = ProbDist()
        for t in patterns(self.n_photons, len(self.s)):
            p = abs(self.amplitude(t, algo)) ** 2
            if p:
                out[t] = p
        return out


def _apply_lo(state, pos, U, algo):
    new = defaultdict(complex)
    cache = {}
    for occ, amp in state.items():
        s = tuple(occ[p] for p in pos)
        if s not in cache:
            cache[s] = lift_column(U, s, algo)
        for t, a in cache[s]:
            o = list(occ)
            for p, v in zip(pos, t):
                o[p] = v
            new[tuple(o)] += amp * a
    return new


def _apply_box(state, pos, box, n_max):
    """Generic box via its transition rule; inputs at ``pos`` are replaced by outputs."""
    new = defaultdict(complex)
    n_out = len(box.cod)
    out_caps = (n_max + 1,) * n_out
    cache = {}
    width = len(next(iter(state)))
    keep = [i for i in range(width) if i not in set(pos)]
    for occ, amp in state.items():
        s = tuple(occ[p] for p in pos)
        if s not in cache:
            cache[s] = [(tr.out, tr.amp) for tr in box.transitions(s, out_caps)]
        rest = tuple(occ[i] for i in keep)
        for t, a in cache[s]:
            new[rest + tuple(t)] += amp * a
    return new, keep


def propagate(d, state=None, algo="auto", strict=False, stats=None):
    """Push a sparse state through ``d``; returns amplitudes over ``d.outputs``.

    ``state`` maps input occupation tuples to amplitudes (default: the empty
    input, which requires a closed domain).  ``stats["peak_terms"]`` records
    the largest intermediate state when a dict is passed.
    """
    d = as_diagram(d)
    if d.free_symbols:
        raise SymbolicDiagram("bind symbols before evaluating")
    check_eligible(d, strict)
    if state is None:
        if len(d.dom):
            raise BackendIneligible("the permanent backend needs a state (no open inputs)")
        state = {(): 1.0}
    wires = list(d.inputs)
    state = {tuple(k): complex(v) for k, v in state.items()}
    n_max = max((sum(k) for k in state), default=0)
    for box, ins, outs in d.ops:
        if not state:
            break
        idx = {w: i for i, w in enumerate(wires)}
        pos = [idx[w] for w in ins]
        if is_lo(box):
            state = _apply_lo(state, pos, lo_unitary(box), algo)
            for w_in, w_out in zip(ins, outs):
                wires[idx[w_in]] = w_out
        else:
            if isinstance(_unwrap(box), Create):
                n_max += sum(getattr(_unwrap(box), "occupations", ()))
            state, keep = _apply_box(state, pos, box, n_max)
            wires = [wires[i] for i in keep] + list(outs)
        state = {k: v for k, v in state.items() if v != 0}
        if stats is not None:
            stats["peak_terms"] = max(stats.get("peak_terms", 0), len(state))
    if not state:
        return {}
    scale = prod(d.scalars) if d.scalars else 1.0
    order = [wires.index(w) for w in d.outputs]
    return {tuple(k[i] for i in order): v * scale for k, v in state.items()}


def evaluate_permanent(d, cap=None, algo="auto"):
    """Evaluate a closed-domain linear-optical diagram with permanents."""
    from ..evaluate import EvalResult, _sum_results

    if isinstance(d, DiagramSum):
        return _sum_results([evaluate_permanent(t, cap, algo) for t in d.terms])
    d = as_diagram(d)
    stats = {}
    amps = propagate(d, algo=algo, stats=stats)
    shape = [1] * len(d.cod)
    for k in amps:
        shape = [max(s, v + 1) for s, v in zip(shape, k)]
    if cap is not None:
        shape = [max(s, cap) for s in shape]
    for i, t in enumerate(d.cod):
        if t.fixed_dim:
            shape[i] = 2
    arr = np.zeros(shape, dtype=complex)
    for k, v in amps.items():
        arr[k] += v
    return EvalResult(arr, d.dom, d.cod, False, {"backend": "permanent", "terms": len(amps),
                                                        "peak_terms": stats.get("peak_terms", 0)})


def prob_dist(d, algo="auto"):
    """Output distribution of a linear-optical state diagram."""
    return evaluate_permanent(d, algo=algo).prob_dist()


def expectation_permanent(state_prep, observable, algo="auto") -> complex:
    """``<psi| O |psi>`` with ``psi`` from ``state_prep`` and ``O`` a sum of diagrams."""
    psi = propagate(state_prep, algo=algo)
    terms = observable.terms if isinstance(observable, DiagramSum) else [as_diagram(observable)]
    total = 0j
    for term in terms:
        phi = propagate(term, psi, algo=algo)
        total += sum(np.conj(psi.get(k, 0)) * v for k, v in phi.items())
    return total


__all__ = [
    "Interferometer", "check_eligible", "evaluate_permanent", "expectation_permanent",
    "extract_unitary", "propagate", "prob_dist",
]
