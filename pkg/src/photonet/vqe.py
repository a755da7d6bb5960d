"""Bose-Hubbard Hamiltonians, photonic ansatz expectations and gradient descent."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .channels import Channel
from .diagram import Diagram, DiagramSum, as_diagram, as_sum
from .errors import TypeMismatch
from .generators.optics import ansatz
from .generators.zw import Create, NumOp, annihilation, creation
from .types import qmode


def creation_op() -> Channel:
    """``a†`` as a named channel; its Kraus diagram is the pure operator."""
    return Channel("a^dagger", creation())


def annihilation_op() -> Channel:
    """``a`` as a named channel; its Kraus diagram is the pure operator."""
    return Channel("a", annihilation())


@dataclass
class LatticeGraph:
    nodes: list
    edges: list = field(default_factory=list)

    def __post_init__(self):
        self.nodes = list(self.nodes)
        self.edges = [tuple(e) for e in self.edges]
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("node ids must be unique")
        known = set(self.nodes)
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in known or v not in known:
                raise ValueError(f"edge ({u!r}, {v!r}) uses an unknown node")

    @classmethod
    def path(cls, n: int) -> "LatticeGraph":
        return cls(list(range(n)), [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def from_graph(cls, g) -> "LatticeGraph":
        """Accept any object with ``nodes()`` and ``edges()`` (e.g. a networkx graph)."""
        if isinstance(g, LatticeGraph):
            return g
        return cls(sorted(g.nodes()), list(g.edges()))


@dataclass(frozen=True)
class BHParams:
    t: float
    U: float
    mu: float


def _on_wire(n, i, op):
    parts = [Diagram.id(qmode)] * n
    parts[i] = as_diagram(op)
    return Diagram.tensor(*parts)


def bose_hubbard(g, p: BHParams) -> DiagramSum:
    """Sum of hopping, on-site and chemical-potential terms on ``qmode**N``."""
    g = LatticeGraph.from_graph(g)
    if not g.nodes:
        raise ValueError("the lattice needs at least one site")
    nodes = sorted(g.nodes)
    idx = {u: i for i, u in enumerate(nodes)}
    N = len(nodes)
    a_dag, a = creation_op().kraus, annihilation_op().kraus
    terms = []
    for u, v in g.edges:
        i, j = idx[u], idx[v]
        for src, dst in ((i, j), (j, i)):
            hop = _on_wire(N, src, a_dag) >> _on_wire(N, dst, a)
            terms.append(hop * (-p.t))
    for u in nodes:
        # a†a†aa: annihilate twice, then create twice
        quartic = a >> a >> a_dag >> a_dag
        terms.append(_on_wire(N, idx[u], quartic) * (p.U / 2))
    for u in nodes:
        terms.append(_on_wire(N, idx[u], NumOp()) * (-p.mu))
    return DiagramSum(terms)


def bose_hubbard_from_graph(graph, t, mu, U) -> DiagramSum:
    """Same as :func:`bose_hubbard` with the ``(t, mu, U)`` argument order."""
    return bose_hubbard(graph, BHParams(t=t, U=U, mu=mu))


def monomial_layer(powers) -> Diagram:
    """``n_0^p_0 @ n_1^p_1 @ ...`` built from repeated number operators."""
    parts = []
    for p in powers:
        if p < 0:
            raise ValueError("powers must be non-negative")
        d = Diagram.id(qmode)
        for _ in range(p):
            d = d >> NumOp()
        parts.append(d)
    return Diagram.tensor(*parts) if parts else Diagram.id()


def expectation(state, obs) -> DiagramSum:
    """Closed diagram ``state >> obs >> state.dagger()`` as a sum of scalars."""
    state = as_diagram(state)
    obs = as_sum(obs)
    if len(state.dom):
        raise TypeMismatch(f"expected a state, got domain {state.dom!r}")
    if obs.dom != state.cod or obs.cod != state.cod:
        raise TypeMismatch(f"observable {obs.dom!r} -> {obs.cod!r} does not act on {state.cod!r}")
    dag = state.dagger()
    return DiagramSum([state >> t >> dag for t in obs.terms])


def grad(expr, s) -> DiagramSum:
    """Analytic derivative of ``expr`` with respect to symbol ``s``."""
    return as_sum(expr).grad(s)


def bose_hubbard_ansatz(n_photons=3, layers=4, prefix=""):
    """``Create(1, ..., 1) >> ansatz(n, layers)``."""
    return Create(*([1] * n_photons)) >> ansatz(n_photons, layers, prefix)


def bose_hubbard_energy(graph=None, params=BHParams(t=0.10, U=4.0, mu=2.0), layers=4):
    """Expectation diagram of the two-site set-up: 3 photons, 3 modes, one spare mode."""
    graph = LatticeGraph.path(2) if graph is None else LatticeGraph.from_graph(graph)
    H = bose_hubbard(graph, params) @ qmode
    state = bose_hubbard_ansatz(len(graph.nodes) + 1, layers)
    return expectation(state, H)


def _value(expr, bindings, backend):
    v = complex(as_sum(expr).subs(bindings).eval(backend=backend).scalar)
    if abs(v.imag) > 1e-8 * max(1.0, abs(v.real)):
        raise ValueError(f"expected a real value, got {v}")
    return v.real


@dataclass
class Trajectory:
    symbols: list
    xs: list = field(default_factory=list)
    energies: list = field(default_factory=list)
    grads: list = field(default_factory=list)

    def to_csv(self, path):
        """Columns: step, energy, grad_norm, then one column per parameter."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["step", "energy", "grad_norm"] + [s.name for s in self.symbols])
            for k, (x, e, g) in enumerate(zip(self.xs, self.energies, self.grads)):
                w.writerow([k, repr(e), repr(float(np.linalg.norm(g)))] + [repr(float(v)) for v in x])


class Objective:
    """Energy and gradient callables for a symbolic scalar expression."""

    def __init__(self, expr, backend="permanent", symbols=None):
        self.expr = as_sum(expr)
        self.backend = backend
        self.symbols = sorted(self.expr.free_symbols) if symbols is None else list(symbols)
        self._grads = [self.expr.grad(s) for s in self.symbols]

    def _bind(self, x):
        return dict(zip(self.symbols, (float(v) for v in x)))

    def energy(self, x) -> float:
        return _value(self.expr, self._bind(x), self.backend)

    def gradient(self, x) -> np.ndarray:
        b = self._bind(x)
        return np.array([_value(g, b, self.backend) for g in self._grads])


def gradient_descent(expr, x0, lr=0.001, steps=30, backend="permanent", symbols=None) -> Trajectory:
    """Plain gradient descent; records ``(x, E(x), grad E(x))`` per step plus the final point."""
    if lr <= 0 or steps < 1:
        raise ValueError("need lr > 0 and steps >= 1")
    obj = expr if isinstance(expr, Objective) else Objective(expr, backend, symbols)
    x = np.array(x0, dtype=float)
    if x.shape != (len(obj.symbols),):
        raise ValueError(f"x0 has {x.size} entries for {len(obj.symbols)} symbols")
    traj = Trajectory(obj.symbols)
    for _ in range(steps + 1):
        traj.xs.append(x.copy())
        traj.energies.append(obj.energy(x))
        traj.grads.append(obj.gradient(x))
        if len(traj.xs) <= steps:
            x = x - lr * traj.grads[-1]
    return traj


def random_restarts(expr, n_restarts, lr=0.001, steps=30, seed=0, backend="permanent",
                    low=0.0, high=1.0):
    """Gradient descent from ``n_restarts`` seeded uniform initialisations."""
    obj = Objective(expr, backend)
    rng = np.random.default_rng(seed)
    return [gradient_descent(obj, rng.uniform(low, high, len(obj.symbols)), lr, steps)
            for _ in range(n_restarts)]


def finite_difference(f, x, h=1e-5):
    """Central differences of a scalar function; a test oracle."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h
        out[k] = (f(x + e) - f(x - e)) / (2 * h)
    return out


__all__ = [
    "BHParams", "LatticeGraph", "Objective", "Trajectory", "annihilation_op", "bose_hubbard",
    "bose_hubbard_ansatz", "bose_hubbard_energy", "bose_hubbard_from_graph", "creation_op",
    "expectation", "finite_difference", "gradient_descent", "grad", "monomial_layer",
    "random_restarts",
]
