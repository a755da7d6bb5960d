"""Shared builders and oracles for the test suite."""

from string import ascii_letters

import numpy as np

from photonet import Id, Phase, TBS, qmode
from photonet.tn import TensorNetwork


def on_modes(gate, i, m):
    """Place a gate acting on modes ``i, i+1, ...`` inside ``m`` modes."""
    k = len(gate.dom)
    return Id(qmode ** i) @ gate @ Id(qmode ** (m - i - k))


def random_lo(rng, m, depth):
    """Brick-wall circuit of random TBS and Phase gates on ``m`` modes."""
    d = Id(qmode ** m)
    for layer in range(depth):
        for i in range(layer % 2, m - 1, 2):
            g = TBS(float(rng.uniform())) >> Phase(float(rng.uniform())) @ qmode
            d = d >> on_modes(g, i, m)
        if m == 1:
            d = d >> Phase(float(rng.uniform()))
    return d


def random_occupation(rng, m, n_max):
    """Random Fock pattern on ``m`` modes with at most ``n_max`` photons."""
    n = int(rng.integers(1, n_max + 1))
    occ = [0] * m
    for k in rng.integers(0, m, size=n):
        occ[int(k)] += 1
    return occ


def haar_unitary(rng, m):
    z = (rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_network(rng, n_nodes, max_dim=4, p_edge=0.4, n_open=2):
    """Connected random tensor network with a few open legs."""
    edges = [(i, i + 1) for i in range(n_nodes - 1)]
    for i in range(n_nodes):
        for j in range(i + 2, n_nodes):
            if rng.uniform() < p_edge:
                edges.append((i, j))
    labels = [[] for _ in range(n_nodes)]
    dims = {}
    for k, (i, j) in enumerate(edges):
        labels[i].append(k)
        labels[j].append(k)
        dims[k] = int(rng.integers(2, max_dim + 1))
    open_ = []
    for k in range(n_open):
        lab = f"o{k}"
        labels[int(rng.integers(0, n_nodes))].append(lab)
        dims[lab] = int(rng.integers(2, max_dim + 1))
        open_.append(lab)
    nodes = []
    for labs in labels:
        shape = [dims[x] for x in labs]
        arr = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        nodes.append((arr, labs))
    return TensorNetwork(nodes=nodes, open=open_)


def einsum_oracle(tn):
    """Contract a network by folding nodes left to right with ``numpy.einsum``."""
    letters = {}

    def sym(x):
        if x not in letters:
            letters[x] = ascii_letters[len(letters)]
        return letters[x]

    acc, acc_labs = np.array(1 + 0j), []
    for arr, labs in tn.nodes:
        labs = list(labs)
        keep = [x for x in acc_labs + labs
                if (x in tn.open or (x in acc_labs) != (x in labs))]
        keep = list(dict.fromkeys(keep))
        subscripts = ("".join(map(sym, acc_labs)) + "," + "".join(map(sym, labs))
                      + "->" + "".join(map(sym, keep)))
        acc, acc_labs = np.einsum(subscripts, acc, arr), keep
    return acc.transpose([acc_labs.index(x) for x in tn.open]) * tn.scalar


def pauli_states():
    """The six Pauli eigenstates as normalised vectors."""
    s = 2 ** -0.5
    return {
        "0": np.array([1, 0], dtype=complex),
        "1": np.array([0, 1], dtype=complex),
        "+": np.array([s, s], dtype=complex),
        "-": np.array([s, -s], dtype=complex),
        "+i": np.array([s, 1j * s], dtype=complex),
        "-i": np.array([s, -1j * s], dtype=complex),
    }
