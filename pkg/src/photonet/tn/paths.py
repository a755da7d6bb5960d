"""Contraction-path planning: greedy and exact dynamic programming.

Nodes are numbered ``0..n-1``; each merge creates the next id (``n``,
``n+1``, ...).  The cost of a merge is the number of scalar multiply-adds,
the product of the dimensions of every label on either operand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from ..errors import TooLarge

MAX_OPTIMAL_NODES = 18


@dataclass
class Merge:
    left: int
    right: int
    cost: int
    shape: tuple


@dataclass
class ContractionPath:
    merges: list = field(default_factory=list)
    n_nodes: int = 0

    @property
    def cost(self) -> int:
        return sum(m.cost for m in self.merges)

    def pairs(self):
        return [(m.left, m.right) for m in self.merges]

    def summary(self):
        return {"cost": self.cost,
                "merges": [[m.left, m.right, m.cost, list(m.shape)] for m in self.merges]}


def _label_info(tn):
    labels = [tuple(l) for _, l in tn.nodes]
    dims = tn.dims()
    open_set = set(tn.open)
    return labels, dims, open_set


def _result_labels(a, b):
    """Labels surviving a pairwise contraction, in tensordot order."""
    shared = set(a) & set(b)
    return tuple(x for x in a if x not in shared) + tuple(x for x in b if x not in shared)


def _merge_cost(a, b, dims):
    return prod(dims[x] for x in set(a) | set(b))


def plan_greedy(tn) -> ContractionPath:
    """Repeatedly merge the connected pair with the smallest size change."""
    labels, dims, _ = _label_info(tn)
    live = {i: lab for i, lab in enumerate(labels)}
    nxt = len(labels)
    path = ContractionPath(n_nodes=len(labels))

    def size(lab):
        return prod(dims[x] for x in lab)

    while len(live) > 1:
        owners = {}
        for i, lab in live.items():
            for x in lab:
                owners.setdefault(x, []).append(i)
        cands = set()
        for own in owners.values():
            if len(own) == 2:
                cands.add(tuple(sorted(own)))
        if not cands:
            ids = sorted(live)
            cands = {(ids[0], ids[1])}
        best = None
        for i, j in cands:
            res = _result_labels(live[i], live[j])
            rs = size(res)
            key = (rs - size(live[i]) - size(live[j]), rs, i, j)
            if best is None or key < best[0]:
                best = (key, i, j, res)
        _, i, j, res = best
        path.merges.append(Merge(i, j, _merge_cost(live[i], live[j], dims),
                                 tuple(dims[x] for x in res)))
        del live[i], live[j]
        live[nxt] = res
        nxt += 1
    return path


def _components(labels):
    n = len(labels)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = {}
    for i, lab in enumerate(labels):
        for x in lab:
            if x in owner:
                parent[find(i)] = find(owner[x])
            else:
                owner[x] = i
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return sorted(comps.values())


def _dp(items, labels_of, adjacent, dims, connected_only):
    """Exact DP over subsets of ``items``; returns (cost, tree) for the full set.

    ``tree`` is an item index or a pair of trees.
    """
    k = len(items)
    full = (1 << k) - 1
    # open labels of a subset: labels with exactly one endpoint inside it
    counts_cache = {}

    def subset_labels(mask):
        if mask in counts_cache:
            return counts_cache[mask]
        cnt = {}
        order = []
        for i in range(k):
            if mask >> i & 1:
                for x in labels_of(i):
                    if x not in cnt:
                        order.append(x)
                    cnt[x] = cnt.get(x, 0) + 1
        res = tuple(x for x in order if cnt[x] == 1)
        counts_cache[mask] = res
        return res

    best = {}
    for i in range(k):
        best[1 << i] = (0, i)

    def is_connected(mask):
        if not connected_only:
            return True
        start = mask & -mask
        seen = start
        frontier = [start.bit_length() - 1]
        while frontier:
            i = frontier.pop()
            for j in adjacent[i]:
                b = 1 << j
                if mask & b and not seen & b:
                    seen |= b
                    frontier.append(j)
        return seen == mask

    masks = sorted(range(1, full + 1), key=lambda m: bin(m).count("1"))
    for mask in masks:
        if mask in best or not is_connected(mask):
            continue
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        cand = None
        while True:
            a = sub | low
            b = mask ^ a
            if b and a in best and b in best:
                la, lb = subset_labels(a), subset_labels(b)
                if not connected_only or set(la) & set(lb):
                    c = best[a][0] + best[b][0] + _merge_cost(la, lb, dims)
                    if cand is None or c < cand[0]:
                        cand = (c, (best[a][1], best[b][1]))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        if cand is not None:
            best[mask] = cand
    return best[full]



def plan_optimal(tn, max_nodes=MAX_OPTIMAL_NODES) -> ContractionPath:
    """Minimum total multiply-add contraction tree."""
    labels, dims, _ = _label_info(tn)
    n = len(labels)
    if n > max_nodes:
        raise TooLarge(f"{n} nodes exceeds the optimal-planner bound {max_nodes}")
    path = ContractionPath(n_nodes=n)
    if n <= 1:
        return path
    owner = {}
    adjacent = [set() for _ in range(n)]
    for i, lab in enumerate(labels):
        for x in lab:
            if x in owner:
                adjacent[i].add(owner[x])
                adjacent[owner[x]].add(i)
            else:
                owner[x] = i

    comp_trees = []
    comp_labels = []
    for comp in _components(labels):
        local_adj = [{comp.index(j) for j in adjacent[i] if j in comp} for i in comp]
        _, tree = _dp(comp, lambda i, c=comp: labels[c[i]], local_adj, dims, True)
        comp_trees.append(_relabel_tree(tree, comp))
        comp_labels.append(_tree_labels(comp_trees[-1], labels))
    if len(comp_trees) == 1:
        tree = comp_trees[0]
    else:
        _, ctree = _dp(comp_trees, lambda i: comp_labels[i], None, dims, False)
        tree = _substitute(ctree, comp_trees)
    _emit(tree, labels, dims, path, [n])
    return path


def _relabel_tree(tree, items):
    if isinstance(tree, int):
        return items[tree]
    return (_relabel_tree(tree[0], items), _relabel_tree(tree[1], items))


def _substitute(tree, subtrees):
    if isinstance(tree, int):
        return subtrees[tree]
    return (_substitute(tree[0], subtrees), _substitute(tree[1], subtrees))


def _tree_labels(tree, labels):
    if isinstance(tree, int):
        return labels[tree]
    return _result_labels(_tree_labels(tree[0], labels), _tree_labels(tree[1], labels))


def _emit(tree, labels, dims, path, counter):
    """Post-order walk turning a tree into SSA merges; returns (id, labels)."""
    if isinstance(tree, int):
        return tree, labels[tree]
    i, la = _emit(tree[0], labels, dims, path, counter)
    j, lb = _emit(tree[1], labels, dims, path, counter)
    res = _result_labels(la, lb)
    path.merges.append(Merge(i, j, _merge_cost(la, lb, dims), tuple(dims[x] for x in res)))
    k = counter[0]
    counter[0] += 1
    return k, res


def plan(tn, planner="auto") -> ContractionPath:
    if planner == "greedy":
        return plan_greedy(tn)
    if planner == "optimal":
        return plan_optimal(tn)
    if planner == "auto":
        if len(tn.nodes) <= 8:
            return plan_optimal(tn)
        return plan_greedy(tn)
    raise ValueError(f"unknown planner {planner!r}")
