"""Execute a contraction path."""

from __future__ import annotations

from math import prod

import numpy as np

from ..errors import ShapeMismatch
from .paths import ContractionPath, _result_labels


class ContractionStats:
    def __init__(self):
        self.multiply_adds = 0
        self.peak_size = 0


def contract(tn, path: ContractionPath, stats: ContractionStats | None = None):
    """Contract ``tn`` along ``path``; axes follow ``tn.open``."""
    stats = stats if stats is not None else ContractionStats()
    live = {i: (arr, tuple(lab)) for i, (arr, lab) in enumerate(tn.nodes)}
    for arr, _ in tn.nodes:
        stats.peak_size = max(stats.peak_size, arr.size)
    nxt = len(tn.nodes)
    for m in path.merges:
        (a, la), (b, lb) = live.pop(m.left), live.pop(m.right)
        shared = [x for x in la if x in lb]
        ax_a = [la.index(x) for x in shared]
        ax_b = [lb.index(x) for x in shared]
        for i, j in zip(ax_a, ax_b):
            if a.shape[i] != b.shape[j]:
                raise ShapeMismatch(f"label {la[i]}: {a.shape[i]} vs {b.shape[j]}")
        shared_size = prod(a.shape[i] for i in ax_a)
        stats.multiply_adds += a.size * b.size // max(shared_size, 1) if shared_size else 0
        out = np.tensordot(a, b, axes=(ax_a, ax_b))
        stats.peak_size = max(stats.peak_size, out.size)
        live[nxt] = (out, _result_labels(la, lb))
        nxt += 1
    if len(live) > 1:
        raise ShapeMismatch("contraction path does not cover the network")
    if not live:
        result, labels = np.array(1 + 0j), ()
    else:
        (result, labels), = live.values()
    if sorted(map(str, labels)) != sorted(map(str, tn.open)):
        raise ShapeMismatch(f"open labels {labels} do not match boundary {tn.open}")
    if labels:
        result = result.transpose([labels.index(x) for x in tn.open])
    return result * tn.scalar
