"""Self-checking example experiments for ``photonet example``.

Each runner returns ``(rows, header, checks)`` where ``checks`` is a list of
``(description, passed)`` pairs.
"""

from __future__ import annotations

import numpy as np

from .. import experiments as ex
from ..evaluate import eval_channel


def _close(a, b, tol):
    return bool(abs(a - b) <= tol)


def hom(backend="tn"):
    rows = []
    for b in ("tn", "permanent"):
        p = ex.hom(b)
        rows += [(b, str(k), p[k]) for k in [(2, 0), (1, 1), (0, 2)]]
    checks = [(f"{b} P{k} = {v}", _close(ex.hom(b)[k], v, 1e-9))
              for b in ("tn", "permanent") for k, v in [((1, 1), 0.0), ((2, 0), 0.5), ((0, 2), 0.5)]]
    return rows, ("backend", "outcome", "probability"), checks


def hom_distinguishable(backend="tn"):
    p = ex.hom_distinguishable()
    rows = [("reference states", 0.9, p)]
    sweep = ex.hom_overlap_sweep(10)
    rows += [("sweep", x, q) for x, q in sweep]
    checks = [("P(1,1) = 0.05", _close(p, 0.05, 1e-6))]
    checks += [(f"overlap {x:.4f}: P(1,1) = 0.5 - 0.5 x^2", _close(q, 0.5 - 0.5 * x * x, 1e-6))
               for x, q in sweep]
    return rows, ("kind", "overlap", "p11"), checks


def hom_loss(backend="tn"):
    p = ex.hom_loss(0.8)
    return [(0.8, p)], ("transmission", "p_one_photon"), [("P(1 detected) = 0.2", _close(p, 0.2, 1e-9))]


def teleport_zx(backend="tn"):
    rows, checks = [], []
    for syntax in ("function", "monoidal"):
        S = ex.superoperator(ex.teleport_zx(syntax))
        dev = float(np.abs(S - np.eye(4)).max())
        rows.append((syntax, dev))
        checks.append((f"{syntax} syntax gives the identity channel", dev <= 1e-9))
    return rows, ("syntax", "max_abs_deviation"), checks


def teleport_fusion(backend="tn"):
    a = eval_channel(ex.teleport_fusion()).array
    b = eval_channel(ex.teleport_fusion_reference()).array
    dev = float(np.abs(a - b).max())
    return [(dev,)], ("max_abs_deviation",), [("equals Id(1) @ Scalar(sqrt 0.5)", dev <= 1e-9)]


def fusion_fidelity_sweep(backend="tn"):
    rows = ex.fusion_fidelity_sweep(30)
    by_x = sorted(rows)
    checks = [
        ("F(x=1) = 1", _close(by_x[-1][1], 1.0, 1e-6)),
        ("F nondecreasing in x", all(b[1] >= a[1] - 1e-9 for a, b in zip(by_x, by_x[1:]))),
        ("0 < p_succ <= 1", all(0 < r[2] <= 1 for r in rows)),
    ]
    return rows, ("overlap", "fidelity", "p_succ"), checks


def bose_hubbard_gd(backend="permanent", seed=0, restarts=0):
    from ..vqe import Objective, bose_hubbard_energy, gradient_descent

    obj = Objective(bose_hubbard_energy(), backend=backend)
    x0 = np.random.default_rng(seed).uniform(0, 1, len(obj.symbols))
    tr = gradient_descent(obj, x0, lr=0.001, steps=30)
    rows = [(k, e, float(np.linalg.norm(g))) for k, (e, g) in enumerate(zip(tr.energies, tr.grads))]
    checks = [("final energy < initial energy", tr.energies[-1] < tr.energies[0])]
    if restarts:
        rng = np.random.default_rng(seed + 1)
        for r in range(restarts):
            t = gradient_descent(obj, rng.uniform(0, 1, len(obj.symbols)), 0.001, 30)
            rows += [(f"restart{r}:{k}", e, float(np.linalg.norm(g)))
                     for k, (e, g) in enumerate(zip(t.energies, t.grads))]
    return rows, ("step", "energy", "grad_norm"), checks


def monomial_bench(backend="tn"):
    from ..evaluate import evaluate

    rows, checks = [], []
    for seed in range(3):
        d = ex.monomial_diagram(seed=seed)
        a = complex(evaluate(d, backend="tn").scalar)
        b = complex(evaluate(d, backend="permanent").scalar)
        rows.append((seed, a.real, b.real))
        checks.append((f"seed {seed}: backends agree", abs(a - b) <= 1e-8 * max(1.0, abs(b))))
    return rows, ("seed", "tn", "permanent"), checks


EXAMPLES = {
    "hom": hom,
    "hom-distinguishable": hom_distinguishable,
    "hom-loss": hom_loss,
    "teleport-zx": teleport_zx,
    "teleport-fusion": teleport_fusion,
    "fusion-fidelity-sweep": fusion_fidelity_sweep,
    "bose-hubbard-gd": bose_hubbard_gd,
    "monomial-bench": monomial_bench,
}
