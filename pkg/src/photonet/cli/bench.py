"""Tensor-network vs permanent benchmark on random MZI meshes.

Each (circuit, backend) pair runs in its own subprocess under a wall-clock
timeout and an address-space limit, so one record cannot starve another.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import resource
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .circuit_file import parse, serialize

DEPTH_FORMULAS = {
    "constant": "l = 2",
    "log": "l = floor(log2(7 n / 5))",
    "linear": "l = floor(n / 2 + 1)",
}
BACKENDS = ("tn", "permanent")
STATUSES = ("ok", "timeout", "oom", "ineligible")


def depth(rule: str, n: int) -> int:
    """Number of ansatz layers for ``n`` modes."""
    if rule == "constant":
        return 2
    if rule == "log":
        return max(1, math.floor(math.log2(7 * n / 5)))
    if rule == "linear":
        return math.floor(n / 2 + 1)
    raise ValueError(f"unknown depth rule {rule!r}")


@dataclass
class BenchRecord:
    circuit_id: str
    modes: int
    photons: int
    depth_class: str
    backend: str
    wall_time_s: float | None
    peak_size: int | None
    status: str


def monomial_powers(modes: int, degree: int, rng) -> list:
    """Split ``degree`` over the modes at random."""
    powers = [0] * modes
    for k in rng.integers(0, modes, size=degree):
        powers[int(k)] += 1
    return powers


def make_circuit(modes: int, photons: int, rule: str, seed: int):
    """Seeded ``<psi| U† M U |psi>`` with ``M`` a monomial of degree ``floor(1.5 n)``."""
    from ..experiments import chip_mzi
    from ..generators import Create
    from ..vqe import monomial_layer

    if photons > modes:
        raise ValueError("more photons than modes")
    rng = np.random.default_rng([seed, modes, photons, list(DEPTH_FORMULAS).index(rule)])
    occ = (1,) * photons + (0,) * (modes - photons)
    U = chip_mzi(modes, depth(rule, modes), rng)
    powers = monomial_powers(modes, math.floor(1.5 * photons), rng)
    d = Create(*occ) >> U >> monomial_layer(powers) >> U.dagger() >> Create(*occ).dagger()
    meta = {"modes": modes, "photons": photons, "depth_class": rule,
            "layers": depth(rule, modes), "powers": powers, "seed": seed}
    return d, meta


# -- worker -----------------------------------------------------------------

def run_one(doc: dict, backend: str) -> dict:
    """Evaluate a closed circuit once; used inside the worker process."""
    from ..errors import BackendIneligible
    from ..evaluate import evaluate

    d = parse(doc)
    t0 = time.perf_counter()
    try:
        r = evaluate(d, backend=backend)
    except BackendIneligible as err:
        return {"status": "ineligible", "error": str(err)}
    except MemoryError:
        return {"status": "oom"}
    wall = time.perf_counter() - t0
    if backend == "tn":
        peak = int(r.report["stats"].peak_size)
    else:
        peak = int(r.report.get("peak_terms", r.report.get("terms", 0)))
    v = complex(r.scalar)
    return {"status": "ok", "wall": wall, "peak": peak, "value": [v.real, v.imag]}


def _limit(mem_cap):
    def f():
        if mem_cap:
            resource.setrlimit(resource.RLIMIT_AS, (mem_cap, mem_cap))
    return f


def run_isolated(path: Path, backend: str, timeout: float, mem_cap: int | None) -> dict:
    cmd = [sys.executable, "-m", "photonet.cli.bench", str(path), backend]
    try:
        p = subprocess.run(cmd, capture_output=True, text=True, timeout=timeout,
                           preexec_fn=_limit(mem_cap))
    except subprocess.TimeoutExpired:
        return {"status": "timeout"}
    if p.returncode != 0:
        oom = "MemoryError" in p.stderr or p.returncode < 0
        return {"status": "oom" if oom else "error", "error": p.stderr[-500:]}
    try:
        return json.loads(p.stdout.strip().splitlines()[-1])
    except (ValueError, IndexError):
        return {"status": "error", "error": p.stdout[-500:]}


# -- driver -----------------------------------------------------------------

def run_bench(modes=None, photons=(2, 3), depths=("constant", "log", "linear"), seeds=1,
              timeout=60.0, mem_cap=None, jobs=1, out_dir="bench_out", omit_timing=False,
              backends=BACKENDS, progress=None):
    """Run the harness; returns ``(records, values)`` and writes CSV plus metadata."""
    out = Path(out_dir)
    (out / "circuits").mkdir(parents=True, exist_ok=True)
    tasks = []
    for n in photons:
        for m in (modes or [n]):
            if n > m:
                continue
            for rule in depths:
                for seed in range(seeds):
                    cid = f"m{m}-n{n}-{rule}-s{seed}"
                    d, meta = make_circuit(m, n, rule, seed)
                    path = out / "circuits" / f"{cid}.json"
                    path.write_text(json.dumps(serialize(d, meta=meta), sort_keys=True))
                    for b in backends:
                        tasks.append((cid, m, n, rule, b, path))

    def work(task):
        cid, m, n, rule, b, path = task
        res = run_isolated(path, b, timeout, mem_cap)
        if progress:
            progress(f"{cid} {b}: {res['status']}")
        return task, res

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            results = list(ex.map(work, tasks))
    else:
        results = [work(t) for t in tasks]

    records, values, errors = [], {}, {}
    for (cid, m, n, rule, b, _), res in results:
        ok = res["status"] == "ok"
        records.append(BenchRecord(
            cid, m, n, rule, b,
            None if (omit_timing or not ok) else round(res["wall"], 6),
            res.get("peak") if ok else None,
            # an unexplained crash under the address-space limit counts as oom
            res["status"] if res["status"] in STATUSES else "oom",
        ))
        if "error" in res:
            errors[f"{cid}/{b}"] = res["error"]
        if ok:
            values.setdefault(cid, {})[b] = complex(*res["value"])

    (out / "bench.csv").write_text(to_csv(records))
    meta = {
        "depth_formulas": {r: DEPTH_FORMULAS[r] for r in depths},
        "monomial_degree": "floor(1.5 n)",
        "timeout_s": timeout,
        "mem_cap_bytes": mem_cap,
        "seeds": seeds,
        "values": {cid: {b: [v.real, v.imag] for b, v in sorted(vs.items())}
                   for cid, vs in sorted(values.items())},
        "agreement": agreement(values),
        "errors": errors,
    }
    (out / "bench.meta.json").write_text(json.dumps(meta, indent=1, sort_keys=True))
    return records, values


def agreement(values) -> dict:
    """Largest relative TN/permanent difference per circuit where both finished."""
    out = {}
    for cid, vs in sorted(values.items()):
        if len(vs) == 2:
            a, b = vs["tn"], vs["permanent"]
            out[cid] = abs(a - b) / max(1.0, abs(b))
    return out


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = [f.name for f in fields(BenchRecord)]
    w.writerow(names)
    for r in records:
        row = asdict(r)
        w.writerow(["" if row[k] is None else row[k] for k in names])
    return buf.getvalue()


def _worker_main(argv):
    path, backend = argv
    print(json.dumps(run_one(json.loads(Path(path).read_text()), backend)))


if __name__ == "__main__":
    os.environ.setdefault("OMP_NUM_THREADS", "1")
    _worker_main(sys.argv[1:])
