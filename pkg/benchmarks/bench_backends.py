"""Compare the compiled and pure-Python engine backends.

    $ python3 benchmarks/bench_backends.py
    $ python3 benchmarks/bench_backends.py --sizes 200 400 800 --model ba --json out.json

Each row reports the median of ``--repeats`` timings of compute_all and
checks that both backends give the same numbers (1e-9 per entry).
"""

import argparse
import json
import statistics
import time

import numpy as np

from cobetween.engine import BACKENDS, compute_all
from cobetween.netgen import generate


def timed(g, backend, workers, repeats):
    runs = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = compute_all(g, backend=backend, workers=workers)
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="er", choices=["er", "ba", "tree"])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    ap.add_argument("--mean-degree", type=float, default=6.0)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args(argv)

    if "cython" not in BACKENDS:
        print("compiled backend not built; only the python backend is available")
    params = {"mean_degree": args.mean_degree} if args.model == "er" else {"m": args.m}

    rows = []
    print(f"{'n':>6} {'edges':>7} " + " ".join(f"{b:>10}" for b in BACKENDS) + "   speedup")
    for n in args.sizes:
        g = generate(args.model, n, params, args.seed)
        row = {"n": n, "edges": g.n_e}
        results = {}
        for b in BACKENDS:
            row[b], results[b] = timed(g, b, args.workers, args.repeats)
        if len(results) == 2:
            a, c = results["python"], results["cython"]
            np.testing.assert_allclose(a.betweenness, c.betweenness, rtol=0, atol=1e-9)
            np.testing.assert_allclose(a.cob_dense(), c.cob_dense(), rtol=0, atol=1e-9)
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)
        cells = " ".join(f"{row[b]:>9.3f}s" for b in BACKENDS)
        speed = f"{row['speedup']:>8.1f}x" if "speedup" in row else ""
        print(f"{n:>6} {g.n_e:>7} {cells} {speed}")

    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"model": args.model, "workers": args.workers, "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
