"""Compare the pure-Python and compiled search kernels on shared workloads.

Run from the repository root:

    python3 benchmarks/bench_search.py [--repeat N]
"""

import argparse
import statistics
import time

from doubletrace import search_backend
from doubletrace.graphs import Graph, complete_graph, cycle_graph
from doubletrace.search_backend import (
    ANTI,
    FREE,
    MODE_COUNT_RAW,
    MODE_EXISTS,
    PAR,
    run_with,
)


def lower(g):
    return g.vertex_count, [a for a, _ in g.edges], [b for _, b in g.edges]


WHEEL = Graph(6, [(i, i % 5 + 1) for i in range(1, 6)] + [(0, i) for i in range(1, 6)])

CASES = [
    ("K4 raw census", complete_graph(4), [FREE] * 6, {"mode": MODE_COUNT_RAW}),
    (
        "K5 strong trace",
        complete_graph(5),
        [FREE] * 10,
        {"mode": MODE_EXISTS, "require_strong": True},
    ),
    (
        "C6 antiparallel census",
        cycle_graph(6),
        [ANTI] * 6,
        {"mode": MODE_COUNT_RAW},
    ),
    (
        "K4 mixed labels census",
        complete_graph(4),
        [ANTI, ANTI, ANTI, PAR, PAR, PAR],
        {"mode": MODE_COUNT_RAW},
    ),
    (
        "wheel 1-stable antiparallel",
        WHEEL,
        [ANTI] * 10,
        {"mode": MODE_EXISTS, "d_max": 1},
    ),
]


def bench(backend, g, labels, kw, repeat):
    n, ea, eb = lower(g)
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = run_with(backend, n, ea, eb, list(labels), **kw)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def summarize(result):
    if isinstance(result, int):
        return f"count={result}"
    if result is None:
        return "none"
    return f"steps={len(result)}"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if search_backend.BACKEND != "compiled":
        print("compiled backend unavailable; timing python only")
    print(f"{'case':<28} {'python':>10} {'compiled':>10} {'speedup':>8}  result")
    for name, g, labels, kw in CASES:
        t_py, r_py = bench("python", g, labels, kw, args.repeat)
        if search_backend.BACKEND == "compiled":
            t_cy, r_cy = bench("compiled", g, labels, kw, args.repeat)
            if r_py != r_cy:
                raise SystemExit(f"backend disagreement on {name!r}")
            print(
                f"{name:<28} {t_py * 1e3:>8.1f}ms {t_cy * 1e3:>8.1f}ms "
                f"{t_py / t_cy:>7.1f}x  {summarize(r_py)}"
            )
        else:
            print(f"{name:<28} {t_py * 1e3:>8.1f}ms {'-':>10} {'-':>8}  {summarize(r_py)}")


if __name__ == "__main__":
    main()
