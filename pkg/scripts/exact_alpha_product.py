"""Budgeted attempt at the exact independence number of G boxtimes G.

G is the distance-{1,2} graph on the 5-cube. The search is seeded with the
known 20-element set, so it can only prove optimality or run out of budget.
Set CAPAX_THREADS to split the root across processes.
"""
import argparse
import sys
import time

from capax import fixtures
from capax.graph import hamming_graph, strong_product
from capax.independence import (
    EXACT,
    SearchBudget,
    count_maximum_independent_sets,
    default_threads,
    max_independent_set,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-seconds", type=float, default=600.0)
    ap.add_argument("--max-nodes", type=int, default=10**12)
    ap.add_argument("--count", action="store_true", help="also count the maximum independent sets")
    args = ap.parse_args()

    g = hamming_graph(5, [1, 2])
    p = strong_product(g, g)
    budget = SearchBudget(args.max_nodes, args.max_seconds)
    t0 = time.perf_counter()
    size, cert, status = max_independent_set(
        p, budget, initial=fixtures.product_independent_set(), threads=default_threads()
    )
    print(f"alpha >= {size} ({status}) after {time.perf_counter() - t0:.1f}s")
    if status == EXACT and args.count:
        count, cstatus = count_maximum_independent_sets(p, size, budget)
        print(f"{count} maximum independent sets ({cstatus})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
