"""Time the compiled kernels against the pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs under both backends; the report shows the best wall time
of N repeats and the speed-up.
"""

from __future__ import annotations

import argparse
import timeit
from fractions import Fraction
from math import prod

from fanosieve import _kernel
from fanosieve.arith import km_budget_3fold
from fanosieve.basket import basket_sequence, enumerate_baskets
from fanosieve.rr import rr_admissible
from fanosieve.sieve import enumerate_candidates, threefold_sieve


def _rr_batch(backend: str) -> int:
    admissible = 0
    for q in range(3, 13):
        for c in enumerate_candidates(q):
            for b in basket_sequence(c.J, km_budget_3fold(c.degree), backend):
                if prod(r.r for r in b) <= 4096:
                    admissible += rr_admissible(q, c.degree, b, backend).admissible
    return admissible


WORKLOADS = {
    # basket_sequence stops at index tuples, so these time the search itself
    "baskets J=1 budget=24": lambda be: len(basket_sequence(1, 24, be)),
    "baskets J=6 budget=24": lambda be: len(basket_sequence(6, 24, be)),
    "baskets J=30 budget=33/2": lambda be: len(basket_sequence(30, Fraction(33, 2), be)),
    "basket objects J=2 budget=23": lambda be: len(enumerate_baskets(2, 23, be)),
    "rr batch q<=12": _rr_batch,
    "threefold sieve 3..66": lambda be: len(threefold_sieve(3, 66, backend=be).survivors),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if len(_kernel.BACKENDS) < 2:
        print("compiled core not built; only the pure-Python backend is available")
    print(f"{'workload':28} " + " ".join(f"{b:>10}" for b in _kernel.BACKENDS) + "   speed-up")
    for name, work in WORKLOADS.items():
        results = {}
        times = {}
        for backend in _kernel.BACKENDS:
            results[backend] = work(backend)
            times[backend] = min(timeit.repeat(lambda: work(backend), number=1, repeat=args.repeat))
        assert len(set(results.values())) == 1, f"backends disagree on {name}: {results}"
        cols = " ".join(f"{times[b]:9.3f}s" for b in _kernel.BACKENDS)
        ratio = times["python"] / times["cython"] if "cython" in times else 1.0
        print(f"{name:28} {cols}   {ratio:7.1f}x")


if __name__ == "__main__":
    main()
