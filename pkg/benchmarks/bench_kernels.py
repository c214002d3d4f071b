"""Compare the compiled and pure-Python transfer kernels on a few workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from wormhole import kernels
from wormhole.diagram import hopf, theta_diagram, unknot, z_power
from wormhole.engine import cable, wormhole_reduce


def workloads():
    yield "hopf(3,3)", [cable(hopf(3, 3)).ops]
    yield "hopf(4,2)", [cable(hopf(4, 2)).ops]
    yield "theta(4,4,4)", [cable(theta_diagram(4, 4, 4)).ops]
    yield "unknot(8)", [cable(unknot(8)).ops]
    yield "z^8 reduction", [cable(d).ops for _, d in wormhole_reduce(z_power(8))]


def run(impl, programs, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = [impl.transfer_sweep(ops) for ops in programs]
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    impls = kernels.backends()
    names = sorted(impls)
    print(f"{'workload':16}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, programs in workloads():
        times = {}
        results = {}
        for n in names:
            times[n], results[n] = run(impls[n], programs, args.repeat)
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        row = f"{label:16}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:11.2f}x"
        print(row)


if __name__ == "__main__":
    main()
