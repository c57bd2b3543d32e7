"""Timing comparison of the twisted-orbit kernels.

Runs the box oracle's union-find enumeration through every available backend
(the compiled extension and the pure-Python reference) on a ladder of box
sizes and prints a table with per-backend wall time and the speedup.

Usage: python benchmarks/bench_oracle.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time
from array import array

from gsbs._orbit import available_backends
from gsbs.autos import apply
from gsbs.groups import action_exponent, element, make_params
from gsbs.twisted import _odometer
from gsbs.witness import witness_automorphism


def kernel_inputs(params, phi, element_box, conjugator_box):
    r, mod = params.r, params.modulus
    pinv = array("q")
    for y in _odometer(r, element_box):
        pinv.append(action_exponent(params, tuple(-v for v in y)) % mod)
    dvecs, avals, tvals = array("q"), array("q"), array("q")
    for k in _odometer(r, conjugator_box):
        mk = phi.M.matvec(k)
        d = tuple(a - b for a, b in zip(k, mk))
        if any(abs(v) > 2 * element_box for v in d):
            continue
        dvecs.extend(d)
        avals.append(action_exponent(params, mk) % mod)
        tvals.append(apply(params, phi, element(params, k, 0)).theta % mod)
    return (r, mod, element_box, element_box // 2, phi.mu % mod, pinv, dvecs, avals, tvals)


CASES = [
    # (n, c, element box, conjugator box)
    (15, 2, 4, 8),
    (15, 2, 8, 12),
    (15, 3, 6, 10),
    (21, 2, 10, 14),
    (15, 4, 6, 10),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="timed repetitions, best is kept")
    args = ap.parse_args()

    backends = available_backends()
    names = sorted(backends)
    header = f"{'case':<26}{'nodes':>10}{'count':>7}" + "".join(f"{n + ' (s)':>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for n, c, be, bc in CASES:
        params = make_params(n, c)
        phi = witness_automorphism(params)
        inputs = kernel_inputs(params, phi, be, bc)
        nodes = (2 * be + 1) ** params.r * params.modulus
        times = {}
        counts = set()
        for name in names:
            kernel = backends[name]
            best = min(
                timed(kernel, inputs) for _ in range(max(1, args.repeat))
            )
            times[name] = best
            counts.add(kernel(*inputs))
        assert len(counts) == 1, f"backends disagree on ({n},{c}): {counts}"
        case = f"n={n} c={c} box {be}/{bc}"
        row = f"{case:<26}{nodes:>10}{counts.pop():>7}"
        row += "".join(f"{times[name]:>14.4f}" for name in names)
        if len(names) == 2:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)

    if len(names) == 1:
        print("\ncompiled backend not built; showing the pure-Python kernel only")


def timed(kernel, inputs) -> float:
    start = time.perf_counter()
    kernel(*inputs)
    return time.perf_counter() - start


if __name__ == "__main__":
    main()
