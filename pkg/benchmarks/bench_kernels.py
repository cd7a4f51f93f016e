"""Time the compiled and pure-Python kernels side by side.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from saruma import _backend


def cases(rng):
    beta = rng.uniform(-0.9, 0.9, 25)
    phi = _backend.kernels.levinson_forward(beta)
    ar = np.concatenate(([1.0], -phi[:13]))
    ma = np.array([1.0, 0.4] + [0.0] * 10 + [0.3])
    y = rng.normal(size=2000)
    return {
        "levinson_forward n=25": lambda k: k.levinson_forward(beta),
        "levinson_inverse n=25": lambda k: k.levinson_inverse(phi, 1e-10),
        "css_residuals T=2000": lambda k: k.css_residuals(ar, ma, y),
        "arma_simulate T=2000": lambda k: k.arma_simulate(ar, ma, y),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = _backend.available_backends()
    print(f"{'kernel':24s}" + "".join(f"{name:>14s}" for name in backends) + "   speedup")
    for label, call in cases(np.random.default_rng(0)).items():
        times = {}
        for name, mod in backends.items():
            timer = timeit.Timer(lambda: call(mod))
            number, _ = timer.autorange()
            times[name] = min(timer.repeat(args.repeat, number)) / number
        row = "".join(f"{times[n] * 1e6:12.1f}us" for n in backends)
        speed = f"{times['python'] / times['cython']:9.1f}x" if len(times) == 2 else ""
        print(f"{label:24s}{row}{speed}")


if __name__ == "__main__":
    main()
