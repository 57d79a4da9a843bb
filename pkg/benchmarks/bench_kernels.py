"""Time the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from lameball import _pykernels
from lameball.elastic import _t_rule

try:
    from lameball import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    x = rng.standard_normal((2000, 3))
    x *= (0.9 / np.linalg.norm(x, axis=1))[:, None] * rng.uniform(0, 1, (2000, 1))
    eta = rng.standard_normal((2000, 3))
    eta /= np.linalg.norm(eta, axis=1)[:, None]
    t, w = _t_rule(128, 0.75)
    return {
        "solid_harmonics n=2000 L=8": lambda k: k.solid_harmonics(x, 8),
        "solid_harmonics n=200 L=40": lambda k: k.solid_harmonics(x[:200], 40),
        "poisson_hessian n=2000": lambda k: k.poisson_hessian(x, eta),
        "hessian_moment m=1225 t=128": lambda k: k.hessian_moment(x[0], eta[:1225], t, w),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':<32}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for name, call in cases(rng).items():
        py = best(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:<32}{py * 1e3:>14.2f}{'n/a':>14}{'':>10}")
            continue
        cy = best(lambda: call(_ckernels), args.repeat)
        print(f"{name:<32}{py * 1e3:>14.2f}{cy * 1e3:>14.2f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
