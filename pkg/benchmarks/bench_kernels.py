"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--starts 64]

Each kernel runs once untimed on both backends (numba compiles then), then
``--repeat`` timed runs; the best time is reported.  Results are checked for
agreement before any timing is trusted.
"""
import argparse
import time

import numpy as np

from gft import _kernels
from gft import oracle as orc
from gft import regions as rg
from gft.classes import get_class


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(starts):
    rng = np.random.default_rng(0)
    phi = orc.phi_array(get_class("sr"))
    J = 3
    x = np.concatenate([rng.normal(size=(starts, J)), rng.uniform(0, 2 * np.pi, (starts, J))], 1)
    x_eval = np.concatenate([rng.normal(size=(20000, J)), rng.uniform(0, 2 * np.pi, (20000, J))], 1)
    bd = rg.exp_region().sample(4096)
    pts = rng.uniform(-1, 3, 2000) + 1j * rng.uniform(-2, 2, 2000)
    return {
        "evaluate 20000 pts (absA5)":
            lambda b: _kernels.evaluate(x_eval, _kernels.HERGLOTZ, J, phi, _kernels.ABS_A5, backend=b),
        f"descend {starts} starts x 2000 it":
            lambda b: _kernels.descend(x, _kernels.HERGLOTZ, J, phi, _kernels.ABS_A5, iterations=2000,
                                       backend=b)[1],
        "winding 2000 pts / 4096 nodes":
            lambda b: _kernels.winding(bd, pts, backend=b)[0],
        "maximize absA5 on S*_R":
            lambda b: np.array([orc.maximize(orc.Functional("absA5"), get_class("sr"),
                                             orc.SearchBudget(starts, 2000, seed=1), backend=b).value]),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--starts", type=int, default=64)
    args = ap.parse_args(argv)

    if _kernels.BACKEND != "numba":
        print("numba is not available; only the numpy backend can run")
        backends = ["numpy"]
    else:
        backends = ["numpy", "numba"]

    print(f"{'kernel':36s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup  agree")
    for name, fn in cases(args.starts).items():
        outs = {b: np.asarray(fn(b)) for b in backends}
        agree = all(np.allclose(outs[backends[0]], o, rtol=1e-8, atol=1e-12) for o in outs.values())
        times = {b: best_of(lambda: fn(b), args.repeat) for b in backends}
        speed = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        print(f"{name:36s} " + " ".join(f"{times[b]*1e3:9.1f}ms" for b in backends)
              + f"   {speed:6.1f}x  {agree}")


if __name__ == "__main__":
    main()
