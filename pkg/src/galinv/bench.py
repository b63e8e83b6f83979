"""Benchmark the exact polynomial product kernel: numba jit vs numpy fallback.

The measured operation is the hot path of the covariance engine: accumulate
the product of two dense degree-3 integer polynomials into a degree-6
vector.  Both paths produce identical int64 results; GALINV_DISABLE_NUMBA=1
selects the fallback at import time, while this benchmark times both
implementations in-process.
"""

import time

import numpy as np

from .fields import dense


def _numpy_mul_acc(out, a, b, coef=1):
    ia = np.flatnonzero(a)
    ib = np.flatnonzero(b)
    if not (ia.size and ib.size):
        return
    prod = np.outer(a[ia], b[ib]).ravel() * coef
    idx = dense.MUL_TABLE[np.ix_(ia, ib)].ravel()
    np.add.at(out, idx, prod)


def run_benchmark(repeats=2000, seed=0):
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(64):
        a = np.zeros(dense.NB, dtype=np.int64)
        b = np.zeros(dense.NB, dtype=np.int64)
        a[: dense.NB3] = rng.integers(-5, 6, dense.NB3)
        b[: dense.NB3] = rng.integers(-5, 6, dense.NB3)
        pairs.append((a, b))

    out1 = np.zeros(dense.NB, dtype=np.int64)
    out2 = np.zeros(dense.NB, dtype=np.int64)

    # warm up (includes jit compilation when numba is active)
    dense.mul_acc(out1, *pairs[0])
    _numpy_mul_acc(out2, *pairs[0])
    if not np.array_equal(out1, out2):
        raise AssertionError("kernel implementations disagree")

    def timeit(fn):
        out = np.zeros(dense.NB, dtype=np.int64)
        t0 = time.perf_counter()
        for k in range(repeats):
            a, b = pairs[k % len(pairs)]
            fn(out, a, b)
        return time.perf_counter() - t0

    t_active = timeit(dense.mul_acc)
    t_numpy = timeit(_numpy_mul_acc)
    backend = "numba" if dense.USE_NUMBA else "numpy (fallback)"
    lines = [
        "polynomial product kernel, %d calls:" % repeats,
        "  active backend (%s): %.4f s  (%.1f us/call)" % (backend, t_active, 1e6 * t_active / repeats),
        "  numpy reference:      %.4f s  (%.1f us/call)" % (t_numpy, 1e6 * t_numpy / repeats),
        "  speedup: %.1fx" % (t_numpy / t_active if t_active else float("inf")),
    ]
    return "\n".join(lines)


if __name__ == "__main__":
    print(run_benchmark())
