#!/usr/bin/env python3
"""Compare the numba-compiled polynomial kernel against the numpy fallback.

Run directly or via `galinv bench`; set GALINV_DISABLE_NUMBA=1 to make the
fallback the active backend.
"""

from galinv.bench import run_benchmark

if __name__ == "__main__":
    print(run_benchmark(repeats=5000))
