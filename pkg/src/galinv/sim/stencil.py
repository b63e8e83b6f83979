"""Central-difference operators used for the discrete-identity diagnostics.

Central differences on the periodic lattice satisfy div(curl F) == 0 and
curl(grad f) == 0 exactly up to the rounding of symmetric sums, which is the
property the diagnostics assert.
"""

import numpy as np


def _d(f, axis, h):
    return (np.roll(f, -1, axis=axis) - np.roll(f, 1, axis=axis)) / (2.0 * h)


def grad_c(f, h):
    return (_d(f, 0, h), _d(f, 1, h), _d(f, 2, h))


def div_c(V, h):
    return _d(V[0], 0, h) + _d(V[1], 1, h) + _d(V[2], 2, h)


def curl_c(V, h):
    return (
        _d(V[2], 1, h) - _d(V[1], 2, h),
        _d(V[0], 2, h) - _d(V[2], 0, h),
        _d(V[1], 0, h) - _d(V[0], 1, h),
    )
