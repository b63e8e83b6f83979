"""Spectral operators on the periodic grid (FFT-based, float64).

poisson_solve solves Lap u = rhs with the zero mode pinned to zero; the
right-hand side must have (numerically) zero mean for solvability on the
torus.  curl_solve returns the unique zero-mean divergence-free H with
curl H = S for a divergence-free zero-mean S.
"""

import numpy as np

from ..errors import NonZeroMean


def _fft(f):
    return np.fft.fftn(f)


def _ifft(F):
    return np.real(np.fft.ifftn(F))


def poisson_solve(rhs, grid, tol=1e-12):
    scale = float(np.max(np.abs(rhs))) or 1.0
    mean = abs(float(np.mean(rhs)))
    if mean > tol * scale:
        raise NonZeroMean("mean(rhs) = %g exceeds %g" % (mean, tol * scale))
    F = _fft(rhs)
    with np.errstate(divide="ignore", invalid="ignore"):
        U = F / (-grid.K2)
    U[0, 0, 0] = 0.0
    return _ifft(U)


def laplacian(f, grid):
    return _ifft(-grid.K2 * _fft(f))


def grad(f, grid):
    F = _fft(f)
    return (
        _ifft(1j * grid.KX * F),
        _ifft(1j * grid.KY * F),
        _ifft(1j * grid.KZ * F),
    )


def div(V, grid):
    return _ifft(
        1j * grid.KX * _fft(V[0]) + 1j * grid.KY * _fft(V[1]) + 1j * grid.KZ * _fft(V[2])
    )


def curl(V, grid):
    F = [_fft(c) for c in V]
    kx, ky, kz = grid.KX, grid.KY, grid.KZ
    return (
        _ifft(1j * (ky * F[2] - kz * F[1])),
        _ifft(1j * (kz * F[0] - kx * F[2])),
        _ifft(1j * (kx * F[1] - ky * F[0])),
    )


def curl_solve(S, grid, tol=1e-10):
    """Zero-mean divergence-free H with curl H = S (S zero-mean, div-free)."""
    F = [_fft(c) for c in S]
    for c in F:
        if abs(c[0, 0, 0]) > tol * (1.0 + max(float(np.max(np.abs(x))) for x in F)):
            raise NonZeroMean("curl_solve source has a nonzero mean component")
    kx, ky, kz = grid.KX, grid.KY, grid.KZ
    cx = 1j * (ky * F[2] - kz * F[1])
    cy = 1j * (kz * F[0] - kx * F[2])
    cz = 1j * (kx * F[1] - ky * F[0])
    with np.errstate(divide="ignore", invalid="ignore"):
        hx = cx / grid.K2
        hy = cy / grid.K2
        hz = cz / grid.K2
    for H in (hx, hy, hz):
        H[0, 0, 0] = 0.0
    return (_ifft(hx), _ifft(hy), _ifft(hz))


def inf_norm(f):
    if isinstance(f, (tuple, list)):
        return max(float(np.max(np.abs(c))) for c in f)
    return float(np.max(np.abs(f)))
