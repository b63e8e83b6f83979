"""Periodic cubic grid."""

import numpy as np

from ..errors import GalinvError


class Grid:
    """N points per axis (power of two, N >= 8), spacing h, box L = N h."""

    def __init__(self, N, h):
        N = int(N)
        if N < 8 or (N & (N - 1)) != 0:
            raise GalinvError("N must be a power of two >= 8 (got %d)" % N)
        if not h > 0:
            raise GalinvError("h must be positive")
        self.N = N
        self.h = float(h)
        self.L = N * self.h
        axis = np.arange(N) * self.h
        self.X, self.Y, self.Z = np.meshgrid(axis, axis, axis, indexing="ij")
        k1 = 2.0 * np.pi * np.fft.fftfreq(N, d=self.h)
        self.KX, self.KY, self.KZ = np.meshgrid(k1, k1, k1, indexing="ij")
        self.K2 = self.KX**2 + self.KY**2 + self.KZ**2

    def zeros(self):
        return np.zeros((self.N,) * 3)

    def integrate(self, f):
        return float(np.sum(f)) * self.h**3

    def __repr__(self):
        return "Grid(N=%d, h=%g, L=%g)" % (self.N, self.h, self.L)
