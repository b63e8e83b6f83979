"""Exact polynomial field calculus, covariance engine, and diagnostics."""

from .calculus import SPACETIME, cross, curl, div, dot, dt, grad, laplacian
from .motion import FieldMultiplet, GalileiMotion, pullback
