"""Periodic-grid spectral solver with residual diagnostics."""

from .grid import Grid
from .snapshot import Snapshot, read_snapshot, write_snapshot
from .sources import SourceSpec
