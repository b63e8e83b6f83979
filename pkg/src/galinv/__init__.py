"""galinv: exact toolkit for Galilei-invariant massless field systems.

Subpackages: exact (rational/polynomial algebra), reps (multiplet catalog),
contraction (boost-rescaling limits), fields (calculus, covariance engine,
forms, invariants, energy-momentum), systems (catalog + DSL + classifier),
sim (periodic-grid solver).  The `galinv` command wires everything together.
"""

__version__ = "0.1.0"
