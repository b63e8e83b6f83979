"""Boost/rotation multiplet catalog and Lorentz inputs."""

from .catalog import (
    GalileiRep,
    SlotLayout,
    all_labels,
    build_galilei_rep,
    check_rep,
    check_rotation,
    direct_sum_galilei,
    rotation_matrix,
    spin1,
)
from .identify import identify_rep
from .lorentz import (
    LorentzRep,
    direct_sum,
    medium_rep,
    scalar_rep,
    so13_check,
    standard_lorentz_rep,
    tensor_rep,
    vector_plus_scalar_rep,
    vector_rep,
)
