"""Subgroup lattices of small finite groups, cyclic-central-Sylow reduction, and similarity classes."""

from .groups import (
    MAX_ORDER,
    Group,
    GroupError,
    InvalidMultiplierError,
    SizeCapError,
    alternating,
    are_isomorphic,
    cyclic,
    dihedral,
    direct_product,
    from_permutations,
    named,
    quaternion,
    semidirect_cyclic,
    symmetric,
)
from .groupspec import group_from_spec, parse_spec
from .lattice import Subgroup, SubgroupLattice, all_subgroups, closure, count_subgroups, is_normal
from .structure import center, decompose, is_tilde_fixed, sylow

__version__ = "0.1.0"
