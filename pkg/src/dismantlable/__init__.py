"""Finite groups, their subgroup lattices, and dismantlability."""

from .algorithms import (Crown, DismantlingWitness, LatticeLaws, NotDismantlable, brute_force_dismantlable,
                         dismantle, find_boolean_cube, find_crown, is_dismantlable, lattice_laws,
                         removable_elements, validate_crown, verify_dismantling_witness)
from .classify import (IN_D, NOT_IN_D, UNKNOWN, Analysis, GroupProfile, analyze, computed_membership,
                       predicted_membership, profile)
from .dsl import SpecSyntaxError, parse_spec
from .groups import (ConstraintError, Group, GroupError, OrderCapExceeded, build_group, direct_product,
                     group_from_table, permutation_group, quotient_group, validate_group)
from .lattice import Lattice, NotALattice, lattice_from_covers, lattice_from_leq, lattice_from_sets
from .subgroups import (SubgroupLimitExceeded, SubgroupSet, all_subgroups, build_lattice, is_normal,
                        subgroup_conjugacy_classes, to_dot)


def group(text: str, cap: int | None = None) -> Group:
    """Build a group straight from a spec string such as ``"D:12"``."""
    spec = parse_spec(text)
    return build_group(spec) if cap is None else build_group(spec, cap)
