"""Exact combinatorics and bookkeeping for morphisms from CP^m to smooth complete toric varieties."""

from .errors import InputError
from .fan import Cone, Fan, ValidationReport, catalog, faces, load_fan, parse_fan, serialize_fan, validate
from .grading import ClassGroup, class_group, g_membership, same_degree, valid_morphism_degree
from .lattice import SnfResult, snf, solve_integral
from .morphism import MorphismCandidate, Verdict, same_morphism, sample, stabilize_profile, verify
from .poly import HomogPoly, IdealBasis, gcd_binary_forms, resultant_binary, vanishes_only_at_origin
from .primitive import PrimitiveCollection, YDecomposition, primitive_collections, y_membership_oracle
from .stability import (BidegreeProfile, FiltrationProfile, StabilityReport, filtration_profile,
                        polyspace_dim, stab_rank_shift, stability_bound, stable_range_from_duality)

__version__ = "0.1.0"
