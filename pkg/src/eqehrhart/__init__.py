"""Exact classical and equivariant Ehrhart theory for rational polytopes."""
from .algebra import (CycloNum, NonRational, Poly, RationalGenFunction, binom,
                      cyclotomic_polynomial, rf_expand, rf_reduce)
from .ehrhart import (EhrhartData, InterpolationMismatch, NonTerminating, QuasiPolynomial,
                      ehrhart, hstar_from_counts, minimal_period, quasipolynomial_fit)
from .equivariant import (EquivariantSetup, HStarReport, NotInvariant, RouteMismatch,
                          denominator_factor, equivariant_series, fixed_ehrhart,
                          fixed_point_count, fixed_polytope, hstar_series, orbit_count,
                          validate_setup)
from .groups import (CharacterTable, ClassFunction, FiniteMatrixGroup, GroupTooLarge,
                     NonIntegral, VirtualCharacter, bind_table, char_table_cyclic,
                     char_table_dihedral, char_table_product, decompose, det_factor,
                     group_closure, is_effective, reconstruct, user_table)
from .lattice import (DegeneratePolytope, RationalPolytope, Sublattice, affine_decomposition,
                      denominator, enumerate_points, fixed_sublattice, free_sum,
                      hull_halfspaces, lattice_point_count, lattice_point_counts,
                      polytope_from_halfspaces, restrict_to_sublattice)

__version__ = "0.1.0"
