"""Exact invariant theory behind the map Hom(Z^m, G)_0 -> map_*(BZ^m, BG)_0 in rational cohomology."""

__version__ = "0.1.0"

from .algebra import AlgebraShape, Element, Monomial, extract_t_coefficient, parse_element
from .weyl import BudgetExceeded, Family, WeylElement, act, molien_dims, reynolds
from .rings import RingModel, coinvariant_model, degree_basis, free_model, su_quotient
from .invariants import Subalgebra, decomposables_span, invariant_basis
from .generators import GeneratorLabel, build_S, build_Smap, verify_generation, w_gen, z_gen
from .theta import check_surjectivity, parity_split, so_even_witness, theta_closed, theta_expand
from .coker import coker_closed_form, coker_dim, theta_indec_matrix

__all__ = [
    "AlgebraShape", "Element", "Monomial", "extract_t_coefficient", "parse_element",
    "BudgetExceeded", "Family", "WeylElement", "act", "molien_dims", "reynolds",
    "RingModel", "coinvariant_model", "degree_basis", "free_model", "su_quotient",
    "Subalgebra", "decomposables_span", "invariant_basis",
    "GeneratorLabel", "build_S", "build_Smap", "verify_generation", "w_gen", "z_gen",
    "check_surjectivity", "parity_split", "so_even_witness", "theta_closed", "theta_expand",
    "coker_closed_form", "coker_dim", "theta_indec_matrix",
]
