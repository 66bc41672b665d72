"""Exact computations on flag-convex polynomial curves in the lower unitriangular group.

Submodules: ``exactnum`` (rational polynomials, Sturm root isolation),
``curve`` (curves, minors, positivity, extension, duality), ``bruhat``
(permutations, Bruhat cells, good matrices, itineraries), ``words``
(admissible cyclic words, rank, moves, crossing sequences), ``verify``
(suites) and ``cli``.
"""

from .bruhat import (
    Itinerary, Permutation, ReducedWord, bruhat_cell, build_good_matrix,
    count_nontransversality, distinctify, eta_word, itinerary, mult_vector,
)
from .curve import (
    LowerUni, NilpotentGenerator, PolynomialCurve, extend_curve, make_curve,
    minor_k, minors, project, unit_generator,
)
from .exactnum import Poly, RootInterval, count_real_roots, isolate_roots
from .words import (
    AdmissibleWord, certify_theorem_main, crossing_sequence, rank, word_of_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleWord", "Itinerary", "LowerUni", "NilpotentGenerator", "Permutation",
    "Poly", "PolynomialCurve", "ReducedWord", "RootInterval", "bruhat_cell",
    "build_good_matrix", "certify_theorem_main", "count_nontransversality",
    "count_real_roots", "crossing_sequence", "distinctify", "eta_word",
    "extend_curve", "isolate_roots", "itinerary", "make_curve", "minor_k",
    "minors", "mult_vector", "project", "rank", "unit_generator", "word_of_matrix",
]
