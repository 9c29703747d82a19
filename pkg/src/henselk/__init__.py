"""Exact computation over the field of rational Laurent series Q((t)).

Subpackages cover truncated series arithmetic with explicit precision
tracking, number-field extensions of the residue field, quantifier
elimination for integer linear arithmetic (used on valuation data),
Hensel lifting and branch expansion of plane curves, closure points of
definable sets, and arc selection with Lojasiewicz-style exponents.
"""

from .arcs_loja import (AnisotropicForm, Arc, LojaCertificate, NoArcFound,
                        PlaneAnd, PlaneNot, PlaneOr, VCompare, VZero,
                        anisotropic_form, loja_exponent, parity_check,
                        plane_and, plane_not, plane_or, select_arc)
from .closedness import (CellCondition, CellSet, ClosurePointResult,
                         FiberShrink, MembershipResult, NoShrink,
                         NotInClosure, construct_closure_point, fiber_shrink,
                         is_in_closure)
from .errors import (DegreeCapExceeded, DivisionByZero, DslParseError,
                     FieldMismatch, HenselkError, HypothesisFails,
                     IndeterminatePrecision, InvalidInput, InverseOfZero,
                     LeadingCoefficientVanishes, NotARoot, NotASimpleRoot,
                     UnsupportedSet)
from .hensel_puiseux import (AT_INFINITY, BivarPoly, Branch,
                             HenselFactorization, LimitRecord, NewtonPolygon,
                             branch_limits, hensel_decompose, hensel_lift,
                             newton_polygon, puiseux_expand)
from .numberfield import NFElement, NumberField, adjoin_root
from .presburger import (FALSE, TRUE, Atom, Exists, Extremum, Forall,
                         LinTerm, NoRay, Ray, evaluate, extremum, find_ray,
                         land, lnot, lor, qe, render, sat, simplify)
from .series import (DEFAULT_PRECISION, LaurentSeries, PolyK, Valuation,
                     divide, ls_arith)

__all__ = [
    "DEFAULT_PRECISION", "LaurentSeries", "PolyK", "Valuation", "divide",
    "ls_arith",
    "HenselkError", "DivisionByZero", "IndeterminatePrecision",
    "FieldMismatch", "InverseOfZero", "DegreeCapExceeded", "NotARoot",
    "NotASimpleRoot", "LeadingCoefficientVanishes", "UnsupportedSet",
    "HypothesisFails", "DslParseError", "InvalidInput",
    "NumberField", "NFElement", "adjoin_root",
    "LinTerm", "Atom", "Exists", "Forall", "TRUE", "FALSE", "land", "lor",
    "lnot", "qe", "sat", "simplify", "evaluate", "render", "extremum",
    "Extremum", "Ray", "NoRay", "find_ray",
    "BivarPoly", "Branch", "LimitRecord", "NewtonPolygon", "AT_INFINITY",
    "HenselFactorization", "hensel_lift", "hensel_decompose",
    "newton_polygon", "puiseux_expand", "branch_limits",
    "CellCondition", "CellSet", "ClosurePointResult", "NotInClosure",
    "MembershipResult", "FiberShrink", "NoShrink",
    "construct_closure_point", "is_in_closure", "fiber_shrink",
    "VCompare", "VZero", "PlaneAnd", "PlaneOr", "PlaneNot", "plane_and",
    "plane_or", "plane_not", "Arc", "NoArcFound", "select_arc",
    "LojaCertificate", "loja_exponent", "AnisotropicForm",
    "anisotropic_form", "parity_check",
]

__version__ = "0.1.0"
