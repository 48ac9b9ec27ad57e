"""latk: exact computation of lattice points in rational polyhedra.

Hilbert bases, module generators, Hilbert series (standard and hsop
denominators), Hilbert quasipolynomials, module ranks and divisor class
groups for linear diophantine systems of inequalities, equations and
congruences.
"""

from .cones import ComputedCone, DualDescription, InputSystem, dualize, pointed_quotient, preprocess
from .errors import (
    AlreadyPointed,
    EmptyLattice,
    EmptyModule,
    InexactDivision,
    InputError,
    LatkError,
    NotFullDimensional,
    NotGraded,
    NotPointed,
    ParseError,
)
from .intlin import (
    HermiteForm,
    SmithForm,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
    solve_diophantine,
)
from .inputfile import parse_input
from .monoid import ClassGroup, HilbertBasis, class_group, global_reduce, minimal_module_generators
from .pipeline import Report, RunConfig, run
from .series import HilbertSeries, Quasipolynomial, accumulate, hsop_degrees, hsop_heights, quasipolynomial, renumerate, standard_denominator
from .simplex_eval import local_candidates, parallelotope_points, stanley_components
from .triangulate import SimplicialCone, Triangulation, bottom_facets, bottom_triangulation, lex_triangulation, roughness

__all__ = [
    "ComputedCone",
    "DualDescription",
    "InputSystem",
    "dualize",
    "pointed_quotient",
    "preprocess",
    "LatkError",
    "InputError",
    "ParseError",
    "EmptyLattice",
    "EmptyModule",
    "NotPointed",
    "AlreadyPointed",
    "NotFullDimensional",
    "NotGraded",
    "InexactDivision",
    "SmithForm",
    "HermiteForm",
    "smith_normal_form",
    "hermite_normal_form",
    "kernel_basis",
    "solve_diophantine",
    "parse_input",
    "HilbertBasis",
    "ClassGroup",
    "global_reduce",
    "minimal_module_generators",
    "class_group",
    "HilbertSeries",
    "Quasipolynomial",
    "accumulate",
    "standard_denominator",
    "renumerate",
    "hsop_heights",
    "hsop_degrees",
    "quasipolynomial",
    "parallelotope_points",
    "local_candidates",
    "stanley_components",
    "SimplicialCone",
    "Triangulation",
    "lex_triangulation",
    "bottom_facets",
    "bottom_triangulation",
    "roughness",
    "Report",
    "RunConfig",
    "run",
]
