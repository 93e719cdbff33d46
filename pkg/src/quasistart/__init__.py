"""Exact computations on finite quasi-pseudometric spaces.

Distances are :class:`fractions.Fraction` values throughout.  The package
covers the space axioms, the Hausdorff quasi-pseudometric on finite subsets,
Cauchy and convergence verdicts for sequence traces, start/end/fixed points of
set-valued maps, and iterative solvers whose logs carry the bounds that the
convergence arguments predict.
"""

from .fileformat import InputError, dump_instance, load_instance, parse_input
from .functions import Certification, FunctionSpec, certify, certify_comparison
from .hyperspace import (
    HyperDistanceReport,
    cb_membership,
    dist_point_to_set,
    dist_set_to_point,
    hausdorff,
    hausdorff_sym,
    hyperspace_axiom_check,
    s_cl_membership,
)
from .instance import LabInstance
from .multimaps import (
    SetValuedMap,
    SingleMap,
    approx_value,
    approx_value_single,
    classify_all,
    classify_point,
    end_value,
    eps_points,
    level_sets,
    mix_value,
    start_value,
    value_table,
)
from .sequences import (
    CAUCHY_KINDS,
    PreconditionError,
    SequenceTrace,
    Status,
    Verdict,
    check_hierarchy,
    classify_cauchy,
    classify_convergence,
    semicontinuity_probe,
)
from .solvers import (
    IterationLog,
    RunStatus,
    VerificationError,
    check_alpha_admissible,
    check_alpha_gamma,
    check_psi_contraction,
    endpoint_solve,
    feasibility_audit,
    fixed_solve_sym,
    picard_solve,
    single_map_approx_audit,
    startpoint_solve,
    theorem29_equivalence,
)
from .space import (
    AxiomError,
    FiniteQuasiSpace,
    StructuralError,
    closed_ball,
    closure,
    conjugate,
    diameter,
    is_bounded,
    is_join_closed,
    open_ball,
    symmetrize,
    validate_space,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
