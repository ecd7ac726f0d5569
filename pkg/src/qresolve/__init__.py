"""Exact decision procedures for multiplicative quiver varieties.

The package answers, with exact arithmetic throughout: is a dimension vector
a root, is it flat, does it lie in the sigma set, what is its canonical
decomposition, and does the corresponding moduli space admit a projective
symplectic resolution.  A character variety front end translates conjugacy
class data for punctured surfaces into crab-shaped quiver data, and an
exhaustive search reproduces the finite classification of crab pairs with
p = 2.
"""

from .core import (
    DimVector,
    GroupElt,
    InvariantViolation,
    MultParam,
    NotDecomposableError,
    OracleBudgetError,
    PreconditionError,
    Quiver,
    Stability,
    StructuralError,
    dot,
    q_power,
    support,
)
from .forms import (
    AffineData,
    cartan_pairing,
    detect_affine_dynkin,
    euler_form,
    is_fundamental,
    p_value,
)
from .reflect import (
    ReflectingSequence,
    ReflectionStep,
    RootClass,
    classify_root,
    reflect_dim,
    reflect_q,
    reflect_theta,
    run_reflecting_sequence,
)
from .sigma import (
    FlatnessCertificate,
    SigmaStatus,
    brute_force_flat,
    brute_force_sigma,
    in_kernel,
    is_flat,
    q_gcd,
    sigma_membership,
)
from .decompose import (
    FlatDecomposition,
    FlatPart,
    SigmaDecomposition,
    decompose_flat,
    refine_to_sigma,
    sigma_decompose,
    verify_minimality,
)
from .classify import (
    CrabShape,
    FactorVerdict,
    Verdict,
    classify_crab,
    classify_general,
    is_crab_shaped,
)
from .charvar import (
    CharVarProblem,
    CharVarVerdict,
    ConjClass,
    build_quiver_datum,
    class_from_rank_data,
    classify_charvar,
    numeric_invariants,
    order_eigenvalues,
    problem_from_json,
    reduce_genus_zero,
)
from .enum22 import (
    CrabEntry,
    SearchBounds,
    classification_table,
    enumerate_22,
    verify_22_side_conditions,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
