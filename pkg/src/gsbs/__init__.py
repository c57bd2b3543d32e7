"""Nilpotent quotients of generalized solvable Baumslag-Solitar groups.

Exact normal-form arithmetic in the semidirect products Z_{m^c} x| Z^r,
their automorphisms in matrix coordinates, twisted-conjugacy class counts
(canonical-form exact counter plus an independent box-enumeration oracle),
and the shear witness family certifying finite counts in every class.
"""

from ._orbit import BACKEND as ORACLE_BACKEND
from .autos import (
    Automorphism,
    ValidationReport,
    apply,
    compose,
    congruence_holds,
    extendable,
    identity_automorphism,
    invert,
    make_automorphism,
    require_valid,
    validate,
    validate_automorphism,
)
from .errors import CapError, RefusalError, SchemaError
from .groups import (
    GroupElement,
    GroupParams,
    TorsionInfo,
    action_exponent,
    element,
    identity,
    inverse,
    lcs_exponent,
    lcs_exponent_bruteforce,
    make_params,
    multiply,
    order_of,
    power,
    torsion_info,
)
from .intlin import (
    IntMatrix,
    SnfDecomposition,
    adjugate,
    cokernel_representatives,
    det,
    inverse_unimodular,
    smith_normal_form,
    solve_integral,
)
from .twisted import (
    OracleRecord,
    ReidemeisterReport,
    TwistedNode,
    canonicalize,
    canonicalize_with_witness,
    reidemeister_abelianized,
    reidemeister_exact,
    reidemeister_finite,
    reidemeister_oracle,
    twisted_conjugate,
)
from .witness import (
    DegreeAnalysis,
    WitnessCertificate,
    analyze_degree,
    build_N,
    build_witness_matrix,
    witness_automorphism,
)

__version__ = "0.1.0"
