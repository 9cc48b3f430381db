"""Exact-arithmetic toolbox for sl2-triples in symmetrizable Kac-Moody
algebras: root multiplicities, Weyl combinatorics, finite gradings,
pi-systems, truncated realizations, and the rank-2 hyperbolic repairs.
"""

from .errors import (
    DegenerateDenominator,
    HeightOutOfRange,
    InternalInconsistency,
    KmjmError,
    NotDominant,
    NotGCM,
    NotHyperbolic,
    NotPiSystem,
    NotRealRoot,
    NotReduced,
    NotSymmetrizable,
    OracleTooShort,
    ResourceCap,
    SingularB,
    TruncationAmbiguous,
    ZeroElement,
)
from .gcm import GCM, TypeTag, bilinear_form, classify, norm, validate_gcm
from .grading import check_finite_grading, grade_of, phi_w_d
from .lattice import Coweight, RootVec, WeylWord, rootvec, simple_root
from .pisystem import PiSystem, classify_pi_type, make_pi_system, pi_image
from .rank2 import (
    IntersectionVerdict,
    Rank2Label,
    b_seq,
    build_exceptional_triple,
    check_interleavings,
    classify_intersection,
    defining_word,
    family_root,
    gamma_eta,
)
from .realize import (
    AlgElement,
    TruncatedAlgebra,
    build_truncated,
    check_locally_nilpotent,
    companion_vector,
    exp_ad,
    real_root_vector,
    simple_reflection,
)
from .roots import MultTable, coroot_pairing, is_root, peterson_multiplicities
from .sl2 import (
    RealizedTriple,
    SL2Triple,
    build_triple,
    realize_triple,
    solve_mu,
    verify_realized,
    verify_symbolic,
    verify_triple_elements,
)
from .sweeps import SUITES, SuiteReport, SweepConfig
from .weyl import apply_word, inversion_set, is_reduced, reduce_word, reflect

__version__ = "0.1.0"
