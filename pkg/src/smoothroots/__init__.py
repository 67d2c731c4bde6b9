"""Exact root curves of smooth polynomial families.

One-parameter families of monic polynomials, represented by truncated
power series with exact rational coefficients.  The package certifies
real-rootedness, factors and solves curve families into root branches,
tracks and orders root grids sampled numerically, and applies the same
machinery to eigenvalue curves of hermitian matrix families.
"""

from .errors import (
    SmoothrootsError,
    MultiplicityTooLow,
    OddMultiplicity,
    NegativeLeading,
    FlatJet,
    ZeroConstantTerm,
    ClusterAmbiguous,
    ClustersOverlap,
    NotARoot,
    RealityViolated,
    TruncationExhausted,
    NotRealRooted,
    WindowTooSmall,
    NegativeValue,
    HermitianViolation,
    NonHermitianSample,
    RankDrop,
    FlatRecursion,
    UnknownCorpusEntry,
    InputError,
)
from .jet import (
    DEFAULT_ORDER,
    Jet,
    ComplexJet,
    Multiplicity,
    jet_sqrt,
    jet_recip,
    jet_div,
    jet_sin,
    jet_cos,
    jet_sin_cos,
)
from .symmetric import (
    PolyCoeffs,
    Certificate,
    newton_from_elementary,
    elementary_from_newton,
    bezoutiant,
    delta_minors,
    inertia,
    certify_real_rooted,
)
from .factor import (
    Cluster,
    FactorPair,
    PolyCurve,
    cluster_points,
    cluster_roots,
    hensel_split,
    roots_at_zero,
    yun_square_free,
)
from .solvecurve import (
    ConditionReport,
    FactorNode,
    LeafRecord,
    SolveReport,
    WeightDecision,
    check_curve,
    deflate_weights,
    minor_orders,
    multiplicity_weight,
    reduce_center,
    solve,
    verify_roots,
)
from .track import (
    FLAT_SUSPECT,
    MeetEvent,
    RootGrid,
    c1_sqrt_track,
    classify_meet,
    differentiable_arrangement,
    find_meets,
    matched_roots,
    meets_json,
    ordered_roots,
    sqrt_bound_audit,
)
from .eigencurve import (
    CONTINUITY_OBSTRUCTION,
    FLAT_MEET_SUSPECT,
    EigenGrid,
    EigenReport,
    EigenValues,
    HermitianCurve,
    char_poly_curve,
    eigen_track_grid,
    eigenbundle_frames,
    frame_angle_windows,
    smooth_eigenvalues,
)
from .family import FamilySpec
from .corpus import CORPUS_NAMES, CorpusEntry, build, smooth_step, t_limit, t_mark
from .polyparse import parse_poly, poly_coeffs, poly_curve

__version__ = "0.1.0"
