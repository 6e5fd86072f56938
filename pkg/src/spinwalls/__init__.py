"""Exact arithmetic for intersection lattices, Dirac indexes, wall systems,
surface numerology, and stability chambers."""

from .errors import FormulationDisagreement, ValidationError
from .lattice import (
    IntegerLattice,
    Signature,
    Vector,
    add,
    characteristic_vector,
    diagonal_lattice,
    direct_sum,
    e8_lattice,
    from_gram,
    hermite_normal_form,
    hyperbolic_plane,
    is_characteristic,
    lattice_index,
    neg,
    pairing,
    parse_lattice_spec,
    scale,
    signature,
    span_rank,
    sub,
    vector,
    zero,
)
from .index_theory import (
    BundleTopology,
    JumpingType,
    NonCharacteristicWarning,
    NonIntegralIndexWarning,
    SpinCStructure,
    VirtualDimension,
    brill_noether_vcodim,
    chi_line,
    chi_rank2,
    shift,
    vcodim_jumping,
    vdim_instanton,
    vdim_jumping,
)
from .walls import (
    DEFAULT_MAX_BOX,
    EmptinessCertificate,
    WallClass,
    WallQuery,
    WallSearchResult,
    WitnessReport,
    emptiness_certificate,
    enumerate_walls,
    is_hurdle_class,
    is_wall_class,
    polarization_check,
    witness_search,
)
from .surfaces import (
    BARLOW_CANONICAL,
    ConsistencyReport,
    MultiplicityVerdict,
    NormalConeDatum,
    SurfaceInvariants,
    barlow_demo,
    normal_cone_multiplicity,
    riemann_roch_rank2,
    serre_dual_locus,
    spin_invariance_threshold,
    surface_consistency,
)
from .pairs import (
    FlipChain,
    PairParameters,
    flip_chain,
    is_sigma_stable,
    nonempty_range,
    sigma_from_tau,
)

__version__ = "0.1.0"
