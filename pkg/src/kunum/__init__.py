"""kunum: exact lattice calculus for rank-2 numerical Grothendieck groups
of Kuznetsov components of Fano threefolds."""

from .lattice import (
    LatticeVector,
    cross,
    norm_sq,
    is_primitive,
    pick_decompose,
    pick_oracle,
    delta_sin_sq,
    triangle_points,
)
from .euler_forms import (
    EulerForm,
    SerreIsometry,
    CanonicalForm,
    compatible,
    serre_order,
    classify_form,
    exceptional_vectors,
    n_chi,
)
from .cubic import (
    KuClass,
    ALPHA,
    BETA,
    GAMMA,
    chi,
    serre_act,
    rotate,
    sextant_normalize,
    LiftedClass,
    phase_gap_class,
    moduli_dim,
    strata,
    ext_locus_codim,
    proj_ext_dim,
    quiver_canonical_degree,
    fano_fiber_check,
    moduli_info,
)
from .chern import (
    ChernCharacterY3,
    euler_pairing,
    twist,
    ku_project,
    to_ku_basis,
    from_ku_basis,
    ideal_curve_character,
    hilbert_character,
)
from .catalog import lookup, entries, curve_pairing
from .certifier import certify, certify_all, verify
from .birgraph import build_graph, check_connected, prime_witness, equivalence_path

__version__ = "0.1.0"
