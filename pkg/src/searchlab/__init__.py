"""Two-level and full-space simulators for unstructured quantum search."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConvergenceError,
    DegenerateGapWarning,
    DomainError,
    InvalidStateError,
    NonCanonicalWarning,
    NormDriftError,
    NotHermitianError,
    SearchLabError,
)
from .subspace import (  # noqa: E402
    Hermitian2,
    SubspaceState,
    Trajectory,
    bloch_coords,
    eigen2,
    evolve_const,
    evolve_timedep,
    fidelity,
    make_state,
    path_length,
)
from .algorithms import (  # noqa: E402
    SearchInstance,
    fenner_hamiltonian,
    fenner_state,
    fg_hamiltonian,
    fg_state,
    grover_state,
    rc_evolve,
    rc_gap,
    rc_ground_state,
    rc_hamiltonian,
    rc_schedule_s,
    rc_schedule_t,
)
from .synthesis import (  # noqa: E402
    SpectralGaugeChoice,
    norm_scaling_probe,
    reality_classifier,
    synth_from_path,
    walk_follower_hamiltonian,
)
from .equivalence import (  # noqa: E402
    angular_velocity_compare,
    chirality_classifier,
    verify_identity,
)
from .fullspace import (  # noqa: E402
    complete_graph_walk,
    evolve_full,
    fenner_star,
    rc_full,
    reduce_to_subspace,
    spectral_norm_full,
)
