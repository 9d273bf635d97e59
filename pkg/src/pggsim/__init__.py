"""Optional public goods game: deterministic and stochastic evolutionary dynamics."""

from .agent_sim import (
    AbmTrajectory,
    LearningParams,
    Population,
    Strategy,
    combinations,
    fermi_probability,
    gillespie_select,
    pairwise_switch_rate,
    play_round,
    run_abm,
    step_generation,
)
from .analysis import TrajectoryStats, stats, trajectory_distance
from .config import RunConfig, load_config, save_config
from .dynamics import (
    DynamicsKind,
    DynamicsMode,
    Trajectory,
    integrate,
    mutator_rhs,
    network_scaled_rhs,
    replicator_rhs,
)
from .errors import ConfigError, IntegrationError, NoEventError, NoGameError
from .game_core import (
    Matrix2x2,
    MixedStrategy2,
    equilibrium_profile_abc,
    expected_payoffs,
    mixed_equilibrium_abc,
    outcome_distribution,
)
from .network import (
    DensityConvention,
    Graph,
    GraphParams,
    degree_sum,
    density_factor,
    edge_list_text,
    generate_er,
    is_connected,
)
from .payoffs import (
    PayoffProfile,
    PGGParams,
    SampleComposition,
    SimplexState,
    average_payoff,
    expected_defector_payoff,
    expected_profile,
    realized_payoffs,
    sample_payoffs,
)
from .plotting import plot_simplex

__version__ = "0.1.0"
