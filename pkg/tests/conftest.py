"""Shared fixtures: the expensive reference runs are computed once per session."""

import numpy as np
import pytest

from pggsim import (
    DynamicsKind,
    DynamicsMode,
    LearningParams,
    PGGParams,
    Population,
    SimplexState,
    integrate,
    run_abm,
)

MUTATOR = DynamicsMode(DynamicsKind.REPLICATOR_MUTATOR)
START = SimplexState(0.9, 0.05, 0.05)


@pytest.fixture(scope="session")
def cycle_run():
    """Default-parameter trajectory over 2000 time units at dt=0.01."""
    return integrate(START, PGGParams(), MUTATOR, 0.01, 200_000)


@pytest.fixture(scope="session")
def abm_default_runs():
    """Twenty seeds of the default finite-population run (10^4 generations).

    Parameters follow the model's tables: M=100, N=5, r=3, c=1, g=0.5,
    beta=1, pr=1, pe=1e-3, starting from 90/5/5.
    """
    params = PGGParams()
    lp = LearningParams(beta=1.0, pr=1.0, pe=1e-3)
    initial = Population.from_fractions(100, 0.9, 0.05, 0.05)
    return [run_abm(initial, params, lp, 10_000, seed=seed) for seed in range(20)]


def random_simplex_states(count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.dirichlet([1.0, 1.0, 1.0], size=count)


def absorbed_since(traj):
    """First generation of the trailing monomorphic block, or None.

    Exploration makes any single monomorphic sample a transient flicker, so
    fixation of a finite run means staying monomorphic through the end; the
    returned index is where that terminal block starts.
    """
    mono = (np.asarray(traj.frequencies) == 1.0).any(axis=1)
    if not mono[-1]:
        return None
    poly = np.nonzero(~mono)[0]
    return 0 if len(poly) == 0 else int(poly[-1]) + 1
