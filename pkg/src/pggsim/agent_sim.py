"""Finite-population stochastic simulator.

A roster of M agents, each holding one of three discrete strategies, evolves
by asynchronous update events: with probability pe the focal agent explores
(adopts one of the other two strategies uniformly), otherwise with
probability pr it plays one round together with a randomly drawn role agent
and adopts the role's strategy with a payoff-dependent logistic probability.
One generation is M events.

Agents carry no state besides their strategy, so the simulator tracks
strategy counts internally; rosters are materialized at the boundaries.

Reproducibility: every run consumes exactly one generator created from its
seed, so runs are reproducible independently of execution order; concurrent
runs (sweeps, seed batches) must simply use distinct seeds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoEventError
from .payoffs import PayoffProfile, PGGParams, SimplexState, _expected_terms, realized_payoffs


class Strategy(enum.IntEnum):
    COOPERATOR = 0
    DEFECTOR = 1
    LONER = 2


@dataclass(frozen=True)
class Population:
    """Fixed roster of agents identified only by their strategy."""

    members: tuple[Strategy, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if len(self.members) == 0:
            raise ValueError("population must not be empty")
        if any(not isinstance(m, Strategy) for m in self.members):
            raise ValueError("members must be Strategy values")

    @classmethod
    def from_counts(cls, n_c: int, n_d: int, n_l: int) -> "Population":
        if min(n_c, n_d, n_l) < 0:
            raise ValueError("strategy counts must be nonnegative")
        members = (
            (Strategy.COOPERATOR,) * n_c + (Strategy.DEFECTOR,) * n_d + (Strategy.LONER,) * n_l
        )
        return cls(members)

    @classmethod
    def from_fractions(cls, size: int, x: float, y: float, z: float) -> "Population":
        """Deterministic rounding of target fractions to a roster of the given size."""
        if abs(x + y + z - 1.0) > 1e-9:
            raise ValueError("fractions must sum to 1")
        n_c = round(size * x)
        n_d = round(size * y)
        n_l = size - n_c - n_d
        if n_l < 0:
            raise ValueError("rounded counts exceed the population size")
        return cls.from_counts(n_c, n_d, n_l)

    @property
    def size(self) -> int:
        return len(self.members)

    def counts(self) -> tuple[int, int, int]:
        n_c = n_d = 0
        for m in self.members:
            if m == 0:
                n_c += 1
            elif m == 1:
                n_d += 1
        return n_c, n_d, len(self.members) - n_c - n_d

    def fractions(self) -> tuple[float, float, float]:
        n_c, n_d, n_l = self.counts()
        m = len(self.members)
        return n_c / m, n_d / m, n_l / m


@dataclass(frozen=True)
class LearningParams:
    """Imitation and exploration knobs.

    beta is the selection intensity of the logistic comparison, pr gates the
    imitation channel, pe the exploration channel. mu_inc/sigma_inc describe
    a normally distributed strategy increment; they are parsed and stored for
    compatibility but unused by the discrete three-strategy simulator.
    """

    beta: float = 1.0
    pr: float = 1.0
    pe: float = 1e-3
    mu_inc: float = 0.0
    sigma_inc: float = 0.0

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")
        for name, v in (("pr", self.pr), ("pe", self.pe), ("mu_inc", self.mu_inc)):
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be in [0, 1], got {v}")
        if self.sigma_inc < 0:
            raise ValueError(f"sigma_inc must be nonnegative, got {self.sigma_inc}")


@dataclass(frozen=True)
class AbmTrajectory:
    """Per-generation record: strategy fractions and mean realized payoff.

    mean_payoffs[g] averages the payoff deltas over every agent sampled into
    a round during generation g (0.0 for the initial row and for generations
    in which no round was played).
    """

    generations: np.ndarray
    frequencies: np.ndarray
    mean_payoffs: np.ndarray

    def __len__(self) -> int:
        return len(self.generations)


def fermi_probability(pi_focal: float, pi_role: float, beta: float) -> float:
    """Probability that the focal adopts the role's strategy: logistic in beta*(pi_role - pi_focal)."""
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    t = beta * (pi_role - pi_focal)
    # exp is only ever taken of a nonpositive argument, so it cannot overflow
    if t >= 0.0:
        return 1.0 / (1.0 + math.exp(-t))
    e = math.exp(t)
    return e / (1.0 + e)


def pairwise_switch_rate(state: SimplexState, payoffs: PayoffProfile, i: int) -> float:
    """Net frequency flow into strategy i under pairwise proportional imitation.

    x_i * sum_j (P_i - P_j) * x_j: gains from others imitating i minus losses
    from i imitating others. Summed against the expected payoffs this equals
    the selection part of the deterministic flow, which is the cross-check it
    exists for.
    """
    if i not in (0, 1, 2):
        raise ValueError(f"strategy index must be 0, 1, or 2, got {i}")
    x = state.as_tuple()
    p = (payoffs.P_c, payoffs.P_d, payoffs.P_l)
    return x[i] * sum((p[i] - p[j]) * x[j] for j in range(3))


def gillespie_select(propensities, z1: float) -> int:
    """Index r whose cumulative propensity bracket contains z1.

    Picks the unique r with cumulative(r-1)/total < z1 <= cumulative(r)/total
    (left-strict, right-inclusive). Raises NoEventError when every propensity
    is zero.
    """
    if not (0.0 < z1 < 1.0):
        raise ValueError(f"z1 must lie strictly between 0 and 1, got {z1}")
    props = [float(a) for a in propensities]
    if any(a < 0 for a in props):
        raise ValueError("propensities must be nonnegative")
    total = sum(props)
    if total <= 0.0:
        raise NoEventError("all propensities are zero: no event can fire")
    cumulative = 0.0
    for r, a in enumerate(props):
        cumulative += a
        if z1 <= cumulative / total:
            return r
    return len(props) - 1  # guards against rounding in the final bracket


def combinations(n: int, r: int) -> int:
    """Exact binomial coefficient, built multiplicatively to avoid factorial blowup."""
    if n < 0 or r < 0:
        raise ValueError(f"n and r must be nonnegative, got n={n}, r={r}")
    if r > n:
        raise ValueError(f"r must not exceed n, got n={n}, r={r}")
    r = min(r, n - r)
    result = 1
    for k in range(1, r + 1):
        result = result * (n - r + k) // k
    return result


def play_round(
    pop: Population,
    params: PGGParams,
    rng: np.random.Generator,
    charge_participation: bool = True,
    strict_participation: bool = False,
) -> np.ndarray:
    """Draw one group of N agents uniformly without replacement and pay out one round.

    Returns per-agent payoff deltas (length M): sampled loners and all
    non-sampled agents get 0. strict_participation voids rounds lacking both
    a cooperator and a defector; otherwise any two or more participants play,
    and a lone participant gets the stay-out payoff 0.
    """
    if pop.size != params.M:
        raise ValueError(f"population size {pop.size} does not match params.M={params.M}")
    deltas = np.zeros(pop.size)
    idx = rng.choice(pop.size, size=params.N, replace=False)
    strategies = [pop.members[i] for i in idx]
    n_c = strategies.count(Strategy.COOPERATOR)
    n_d = strategies.count(Strategy.DEFECTOR)
    if n_c + n_d < 2:
        return deltas
    if strict_participation and (n_c == 0 or n_d == 0):
        return deltas
    p_c, p_d = realized_payoffs(n_c, n_d, params, charge_participation)
    for i, s in zip(idx, strategies):
        if s == Strategy.COOPERATOR:
            deltas[i] = p_c
        elif s == Strategy.DEFECTOR:
            deltas[i] = p_d
    return deltas


def _run_generation(
    counts: list[int],
    params: PGGParams,
    lp: LearningParams,
    rng: np.random.Generator,
    charge_participation: bool,
    strict_participation: bool,
    expected_payoff_comparison: bool,
) -> tuple[float, int]:
    """Apply M asynchronous update events to counts in place.

    Each imitation event plays one fresh round built around the focal and
    role agents plus N - 2 uniformly drawn others, so both compared payoffs
    are realized by the same round. Returns (sum, count) of the payoff deltas
    of all sampled agents, for the trajectory's mean-payoff column.
    """
    m = params.M
    n = params.N
    c = params.c
    rc = params.r * params.c
    fee = params.g if charge_participation else 0.0
    beta = lp.beta
    pr = lp.pr
    pe = lp.pe

    uniforms = rng.random(m * (n + 6))
    k = 0
    pay_sum = 0.0
    pay_count = 0

    for _ in range(m):
        u = uniforms[k]
        k += 1
        if u < pe:
            # exploration: uniform focal, uniform over the other two strategies
            v = uniforms[k] * m
            k += 1
            focal = 0 if v < counts[0] else (1 if v < counts[0] + counts[1] else 2)
            w = uniforms[k]
            k += 1
            if focal == 0:
                target = 1 if w < 0.5 else 2
            elif focal == 1:
                target = 0 if w < 0.5 else 2
            else:
                target = 0 if w < 0.5 else 1
            counts[focal] -= 1
            counts[target] += 1
            continue

        if uniforms[k] >= pr:
            k += 1
            continue
        k += 1

        v = uniforms[k] * m
        k += 1
        focal = 0 if v < counts[0] else (1 if v < counts[0] + counts[1] else 2)

        # role: a distinct agent, so the focal's strategy count drops by one
        r0 = counts[0] - (focal == 0)
        r1 = counts[1] - (focal == 1)
        v = uniforms[k] * (m - 1)
        k += 1
        role = 0 if v < r0 else (1 if v < r0 + r1 else 2)

        # round group: focal, role, and N - 2 others drawn without replacement
        rem0 = r0 - (role == 0)
        rem1 = r1 - (role == 1)
        j = [0, 0, 0]
        j[focal] += 1
        j[role] += 1
        remaining = m - 2
        for _ in range(n - 2):
            v = uniforms[k] * remaining
            k += 1
            if v < rem0:
                j[0] += 1
                rem0 -= 1
            elif v < rem0 + rem1:
                j[1] += 1
                rem1 -= 1
            else:
                j[2] += 1
            remaining -= 1

        jc, jd = j[0], j[1]
        s = jc + jd
        if s < 2 or (strict_participation and (jc == 0 or jd == 0)):
            p_c = p_d = 0.0
        else:
            p_c = rc * (jc - 1) / (s - 1) - c - fee
            p_d = rc * jc / (s - 1) - fee
        pay_sum += jc * p_c + jd * p_d
        pay_count += n

        if expected_payoff_comparison:
            e_c, e_d = _expected_terms(
                counts[0] / m, counts[2] / m, n, c, params.r, params.g
            )
            pi_focal = e_c if focal == 0 else (e_d if focal == 1 else 0.0)
            pi_role = e_c if role == 0 else (e_d if role == 1 else 0.0)
        else:
            pi_focal = p_c if focal == 0 else (p_d if focal == 1 else 0.0)
            pi_role = p_c if role == 0 else (p_d if role == 1 else 0.0)

        t = beta * (pi_role - pi_focal)
        if t >= 0.0:
            adopt_p = 1.0 / (1.0 + math.exp(-t))
        else:
            e = math.exp(t)
            adopt_p = e / (1.0 + e)
        if uniforms[k] < adopt_p and role != focal:
            counts[focal] -= 1
            counts[role] += 1
        k += 1

    return pay_sum, pay_count


def step_generation(
    pop: Population,
    params: PGGParams,
    lp: LearningParams,
    rng: np.random.Generator,
    *,
    charge_participation: bool = True,
    strict_participation: bool = False,
    expected_payoff_comparison: bool = False,
) -> Population:
    """Advance the population by one generation of M asynchronous update events."""
    if pop.size != params.M:
        raise ValueError(f"population size {pop.size} does not match params.M={params.M}")
    counts = list(pop.counts())
    _run_generation(
        counts, params, lp, rng, charge_participation, strict_participation,
        expected_payoff_comparison,
    )
    return Population.from_counts(*counts)


def run_abm(
    initial: Population,
    params: PGGParams,
    lp: LearningParams,
    generations: int,
    seed: int,
    *,
    charge_participation: bool = True,
    strict_participation: bool = False,
    expected_payoff_comparison: bool = False,
) -> AbmTrajectory:
    """Iterate generations from a fresh seeded generator, recording fractions and mean payoff.

    The whole trajectory is a pure function of (initial, params, lp,
    generations, seed, flags).
    """
    if initial.size != params.M:
        raise ValueError(f"population size {initial.size} does not match params.M={params.M}")
    if generations < 0:
        raise ValueError(f"generations must be nonnegative, got {generations}")
    rng = np.random.default_rng(seed)
    m = params.M
    counts = list(initial.counts())

    gens = np.arange(generations + 1)
    freqs = np.empty((generations + 1, 3))
    means = np.zeros(generations + 1)
    freqs[0] = (counts[0] / m, counts[1] / m, counts[2] / m)

    for gen in range(1, generations + 1):
        pay_sum, pay_count = _run_generation(
            counts, params, lp, rng, charge_participation, strict_participation,
            expected_payoff_comparison,
        )
        freqs[gen] = (counts[0] / m, counts[1] / m, counts[2] / m)
        means[gen] = pay_sum / pay_count if pay_count else 0.0

    return AbmTrajectory(generations=gens, frequencies=freqs, mean_payoffs=means)
