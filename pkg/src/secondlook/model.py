"""Primitive types and Bayesian updating for a binary state and a two-component signal.

The world is in one of two states, A or B.  A decision-maker holds a prior
probability p that the state is A and observes a signal with two components.
Each component takes the value alpha (evidence for A) or beta (evidence for
B) and matches the true state with a per-component precision:

    P(component j = alpha | A) = P(component j = beta | B) = theta_j,

with theta_j strictly between 1/2 and 1.  The two components are independent
conditional on the state.  The first component is free; observing the second
costs a processing fee, which is what the rest of the package is about.

Everything here is a pure function of its inputs; all value types are
immutable and safe to share across threads.  Sampling takes an explicit seed
or generator so simulations are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidProbabilityError, ParameterError

#: Absolute tolerance for threshold comparisons throughout the package.
DEFAULT_TOL = 1e-12


class StateOfWorld(Enum):
    A = "A"
    B = "B"


class SignalComponentValue(Enum):
    ALPHA = "alpha"
    BETA = "beta"

    @classmethod
    def parse(cls, text: str) -> "SignalComponentValue":
        key = text.strip().lower()
        if key in ("alpha", "a"):
            return cls.ALPHA
        if key in ("beta", "b"):
            return cls.BETA
        raise ParameterError(f"unknown signal component value: {text!r}")


ALPHA = SignalComponentValue.ALPHA
BETA = SignalComponentValue.BETA


@dataclass(frozen=True)
class Signal:
    """One realization of the two-component signal."""

    first: SignalComponentValue
    second: SignalComponentValue

    def __iter__(self):
        yield self.first
        yield self.second

    def label(self) -> str:
        return f"({self.first.value}, {self.second.value})"


#: The four possible signal realizations in a fixed, deterministic order.
ALL_SIGNALS = (
    Signal(ALPHA, ALPHA),
    Signal(ALPHA, BETA),
    Signal(BETA, ALPHA),
    Signal(BETA, BETA),
)


@dataclass(frozen=True)
class InformationStructure:
    """Per-component precisions, each strictly inside (1/2, 1).

    The boundaries are rejected: at 1/2 a component is pure noise and at 1
    several case intervals of the incentive analysis degenerate.
    """

    theta1: float
    theta2: float

    def __post_init__(self):
        for name, value in (("theta1", self.theta1), ("theta2", self.theta2)):
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ParameterError(f"{name} must be a finite number, got {value!r}")
            if not 0.5 < value < 1.0:
                raise ParameterError(
                    f"{name} must lie strictly between 1/2 and 1, got {value}"
                )

    def precision(self, component: int) -> float:
        if component == 1:
            return self.theta1
        if component == 2:
            return self.theta2
        raise ParameterError(f"signal has components 1 and 2, not {component}")


@dataclass(frozen=True)
class PayoffStructure:
    """Utility of a correct guess, utility of a wrong one, and their gap."""

    u_correct: float
    u_wrong: float

    def __post_init__(self):
        for name, value in (("u_correct", self.u_correct), ("u_wrong", self.u_wrong)):
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        if not self.u_correct - self.u_wrong > 0:
            raise ParameterError(
                "the premium for guessing correctly must be positive "
                f"(u_correct={self.u_correct}, u_wrong={self.u_wrong})"
            )

    @property
    def delta_u(self) -> float:
        return self.u_correct - self.u_wrong


class BeliefStage(Enum):
    PRIOR = "prior"
    AFTER_FIRST = "after_first"
    AFTER_BOTH = "after_both"


@dataclass(frozen=True)
class BeliefState:
    """A probability of state A together with which components produced it."""

    prob_a: float
    seen: tuple[SignalComponentValue, ...] = ()

    def __post_init__(self):
        check_probability(self.prob_a, "prob_a")
        if len(self.seen) > 2:
            raise ParameterError("a belief can condition on at most two components")

    @property
    def stage(self) -> BeliefStage:
        return (BeliefStage.PRIOR, BeliefStage.AFTER_FIRST, BeliefStage.AFTER_BOTH)[
            len(self.seen)
        ]


@dataclass(frozen=True)
class Scenario:
    """A full problem instance: precisions, payoffs, processing cost, priors.

    Holds one prior for single-decision-maker analyses or an ordered pair
    (low, high) for pairwise ones.
    """

    info: InformationStructure
    payoffs: PayoffStructure
    cost: float
    priors: tuple[float, ...]

    def __post_init__(self):
        if not (math.isfinite(self.cost) and self.cost >= 0):
            raise ParameterError(f"processing cost must be >= 0, got {self.cost}")
        if len(self.priors) not in (1, 2):
            raise ParameterError("a scenario holds one prior or an ordered pair")
        for p in self.priors:
            check_probability(p, "prior")
        if len(self.priors) == 2 and not self.priors[0] <= self.priors[1]:
            raise ParameterError(
                f"pair priors must be ordered low <= high, got {self.priors}"
            )


def check_probability(p: float, name: str = "p") -> float:
    """Validate that ``p`` is a probability; NaN and out-of-range values raise."""
    try:
        value = float(p)
    except (TypeError, ValueError):
        raise InvalidProbabilityError(f"{name} must be a number, got {p!r}") from None
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise InvalidProbabilityError(f"{name} must lie in [0, 1], got {p!r}")
    return value


def _likelihood(theta: float, value: SignalComponentValue, state: StateOfWorld) -> float:
    # P(component = value | state) for a symmetric binary component.
    matches = (value is ALPHA) == (state is StateOfWorld.A)
    return theta if matches else 1.0 - theta


def posterior_after_first(
    p: float, info: InformationStructure, s1: SignalComponentValue
) -> float:
    """Belief in state A after observing only the first component.

    Monotone increasing in the prior; degenerate priors 0 and 1 are absorbing.
    """
    p = check_probability(p)
    la = _likelihood(info.theta1, s1, StateOfWorld.A)
    lb = _likelihood(info.theta1, s1, StateOfWorld.B)
    num = la * p
    return num / (num + lb * (1.0 - p))


def posterior_after_both(
    p: float,
    info: InformationStructure,
    s1: SignalComponentValue,
    s2: SignalComponentValue,
) -> float:
    """Belief in state A after observing both components.

    Equals two chained single-component updates, first with theta1 then with
    theta2, because the components are conditionally independent.
    """
    p = check_probability(p)
    la = _likelihood(info.theta1, s1, StateOfWorld.A) * _likelihood(
        info.theta2, s2, StateOfWorld.A
    )
    lb = _likelihood(info.theta1, s1, StateOfWorld.B) * _likelihood(
        info.theta2, s2, StateOfWorld.B
    )
    num = la * p
    return num / (num + lb * (1.0 - p))


def marginal_first(
    p: float, info: InformationStructure, s1: SignalComponentValue
) -> float:
    """Unconditional probability that the first component takes value ``s1``."""
    p = check_probability(p)
    return p * _likelihood(info.theta1, s1, StateOfWorld.A) + (1.0 - p) * _likelihood(
        info.theta1, s1, StateOfWorld.B
    )


def conditional_second(
    p_after_first: float, info: InformationStructure, s2: SignalComponentValue
) -> float:
    """Probability of the second component's value given the interim belief.

    The interim posterior is a sufficient statistic for the first component,
    so this is just the second-component marginal evaluated at that belief.
    """
    q = check_probability(p_after_first, "p_after_first")
    return q * _likelihood(info.theta2, s2, StateOfWorld.A) + (1.0 - q) * _likelihood(
        info.theta2, s2, StateOfWorld.B
    )


def interim_belief(
    p: float, info: InformationStructure, s1: SignalComponentValue
) -> BeliefState:
    """Tagged belief after the free component only."""
    return BeliefState(posterior_after_first(p, info, s1), (s1,))


def full_belief(
    p: float,
    info: InformationStructure,
    s1: SignalComponentValue,
    s2: SignalComponentValue,
) -> BeliefState:
    """Tagged belief after both components."""
    return BeliefState(posterior_after_both(p, info, s1, s2), (s1, s2))


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def sample_state_and_signal(
    p: float, info: InformationStructure, rng
) -> tuple[StateOfWorld, Signal]:
    """Draw one (state, signal) pair.

    ``rng`` is an integer seed or a ``numpy.random.Generator``.  The state is
    A with probability ``p``; each component then matches the state with its
    own precision, independently of the other component.
    """
    state_a, first_a, second_a = sample_signal_batch(p, info, 1, rng)
    state = StateOfWorld.A if state_a[0] else StateOfWorld.B
    signal = Signal(
        ALPHA if first_a[0] else BETA,
        ALPHA if second_a[0] else BETA,
    )
    return state, signal


def sample_signal_batch(
    p: float, info: InformationStructure, n: int, rng
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized draws of the state-coupled signal process.

    Returns three boolean arrays of length ``n``: state is A, first component
    is alpha, second component is alpha.  Deterministic for a fixed seed.
    """
    p = check_probability(p)
    if n < 1:
        raise ParameterError(f"need at least one draw, got {n}")
    gen = _as_generator(rng)
    state_a = gen.random(n) < p
    match1 = gen.random(n) < info.theta1
    match2 = gen.random(n) < info.theta2
    first_a = np.where(state_a, match1, ~match1)
    second_a = np.where(state_a, match2, ~match2)
    return state_a, first_a, second_a
