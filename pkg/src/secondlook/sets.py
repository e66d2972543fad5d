"""Prior sets induced by the cost function, and pairwise classifications.

The willingness-to-pay curve for a given first component is single-peaked,
so the priors strictly willing to pay a cost ``c`` form an open interval
H(c) whose endpoints invert the cost function in closed form.  As ``c``
drops to zero, H(c) grows to the set of non-extreme priors: those willing
to pay *some* positive cost.  Everyone else is extreme: so sure of the
state (or facing so uninformative a second component) that no positive
cost is ever worth it.

Two boundary conventions worth knowing:

* H(c) is open (strict willingness), while the acquisition rule is weak
  (acquire at indifference).  A prior sitting exactly on the boundary of
  H(c) therefore acquires at cost ``c`` but is not a member of H(c).
* At ``c`` exactly equal to the cost function's maximum the two inversion
  thresholds coincide; the single-point "interval" contains no prior with
  a strictly higher willingness, so H(c) is empty there.

For a pair of priors (low, high), the B sets record who acquires at a given
cost while the other does not, and the V sets record who is strictly more
willing to pay regardless of cost.  B membership at any cost implies the
corresponding V membership.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExtremeBeliefError, OrderingError, ParameterError
from .incentives import max_willingness_to_pay, willingness_to_pay
from .model import (
    ALPHA,
    BETA,
    DEFAULT_TOL,
    InformationStructure,
    PayoffStructure,
    SignalComponentValue,
    check_probability,
)


@dataclass(frozen=True)
class ProbabilityInterval:
    """An interval of probabilities; emptiness is explicit, not encoded by bounds."""

    lower: float
    upper: float
    closed_lower: bool = False
    closed_upper: bool = False
    empty: bool = False

    def __post_init__(self):
        if not self.empty and self.lower > self.upper:
            raise ParameterError(
                f"interval bounds out of order: ({self.lower}, {self.upper})"
            )

    @classmethod
    def open(cls, lower: float, upper: float) -> "ProbabilityInterval":
        return cls(lower, upper)

    @classmethod
    def closed(cls, lower: float, upper: float) -> "ProbabilityInterval":
        return cls(lower, upper, closed_lower=True, closed_upper=True)

    @classmethod
    def empty_interval(cls) -> "ProbabilityInterval":
        return cls(0.0, 0.0, empty=True)

    def contains(self, p: float) -> bool:
        if self.empty:
            return False
        above = p >= self.lower if self.closed_lower else p > self.lower
        below = p <= self.upper if self.closed_upper else p < self.upper
        return above and below

    def __contains__(self, p: float) -> bool:
        return self.contains(p)

    @property
    def length(self) -> float:
        return 0.0 if self.empty else self.upper - self.lower


def inversion_thresholds(
    c: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    s1: SignalComponentValue,
) -> tuple[float, float]:
    """The two priors at which the cost function equals ``c``, in closed form.

    Defined for 0 <= c <= the cost function's maximum; at the maximum both
    thresholds collapse onto the peak prior.
    """
    if c < 0:
        raise ParameterError(f"cost must be >= 0, got {c}")
    ceiling = max_willingness_to_pay(info, payoffs)
    if c > ceiling:
        raise ParameterError(
            f"cost {c} exceeds the maximum willingness to pay {ceiling}"
        )
    t1, t2 = info.theta1, info.theta2
    du = payoffs.delta_u
    diff = t1 + t2 - 2.0 * t1 * t2
    # Denominators: du*(diff-1) + (2*t1-1)*c stays negative and
    # du*diff + (2*t1-1)*c stays positive on the admissible cost range.
    den_neg = du * (diff - 1.0) + (2.0 * t1 - 1.0) * c
    den_pos = du * diff + (2.0 * t1 - 1.0) * c
    if s1 is ALPHA:
        lower = (1.0 - t1) * (du * (t2 - 1.0) - c) / den_neg
        upper = (1.0 - t1) * (du * t2 - c) / den_pos
    else:
        lower = t1 * (c + du * (1.0 - t2)) / den_pos
        upper = t1 * (c - du * t2) / den_neg
    return lower, upper


def h_set(
    c: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    s1: SignalComponentValue,
) -> ProbabilityInterval:
    """Open interval of priors strictly willing to pay ``c`` after ``s1``.

    Empty once ``c`` reaches the cost function's maximum.
    """
    if c < 0:
        raise ParameterError(f"cost must be >= 0, got {c}")
    if c >= max_willingness_to_pay(info, payoffs):
        return ProbabilityInterval.empty_interval()
    lower, upper = inversion_thresholds(c, info, payoffs, s1)
    return ProbabilityInterval.open(lower, upper)


@dataclass(frozen=True)
class ExtremeSets:
    """Non-extreme priors per first component, their union, and its complement."""

    non_extreme_alpha: ProbabilityInterval
    non_extreme_beta: ProbabilityInterval
    non_extreme: tuple[ProbabilityInterval, ...]
    extreme: tuple[ProbabilityInterval, ...]
    is_convex: bool

    def is_extreme(self, p: float) -> bool:
        return not (p in self.non_extreme_alpha or p in self.non_extreme_beta)


def extreme_sets(info: InformationStructure) -> ExtremeSets:
    """Partition of [0, 1] into extreme and non-extreme priors.

    The union of the two per-component intervals is connected exactly when
    the second component is at least as informative as the first; otherwise
    a band of moderate priors in the middle is nonetheless extreme.
    """
    payoffs = PayoffStructure(1.0, 0.0)  # thresholds at c=0 do not depend on payoffs
    ne_alpha = h_set(0.0, info, payoffs, ALPHA)
    ne_beta = h_set(0.0, info, payoffs, BETA)
    connected = ne_beta.lower <= ne_alpha.upper
    if connected:
        union = (ProbabilityInterval.open(ne_alpha.lower, ne_beta.upper),)
        complement = (
            ProbabilityInterval.closed(0.0, ne_alpha.lower),
            ProbabilityInterval.closed(ne_beta.upper, 1.0),
        )
    else:
        union = (ne_alpha, ne_beta)
        complement = (
            ProbabilityInterval.closed(0.0, ne_alpha.lower),
            ProbabilityInterval.closed(ne_alpha.upper, ne_beta.lower),
            ProbabilityInterval.closed(ne_beta.upper, 1.0),
        )
    return ExtremeSets(
        non_extreme_alpha=ne_alpha,
        non_extreme_beta=ne_beta,
        non_extreme=union,
        extreme=complement,
        is_convex=info.theta2 >= info.theta1,
    )


def reciprocal_partner(
    p_i: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    s1: SignalComponentValue,
    tol: float = DEFAULT_TOL,
) -> float:
    """The other prior with the same willingness to pay after ``s1``.

    The cost function rises on one side of its peak and falls on the other,
    so every non-extreme prior has exactly one partner on the opposite
    branch; found by bisection there.  The peak prior is its own partner and
    is returned as the degenerate fixed point.  Extreme priors have no
    partner (the whole zero-willingness region is flat) and raise.
    """
    p_i = check_probability(p_i, "p_i")
    ne = h_set(0.0, info, payoffs, s1)
    if p_i not in ne:
        raise ExtremeBeliefError(
            f"prior {p_i} is extreme for first component {s1.value}; "
            "no reciprocal partner exists"
        )
    peak = 1.0 - info.theta1 if s1 is ALPHA else info.theta1
    if p_i == peak:
        return p_i
    target = willingness_to_pay(p_i, info, payoffs, s1)
    if p_i < peak:
        lo, hi = peak, ne.upper  # decreasing branch
        decreasing = True
    else:
        lo, hi = ne.lower, peak  # increasing branch
        decreasing = False
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        too_high = willingness_to_pay(mid, info, payoffs, s1) > target
        if too_high == decreasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class PairClass:
    """Acquisition asymmetries for an ordered pair of priors (low, high).

    ``in_b_low_alpha`` holds when, at the given cost and after alpha, the
    low prior acquires while the high one does not; the other fields follow
    the same naming.  V fields compare willingness to pay without fixing a
    cost.
    """

    in_b_low_alpha: bool
    in_b_high_beta: bool
    in_b_high_alpha: bool
    in_b_low_beta: bool
    in_v_low_alpha: bool
    in_v_high_beta: bool
    in_v_high_alpha: bool
    in_v_low_beta: bool


def classify_pair(
    p_i: float,
    p_j: float,
    c: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
) -> PairClass:
    """All eight B/V memberships for the ordered pair ``p_i <= p_j`` at cost ``c``.

    B membership uses the strict willingness comparison against the cost on
    the acquiring side and its negation on the other, so B at cost ``c``
    always implies the matching V membership.
    """
    p_i = check_probability(p_i, "p_i")
    p_j = check_probability(p_j, "p_j")
    if p_i > p_j:
        raise OrderingError(f"pair priors must satisfy p_i <= p_j, got ({p_i}, {p_j})")
    if c < 0:
        raise ParameterError(f"cost must be >= 0, got {c}")
    wtp_i_a = willingness_to_pay(p_i, info, payoffs, ALPHA)
    wtp_j_a = willingness_to_pay(p_j, info, payoffs, ALPHA)
    wtp_i_b = willingness_to_pay(p_i, info, payoffs, BETA)
    wtp_j_b = willingness_to_pay(p_j, info, payoffs, BETA)
    return PairClass(
        in_b_low_alpha=wtp_i_a > c >= wtp_j_a,
        in_b_high_beta=wtp_j_b > c >= wtp_i_b,
        in_b_high_alpha=wtp_j_a > c >= wtp_i_a,
        in_b_low_beta=wtp_i_b > c >= wtp_j_b,
        in_v_low_alpha=wtp_i_a > wtp_j_a,
        in_v_high_beta=wtp_j_b > wtp_i_b,
        in_v_high_alpha=wtp_j_a > wtp_i_a,
        in_v_low_beta=wtp_i_b > wtp_j_b,
    )


@dataclass(frozen=True)
class ReciprocityReport:
    """Willingness-to-pay comparison of two priors across both first components."""

    wtp_alpha: tuple[float, float]
    wtp_beta: tuple[float, float]
    reciprocal_alpha: bool
    reciprocal_beta: bool

    @property
    def consistent(self) -> bool:
        # Equal willingness after one component forces unequal after the other.
        return not (self.reciprocal_alpha and self.reciprocal_beta)


def reciprocity_report(
    p_i: float,
    p_j: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    tol: float = 1e-9,
) -> ReciprocityReport:
    """Check whether two distinct priors share admissible costs for some component.

    Reciprocity for a component requires both priors to be non-extreme for it
    and their willingness to pay there to coincide (within ``tol``); it can
    hold for at most one of the two components.
    """
    p_i = check_probability(p_i, "p_i")
    p_j = check_probability(p_j, "p_j")
    if p_i == p_j:
        raise OrderingError("reciprocity is defined for distinct priors only")
    wtp_a = (
        willingness_to_pay(p_i, info, payoffs, ALPHA),
        willingness_to_pay(p_j, info, payoffs, ALPHA),
    )
    wtp_b = (
        willingness_to_pay(p_i, info, payoffs, BETA),
        willingness_to_pay(p_j, info, payoffs, BETA),
    )
    ne_a = h_set(0.0, info, payoffs, ALPHA)
    ne_b = h_set(0.0, info, payoffs, BETA)
    rec_a = p_i in ne_a and p_j in ne_a and abs(wtp_a[0] - wtp_a[1]) <= tol
    rec_b = p_i in ne_b and p_j in ne_b and abs(wtp_b[0] - wtp_b[1]) <= tol
    return ReciprocityReport(
        wtp_alpha=wtp_a,
        wtp_beta=wtp_b,
        reciprocal_alpha=rec_a,
        reciprocal_beta=rec_b,
    )
