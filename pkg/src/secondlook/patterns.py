"""Belief patterns under optimal acquisition: polarization, confirmation, reaction.

A decision-maker who skips the second component walks away with the interim
posterior; one who acquires holds the full posterior.  Comparing these
realized beliefs across two decision-makers, or against the full-information
benchmark for a single one, produces the patterns this module quantifies:

* divergence D: prior gap minus realized-posterior gap (negative = farther
  apart);
* inversion I: product of the two belief changes (negative = opposite
  directions);
* polarization: D < 0 and I < 0 simultaneously, both strict;
* disconfirmation: a higher willingness to scrutinize (or actual scrutiny
  of) evidence against one's favored state;
* confirmatory / disproving patterns: the realized belief moves toward
  (away from) the favored state while the full-information posterior moves
  the other way;
* under- / over-reaction: the realized belief stops short of, or overshoots,
  the full-information posterior.

Pairwise feasibility and probability take the asymmetric-acquisition sets
from :mod:`secondlook.sets` as inputs.  The probability formula multiplies
the two components' marginals at a caller-supplied subjective prior; that
prior is deliberately never defaulted, because nothing in the model pins it
down.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndifferentPriorError, OrderingError, ParameterError
from .incentives import (
    AcquisitionAction,
    max_willingness_to_pay,
    willingness_to_pay,
)
from .model import (
    ALPHA,
    BETA,
    InformationStructure,
    PayoffStructure,
    Signal,
    SignalComponentValue,
    check_probability,
    marginal_first,
    posterior_after_both,
    posterior_after_first,
)
from .sets import ProbabilityInterval, classify_pair, h_set


def _acquires(
    p: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    cost: float,
    s1: SignalComponentValue,
) -> bool:
    return cost <= willingness_to_pay(p, info, payoffs, s1)


def realized_posterior(
    p: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    cost: float,
    signal: Signal,
) -> tuple[float, AcquisitionAction]:
    """Belief actually held after optimally deciding whether to acquire.

    Returns the interim posterior with SKIP, or the full posterior with
    ACQUIRE, for the given signal realization.
    """
    p = check_probability(p)
    if cost < 0:
        raise ParameterError(f"cost must be >= 0, got {cost}")
    if _acquires(p, info, payoffs, cost, signal.first):
        return (
            posterior_after_both(p, info, signal.first, signal.second),
            AcquisitionAction.ACQUIRE,
        )
    return posterior_after_first(p, info, signal.first), AcquisitionAction.SKIP


@dataclass(frozen=True)
class PairwiseOutcome:
    """Realized beliefs of an ordered pair and the divergence/inversion verdict."""

    divergence: float
    inversion: float
    polarized: bool
    realized_posteriors: tuple[float, float]
    acquisitions: tuple[AcquisitionAction, AcquisitionAction]


def pairwise_outcome(
    p_i: float,
    p_j: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    cost: float,
    signal: Signal,
) -> PairwiseOutcome:
    """Evaluate one signal realization for a pair of priors ``p_i <= p_j``."""
    p_i = check_probability(p_i, "p_i")
    p_j = check_probability(p_j, "p_j")
    if p_i > p_j:
        raise OrderingError(f"pair priors must satisfy p_i <= p_j, got ({p_i}, {p_j})")
    post_i, act_i = realized_posterior(p_i, info, payoffs, cost, signal)
    post_j, act_j = realized_posterior(p_j, info, payoffs, cost, signal)
    divergence = abs(p_i - p_j) - abs(post_i - post_j)
    inversion = (p_i - post_i) * (p_j - post_j)
    return PairwiseOutcome(
        divergence=divergence,
        inversion=inversion,
        polarized=divergence < 0.0 and inversion < 0.0,
        realized_posteriors=(post_i, post_j),
        acquisitions=(act_i, act_j),
    )


@dataclass(frozen=True)
class PolarizationFeasibility:
    """Whether a pair can polarize, and through which acquisition asymmetry.

    The two ``via`` routes keep the priors in order: the realized beliefs
    move apart without crossing.  The two ``swap`` routes polarize by
    crossing: the acquirer's belief jumps past the other's, and the new gap
    exceeds the old one.
    """

    feasible: bool
    second_more_informative: bool
    via_alpha: bool
    via_beta: bool
    via_alpha_swap: bool
    via_beta_swap: bool
    cost: float | None

    def __bool__(self) -> bool:
        return self.feasible


def _swap_gap_alpha(p_i, p_j, info) -> float:
    # Signal (alpha, beta) with the high prior alone acquiring: the low
    # prior rises to its interim posterior, the high one falls to the full
    # posterior.  Positive value = the crossed gap exceeds the prior gap.
    low_realized = posterior_after_first(p_i, info, ALPHA)
    high_realized = posterior_after_both(p_j, info, ALPHA, BETA)
    return (low_realized - high_realized) - (p_j - p_i)


def _swap_gap_beta(p_i, p_j, info) -> float:
    # Mirror image: signal (beta, alpha) with the low prior alone acquiring.
    low_realized = posterior_after_both(p_i, info, BETA, ALPHA)
    high_realized = posterior_after_first(p_j, info, BETA)
    return (low_realized - high_realized) - (p_j - p_i)


def polarization_feasible(
    p_i: float,
    p_j: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    c: float | None = None,
) -> PolarizationFeasibility:
    """Can these two priors end up polarized with positive probability?

    Polarization requires a strictly more informative second component and
    one-sided acquisition: at the opposing-components signal the lone
    acquirer follows the second component while the other follows the
    first.  Four routes, two per first-component value:

    * low prior alone acquires after alpha (or high alone after beta): the
      beliefs move apart in order, and that is already enough;
    * high prior alone acquires after alpha (or low alone after beta): the
      beliefs cross, which polarizes exactly when the crossed gap exceeds
      the prior gap and the non-acquirer's belief actually moves (interior
      prior).

    Without a cost the one-sided-acquisition conditions are read as strict
    willingness-to-pay orderings (some cost would separate the decisions);
    with a cost they are the acquisition outcomes at that cost.
    """
    p_i = check_probability(p_i, "p_i")
    p_j = check_probability(p_j, "p_j")
    if not p_i < p_j:
        raise OrderingError(f"pair priors must satisfy p_i < p_j, got ({p_i}, {p_j})")
    theta_ok = info.theta2 > info.theta1
    pair = classify_pair(p_i, p_j, 0.0 if c is None else c, info, payoffs)
    if c is None:
        low_alpha, high_beta = pair.in_v_low_alpha, pair.in_v_high_beta
        high_alpha, low_beta = pair.in_v_high_alpha, pair.in_v_low_beta
    else:
        if c < 0:
            raise ParameterError(f"cost must be >= 0, got {c}")
        low_alpha, high_beta = pair.in_b_low_alpha, pair.in_b_high_beta
        high_alpha, low_beta = pair.in_b_high_alpha, pair.in_b_low_beta
    via_alpha = theta_ok and low_alpha
    via_beta = theta_ok and high_beta
    via_alpha_swap = (
        theta_ok and high_alpha and p_i > 0.0 and _swap_gap_alpha(p_i, p_j, info) > 0.0
    )
    via_beta_swap = (
        theta_ok and low_beta and p_j < 1.0 and _swap_gap_beta(p_i, p_j, info) > 0.0
    )
    return PolarizationFeasibility(
        feasible=via_alpha or via_beta or via_alpha_swap or via_beta_swap,
        second_more_informative=theta_ok,
        via_alpha=via_alpha,
        via_beta=via_beta,
        via_alpha_swap=via_alpha_swap,
        via_beta_swap=via_beta_swap,
        cost=c,
    )


def polarization_probability(
    p_subjective: float,
    p_i: float,
    p_j: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    c: float,
) -> float:
    """Ex-ante probability of polarization at cost ``c`` under a subjective prior.

    Each in-order acquisition asymmetry contributes the product of the two
    components' marginals for the opposing realization pattern: first alpha
    and second beta when the low prior alone acquires after alpha, and the
    mirror image when the high prior alone acquires after beta.  The result
    never exceeds 1/2.

    Two limits of this closed form worth knowing: it multiplies the two
    component marginals as if independent, whereas the sampled signal
    process couples them through the state (the Monte Carlo validator draws
    from the product law for exactly this reason); and it counts only the
    in-order routes of :func:`polarization_feasible`, so pairs that can
    polarize only by crossing get probability zero here.
    """
    p_subjective = check_probability(p_subjective, "p_subjective")
    feas = polarization_feasible(p_i, p_j, info, payoffs, c)
    if not feas:
        return 0.0
    prob_first_alpha = marginal_first(p_subjective, info, ALPHA)
    t2 = info.theta2
    prob_second_alpha = p_subjective * t2 + (1.0 - p_subjective) * (1.0 - t2)
    total = 0.0
    if feas.via_alpha:
        total += prob_first_alpha * (1.0 - prob_second_alpha)
    if feas.via_beta:
        total += (1.0 - prob_first_alpha) * prob_second_alpha
    return total


def polarization_partners(
    p_i: float,
    c: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
) -> tuple[ProbabilityInterval, ...]:
    """Priors guaranteed to polarize against ``p_i`` with positive probability.

    Requires an interior prior, a cost strictly inside (0, maximum), and a
    strictly more informative second component.  The returned union of
    intervals is always non-empty: whichever of the acquisition interval
    H_alpha(c) or its flanks contains ``p_i``, the opposite region supplies
    partners, and the beta-side analysis contributes its mirror image.
    """
    p_i = check_probability(p_i, "p_i")
    if not 0.0 < p_i < 1.0:
        raise ParameterError(f"partner analysis needs an interior prior, got {p_i}")
    ceiling = max_willingness_to_pay(info, payoffs)
    if not 0.0 < c < ceiling:
        raise ParameterError(
            f"cost must lie strictly between 0 and the maximum {ceiling}, got {c}"
        )
    if not info.theta2 > info.theta1:
        raise ParameterError(
            "partners exist only when the second component is strictly more "
            f"informative (theta1={info.theta1}, theta2={info.theta2})"
        )
    h_alpha = h_set(c, info, payoffs, ALPHA)
    h_beta = h_set(c, info, payoffs, BETA)
    partners: list[ProbabilityInterval] = []
    # Alpha-side analysis: the low prior must acquire after alpha, the high
    # one must not.
    if p_i in h_alpha:
        partners.append(ProbabilityInterval.closed(h_alpha.upper, 1.0))
    if p_i >= h_alpha.upper:
        partners.append(h_alpha)
    if p_i <= h_alpha.lower:
        partners.append(h_beta)
    # Beta-side mirror: the high prior must acquire after beta, the low one
    # must not.
    if p_i in h_beta:
        partners.append(ProbabilityInterval.closed(0.0, h_beta.lower))
    if p_i <= h_beta.lower and p_i > h_alpha.lower:
        partners.append(h_beta)
    return tuple(partners)


@dataclass(frozen=True)
class DisconfirmationReport:
    """Whether contrary evidence attracts more scrutiny, in will and in deed."""

    tendency: bool
    exhibits: bool
    wtp_alpha: float
    wtp_beta: float


def disconfirmation_report(
    p: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    cost: float,
) -> DisconfirmationReport:
    """Willingness and acquisition asymmetry across the two first components.

    A prior above 1/2 favors A, so beta is the contrary evidence; the
    tendency holds when the willingness to pay after beta strictly exceeds
    the one after alpha, and it is exhibited when the cost separates the two
    acquisition decisions in that direction.  The prior exactly at 1/2
    favors neither state and reports false on both counts.
    """
    p = check_probability(p)
    if cost < 0:
        raise ParameterError(f"cost must be >= 0, got {cost}")
    wtp_a = willingness_to_pay(p, info, payoffs, ALPHA)
    wtp_b = willingness_to_pay(p, info, payoffs, BETA)
    if p > 0.5:
        tendency = wtp_b > wtp_a
        exhibits = _acquires(p, info, payoffs, cost, BETA) and not _acquires(
            p, info, payoffs, cost, ALPHA
        )
    elif p < 0.5:
        tendency = wtp_a > wtp_b
        exhibits = _acquires(p, info, payoffs, cost, ALPHA) and not _acquires(
            p, info, payoffs, cost, BETA
        )
    else:
        tendency = False
        exhibits = False
    return DisconfirmationReport(
        tendency=tendency, exhibits=exhibits, wtp_alpha=wtp_a, wtp_beta=wtp_b
    )


@dataclass(frozen=True)
class ConfirmationReport:
    """Confirmatory vs disproving verdict for one signal realization."""

    confirmatory: bool
    disproving: bool
    prior: float
    full_posterior: float
    realized: float
    acquired: bool


def confirmation_report(
    p: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    cost: float,
    signal: Signal,
) -> ConfirmationReport:
    """Compare the realized belief with the full-information posterior.

    With the prior favoring A (p > 1/2), the pattern is confirmatory when
    the realized belief rises above the prior while the full posterior falls
    below it, and disproving in the mirrored ordering; priors below 1/2 swap
    the roles.  The prior exactly at 1/2 favors no state and is rejected.
    """
    p = check_probability(p)
    if p == 0.5:
        raise IndifferentPriorError(
            "confirmatory/disproving patterns need a favored state; p=1/2 has none"
        )
    realized, action = realized_posterior(p, info, payoffs, cost, signal)
    full = posterior_after_both(p, info, signal.first, signal.second)
    toward = full < p < realized  # realized moved toward the favored state A
    away = realized < p < full
    if p > 0.5:
        confirmatory, disproving = toward, away
    else:
        confirmatory, disproving = away, toward
    return ConfirmationReport(
        confirmatory=confirmatory,
        disproving=disproving,
        prior=p,
        full_posterior=full,
        realized=realized,
        acquired=action is AcquisitionAction.ACQUIRE,
    )


@dataclass(frozen=True)
class ReactionReport:
    """Under- or over-reaction relative to the full-information posterior."""

    underreaction: bool
    overreaction: bool
    prior: float
    full_posterior: float
    realized: float


def reaction_report(
    p: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    cost: float,
    signal: Signal,
) -> ReactionReport:
    """Order the prior, realized belief, and full posterior.

    Underreaction places the realized belief strictly between prior and full
    posterior; overreaction places the full posterior strictly between prior
    and realized belief.  Both require a skipped second component, since
    acquiring makes realized and full posteriors coincide.
    """
    p = check_probability(p)
    realized, _ = realized_posterior(p, info, payoffs, cost, signal)
    full = posterior_after_both(p, info, signal.first, signal.second)
    under = p < realized < full or full < realized < p
    over = p < full < realized or realized < full < p
    return ReactionReport(
        underreaction=under,
        overreaction=over,
        prior=p,
        full_posterior=full,
        realized=realized,
    )


@dataclass(frozen=True)
class PatternReport:
    """All single-decision-maker verdicts for one signal, with their witnesses."""

    disconfirmation_tendency: bool
    exhibits_disconfirmation: bool
    confirmatory: bool
    disproving: bool
    underreaction: bool
    overreaction: bool
    witnesses: dict

    def __post_init__(self):
        if self.confirmatory and self.disproving:
            raise ParameterError("confirmatory and disproving are mutually exclusive")
        if self.underreaction and self.overreaction:
            raise ParameterError("under- and over-reaction are mutually exclusive")


def pattern_report(
    p: float,
    info: InformationStructure,
    payoffs: PayoffStructure,
    cost: float,
    signal: Signal,
) -> PatternReport:
    """Aggregate the individual pattern predicates with supporting numbers."""
    disc = disconfirmation_report(p, info, payoffs, cost)
    conf = confirmation_report(p, info, payoffs, cost, signal)
    react = reaction_report(p, info, payoffs, cost, signal)
    witnesses = {
        "prior": p,
        "wtp_alpha": disc.wtp_alpha,
        "wtp_beta": disc.wtp_beta,
        "cost": cost,
        "realized": conf.realized,
        "full_posterior": conf.full_posterior,
        "acquired": conf.acquired,
    }
    return PatternReport(
        disconfirmation_tendency=disc.tendency,
        exhibits_disconfirmation=disc.exhibits,
        confirmatory=conf.confirmatory,
        disproving=conf.disproving,
        underreaction=react.underreaction,
        overreaction=react.overreaction,
        witnesses=witnesses,
    )
