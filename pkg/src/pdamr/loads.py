"""Closed-form storage/communication loads, the fundamental tradeoff, and the
file-complexity comparisons, all in exact rational arithmetic.

Loads are normalized quantities: the storage load r counts stored copies per
library file, the communication load L counts shuffled bits as a fraction of
the N*D*V bits of all intermediate values. Every function here returns
``Fraction`` values so measured-versus-formula comparisons can demand
equality instead of tolerances. Only the Stirling-scale constants of
``prop1_check`` (a_q, b_q, beta) are floats, since they are irrational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .constructions import man_pda, p1_pda, p2_pda
from .pda import Pda, pda_stats

BETA_BOUND = math.sqrt(2 * math.pi) * math.e ** 2  # upper range for beta, ~18.48


def comb(n: int, k: int) -> int:
    """Binomial coefficient with C(n,k) = 0 outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


class InsufficientTauError(ValueError):
    """The PDA stores too few copies per row for the requested active-set size."""

    def __init__(self, tau: int, needed: int):
        self.tau = tau
        self.needed = needed
        super().__init__(f"minimum storage number {tau} < required {needed}")


class NoMatchingFamilyError(ValueError):
    """Neither low-file-complexity construction covers the requested (K, r)."""


@dataclass(frozen=True)
class LoadPair:
    r: Fraction
    l: Fraction


@dataclass(frozen=True)
class TradeoffCurve:
    """Integer anchor points of the fundamental tradeoff for one (K, Q);
    between anchors the curve is their linear interpolation."""

    k_nodes: int
    q_active: int
    points: tuple[tuple[int, Fraction], ...]  # (r, L*(r)), r ascending

    def evaluate(self, r) -> Fraction:
        return optimal_load(self.k_nodes, self.q_active, r)


def _check_kq(k_nodes: int, q_active: int) -> None:
    if k_nodes < 1:
        raise ValueError("k_nodes must be >= 1")
    if not 1 <= q_active <= k_nodes:
        raise ValueError(f"q_active must be in 1..{k_nodes}, got {q_active}")


def u_value(k_nodes: int, q_active: int, u: int) -> Fraction:
    """Per-symbol signal weight of a multiplicity-``u`` symbol: the bracket
    C(K-u,Q-1) + sum_l C(u-1,l)*C(K-u,Q-l-1)/l that scales its average
    contribution to the shuffle. Defined for u in 1..K; constant in u over
    {1,2} and strictly decreasing beyond when Q >= 3."""
    _check_kq(k_nodes, q_active)
    if not 1 <= u <= k_nodes:
        raise ValueError(f"u must be in 1..{k_nodes}, got {u}")
    total = Fraction(comb(k_nodes - u, q_active - 1))
    lo = max(1, u - k_nodes + q_active - 1)
    hi = min(u, q_active) - 1
    for l in range(lo, hi + 1):
        total += Fraction(comb(u - 1, l) * comb(k_nodes - u, q_active - l - 1), l)
    return total


def z_value(k_nodes: int, q_active: int, u: int) -> Fraction:
    """Node value of the converse bound at integer storage ``u``:
    sum_l ((Q-l)/(Q*l)) * C(u,l) * C(K-u,Q-l) over l in [u+Q-K .. min(u,Q)].
    Dividing by C(K,Q) recovers the fundamental tradeoff at r = u."""
    _check_kq(k_nodes, q_active)
    if not k_nodes - q_active + 1 <= u <= k_nodes:
        raise ValueError(
            f"u must be in {k_nodes - q_active + 1}..{k_nodes}, got {u}")
    total = Fraction(0)
    for l in range(u + q_active - k_nodes, min(u, q_active) + 1):
        total += Fraction(q_active - l, q_active * l) * comb(u, l) * comb(k_nodes - u, q_active - l)
    return total


def optimal_load(k_nodes: int, q_active: int, r) -> Fraction:
    """Fundamental storage-communication tradeoff L*(r) for a K-node system
    where the first Q nodes to finish mapping carry the shuffle.

    For integer r in [K-Q+1 .. K]:
        L*(r) = (1 - r/K) * sum_l (1/l) * C(r,l)*C(K-r-1,Q-l-1) / C(K-1,Q-1),
    summing l from r+Q-K to min(r, Q-1). Non-integer r interpolates linearly
    between the neighbouring integer points, which is exact because the
    integer sequence is convex.
    """
    _check_kq(k_nodes, q_active)
    r = Fraction(r)
    lo_bound, hi_bound = k_nodes - q_active + 1, k_nodes
    if not lo_bound <= r <= hi_bound:
        raise ValueError(f"r must be in [{lo_bound}, {hi_bound}], got {r}")

    if r.denominator != 1:
        below, above = r.numerator // r.denominator, r.numerator // r.denominator + 1
        l_below = optimal_load(k_nodes, q_active, below)
        l_above = optimal_load(k_nodes, q_active, above)
        return l_below + (l_above - l_below) * (r - below)

    r = int(r)
    total = Fraction(0)
    for l in range(r + q_active - k_nodes, min(r, q_active - 1) + 1):
        total += Fraction(comb(r, l) * comb(k_nodes - r - 1, q_active - l - 1), l)
    return (1 - Fraction(r, k_nodes)) * total / comb(k_nodes - 1, q_active - 1)


def tradeoff_curve(k_nodes: int, q_active: int) -> TradeoffCurve:
    """All integer anchor points of the fundamental tradeoff for (K, Q)."""
    _check_kq(k_nodes, q_active)
    points = tuple((r, optimal_load(k_nodes, q_active, r))
                   for r in range(k_nodes - q_active + 1, k_nodes + 1))
    return TradeoffCurve(k_nodes, q_active, points)


def achieved_load(pda: Pda, q_active: int) -> LoadPair:
    """Exact storage/communication load pair of the coded shuffle scheme built
    from ``pda`` when ``q_active`` nodes stay active.

    L = (1 - T/(F*K)) * sum_t theta_t * u_value(K, Q, t) / C(K-1, Q-1).
    For a g-regular array the sum collapses to the single term t = g; that is
    an identity of the formula, not a separate code path.
    """
    _check_kq(pda.k, q_active)
    stats = pda_stats(pda)
    if not stats.is_comp:
        raise ValueError("not a Comp-PDA: some row has no star")
    needed = pda.k - q_active + 1
    if stats.tau < needed:
        raise InsufficientTauError(stats.tau, needed)

    weight = Fraction(0)
    for t, frac in stats.theta.items():
        weight += frac * u_value(pda.k, q_active, t)
    l = (1 - Fraction(pda.t, pda.f * pda.k)) * weight / comb(pda.k - 1, q_active - 1)
    return LoadPair(r=stats.storage_load, l=l)


def optimal_file_complexity(k_nodes: int, r: int) -> int:
    """Minimum number of file batches any scheme needs to sit exactly on the
    tradeoff at integer storage r (met with equality by the subset family)."""
    if not 1 <= r <= k_nodes:
        raise ValueError(f"r must be in 1..{k_nodes}, got {r}")
    return comb(k_nodes, r)


@dataclass(frozen=True)
class Prop1Report:
    """How close a low-file-complexity construction sits to the tradeoff.

    l_ratio = achieved/optimal load; alpha = r*(l_ratio - 1) and must land in
    [0, 2]. f_construction is the construction's row count, f_optimal =
    C(K, r), and beta scales their ratio against the Stirling envelope
    A_q * sqrt(K) * B_q**(-K); it must land in [0, sqrt(2*pi)*e**2].
    """

    k_nodes: int
    r: int
    q_active: int
    family: str  # "P1" or "P2"
    q: int
    c: Fraction  # r / K, equal to 1/q (P1) or (q-1)/q (P2)
    l_achieved: Fraction
    l_optimal: Fraction
    l_ratio: Fraction
    alpha: Fraction
    f_construction: int
    f_optimal: int
    f_ratio: Fraction
    a_q: float
    b_q: float
    beta: float
    alpha_in_range: bool
    beta_in_range: bool


def _family_for(k_nodes: int, r: int):
    """Pick the construction covering storage load r on k_nodes nodes."""
    if k_nodes % r == 0:
        q = k_nodes // r
        if 2 <= q <= k_nodes - 1:
            return "P1", q, r  # m = r
    if k_nodes % (k_nodes - r) == 0:
        q = k_nodes // (k_nodes - r)
        if 2 <= q <= k_nodes - 1:
            return "P2", q, k_nodes - r  # m = K - r
    raise NoMatchingFamilyError(
        f"r/K = {r}/{k_nodes} is not 1/q or (q-1)/q for any q in 2..{k_nodes - 1}")


def prop1_check(k_nodes: int, r: int, q_active: int) -> Prop1Report:
    """Evaluate the closeness-to-optimal and file-complexity-reduction claims
    for the low-file-complexity construction matching (K, r), under active-set
    size Q. Requires K-Q+1 <= r <= K-1 and r/K in {1/q, (q-1)/q}."""
    _check_kq(k_nodes, q_active)
    if not k_nodes - q_active + 1 <= r <= k_nodes - 1:
        raise ValueError(
            f"r must be in {k_nodes - q_active + 1}..{k_nodes - 1}, got {r}")
    family, q, m = _family_for(k_nodes, r)
    pda = _family_instance(family, q, m)

    pair = achieved_load(pda, q_active)
    assert pair.r == r
    l_optimal = optimal_load(k_nodes, q_active, r)
    l_ratio = pair.l / l_optimal
    alpha = r * (l_ratio - 1)

    c = Fraction(r, k_nodes)
    f_construction = pda.f
    f_optimal = optimal_file_complexity(k_nodes, r)
    f_ratio = Fraction(f_construction, f_optimal)
    a_q = math.sqrt(q - 1) / (c * q)
    b_q = (q / (q - 1)) ** ((q - 1) / q)
    beta = float(f_ratio) * b_q ** k_nodes / (a_q * math.sqrt(k_nodes))

    return Prop1Report(
        k_nodes=k_nodes, r=r, q_active=q_active,
        family=family, q=q, c=c,
        l_achieved=pair.l, l_optimal=l_optimal, l_ratio=l_ratio, alpha=alpha,
        f_construction=f_construction, f_optimal=f_optimal, f_ratio=f_ratio,
        a_q=a_q, b_q=b_q, beta=beta,
        alpha_in_range=0 <= alpha <= 2,
        beta_in_range=0 <= beta <= BETA_BOUND,
    )


_INSTANCE_CACHE: dict[tuple[str, int, int], Pda] = {}


def _family_instance(family: str, q: int, m: int) -> Pda:
    key = (family, q, m)
    if key not in _INSTANCE_CACHE:
        _INSTANCE_CACHE[key] = p1_pda(q, m) if family == "P1" else p2_pda(q, m)
    return _INSTANCE_CACHE[key]


def man_load(k_nodes: int, q_active: int, r: int) -> LoadPair:
    """Load pair of the subset-family PDA with storage r; its communication
    load meets the fundamental tradeoff exactly."""
    return achieved_load(man_pda(k_nodes, r), q_active)
