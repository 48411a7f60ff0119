"""Converse (upper) bounds on the secrecy capacity-memory tradeoff.

Two bound families are evaluated for every sub-population choice
``(k_w, k_s)``:

* :func:`ub_split` — a secrecy bound obtained from a degraded-channel
  argument; a one-parameter max-min over an erasure-budget split ``beta``.
* :func:`ub_cache_sharing` — a non-secure bound where cache memory is
  shared along a receiver chain; a max-min over a ``beta`` simplex, with
  cache contributions ``alpha_i`` accumulated by :func:`alpha_sequence`.

:func:`ub_best` minimises over all choices (and, when ``M_s = 0``, also
over the weak-only specialisation :func:`ub_weak_only`).
:func:`ub_global` bounds the budget-optimised tradeoff.

Division conventions, applied literally: ``min{a/0, b} = b``,
``min{a/0, b/0} = +inf``, and a minimum over an empty set is ``+inf``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import IndexOutOfRange
from .model import TOL, CacheSizes, ChannelScenario, pos, validate_scenario

_INF = float("inf")


class BoundFamily(enum.Enum):
    SPLIT = "split"                      # secrecy split over (k_w, k_s)
    CACHE_SHARING = "cache-sharing"      # non-secure cache-sharing chain
    NONSECURE_SUM = "nonsecure-sum"      # weak-only: inverse-sum capacity + local gain
    SPLIT_WEAK_ONLY = "split-weak-only"  # weak-only specialisation of SPLIT
    GLOBAL_BUDGET = "global-budget"      # total-budget converse


@dataclass(frozen=True)
class UpperBoundReport:
    """A bound value together with the witness that attains it."""

    value: float
    family: BoundFamily
    k_w: int
    k_s: int
    beta_witness: Optional[tuple] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "family": self.family.value,
            "k_w": self.k_w,
            "k_s": self.k_s,
            "beta_witness": None
            if self.beta_witness is None
            else list(self.beta_witness),
        }


def _check_subpopulation(s: ChannelScenario, k_w: int, k_s: int) -> None:
    if not (0 <= k_w <= s.K_w):
        raise IndexOutOfRange(f"k_w={k_w} outside 0..{s.K_w}")
    if not (0 <= k_s <= s.K_s):
        raise IndexOutOfRange(f"k_s={k_s} outside 0..{s.K_s}")
    if k_w == 0 and k_s == 0:
        raise IndexOutOfRange("(k_w, k_s) = (0, 0) selects no receivers")


def _maximize_affine_min(lines: Sequence[tuple[float, float]]) -> tuple[float, float]:
    """max over beta in [0,1] of min of affine functions a*beta + b.

    Candidates are beta in {0, 1} and every pairwise equaliser inside
    [0,1]; ties break toward smaller beta so witnesses are deterministic.
    Returns (value, beta).
    """
    candidates = [0.0, 1.0]
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a1, b1 = lines[i]
            a2, b2 = lines[j]
            if a1 != a2:
                beta = (b2 - b1) / (a1 - a2)
                if 0.0 <= beta <= 1.0:
                    candidates.append(beta)
    best_val, best_beta = -_INF, 0.0
    for beta in sorted(candidates):
        val = min(a * beta + b for a, b in lines)
        if val > best_val + TOL:
            best_val, best_beta = val, beta
    return best_val, best_beta


def ub_split(
    s: ChannelScenario, c: CacheSizes, k_w: int, k_s: int
) -> UpperBoundReport:
    """Secrecy upper bound for the sub-population of k_w weak and k_s
    strong receivers.

    Value:  max_{beta in [0,1]} min{ beta (dz-dw)^+ / k_w + M_w ,
            [beta (dz-dw)^+ + (1-beta)(dz-ds)^+] / (k_w+k_s)
            + (k_w M_w + k_s M_s) / (k_w+k_s) }.
    The first term is dropped when ``k_w = 0`` (min{a/0, b} = b).
    """
    validate_scenario(s)
    _check_subpopulation(s, k_w, k_s)
    aw = pos(s.delta_z - s.delta_w)
    as_ = pos(s.delta_z - s.delta_s)
    k = k_w + k_s
    lines = []
    if k_w > 0:
        lines.append((aw / k_w, c.M_w))
    # second term always present since k >= 1
    lines.append(((aw - as_) / k, as_ / k + (k_w * c.M_w + k_s * c.M_s) / k))
    value, beta = _maximize_affine_min(lines)
    return UpperBoundReport(value, BoundFamily.SPLIT, k_w, k_s, (beta,))


def alpha_sequence(
    s: ChannelScenario, c: CacheSizes, k_w: int, k_s: int
) -> list[float]:
    """Cache-sharing increments alpha_1..alpha_{k_w+k_s}.

    Each alpha is the minimum of a local-cache term and the remaining
    share of the pooled cache budget, computed sequentially:

        alpha_i      = min{ i M_w / (D-i+1),
                            [k (k_w M_w + k_s M_s)/D - sum_{l<i} alpha_l]
                            / (k - i + 1) },              i = 1..k_w
        alpha_{k_w+j} = min{ (k_w M_w + j M_s) / (D-k_w-j+1),
                            [k (k_w M_w + k_s M_s)/D - sum] / (k_s-j+1) },
                                                          j = 1..k_s
    with k = k_w + k_s.
    """
    validate_scenario(s)
    _check_subpopulation(s, k_w, k_s)
    k = k_w + k_s
    pool = k * (k_w * c.M_w + k_s * c.M_s) / s.D
    alphas: list[float] = []
    for i in range(1, k_w + 1):
        local = i * c.M_w / (s.D - i + 1)
        shared = (pool - sum(alphas)) / (k - i + 1)
        alphas.append(min(local, shared))
    for j in range(1, k_s + 1):
        local = (k_w * c.M_w + j * c.M_s) / (s.D - k_w - j + 1)
        shared = (pool - sum(alphas)) / (k_s - j + 1)
        alphas.append(min(local, shared))
    return alphas


def ub_cache_sharing(
    s: ChannelScenario, c: CacheSizes, k_w: int, k_s: int
) -> UpperBoundReport:
    """Non-secure cache-sharing upper bound over the beta simplex.

    Value: max over beta_1..beta_k >= 0 summing to 1 of
        min{ min_i [(1-dw) beta_i + alpha_i],
             min_j [(1-ds) beta_{k_w+j} + alpha_{k_w+j}] }.

    Solved by bisection on the target value t: the budget needed to push
    every term up to t is
        f(t) = sum_i (t - alpha_i)^+/(1-dw) + sum_j (t - alpha_j)^+/(1-ds),
    which is nondecreasing, so the optimum is the largest t with
    f(t) <= 1.  A vanishing capacity factor (delta = 1) caps t at the
    smallest alpha of that population.
    """
    validate_scenario(s)
    _check_subpopulation(s, k_w, k_s)
    alphas = alpha_sequence(s, c, k_w, k_s)
    a_weak, a_strong = alphas[:k_w], alphas[k_w:]
    cw, cs = 1.0 - s.delta_w, 1.0 - s.delta_s

    cap = _INF
    if k_w > 0 and cw == 0.0:
        cap = min(cap, min(a_weak))
    if k_s > 0 and cs == 0.0:
        cap = min(cap, min(a_strong))

    def budget(t: float) -> float:
        need = 0.0
        if cw > 0.0:
            need += sum(pos(t - a) for a in a_weak) / cw
        if cs > 0.0:
            need += sum(pos(t - a) for a in a_strong) / cs
        return need

    lo = 0.0
    hi = max(alphas) + max(cw, cs)
    if cap < _INF:
        hi = min(hi, cap)
    if cap < _INF and budget(cap) <= 1.0:
        t_star = cap
    else:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if budget(mid) <= 1.0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= TOL:
                break
        t_star = lo

    # Reconstruct the witness simplex point.
    betas = []
    for idx, a in enumerate(alphas):
        cf = cw if idx < k_w else cs
        betas.append(pos(t_star - a) / cf if cf > 0.0 else 0.0)
    slack = 1.0 - sum(betas)
    if betas and slack > 0.0:
        betas[-1] += slack  # spare budget is free to park anywhere
    return UpperBoundReport(
        t_star, BoundFamily.CACHE_SHARING, k_w, k_s, tuple(betas)
    )


def ub_weak_only(s: ChannelScenario, M_w: float, k_w: int) -> float:
    """Upper bound on the tradeoff with empty strong caches (M_s = 0).

    The minimum of a non-secure inverse-sum bound,

        (k_w/(1-dw) + K_s/(1-ds))^-1 + k_w M_w / D,

    and the secrecy split bound with the full strong population.
    """
    validate_scenario(s)
    if not (0 <= k_w <= s.K_w):
        raise IndexOutOfRange(f"k_w={k_w} outside 0..{s.K_w}")
    inv = 0.0
    if k_w > 0 and s.delta_w < 1.0:
        inv += k_w / (1.0 - s.delta_w)
    elif k_w > 0:  # delta_w == 1: infinite cost, zero capacity share
        inv = _INF
    if s.K_s > 0 and s.delta_s < 1.0:
        inv += s.K_s / (1.0 - s.delta_s)
    elif s.K_s > 0:
        inv = _INF
    sum_term = (0.0 if inv == _INF else (1.0 / inv if inv > 0 else _INF)) + (
        k_w * M_w / s.D
    )
    if k_w == 0 and s.K_s == 0:
        sum_term = _INF
    cache = CacheSizes(M_w, 0.0)
    if k_w == 0 and s.K_s == 0:
        split_term = _INF
    else:
        split_term = ub_split(s, cache, k_w, s.K_s).value
    return min(sum_term, split_term)


def ub_best(s: ChannelScenario, c: CacheSizes) -> UpperBoundReport:
    """Tightest upper bound: minimum over all (k_w, k_s) and families.

    When ``M_s = 0`` the weak-only family is intersected as well.  The
    sweep order is deterministic so the returned witness is stable.
    """
    validate_scenario(s)
    best: Optional[UpperBoundReport] = None
    for k_w in range(s.K_w + 1):
        for k_s in range(s.K_s + 1):
            if k_w == 0 and k_s == 0:
                continue
            for fn in (ub_split, ub_cache_sharing):
                rep = fn(s, c, k_w, k_s)
                if best is None or rep.value < best.value - TOL:
                    best = rep
    if c.M_s == 0.0:
        for k_w in range(s.K_w + 1):
            if k_w == 0 and s.K_s == 0:
                continue
            val = ub_weak_only(s, c.M_w, k_w)
            if best is None or val < best.value - TOL:
                best = UpperBoundReport(
                    val, BoundFamily.SPLIT_WEAK_ONLY, k_w, s.K_s, None
                )
    assert best is not None
    return best


def ub_global(s: ChannelScenario, M_tot: float) -> float:
    """Converse for the total-cache-budget tradeoff.

    Value: max_{beta in [0,1]} min{ [beta (dz-dw)^+ + M_tot] / K_w ,
           [beta (dz-dw)^+ + (1-beta)(dz-ds)^+ + M_tot] / K }.
    The first term is dropped when ``K_w = 0``.
    """
    validate_scenario(s)
    if M_tot < 0:
        raise IndexOutOfRange(f"M_tot must be >= 0, got {M_tot}")
    aw = pos(s.delta_z - s.delta_w)
    as_ = pos(s.delta_z - s.delta_s)
    lines = []
    if s.K_w > 0:
        lines.append((aw / s.K_w, M_tot / s.K_w))
    lines.append(((aw - as_) / s.K, (as_ + M_tot) / s.K))
    value, _ = _maximize_affine_min(lines)
    return value
