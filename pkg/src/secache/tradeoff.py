"""Assembled tradeoff curves, budget optimisation, exactness detection.

Lower bounds come from hulls over the corner-point families; upper bounds
from the converse module.  :func:`exact_regimes` numerically certifies
the regimes where the two provably meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bounds, corners, hull
from .errors import NotApplicable
from .model import CacheSizes, ChannelScenario, RateMemoryPoint, validate_scenario, zero_cache_capacity


def weak_only_curve(s: ChannelScenario) -> hull.Curve1D:
    """Hull of the weak-only corner points (M_s = 0 throughout)."""
    pts = corners.points_weak_only(s)
    return hull.upper_hull_1d([(p.M_w, p.R) for p in pts])


def lower_curve_weak_only(s: ChannelScenario, M_w: float) -> float:
    """Achievable rate with cache M_w at weak receivers, none at strong.

    Returns 0 when ``delta_z <= delta_s`` (the weak-only families do not
    apply there; see :func:`exact_regimes`, which flags this gate).
    """
    validate_scenario(s)
    try:
        return hull.eval_hull_1d(weak_only_curve(s), M_w)
    except NotApplicable:
        return 0.0


def separate_curve(s: ChannelScenario) -> hull.Curve1D:
    pts = corners.points_separate(s)
    return hull.upper_hull_1d([(p.M_w, p.R) for p in pts])


def _surface_points(s: ChannelScenario) -> list[RateMemoryPoint]:
    pts = list(corners.points_all_cached(s))
    if s.delta_z > s.delta_s and s.K_w >= 1:
        pts += corners.points_weak_only(s)
    return pts


def lower_surface_all(s: ChannelScenario, M_w: float, M_s: float) -> float:
    """Achievable rate with caches (M_w, M_s) at weak/strong receivers.

    Mixture LP over the all-cached triples, augmented with the weak-only
    points whenever they exist (they remain valid with M_s = 0).
    """
    validate_scenario(s)
    return hull.eval_hull_2d(_surface_points(s), M_w, M_s)


def global_curve(s: ChannelScenario) -> hull.Curve1D:
    """Hull over total budget M_tot = K_w M_w + K_s M_s of all families.

    Every achievable triple maps to the budget it consumes; the symmetric
    family is included as well (uniform assignment is one feasible way to
    spend the budget, and at some parameters its coded-caching points beat
    the other families).
    """
    validate_scenario(s)
    mapped: list[tuple[float, float]] = []
    if s.delta_z > s.delta_s and s.K_w >= 1:
        for p in corners.points_weak_only(s):
            mapped.append((s.K_w * p.M_w, p.R))
    else:
        mapped.append((0.0, zero_cache_capacity(s)))
    if s.K_w >= 1 and s.K_s >= 1:
        for p in corners.points_all_cached(s):
            mapped.append((s.K_w * p.M_w + s.K_s * p.M_s, p.R))
        for p in corners.points_symmetric(s):
            mapped.append((s.K * p.M_w, p.R))
    return hull.upper_hull_1d(mapped)


def lower_global(s: ChannelScenario, M_tot: float) -> float:
    """Achievable rate with total cache budget M_tot, freely assigned."""
    return hull.eval_hull_1d(global_curve(s), M_tot)


def uniform_curve(s: ChannelScenario) -> hull.Curve1D:
    """Symmetric-assignment hull, x-axis rescaled to total budget."""
    pts = corners.points_symmetric(s)
    return hull.upper_hull_1d([(s.K * p.M_w, p.R) for p in pts])


def lower_uniform(s: ChannelScenario, M_tot: float) -> float:
    """Achievable rate when the budget is split equally over all K
    receivers (M_w = M_s = M_tot / K)."""
    return hull.eval_hull_1d(uniform_curve(s), M_tot)


@dataclass
class RegimeClaim:
    """One numerically certified exactness claim."""

    name: str
    applicable: bool
    description: str
    interval: tuple[float, float] | None = None
    max_deviation: float | None = None
    exact: bool | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "description": self.description,
            "interval": None if self.interval is None else list(self.interval),
            "max_deviation": self.max_deviation,
            "exact": self.exact,
            "note": self.note,
        }


@dataclass
class RegimeReport:
    claims: list[RegimeClaim] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return all(c.exact for c in self.claims if c.applicable)

    def to_dict(self) -> dict:
        return {"claims": [c.to_dict() for c in self.claims], "notes": self.notes}


def _certify(points, lower_fn, upper_fn, reference_fn):
    dev = 0.0
    for x in points:
        lo, up = lower_fn(x), upper_fn(x)
        dev = max(dev, abs(lo - up))
        if reference_fn is not None:
            dev = max(dev, abs(lo - reference_fn(x)))
    return dev


def exact_regimes(s: ChannelScenario, samples: int = 11) -> RegimeReport:
    """Certify each regime where lower and upper bounds provably meet.

    Every claim is re-verified numerically at ``samples`` points within
    1e-9 before being reported exact; mismatches are reported with their
    maximal deviation, never clamped.
    """
    validate_scenario(s)
    rep = RegimeReport()
    weak_ok = s.delta_z > s.delta_s and s.K_w >= 1
    if s.delta_z <= s.delta_s:
        rep.notes.append(
            "weak-only results gated off: delta_z <= delta_s, so caches at "
            "weak receivers alone sustain no positive secrecy rate"
        )
        if s.K_w >= 1:
            rep.claims.append(
                RegimeClaim(
                    name="weak-only-zero",
                    applicable=True,
                    description="with M_s = 0 the secrecy capacity is 0",
                    exact=True,
                    note="delta_z <= delta_s",
                )
            )

    def grid(a: float, b: float) -> list[float]:
        if samples == 1:
            return [a]
        return [a + (b - a) * i / (samples - 1) for i in range(samples)]

    if weak_ok:
        pts = {p.label: p for p in corners.points_weak_only(s)}
        slope = corners.weak_only_max_slope(s)
        r0 = zero_cache_capacity(s)
        m1 = pts["cached-keys"].M_w
        dev = _certify(
            grid(0.0, m1),
            lambda m: lower_curve_weak_only(s, m),
            lambda m: bounds.ub_best(s, CacheSizes(m, 0.0)).value,
            lambda m: r0 + slope * m,
        )
        rep.claims.append(
            RegimeClaim(
                name="weak-only-small-memory",
                applicable=True,
                description="keys-only placement is optimal; the shared "
                "value is R(0) + slope * M_w",
                interval=(0.0, m1),
                max_deviation=dev,
                exact=dev <= 1e-9,
            )
        )
        if "piggyback-two" in pts:
            m_top = pts["piggyback-two"].M_w
            m_lib = pts["full-library"].M_w
            flat = (s.delta_z - s.delta_s) / s.K_s
            dev = _certify(
                grid(m_top, max(2.0 * m_lib, m_top + 1.0)),
                lambda m: lower_curve_weak_only(s, m),
                lambda m: bounds.ub_best(s, CacheSizes(m, 0.0)).value,
                lambda m: flat,
            )
            rep.claims.append(
                RegimeClaim(
                    name="weak-only-large-memory",
                    applicable=True,
                    description="capacity saturates at (dz-ds)/K_s",
                    interval=(m_top, float("inf")),
                    max_deviation=dev,
                    exact=dev <= 1e-9,
                )
            )
    else:
        rep.claims.append(
            RegimeClaim(
                name="weak-only-small-memory",
                applicable=False,
                description="not applicable: delta_z <= delta_s or K_w = 0",
            )
        )

    if s.K_w >= 1 and s.K_s >= 1:
        keys_pt = next(
            p for p in corners.points_all_cached(s) if p.label == "all:cached-keys"
        )
        lo = lower_surface_all(s, keys_pt.M_w, keys_pt.M_s)
        up = bounds.ub_best(s, CacheSizes(keys_pt.M_w, keys_pt.M_s)).value
        dev = max(abs(lo - up), abs(lo - keys_pt.R))
        rep.claims.append(
            RegimeClaim(
                name="all-cached-keys-point",
                applicable=True,
                description="the all-receiver cached-keys triple is optimal",
                interval=(keys_pt.M_w, keys_pt.M_s),
                max_deviation=dev,
                exact=dev <= 1e-9,
                note="interval field holds the (M_w, M_s) query point",
            )
        )

        if s.delta_z > s.delta_s:
            m1 = next(
                p for p in corners.points_weak_only(s) if p.label == "cached-keys"
            ).M_w
            end = s.K_w * m1
            r0 = zero_cache_capacity(s)
            slope = (s.delta_z - s.delta_s) / (
                s.K_w * (s.delta_z - s.delta_s)
                + s.K_s * max(0.0, s.delta_z - s.delta_w)
            )
            ref = lambda m: r0 + slope * m
        else:
            end = s.K * keys_pt.R
            ref = lambda m: m / s.K
        dev = _certify(
            grid(0.0, end),
            lambda m: lower_global(s, m),
            lambda m: bounds.ub_global(s, m),
            ref,
        )
        rep.claims.append(
            RegimeClaim(
                name="global-small-budget",
                applicable=True,
                description="global tradeoff is exact for small budgets",
                interval=(0.0, end),
                max_deviation=dev,
                exact=dev <= 1e-9,
            )
        )
    return rep
