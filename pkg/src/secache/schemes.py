"""Coding schemes as explicit placement/delivery plans, plus a verifier.

A :class:`SchemePlan` is a demand-agnostic placement (atoms per receiver)
and a delivery schedule (segments holding units).  Seven builders produce
the plans behind the corner-point families; :func:`verify_plan` checks
each plan's rate feasibility, decodability, secrecy accounting and cache
accounting, returning margins instead of raising, so sweeps can log
failures.

Modelling conventions (erasure broadcast channel, blocklength-normalised
rates):

* Point-to-point or per-receiver broadcast phases become segments whose
  fractions sum to the phase length; a receiver's load in a segment is
  the total rate it must decode there.
* Wiretap randomisation is structural: a wiretap segment records
  ``bin_rate = fraction * (1 - delta_z)`` and the intended receivers
  carry that bin in their decode load, which makes the rate check
  coincide with the usual wiretap decoding constraint.
* Superposition is represented by its erasure-equivalent two-segment
  split; the cloud keys appear as jamming randomisation of the satellite
  segment (physically the two share channel uses, so per-segment secrecy
  sums remain valid witnesses).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional

from .errors import IndexOutOfRange, InvalidParameter, NotApplicable
from .model import (
    CacheSizes,
    ChannelScenario,
    RateMemoryPoint,
    pos,
    validate_scenario,
)

RATE_TOL = 1e-12


# ---------------------------------------------------------------------------
# plan data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    """One cached object: a per-file message part or a secret key.

    A file part with ``per_file=True`` is stored for every library file,
    so it occupies ``D * rate``; a key occupies ``rate``.
    """

    kind: str  # "file_part" | "key"
    label: str
    rate: float
    per_file: bool = True

    def cache_cost(self, D: int) -> float:
        if self.kind == "file_part" and self.per_file:
            return D * self.rate
        return self.rate


@dataclass(frozen=True)
class DeliveryUnit:
    """One decodable payload inside a segment.

    ``parts`` lists (demand-slot, part-label) pairs; with ``combine="xor"``
    the unit carries their modular sum (all parts share one rate), with
    ``combine="concat"`` their juxtaposition.  ``pad_keys`` are stripped by
    legitimate decoders; ``jam_keys`` only count as randomisation against
    the eavesdropper.  ``context[r]`` names cache labels receiver ``r``
    must hold to run its restricted (cache-aided) decoder.
    """

    parts: tuple[tuple[int, str], ...]
    part_rates: tuple[float, ...]
    combine: str = "xor"
    pad_keys: tuple[str, ...] = ()
    jam_keys: tuple[str, ...] = ()
    bin_rate: float = 0.0
    intended: frozenset = frozenset()
    decode_load: dict[int, float] = field(default_factory=dict)
    context: dict[int, tuple[str, ...]] = field(default_factory=dict)

    @property
    def payload_rate(self) -> float:
        if self.combine == "xor":
            return self.part_rates[0] if self.part_rates else 0.0
        return sum(self.part_rates)

    def to_dict(self) -> dict:
        return {
            "parts": [[slot, label] for slot, label in self.parts],
            "part_rates": list(self.part_rates),
            "combine": self.combine,
            "pad_keys": list(self.pad_keys),
            "jam_keys": list(self.jam_keys),
            "bin_rate": self.bin_rate,
            "intended": sorted(self.intended),
            "decode_load": {str(k): v for k, v in sorted(self.decode_load.items())},
        }


@dataclass(frozen=True)
class DeliverySegment:
    """A time-shared slice of the delivery phase."""

    id: tuple
    fraction: float
    units: tuple[DeliveryUnit, ...]

    def to_dict(self) -> dict:
        return {
            "id": list(self.id),
            "fraction": self.fraction,
            "units": [u.to_dict() for u in self.units],
        }


@dataclass
class SchemePlan:
    scheme_name: str
    params: dict
    placement: dict[int, tuple[Atom, ...]]
    schedule: tuple[DeliverySegment, ...]
    claimed_point: RateMemoryPoint
    key_rates: dict[str, float]
    #: per-receiver tiling of its demanded message into (label, rate)
    message_parts: dict[int, tuple[tuple[str, float], ...]]
    #: part labels available from cache by containment in stored atoms
    virtual_cached: dict[int, frozenset] = field(default_factory=dict)

    def cached_labels(self, receiver: int) -> set:
        return {a.label for a in self.placement.get(receiver, ())}

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(
            {
                "scheme": self.scheme_name,
                "params": self.params,
                "claimed_point": {
                    "R": self.claimed_point.R,
                    "M_w": self.claimed_point.M_w,
                    "M_s": self.claimed_point.M_s,
                    "label": self.claimed_point.label,
                },
                "key_rates": dict(sorted(self.key_rates.items())),
                "placement": {
                    str(r): [
                        {"kind": a.kind, "label": a.label, "rate": a.rate}
                        for a in atoms
                    ]
                    for r, atoms in sorted(self.placement.items())
                },
                "schedule": [seg.to_dict() for seg in self.schedule],
            },
            indent=indent,
        )


@dataclass
class CheckResult:
    name: str
    passed: bool
    margin: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "margin": self.margin,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(
            {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]},
            indent=indent,
        )


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _subsets(ids: Iterable[int], size: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(sorted(ids), size))


def _lbl(prefix: str, group: Iterable[int]) -> str:
    return f"{prefix}[{','.join(map(str, group))}]"


def _check_eps(eps: float) -> None:
    if not (eps > 0.0):
        raise InvalidParameter(f"rate backoff eps must be > 0, got {eps}")


def _check_gate(s: ChannelScenario) -> None:
    if s.delta_z <= s.delta_s:
        raise NotApplicable(
            "scheme needs delta_z > delta_s (weak-only secrecy regime)"
        )


def _check_rate(rate: float, what: str) -> None:
    if rate <= 0.0:
        raise InvalidParameter(
            f"{what} is nonpositive ({rate}); eps too large for this scenario"
        )


def _split_backoff(ra0: float, rb0: float, eps: float) -> tuple[float, float]:
    """Distribute the rate backoff over the two submessages.

    Each submessage with positive nominal rate gives up an equal share;
    a vanished submessage (degenerate scenario) contributes rate 0 and
    its share moves to the other one so the total stays eps.
    """
    if ra0 > 0.0 and rb0 > 0.0:
        ra, rb = ra0 - eps / 2, rb0 - eps / 2
    elif ra0 > 0.0:
        ra, rb = ra0 - eps, 0.0
    elif rb0 > 0.0:
        ra, rb = 0.0, rb0 - eps
    else:
        raise NotApplicable("both submessage rates vanish in this scenario")
    if ra0 > 0.0:
        _check_rate(ra, "first submessage rate")
    if rb0 > 0.0:
        _check_rate(rb, "second submessage rate")
    return ra, rb


def cache_usage(plan: SchemePlan, D: Optional[int] = None) -> dict[int, float]:
    """Cache occupancy per receiver (bits per channel use)."""
    if D is None:
        D = plan.params["D"]
    return {
        r: sum(a.cache_cost(D) for a in atoms)
        for r, atoms in plan.placement.items()
    }


def cache_usage_by_class(plan: SchemePlan, s: ChannelScenario) -> CacheSizes:
    """Worst-case occupancy over each receiver class."""
    per = cache_usage(plan, s.D)
    mw = max((per.get(r, 0.0) for r in s.weak_ids), default=0.0)
    ms = max((per.get(r, 0.0) for r in s.strong_ids), default=0.0)
    return CacheSizes(mw, ms)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_wiretap_cached_keys(s: ChannelScenario, eps: float) -> SchemePlan:
    """One-time-pad keys at weak receivers; wiretap code to strong ones.

    The delivery splits into K_w weak slots carrying padded messages and
    K_s strong wiretap slots; the split parameter equalises the two
    decoding constraints.
    """
    validate_scenario(s)
    _check_gate(s)
    _check_eps(eps)
    if s.K_w < 1:
        raise NotApplicable("needs at least one weak receiver")
    dw, ds, dz = s.delta_w, s.delta_s, s.delta_z
    den = s.K_w * (dz - ds) + s.K_s * (1 - dw)
    beta = s.K_w * (dz - ds) / den
    R = (dz - ds) * (1 - dw) / den - eps
    _check_rate(R, "message rate")
    R_key = min(beta * (1 - dz) / s.K_w, R)

    placement = {i: (Atom("key", _lbl("K", [i]), R_key, per_file=False),)
                 for i in s.weak_ids}
    key_rates = {_lbl("K", [i]): R_key for i in s.weak_ids}

    segments = []
    lam_w = beta / s.K_w
    for i in s.weak_ids:
        unit = DeliveryUnit(
            parts=((i, "full"),),
            part_rates=(R,),
            pad_keys=(_lbl("K", [i]),),
            intended=frozenset({i}),
            decode_load={i: R},
        )
        segments.append(DeliverySegment((1, i), lam_w, (unit,)))
    if s.K_s > 0:
        lam_s = (1 - beta) / s.K_s
        for j in s.strong_ids:
            bin_rate = lam_s * (1 - dz)
            unit = DeliveryUnit(
                parts=((j, "full"),),
                part_rates=(R,),
                bin_rate=bin_rate,
                intended=frozenset({j}),
                decode_load={j: R + bin_rate},
            )
            segments.append(DeliverySegment((2, j), lam_s, (unit,)))

    return SchemePlan(
        scheme_name="wiretap-cached-keys",
        params={"eps": eps, "D": s.D},
        placement=placement,
        schedule=tuple(segments),
        claimed_point=RateMemoryPoint(R, R_key, 0.0, "cached-keys"),
        key_rates=key_rates,
        message_parts={k: (("full", R),) for k in range(1, s.K + 1)},
    )


def build_superposition_jamming(s: ChannelScenario, eps: float) -> SchemePlan:
    """Cloud of padded weak messages jams the strong satellite layer.

    Erasure-equivalent representation: a cloud segment of fraction gamma
    and a satellite segment of fraction 1-gamma whose randomisation is
    the cloud keys plus explicit binning.  The satellite input bias p
    (binary entropy 1-gamma) is recorded in the parameters.
    """
    validate_scenario(s)
    _check_gate(s)
    _check_eps(eps)
    if s.K_w < 1 or s.K_s < 1:
        raise NotApplicable("needs K_w >= 1 and K_s >= 1")
    dw, ds, dz = s.delta_w, s.delta_s, s.delta_z
    g1_den = s.K_s * (1 - dw) + s.K_w * (dw - ds)
    g1 = s.K_w * (dz - ds) / g1_den if g1_den > 0 else float("inf")
    g2 = s.K_w * (1 - ds) / (s.K_s * (1 - dw) + s.K_w * (1 - ds))
    gamma = min(g1, g2)
    R = gamma * (1 - dw) / s.K_w - eps
    _check_rate(R, "message rate")
    R_key = min((1 - dz) / s.K_w, R)
    R_bin = pos((1 - dz) - gamma * (1 - dw))
    p = _binary_entropy_inverse(1.0 - gamma)

    key_labels = [_lbl("K", [i]) for i in s.weak_ids]
    placement = {
        i: (Atom("key", key_labels[idx], R_key, per_file=False),)
        for idx, i in enumerate(s.weak_ids)
    }
    key_rates = {lbl: R_key for lbl in key_labels}

    cloud_units = tuple(
        DeliveryUnit(
            parts=((i, "full"),),
            part_rates=(R,),
            pad_keys=(_lbl("K", [i]),),
            intended=frozenset({i}),
            decode_load={w: R for w in s.weak_ids},
        )
        for i in s.weak_ids
    )
    segments = [DeliverySegment((1, "cloud"), gamma, cloud_units)]
    if s.K_s > 0:
        sat_units = []
        for pos_j, j in enumerate(s.strong_ids):
            first = pos_j == 0
            load = R + (R_bin if first else 0.0)
            sat_units.append(
                DeliveryUnit(
                    parts=((j, "full"),),
                    part_rates=(R,),
                    jam_keys=tuple(key_labels) if first else (),
                    bin_rate=R_bin if first else 0.0,
                    intended=frozenset({j}),
                    decode_load={jj: load for jj in s.strong_ids},
                )
            )
        segments.append(
            DeliverySegment((2, "satellite"), 1 - gamma, tuple(sat_units))
        )

    return SchemePlan(
        scheme_name="superposition-jamming",
        params={"eps": eps, "D": s.D, "gamma": gamma, "satellite_bias": p},
        placement=placement,
        schedule=tuple(segments),
        claimed_point=RateMemoryPoint(R, R_key, 0.0, "superposition-jamming"),
        key_rates=key_rates,
        message_parts={k: (("full", R),) for k in range(1, s.K + 1)},
    )


def _binary_entropy_inverse(h: float) -> float:
    """p in [0, 1/2] with -p log2 p - (1-p) log2 (1-p) = h, by bisection."""
    from math import log2

    if not (0.0 <= h <= 1.0):
        raise InvalidParameter(f"entropy value must lie in [0,1], got {h}")
    if h == 0.0:
        return 0.0
    if h == 1.0:
        return 0.5

    def hb(p: float) -> float:
        return -p * log2(p) - (1 - p) * log2(1 - p)

    lo, hi = 0.0, 0.5
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if hb(mid) < h:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-10:
            break
    return 0.5 * (lo + hi)


def build_piggyback_one(s: ChannelScenario, t: int, eps: float) -> SchemePlan:
    """Joint cache-channel scheme storing data and keys at weak receivers.

    Three subphases: secured XORs of cached-data complements to weak
    receivers, per-subset piggyback periods (weak receivers decode rows
    against cached columns, strong receivers decode everything), and a
    wiretap phase for the strong receivers' remaining parts.
    """
    validate_scenario(s)
    _check_gate(s)
    _check_eps(eps)
    if s.K_w < 2 or not (1 <= t <= s.K_w - 1):
        raise IndexOutOfRange(
            f"t={t} outside 1..{s.K_w - 1} (needs K_w >= 2)"
        )
    if s.K_s < 1:
        raise NotApplicable("needs K_s >= 1")
    dw, ds, dz = s.delta_w, s.delta_s, s.delta_z
    Kw, Ks, D = s.K_w, s.K_s, s.D
    md = min(dw - ds, dz - ds)
    mzw = min(1 - dz, 1 - dw)
    den = (Kw - t + 1) * (dz - ds) * (
        Ks * (t + 1) * (1 - dw) + (Kw - t) * md
    ) + Ks**2 * t * (t + 1) * (1 - dw) ** 2
    beta1 = (Kw - t) * (Kw - t + 1) * (dz - ds) * md / den
    beta2 = Ks * (Kw - t + 1) * (t + 1) * (1 - dw) * (dz - ds) / den
    beta3 = Ks**2 * t * (t + 1) * (1 - dw) ** 2 / den
    RA, RB = _split_backoff(
        Ks * t * (t + 1) * (1 - dw) ** 2 * (dz - ds) / den,
        (Kw - t + 1) * (t + 1) * (1 - dw) * (dz - ds) * md / den,
        eps,
    )
    rA = RA / comb(Kw, t - 1)
    rB = RB / comb(Kw, t)
    RK1 = beta1 * mzw / comb(Kw, t + 1)
    RK2 = beta2 * mzw / comb(Kw, t)
    Rbin = beta2 * min(pos(dw - dz), dw - ds) / comb(Kw, t)

    weak = list(s.weak_ids)
    strong = list(s.strong_ids)
    a_subsets = _subsets(weak, t - 1)
    b_subsets = _subsets(weak, t)
    k_subsets = _subsets(weak, t + 1)

    key_rates: dict[str, float] = {}
    placement: dict[int, tuple[Atom, ...]] = {}
    for i in weak:
        atoms = [Atom("file_part", _lbl("A", P), rA) for P in a_subsets if i in P]
        if rB > 0:
            atoms += [
                Atom("file_part", _lbl("B", G), rB) for G in b_subsets if i in G
            ]
        for H in k_subsets:
            if i in H:
                atoms.append(Atom("key", _lbl("K1", H), RK1, per_file=False))
        for G in b_subsets:
            if i in G:
                atoms.append(Atom("key", _lbl("K2", G), RK2, per_file=False))
        placement[i] = tuple(atoms)
    for H in k_subsets:
        key_rates[_lbl("K1", H)] = RK1
    for G in b_subsets:
        key_rates[_lbl("K2", G)] = RK2

    segments = []
    if beta1 > 0 and rB > 0:
        units = tuple(
            DeliveryUnit(
                parts=tuple((i, _lbl("B", tuple(x for x in H if x != i))) for i in H),
                part_rates=(rB,) * len(H),
                pad_keys=(_lbl("K1", H),),
                intended=frozenset(H),
                decode_load={i: rB for i in weak},
            )
            for H in k_subsets
        )
        segments.append(DeliverySegment((1, 0), beta1, units))
    if beta2 > 0:
        lam2 = beta2 / comb(Kw, t)
        for G in b_subsets:
            row = DeliveryUnit(
                parts=tuple((i, _lbl("A", tuple(x for x in G if x != i))) for i in G),
                part_rates=(rA,) * len(G),
                pad_keys=(_lbl("K2", G),),
                bin_rate=Rbin,
                intended=frozenset(G) | frozenset(strong),
                decode_load={i: rA for i in G} | {j: rA + Rbin for j in strong},
                context={i: (_lbl("B", G),) for i in G} if rB > 0 else {},
            )
            cols = tuple(
                DeliveryUnit(
                    parts=((j, _lbl("B", G)),),
                    part_rates=(rB,),
                    intended=frozenset({j}),
                    decode_load={jj: rB for jj in strong},
                )
                for j in strong
                if rB > 0
            )
            segments.append(DeliverySegment((2, G), lam2, (row,) + cols))
    if beta3 > 0:
        lam3 = beta3 / Ks
        for j in strong:
            bin_rate = lam3 * (1 - dz)
            unit = DeliveryUnit(
                parts=tuple((j, _lbl("A", P)) for P in a_subsets),
                part_rates=(rA,) * len(a_subsets),
                combine="concat",
                bin_rate=bin_rate,
                intended=frozenset({j}),
                decode_load={j: RA + bin_rate},
            )
            segments.append(DeliverySegment((3, j), lam3, (unit,)))

    mp = tuple((_lbl("A", P), rA) for P in a_subsets if rA > 0) + tuple(
        (_lbl("B", G), rB) for G in b_subsets if rB > 0
    )
    message_parts = {k: mp for k in range(1, s.K + 1)}

    M_w_claim = (
        D * ((t - 1) * RA + t * RB) / Kw
        + comb(Kw - 1, t) * RK1
        + comb(Kw - 1, t - 1) * RK2
    )
    return SchemePlan(
        scheme_name="piggyback-one",
        params={"t": t, "eps": eps, "D": D},
        placement=placement,
        schedule=tuple(segments),
        claimed_point=RateMemoryPoint(
            RA + RB, M_w_claim, 0.0, f"piggyback-one[t={t}]"
        ),
        key_rates=key_rates,
        message_parts=message_parts,
    )


def build_piggyback_two(s: ChannelScenario, eps: float) -> SchemePlan:
    """Whole second halves of every file cached at weak receivers.

    One piggyback phase carries padded first halves to weak receivers
    (rows) and second halves to strong receivers (columns); the pads also
    jam the columns.  A wiretap phase delivers the strong receivers'
    first halves.
    """
    validate_scenario(s)
    _check_gate(s)
    _check_eps(eps)
    if s.K_w < 1 or s.K_s < 1:
        raise NotApplicable("needs K_w >= 1 and K_s >= 1")
    dw, ds, dz = s.delta_w, s.delta_s, s.delta_z
    Kw, Ks, D = s.K_w, s.K_s, s.D
    m = min(1 - dz, 1 - dw)
    den = Ks * m + Kw * (dz - ds)
    beta = Kw * (dz - ds) / den
    RA0 = (dz - ds) * m / den
    RB0 = Kw * (dz - ds) ** 2 / (Ks * den)
    RA, RB = _split_backoff(RA0, RB0, eps)
    # Key rate stays at the nominal first-half rate so that cache usage
    # lands exactly on the corner identity M = D R_B + R_key.
    R_key = RA0

    key_labels = {i: _lbl("K", [i]) for i in s.weak_ids}
    placement = {
        i: (
            Atom("file_part", "B", RB),
            Atom("key", key_labels[i], R_key, per_file=False),
        )
        for i in s.weak_ids
    }
    key_rates = {key_labels[i]: R_key for i in s.weak_ids}

    rows = tuple(
        DeliveryUnit(
            parts=((i, "A"),),
            part_rates=(RA,),
            pad_keys=(key_labels[i],),
            intended=frozenset({i}),
            decode_load={w: RA for w in s.weak_ids}
            | {j: RA for j in s.strong_ids},
            context={w: ("B",) for w in s.weak_ids},
        )
        for i in s.weak_ids
        if RA > 0
    )
    cols = tuple(
        DeliveryUnit(
            parts=((j, "B"),),
            part_rates=(RB,),
            intended=frozenset({j}),
            decode_load={jj: RB for jj in s.strong_ids},
        )
        for j in s.strong_ids
        if RB > 0
    )
    segments = [DeliverySegment((1, "pg"), beta, rows + cols)]
    if RA > 0:
        lam2 = (1 - beta) / Ks
        for j in s.strong_ids:
            bin_rate = lam2 * (1 - dz)
            segments.append(
                DeliverySegment(
                    (2, j),
                    lam2,
                    (
                        DeliveryUnit(
                            parts=((j, "A"),),
                            part_rates=(RA,),
                            bin_rate=bin_rate,
                            intended=frozenset({j}),
                            decode_load={j: RA + bin_rate},
                        ),
                    ),
                )
            )

    message_parts = {
        k: tuple(p for p in (("A", RA), ("B", RB)) if p[1] > 0)
        for k in range(1, s.K + 1)
    }
    return SchemePlan(
        scheme_name="piggyback-two",
        params={"eps": eps, "D": D},
        placement=placement,
        schedule=tuple(segments),
        claimed_point=RateMemoryPoint(
            RA + RB, D * RB + R_key, 0.0, "piggyback-two"
        ),
        key_rates=key_rates,
        message_parts=message_parts,
    )


def build_cached_keys_all(s: ChannelScenario, eps: float) -> SchemePlan:
    """One-time-pad keys at every receiver; works for any eavesdropper."""
    validate_scenario(s)
    _check_eps(eps)
    dw, ds, dz = s.delta_w, s.delta_s, s.delta_z
    den = s.K_w * (1 - ds) + s.K_s * (1 - dw)
    if den <= 0:
        raise NotApplicable("all channels fully erased")
    beta = s.K_w * (1 - ds) / den
    R = (1 - dw) * (1 - ds) / den - eps
    _check_rate(R, "message rate")
    RKw = beta * min(1 - dz, 1 - dw) / s.K_w if s.K_w else 0.0
    RKs = (1 - beta) * min(1 - dz, 1 - ds) / s.K_s if s.K_s else 0.0

    placement = {}
    key_rates = {}
    segments = []
    for i in s.weak_ids:
        lbl = _lbl("K", [i])
        placement[i] = (Atom("key", lbl, RKw, per_file=False),)
        key_rates[lbl] = RKw
        unit = DeliveryUnit(
            parts=((i, "full"),),
            part_rates=(R,),
            pad_keys=(lbl,),
            intended=frozenset({i}),
            decode_load={i: R},
        )
        segments.append(DeliverySegment((1, i), beta / s.K_w, (unit,)))
    for j in s.strong_ids:
        lbl = _lbl("K", [j])
        placement[j] = (Atom("key", lbl, RKs, per_file=False),)
        key_rates[lbl] = RKs
        unit = DeliveryUnit(
            parts=((j, "full"),),
            part_rates=(R,),
            pad_keys=(lbl,),
            intended=frozenset({j}),
            decode_load={j: R},
        )
        segments.append(DeliverySegment((2, j), (1 - beta) / s.K_s, (unit,)))

    return SchemePlan(
        scheme_name="cached-keys-all",
        params={"eps": eps, "D": s.D},
        placement=placement,
        schedule=tuple(segments),
        claimed_point=RateMemoryPoint(R, RKw, RKs, "all:cached-keys"),
        key_rates=key_rates,
        message_parts={k: (("full", R),) for k in range(1, s.K + 1)},
    )


def build_piggyback_allkeys(s: ChannelScenario, t: int, eps: float) -> SchemePlan:
    """Piggyback scheme with extra keys everywhere; no wiretap binning.

    Like :func:`build_piggyback_one` but the strong receivers' column
    messages and final phase are secured with dedicated keys stored in
    their caches (some of those keys are also context for the weak
    receivers' restricted decoding).
    """
    validate_scenario(s)
    _check_eps(eps)
    if s.K_w < 2 or not (1 <= t <= s.K_w - 1):
        raise IndexOutOfRange(f"t={t} outside 1..{s.K_w - 1} (needs K_w >= 2)")
    if s.K_s < 1:
        raise NotApplicable("needs K_s >= 1")
    dw, ds, dz = s.delta_w, s.delta_s, s.delta_z
    Kw, Ks, D = s.K_w, s.K_s, s.D
    mzw = min(1 - dz, 1 - dw)
    mzs = min(1 - dz, 1 - ds)
    den = (Kw - t + 1) * (1 - ds) * (
        (Kw - t) * (dw - ds) + Ks * (t + 1) * (1 - dw)
    ) + Ks**2 * t * (t + 1) * (1 - dw) ** 2
    beta1 = (Kw - t + 1) * (Kw - t) * (1 - ds) * (dw - ds) / den
    beta2 = Ks * (Kw - t + 1) * (t + 1) * (1 - dw) * (1 - ds) / den
    beta3 = Ks**2 * t * (t + 1) * (1 - dw) ** 2 / den
    RA, RB = _split_backoff(
        Ks * t * (t + 1) * (1 - dw) ** 2 * (1 - ds) / den,
        (Kw - t + 1) * (t + 1) * (1 - dw) * (1 - ds) * (dw - ds) / den,
        eps,
    )
    rA = RA / comb(Kw, t - 1)
    rB = RB / comb(Kw, t)
    RK1 = beta1 * mzw / comb(Kw, t + 1)
    RK2 = beta2 * mzw / comb(Kw, t)
    RK3 = beta2 * min(pos(dw - dz), dw - ds) / (Ks * comb(Kw, t))
    RK4 = beta3 * mzs / Ks

    weak = list(s.weak_ids)
    strong = list(s.strong_ids)
    a_subsets = _subsets(weak, t - 1)
    b_subsets = _subsets(weak, t)
    k_subsets = _subsets(weak, t + 1)

    key_rates: dict[str, float] = {}
    for H in k_subsets:
        key_rates[_lbl("K1", H)] = RK1
    for G in b_subsets:
        key_rates[_lbl("K2", G)] = RK2
        for j in strong:
            key_rates[_lbl("K3", (j,) + G)] = RK3
    for j in strong:
        key_rates[_lbl("K4", [j])] = RK4

    placement: dict[int, tuple[Atom, ...]] = {}
    for i in weak:
        atoms = [Atom("file_part", _lbl("A", P), rA) for P in a_subsets if i in P]
        if rB > 0:
            atoms += [
                Atom("file_part", _lbl("B", G), rB) for G in b_subsets if i in G
            ]
        atoms += [
            Atom("key", _lbl("K1", H), RK1, per_file=False)
            for H in k_subsets
            if i in H
        ]
        for G in b_subsets:
            if i in G:
                atoms.append(Atom("key", _lbl("K2", G), RK2, per_file=False))
                atoms += [
                    Atom("key", _lbl("K3", (j,) + G), RK3, per_file=False)
                    for j in strong
                ]
        placement[i] = tuple(atoms)
    for j in strong:
        atoms = [Atom("key", _lbl("K4", [j]), RK4, per_file=False)]
        atoms += [
            Atom("key", _lbl("K3", (j,) + G), RK3, per_file=False)
            for G in b_subsets
        ]
        placement[j] = tuple(atoms)

    segments = []
    if beta1 > 0 and rB > 0:
        units = tuple(
            DeliveryUnit(
                parts=tuple((i, _lbl("B", tuple(x for x in H if x != i))) for i in H),
                part_rates=(rB,) * len(H),
                pad_keys=(_lbl("K1", H),),
                intended=frozenset(H),
                decode_load={i: rB for i in weak},
            )
            for H in k_subsets
        )
        segments.append(DeliverySegment((1, 0), beta1, units))
    lam2 = beta2 / comb(Kw, t)
    for G in b_subsets:
        row = DeliveryUnit(
            parts=tuple((i, _lbl("A", tuple(x for x in G if x != i))) for i in G),
            part_rates=(rA,) * len(G),
            pad_keys=(_lbl("K2", G),),
            intended=frozenset(G) | frozenset(strong),
            decode_load={i: rA for i in G} | {j: rA for j in strong},
            context={
                i: ((_lbl("B", G),) if rB > 0 else ())
                + tuple(_lbl("K3", (j,) + G) for j in strong)
                for i in G
            },
        )
        cols = tuple(
            DeliveryUnit(
                parts=((j, _lbl("B", G)),),
                part_rates=(rB,),
                pad_keys=(_lbl("K3", (j,) + G),),
                intended=frozenset({j}),
                decode_load={jj: rB for jj in strong},
            )
            for j in strong
            if rB > 0
        )
        segments.append(DeliverySegment((2, G), lam2, (row,) + cols))
    lam3 = beta3 / Ks
    for j in strong:
        unit = DeliveryUnit(
            parts=tuple((j, _lbl("A", P)) for P in a_subsets),
            part_rates=(rA,) * len(a_subsets),
            combine="concat",
            pad_keys=(_lbl("K4", [j]),),
            intended=frozenset({j}),
            decode_load={j: RA},
        )
        segments.append(DeliverySegment((3, j), lam3, (unit,)))

    mp = tuple((_lbl("A", P), rA) for P in a_subsets if rA > 0) + tuple(
        (_lbl("B", G), rB) for G in b_subsets if rB > 0
    )
    message_parts = {k: mp for k in range(1, s.K + 1)}

    M_w_claim = (
        D * ((t - 1) * RA + t * RB) / Kw
        + comb(Kw - 1, t) * RK1
        + comb(Kw - 1, t - 1) * RK2
        + comb(Kw - 1, t - 1) * Ks * RK3
    )
    M_s_claim = RK4 + comb(Kw, t) * RK3
    return SchemePlan(
        scheme_name="piggyback-allkeys",
        params={"t": t, "eps": eps, "D": D},
        placement=placement,
        schedule=tuple(segments),
        claimed_point=RateMemoryPoint(
            RA + RB, M_w_claim, M_s_claim, f"all:piggyback-keys[t={t}]"
        ),
        key_rates=key_rates,
        message_parts=message_parts,
    )


def build_symmetric_piggyback(
    s: ChannelScenario, t_w: int, t_s: int, eps: float
) -> SchemePlan:
    """Coded-caching placement inside each class, pairwise piggyback across.

    Subphase 1 serves weak receivers with secured XORs over (t_w+1)-sets,
    subphase 3 mirrors it for strong receivers over (t_s+1)-sets, and
    subphase 2 runs one two-receiver piggyback period per (weak, strong)
    pair, fully key-secured.
    """
    validate_scenario(s)
    _check_eps(eps)
    if s.K_w < 1 or not (1 <= t_w <= s.K_w):
        raise IndexOutOfRange(f"t_w={t_w} outside 1..{s.K_w}")
    if s.K_s < 1 or not (1 <= t_s <= s.K_s):
        raise IndexOutOfRange(f"t_s={t_s} outside 1..{s.K_s}")
    dw, ds, dz = s.delta_w, s.delta_s, s.delta_z
    Kw, Ks, D = s.K_w, s.K_s, s.D
    mzw = min(1 - dz, 1 - dw)
    mzs = min(1 - dz, 1 - ds)
    den = Kw * (Kw - t_w) * (t_s + 1) * (1 - ds) ** 2 + Ks * (t_w + 1) * (
        1 - dw
    ) * ((Ks - t_s) * (1 - dw) + Kw * (t_s + 1) * (1 - ds))
    beta1 = Kw * (Kw - t_w) * (t_s + 1) * (1 - ds) ** 2 / den
    beta2 = Kw * Ks * (t_w + 1) * (t_s + 1) * (1 - dw) * (1 - ds) / den
    beta3 = Ks * (Ks - t_s) * (t_w + 1) * (1 - dw) ** 2 / den
    RA, RB = _split_backoff(
        Kw * (t_w + 1) * (t_s + 1) * (1 - dw) * (1 - ds) ** 2 / den,
        Ks * (t_w + 1) * (t_s + 1) * (1 - dw) ** 2 * (1 - ds) / den,
        eps,
    )
    a = RA / comb(Kw, t_w)      # subset part, weak side
    ar = RA / Kw                # receiver part, strong deliveries
    b = RB / comb(Ks, t_s)      # subset part, strong side
    br = RB / Ks                # receiver part, weak deliveries
    RK1 = beta1 * mzw / comb(Kw, t_w + 1) if t_w < Kw else 0.0
    RK2 = beta3 * mzs / comb(Ks, t_s + 1) if t_s < Ks else 0.0
    RK3 = beta2 * mzw / (Kw * Ks)
    RK4 = beta2 * min(pos(dw - dz), 1 - ds) / (Kw * Ks)

    weak = list(s.weak_ids)
    strong = list(s.strong_ids)
    aw_subsets = _subsets(weak, t_w)
    aw_plus = _subsets(weak, t_w + 1)
    bs_subsets = _subsets(strong, t_s)
    bs_plus = _subsets(strong, t_s + 1)

    key_rates: dict[str, float] = {}
    for H in aw_plus:
        key_rates[_lbl("Kw1", H)] = RK1
    for Hs in bs_plus:
        key_rates[_lbl("Ks1", Hs)] = RK2
    for i in weak:
        for j in strong:
            key_rates[_lbl("Kw", (i, j))] = RK3
            key_rates[_lbl("Ks", (i, j))] = RK4

    placement: dict[int, tuple[Atom, ...]] = {}
    virtual: dict[int, frozenset] = {}
    for i in weak:
        atoms = [Atom("file_part", _lbl("A", G), a) for G in aw_subsets if i in G]
        atoms += [
            Atom("key", _lbl("Kw1", H), RK1, per_file=False)
            for H in aw_plus
            if i in H
        ]
        for j in strong:
            atoms.append(Atom("key", _lbl("Kw", (i, j)), RK3, per_file=False))
            atoms.append(Atom("key", _lbl("Ks", (i, j)), RK4, per_file=False))
        placement[i] = tuple(atoms)
        # the receiver-indexed slice Ar[i] sits inside the cached A-subsets
        virtual[i] = frozenset({_lbl("Ar", [i])})
    for j in strong:
        atoms = [Atom("file_part", _lbl("B", Gs), b) for Gs in bs_subsets if j in Gs]
        atoms += [
            Atom("key", _lbl("Ks1", Hs), RK2, per_file=False)
            for Hs in bs_plus
            if j in Hs
        ]
        for i in weak:
            atoms.append(Atom("key", _lbl("Kw", (i, j)), RK3, per_file=False))
            atoms.append(Atom("key", _lbl("Ks", (i, j)), RK4, per_file=False))
        placement[j] = tuple(atoms)
        virtual[j] = frozenset({_lbl("Br", [j])})

    segments = []
    if beta1 > 0:
        lam1 = beta1 / comb(Kw, t_w + 1)
        for H in aw_plus:
            unit = DeliveryUnit(
                parts=tuple((i, _lbl("A", tuple(x for x in H if x != i))) for i in H),
                part_rates=(a,) * len(H),
                pad_keys=(_lbl("Kw1", H),),
                intended=frozenset(H),
                decode_load={i: a for i in H},
            )
            segments.append(DeliverySegment((1, H), lam1, (unit,)))
    lam2 = beta2 / (Kw * Ks)
    for i in weak:
        for j in strong:
            row = DeliveryUnit(
                parts=((i, _lbl("Br", [j])),),
                part_rates=(br,),
                pad_keys=(_lbl("Kw", (i, j)),),
                intended=frozenset({i}),
                decode_load={i: br},
                context={i: (_lbl("Ks", (i, j)), _lbl("Ar", [i]))},
            )
            col = DeliveryUnit(
                parts=((j, _lbl("Ar", [i])),),
                part_rates=(ar,),
                pad_keys=(_lbl("Ks", (i, j)),),
                intended=frozenset({j}),
                decode_load={j: ar},
                context={j: (_lbl("Kw", (i, j)), _lbl("Br", [j]))},
            )
            segments.append(DeliverySegment((2, (i, j)), lam2, (row, col)))
    if beta3 > 0:
        lam3 = beta3 / comb(Ks, t_s + 1)
        for Hs in bs_plus:
            unit = DeliveryUnit(
                parts=tuple(
                    (j, _lbl("B", tuple(x for x in Hs if x != j))) for j in Hs
                ),
                part_rates=(b,) * len(Hs),
                pad_keys=(_lbl("Ks1", Hs),),
                intended=frozenset(Hs),
                decode_load={j: b for j in Hs},
            )
            segments.append(DeliverySegment((3, Hs), lam3, (unit,)))

    mp_weak = tuple((_lbl("A", G), a) for G in aw_subsets) + tuple(
        (_lbl("Br", [j]), br) for j in strong
    )
    mp_strong = tuple((_lbl("Ar", [i]), ar) for i in weak) + tuple(
        (_lbl("B", Gs), b) for Gs in bs_subsets
    )
    message_parts = {i: mp_weak for i in weak}
    message_parts |= {j: mp_strong for j in strong}

    M_w_claim = (
        D * t_w * RA / Kw
        + (t_w + 1) * beta1 * mzw / Kw
        + beta2 * min(1 - dz, 2 - dw - ds) / Kw
    )
    M_s_claim = (
        D * t_s * RB / Ks
        + (t_s + 1) * beta3 * mzs / Ks
        + beta2 * min(1 - dz, 2 - dw - ds) / Ks
    )
    return SchemePlan(
        scheme_name="symmetric-piggyback",
        params={"t_w": t_w, "t_s": t_s, "eps": eps, "D": D},
        placement=placement,
        schedule=tuple(segments),
        claimed_point=RateMemoryPoint(
            RA + RB, M_w_claim, M_s_claim, f"all:pair[tw={t_w},ts={t_s}]"
        ),
        key_rates=key_rates,
        message_parts=message_parts,
        virtual_cached=virtual,
    )


BUILDERS = {
    "wiretap-cached-keys": build_wiretap_cached_keys,
    "superposition-jamming": build_superposition_jamming,
    "piggyback-one": build_piggyback_one,
    "piggyback-two": build_piggyback_two,
    "cached-keys-all": build_cached_keys_all,
    "piggyback-allkeys": build_piggyback_allkeys,
    "symmetric-piggyback": build_symmetric_piggyback,
}


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _demand_vectors(s: ChannelScenario, seed: int = 20240611, extra: int = 1000):
    """Demand coverage: exhaustive when D^K is small, else the distinct
    stress demand plus a seeded random sample."""
    import random

    if s.D**s.K <= 10**6:
        yield from itertools.product(range(1, s.D + 1), repeat=s.K)
        return
    yield tuple(range(1, s.K + 1))  # distinct-demand worst case
    rng = random.Random(seed)
    for _ in range(extra):
        yield tuple(rng.randint(1, s.D) for _ in range(s.K))


def _recoverable(plan: SchemePlan, receiver: int) -> dict[str, float]:
    """Labels receiver can peel from the schedule, assuming successful
    channel decoding (demand-independent: placement is per-file)."""
    cached = plan.cached_labels(receiver)
    virtual = plan.virtual_cached.get(receiver, frozenset())
    have = cached | virtual
    out: dict[str, float] = {}
    for seg in plan.schedule:
        for unit in seg.units:
            if unit.decode_load.get(receiver, 0.0) <= 0.0:
                continue
            if any(k not in cached for k in unit.pad_keys):
                continue
            if any(c not in have for c in unit.context.get(receiver, ())):
                continue
            for idx, (slot, label) in enumerate(unit.parts):
                if slot != receiver:
                    continue
                if unit.combine == "xor":
                    others = [
                        lb for sl, lb in unit.parts if (sl, lb) != (slot, label)
                    ]
                    if any(lb not in have for lb in others):
                        continue
                out[label] = unit.part_rates[idx]
    return out


def verify_plan(plan: SchemePlan, s: ChannelScenario) -> VerificationReport:
    """Run the four plan checks; never raises, reports margins.

    RATE     every segment/receiver decode load strictly below capacity
    DECODE   cache + peeled deliveries tile each demanded message, for
             every demand vector in the coverage policy
    SECRECY  per segment, keys + bins cover min(payload, eavesdropper
             capacity) up to 1e-12
    CACHE    per-receiver occupancy within the claimed memory + 1e-12
    """
    validate_scenario(s)
    checks: list[CheckResult] = []

    # RATE
    rate_margin = float("inf")
    rate_detail = ""
    frac_sum = 0.0
    for seg in plan.schedule:
        frac_sum += seg.fraction
        loads: dict[int, float] = {}
        for unit in seg.units:
            for r, load in unit.decode_load.items():
                loads[r] = loads.get(r, 0.0) + load
        for r, load in loads.items():
            capacity = seg.fraction * (1.0 - s.erasure_of(r))
            margin = capacity - load
            if margin < rate_margin:
                rate_margin = margin
                rate_detail = (
                    f"segment {seg.id}, receiver {r}: load {load:.6g} vs "
                    f"capacity {capacity:.6g}"
                )
    frac_ok = abs(frac_sum - 1.0) <= 1e-12
    checks.append(
        CheckResult(
            "RATE",
            rate_margin > 0.0 and frac_ok,
            rate_margin,
            rate_detail if frac_ok else f"fractions sum to {frac_sum}",
        )
    )

    # DECODE
    decode_ok = True
    decode_detail = ""
    recov = {r: _recoverable(plan, r) for r in range(1, s.K + 1)}
    for r in range(1, s.K + 1):
        have = plan.cached_labels(r) | plan.virtual_cached.get(r, frozenset())
        total = 0.0
        for label, rate in plan.message_parts.get(r, ()):
            if label in have or label in recov[r]:
                total += rate
            else:
                decode_ok = False
                decode_detail = f"receiver {r} cannot obtain part {label!r}"
                break
        if not decode_ok:
            break
        if abs(total - plan.claimed_point.R) > RATE_TOL:
            decode_ok = False
            decode_detail = (
                f"receiver {r} reassembles rate {total!r}, "
                f"claimed {plan.claimed_point.R!r}"
            )
            break
    if decode_ok:
        # demand sweep: within any XOR the (message, label) pairs must stay
        # distinct, else contributions merge.  Units whose part labels are
        # pairwise distinct can never collide for any demand, so only the
        # remaining ones need the per-demand scan.
        risky = []
        for seg in plan.schedule:
            for unit in seg.units:
                if unit.combine != "xor" or len(unit.parts) < 2:
                    continue
                labels = [label for _, label in unit.parts]
                if len(set(labels)) != len(labels):
                    risky.append((seg.id, unit))
        if risky:
            for d in _demand_vectors(s):
                for seg_id, unit in risky:
                    seen = {(d[slot - 1], label) for slot, label in unit.parts}
                    if len(seen) != len(unit.parts):
                        decode_ok = False
                        decode_detail = (
                            f"demand {d}: merged contributions in segment "
                            f"{seg_id}"
                        )
                        break
                if not decode_ok:
                    break
    checks.append(CheckResult("DECODE", decode_ok, 0.0, decode_detail))

    # SECRECY
    sec_margin = float("inf")
    sec_detail = ""
    for seg in plan.schedule:
        payload = 0.0
        securing = 0.0
        for unit in seg.units:
            payload += unit.payload_rate
            securing += unit.bin_rate
            for k in unit.pad_keys + unit.jam_keys:
                securing += plan.key_rates[k]
        required = min(payload, seg.fraction * (1.0 - s.delta_z))
        margin = securing - required
        if margin < sec_margin:
            sec_margin = margin
            sec_detail = (
                f"segment {seg.id}: securing {securing:.6g} vs required "
                f"{required:.6g}"
            )
    checks.append(
        CheckResult("SECRECY", sec_margin >= -RATE_TOL, sec_margin, sec_detail)
    )

    # CACHE
    usage = cache_usage(plan, s.D)
    cache_margin = float("inf")
    cache_detail = ""
    for r in range(1, s.K + 1):
        claim = (
            plan.claimed_point.M_w if r <= s.K_w else plan.claimed_point.M_s
        )
        margin = claim - usage.get(r, 0.0)
        if margin < cache_margin:
            cache_margin = margin
            cache_detail = (
                f"receiver {r}: usage {usage.get(r, 0.0):.6g} vs claimed "
                f"{claim:.6g}"
            )
    checks.append(
        CheckResult("CACHE", cache_margin >= -RATE_TOL, cache_margin, cache_detail)
    )
    return VerificationReport(checks)
