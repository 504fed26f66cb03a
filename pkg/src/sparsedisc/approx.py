"""Epsilon-approximations by iterated halving.

Each level colors the traced system with the constructive solver and
keeps one color class, rebalanced to exactly half (rounded up).  With the
full ground set adjoined as a member, the per-level charge
disc_used = achieved discrepancy + rebalancing moves makes the claimed
error (2/|U|) * sum_i 2^i * disc_used_i a sound upper bound on the exact
measured error; halving stops before the claim would exceed the target.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .discrepancy import beck_fiala, eval_discrepancy
from .setsystems import SetSystem, trace


@dataclass(frozen=True)
class LevelRecord:
    size: int  # |current| when the halving ran
    disc_used: int
    kept: tuple[int, ...]
    applied: bool  # False for the final attempted level that broke the budget

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "disc_used": self.disc_used,
            "kept": list(self.kept),
            "applied": self.applied,
        }


@dataclass(frozen=True)
class ApproximationReport:
    sample: tuple[int, ...]
    epsilon_claimed: Fraction
    epsilon_measured: Fraction
    levels: tuple[LevelRecord, ...]
    ground_adjoined: bool

    def __post_init__(self):
        assert self.sample, "sample must be non-empty"
        assert self.epsilon_measured <= self.epsilon_claimed

    def to_json(self) -> str:
        return json.dumps(
            {
                "sample": list(self.sample),
                "epsilon_claimed": _frac_str(self.epsilon_claimed),
                "epsilon_measured": _frac_str(self.epsilon_measured),
                "levels": [rec.to_dict() for rec in self.levels],
                "ground_adjoined": self.ground_adjoined,
            },
            separators=(",", ":"),
        )


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def halve(s: SetSystem, current: Iterable[int]) -> tuple[tuple[int, ...], int]:
    """One halving level; the caller must have the ground set as a member.

    Keeps the larger color class (tie: the class of the lowest-index
    element), then moves its lowest-index elements out until the kept size
    is exactly ceil(|current|/2).  disc_used charges those moves on top of
    the achieved discrepancy.
    """
    cur = sorted(set(current))
    if not cur:
        raise ValueError("cannot halve an empty subset")
    traced, mapping = trace(s, cur)
    chi = beck_fiala(traced)
    achieved, _ = eval_discrepancy(traced, chi)
    pos = [mapping[i] for i, v in enumerate(chi.values) if v == 1]
    neg = [mapping[i] for i, v in enumerate(chi.values) if v == -1]
    if len(pos) != len(neg):
        kept = pos if len(pos) > len(neg) else neg
    else:
        kept = pos if chi.values[0] == 1 else neg
    target = (len(cur) + 1) // 2
    moves = len(kept) - target
    assert moves >= 0
    return tuple(kept[moves:]), achieved + moves


def epsilon_approximation(s: SetSystem, eps: Fraction) -> ApproximationReport:
    """Largest halving chain whose claimed error stays within eps.

    The ground set is adjoined as a member when absent (and reported).
    The report carries the exact claimed and measured errors; the final
    attempted level that would have broken the budget is recorded too.
    """
    eps = Fraction(eps)
    if eps <= 0 or eps > 1:
        raise ValueError("eps must lie in (0, 1]")
    n = s.ground_size
    if n == 0:
        raise ValueError("cannot approximate an empty ground set")
    ground = tuple(range(n))
    adjoined = ground not in s.sets
    carrier = (
        SetSystem.from_sets(n, list(s.sets) + [ground]) if adjoined else s
    )
    current = ground
    levels: list[LevelRecord] = []
    weighted_sum = 0  # sum of 2^i * disc_used_i over applied levels
    while len(current) > 1:
        kept, used = halve(carrier, current)
        candidate = weighted_sum + 2 ** len(levels) * used
        applied = Fraction(2 * candidate, n) <= eps
        levels.append(LevelRecord(len(current), used, kept, applied))
        if not applied:
            break
        weighted_sum = candidate
        current = kept
    claimed = Fraction(2 * weighted_sum, n)
    measured = _measured_error(s, current)
    return ApproximationReport(current, claimed, measured, tuple(levels), adjoined)


def _measured_error(s: SetSystem, sample: tuple[int, ...]) -> Fraction:
    inside = set(sample)
    worst = Fraction(0)
    for st in s.sets:
        hit = sum(1 for v in st if v in inside)
        err = abs(Fraction(hit, len(sample)) - Fraction(len(st), s.ground_size))
        worst = max(worst, err)
    return worst


def verify_approximation(
    s: SetSystem, sample: Iterable[int], eps: Fraction
) -> tuple[bool, Optional[int], Fraction]:
    """Exact per-set check of ||A cap S|/|A| - |S|/|U|| <= eps."""
    sam = sorted(set(sample))
    if not sam:
        raise ValueError("sample must be non-empty")
    inside = set(sam)
    eps = Fraction(eps)
    worst: Fraction = Fraction(0)
    worst_set: Optional[int] = None
    for i, st in enumerate(s.sets):
        hit = sum(1 for v in st if v in inside)
        err = abs(Fraction(hit, len(sam)) - Fraction(len(st), s.ground_size))
        if err > worst:
            worst, worst_set = err, i
    return worst <= eps, worst_set, worst


def verify_net(s: SetSystem, sample: Iterable[int], eps: Fraction) -> bool:
    """True iff the sample meets every set of size at least eps * |U|."""
    inside = set(sample)
    eps = Fraction(eps)
    for st in s.sets:
        if Fraction(len(st)) >= eps * s.ground_size and not inside.intersection(st):
            return False
    return True
