"""Discrepancy evaluation and minimization.

The constructive solver follows the classical iterated-rounding proof:
keep fractional values, repeatedly move along an exact null vector of the
active-set constraint matrix, and freeze variables as they hit +-1.  A set
is active while it has more than t unfrozen elements (t = system degree),
so every set's color sum is exactly zero while it is active and can drift
by less than 2 per unfrozen element afterwards: the final discrepancy is
at most 2t - 1.  All arithmetic is over exact rationals; floating point
would break the strictness of that argument.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, sqrt
from typing import IO, Optional

import numpy as np

from .errors import ParseError, ResourceLimitError
from .rng import SplitMix64
from .setsystems import SetSystem, degree, trace

EXACT_MAX_GROUND = 24
SPECTRAL_WORK_CAP = 10**7
SPECTRAL_TOL = 1e-9  # power-iteration convergence tolerance
SPECTRAL_MAX_ITER = 10**4
SPECTRAL_GRANULARITY = 10**6  # results floored to 1e-6 so the bound stays sound


@dataclass(frozen=True)
class Coloring:
    values: tuple[int, ...]

    def __post_init__(self):
        for x in self.values:
            if x not in (-1, 1):
                raise ValueError("coloring entries must be -1 or +1")

    def negate(self) -> "Coloring":
        return Coloring(tuple(-x for x in self.values))


def eval_discrepancy(s: SetSystem, chi: Coloring) -> tuple[int, Optional[int]]:
    """Exact maximum |color sum| over the sets, with the first witness index."""
    if len(chi.values) != s.ground_size:
        raise ValueError("coloring length does not match ground size")
    best, witness = 0, None
    for i, st in enumerate(s.sets):
        d = abs(sum(chi.values[v] for v in st))
        if d > best:
            best, witness = d, i
    return best, witness


def _null_vector(rows: list[list[int]], ncols: int) -> list[Fraction]:
    """Canonical null vector of a wide 0/1 matrix: Gauss-Jordan over exact
    rationals, columns processed left to right; the first pivotless column
    yields its canonical basis vector."""
    work = [[Fraction(e) for e in row] for row in rows]
    used = [False] * len(work)
    pivots: list[tuple[int, int]] = []
    for j in range(ncols):
        sel = None
        for i in range(len(work)):
            if not used[i] and work[i][j]:
                sel = i
                break
        if sel is None:
            nu = [Fraction(0)] * ncols
            nu[j] = Fraction(1)
            for i, pc in pivots:
                nu[pc] = -work[i][j]
            return nu
        piv = work[sel][j]
        if piv != 1:
            work[sel] = [e / piv for e in work[sel]]
        srow = work[sel]
        for i in range(len(work)):
            if i != sel and work[i][j]:
                f = work[i][j]
                work[i] = [a - f * b for a, b in zip(work[i], srow)]
        used[sel] = True
        pivots.append((sel, j))
    raise AssertionError("wide matrix must have a free column")


def beck_fiala_with_stats(
    s: SetSystem, *, check_conservation: bool = False
) -> tuple[Coloring, int]:
    """Coloring with discrepancy at most 2*degree(s) - 1, plus the number
    of solver rounds performed."""
    n = s.ground_size
    t = degree(s)
    member: list[list[int]] = [[] for _ in range(n)]
    for i, st in enumerate(s.sets):
        for v in st:
            member[v].append(i)
    elems = [list(st) for st in s.sets]
    x = [Fraction(0)] * n
    frozen = [False] * n
    unfrozen_in = [len(st) for st in s.sets]
    n_unfrozen = n
    rounds = 0

    def freeze(v: int, value: Fraction) -> None:
        nonlocal n_unfrozen
        x[v] = value
        frozen[v] = True
        n_unfrozen -= 1
        for i in member[v]:
            unfrozen_in[i] -= 1

    for v in range(n):
        if not member[v]:
            freeze(v, Fraction(1))

    active = [i for i in range(len(elems)) if unfrozen_in[i] > t]
    while n_unfrozen:
        rounds += 1
        active = [i for i in active if unfrozen_in[i] > t]
        if check_conservation:
            for i in active:
                assert sum(x[v] for v in elems[i]) == 0
        covered = sorted({v for i in active for v in elems[i] if not frozen[v]})
        covered_set = set(covered)
        stray = [v for v in range(n) if not frozen[v] and v not in covered_set]
        for v in stray:
            # in no active set: its canonical basis vector is a null vector,
            # and the positive max step lands on the nearest endpoint
            freeze(v, Fraction(1) if x[v] >= 0 else Fraction(-1))
        if not covered:
            break
        r = len(active)
        cols = covered[: r + 1]
        in_cols = {v: j for j, v in enumerate(cols)}
        rows = []
        for i in active:
            row = [0] * len(cols)
            for v in elems[i]:
                j = in_cols.get(v)
                if j is not None and not frozen[v]:
                    row[j] = 1
            rows.append(row)
        nu = _null_vector(rows, len(cols))
        lam = None
        for j, v in enumerate(cols):
            if nu[j] > 0:
                step = (1 - x[v]) / nu[j]
            elif nu[j] < 0:
                step = (-1 - x[v]) / nu[j]
            else:
                continue
            if lam is None or step < lam:
                lam = step
        assert lam is not None and lam > 0
        hit = []
        for j, v in enumerate(cols):
            if nu[j]:
                x[v] += lam * nu[j]
                if abs(x[v]) == 1:
                    hit.append(v)
        assert hit, "the maximal step must freeze at least one variable"
        for v in hit:
            freeze(v, x[v])
    return Coloring(tuple(int(v) for v in x)), rounds


def beck_fiala(s: SetSystem, *, check_conservation: bool = False) -> Coloring:
    return beck_fiala_with_stats(s, check_conservation=check_conservation)[0]


def exact_discrepancy(
    s: SetSystem, max_ground: int = EXACT_MAX_GROUND
) -> tuple[int, Coloring]:
    """Exhaustive minimum discrepancy with one optimal coloring.

    Enumeration is depth-first in increasing binary code (+1 before -1)
    with chi(0) fixed to +1 by the global negation symmetry; a prefix is
    abandoned as soon as a fully assigned set reaches the incumbent.
    """
    n = s.ground_size
    if n > max_ground:
        raise ResourceLimitError(f"exact discrepancy capped at ground <= {max_ground}")
    if not s.sets:
        return 0, Coloring((1,) * n)
    m = len(s.sets)
    member: list[list[int]] = [[] for _ in range(n)]
    completing: list[list[int]] = [[] for _ in range(n)]
    for i, st in enumerate(s.sets):
        completing[st[-1]].append(i)
        for v in st:
            member[v].append(i)
    sums = [0] * m
    chi = [1] * n
    best = n + 1
    best_chi: Optional[tuple[int, ...]] = None

    def dfs(v: int, running: int) -> None:
        nonlocal best, best_chi
        if v == n:
            best, best_chi = running, tuple(chi)
            return
        for sign in ((1,) if v == 0 else (1, -1)):
            chi[v] = sign
            for i in member[v]:
                sums[i] += sign
            worst = running
            for i in completing[v]:
                a = abs(sums[i])
                if a > worst:
                    worst = a
            if worst < best:
                dfs(v + 1, worst)
            for i in member[v]:
                sums[i] -= sign
        chi[v] = 1

    dfs(0, 0)
    assert best_chi is not None
    return best, Coloring(best_chi)


def herdisc_search(
    s: SetSystem, budget: int = 4096, *, exact_cap: int = EXACT_MAX_GROUND
) -> tuple[int, tuple[int, ...]]:
    """Hereditary discrepancy by trace search.

    Exact when all 2^ground subsets fit in the budget; otherwise a
    certified lower bound from random subsets plus greedy single-element
    flips around the incumbent (deterministic, internal seed 0).
    """
    n = s.ground_size

    def disc_of(subset: tuple[int, ...]) -> int:
        traced, _ = trace(s, subset)
        return exact_discrepancy(traced, exact_cap)[0]

    if n <= 30 and 2**n <= budget:
        best, witness = 0, ()
        for mask in range(2**n):
            subset = tuple(v for v in range(n) if mask >> v & 1)
            val = disc_of(subset)
            if val > best:
                best, witness = val, subset
        return best, witness

    rng = SplitMix64(0)
    witness = tuple(range(n))
    best = disc_of(witness)
    evaluated = 1
    while evaluated < budget:
        sub = tuple(v for v in range(n) if rng.bernoulli(1, 2))
        val = disc_of(sub)
        evaluated += 1
        if val > best:
            best, witness = val, sub
        # greedy: try flipping single elements in and out of the incumbent
        improved = True
        while improved and evaluated < budget:
            improved = False
            ws = set(witness)
            for v in range(n):
                cand = tuple(sorted(ws ^ {v}))
                val = disc_of(cand)
                evaluated += 1
                if val > best:
                    best, witness = val, cand
                    improved = True
                    break
                if evaluated >= budget:
                    break
    return best, witness


def spectral_lower_bound(s: SetSystem) -> Fraction:
    """sigma_min(incidence) * sqrt(n/m), a certified lower bound on the
    discrepancy: for any x in {-1,1}^n, ||Ax||_inf >= ||Ax||_2 / sqrt(m)
    >= sigma_min * sqrt(n) / sqrt(m).

    The smallest singular value comes from shifted power iteration on
    A^T A (tolerance 1e-9, at most 1e4 iterations); the residual norm is
    subtracted and the result floored to 1e-6 granularity so the reported
    value never overstates the truth.
    """
    m, n = len(s.sets), s.ground_size
    if m == 0 or n == 0:
        return Fraction(0)
    if m * n > SPECTRAL_WORK_CAP:
        raise ResourceLimitError("incidence matrix over the spectral work cap")
    if m < n:
        return Fraction(0)  # rank < n forces sigma_min = 0
    a = np.zeros((m, n), dtype=np.float64)
    for i, st in enumerate(s.sets):
        a[i, list(st)] = 1.0
    b = a.T @ a
    shift = float(np.max(np.sum(np.abs(b), axis=1))) + 1.0
    c = shift * np.eye(n) - b
    v = np.ones(n) + np.arange(n) / (1000.0 * n)
    v /= np.linalg.norm(v)
    theta = 0.0
    for _ in range(SPECTRAL_MAX_ITER):
        w = c @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            break
        v_new = w / nw
        theta_new = float(v_new @ (c @ v_new))
        if abs(theta_new - theta) <= SPECTRAL_TOL * max(1.0, abs(theta_new)):
            theta = theta_new
            v = v_new
            break
        theta, v = theta_new, v_new
    residual = float(np.linalg.norm(c @ v - theta * v))
    lam_min = max(0.0, shift - theta - residual)
    value = sqrt(lam_min) * sqrt(n / m)
    # the 1e-3 grid-unit nudge (1e-9 in value units) only undoes float noise
    # from the residual subtraction; it cannot lift the floor past the truth
    return Fraction(floor(value * SPECTRAL_GRANULARITY + 1e-3), SPECTRAL_GRANULARITY)


def read_coloring(stream: IO[str], ground_size: int) -> Coloring:
    """One "index value" pair per line, value in {-1, 1}."""
    values = [0] * ground_size
    seen = [False] * ground_size
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            idx, val = int(parts[0]), int(parts[1])
        except (ValueError, IndexError):
            raise ParseError(f"malformed coloring line {lineno}") from None
        if not 0 <= idx < ground_size or val not in (-1, 1) or len(parts) != 2:
            raise ParseError(f"bad coloring entry at line {lineno}")
        values[idx] = val
        seen[idx] = True
    if not all(seen):
        raise ParseError("coloring does not assign every ground element")
    return Coloring(tuple(values))


def write_coloring(chi: Coloring, stream: IO[str]) -> None:
    for i, v in enumerate(chi.values):
        stream.write(f"{i} {v}\n")
