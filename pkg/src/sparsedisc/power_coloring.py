"""Coloring pipelines that certify neighborhood discrepancy bounds from
orderings.

For graph powers: build the weak-reachability star system for a fixed
order L, color it with the constructive solver, and certify the bound
(2d*M_{d-1} + 1)*M_d where M_i is the maximum weak-i-reach size under L.
Every neighborhood of G^d decomposes into at most M_{d-1} star sets plus
a remainder inside one weak-reach set, which is where the bound comes from.

For d = 1 there is a leaner pipeline: color the in-neighborhood system of
a bounded out-degree orientation; out-neighborhoods add at most deg(G)
per set, giving discrepancy strictly below 3*deg(G).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .discrepancy import Coloring, beck_fiala, eval_discrepancy
from .graphs import Graph, graph_power
from .orderings import (
    LinearOrder,
    degeneracy_order,
    orient_along,
    weak_reach,
    wcol_heuristic_order,
)
from .setsystems import SetSystem, degree, neighborhood_system


@dataclass(frozen=True)
class PowerColoringCertificate:
    d: int
    ordering: LinearOrder
    reach_profile: tuple[int, ...]  # M_0..M_d
    claimed_bound: int
    achieved: int

    def __post_init__(self):
        assert self.reach_profile[0] == 1
        assert all(a <= b for a, b in zip(self.reach_profile, self.reach_profile[1:]))
        assert self.achieved < self.claimed_bound

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "reach_profile": list(self.reach_profile),
                "claimed_bound": self.claimed_bound,
                "achieved": self.achieved,
                "order": self.ordering.sequence(),
            },
            separators=(",", ":"),
        )


def wreach_star_system(g: Graph, order: LinearOrder, d: int) -> SetSystem:
    """One set per (vertex z, radius i <= d): all vertices that weakly
    i-reach z.  Each element u lies in at most d * max|WReach_d| sets,
    because u is only in the (z, i) star when z is in u's weak i-reach."""
    if d < 1:
        raise ValueError("radius must be at least 1")
    stars: list[set[int]] = [set() for _ in range(g.n * d)]
    for u in range(g.n):
        for i in range(1, d + 1):
            for z in weak_reach(g, order, i, u):
                stars[(i - 1) * g.n + z].add(u)
    return SetSystem.from_sets(g.n, stars)


def reach_profile(g: Graph, order: LinearOrder, d: int) -> tuple[int, ...]:
    """M_i = max_v |WReach_i| for i = 0..d (M_0 is always 1)."""
    profile = [1]
    for i in range(1, d + 1):
        profile.append(
            max((len(weak_reach(g, order, i, v)) for v in range(g.n)), default=1)
        )
    return tuple(profile)


def power_coloring(
    g: Graph, d: int, order: Optional[LinearOrder] = None
) -> tuple[Coloring, PowerColoringCertificate]:
    """Color V(G) so that the neighborhood system of G^d has discrepancy
    strictly below the ordering-relative bound (2d*M_{d-1} + 1)*M_d."""
    if d < 1:
        raise ValueError("power radius must be at least 1")
    if order is None:
        order = wcol_heuristic_order(g)
    profile = reach_profile(g, order, d)
    chi = beck_fiala(wreach_star_system(g, order, d))
    bound = (2 * d * profile[d - 1] + 1) * profile[d]
    achieved, _ = eval_discrepancy(neighborhood_system(graph_power(g, d)), chi)
    cert = PowerColoringCertificate(d, order, profile, bound, achieved)
    return chi, cert


def in_neighborhood_system(g: Graph, order: Optional[LinearOrder] = None) -> SetSystem:
    """In-neighborhoods under the orientation along the order (defaults to
    the degeneracy order); its degree is the orientation's max out-degree."""
    if order is None:
        order, _ = degeneracy_order(g)
    orientation = orient_along(g, order)
    return SetSystem.from_sets(g.n, orientation.in_neighbors())


def orientation_coloring(g: Graph) -> tuple[Coloring, int]:
    """Color V(G) with neighborhood discrepancy < 3*deg(G).

    Returns the coloring and the bound 3*deg(G).  The in-neighborhood
    system has degree at most deg(G), so its solver coloring is below
    2*deg(G) on every in-neighborhood; out-neighborhoods contribute at
    most deg(G) more per vertex.
    """
    order, dgn = degeneracy_order(g)
    chi = beck_fiala(in_neighborhood_system(g, order))
    return chi, 3 * dgn
