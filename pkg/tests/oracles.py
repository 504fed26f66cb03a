"""Independent brute-force oracles used by the tests.

These deliberately share no algorithmic code with the package: exhaustive
enumeration only.  They are the second route of every dual-route check.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

from sparsedisc.graphs import Graph
from sparsedisc.setsystems import SetSystem


def disc_brute(s: SetSystem) -> int:
    """Minimum over all 2^n colorings of the max |color sum|."""
    if not s.sets:
        return 0
    best = None
    for bits in product((1, -1), repeat=s.ground_size):
        worst = max(abs(sum(bits[v] for v in st)) for st in s.sets)
        if best is None or worst < best:
            best = worst
    return best


def herdisc_brute(s: SetSystem) -> int:
    """Max over all subsets of the exact discrepancy of the trace."""
    best = 0
    for mask in range(2**s.ground_size):
        sub = [v for v in range(s.ground_size) if mask >> v & 1]
        pos = {v: i for i, v in enumerate(sub)}
        traced = SetSystem.from_sets(
            len(sub), ({pos[v] for v in st if v in pos} for st in s.sets)
        )
        best = max(best, disc_brute(traced))
    return best


def eval_disc_brute(s: SetSystem, values: tuple[int, ...]) -> int:
    return max((abs(sum(values[v] for v in st)) for st in s.sets), default=0)


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def girth(g: Graph) -> int | None:
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: None}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adjacency[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w:
                        cyc = dist[u] + dist[w] + 1
                        best = cyc if best is None else min(best, cyc)
            frontier = nxt
    return best


def wreach_brute(g: Graph, rank: tuple[int, ...], d: int, v: int) -> set[int]:
    """All endpoints of simple paths of length <= d from v on which the
    endpoint is the rank-minimum, by enumerating the paths."""
    out = {v}
    paths = [[v]]
    for _ in range(d):
        nxt = []
        for path in paths:
            for w in g.adjacency[path[-1]]:
                if w in path:
                    continue
                new = path + [w]
                nxt.append(new)
                if rank[w] == min(rank[u] for u in new):
                    out.add(w)
        paths = nxt
    return out


def wcol_brute(g: Graph, d: int) -> int:
    best = None
    for perm in permutations(range(g.n)):
        rank = [0] * g.n
        for r, v in enumerate(perm):
            rank[v] = r
        m = max(len(wreach_brute(g, tuple(rank), d, v)) for v in range(g.n))
        if best is None or m < best:
            best = m
    return best


def degeneracy_brute(g: Graph) -> int:
    """max over non-empty induced subgraphs of the minimum degree."""
    best = 0
    for r in range(1, g.n + 1):
        for sub in combinations(range(g.n), r):
            ss = set(sub)
            best = max(best, min(sum(1 for w in g.adjacency[v] if w in ss) for v in sub))
    return best


def approx_error_brute(s: SetSystem, sample: set[int]) -> Fraction:
    worst = Fraction(0)
    for st in s.sets:
        hit = sum(1 for v in st if v in sample)
        worst = max(worst, abs(Fraction(hit, len(sample)) - Fraction(len(st), s.ground_size)))
    return worst
