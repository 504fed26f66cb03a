"""Finite structures with unary functions and predicates, definable set
systems, and the decomposition pipeline that colors them with a constant
discrepancy bound.

A quantifier-free partitioned formula is normalized to DNF; each conjunct
splits into object-only literals (rho), parameter-only literals (the
guard), and cross equalities word(x_i) = word(y_j).  Replacing the
parameter side of each positive cross by a fresh z slot yields a psi of
the canonical form  AND_r (word_r(x_{i_r}) = z_r); negated crosses each
become a single-slot psi subtracted in the assembly.  The psi systems
have degree 1 (the z-tuple of a member is determined by the member), so
the union system of all rhos and psis has degree at most |Psi|, its
intersection closure has degree at most 2^|Psi|, and a solver coloring of
the closure is within the constant 2^(2k+t+1) on every definable set.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Union

from .discrepancy import Coloring, beck_fiala
from .errors import ResourceLimitError
from .formulas import And, Eq, Node, Not, Or, Pred, QFFormula, Term, parse_formula
from .graphs import Graph
from .orderings import degeneracy_order, orient_along
from .setsystems import SetSystem, intersection_closure

DEFINED_PARAM_CAP = 10**6
DEFINED_GROUND_BITS = 24
DNF_ATOM_CAP = 12

Word = tuple[str, ...]
Literal = tuple[bool, Union[Pred, Eq]]


@dataclass(frozen=True)
class PointerStructure:
    domain_size: int
    functions: dict[str, tuple[int, ...]]
    predicates: dict[str, frozenset[int]]

    def __post_init__(self):
        n = self.domain_size
        overlap = set(self.functions) & set(self.predicates)
        if overlap:
            raise ValueError(f"names used as both function and predicate: {overlap}")
        for name, f in self.functions.items():
            if len(f) != n or any(not 0 <= v < n for v in f):
                raise ValueError(f"function {name!r} is not total on the domain")
        for name, p in self.predicates.items():
            if any(not 0 <= v < n for v in p):
                raise ValueError(f"predicate {name!r} leaves the domain")

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.domain_size,
                "functions": {k: list(v) for k, v in sorted(self.functions.items())},
                "predicates": {k: sorted(v) for k, v in sorted(self.predicates.items())},
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "PointerStructure":
        data = json.loads(text)
        return cls(
            data["n"],
            {k: tuple(v) for k, v in data.get("functions", {}).items()},
            {k: frozenset(v) for k, v in data.get("predicates", {}).items()},
        )

    def apply_word(self, word: Word, value: int) -> int:
        for name in word:
            fn = self.functions.get(name)
            if fn is None:
                raise KeyError(f"unknown function {name!r}")
            value = fn[value]
        return value


def weakly_induced(m: PointerStructure, subset: Iterable[int]) -> PointerStructure:
    """Substructure on the subset: predicates restrict, and a function
    value escaping the subset becomes a fixed point."""
    sub = sorted(set(subset))
    pos = {v: i for i, v in enumerate(sub)}
    functions = {
        name: tuple(pos.get(f[v], i) for i, v in enumerate(sub))
        for name, f in m.functions.items()
    }
    predicates = {
        name: frozenset(pos[v] for v in p if v in pos) for name, p in m.predicates.items()
    }
    return PointerStructure(len(sub), functions, predicates)


def _eval_term(m: PointerStructure, t: Term, a: tuple, b: tuple, c: tuple) -> int:
    pools = {"x": a, "y": b, "z": c}
    pool = pools[t.side]
    if t.index >= len(pool):
        raise ValueError(f"{t.side}{t.index + 1} outside the supplied tuple")
    return m.apply_word(t.word, pool[t.index])


def _eval_node(m: PointerStructure, node: Node, a: tuple, b: tuple, c: tuple) -> bool:
    if isinstance(node, Pred):
        p = m.predicates.get(node.name)
        if p is None:
            raise KeyError(f"unknown predicate {node.name!r}")
        return _eval_term(m, node.term, a, b, c) in p
    if isinstance(node, Eq):
        return _eval_term(m, node.left, a, b, c) == _eval_term(m, node.right, a, b, c)
    if isinstance(node, Not):
        return not _eval_node(m, node.child, a, b, c)
    if isinstance(node, And):
        return all(_eval_node(m, ch, a, b, c) for ch in node.children)
    if isinstance(node, Or):
        return any(_eval_node(m, ch, a, b, c) for ch in node.children)
    raise TypeError(node)


def eval_formula(
    m: PointerStructure, phi: QFFormula, a: tuple, b: tuple, c: tuple = ()
) -> bool:
    if len(a) != phi.x_arity or len(b) != phi.y_arity:
        raise ValueError("tuple arities do not match the formula")
    return _eval_node(m, phi.root, tuple(a), tuple(b), tuple(c))


def _flatten_index(a: tuple[int, ...], n: int) -> int:
    idx = 0
    for v in a:
        idx = idx * n + v
    return idx


def defined_system(m: PointerStructure, phi: QFFormula) -> SetSystem:
    """One set per parameter tuple: {x-tuples satisfying phi}, with
    x-tuples of arity > 1 flattened to lexicographic indices."""
    n = m.domain_size
    if n**phi.y_arity > DEFINED_PARAM_CAP:
        raise ResourceLimitError("parameter enumeration over the cap")
    if phi.x_arity * max(1, (n - 1).bit_length()) > DEFINED_GROUND_BITS:
        raise ResourceLimitError("ground tuple space over the cap")
    ground = n**phi.x_arity
    sets = []
    xs = list(product(range(n), repeat=phi.x_arity))
    for b in product(range(n), repeat=phi.y_arity):
        sets.append(
            [_flatten_index(a, n) for a in xs if eval_formula(m, phi, a, b)]
        )
    return SetSystem.from_sets(ground, sets)


def from_degenerate_graph(g: Graph) -> tuple[PointerStructure, QFFormula]:
    """Encode a graph as pointer functions along its degeneracy
    orientation, with the adjacency formula: x and y are distinct and one
    points at the other."""
    order, dgn = degeneracy_order(g)
    d = max(1, dgn)
    orientation = orient_along(g, order)
    functions = {f"f{i}": list(range(g.n)) for i in range(1, d + 1)}
    for v in range(g.n):
        for i, w in enumerate(orientation.out_neighbors[v], start=1):
            functions[f"f{i}"][v] = w
    m = PointerStructure(g.n, {k: tuple(v) for k, v in functions.items()}, {})
    clauses = " | ".join(f"f{i}(x1)=y1 | f{i}(y1)=x1" for i in range(1, d + 1))
    eta = parse_formula(f"!(x1=y1) & ({clauses})")
    return m, eta


# ---------- decomposition ----------


@dataclass(frozen=True)
class ConjunctPlan:
    guard: tuple[Literal, ...]  # parameter-only literals
    rho_index: int
    psi_index: Optional[int]
    psi_params: tuple[tuple[Word, int], ...]  # c_r = word(b[y_index])
    negatives: tuple[tuple[int, tuple[Word, int]], ...]


@dataclass(frozen=True)
class PsiDecomposition:
    x_arity: int
    y_arity: int
    rhos: tuple[tuple[Literal, ...], ...]
    psis: tuple[tuple[tuple[Word, int], ...], ...]
    assembly: tuple[ConjunctPlan, ...]

    @property
    def conjunct_count(self) -> int:
        return len(self.assembly)


def _count_atoms(node: Node, seen: set) -> None:
    if isinstance(node, (Pred, Eq)):
        seen.add(node)
    elif isinstance(node, Not):
        _count_atoms(node.child, seen)
    else:
        for ch in node.children:
            _count_atoms(ch, seen)


def _dnf(node: Node, negated: bool) -> list[frozenset[Literal]]:
    """Disjunctive normal form as a list of literal sets."""
    if isinstance(node, (Pred, Eq)):
        return [frozenset([(not negated, node)])]
    if isinstance(node, Not):
        return _dnf(node.child, not negated)
    branches = node.children
    disjunctive = isinstance(node, Or) != negated
    if disjunctive:
        out = []
        for ch in branches:
            out.extend(_dnf(ch, negated))
        return out
    conjuncts: list[frozenset[Literal]] = [frozenset()]
    for ch in branches:
        nxt = []
        for left in conjuncts:
            for right in _dnf(ch, negated):
                merged = left | right
                if not _contradictory(merged):
                    nxt.append(merged)
        conjuncts = nxt
    return conjuncts


def _contradictory(literals: frozenset[Literal]) -> bool:
    return any((not pos, atom) in literals for pos, atom in literals)


def _term_key(t: Term) -> tuple:
    return (t.side, t.index, t.word)


def _literal_key(lit: Literal) -> tuple:
    pos, atom = lit
    if isinstance(atom, Pred):
        return (0, atom.name, _term_key(atom.term), (), pos)
    k = sorted([_term_key(atom.left), _term_key(atom.right)])
    return (1, "", k[0], k[1], pos)


def _atom_sides(atom: Union[Pred, Eq]) -> set[str]:
    if isinstance(atom, Pred):
        return {atom.term.side}
    return {atom.left.side, atom.right.side}


def qf_decompose(phi: QFFormula) -> PsiDecomposition:
    """Split a partitioned formula into parameter-free rhos and canonical
    psis so that every definable set assembles from guarded intersections
    minus single-slot psi sets."""
    atoms: set = set()
    _count_atoms(phi.root, atoms)
    if len(atoms) > DNF_ATOM_CAP:
        raise ResourceLimitError(f"formula has more than {DNF_ATOM_CAP} atoms")
    if any("z" in _atom_sides(a) for a in atoms):
        raise ValueError("decomposition input must use x*/y* variables only")

    rho_pool: dict[tuple, int] = {}
    rhos: list[tuple[Literal, ...]] = []
    psi_pool: dict[tuple, int] = {}
    psis: list[tuple[tuple[Word, int], ...]] = []

    def rho_id(literals: list[Literal]) -> int:
        canon = tuple(sorted(literals, key=_literal_key))
        key = tuple(_literal_key(l) for l in canon)
        if key not in rho_pool:
            rho_pool[key] = len(rhos)
            rhos.append(canon)
        return rho_pool[key]

    def psi_id(atoms_: tuple[tuple[Word, int], ...]) -> int:
        if atoms_ not in psi_pool:
            psi_pool[atoms_] = len(psis)
            psis.append(atoms_)
        return psi_pool[atoms_]

    plans = []
    for conjunct in _dnf(phi.root, False):
        rho_lits: list[Literal] = []
        guard_lits: list[Literal] = []
        pos_cross: list[tuple[tuple[Word, int], tuple[Word, int]]] = []
        neg_cross: list[tuple[tuple[Word, int], tuple[Word, int]]] = []
        for pos, atom in conjunct:
            sides = _atom_sides(atom)
            if sides <= {"x"}:
                rho_lits.append((pos, atom))
            elif sides <= {"y"}:
                guard_lits.append((pos, atom))
            else:
                left, right = atom.left, atom.right
                if left.side == "y":
                    left, right = right, left
                entry = ((left.word, left.index), (right.word, right.index))
                (pos_cross if pos else neg_cross).append(entry)
        # at most one positive cross per parameter term: rewrite duplicates
        # into object-only equalities
        by_param: dict[tuple[Word, int], tuple[Word, int]] = {}
        kept: list[tuple[tuple[Word, int], tuple[Word, int]]] = []
        for xpart, ypart in sorted(pos_cross):
            if ypart in by_param:
                fw, fi = by_param[ypart]
                hw, hi = xpart
                eq = Eq(Term("x", fi, fw), Term("x", hi, hw))
                rho_lits.append((True, eq))
            else:
                by_param[ypart] = xpart
                kept.append((xpart, ypart))
        psi_index = None
        psi_params: tuple[tuple[Word, int], ...] = ()
        if kept:
            psi_index = psi_id(tuple(x for x, _ in kept))
            psi_params = tuple(y for _, y in kept)
        negatives = tuple(
            (psi_id((xpart,)), ypart) for xpart, ypart in sorted(neg_cross)
        )
        plans.append(
            ConjunctPlan(
                guard=tuple(sorted(guard_lits, key=_literal_key)),
                rho_index=rho_id(rho_lits),
                psi_index=psi_index,
                psi_params=psi_params,
                negatives=negatives,
            )
        )
    return PsiDecomposition(
        phi.x_arity, phi.y_arity, tuple(rhos), tuple(psis), tuple(plans)
    )


def _eval_literals(
    m: PointerStructure, literals: Iterable[Literal], a: tuple, b: tuple
) -> bool:
    return all(
        _eval_node(m, atom if pos else Not(atom), a, b, ()) for pos, atom in literals
    )


def _rho_members(
    m: PointerStructure, rho: tuple[Literal, ...], xs: list[tuple[int, ...]]
) -> set[tuple[int, ...]]:
    return {a for a in xs if _eval_literals(m, rho, a, ())}


def _psi_members(
    m: PointerStructure,
    psi: tuple[tuple[Word, int], ...],
    c: tuple[int, ...],
    xs: list[tuple[int, ...]],
) -> set[tuple[int, ...]]:
    return {
        a
        for a in xs
        if all(m.apply_word(w, a[i]) == c[r] for r, (w, i) in enumerate(psi))
    }


def assemble(m: PointerStructure, dec: PsiDecomposition, b: tuple) -> set[int]:
    """The set defined by the original formula at parameter b, rebuilt
    from the decomposition; ground indices flattened as in defined_system."""
    if len(b) != dec.y_arity:
        raise ValueError("parameter tuple arity mismatch")
    n = m.domain_size
    xs = list(product(range(n), repeat=dec.x_arity))
    out: set[tuple[int, ...]] = set()
    for plan in dec.assembly:
        if not _eval_literals(m, plan.guard, (), b):
            continue
        cur = _rho_members(m, dec.rhos[plan.rho_index], xs)
        if plan.psi_index is not None:
            c = tuple(m.apply_word(w, b[j]) for w, j in plan.psi_params)
            cur &= _psi_members(m, dec.psis[plan.psi_index], c, xs)
        for pidx, (w, j) in plan.negatives:
            cur -= _psi_members(m, dec.psis[pidx], (m.apply_word(w, b[j]),), xs)
        out |= cur
    return {_flatten_index(a, n) for a in out}


# ---------- the constant-bound coloring ----------


def psi_system_sets(
    m: PointerStructure, psi: tuple[tuple[Word, int], ...]
) -> list[list[int]]:
    """Nonempty sets of the psi-defined system, grouped by the value
    tuple; pairwise disjoint because the tuple is a function of the member."""
    fibers: dict[tuple[int, ...], list[int]] = {}
    for a in range(m.domain_size):
        c = tuple(m.apply_word(w, a) for w, _ in psi)
        fibers.setdefault(c, []).append(a)
    sets = list(fibers.values())
    assert sum(len(s) for s in sets) == m.domain_size
    return sets


def definable_closure(
    m: PointerStructure, phis: list[QFFormula]
) -> tuple[SetSystem, int, int]:
    """The intersection closure of the union decomposition system for the
    given formulas, together with k (max sets per Boolean combination) and
    t = |Psi|.  Solver colorings of this closure (or of any of its traces)
    stay within 2^(2k+t+1) on every system the formulas define."""
    decs = [qf_decompose(phi) for phi in phis]
    if any(dec.x_arity != 1 for dec in decs):
        raise ValueError("constant-bound coloring supports x-arity 1 only")

    rho_pool: dict[tuple, int] = {}
    rhos: list[tuple[Literal, ...]] = []
    psi_pool: dict[tuple, int] = {}
    psis: list[tuple[tuple[Word, int], ...]] = []
    k = 0
    for dec in decs:
        rho_map = {}
        for i, rho in enumerate(dec.rhos):
            key = tuple(_literal_key(l) for l in rho)
            if key not in rho_pool:
                rho_pool[key] = len(rhos)
                rhos.append(rho)
            rho_map[i] = rho_pool[key]
        psi_map = {}
        for i, psi in enumerate(dec.psis):
            if psi not in psi_pool:
                psi_pool[psi] = len(psis)
                psis.append(psi)
            psi_map[i] = psi_pool[psi]
        slots = set()
        for plan in dec.assembly:
            slots.add(("rho", rho_map[plan.rho_index]))
            if plan.psi_index is not None:
                slots.add(("psi", psi_map[plan.psi_index], plan.psi_params))
            for pidx, param in plan.negatives:
                slots.add(("psi", psi_map[pidx], (param,)))
        k = max(k, len(slots))

    t = len(rhos) + len(psis)
    n = m.domain_size
    base_sets: list[list[int]] = []
    xs = [(a,) for a in range(n)]
    for rho in rhos:
        base_sets.append(sorted(a for (a,) in _rho_members(m, rho, xs)))
    for psi in psis:
        base_sets.extend(psi_system_sets(m, psi))
    closure = intersection_closure(SetSystem.from_sets(n, base_sets))
    return closure, k, t


def qf_color(m: PointerStructure, phis: list[QFFormula]) -> tuple[Coloring, int]:
    """Color the domain so every system definable by the given formulas
    has discrepancy at most 2^(2k+t+1), a constant independent of the
    structure: k bounds the sets per Boolean combination, t = |Psi|."""
    closure, k, t = definable_closure(m, phis)
    chi = beck_fiala(closure)
    bound = 2 ** (2 * k + t + 1)
    return chi, bound
