"""Command-line front end.

Machine-readable JSON goes to stdout; human logs go to stderr.  Exit
codes: 0 success, 2 invalid arguments, 3 resource limit exceeded,
4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import approx as approx_mod
from . import discrepancy as disc_mod
from . import graphs, orderings, pointer, power_coloring, setsystems
from .errors import ParseError, ResourceLimitError
from .formulas import parse_formula
from .rng import SplitMix64

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INVARIANT = 4

GEN_FAMILIES = graphs.FAMILIES + ("sylvester",)


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")


def _log(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a fraction: {text!r}") from None


def _read_graph(path: str) -> graphs.Graph:
    with open(path) as fh:
        return graphs.read_edge_list(fh)


def _read_system(args: argparse.Namespace) -> setsystems.SetSystem:
    """Input system: a SetSystem JSON file, or an edge list transformed
    per --system."""
    kind = getattr(args, "system", "json") or "json"
    if kind == "json":
        with open(args.input) as fh:
            return setsystems.SetSystem.from_json(fh.read())
    g = _read_graph(args.input)
    if kind == "neighborhood":
        return setsystems.neighborhood_system(g)
    if kind == "power":
        return setsystems.neighborhood_system(graphs.graph_power(g, args.d))
    raise ParseError(f"unknown system transform {kind!r}")


def _write_output(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------- verbs ----------


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "sylvester":
        if len(args.params) != 1:
            raise ParseError("sylvester takes one parameter p")
        g = graphs.sylvester_graph(args.params[0])
    else:
        g = graphs.generate_family(args.family, args.params, seed=args.seed)
    import io

    buf = io.StringIO()
    graphs.write_edge_list(g, buf)
    if args.output:
        _write_output(buf.getvalue(), args.output)
        _emit({"written": args.output, "n": g.n, "edges": g.edge_count()})
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_order(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    order, dgn = orderings.degeneracy_order(g)
    report = {
        "n": g.n,
        "degeneracy": dgn,
        "order": order.sequence(),
        "wcol_from_order": {
            str(d): orderings.wcol_from_order(g, order, d)
            for d in range(1, args.d + 1)
        },
    }
    if args.exact_d is not None:
        report["wcol_exact"] = orderings.wcol_exact(
            g, args.exact_d, max_n=args.cap_orderings
        )
    if args.output:
        _write_output(order.serialize() + "\n", args.output)
    _emit(report)
    return EXIT_OK


def cmd_system(args: argparse.Namespace) -> int:
    if args.kind == "neighborhood":
        s = setsystems.neighborhood_system(_read_graph(args.input))
    elif args.kind == "power":
        s = setsystems.neighborhood_system(
            graphs.graph_power(_read_graph(args.input), args.d)
        )
    elif args.kind == "edge-color":
        g = _read_graph(args.input)
        gamma = _read_gamma(args.colors)
        s = setsystems.edge_color_system(g, gamma)
    elif args.kind == "defined":
        with open(args.input) as fh:
            m = pointer.PointerStructure.from_json(fh.read())
        with open(args.formula) as fh:
            phi = parse_formula(fh.read())
        s = pointer.defined_system(m, phi)
    else:
        raise ParseError(f"unknown system kind {args.kind!r}")
    sys.stdout.write(s.to_json() + "\n")
    return EXIT_OK


def _read_gamma(path: str) -> dict[tuple[int, int], int]:
    gamma = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"malformed color line {lineno}")
            u, v, c = (int(p) for p in parts)
            gamma[(min(u, v), max(u, v))] = c
    return gamma


def cmd_color(args: argparse.Namespace) -> int:
    if args.kind == "beck-fiala":
        s = _read_system(args)
        chi, rounds = disc_mod.beck_fiala_with_stats(s)
        t = setsystems.degree(s)
        d, _ = disc_mod.eval_discrepancy(s, chi)
        _maybe_write_coloring(chi, args.output)
        _emit({"disc": d, "bound": max(2 * t - 1, 0), "degree": t, "rounds": rounds})
        return EXIT_OK
    if args.kind == "power":
        g = _read_graph(args.input)
        order = None
        if args.order:
            with open(args.order) as fh:
                order = orderings.LinearOrder.from_sequence(
                    [int(tok) for tok in fh.read().split()]
                )
        chi, cert = power_coloring.power_coloring(g, args.d, order)
        _maybe_write_coloring(chi, args.output)
        sys.stdout.write(cert.to_json() + "\n")
        return EXIT_OK
    if args.kind == "qf":
        with open(args.input) as fh:
            m = pointer.PointerStructure.from_json(fh.read())
        phis = []
        for path in args.formula:
            with open(path) as fh:
                phis.append(parse_formula(fh.read()))
        chi, bound = pointer.qf_color(m, phis)
        _maybe_write_coloring(chi, args.output)
        achieved = []
        for phi in phis:
            s = pointer.defined_system(m, phi)
            achieved.append(disc_mod.eval_discrepancy(s, chi)[0])
        _emit({"bound": bound, "achieved": achieved})
        return EXIT_OK
    raise ParseError(f"unknown coloring kind {args.kind!r}")


def _maybe_write_coloring(chi: disc_mod.Coloring, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            disc_mod.write_coloring(chi, fh)


def cmd_disc(args: argparse.Namespace) -> int:
    s = _read_system(args)
    if args.kind == "eval":
        with open(args.coloring) as fh:
            chi = disc_mod.read_coloring(fh, s.ground_size)
        d, witness = disc_mod.eval_discrepancy(s, chi)
        _emit({"disc": d, "witness": witness})
        return EXIT_OK
    if args.kind == "exact":
        d, chi = disc_mod.exact_discrepancy(s, max_ground=args.cap_exact_n)
        _maybe_write_coloring(chi, args.output)
        _emit({"disc": d})
        return EXIT_OK
    if args.kind == "herdisc":
        val, witness = disc_mod.herdisc_search(s, args.budget, exact_cap=args.cap_exact_n)
        _emit({"lower_bound": val, "witness_subset": list(witness)})
        return EXIT_OK
    if args.kind == "spectral":
        val = disc_mod.spectral_lower_bound(s)
        _emit({"bound": _frac(val)})
        return EXIT_OK
    raise ParseError(f"unknown disc kind {args.kind!r}")


def cmd_approx(args: argparse.Namespace) -> int:
    s = _read_system(args)
    eps = _parse_fraction(args.eps)
    if args.kind == "build":
        report = approx_mod.epsilon_approximation(s, eps)
        sys.stdout.write(report.to_json() + "\n")
        return EXIT_OK
    if args.kind == "verify":
        with open(args.sample) as fh:
            sample = [int(tok) for tok in fh.read().split()]
        ok, worst, measured = approx_mod.verify_approximation(s, sample, eps)
        net = approx_mod.verify_net(s, sample, eps)
        _emit({"ok": ok, "worst_set": worst, "measured": _frac(measured), "net": net})
        return EXIT_OK
    raise ParseError(f"unknown approx kind {args.kind!r}")


# ---------- property suites ----------


def _suite_beck_fiala(trials: int, seed: int) -> dict:
    rng = SplitMix64(seed)
    worst_margin = None
    for _ in range(trials):
        s = setsystems.random_system(rng, max_ground=120, max_degree=6, max_sets=20)
        t = setsystems.degree(s)
        chi = disc_mod.beck_fiala(s)
        d, _ = disc_mod.eval_discrepancy(s, chi)
        if t and d > 2 * t - 1:
            return {"ok": False, "disc": d, "degree": t}
        if t:
            margin = (2 * t - 1) - d
            worst_margin = margin if worst_margin is None else min(worst_margin, margin)
    return {"ok": True, "worst_margin": worst_margin}


def _suite_orientation(trials: int, seed: int) -> dict:
    rng = SplitMix64(seed)
    for _ in range(trials):
        n = 4 + rng.randrange(40)
        g = graphs.generate_family("gnp", [n, 1, 4], seed=rng.next_u64())
        chi, bound = power_coloring.orientation_coloring(g)
        d, _ = disc_mod.eval_discrepancy(setsystems.neighborhood_system(g), chi)
        if bound and d >= bound:
            return {"ok": False, "disc": d, "bound": bound}
    return {"ok": True}


def _suite_wcol_identity(trials: int, seed: int) -> dict:
    rng = SplitMix64(seed)
    for _ in range(trials):
        n = 2 + rng.randrange(5)
        g = graphs.generate_family("gnp", [n, 1, 2], seed=rng.next_u64())
        _, dgn = orderings.degeneracy_order(g)
        if orderings.wcol_exact(g, 1) != dgn + 1:
            return {"ok": False, "n": n}
    return {"ok": True}


def _suite_power(trials: int, seed: int) -> dict:
    rng = SplitMix64(seed)
    for _ in range(trials):
        n = 4 + rng.randrange(16)
        g = graphs.generate_family("gnp", [n, 1, 4], seed=rng.next_u64())
        d = 1 + rng.randrange(3)
        _, cert = power_coloring.power_coloring(g, d)
        if cert.achieved >= cert.claimed_bound:
            return {"ok": False, "n": n, "d": d}
    return {"ok": True}


def _suite_approx(trials: int, seed: int) -> dict:
    rng = SplitMix64(seed)
    for _ in range(trials):
        s = setsystems.random_system(rng, max_ground=40, max_degree=4, max_sets=10)
        report = approx_mod.epsilon_approximation(s, Fraction(1, 2))
        if report.epsilon_measured > report.epsilon_claimed:
            return {"ok": False}
        if not approx_mod.verify_net(s, report.sample, Fraction(1, 2)):
            return {"ok": False, "net": False}
    return {"ok": True}


def _suite_spectral(trials: int, seed: int) -> dict:
    rng = SplitMix64(seed)
    for _ in range(trials):
        s = setsystems.random_system(rng, max_ground=10, max_degree=4, max_sets=12)
        lower = disc_mod.spectral_lower_bound(s)
        exact, _ = disc_mod.exact_discrepancy(s)
        if lower > exact:
            return {"ok": False, "lower": _frac(lower), "exact": exact}
    return {"ok": True}


SUITES = {
    "beck-fiala": _suite_beck_fiala,
    "orientation": _suite_orientation,
    "wcol-identity": _suite_wcol_identity,
    "power": _suite_power,
    "approx": _suite_approx,
    "spectral": _suite_spectral,
}


def cmd_verify(args: argparse.Namespace) -> int:
    suite = SUITES[args.suite]
    _log(f"running suite {args.suite} with {args.trials} trials, seed {args.seed}")
    result = suite(args.trials, args.seed)
    payload = {"suite": args.suite, "trials": args.trials, **result}
    _emit(payload)
    return EXIT_OK if result.get("ok") else EXIT_INVARIANT


# ---------- argument parsing ----------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sparsedisc",
        description="low-discrepancy colorings of graph-derived set systems",
    )
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="generate a graph family as an edge list")
    p.add_argument("family", choices=GEN_FAMILIES)
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("order", help="degeneracy order and weak coloring stats")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--exact-d", type=int, default=None)
    p.add_argument("--cap-orderings", type=int, default=orderings.WCOL_EXACT_MAX_N)
    p.add_argument("-o", "--output", help="write the order as one serialized line")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("system", help="build a set system as canonical JSON")
    p.add_argument("kind", choices=["neighborhood", "power", "edge-color", "defined"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--colors")
    p.add_argument("--formula")
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("color", help="run a coloring pipeline")
    p.add_argument("kind", choices=["beck-fiala", "power", "qf"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--system", choices=["json", "neighborhood", "power"], default="json")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--order")
    p.add_argument("--formula", action="append", default=[])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("disc", help="evaluate or certify discrepancy")
    p.add_argument("kind", choices=["eval", "exact", "herdisc", "spectral"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--system", choices=["json", "neighborhood", "power"], default="json")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--coloring")
    p.add_argument("--budget", type=int, default=4096)
    p.add_argument("--cap-exact-n", type=int, default=disc_mod.EXACT_MAX_GROUND)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("approx", help="build or verify epsilon approximations")
    p.add_argument("kind", choices=["build", "verify"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--system", choices=["json", "neighborhood", "power"], default="json")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--eps", required=True)
    p.add_argument("--sample")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        _log(f"resource limit: {exc}")
        return EXIT_RESOURCE
    except (ParseError, ValueError, KeyError, OSError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE
    except AssertionError as exc:
        _log(f"internal invariant violated: {exc}")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
