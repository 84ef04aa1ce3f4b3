"""Command-line entry point: ``carrykit SUBCOMMAND ...``.

Exit codes: 0 success, 1 out of regime or no guarantee, 2 invalid input.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import search
from .additive import (HypothesisNotMet, IntSet, ModSet, arc_concentration, cauchy_davenport_check,
                       fourier_profile, freiman_24_check, freiman_3k3_check, freiman_iso_check,
                       has_unit_differences, large_fourier_bound_check, max_rep_check, pollard_check,
                       rectify, solution_count, two_carry_classify)
from .approx_hom import InvariantViolation, bclr_repair, split_detector
from .carries import carry_table, digit_system, signed_carry_label
from .fournier import as_fraction, fournier_extract
from .groups import GroupError
from .render import matrix_order, render_csv, render_json, render_matrix, rep_label
from .specs import SpecError, parse_elements, parse_group, parse_reps, parse_subgroup, read_elements

EXIT_OK, EXIT_NO_GUARANTEE, EXIT_INVALID = 0, 1, 2


class _Out:
    """Collects what a command prints so ``main`` can write it in one go."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.text = ""

    def emit(self, data: dict, text: str | None = None, csv: tuple | None = None):
        if self.fmt == "json":
            self.text = render_json(data)
        elif self.fmt == "csv":
            if csv is None:
                rows = [(k, v) for k, v in sorted(data.items()) if not isinstance(v, (dict, list, tuple))]
                csv = (("key", "value"), rows)
            self.text = render_csv(*csv)
        else:
            self.text = text if text is not None else _plain(data)


def _plain(data: dict) -> str:
    lines = []
    for k, v in sorted(data.items()):
        if isinstance(v, float):
            v = f"{v:.6g}"
        elif isinstance(v, (list, tuple)) and len(v) > 40:
            v = f"[{len(v)} items]"
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- carries

def _system(args):
    group = parse_group(args.group)
    return parse_subgroup(group, args.subgroup)


def cmd_carries(args, out: _Out) -> int:
    system = _system(args)
    reps = parse_reps(system, args.reps)
    tab = carry_table(system, reps)
    order = matrix_order(tab)
    labels = [[signed_carry_label(system, int(tab.entries[i, j]), args.ascii) for j in order] for i in order]
    heads = [rep_label(system, tab.reps[i], ascii_only=True) for i in order]
    data = {"carries": tab.nontrivial_count, "score": tab.score,
            "distinct_carries": list(tab.distinct_values), "reps": [tab.reps[i] for i in order]}
    summary = f"carries: {tab.nontrivial_count}\nC(X) = {tab.score}\n"
    if args.action == "matrix":
        data["matrix"] = labels
        text = render_matrix(tab, args.ascii) + summary
        csv = (["rep"] + heads, [[h] + row for h, row in zip(heads, labels)])
    else:
        text = summary + f"distinct carries: {list(tab.distinct_values)}\n"
        csv = (("carries", "score"), [(tab.nontrivial_count, tab.score)])
    out.emit(data, text, csv)
    return EXIT_OK


def cmd_split(args, out: _Out) -> int:
    system = _system(args)
    reps = parse_reps(system, args.reps)
    rep = split_detector(system, reps)
    data = {"score": rep.score, "threshold_met": rep.threshold_met, "verdict": rep.verdict,
            "complement": rep.complement, "checks": rep.checks}
    if rep.repair is not None:
        data.update(epsilon=rep.repair.epsilon, disagreement=rep.repair.disagreement,
                    tau_float=rep.repair.tau_float)
    out.emit(data)
    return EXIT_OK if rep.complement is not None else EXIT_NO_GUARANTEE


def cmd_repair(args, out: _Out) -> int:
    g1, g2 = parse_group(args.g1), parse_group(args.g2)
    f = _read_map(args.f, g1.order)
    if len(f) != g1.order:
        raise SpecError(f"map has {len(f)} values but {args.g1} has {g1.order} elements")
    rep = bclr_repair(f, g1, g2)
    data = {"epsilon": rep.epsilon, "phi": rep.phi, "well_defined": rep.well_defined,
            "is_homomorphism": rep.is_homomorphism, "agreement": rep.agreement,
            "disagreement": rep.disagreement, "tie_points": rep.tie_points,
            "threshold_met": rep.threshold_met, "tau_float": rep.tau_float}
    out.emit(data)
    return EXIT_OK if rep.threshold_met else EXIT_NO_GUARANTEE


def _read_map(spec: str, n: int) -> list[int]:
    """Images of 0..n-1: a plain list, or n lines of "i value" pairs."""
    try:
        with open(spec) as fh:
            lines = [ln.split() for ln in fh.read().splitlines() if ln.strip()]
    except OSError:
        return read_elements(spec)
    if len(lines) == n and all(len(ln) == 2 for ln in lines):
        pairs = {int(i): int(v) for i, v in lines}
        if sorted(pairs) != list(range(n)):
            raise SpecError(f"map file must define each of 0..{n - 1} exactly once")
        return [pairs[i] for i in range(n)]
    return read_elements(spec)


def cmd_fournier(args, out: _Out) -> int:
    g = parse_group(args.group)
    a = _group_elements(g, read_elements(args.set))
    rep = fournier_extract(a, g, as_fraction(args.eta) if args.eta else Fraction(1, 20))
    data = {"delta": rep.delta, "in_regime": rep.in_regime, "eta": rep.eta, "K": rep.subgroup,
            "size": rep.size, "overlap": rep.overlap,
            "bounds": {k: rep.checks.get(k) for k in ("size_ok", "overlap_ok")} if rep.in_regime else None,
            "checks": rep.checks}
    out.emit(data)
    return EXIT_OK if rep.in_regime else EXIT_NO_GUARANTEE


def _group_elements(g, xs):
    if hasattr(g, "modulus"):
        return [x % g.modulus for x in xs]
    bad = [x for x in xs if x not in g]
    if bad:
        raise SpecError(f"{bad[0]} is not an element of {g.spec()}")
    return xs


# ---------------------------------------------------------------- additive

def _modset(m: int, text: str) -> ModSet:
    xs = read_elements(text)
    if not xs:
        raise SpecError("empty set", text, 0)
    return ModSet(m, [x % m for x in xs])


def _sets(args, count: int | None = None) -> list[ModSet]:
    if not args.set:
        raise SpecError("at least one --set is required")
    if count is not None and len(args.set) != count:
        raise SpecError(f"expected {count} --set options, got {len(args.set)}")
    return [_modset(args.modulus, s) for s in args.set]


def add_pollard(args, out):
    sets = _sets(args)
    good = sum(1 for s in sets if has_unit_differences(s))
    if good < len(sets) - 1:
        out.emit({"hypothesis": False, "unit_difference_sets": good, "sets": len(sets)})
        return EXIT_NO_GUARANTEE
    v = pollard_check(sets, args.r)
    mx = max_rep_check(sets)
    out.emit({"hypothesis": True, "S": v.value, "S_interval": v.interval_value, "holds": v.holds,
              "max_rep": mx.value, "max_rep_interval": mx.interval_value, "max_rep_holds": mx.holds})
    return EXIT_OK


def add_cd(args, out):
    a, b = _sets(args, 2)
    size, bound, holds = cauchy_davenport_check(a, b)
    out.emit({"sumset_size": size, "bound": bound, "holds": holds})
    return EXIT_OK


def add_solutions(args, out):
    a1, a2, a3 = _sets(args, 3)
    out.emit({"solutions": solution_count(a1, a2, a3)})
    return EXIT_OK


def add_fourier(args, out):
    (a,) = _sets(args, 1)
    prof = fourier_profile(a)
    data = {"r_star": prof.r_star, "magnitude_float": prof.magnitude,
            "parseval_error_float": prof.parseval_error()}
    if 0 < len(a) < a.modulus:
        chk = large_fourier_bound_check(a)
        data.update(bound_float=chk["bound"], bound_holds=chk["holds"])
    rows = list(prof.rows())
    out.emit({**data, "coefficients": [{"r": r, "re_float": re, "im_float": im, "magnitude_float": mag}
                                       for r, re, im, mag in rows]},
             _plain(data), (("r", "re", "im", "magnitude"), [(r, repr(re), repr(im), repr(mag))
                                                              for r, re, im, mag in rows]))
    return EXIT_OK


def add_rectify(args, out):
    p = args.p
    a = _modset(p * p, args.set[0] if args.set else "")
    res = rectify(a, p, args.method)
    data = {"success": res.success, "c": res.c, "d": res.d, "image": res.image, "method": res.method}
    for k in ("doubling", "r_star", "concentration", "concentration_bound", "exhaustive"):
        if k in res.info:
            data[k] = res.info[k]
    out.emit(data)
    return EXIT_OK if res.success else EXIT_NO_GUARANTEE


def add_twocarry(args, out):
    system = digit_system(args.p)
    reps = parse_reps(system, args.reps)
    res = two_carry_classify(system, reps)
    out.emit({"distinct_count": res.distinct_count, "distinct_carries": list(res.distinct_values),
              "classified": res.classified, "form": res.form, "c": res.c, "d": res.d})
    return EXIT_OK if res.classified else EXIT_NO_GUARANTEE


def _freiman_data(res):
    return {"applicable": res.applicable, "k": res.k, "sumset_size": res.sumset_size, "excess": res.excess,
            "bound_length": res.bound_length, "counterexample": res.counterexample,
            "ap": None if res.ap is None else {"start": res.ap.start, "diff": res.ap.diff,
                                                "length": res.ap.length, "elements": res.ap.elements()}}


def add_freiman3k3(args, out):
    res = freiman_3k3_check(IntSet(read_elements(args.set[0] if args.set else "")))
    out.emit(_freiman_data(res))
    return EXIT_OK if res.applicable and not res.counterexample else EXIT_NO_GUARANTEE


def add_freiman24(args, out):
    res = freiman_24_check(_modset(args.p, args.set[0] if args.set else ""), args.p)
    out.emit(_freiman_data(res))
    return EXIT_OK if res.applicable and not res.counterexample else EXIT_NO_GUARANTEE


def add_iso(args, out):
    if not args.set or len(args.set) != 2:
        raise SpecError("iso needs exactly two --set options (B listed in the order of A)")
    a, b = (parse_elements(s) for s in args.set)
    if len(a) != len(b):
        raise SpecError("A and B must have the same size")
    ok = freiman_iso_check(a, b, b, args.modulus_a, args.modulus_b)
    out.emit({"isomorphism": ok})
    return EXIT_OK


def add_arc(args, out):
    (a,) = _sets(args, 1)
    m = a.modulus
    pts = [complex(math.cos(2 * math.pi * x / m), math.sin(2 * math.pi * x / m)) for x in a.elements]
    phi = float(as_fraction(args.phi)) * math.pi
    res = arc_concentration(pts, phi, args.n)
    out.emit({"count": res.count, "n": res.n, "found": res.found, "hypothesis": res.hypothesis,
              "refuted": res.refuted, "resultant_float": res.resultant, "threshold_float": res.threshold,
              "start_angle_float": res.start_angle, "indices": [a.elements[i] for i in res.indices]})
    return EXIT_OK


ADDITIVE = {"pollard": add_pollard, "cd": add_cd, "solutions": add_solutions, "fourier": add_fourier,
            "rectify": add_rectify, "twocarry": add_twocarry, "freiman3k3": add_freiman3k3,
            "freiman24": add_freiman24, "iso": add_iso, "arc": add_arc}


def cmd_additive(args, out):
    if args.action in ("pollard", "cd", "solutions", "fourier", "arc") and args.modulus is None:
        raise SpecError(f"additive {args.action} needs --modulus")
    if args.action in ("rectify", "twocarry", "freiman24") and args.p is None:
        raise SpecError(f"additive {args.action} needs --p")
    return ADDITIVE[args.action](args, out)


# ---------------------------------------------------------------- search

def _search_data(res: search.SearchResult) -> dict:
    return {"objective": res.objective, "witness": res.witness, "count": res.count,
            "nodes": res.nodes, "exhaustive": res.exhaustive, "optima": res.optima, "info": res.info}


def _search_system(args):
    if args.group:
        return _system(args)
    if args.b is None:
        raise SpecError("give --b or --group/--subgroup")
    return digit_system(args.b)


def cmd_search(args, out):
    w = args.workers
    if args.action == "min-carries":
        if args.window is not None:
            if args.b is None:
                raise SpecError("--window needs --b")
            res = search.min_carries_window(args.b, args.window, collect_all=args.all, workers=w)
        else:
            res = search.min_carries_group(_search_system(args), collect_all=args.all, workers=w)
    elif args.action == "max-score":
        res = search.max_cscore_group(_search_system(args), collect_all=args.all, workers=w)
    elif args.action == "max-solutions":
        if args.p is None:
            raise SpecError("max-solutions needs --p")
        res = search.max_solution_count(args.p, samples=args.samples, seed=args.seed)
    elif args.action == "two-carry":
        if args.p is None:
            raise SpecError("two-carry needs --p")
        found = search.enumerate_two_carry(args.p)
        out.emit({"p": args.p, "count": len(found),
                  "sets": [{"reps": sorted(r), "form": c.form, "c": c.c, "d": c.d} for r, c in found]})
        return EXIT_OK
    else:
        if args.b is None or args.window is None:
            raise SpecError("grid needs --b and --window")
        rep = search.grid_cscore(args.b, args.window, samples=args.samples, seed=args.seed)
        out.emit({"b": rep.b, "window": rep.window, "product_balanced": rep.product_balanced,
                  "best": rep.best, "best_set": rep.best_set, "evaluated": rep.evaluated,
                  "max_exceeds_shao": rep.max_exceeds_shao, "shao_bound_float": rep.shao_bound_float,
                  "label": rep.label})
        return EXIT_OK
    out.emit(_search_data(res))
    return EXIT_OK


def cmd_reproduce(args, out):
    from .reproduce import SUITES, format_results, run_suite
    if args.suite not in SUITES:
        raise SpecError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    results = run_suite(args.suite, workers=args.workers, seed=args.seed)
    out.emit({"suite": args.suite, "results": [r.as_dict() for r in results],
              "passed": all(r.passed for r in results)},
             format_results(results),
             (("criterion", "name", "passed", "measured", "expected"),
              [(r.number, r.name, r.passed, r.measured, r.expected) for r in results]))
    return EXIT_OK if all(r.passed for r in results) else EXIT_NO_GUARANTEE


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $CARRYKIT_WORKERS or 1)")
    p.add_argument("--seed", type=int, default=0)


def _system_args(p: argparse.ArgumentParser, required: bool = True):
    p.add_argument("--group", required=required, help="Z/n, Z/nxZ/m or table:PATH")
    p.add_argument("--subgroup", required=required, help="mult:b, gen:x,y or an element list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carrykit", description="Carries, coset representatives "
                                     "and the additive combinatorics around them.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("carries", help="carry matrix or count for a representative set")
    p.add_argument("action", choices=("matrix", "score"))
    _system_args(p)
    p.add_argument("--reps", required=True, help="standard:b, balanced:b, a file or an element list")
    p.add_argument("--ascii", action="store_true", help="write -b instead of a barred b")
    _common(p)
    p.set_defaults(func=cmd_carries)

    p = sub.add_parser("split", help="test whether the representatives certify a complement")
    _system_args(p)
    p.add_argument("--reps", required=True)
    _common(p)
    p.set_defaults(func=cmd_split, format="json")

    p = sub.add_parser("repair", help="majority-vote repair of a map between groups")
    p.add_argument("--f", required=True, help='images of 0..|G1|-1: a list, or a file of "i value" lines')
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    _common(p)
    p.set_defaults(func=cmd_repair, format="json")

    p = sub.add_parser("fournier", help="extract a subgroup from a set with few non-closed products")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--eta", default=None, help="exploration only; the guarantees use 1/20")
    _common(p)
    p.set_defaults(func=cmd_fournier, format="json")

    p = sub.add_parser("additive", help="sumset tools")
    p.add_argument("action", choices=tuple(ADDITIVE))
    p.add_argument("--set", action="append", help="element list or file; repeat for several sets")
    p.add_argument("--modulus", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--reps", default=None)
    p.add_argument("--method", choices=("both", "fourier", "exhaustive"), default="both")
    p.add_argument("--modulus-a", type=int, default=None)
    p.add_argument("--modulus-b", type=int, default=None)
    p.add_argument("--phi", default="1", help="arc length as a multiple of pi")
    p.add_argument("--n", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_additive)

    p = sub.add_parser("search", help="exhaustive optimisation over representative sets")
    p.add_argument("action", choices=("min-carries", "max-score", "max-solutions", "two-carry", "grid"))
    _system_args(p, required=False)
    p.add_argument("--b", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--all", action="store_true", help="list every optimum")
    _common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reproduce", help="run an acceptance suite")
    p.add_argument("suite")
    _common(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be at least 1")
    out = _Out(args.format)
    try:
        code = args.func(args, out)
    except HypothesisNotMet as exc:
        print(f"carrykit: hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_NO_GUARANTEE
    except InvariantViolation as exc:
        # a theorem-backed check failed: report loudly, never as success
        print(f"carrykit: invariant violation: {exc}", file=sys.stderr)
        return EXIT_NO_GUARANTEE
    except (SpecError, GroupError, ValueError) as exc:
        print(f"carrykit: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(out.text)
    return code


if __name__ == "__main__":
    sys.exit(main())
