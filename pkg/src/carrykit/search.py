"""Certified exhaustive searches over representative sets.

All searches are depth-first branch and bound over cosets in id order with
candidates ascending, so the first optimum met is the lexicographically
smallest.  Pruning only discards nodes whose lower bound strictly exceeds the
incumbent, which keeps optimum counts exact.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .carries import (balanced_reps, carry_count, carry_table, digit_system,
                      integer_carry_count, sign_count_lower_bound)
from .groups import CosetSystem, CyclicGroup

__all__ = [
    "SearchResult",
    "SearchLimitError",
    "min_carries_window",
    "min_carries_group",
    "max_cscore_group",
    "max_solution_count",
    "enumerate_two_carry",
    "grid_cscore",
    "GridReport",
    "default_workers",
    "SHAO_BOUND",
]

DEFAULT_NODE_LIMIT = 10 ** 9
SHAO_BOUND = 1 - 3 * math.sqrt(3) / (4 * math.pi)


class SearchLimitError(RuntimeError):
    """The node budget ran out before the search completed."""


@dataclass
class SearchResult:
    objective: object  # int or Fraction
    witness: tuple
    count: int
    nodes: int
    exhaustive: bool = True
    optima: Optional[list] = None
    info: dict = field(default_factory=dict)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("CARRYKIT_WORKERS", "1")))
    except ValueError:
        return 1


# -- generic branch and bound -------------------------------------------------

@dataclass
class _Problem:
    """Levels are cosets.  Candidate ``u`` has value ``value[u]``; ``table[u][v]`` is
    the value of the product of candidates u and v.  A check ``(i, j, l)`` listed at
    level t (= max(i, j, l)) is a carry unless ``table[a_i][a_j] == value[a_l]``."""

    candidates: list
    checks: list
    table: list
    value: list
    extra_bound: Optional[Callable] = None


def _checks_from_quotient(q: list) -> list:
    k = len(q)
    checks = [[] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            l = q[i][j]
            checks[max(i, j, l)].append((i, j, l))
    return checks


def _branch_and_bound(problem: _Problem, incumbent: float, prefix: Sequence[int] = (),
                      collect_all: bool = False, prune: bool = True,
                      node_limit: int = DEFAULT_NODE_LIMIT):
    cands, checks, table, value = problem.candidates, problem.checks, problem.table, problem.value
    extra = problem.extra_bound
    k = len(cands)
    assign = [0] * k
    state = {"best": incumbent, "count": 0, "witness": None, "optima": [], "nodes": 0}

    def forced_at(t, base):
        f = base
        for i, j, l in checks[t]:
            if table[assign[i]][assign[j]] != value[assign[l]]:
                f += 1
        return f

    def visit_leaf(f):
        if f < state["best"]:
            state["best"] = f
            state["count"] = 0
            state["witness"] = None
            state["optima"] = []
        if f == state["best"]:
            state["count"] += 1
            w = tuple(value[a] for a in assign)
            if state["witness"] is None:
                state["witness"] = w
            if collect_all:
                state["optima"].append(w)

    def rec(t, forced):
        best = state["best"]
        for u in cands[t]:
            state["nodes"] += 1
            if state["nodes"] > node_limit:
                raise SearchLimitError(f"node limit {node_limit} exceeded")
            assign[t] = u
            f = forced_at(t, forced)
            if prune:
                if f > best:
                    continue
                if extra is not None and extra(t, assign, f) > best:
                    continue
            if t == k - 1:
                visit_leaf(f)
                best = state["best"]
            else:
                rec(t + 1, f)
                best = state["best"]

    forced = 0
    for t, u in enumerate(prefix):
        assign[t] = u
        forced = forced_at(t, forced)
        state["nodes"] += 1
    if len(prefix) == k:
        visit_leaf(forced)
    elif not prune or forced <= state["best"]:
        rec(len(prefix), forced)
    return state


def _run_task(args):
    problem, incumbent, prefix, collect_all, prune, node_limit = args
    return _branch_and_bound(problem, incumbent, prefix, collect_all, prune, node_limit)


def _solve(problem: _Problem, incumbent: float, *, collect_all: bool = False, prune: bool = True,
           workers: int = 1, node_limit: int = DEFAULT_NODE_LIMIT):
    """Minimise the carry count; returns (value, witness, count, nodes, optima)."""
    if workers <= 1 or len(problem.candidates) < 2:
        s = _branch_and_bound(problem, incumbent, (), collect_all, prune, node_limit)
        states = [s]
    else:
        prefixes = list(itertools.product(problem.candidates[0], problem.candidates[1]))
        tasks = [(problem, incumbent, p, collect_all, prune, node_limit) for p in prefixes]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            states = list(pool.map(_run_task, tasks))
    # order-independent reduction
    best = min(s["best"] for s in states if s["witness"] is not None)
    winners = [s for s in states if s["witness"] is not None and s["best"] == best]
    count = sum(s["count"] for s in winners)
    witness = min(s["witness"] for s in winners)
    optima = sorted(w for s in winners for w in s["optima"]) if collect_all else None
    nodes = sum(s["nodes"] for s in states)
    return best, witness, count, nodes, optima


# -- Z window search ------------------------------------------------------------

def _window_candidates(b: int, window: int) -> list[list[int]]:
    levels = [[0]]
    for r in range(1, b):
        vals = [x for x in range(-window, window + 1) if x % b == r]
        if not vals:
            raise ValueError(f"window {window} holds no representative of residue {r} mod {b}")
        levels.append(vals)
    return levels


class _SignBound:
    """Fewest carries any completion can have, given the signs chosen so far."""

    def __init__(self, b: int, values: list):
        self.b = b
        self.values = values

    def __call__(self, t, assign, forced):
        pos = sum(1 for a in assign[1:t + 1] if self.values[a] > 0)
        neg = t - pos
        return min(sign_count_lower_bound(c, self.b) for c in range(pos, self.b - neg))


def min_carries_window(b: int, window: int, *, collect_all: bool = False, prune: bool = True,
                       workers: int = 1, node_limit: int = DEFAULT_NODE_LIMIT) -> SearchResult:
    """Minimum carries over {0, x_1, ..., x_{b-1}} in Z with x_i = i mod b and |x_i| <= window."""
    if b < 2:
        raise ValueError("b must be at least 2")
    levels = _window_candidates(b, window)
    values = sorted(set(v for lvl in levels for v in lvl))
    index = {v: n for n, v in enumerate(values)}
    cands = [[index[v] for v in lvl] for lvl in levels]
    table = [[u + v for v in values] for u in values]
    q = [[(i + j) % b for j in range(b)] for i in range(b)]
    checks = _checks_from_quotient(q)

    problem = _Problem(cands, checks, table, values, _SignBound(b, values))
    # any feasible set bounds the optimum from above
    seed = [lvl[min(range(len(lvl)), key=lambda n: abs(lvl[n]))] for lvl in levels]
    incumbent = integer_carry_count(seed) if prune else math.inf
    best, witness, count, nodes, optima = _solve(problem, incumbent, collect_all=collect_all,
                                                 prune=prune, workers=workers, node_limit=node_limit)
    return SearchResult(best, witness, count, nodes, True, optima,
                        {"b": b, "window": window, "floor_b2_4": b * b // 4})


def is_balanced_dilate(xs: Sequence[int], b: int) -> bool:
    """True if the set equals {x*n : -b/2 < n <= b/2} for some x != 0."""
    s = set(xs)
    nonzero = [x for x in s if x != 0]
    if not nonzero:
        return False
    # x must divide every element and be the smallest positive in absolute value
    for x in {min(nonzero, key=abs), -min(nonzero, key=abs)}:
        if s == {x * n for n in range(-((b - 1) // 2), b // 2 + 1)}:
            return True
    return False


# -- finite group searches --------------------------------------------------------

def _group_problem(system: CosetSystem) -> _Problem:
    g = system.group
    table = g.table.tolist()
    cands = [list(m) for m in system.members]
    q = system.quotient.table.tolist()
    return _Problem(cands, _checks_from_quotient(q), table, list(range(g.order)))


def _greedy_reps(problem: _Problem) -> list[int]:
    """Cheap feasible set: pick, coset by coset, the candidate forcing fewest carries."""
    k = len(problem.candidates)
    assign = [0] * k
    for t in range(k):
        best_u, best_f = None, None
        for u in problem.candidates[t]:
            assign[t] = u
            f = sum(1 for i, j, l in problem.checks[t]
                    if problem.table[assign[i]][assign[j]] != problem.value[assign[l]])
            if best_f is None or f < best_f:
                best_u, best_f = u, f
        assign[t] = best_u
    return assign


def _space_size(system: CosetSystem) -> int:
    return math.prod(len(m) for m in system.members)


def min_carries_group(system: CosetSystem, *, collect_all: bool = False, prune: bool = True,
                      workers: int = 1, node_limit: int = DEFAULT_NODE_LIMIT) -> SearchResult:
    """Minimum number of nontrivial carries over all representative sets."""
    problem = _group_problem(system)
    if prune:
        seed = _greedy_reps(problem)
        incumbent = carry_count(system, seed)
    else:
        if _space_size(system) > node_limit:
            raise SearchLimitError(f"state space {_space_size(system)} exceeds node limit without pruning")
        incumbent = math.inf
    best, witness, count, nodes, optima = _solve(problem, incumbent, collect_all=collect_all,
                                                 prune=prune, workers=workers, node_limit=node_limit)
    return SearchResult(best, witness, count, nodes, True, optima,
                        {"group": system.group.spec(), "index": system.index,
                         "space": _space_size(system)})


def max_cscore_group(system: CosetSystem, **kwargs) -> SearchResult:
    """Maximum C(X) over all representative sets, as an exact fraction."""
    res = min_carries_group(system, **kwargs)
    k2 = system.index ** 2
    res.info["min_carries"] = res.objective
    res.objective = Fraction(k2 - res.objective, k2)
    return res


# -- solution counts a1 + a2 = a3 --------------------------------------------------

def _rep_sets_mod_p2(p: int) -> np.ndarray:
    """All p^p representative sets of p(Z/p^2) in Z/p^2 as rows (coset order)."""
    m = p * p
    per = [range(i, m, p) for i in range(p)]
    return np.array(list(itertools.product(*per)), dtype=np.int64)


def _solution_counts(a1: np.ndarray, a2: np.ndarray, a3: np.ndarray, m: int) -> np.ndarray:
    """Row-wise number of (x, y) in A1 x A2 with x + y in A3, for batches of sets."""
    n = len(a1)
    member = np.zeros((n, m), dtype=bool)
    np.put_along_axis(member, a3, True, axis=1)
    sums = (a1[:, :, None] + a2[:, None, :]) % m
    hit = np.take_along_axis(member, sums.reshape(n, -1), axis=1)
    return hit.sum(axis=1)


def max_solution_count(p: int, *, samples: int = 0, seed: int = 0,
                       exhaustive: Optional[bool] = None) -> SearchResult:
    """Maximum number of solutions to a1 + a2 = a3 over triples of representative sets.

    Exhaustive over all (p^p)^3 triples when ``exhaustive`` (default for p <= 3);
    otherwise the balanced triple is the witness and ``samples`` random triples
    are checked against it.
    """
    from .additive.pollard import solution_count  # local: avoid import cycle at module load

    m = p * p
    bound = Fraction(3 * p * p + 1, 4)
    if exhaustive is None:
        exhaustive = p <= 3
    bal = tuple(sorted(balanced_reps(digit_system(p)).reps))
    bal_count = solution_count(bal, bal, bal, m)
    if exhaustive:
        sets = _rep_sets_mod_p2(p)
        n = len(sets)
        best, count, witness = -1, 0, None
        nodes = 0
        for i1 in range(n):
            a1 = np.repeat(sets[i1:i1 + 1], n * n, axis=0)
            a2 = np.repeat(sets, n, axis=0)
            a3 = np.tile(sets, (n, 1))
            vals = _solution_counts(a1, a2, a3, m)
            nodes += len(vals)
            top = int(vals.max())
            if top > best:
                best, count = top, 0
                witness = None
            if top == best:
                hits = np.flatnonzero(vals == top)
                count += len(hits)
                if witness is None:
                    h = int(hits[0])
                    witness = (tuple(sets[i1].tolist()), tuple(a2[h].tolist()), tuple(a3[h].tolist()))
        return SearchResult(best, witness, count, nodes, True, None,
                            {"p": p, "bound": bound, "balanced": bal_count})
    rng = np.random.default_rng(seed)
    top = 0
    done = 0
    while done < samples:
        batch = min(20000, samples - done)
        tri = [(rng.integers(0, p, size=(batch, p)) * p + np.arange(p)) for _ in range(3)]
        vals = _solution_counts(*tri, m)
        top = max(top, int(vals.max()))
        done += batch
    best = max(top, bal_count)
    return SearchResult(best, (bal, bal, bal), 1, samples, False, None,
                        {"p": p, "bound": bound, "balanced": bal_count, "sampled_max": top,
                         "samples": samples, "seed": seed})


# -- two-carry enumeration ------------------------------------------------------------

def enumerate_two_carry(p: int) -> list:
    """All representative sets of p(Z/p^2) with exactly two distinct carries, classified."""
    from .additive.twocarry import two_carry_classify

    if p > 7:
        raise ValueError("exhaustive two-carry enumeration is limited to p <= 7")
    system = digit_system(p)
    out = []
    for reps in itertools.product(*system.members):
        tab = carry_table(system, reps)
        if len(tab.distinct_values) == 2:
            out.append((reps, two_carry_classify(system, reps)))
    return out


# -- two-dimensional exploration -----------------------------------------------------

@dataclass
class GridReport:
    b: int
    window: int
    product_balanced: Fraction
    best: Fraction
    best_set: tuple
    evaluated: int
    max_exceeds_shao: bool
    shao_bound_float: float
    label: str = "exploratory: evidence only, the two-dimensional conjecture is open"


def grid_carry_score(points: Sequence[tuple[int, int]]) -> Fraction:
    """C(X) for a finite set of lattice points in the integer model (carry = sum leaves X)."""
    s = set(points)
    n = len(points)
    good = sum(1 for (a, b) in points for (c, d) in points if (a + c, b + d) in s)
    return Fraction(good, n * n)


def _line_rep_sets(b: int, window: int):
    per = [[x for x in range(-window, window + 1) if x % b == r] for r in range(b)]
    return itertools.product(*per)


def grid_cscore(b: int, window: int, *, samples: int = 2000, seed: int = 0) -> GridReport:
    """Best C(X) found for (bZ)^2 inside Z^2 among product sets and their local perturbations.

    Product sets X1 x X2 have C = C(X1) C(X2), so the product optimum is the
    square of the one-dimensional optimum.  Perturbations move one point (all of
    them) or two points (``samples`` random pairs, seeded) of the best product sets
    to another representative of the same class inside the window.
    """
    if b > 5 or window > 2 * b:
        raise ValueError("grid exploration is limited to b <= 5 and window <= 2b")
    line = [(Fraction(b * b - integer_carry_count(xs), b * b), xs) for xs in _line_rep_sets(b, window)]
    line.sort(key=lambda t: (-t[0], max(map(abs, t[1])), t[1]))
    c1 = line[0][0]
    half = (b - 1) // 2
    bal = list(range(-half, b - half))
    product_balanced = grid_carry_score([(x, y) for x in bal for y in bal])

    tops = [xs for c, xs in line if c == c1]
    starts = [[(x, y) for x in xa for y in ya] for xa in tops[:3] for ya in tops[:3]]
    best, best_set, evaluated = c1 * c1, tuple(starts[0]), len(line)

    def moves(pt):
        x, y = pt
        return [(x + i * b, y + j * b) for i in range(-2 * window // b - 1, 2 * window // b + 2)
                for j in range(-2 * window // b - 1, 2 * window // b + 2)
                if (i, j) != (0, 0) and abs(x + i * b) <= window and abs(y + j * b) <= window]

    rng = random.Random(seed)
    for start in starts:
        for n, pt in enumerate(start):
            for new in moves(pt):
                cand = start[:n] + [new] + start[n + 1:]
                c = grid_carry_score(cand)
                evaluated += 1
                if c > best:
                    best, best_set = c, tuple(cand)
        for _ in range(samples):
            n1, n2 = rng.sample(range(len(start)), 2)
            m1, m2 = moves(start[n1]), moves(start[n2])
            if not m1 or not m2:
                continue
            cand = list(start)
            cand[n1] = rng.choice(m1)
            cand[n2] = rng.choice(m2)
            c = grid_carry_score(cand)
            evaluated += 1
            if c > best:
                best, best_set = c, tuple(cand)
    return GridReport(b, window, product_balanced, best, best_set, evaluated,
                      float(best) > SHAO_BOUND + 1e-9, SHAO_BOUND)
