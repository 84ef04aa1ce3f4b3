"""Parsing of the small text specs used on the command line.

Groups: ``Z/9``, ``Z/5xZ/5`` (``×`` also accepted), ``table:PATH``.
Subgroups: ``mult:b`` (the b-th powers), ``gen:x,y`` (generated), or an element list.
Representatives: ``standard:b``, ``balanced:b``, an element list, or a file.
Element lists are comma/whitespace separated integers; ``a..b`` expands to a range.
"""

from __future__ import annotations

import os
import re

from .carries import balanced_reps, standard_reps
from .groups import (CosetSystem, FiniteGroup, GroupError, RepSet, coset_system, make_cyclic,
                     make_from_table, make_product, read_cayley_table)

__all__ = ["SpecError", "parse_group", "parse_elements", "parse_subgroup", "parse_reps", "read_elements"]


class SpecError(ValueError):
    """Invalid spec text; ``str()`` shows the offending position."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.message, self.text, self.pos = message, text, pos
        super().__init__(message)

    def __str__(self) -> str:
        if not self.text:
            return self.message
        return f"{self.message} at position {self.pos}\n  {self.text}\n  {' ' * self.pos}^"


_CYCLIC = re.compile(r"\s*Z/(\d+)\s*")


def parse_group(text: str) -> FiniteGroup:
    if text.startswith("table:"):
        path = text[len("table:"):]
        try:
            return make_from_table(read_cayley_table(path), label=text)
        except OSError as exc:
            raise SpecError(f"cannot read Cayley table: {exc}") from exc
    factors = []
    pos = 0
    while True:
        m = _CYCLIC.match(text, pos)
        if not m:
            raise SpecError("expected a factor like Z/9", text, pos)
        n = int(m.group(1))
        if n < 1:
            raise SpecError("modulus must be positive", text, m.start(1))
        factors.append(make_cyclic(n))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] not in "x×*":
            raise SpecError("expected 'x' between factors", text, pos)
        pos += 1
    group = factors[0]
    for f in factors[1:]:
        group = make_product(group, f)
    return group


_TOKEN = re.compile(r"-?\d+(?:\.\.-?\d+)?")


def parse_elements(text: str) -> list[int]:
    """Integers separated by commas or whitespace; ``a..b`` is the inclusive range."""
    out: list[int] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos] in ", \t\n{}[]":
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecError("expected an integer", text, pos)
        tok = m.group(0)
        if ".." in tok:
            lo, hi = tok.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(tok))
        pos = m.end()
    return out


def read_elements(spec: str) -> list[int]:
    """An element list given inline or as a path to a whitespace-separated file."""
    if spec.startswith("file:"):
        spec = spec[len("file:"):]
    elif not os.path.exists(spec):
        return parse_elements(spec)
    try:
        with open(spec) as fh:
            return parse_elements(fh.read())
    except OSError as exc:
        raise SpecError(f"cannot read element file: {exc}") from exc


def _reduce(group: FiniteGroup, xs: list[int]) -> list[int]:
    # negative ids are convenient for cyclic groups only
    if hasattr(group, "modulus"):
        return [x % group.modulus for x in xs]
    for x in xs:
        if x not in group:
            raise SpecError(f"{x} is not an element of {group.spec()}")
    return xs


def parse_subgroup(group: FiniteGroup, text: str) -> CosetSystem:
    if text.startswith("mult:"):
        try:
            b = int(text[5:])
        except ValueError:
            raise SpecError("mult: needs an integer", text, 5) from None
        h = {group.power(g, b) for g in group.elements()}
    elif text.startswith("gen:"):
        h = group.generated(_reduce(group, parse_elements(text[4:])))
    else:
        h = set(_reduce(group, read_elements(text)))
    try:
        return coset_system(group, h)
    except GroupError as exc:
        raise SpecError(f"invalid subgroup {text!r}: {exc}") from exc


def parse_reps(system: CosetSystem, text: str) -> RepSet:
    for kind, builder in (("standard:", standard_reps), ("balanced:", balanced_reps)):
        if text.startswith(kind):
            try:
                b = int(text[len(kind):])
            except ValueError:
                raise SpecError(f"{kind} needs an integer", text, len(kind)) from None
            if b != system.index:
                raise SpecError(f"base {b} does not match the subgroup index {system.index}", text, len(kind))
            try:
                return builder(system)
            except GroupError as exc:
                raise SpecError(str(exc)) from exc
    xs = _reduce(system.group, read_elements(text))
    try:
        return system.rep_set_from_elements(xs)
    except GroupError as exc:
        raise SpecError(f"invalid representatives: {exc}") from exc
