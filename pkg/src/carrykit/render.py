"""Text, JSON and CSV renderers.

JSON keeps rationals exact as "num/den" strings; a float is only ever stored
under a key ending in ``_float``.  Rendering, parsing and rendering again gives
the same text.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from .carries import CarryTable, signed_carry_label
from .groups import CosetSystem, CyclicGroup

__all__ = ["jsonable", "render_json", "render_csv", "render_matrix", "matrix_order", "rep_label"]

FLOAT_SUFFIX = "_float"


def _key(key: str, value: Any) -> str:
    if isinstance(value, float) and not key.endswith(FLOAT_SUFFIX):
        return key + FLOAT_SUFFIX
    return key


def jsonable(obj: Any) -> Any:
    """Convert results into plain JSON data, keeping rationals exact."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re_float": obj.real, "im_float": obj.imag}
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            v = jsonable(v)
            out[_key(str(k), v)] = v
        return out
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return jsonable({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    if isinstance(obj, (set, frozenset)):
        return [jsonable(x) for x in sorted(obj)]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def render_json(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([str(x) if isinstance(x, Fraction) else x for x in row])
    return buf.getvalue()


def _signed_value(system: CosetSystem, x: int) -> int:
    g = system.group
    return g.signed(x) if isinstance(g, CyclicGroup) else x


def matrix_order(table: CarryTable) -> list[int]:
    """Coset ids in display order: by signed representative for cyclic groups, else by id."""
    system = table.system
    return sorted(range(system.index), key=lambda i: (_signed_value(system, table.reps[i]), i))


def rep_label(system: CosetSystem, x: int, ascii_only: bool = False) -> str:
    s = _signed_value(system, x)
    if s >= 0 or ascii_only:
        return str(s)
    return str(-s) + "̄"


def render_matrix(table: CarryTable, ascii_only: bool = False) -> str:
    """The carries matrix: row i, column j holds the carry of x_i + x_j."""
    system = table.system
    order = matrix_order(table)
    heads = [rep_label(system, table.reps[i], ascii_only) for i in order]
    cells = [[signed_carry_label(system, int(table.entries[i, j]), ascii_only) for j in order]
             for i in order]

    def width(s: str) -> int:
        return sum(1 for ch in s if ch != "̄")

    w = max(width(s) for s in heads + [c for row in cells for c in row])
    hw = max(width(s) for s in heads)

    def pad(s: str, n: int) -> str:
        return " " * (n - width(s)) + s

    lines = [" " * hw + " |" + "".join(" " + pad(h, w) for h in heads)]
    lines.append("-" * (hw + 1) + "+" + "-" * ((w + 1) * len(heads)))
    for h, row in zip(heads, cells):
        lines.append(pad(h, hw) + " |" + "".join(" " + pad(c, w) for c in row))
    return "\n".join(lines) + "\n"
