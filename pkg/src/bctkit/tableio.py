"""CSV and JSON export of DDT/BCT tables.

CSV: one ``#`` metadata line, a header ``a\\b,0,1,...``, then one row per a.
JSON: metadata plus ``{"spectra": {a: [[value, multiplicity], ...]}}``.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from . import __version__
from .difftab import FULL_TABLE_MAX_N, BudgetExceeded, UniformityTable
from .gf2n import field_new
from .vecfun import FuncSpec


def _meta(t: UniformityTable) -> dict:
    f = t.func
    return {
        "kind": t.kind,
        "n": f.field.n,
        "modulus": f.field.modulus_hex,
        "d": f.d if f.is_power_map else "lut",
        "version": __version__,
    }


def to_csv(t: UniformityTable) -> str:
    if t.field.n > FULL_TABLE_MAX_N:
        raise BudgetExceeded(f"CSV needs the full table; n={t.field.n} exceeds {FULL_TABLE_MAX_N} (use JSON spectra)",
                             float(t.q) ** 2, float(1 << (2 * FULL_TABLE_MAX_N)))
    buf = io.StringIO()
    meta = _meta(t)
    buf.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a\\b", *range(t.q)])
    for a, row in t.iter_rows():
        w.writerow([a, *np.asarray(row).tolist()])
    return buf.getvalue()


def read_csv(path: str | Path) -> UniformityTable:
    """Inverse of :func:`to_csv`. A lookup-table function is not recoverable from a
    CSV, so the returned table carries a placeholder identity Lut in that case."""
    lines = Path(path).read_text().splitlines()
    meta = dict(kv.split("=", 1) for kv in lines[0].lstrip("# ").split())
    fld = field_new(int(meta["n"]), int(meta["modulus"], 16))
    rows = list(csv.reader(lines[1:]))[1:]
    full = np.array([[int(v) for v in r[1:]] for r in rows], dtype=np.uint32)
    if full.shape != (fld.q, fld.q):
        raise ValueError(f"expected a {fld.q}x{fld.q} table, got {full.shape}")
    if meta["d"] == "lut":
        func = FuncSpec(fld, table=tuple(range(fld.q)))
    else:
        func = FuncSpec(fld, d=int(meta["d"]))
    return UniformityTable(meta["kind"], func, zero_column=full[:, 0].astype(np.int64), full=full)


def to_json(t: UniformityTable) -> str:
    doc = _meta(t)
    doc["max_nontrivial"] = t.max_nontrivial
    doc["spectra"] = {str(a): [list(p) for p in t.row_spectrum(a)] for a in range(t.q)}
    return json.dumps(doc, indent=1)


def write(t: UniformityTable, fmt: str, out: str | Path | None) -> str:
    text = to_csv(t) if fmt == "csv" else to_json(t) + "\n"
    if out is not None:
        Path(out).write_text(text)
    return text
