"""Regenerate the bundled knot table from the KnotInfo database.

Build-time only: needs ``database_knotinfo`` and ``sympy``, neither of which
the library imports.  Signatures are stored with positive knots positive
(KnotInfo uses the opposite sign).
"""
import json
import sys

import sympy as sp
from database_knotinfo import link_list

t, z = sp.symbols("t z")


def terms(text, var):
    if not text:
        return []
    expr = sp.expand(sp.sympify(text.replace("^", "**"), locals={"t": t, "z": z}))
    poly = sp.Poly(sp.expand(expr * var**64), var)
    return [[int(m[0]) - 64, int(c)] for m, c in sorted(zip(poly.monoms(), poly.coeffs()))]


def main(out, max_crossings=10):
    rows = []
    for k in link_list()[1:]:
        c = k.get("crossing_number", "")
        if not c.isdigit() or int(c) > max_crossings:
            continue
        pd = json.loads(k["pd_notation"]) if k["pd_notation"] else []
        rows.append({
            "name": k["name"],
            "pd": pd,
            "crossings": int(c),
            "alternating": k["alternating"] == "Y",
            "det": int(k["determinant"]) if int(c) else 1,
            "signature": -int(k["signature"]),
            "genus": int(k["three_genus"]),
            "conway": terms(k["conway_polynomial"], z),
            "jones": terms(k["jones_polynomial"], t),
        })
    with open(out, "w", encoding="utf-8") as fh:
        for r in rows:
            fh.write(json.dumps(r, separators=(",", ":")) + "\n")
    print(f"wrote {len(rows)} records to {out}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/knotcert/data/knots10.jsonl")
