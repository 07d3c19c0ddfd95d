"""Regenerate tests/golden/quintic_yukawa.json.

Nonzero triple products <u, v, w> on the grade-1 chiral classes of the Fermat
and Dwork-type quintics, with u the class of x1 x2 x3 x4 x5 and (v, w) running
over all pairs. Review the diff before committing a new file.
"""

from __future__ import annotations

import argparse
from itertools import combinations_with_replacement
from pathlib import Path

from toricchiral.chiral import ChiralRing
from sympy import QQ_I

from toricchiral.io import dump_json, fan_from_json, gauss_to_json, load_json, polynomial_from_json

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
ONE = QQ_I(1, 0)
POLYS = {"fermat": "quintic_fermat.json", "dwork": "quintic_dwork.json"}


def yukawa_table(poly_file: str) -> dict:
    fan = fan_from_json(load_json(DATA / "fans" / "p4.json"))
    ring = ChiralRing(fan, polynomial_from_json(fan, load_json(DATA / "polys" / poly_file)))
    idx = ring.grades[1]
    # x1 x2 x3 x4 x5 in normal form; it is not standard for the Dwork quintic
    u = ring._gamma_vector(1, ring._nf_monomial(ring.gamma_piece(1), (1, 1, 1, 1, 1)))
    entries = []
    for b, c in combinations_with_replacement(idx, 2):
        value = ring.trace(ring.multiply(ring.multiply(u, {b: ONE}), {c: ONE}))
        if value:
            entries.append({"factors": [ring.basis[i].label() for i in (b, c)], "value": gauss_to_json(value)})
    return {
        "u": {ring.basis[i].label(): gauss_to_json(c) for i, c in sorted(u.items())},
        "top": ring.basis[ring.top_index].label(),
        "triples": entries,
    }


def build() -> dict:
    return {name: yukawa_table(f) for name, f in POLYS.items()}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "tests" / "golden" / "quintic_yukawa.json")
    args = ap.parse_args()
    args.out.write_text(dump_json(build()))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
