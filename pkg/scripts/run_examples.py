"""Hodge numbers and chiral grades for the bundled examples."""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from toricchiral.chiral import ChiralRing
from toricchiral.cohomology import middle_cohomology
from toricchiral.io import dump_json, fan_from_json, load_json, polynomial_from_json

DATA = Path(__file__).resolve().parent.parent / "data"

EXAMPLES = [
    ("elliptic cubic", "p2", "cubic_curve.json"),
    ("quartic K3", "p3", "fermat.json"),
    ("K3 in resolved P(1,1,2,2)", "k3_p1122_resolved", "fermat.json"),
    ("K3 in P1 x resolved P(1,2,3)", "k3_p1_x_p123_resolved", "random_seed1.json"),
    ("Fermat quintic", "p4", "quintic_fermat.json"),
    ("Dwork quintic", "p4", "quintic_dwork.json"),
    ("resolved octic", "octic_resolved", "fermat.json"),
]


def run(name: str, fan_name: str, poly_file: str) -> dict:
    start = time.perf_counter()
    fan = fan_from_json(load_json(DATA / "fans" / f"{fan_name}.json"))
    f = polynomial_from_json(fan, load_json(DATA / "polys" / poly_file))
    h = middle_cohomology(fan, f)
    ring = ChiralRing(fan, f)
    return {
        "example": name,
        "hodge": [t for _, _, t in h.hodge_numbers()],
        "toric": h.toric,
        "chiral_grades": ring.dims(),
        "sigma_cones": [list(k) for k in sorted(ring.sigmas)],
        "seconds": round(time.perf_counter() - start, 2),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = ap.parse_args()
    rows = [run(*ex) for ex in EXAMPLES]
    if args.json:
        print(dump_json(rows), end="")
        return
    for r in rows:
        print(f"{r['example']:<30} hodge={r['hodge']} chiral={r['chiral_grades']} sigma={r['sigma_cones']} {r['seconds']}s")


if __name__ == "__main__":
    main()
