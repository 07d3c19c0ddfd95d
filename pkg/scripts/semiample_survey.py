"""Survey random semiample divisors: Iitaka dimension, quotient size, normal-fan check."""

from __future__ import annotations

import argparse
import random
from collections import Counter
from pathlib import Path

from toricchiral.divisors import chow_group, is_semiample, normal_fan_of_polytope, semiample_quotient
from toricchiral.errors import NotCartier
from toricchiral.io import fan_from_json, load_json

DATA = Path(__file__).resolve().parent.parent / "data"
DEFAULT_FANS = ["p1xp1", "hirzebruch_f2", "p2", "k3_p1122_resolved", "k3_p1_x_p123_resolved", "octic_resolved"]


def survey(fan_name: str, count: int, seed: int, bound: int) -> dict:
    fan = fan_from_json(load_json(DATA / "fans" / f"{fan_name}.json"))
    group = chow_group(fan)
    rng = random.Random(seed)
    seen, kappas, mismatches, tries = set(), Counter(), 0, 0
    while len(seen) < count and tries < 50 * count:
        tries += 1
        a = tuple(rng.randint(-1, bound) for _ in range(fan.n))
        try:
            if not is_semiample(fan, a):
                continue
        except NotCartier:
            continue
        key = group.canonical(a)
        if key in seen:
            continue
        seen.add(key)
        an = semiample_quotient(fan, a)
        kappas[an.kappa] += 1
        if an.kappa:
            rays, cones = normal_fan_of_polytope(fan, a)
            qf = an.quotient_fan
            got = (set(qf.rays), {frozenset(qf.rays[k] for k in c.rays) for c in qf.max_cones})
            mismatches += got != (set(rays), set(cones))
    return {"fan": fan_name, "divisors": len(seen), "draws": tries, "kappa": dict(sorted(kappas.items())), "normal_fan_mismatches": mismatches}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fans", nargs="*", default=DEFAULT_FANS)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bound", type=int, default=3, help="coefficients drawn from [-1, bound]")
    args = ap.parse_args()
    for name in args.fans:
        r = survey(name, args.count, args.seed, args.bound)
        print(f"{r['fan']:<24} divisors={r['divisors']:<3} draws={r['draws']:<4} kappa={r['kappa']} mismatches={r['normal_fan_mismatches']}")


if __name__ == "__main__":
    main()
