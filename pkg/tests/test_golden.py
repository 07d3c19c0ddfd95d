"""Regression against the stored quintic Yukawa table."""

import importlib.util
import json
from itertools import product

from conftest import ROOT


def load_script():
    spec = importlib.util.spec_from_file_location("make_golden", ROOT / "scripts" / "make_golden.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


GOLDEN = json.loads((ROOT / "tests" / "golden" / "quintic_yukawa.json").read_text())


def test_matches_golden():
    assert load_script().build() == GOLDEN


def test_fermat_count_oracle():
    # <x1..x5, b, c> = 1 exactly when b + c = (2,2,2,2,2) with all exponents at most 3
    halves = [e for e in product(range(3), repeat=5) if sum(e) == 5]
    expected = {tuple(sorted((e, tuple(2 - x for x in e)))) for e in halves}
    fermat = GOLDEN["fermat"]["triples"]
    assert len(fermat) == len(expected) == 26
    assert all(t["value"] == {"re": "1", "im": "0"} for t in fermat)


def test_dwork_values_real():
    assert all(t["value"]["im"] == "0" for t in GOLDEN["dwork"]["triples"])
