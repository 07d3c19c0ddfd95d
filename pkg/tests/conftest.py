"""Shared fixtures: the example fans in data/fans and small polynomial helpers."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from toricchiral.divisors import anticanonical, chow_group
from toricchiral.fan import Fan
from toricchiral.io import fan_from_json

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def load_fan(name: str) -> Fan:
    return fan_from_json(json.loads((DATA / "fans" / f"{name}.json").read_text()))


@pytest.fixture(scope="session")
def fans() -> dict[str, Fan]:
    names = [p.stem for p in (DATA / "fans").glob("*.json") if p.stem != "nonprimitive"]
    return {n: load_fan(n) for n in sorted(names)}


@pytest.fixture(scope="session")
def p2(fans):
    return fans["p2"]


@pytest.fixture(scope="session")
def p3(fans):
    return fans["p3"]


@pytest.fixture(scope="session")
def p4(fans):
    return fans["p4"]


@pytest.fixture(scope="session")
def octic(fans):
    return fans["octic_resolved"]


@pytest.fixture(scope="session")
def k3_resolved(fans):
    return fans["k3_p1122_resolved"]


def degree(fan: Fan, coeffs) -> object:
    return chow_group(fan).cls(tuple(coeffs))


def beta0(fan: Fan):
    return anticanonical(fan)


PROPERTY_FANS = ("p1xp1", "hirzebruch_f2", "p2", "k3_p1122_resolved", "octic_resolved")


def random_semiample_divisors(fan: Fan, count: int, seed: int, bound: int = 3) -> list[tuple[int, ...]]:
    """Distinct semiample Cartier divisors drawn by rejection from a seeded box."""
    import random

    from toricchiral.divisors import is_semiample
    from toricchiral.errors import NotCartier

    rng = random.Random(seed)
    out: list[tuple[int, ...]] = []
    seen = set()
    for _ in range(20000):
        a = tuple(rng.randint(-1, bound) for _ in range(fan.n))
        try:
            ok = is_semiample(fan, a)
        except NotCartier:
            continue
        key = chow_group(fan).canonical(a)
        if ok and key not in seen:
            seen.add(key)
            out.append(a)
            if len(out) == count:
                break
    return out


def quotient_cones_as_ray_sets(an) -> tuple[set, set]:
    qf = an.quotient_fan
    rays = set(qf.rays)
    cones = {frozenset(qf.rays[k] for k in c.rays) for c in qf.max_cones}
    return rays, cones


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    from test_acceptance import CRITERIA

    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when in ("call", "setup"):
                n = int(nodeid.split("test_criterion_")[1].split("_")[0])
                if status != "passed" or n not in outcomes:
                    outcomes[n] = "PASS" if status == "passed" else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, text in sorted(CRITERIA.items()):
        terminalreporter.write_line(f"criterion {n}: {outcomes.get(n, 'NOT RUN')}  ({text})")
