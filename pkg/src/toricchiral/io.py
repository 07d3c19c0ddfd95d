"""JSON formats for fans, divisors, polynomials and exact scalars."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .divisors import chow_group
from .errors import InputError
from .fan import Cone, Fan
from .lattice import QQ_I, format_rational, parse_rational

__all__ = [
    "gauss_to_json",
    "gauss_from_json",
    "fan_from_json",
    "polynomial_from_json",
    "divisor_from_json",
    "load_json",
    "dump_json",
    "sha256_file",
]


def gauss_to_json(c) -> dict[str, str]:
    return {"re": format_rational(c.x), "im": format_rational(c.y)}


def gauss_from_json(obj: Any):
    try:
        if isinstance(obj, dict):
            return QQ_I(parse_rational(obj.get("re", "0")), parse_rational(obj.get("im", "0")))
        return QQ_I(parse_rational(obj), 0)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {obj!r}: {exc}") from exc


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        line = lines[exc.lineno - 1] if exc.lineno <= len(lines) else ""
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n  {line}") from exc


def dump_json(obj: Any) -> str:
    """Deterministic serialization (sorted keys, fixed separators, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def fan_from_json(obj: Any) -> Fan:
    try:
        rays = [tuple(int(x) for x in r) for r in obj["rays"]]
        cones = [Cone(tuple(int(k) for k in c)) for c in obj["max_cones"]]
        dim = int(obj["dim"]) if "dim" in obj else -1
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed fan JSON: {exc}") from exc
    return Fan(tuple(rays), tuple(cones), dim)


def divisor_from_json(fan: Fan, obj: Any) -> tuple[int, ...]:
    try:
        coeffs = tuple(int(x) for x in obj["coefficients"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed divisor JSON: {exc}") from exc
    if len(coeffs) != fan.n:
        raise InputError(f"divisor has {len(coeffs)} coefficients, fan has {fan.n} rays")
    return coeffs


def polynomial_from_json(fan: Fan, obj: Any, seed: int = 0):
    """Explicit terms, or a generator: {"generator": "fermat"|"random", "degree": ...}.

    A missing degree in generator mode means the anticanonical class.
    """
    from .coxring import Polynomial, fermat_polynomial, random_polynomial

    group = chow_group(fan)
    try:
        if "degree" in obj:
            deg = group.cls(divisor_from_json(fan, obj["degree"]))
        else:
            deg = group.cls((1,) * fan.n)
        gen = obj.get("generator")
        if gen == "fermat":
            return fermat_polynomial(fan, deg)
        if gen == "random":
            return random_polynomial(fan, deg, int(obj.get("seed", seed)))
        if gen is not None:
            raise InputError(f"unknown generator {gen!r}")
        terms = {}
        for t in obj["terms"]:
            mono = tuple(int(x) for x in t["exponents"])
            if len(mono) != fan.n:
                raise InputError(f"term {mono} has wrong length")
            terms[mono] = terms.get(mono, QQ_I(0, 0)) + gauss_from_json(t.get("coeff", "1"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed polynomial JSON: {exc}") from exc
    return Polynomial(fan, terms, deg)
