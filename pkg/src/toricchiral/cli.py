"""Command-line interface.

Every command prints (or writes to ``--out``) one deterministic JSON document
with the input hashes, the tool version and the conventions used. Exit codes:
0 success, 1 mathematical precondition failure, 2 input or parse failure.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import click

from . import __version__
from .chiral import ChiralRing
from .cohomology import middle_cohomology
from .coxring import Polynomial
from .divisors import chow_group, semiample_quotient
from .errors import GradeOverflow, InputError, MathError, UndeterminedProduct
from .fan import Fan
from .io import divisor_from_json, dump_json, fan_from_json, gauss_to_json, load_json, polynomial_from_json, sha256_file
from .jacobian import quasismooth_witness

CONVENTIONS = {
    "scalars": "exact; rationals as 'p/q', Gaussian rationals as {re, im}",
    "pivot_rule": "lex-largest monomial pivots first",
    "orientation": "sigma^perp basis extended to det +1; e^{d-1,d} = +mult(sigma)",
}


@dataclass
class JobConfig:
    command: str
    fan_path: Path
    poly_spec: str | None = None
    divisor_spec: str | None = None
    out: Path | None = None
    depth: int = 2
    kmax: int | None = None
    complete_via_pairing: bool = False
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def inputs(self) -> dict:
        out = {"fan": {"name": self.fan_path.name, "sha256": sha256_file(self.fan_path)}}
        for key, spec in (("poly", self.poly_spec), ("divisor", self.divisor_spec)):
            if spec is None:
                continue
            p = Path(spec)
            out[key] = {"name": p.name, "sha256": sha256_file(p)} if p.is_file() else {"inline": spec}
        return out


def _load_fan(cfg: JobConfig) -> Fan:
    return fan_from_json(load_json(cfg.fan_path))


def _load_poly(cfg: JobConfig, fan: Fan) -> Polynomial:
    spec = cfg.poly_spec
    if spec is None:
        raise InputError("--poly is required")
    if spec in ("fermat", "random"):
        obj: Any = {"generator": spec, "seed": cfg.seed}
    else:
        obj = load_json(spec)
    return polynomial_from_json(fan, obj, cfg.seed)


def _load_divisor(cfg: JobConfig, fan: Fan) -> tuple[int, ...]:
    spec = cfg.divisor_spec
    if spec is None:
        raise InputError("--divisor is required")
    if Path(spec).is_file():
        return divisor_from_json(fan, load_json(spec))
    try:
        coeffs = [int(x) for x in spec.split(",")]
    except ValueError as exc:
        raise InputError(f"bad inline divisor {spec!r}") from exc
    return divisor_from_json(fan, {"coefficients": coeffs})


def _emit(cfg: JobConfig, result: dict, conventions: dict | None = None) -> None:
    doc = {
        "command": cfg.command,
        "version": __version__,
        "inputs": cfg.inputs(),
        "seed": cfg.seed,
        "conventions": {**CONVENTIONS, **(conventions or {})},
        "result": result,
    }
    text = dump_json(doc)
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)


def _run(cfg: JobConfig, body: Callable[[JobConfig], tuple[dict, dict | None]]) -> None:
    try:
        result, conv = body(cfg)
        _emit(cfg, result, conv)
    except InputError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    except MathError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        sys.exit(1)


# --- command bodies ---------------------------------------------------------


def analyze_body(cfg: JobConfig):
    fan = _load_fan(cfg)
    rep = fan.report
    result = {"dim": fan.dim, "n_rays": fan.n, "n_max_cones": len(fan.max_cones), "simplicial": rep.simplicial, "complete": rep.complete}
    if rep.complete:
        g = chow_group(fan)
        result["chow"] = {"rank": g.rank, "torsion": list(g.torsion)}
    return result, None


def semiample_body(cfg: JobConfig):
    fan = _load_fan(cfg)
    a = _load_divisor(cfg, fan)
    return semiample_quotient(fan, a).to_json(), None


def _regularity(cfg: JobConfig, fan: Fan, f: Polynomial) -> tuple[str, dict | None]:
    if cfg.kmax is None:
        return "assumed", None
    w = quasismooth_witness(fan, f, cfg.kmax, regular=True)
    return ("certified" if w["certified"] else "assumed"), w


def hodge_body(cfg: JobConfig):
    fan = _load_fan(cfg)
    f = _load_poly(cfg, fan)
    reg, witness = _regularity(cfg, fan, f)
    h = middle_cohomology(fan, f, recurse_depth=cfg.depth, regularity=reg)
    out = h.to_json()
    if witness is not None:
        out["metadata"]["witness"] = witness
    return out, None


def chiral_body(cfg: JobConfig):
    fan = _load_fan(cfg)
    f = _load_poly(cfg, fan)
    reg, witness = _regularity(cfg, fan, f)
    ring = ChiralRing(fan, f, complete_via_pairing=cfg.complete_via_pairing)
    out = ring.to_json()
    conv = out.pop("conventions")
    out["regularity"] = reg
    if witness is not None:
        out["witness"] = witness
    return out, conv


def products_body(cfg: JobConfig):
    fan = _load_fan(cfg)
    f = _load_poly(cfg, fan)
    ring = ChiralRing(fan, f, complete_via_pairing=cfg.complete_via_pairing)
    idx = cfg.extra["indices"]
    n = len(ring.basis)
    if any(not 0 <= i < n for i in idx):
        raise InputError(f"basis indices must lie in [0, {n})")
    labels = [ring.basis[i].label() for i in idx]
    if len(idx) == 2:
        try:
            vec = ring.product(*idx)
            value: Any = {ring.basis[w].label(): gauss_to_json(c) for w, c in sorted(vec.items())}
            status = "determined"
        except GradeOverflow:
            value, status = {}, "grade overflow (zero by convention)"
        except UndeterminedProduct as exc:
            value, status = None, f"undetermined in grades {list(exc.degrees)}"
        return {"factors": labels, "product": value, "status": status}, ring.conventions()
    value = ring.triple_product(*idx)
    return {"factors": labels, "triple": gauss_to_json(value)}, ring.conventions()


def witness_body(cfg: JobConfig):
    fan = _load_fan(cfg)
    f = _load_poly(cfg, fan)
    k = cfg.kmax if cfg.kmax is not None else 8
    w = quasismooth_witness(fan, f, k, regular=cfg.extra.get("regular", False))
    w["status"] = "certified" if w["certified"] else "inconclusive"
    return w, None


# --- click wiring -----------------------------------------------------------

fan_opt = click.option("--fan", "fan_path", required=True, type=click.Path(path_type=Path), help="fan JSON file")
poly_opt = click.option("--poly", "poly_spec", help="polynomial JSON file, or 'fermat' / 'random'")
out_opt = click.option("--out", type=click.Path(path_type=Path), help="write JSON here instead of stdout")
seed_opt = click.option("--seed", type=int, default=0, show_default=True, help="seed for random polynomials")
kmax_opt = click.option("--kmax", type=int, help="certify regularity with witnesses up to this power")


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Toric hypersurface invariants from a fan and a Cox-ring polynomial."""


@main.command()
@fan_opt
@out_opt
def analyze(fan_path, out):
    """Validate a fan and summarize its Chow group."""
    _run(JobConfig("analyze", fan_path, out=out), analyze_body)


@main.command()
@fan_opt
@click.option("--divisor", "divisor_spec", required=True, help="divisor JSON file or inline '1,0,2'")
@out_opt
def semiample(fan_path, divisor_spec, out):
    """Quotient fan and ample divisor of a semiample divisor."""
    _run(JobConfig("semiample", fan_path, divisor_spec=divisor_spec, out=out), semiample_body)


@main.command()
@fan_opt
@poly_opt
@click.option("--depth", type=int, default=2, show_default=True, help="stratum recursion depth")
@kmax_opt
@seed_opt
@out_opt
def hodge(fan_path, poly_spec, depth, kmax, seed, out):
    """Hodge decomposition of the middle cohomology."""
    _run(JobConfig("hodge", fan_path, poly_spec, out=out, depth=depth, kmax=kmax, seed=seed), hodge_body)


@main.command()
@fan_opt
@poly_opt
@click.option("--complete-via-pairing", is_flag=True, help="solve undetermined products through the pairing")
@kmax_opt
@seed_opt
@out_opt
def chiral(fan_path, poly_spec, complete_via_pairing, kmax, seed, out):
    """Chiral ring basis, pairings and structure constants."""
    cfg = JobConfig("chiral", fan_path, poly_spec, out=out, kmax=kmax, seed=seed, complete_via_pairing=complete_via_pairing)
    _run(cfg, chiral_body)


@main.command()
@fan_opt
@poly_opt
@click.option("--complete-via-pairing", is_flag=True, help="solve undetermined products through the pairing")
@seed_opt
@out_opt
@click.argument("indices", nargs=-1, type=int, required=True)
def products(fan_path, poly_spec, complete_via_pairing, seed, out, indices):
    """Product of two basis vectors or triple product of three (by basis index)."""
    if len(indices) not in (2, 3):
        raise click.UsageError("give two or three basis indices")
    cfg = JobConfig(
        "products", fan_path, poly_spec, out=out, seed=seed,
        complete_via_pairing=complete_via_pairing, extra={"indices": list(indices)},
    )
    _run(cfg, products_body)


@main.command()
@fan_opt
@poly_opt
@kmax_opt
@click.option("--regular", is_flag=True, help="use x_i f_i instead of the partials")
@seed_opt
@out_opt
def witness(fan_path, poly_spec, kmax, regular, seed, out):
    """Quasismoothness (or regularity) certificate by ideal membership."""
    _run(JobConfig("witness", fan_path, poly_spec, out=out, kmax=kmax, seed=seed, extra={"regular": regular}), witness_body)


if __name__ == "__main__":
    main()
