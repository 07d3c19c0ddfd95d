"""Toric cohomology from the Stanley-Reisner presentation and Hodge assembly.

The middle cohomology of a big and nef regular hypersurface X in P_Sigma is
assembled from graded pieces: a polynomial part R1(f), one sigma-part per
interior ray of each 2-cone of Sigma_X, the toric part H*(P)/Ann([X]), and a
stratum part supported on codimension-two torus orbits (zero when d <= 4).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .coxring import Polynomial, beta1, restrict_to_star
from .divisors import (
    SemiampleAnalysis,
    anticanonical,
    is_semiample,
    pushforward_monomial,
    semiample_quotient,
)
from .errors import FanNotComplete, NotBigAndNef, NotSemiample, RecursionDepthExceeded
from .fan import Cone, Fan, SigmaOrdering, order_rays_in_2cone
from .jacobian import JacobianContext
from .lattice import QQ, SparseEchelon
from .divisors import chow_group

# --- toric cohomology -------------------------------------------------------


@dataclass
class CohomRingPiece:
    """Degree-k part of Q[D_1..D_n]/(P(Sigma) + SR(Sigma))."""

    k: int
    monomials: tuple[tuple[int, ...], ...]
    relations: SparseEchelon
    index: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.monomials) - self.relations.rank

    def quotient_monomials(self) -> list[tuple[int, ...]]:
        n = len(self.monomials)
        return [self.monomials[n - 1 - c] for c in self.relations.non_pivots()]

    def reduce(self, vec: dict[tuple[int, ...], object]) -> dict[int, object]:
        n = len(self.monomials)
        cols = {}
        for m, c in vec.items():
            if m in self.index:
                cols[n - 1 - self.index[m]] = c
        return self.relations.reduce(cols)


class ToricCohomology:
    """H*(P_Sigma) for a complete simplicial fan."""

    def __init__(self, fan: Fan):
        if not fan.report.complete:
            raise FanNotComplete("toric cohomology needs a complete simplicial fan")
        self.fan = fan
        self._pieces: dict[int, CohomRingPiece] = {}

    def _sr_free(self, k: int) -> list[tuple[int, ...]]:
        n = self.fan.n
        out = []
        for combo in combinations_with_replacement(range(n), k):
            if self.fan.is_cone(sorted(set(combo))):
                e = [0] * n
                for i in combo:
                    e[i] += 1
                out.append(tuple(e))
        return sorted(out)

    def piece(self, k: int) -> CohomRingPiece:
        if k in self._pieces:
            return self._pieces[k]
        fan = self.fan
        monos = tuple(self._sr_free(k))
        index = {m: i for i, m in enumerate(monos)}
        n = len(monos)
        rows = []
        if k > 0:
            lower = self._sr_free(k - 1)
            for j in range(fan.dim):
                lin = [(i, fan.rays[i][j]) for i in range(fan.n) if fan.rays[i][j]]
                for m in lower:
                    row = {}
                    for i, c in lin:
                        mm = list(m)
                        mm[i] += 1
                        mm = tuple(mm)
                        if mm in index:
                            col = n - 1 - index[mm]
                            row[col] = row.get(col, 0) + c
                    row = {c: QQ(v) for c, v in row.items() if v}
                    if row:
                        rows.append(row)
        piece = CohomRingPiece(k, monos, SparseEchelon(rows, n), index)
        self._pieces[k] = piece
        return piece

    def dims(self, max_degree: int | None = None) -> list[int]:
        top = self.fan.dim if max_degree is None else max_degree
        return [self.piece(k).dim for k in range(top + 1)]

    def multiplication_rank(self, divisor: Sequence[int], k: int) -> int:
        """Rank of cup with sum a_i D_i from H^{2k} to H^{2k+2}."""
        src = self.piece(k)
        dst = self.piece(k + 1)
        rows = []
        for m in src.quotient_monomials():
            vec: dict = {}
            for i, a in enumerate(divisor):
                if a:
                    mm = list(m)
                    mm[i] += 1
                    mm = tuple(mm)
                    vec[mm] = vec.get(mm, 0) + a
            red = dst.reduce({mm: QQ(v) for mm, v in vec.items() if v})
            if red:
                rows.append(red)
        return SparseEchelon(rows, len(dst.monomials)).rank


def toric_cohomology_dims(fan: Fan, max_degree: int | None = None) -> list[int]:
    return ToricCohomology(fan).dims(max_degree)


def toric_part_of_hypersurface(fan: Fan, beta_rep: Sequence[int]) -> list[int]:
    """dim H^{2k}_toric(X) for k = 0..d-1, as ranks of cup-by-[X]."""
    if not is_semiample(fan, beta_rep):
        raise NotSemiample("toric part requires a semiample class")
    tc = ToricCohomology(fan)
    return [tc.multiplication_rank(beta_rep, k) for k in range(fan.dim)]


# --- Sigma_X census ---------------------------------------------------------


@dataclass(frozen=True)
class SigmaCone:
    """A 2-cone of Sigma_X with the Sigma-rays inside it, in order."""

    boundary: tuple[int, int]
    ordering: SigmaOrdering

    @property
    def n(self) -> int:
        return self.ordering.n_interior

    @property
    def rays(self) -> tuple[int, ...]:
        return tuple(sorted(self.ordering.sequence))

    def label(self) -> str:
        return f"[{self.boundary[0]},{self.boundary[1]}]"


@dataclass(frozen=True)
class SigmaXData:
    analysis: SemiampleAnalysis
    cones: tuple[SigmaCone, ...]

    def with_interior(self) -> list[SigmaCone]:
        return [c for c in self.cones if c.n > 0]

    def sigma_of_ray(self, k: int) -> SigmaCone | None:
        for c in self.cones:
            if k in c.ordering.interior:
                return c
        return None


def sigma_X_data(fan: Fan, beta_rep: Sequence[int]) -> SigmaXData:
    an = semiample_quotient(fan, beta_rep)
    if an.kappa != fan.dim:
        raise NotBigAndNef(f"class has Iitaka dimension {an.kappa} < {fan.dim}")
    seen = set()
    cones = []
    for tau in fan.cones(2):
        s0 = an.cone_map[tau.rays]
        if len(s0) != 2 or s0 in seen:
            continue
        seen.add(s0)
        ks = an.ray_map.index(s0[0])
        kt = an.ray_map.index(s0[1])
        cones.append(SigmaCone((ks, kt), order_rays_in_2cone(fan, ks, kt)))
    cones.sort(key=lambda c: c.boundary)
    return SigmaXData(an, tuple(cones))


# --- Hodge assembly ---------------------------------------------------------


@dataclass(frozen=True)
class HodgeSummand:
    label: str
    kind: str
    dim: int | None
    provenance: str


@dataclass
class HodgeDecomposition:
    d: int
    summands: dict[int, list[HodgeSummand]]
    toric: list[int]
    metadata: dict

    def h(self, p: int, q: int) -> int | None:
        if p + q != self.d - 1:
            raise ValueError("only the middle cohomology is assembled")
        dims = [s.dim for s in self.summands[q]]
        return None if any(x is None for x in dims) else sum(dims)

    def hodge_numbers(self) -> list[tuple[int, int, int | None]]:
        return [(self.d - 1 - q, q, self.h(self.d - 1 - q, q)) for q in range(self.d)]

    def is_symmetric(self) -> bool:
        return all(self.h(p, q) == self.h(q, p) for p, q, _ in self.hodge_numbers())

    def to_json(self) -> dict:
        return {
            "hodge": [
                {
                    "p": self.d - 1 - q,
                    "q": q,
                    "total": self.h(self.d - 1 - q, q),
                    "summands": [{"label": s.label, "dim": s.dim} for s in self.summands[q]],
                }
                for q in range(self.d)
            ],
            "toric": self.toric,
            "metadata": self.metadata,
        }


def _pushforward_poly(an: SemiampleAnalysis, p: Polynomial) -> Polynomial:
    qfan = an.quotient_fan
    terms = {}
    for m, c in p.terms.items():
        key = pushforward_monomial(an, m)
        terms[key] = terms.get(key, 0) + c
    deg = None
    if not terms:
        deg = chow_group(qfan).cls(an.quotient_divisor)
    return Polynomial(qfan, terms, deg)


def _sigma_part_threefold(fan: Fan, f: Polynomial, sx: SigmaXData, sc: SigmaCone, q: int) -> int:
    """dim R1(f_sigma)_{q beta^sigma - beta0^sigma} on V(sigma) of Sigma_X."""
    an = sx.analysis
    qfan = an.quotient_fan
    if qfan.report.simplicial:
        fx = _pushforward_poly(an, f)
        sigma = Cone((an.ray_map[sc.boundary[0]], an.ray_map[sc.boundary[1]]))
    else:
        # the sub-cone sigma' = cone(l0, l1) of Sigma has the same restriction
        fx = f
        qfan = fan
        sigma = Cone(sc.ordering.sequence[:2])
    res = restrict_to_star(qfan, sigma, fx)
    g = res.polynomial
    sfan = res.star.fan
    ctx = JacobianContext(sfan, g)
    return ctx.R1(q * g.degree - anticanonical(sfan)).dim


def _residue_dim(fan: Fan, f: Polynomial, a: int, b: int, depth: int) -> int:
    """Best-effort dim H_res^{a,b} of the hypersurface f = 0 in P_fan.

    Top stratum term when a + b = kappa - 1 (via the pushforward to Sigma_D),
    plus Gysin contributions from the rays, recursing up to ``depth``.
    """
    if a < 0 or b < 0 or fan.dim == 0 or not f:
        return 0
    an = semiample_quotient(fan, f.degree.canon)
    total = 0
    if an.kappa >= 1 and a + b == an.kappa - 1:
        g = _pushforward_poly(an, f)
        ctx = JacobianContext(an.quotient_fan, g)
        total += ctx.R1((b + 1) * g.degree - anticanonical(an.quotient_fan)).dim
    if a >= 1 and b >= 1:
        if depth <= 0:
            raise RecursionDepthExceeded("stratum recursion exhausted")
        for k in range(fan.n):
            res = restrict_to_star(fan, (k,), f)
            if isinstance(res.polynomial, Polynomial):
                total += _residue_dim(res.star.fan, res.polynomial, a - 1, b - 1, depth - 1)
    return total


def middle_cohomology(
    fan: Fan,
    f: Polynomial,
    recurse_depth: int = 2,
    method: str = "general",
    regularity: str = "assumed",
) -> HodgeDecomposition:
    """Hodge numbers h^{d-1-q, q} of the middle cohomology of X = {f = 0}.

    ``method="general"`` uses R^sigma_1(f) pieces; ``method="threefold"`` uses
    R1(f_sigma) on V(sigma) of Sigma_X (same dimensions by restriction).
    """
    d = fan.dim
    beta = f.degree
    if not is_semiample(fan, beta.canon):
        raise NotBigAndNef("degree of f is not semiample")
    sx = sigma_X_data(fan, beta.canon)
    ctx = JacobianContext(fan, f)
    beta0 = anticanonical(fan)
    toric = toric_part_of_hypersurface(fan, beta.canon)
    summands: dict[int, list[HodgeSummand]] = {}
    best_effort = d >= 5
    for q in range(d):
        p = d - 1 - q
        items = []
        piece = ctx.R1((q + 1) * beta - beta0)
        items.append(HodgeSummand(f"Polynomial(q={q})", "polynomial", piece.dim, f"R1 degree {list(piece.degree.canon)}"))
        for sc in sx.with_interior():
            if method == "general":
                sp = ctx.Rsigma1(sc.rays, q * beta - beta0 + beta1(fan, sc.ordering))
                dim, prov = sp.dim, f"Rsigma1 sigma={sc.label()} degree {list(sp.degree.canon)}"
            else:
                dim, prov = _sigma_part_threefold(fan, f, sx, sc, q), f"R1(f_sigma) on V(sigma={sc.label()})"
            for i in sc.ordering.interior:
                items.append(HodgeSummand(f"SigmaPart(sigma={sc.label()},ray={i})", "sigma", dim, prov))
        if 2 * p == d - 1:
            items.append(HodgeSummand(f"Toric({p},{q})", "toric", toric[p], "rank of cup with [X]"))
        if d <= 4 or p < 2 or q < 2:
            items.append(HodgeSummand("Stratum", "stratum", 0, "vanishes in this bidegree"))
        else:
            try:
                c = 0
                for tau in fan.cones(2):
                    res = restrict_to_star(fan, tau, f)
                    if isinstance(res.polynomial, Polynomial):
                        c += _residue_dim(res.star.fan, res.polynomial, p - 2, q - 2, recurse_depth)
                items.append(HodgeSummand("Stratum", "stratum", c, "best-effort sum over codim-2 orbits"))
            except RecursionDepthExceeded:
                items.append(HodgeSummand("Stratum", "stratum", None, "unknown: recursion depth exceeded"))
        summands[q] = items
    meta = {
        "d": d,
        "degree": list(beta.rep),
        "method": method,
        "regularity": regularity,
        "sigma_cones": [
            {"boundary": list(sc.boundary), "sequence": list(sc.ordering.sequence), "n": sc.n}
            for sc in sx.cones
            if sc.n > 0
        ],
        "stratum": "best-effort" if best_effort else "exact (vanishes for d <= 4)",
    }
    return HodgeDecomposition(d, summands, toric, meta)
