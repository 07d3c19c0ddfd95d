"""Chow-group grading, support functions, polytopes and semiample quotient fans."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import (
    DegreeNotMultipleOfD,
    LengthMismatch,
    MathError,
    NotCartier,
    NotSemiample,
)
from .fan import Cone, Fan, _pair, star_fan
from .lattice import (
    QQ,
    _fm_systems,
    integer_kernel,
    lattice_points_of_polyhedron,
    rational_rank_and_kernel,
    reduce_mod_hnf,
    row_hnf,
    smith_normal_form,
    solve_rational,
)

Vector = tuple[int, ...]


# --- Chow group -------------------------------------------------------------


class ChowGroup:
    """A_{d-1} = Z^n / {(<m, e_i>)_i : m in M}, with canonical forms via HNF."""

    def __init__(self, fan: Fan):
        self.fan = fan
        n, d = fan.n, fan.dim
        relations = [tuple(fan.rays[i][j] for i in range(n)) for j in range(d)]
        self.hnf = row_hnf(relations, n)
        snf = smith_normal_form(relations) if relations and n else None
        r = snf.rank if snf else 0
        self.rank = n - r
        self.torsion = tuple(x for x in (snf.nonzero if snf else ()) if x > 1)
        self._pivots = [next(j for j, a in enumerate(row) if a) for row in self.hnf]
        self._pivot_vals = [row[c] for row, c in zip(self.hnf, self._pivots)]

    def canonical(self, a: Sequence[int]) -> Vector:
        if len(a) != self.fan.n:
            raise LengthMismatch(f"expected {self.fan.n} coefficients, got {len(a)}")
        return reduce_mod_hnf(a, self.hnf)

    def coords(self, canon: Sequence[int]) -> Vector:
        """Free coordinates, then residues at torsion pivots."""
        pivset = set(self._pivots)
        free = [canon[j] for j in range(self.fan.n) if j not in pivset]
        tors = [canon[c] for c, p in zip(self._pivots, self._pivot_vals) if p > 1]
        return tuple(free + tors)

    def cls(self, a: Sequence[int]) -> "DivisorClass":
        a = tuple(int(x) for x in a)
        return DivisorClass(a, self.canonical(a), self)

    def zero(self) -> "DivisorClass":
        return self.cls((0,) * self.fan.n)


@lru_cache(maxsize=None)
def chow_group(fan: Fan) -> ChowGroup:
    return ChowGroup(fan)


@dataclass(frozen=True)
class DivisorClass:
    """A Weil class with a torus-invariant representative; equality by canonical form."""

    rep: Vector = field(compare=False)
    canon: Vector
    group: ChowGroup = field(compare=False, repr=False)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return self.group.cls(tuple(a + b for a, b in zip(self.rep, other.rep)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self.group.cls(tuple(a - b for a, b in zip(self.rep, other.rep)))

    def __neg__(self) -> "DivisorClass":
        return self.group.cls(tuple(-a for a in self.rep))

    def __mul__(self, k: int) -> "DivisorClass":
        return self.group.cls(tuple(k * a for a in self.rep))

    __rmul__ = __mul__

    @property
    def coords(self) -> Vector:
        return self.group.coords(self.canon)

    def is_zero(self) -> bool:
        return not any(self.canon)


def degree_of_monomial(fan: Fan, exponents: Sequence[int]) -> DivisorClass:
    if len(exponents) != fan.n:
        raise LengthMismatch(f"expected {fan.n} exponents, got {len(exponents)}")
    return chow_group(fan).cls(exponents)


def variable_degree(fan: Fan, i: int) -> DivisorClass:
    return chow_group(fan).cls(tuple(int(j == i) for j in range(fan.n)))


def anticanonical(fan: Fan) -> DivisorClass:
    """beta_0 = sum of deg(x_i)."""
    return chow_group(fan).cls((1,) * fan.n)


def shift(fan: Fan, a: Sequence[int], m: Sequence[int]) -> Vector:
    """Linearly equivalent representative a + div(chi^m)."""
    return tuple(ai + _pair(m, e) for ai, e in zip(a, fan.rays))


# --- polytope ---------------------------------------------------------------


def polytope_inequalities(fan: Fan, a: Sequence[int]) -> list[tuple[Vector, int]]:
    """Delta_a = {m : <m, e_i> >= -a_i}."""
    return [(e, -ai) for e, ai in zip(fan.rays, a)]


def lattice_points(fan: Fan, a: Sequence[int]) -> list[Vector]:
    if fan.dim == 0:
        return [()]
    return lattice_points_of_polyhedron(polytope_inequalities(fan, a))


def polytope_vertices(fan: Fan, a: Sequence[int]) -> list[tuple]:
    """Vertices of Delta_a by intersecting d-tuples of facet hyperplanes."""
    d = fan.dim
    if d == 0:
        return [()]
    found = set()
    for idx in combinations(range(fan.n), d):
        rows = [fan.rays[i] for i in idx]
        rank, _ = rational_rank_and_kernel(rows)
        if rank < d:
            continue
        m = solve_rational(rows, [-a[i] for i in idx])
        if m is None:
            continue
        if all(sum(x * y for x, y in zip(m, e)) >= -ai for e, ai in zip(fan.rays, a)):
            found.add(tuple(m))
    return sorted(found)


@dataclass(frozen=True)
class SupportFunctionData:
    """m_sigma per maximal cone, with <m_sigma, e_i> = -a_i on sigma."""

    m: dict[Cone, Vector]

    def values(self) -> list[Vector]:
        return [self.m[c] for c in sorted(self.m)]


def cartier_data(fan: Fan, a: Sequence[int]) -> SupportFunctionData:
    if len(a) != fan.n:
        raise LengthMismatch(f"expected {fan.n} coefficients, got {len(a)}")
    out = {}
    for c in fan.max_cones:
        rows = fan.generators(c)
        if not rows:
            out[c] = ()
            continue
        sol = solve_rational(rows, [-a[i] for i in c.rays])
        if sol is None:
            raise NotCartier(f"no solution on cone {c.rays}")
        if any(x.denominator != 1 for x in sol):
            raise NotCartier(f"support function is not integral on cone {c.rays}")
        out[c] = tuple(int(x) for x in sol)
    return SupportFunctionData(out)


def is_semiample(fan: Fan, a: Sequence[int]) -> bool:
    data = cartier_data(fan, a)
    return all(
        _pair(m, e) >= -ai for m in data.m.values() for e, ai in zip(fan.rays, a)
    )


def iitaka_dim(fan: Fan, a: Sequence[int]) -> int:
    data = cartier_data(fan, a)
    if not all(_pair(m, e) >= -ai for m in data.m.values() for e, ai in zip(fan.rays, a)):
        raise NotSemiample("iitaka dimension is only defined for semiample classes")
    verts = sorted(set(data.m.values()))
    if len(verts) <= 1:
        return 0
    diffs = [tuple(x - y for x, y in zip(v, verts[0])) for v in verts[1:]]
    return rational_rank_and_kernel(diffs)[0]


# --- semiample quotient -----------------------------------------------------


def _affine_dim(points: Sequence[Sequence[int]]) -> int:
    if len(points) <= 1:
        return 0
    diffs = [tuple(x - y for x, y in zip(p, points[0])) for p in points[1:]]
    return rational_rank_and_kernel(diffs)[0]


def _primitive(v: Sequence[int]) -> Vector:
    g = math.gcd(*v)
    return tuple(x // g for x in v)


def extreme_rays(gens: Sequence[Sequence[int]]) -> list[Vector]:
    """Primitive extreme rays of cone(gens), exact via Fourier-Motzkin.

    A direction g is extreme iff some functional vanishes on g and is >= 1 on
    every generator not parallel to g.
    """
    dirs = sorted({_primitive(g) for g in gens if any(g)})
    out = []
    for g in dirs:
        ineqs = [(tuple(QQ(x) for x in g), QQ(0)), (tuple(QQ(-x) for x in g), QQ(0))]
        for h in dirs:
            if h != g:
                ineqs.append((tuple(QQ(x) for x in h), QQ(1)))
        if _fm_systems(ineqs, len(g)) is not None:
            out.append(g)
    return out


@dataclass(frozen=True)
class SemiampleAnalysis:
    """The quotient fan Sigma_D of a semiample divisor and its bookkeeping.

    ``vertices`` are the distinct m_sigma (sorted); ``md_basis`` spans
    M_D = N'^perp; ``quotient_fan`` lives in N_D = Z^kappa with coordinates
    v -> (<u, v>)_{u in md_basis}; ``quotient_divisor`` is the ample divisor
    on it whose polytope is Delta_D translated by -vertices[0].
    """

    fan: Fan
    divisor: Vector
    kappa: int
    support: SupportFunctionData
    vertices: tuple[Vector, ...]
    n_prime: tuple[Vector, ...]
    md_basis: tuple[Vector, ...]
    quotient_fan: Fan
    quotient_divisor: Vector
    cone_map: dict[tuple[int, ...], tuple[int, ...]]
    ray_status: tuple[bool, ...]
    ray_map: tuple[int | None, ...]
    glued: dict[Vector, tuple[Cone, ...]]

    def project(self, v: Sequence[int]) -> Vector:
        return tuple(_pair(u, v) for u in self.md_basis)

    def md_coords(self, m: Sequence[int]) -> Vector:
        """Coordinates in md_basis of a point of M_D."""
        return _md(self.md_basis, tuple(m), self.fan.dim)

    def sigma_0(self, c: Cone | Sequence[int]) -> tuple[int, ...]:
        key = c.rays if isinstance(c, Cone) else tuple(sorted(c))
        return self.cone_map[key]

    def to_json(self) -> dict:
        return {
            "iitaka_dim": self.kappa,
            "vertices": [list(v) for v in self.vertices],
            "n_prime": [list(v) for v in self.n_prime],
            "md_basis": [list(v) for v in self.md_basis],
            "quotient_fan": {
                "rays": [list(r) for r in self.quotient_fan.rays],
                "max_cones": [list(c.rays) for c in self.quotient_fan.max_cones],
            },
            "quotient_divisor": list(self.quotient_divisor),
            "ray_status": list(self.ray_status),
            "ray_map": list(self.ray_map),
            "cone_map": [[list(k), list(v)] for k, v in sorted(self.cone_map.items())],
        }


def semiample_quotient(fan: Fan, a: Sequence[int]) -> SemiampleAnalysis:
    a = tuple(int(x) for x in a)
    data = cartier_data(fan, a)
    if not all(_pair(m, e) >= -ai for m in data.m.values() for e, ai in zip(fan.rays, a)):
        raise NotSemiample("support function is not convex")
    d = fan.dim
    verts = tuple(sorted(set(data.m.values())))
    m0 = verts[0]
    diffs = [tuple(x - y for x, y in zip(v, m0)) for v in verts[1:]]
    if diffs:
        n_prime = tuple(integer_kernel(diffs, d))
    else:
        n_prime = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    if n_prime:
        md_basis = tuple(integer_kernel(n_prime, d))
    else:
        md_basis = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    kappa = len(md_basis)

    def proj(v):
        return tuple(_pair(u, v) for u in md_basis)

    def face_of(v: Sequence[int]) -> tuple[Vector, ...]:
        vals = [_pair(m, v) for m in verts]
        lo = min(vals)
        return tuple(m for m, x in zip(verts, vals) if x == lo)

    # Sigma_D rays: facets F(rho_k); keyed by vertex set
    facets: dict[tuple[Vector, ...], Vector] = {}
    facet_order: list[tuple[Vector, ...]] = []
    ray_face = []
    for k, e in enumerate(fan.rays):
        face = face_of(e)
        ray_face.append(face)
        if kappa > 0 and _affine_dim(face) == kappa - 1:
            u = _primitive(proj(e))
            if face in facets:
                if facets[face] != u:
                    raise MathError("two rays define the same facet with different normals")
            else:
                facets[face] = u
                facet_order.append(face)
    qrays = [facets[f] for f in facet_order]
    ray_map = tuple(facet_order.index(f) if f in facets else None for f in ray_face)
    ray_status = tuple(x is not None for x in ray_map)

    # normal fan cones per vertex vs glued cones
    normal_cones = []
    glued: dict[Vector, tuple[Cone, ...]] = {}
    for v in verts:
        idx = tuple(j for j, f in enumerate(facet_order) if v in f)
        normal_cones.append(Cone(idx))
        group = tuple(c for c in fan.max_cones if data.m[c] == v)
        glued[v] = group
        if kappa == 0:
            continue
        gens = [proj(fan.rays[k]) for c in group for k in c.rays]
        ext = set(extreme_rays(gens))
        if ext != {qrays[j] for j in idx}:
            raise MathError("glued quotient cone differs from the normal cone of Delta_D")
    if kappa == 0:
        qfan = Fan.point()
    else:
        qfan = Fan(tuple(qrays), tuple(normal_cones), kappa)

    cone_map = {}
    for k in range(d + 1):
        for c in fan.cones(k):
            interior = [sum(col) for col in zip(*fan.generators(c))] if c.rays else [0] * d
            face = face_of(interior)
            cone_map[c.rays] = tuple(j for j, f in enumerate(facet_order) if set(face) <= set(f))

    vcoords = [_md(md_basis, tuple(x - y for x, y in zip(v, m0)), d) for v in verts]
    qdiv = tuple(-min(_pair(c, u) for c in vcoords) for u in qrays)
    return SemiampleAnalysis(
        fan, a, kappa, data, verts, n_prime, md_basis, qfan, qdiv, cone_map, ray_status, ray_map, glued
    )


def _md(md_basis, m, d) -> Vector:
    if not md_basis:
        return ()
    cols = [[u[i] for u in md_basis] for i in range(d)]
    sol = solve_rational(cols, list(m))
    if sol is None or any(x.denominator != 1 for x in sol):
        raise DegreeNotMultipleOfD("point outside M_D")
    return tuple(int(x) for x in sol)


def normal_fan_of_polytope(fan: Fan, a: Sequence[int]) -> tuple[list[Vector], list[frozenset[Vector]]]:
    """Independent oracle: normal fan of Delta_a from vertex enumeration.

    Works in the affine hull of Delta_a; returns (rays, cones as ray sets) in
    the coordinates of the same M_D basis used by ``semiample_quotient``.
    """
    d = fan.dim
    verts = polytope_vertices(fan, a)
    if any(x.denominator != 1 for v in verts for x in v):
        raise NotCartier("polytope has non-integral vertices")
    verts = sorted(tuple(int(x) for x in v) for v in verts)
    m0 = verts[0]
    diffs = [tuple(x - y for x, y in zip(v, m0)) for v in verts[1:]]
    if not diffs:
        return [], [frozenset()]
    n_prime = integer_kernel(diffs, d)
    md_basis = integer_kernel(n_prime, d) if n_prime else [tuple(int(i == j) for j in range(d)) for i in range(d)]
    kappa = len(md_basis)
    coords = [_md(md_basis, tuple(x - y for x, y in zip(v, m0)), d) for v in verts]
    # facet normals: primitive functionals on Z^kappa tight on kappa-1 independent vertices
    normals = set()
    for sub in combinations(range(len(coords)), kappa):
        pts = [coords[i] for i in sub]
        dif = [tuple(x - y for x, y in zip(p, pts[0])) for p in pts[1:]]
        if kappa == 1:
            cand = [(1,), (-1,)]
        else:
            r, ker = rational_rank_and_kernel(dif)
            if r != kappa - 1:
                continue
            w = ker[0]
            den = 1
            for x in w:
                den = den * x.denominator // math.gcd(den, x.denominator)
            w = _primitive([int(x * den) for x in w])
            cand = [w, tuple(-x for x in w)]
        for w in cand:
            vals = [sum(x * y for x, y in zip(c, w)) for c in coords]
            lo = min(vals)
            tight = [c for c, x in zip(coords, vals) if x == lo]
            if _affine_dim(tight) == kappa - 1:
                normals.add(tuple(w))
    rays = sorted(normals)
    cones = []
    for c in coords:
        cone = set()
        for w in rays:
            vals = [sum(x * y for x, y in zip(cc, w)) for cc in coords]
            if sum(x * y for x, y in zip(c, w)) == min(vals):
                cone.add(w)
        cones.append(frozenset(cone))
    return rays, cones


def pushforward_monomial(analysis: SemiampleAnalysis, exponents: Sequence[int]) -> Vector:
    """Monomial of S(Sigma_D) at the same lattice point of p*Delta_D."""
    fan = analysis.fan
    if len(exponents) != fan.n:
        raise LengthMismatch(f"expected {fan.n} exponents")
    a = analysis.divisor
    d = fan.dim
    if analysis.kappa == 0:
        if any(exponents):
            raise DegreeNotMultipleOfD("only constants have degree p[D] when D is trivial")
        return ()
    # unknowns (p, m): exponents = p*a + <m, e>
    rows = [[ai] + list(e) for ai, e in zip(a, fan.rays)]
    sol = solve_rational(rows, list(exponents))
    if sol is None:
        raise DegreeNotMultipleOfD("exponents are not of degree p[D]")
    p, m = sol[0], sol[1:]
    if p.denominator != 1 or p < 0 or any(x.denominator != 1 for x in m):
        raise DegreeNotMultipleOfD("exponents are not of degree p[D] for integral p >= 0")
    p = int(p)
    m = tuple(int(x) for x in m)
    rel = tuple(x - p * y for x, y in zip(m, analysis.vertices[0]))
    c = _md(analysis.md_basis, rel, d)
    out = tuple(p * aj + _pair(c, u) for aj, u in zip(analysis.quotient_divisor, analysis.quotient_fan.rays))
    if any(x < 0 for x in out):
        raise DegreeNotMultipleOfD("lattice point outside p*Delta_D")
    return out


def restrict_divisor(fan: Fan, c: Cone | Sequence[int], a: Sequence[int]) -> Vector:
    """Restriction of a Cartier divisor to V(c), on the star fan's rays.

    Uses the representative vanishing on a maximal cone containing c, then
    scales the coefficients of neighbouring rays by mult(c)/mult(gamma').
    """
    c = c if isinstance(c, Cone) else Cone(tuple(c))
    data = cartier_data(fan, a)
    top = fan.max_cones_containing(c)[0]
    a2 = shift(fan, a, data.m[top])
    st = star_fan(fan, c)
    out = []
    for k, sc in zip(st.ray_of, st.scale):
        x = a2[k] * sc
        if x.denominator != 1:
            raise NotCartier("restricted coefficient is not integral")
        out.append(int(x))
    return tuple(out)
