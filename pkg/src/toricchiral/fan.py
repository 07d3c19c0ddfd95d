"""Fans, cone multiplicities, completeness checks, ray orderings and star fans."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .errors import ConeNotInFan, MalformedFan, NonSimplicialCone, RayNotInCone
from .lattice import (
    QQ,
    _fm_systems,
    complete_basis,
    det,
    integer_kernel,
    rational_rank_and_kernel,
    smith_normal_form,
    solve_rational,
)

Vector = tuple[int, ...]


def _pair(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True, order=True)
class Cone:
    """A cone given by sorted indices into the parent fan's ray list."""

    rays: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(sorted(self.rays)))
        if len(set(self.rays)) != len(self.rays):
            raise MalformedFan(f"repeated ray index in cone {self.rays}")

    @property
    def dim(self) -> int:
        return len(self.rays)

    def __contains__(self, k: int) -> bool:
        return k in self.rays

    def issubset(self, other: "Cone") -> bool:
        return set(self.rays) <= set(other.rays)


@dataclass(frozen=True)
class FanReport:
    simplicial: bool
    complete: bool


@dataclass(frozen=True)
class Fan:
    """Rays (primitive integer vectors) and maximal cones in N = Z^d."""

    rays: tuple[Vector, ...]
    max_cones: tuple[Cone, ...]
    dim: int = -1

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted(c if isinstance(c, Cone) else Cone(tuple(c)) for c in self.max_cones))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.dim < 0:
            if not rays:
                raise MalformedFan("cannot infer the dimension of a fan without rays")
            object.__setattr__(self, "dim", len(rays[0]))
        for r in rays:
            if len(r) != self.dim:
                raise MalformedFan(f"ray {r} has wrong length")
            if math.gcd(*r) != 1:
                raise MalformedFan(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise MalformedFan("duplicate rays")
        for c in cones:
            for k in c.rays:
                if not 0 <= k < len(rays):
                    raise MalformedFan(f"cone {c.rays} references missing ray {k}")

    @classmethod
    def point(cls) -> "Fan":
        """The fan of a point: zero lattice, one zero-dimensional cone."""
        return cls((), (Cone(()),), 0)

    @property
    def n(self) -> int:
        return len(self.rays)

    def generators(self, c: Cone | Sequence[int]) -> list[Vector]:
        idx = c.rays if isinstance(c, Cone) else c
        return [self.rays[k] for k in idx]

    def cone_is_simplicial(self, c: Cone | Sequence[int]) -> bool:
        gens = self.generators(c)
        if not gens:
            return True
        rank, _ = rational_rank_and_kernel(gens)
        return rank == len(gens)

    @cached_property
    def report(self) -> FanReport:
        return validate(self)

    @cached_property
    def _face_set(self) -> frozenset[tuple[int, ...]]:
        faces = set()
        for c in self.max_cones:
            for k in range(len(c.rays) + 1):
                faces.update(combinations(c.rays, k))
        return frozenset(faces)

    def is_cone(self, idx: Sequence[int]) -> bool:
        """True when the sorted index set spans a cone of a simplicial fan."""
        return tuple(sorted(idx)) in self._face_set

    def cones(self, k: int) -> list[Cone]:
        return [Cone(f) for f in sorted(self._face_set) if len(f) == k]

    def max_cones_containing(self, c: Cone | Sequence[int]) -> list[Cone]:
        s = set(c.rays if isinstance(c, Cone) else c)
        return [m for m in self.max_cones if s <= set(m.rays)]

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "max_cones": [list(c.rays) for c in self.max_cones]}


def _separable(fan: Fan, a: Cone, b: Cone) -> bool:
    """Exact test that a and b meet exactly in the cone on their common rays.

    Looks for h with h >= 1 on rays of a only, h <= -1 on rays of b only and
    h = 0 on shared rays (Farkas); feasibility decided by Fourier-Motzkin.
    """
    common = set(a.rays) & set(b.rays)
    ineqs = []
    for k in a.rays:
        if k not in common:
            ineqs.append((tuple(QQ(x) for x in fan.rays[k]), QQ(1)))
    for k in b.rays:
        if k not in common:
            ineqs.append((tuple(QQ(-x) for x in fan.rays[k]), QQ(1)))
    for k in common:
        ineqs.append((tuple(QQ(x) for x in fan.rays[k]), QQ(0)))
        ineqs.append((tuple(QQ(-x) for x in fan.rays[k]), QQ(0)))
    if not ineqs:
        return True
    return _fm_systems(ineqs, fan.dim) is not None


def validate(fan: Fan) -> FanReport:
    """Simpliciality and completeness; raises MalformedFan on improper cones."""
    d = fan.dim
    for a, b in combinations(fan.max_cones, 2):
        if a.issubset(b) or b.issubset(a):
            raise MalformedFan(f"maximal cone {a.rays} contained in {b.rays}")
        if not _separable(fan, a, b):
            raise MalformedFan(f"cones {a.rays} and {b.rays} do not meet in a common face")
    simplicial = all(c.dim == d and fan.cone_is_simplicial(c) for c in fan.max_cones)
    if d == 0:
        return FanReport(simplicial, len(fan.max_cones) == 1)
    complete = simplicial and _facets_pair_up(fan)
    return FanReport(simplicial, complete)


def _facets_pair_up(fan: Fan) -> bool:
    owners: dict[tuple[int, ...], list[int]] = {}
    for i, c in enumerate(fan.max_cones):
        for facet in combinations(c.rays, len(c.rays) - 1):
            owners.setdefault(facet, []).append(i)
    if any(len(v) != 2 for v in owners.values()):
        return False
    adj: dict[int, set[int]] = {i: set() for i in range(len(fan.max_cones))}
    for i, j in owners.values():
        adj[i].add(j)
        adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(fan.max_cones)


def mult_of_vectors(gens: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``gens`` inside its saturation."""
    if not gens:
        return 1
    snf = smith_normal_form(gens)
    if snf.rank != len(gens):
        raise NonSimplicialCone("generators are linearly dependent")
    return math.prod(snf.nonzero)


def mult(fan: Fan, c: Cone | Sequence[int]) -> int:
    return mult_of_vectors(fan.generators(c))


# --- orderings inside 2-cones ----------------------------------------------


@dataclass(frozen=True)
class SigmaOrdering:
    """Rays of a fine fan inside a 2-cone sigma of a coarser fan, in order.

    ``sequence[0]`` and ``sequence[-1]`` are the boundary rays; ``sub_mults[j]``
    is mult(sigma_{j+1}) for sigma_{j+1} = cone(l_j, l_{j+1}). ``orientation``
    is +1 when the boundary ray listed first in the coarse cone is l_0.
    """

    sequence: tuple[int, ...]
    sub_mults: tuple[int, ...]
    sigma_mult: int
    orientation: int
    perp_basis: tuple[Vector, ...] = field(default=(), compare=False)

    @property
    def n_interior(self) -> int:
        return len(self.sequence) - 2

    @property
    def interior(self) -> tuple[int, ...]:
        return self.sequence[1:-1]

    @property
    def boundary(self) -> tuple[int, int]:
        return self.sequence[0], self.sequence[-1]

    def position(self, k: int) -> int:
        return self.sequence.index(k)

    def pair_mult(self, fan: Fan, j: int) -> int:
        """mult(sigma_j + sigma_{j+1}) = mult(cone(l_{j-1}, l_{j+1}))."""
        return mult(fan, (self.sequence[j - 1], self.sequence[j + 1]))


def order_rays_in_2cone(fine: Fan, s: int, t: int) -> SigmaOrdering:
    """Order the rays of ``fine`` lying in cone(e_s, e_t), oriented per convention."""
    es, et = fine.rays[s], fine.rays[t]
    basis = [es, et]
    rank, _ = rational_rank_and_kernel(basis)
    if rank != 2:
        raise RayNotInCone("boundary rays are not independent")
    cols = [[es[i], et[i]] for i in range(fine.dim)]
    inside = []
    for k, v in enumerate(fine.rays):
        if k in (s, t):
            continue
        sol = solve_rational(cols, v)
        if sol is None:
            continue
        a, b = sol
        if a > 0 and b > 0:
            inside.append((b / a, k))
        elif a >= 0 and b >= 0:
            raise RayNotInCone(f"ray {k} lies on a boundary ray of the 2-cone")
    inside.sort()
    seq = [s] + [k for _, k in inside] + [t]
    for a, b in zip(seq, seq[1:]):
        if not fine.is_cone((a, b)):
            raise RayNotInCone(f"consecutive rays {a},{b} do not span a cone of the fine fan")
    sigma_mult = mult(fine, (s, t))
    perp = integer_kernel([es, et], fine.dim)
    extra = complete_basis(perp, fine.dim)
    full = list(perp) + list(extra)
    if det(full) < 0:
        extra[-1] = tuple(-x for x in extra[-1])
    m1, m2 = extra
    e2 = _pair(m1, es) * _pair(m2, et) - _pair(m1, et) * _pair(m2, es)
    if abs(e2) != sigma_mult:
        raise RayNotInCone("orientation determinant disagrees with mult")
    orientation = 1
    if e2 < 0:
        seq.reverse()
        orientation = -1
    subs = tuple(mult(fine, (a, b)) for a, b in zip(seq, seq[1:]))
    return SigmaOrdering(tuple(seq), subs, sigma_mult, orientation, tuple(perp))


def generator_relation_holds(fine: Fan, o: SigmaOrdering) -> bool:
    """mult(s_{j+1}) e_{l_{j-1}} + mult(s_j) e_{l_{j+1}} == mult(s_j+s_{j+1}) e_{l_j}."""
    for j in range(1, len(o.sequence) - 1):
        lhs = [
            o.sub_mults[j] * a + o.sub_mults[j - 1] * b
            for a, b in zip(fine.rays[o.sequence[j - 1]], fine.rays[o.sequence[j + 1]])
        ]
        rhs = [o.pair_mult(fine, j) * x for x in fine.rays[o.sequence[j]]]
        if lhs != rhs:
            return False
    return True


# --- star fans --------------------------------------------------------------


@dataclass(frozen=True)
class StarFan:
    """Fan of V(c) on N/(span(c) & N) with its correspondence to the parent.

    ``ray_of[j]`` is the parent ray index k with c + rho_k the cone gamma'_j;
    ``scale[j] = mult(c)/mult(gamma'_j)`` so that e_{gamma'} = scale * image(e_k).
    """

    fan: Fan
    parent_cone: Cone
    ray_of: tuple[int, ...]
    scale: tuple[Fraction, ...]
    quotient_basis: tuple[Vector, ...]

    def project(self, v: Sequence[int]) -> Vector:
        return tuple(_pair(u, v) for u in self.quotient_basis)


def star_fan(fan: Fan, c: Cone | Sequence[int]) -> StarFan:
    c = c if isinstance(c, Cone) else Cone(tuple(c))
    if not fan.is_cone(c.rays):
        raise ConeNotInFan(f"{c.rays} is not a cone of the fan")
    gens = fan.generators(c)
    d = fan.dim
    qbasis = tuple(integer_kernel(gens, d)) if gens else tuple(
        tuple(int(i == j) for j in range(d)) for i in range(d)
    )
    r = len(qbasis)
    containing = fan.max_cones_containing(c)
    neighbours = sorted({k for m in containing for k in m.rays if k not in c.rays})
    mc = mult(fan, c)
    rays, ray_of, scales = [], [], []
    for k in neighbours:
        if not fan.is_cone(c.rays + (k,)):
            continue
        img = tuple(_pair(u, fan.rays[k]) for u in qbasis)
        g = math.gcd(*img)
        prim = tuple(x // g for x in img)
        sc = Fraction(mc, mult(fan, c.rays + (k,)))
        if sc != Fraction(1, g):
            raise NonSimplicialCone("quotient scaling disagrees with multiplicities")
        rays.append(prim)
        ray_of.append(k)
        scales.append(sc)
    index = {k: j for j, k in enumerate(ray_of)}
    cones = [Cone(tuple(index[k] for k in m.rays if k not in c.rays)) for m in containing]
    if r == 0:
        qfan = Fan.point()
    else:
        qfan = Fan(tuple(rays), tuple(cones), r)
    return StarFan(qfan, c, tuple(ray_of), tuple(scales), qbasis)
