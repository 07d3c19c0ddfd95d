"""Polynomials in the Cox ring S(Sigma), graded pieces, restriction and G/H polynomials."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .divisors import DivisorClass, anticanonical, chow_group, lattice_points, polytope_vertices
from .errors import DegreeMismatch, NonIntegralExponent, NotAnticanonical, NotDivisible
from .fan import Cone, Fan, SigmaOrdering, _pair, mult, star_fan
from .lattice import QQ, QQ_I, GaussianRational, solve_integer, to_gauss

Monomial = tuple[int, ...]
ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)
IMAG = QQ_I(0, 1)


@dataclass(frozen=True)
class GradedBasis:
    """Lex-sorted monomials of one degree; ``index`` maps exponents to position."""

    degree: DivisorClass
    monomials: tuple[Monomial, ...]
    index: Mapping[Monomial, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.monomials)

    def column(self, mono: Monomial) -> int:
        """Elimination column: the lex-largest monomial gets column 0."""
        return len(self.monomials) - 1 - self.index[mono]

    def monomial_at(self, col: int) -> Monomial:
        return self.monomials[len(self.monomials) - 1 - col]


@lru_cache(maxsize=4096)
def _basis_cached(fan: Fan, canon: tuple[int, ...]) -> GradedBasis:
    group = chow_group(fan)
    pts = lattice_points(fan, canon)
    monos = sorted(tuple(ai + _pair(m, e) for ai, e in zip(canon, fan.rays)) for m in pts)
    return GradedBasis(group.cls(canon), tuple(monos), {m: i for i, m in enumerate(monos)})


def monomials_of_degree(fan: Fan, alpha: DivisorClass) -> GradedBasis:
    """Monomials x^{a + <m, e>} for the lattice points m of the representative's polytope."""
    return _basis_cached(fan, alpha.canon)


class Polynomial:
    """Sparse homogeneous element of S(Sigma) with Gaussian-rational coefficients."""

    __slots__ = ("fan", "terms", "degree")

    def __init__(self, fan: Fan, terms: Mapping[Monomial, object], degree: DivisorClass | None = None):
        clean: dict[Monomial, GaussianRational] = {}
        for mono, c in terms.items():
            c = to_gauss(c)
            if c:
                mono = tuple(int(x) for x in mono)
                clean[mono] = clean.get(mono, ZERO) + c
                if not clean[mono]:
                    del clean[mono]
        group = chow_group(fan)
        if degree is None:
            if not clean:
                raise DegreeMismatch("zero polynomial needs an explicit degree")
            degree = group.cls(next(iter(clean)))
        for mono in clean:
            if len(mono) != fan.n:
                raise DegreeMismatch(f"monomial {mono} has wrong length")
            if min(mono) < 0:
                raise NotDivisible(f"negative exponent in {mono}")
            if group.canonical(mono) != degree.canon:
                raise DegreeMismatch(f"monomial {mono} is not of the declared degree")
        self.fan = fan
        self.terms = clean
        self.degree = degree

    @classmethod
    def monomial(cls, fan: Fan, mono: Sequence[int], coeff=1) -> "Polynomial":
        return cls(fan, {tuple(mono): coeff})

    @classmethod
    def zero(cls, fan: Fan, degree: DivisorClass) -> "Polynomial":
        return cls(fan, {}, degree)

    def __iter__(self) -> Iterator[tuple[Monomial, GaussianRational]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree.canon, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*x^{list(m)}" for m, c in self) or "0"
        return f"Polynomial({body})"

    def _check(self, other: "Polynomial") -> None:
        if other.degree != self.degree:
            raise DegreeMismatch("adding polynomials of different degrees")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, ZERO) + c
        return Polynomial(self.fan, t, self.degree)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.fan, {m: -c for m, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = to_gauss(c)
        return Polynomial(self.fan, {m: c * v for m, v in self.terms.items()}, self.degree)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        t: dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, ZERO) + c1 * c2
        return Polynomial(self.fan, t, self.degree + other.degree)

    def times_monomial(self, mono: Sequence[int]) -> "Polynomial":
        deg = self.degree + chow_group(self.fan).cls(mono)
        return Polynomial(self.fan, {tuple(a + b for a, b in zip(m, mono)): c for m, c in self.terms.items()}, deg)

    def divide_monomial(self, mono: Sequence[int]) -> "Polynomial":
        """Exact division by a monomial (Laurent step, then nonnegativity check)."""
        t = {}
        for m, c in self.terms.items():
            q = tuple(a - b for a, b in zip(m, mono))
            if min(q) < 0:
                raise NotDivisible(f"{list(m)} is not divisible by {list(mono)}")
            t[q] = c
        deg = self.degree - chow_group(self.fan).cls(mono)
        return Polynomial(self.fan, t, deg)

    def is_real(self) -> bool:
        return all(c.y == 0 for c in self.terms.values())

    def to_json(self) -> dict:
        from .io import gauss_to_json

        return {
            "degree": {"coefficients": list(self.degree.rep)},
            "terms": [{"exponents": list(m), "coeff": gauss_to_json(c)} for m, c in self],
        }


def variable_monomial(fan: Fan, idx: Iterable[int]) -> Monomial:
    s = set(idx)
    return tuple(int(i in s) for i in range(fan.n))


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    fan = p.fan
    t = {}
    for m, c in p.terms.items():
        if m[i] > 0:
            q = list(m)
            q[i] -= 1
            t[tuple(q)] = c * m[i]
    deg = p.degree - chow_group(fan).cls(variable_monomial(fan, [i]))
    return Polynomial(fan, t, deg)


def euler_combination(p: Polynomial, w: Sequence[int]) -> Polynomial:
    """sum_i w_i x_i p_i - (sum_i w_i a_i) p for a ray relation sum_i w_i e_i = 0.

    Such w is a weight of the grading group, so the result vanishes identically
    for homogeneous p (a_i is any representative of deg p).
    """
    fan = p.fan
    if any(sum(wi * e[j] for wi, e in zip(w, fan.rays)) for j in range(fan.dim)):
        raise ValueError("w is not a relation among the rays")
    total = p.scale(QQ(-sum(wi * ai for wi, ai in zip(w, p.degree.rep))))
    for i in range(fan.n):
        if w[i]:
            total = total + partial_derivative(p, i).times_monomial(variable_monomial(fan, [i])).scale(w[i])
    return total


# --- generators -------------------------------------------------------------


def fermat_polynomial(fan: Fan, degree: DivisorClass) -> Polynomial:
    """Sum of the monomials at the vertices of the degree's polytope."""
    rep = degree.canon
    verts = polytope_vertices(fan, rep)
    if any(x.denominator != 1 for v in verts for x in v):
        raise NonIntegralExponent("polytope has non-integral vertices")
    terms = {}
    for v in verts:
        mono = tuple(ai + _pair([int(x) for x in v], e) for ai, e in zip(rep, fan.rays))
        terms[mono] = ONE
    return Polynomial(fan, terms, degree)


def random_polynomial(fan: Fan, degree: DivisorClass, seed: int, bound: int = 9) -> Polynomial:
    """Nonzero random integer coefficients on the full monomial basis."""
    rng = random.Random(seed)
    terms = {}
    for mono in monomials_of_degree(fan, degree).monomials:
        c = 0
        while c == 0:
            c = rng.randint(-bound, bound)
        terms[mono] = QQ_I(c, 0)
    return Polynomial(fan, terms, degree)


# --- restriction to V(sigma') ----------------------------------------------


@dataclass(frozen=True)
class Restriction:
    polynomial: Polynomial
    star: object


def restrict_degree(fan: Fan, c: Cone, degree: DivisorClass):
    """Degree on the star fan of a class whose representative can vanish on c."""
    st = star_fan(fan, c)
    a = degree.canon
    gens = fan.generators(c)
    m = solve_integer(gens, [-a[k] for k in c.rays], fan.dim) if gens else (0,) * fan.dim
    if m is None:
        raise NonIntegralExponent("no representative vanishing on the cone")
    a2 = tuple(ai + _pair(m, e) for ai, e in zip(a, fan.rays))
    out = []
    for k, sc in zip(st.ray_of, st.scale):
        x = a2[k] * sc
        if x.denominator != 1:
            raise NonIntegralExponent("scaled coefficient is not integral")
        out.append(int(x))
    if st.fan.dim == 0:
        return st, None
    return st, chow_group(st.fan).cls(out)


def restrict_to_star(fan: Fan, sigma_prime: Cone | Sequence[int], p: Polynomial) -> Restriction:
    """Image of p in the Cox ring of V(sigma'); terms divisible by x_k, k in sigma', drop."""
    c = sigma_prime if isinstance(sigma_prime, Cone) else Cone(tuple(sigma_prime))
    st, deg = restrict_degree(fan, c, p.degree)
    t = {}
    for mono, coef in p.terms.items():
        if any(mono[k] for k in c.rays):
            continue
        new = []
        for k, sc in zip(st.ray_of, st.scale):
            x = mono[k] * sc
            if x.denominator != 1:
                raise NonIntegralExponent(f"exponent {mono[k]} scaled by {sc}")
            new.append(int(x))
        key = tuple(new)
        t[key] = t.get(key, ZERO) + coef
    if st.fan.dim == 0:
        return Restriction(PointPolynomial(sum(t.values(), ZERO)), st)
    return Restriction(Polynomial(st.fan, t, deg), st)


@dataclass(frozen=True)
class PointPolynomial:
    """Restriction to a torus-fixed point: just a scalar."""

    value: GaussianRational


# --- G and H polynomials ----------------------------------------------------


def beta1(fan: Fan, o: SigmaOrdering) -> DivisorClass:
    """beta_1^sigma = sum of deg x_k over rays in sigma."""
    return chow_group(fan).cls(variable_monomial(fan, o.sequence))


def special_polynomial_G(fan: Fan, o: SigmaOrdering, f: Polynomial) -> Polynomial:
    """x_s f_s x_t f_t prod_{k not in sigma} x_k / (mult(sigma) prod_{k in sigma} x_k)."""
    s, t = o.boundary
    inside = set(o.sequence)
    xs = partial_derivative(f, s).times_monomial(variable_monomial(fan, [s]))
    xt = partial_derivative(f, t).times_monomial(variable_monomial(fan, [t]))
    num = (xs * xt).times_monomial(variable_monomial(fan, [k for k in range(fan.n) if k not in inside]))
    g = num.divide_monomial(variable_monomial(fan, inside))
    return g.scale(QQ(1, mult(fan, (s, t))))


def special_polynomial_H(fan: Fan, o: SigmaOrdering, f: Polynomial) -> Polynomial:
    """sqrt(-1) * sum over f's terms from sigma^perp, divided by prod_{k in sigma} x_k."""
    if f.degree != anticanonical(fan):
        raise NotAnticanonical("H^sigma is defined for anticanonical f only")
    inside = o.sequence
    s, t = o.boundary
    keep = {m: c for m, c in f.terms.items() if m[s] == 1 and m[t] == 1}
    for m in keep:
        if any(m[k] != 1 for k in inside):
            raise NotDivisible("term orthogonal to sigma has unexpected interior exponent")
    p = Polynomial(fan, keep, f.degree)
    return p.divide_monomial(variable_monomial(fan, inside)).scale(IMAG)
