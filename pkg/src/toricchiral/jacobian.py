"""Degree-wise linear algebra for Jacobian-type ideals and their quotients.

All ideals are handled one graded piece at a time: the ideal's degree-gamma
part is the span of generator-times-monomial vectors, saturations are
preimages under multiplication by a monomial, and quotients are described by
their non-pivot (standard) monomials under lex-largest-first elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .coxring import (
    ZERO,
    GradedBasis,
    Monomial,
    Polynomial,
    monomials_of_degree,
    partial_derivative,
    variable_monomial,
)
from .divisors import DivisorClass, anticanonical, chow_group
from .errors import DegreeMismatch, DimensionMismatch, NoSolution
from .fan import Cone, Fan
from .lattice import SparseEchelon, to_gauss

Kind = Literal["J", "J0", "Jsigma", "Jsigma0"]


@dataclass(frozen=True)
class IdealSpec:
    """Which ideal: J, J0, or their sigma versions (adding x_k for rays in sigma)."""

    kind: Kind
    sigma: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.kind in ("Jsigma", "Jsigma0")) != (self.sigma is not None):
            raise ValueError("sigma must be given exactly for the sigma kinds")
        if self.sigma is not None:
            object.__setattr__(self, "sigma", tuple(sorted(self.sigma)))

    @property
    def base(self) -> str:
        return "J0" if self.kind in ("J0", "Jsigma0") else "J"

    def saturating_monomial(self, fan: Fan) -> Monomial:
        """prod x_i for J0 (giving J1); prod_{k not in sigma} x_k for Jsigma0."""
        if self.sigma is None:
            return (1,) * fan.n
        s = set(self.sigma)
        return variable_monomial(fan, [k for k in range(fan.n) if k not in s])

    def label(self) -> str:
        return self.kind if self.sigma is None else f"{self.kind}{list(self.sigma)}"


@dataclass
class QuotientPiece:
    """Quotient of S_gamma by an ideal's degree-gamma subspace."""

    degree: DivisorClass
    ambient: GradedBasis
    ideal: SparseEchelon
    label: str
    quotient_monomials: tuple[Monomial, ...] = field(init=False)
    _qcol: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        cols = self.ideal.non_pivots()
        monos = sorted(self.ambient.monomial_at(c) for c in cols)
        self.quotient_monomials = tuple(monos)
        self._qcol = {self.ambient.column(m): i for i, m in enumerate(monos)}

    @property
    def dim(self) -> int:
        return len(self.quotient_monomials)

    @property
    def ideal_rank(self) -> int:
        return self.ideal.rank

    def vector(self, p: Polynomial) -> dict[int, object]:
        if p.degree != self.degree:
            raise DegreeMismatch(f"polynomial degree does not match piece {self.label}")
        return {self.ambient.column(m): c for m, c in p.terms.items()}

    def normal_form(self, p: Polynomial) -> tuple:
        """Coordinates over ``quotient_monomials`` (Gaussian rationals)."""
        red = self.ideal.reduce(self.vector(p))
        out = [ZERO] * self.dim
        for c, v in red.items():
            out[self._qcol[c]] = to_gauss(v)
        return tuple(out)

    def contains(self, p: Polynomial) -> bool:
        return not self.ideal.reduce(self.vector(p))

    def from_coords(self, coords: Sequence) -> Polynomial:
        terms = {m: to_gauss(c) for m, c in zip(self.quotient_monomials, coords) if c}
        return Polynomial(self.ambient.degree.group.fan, terms, self.degree)

    def basis_polynomial(self, i: int) -> Polynomial:
        fan = self.ambient.degree.group.fan
        return Polynomial.monomial(fan, self.quotient_monomials[i]) if self.dim else None


class JacobianContext:
    """Caches ideal spans and quotient pieces for one (fan, f)."""

    def __init__(self, fan: Fan, f: Polynomial):
        self.fan = fan
        self.f = f
        self.beta = f.degree
        self.beta0 = anticanonical(fan)
        self.group = chow_group(fan)
        self.partials = [partial_derivative(f, i) for i in range(fan.n)]
        self.euler = [
            p.times_monomial(variable_monomial(fan, [i])) for i, p in enumerate(self.partials)
        ]
        self._spans: dict = {}
        self._pieces: dict = {}

    # --- ideal spans ------------------------------------------------------

    def _generators(self, spec: IdealSpec) -> list[Polynomial]:
        gens = self.partials if spec.base == "J" else self.euler
        return [g for g in gens if g]

    def ideal_span(self, spec: IdealSpec, gamma: DivisorClass) -> tuple[GradedBasis, SparseEchelon]:
        key = (spec, gamma.canon)
        if key in self._spans:
            return self._spans[key]
        basis = monomials_of_degree(self.fan, gamma)
        rows: list[dict[int, object]] = []
        if len(basis):
            for g in self._generators(spec):
                lower = monomials_of_degree(self.fan, gamma - g.degree)
                gterms = list(g.terms.items())
                for m in lower.monomials:
                    row = {}
                    for gm, c in gterms:
                        row[basis.column(tuple(a + b for a, b in zip(gm, m)))] = c
                    rows.append(row)
            if spec.sigma is not None:
                for mono in basis.monomials:
                    if any(mono[k] for k in spec.sigma):
                        rows.append({basis.column(mono): QQ(1)})
        ech = SparseEchelon(rows, len(basis))
        self._spans[key] = (basis, ech)
        return basis, ech

    # --- quotients --------------------------------------------------------

    def quotient_piece(self, spec: IdealSpec, gamma: DivisorClass, saturate: bool = False) -> QuotientPiece:
        key = (spec, gamma.canon, saturate)
        if key in self._pieces:
            return self._pieces[key]
        if not saturate:
            basis, ech = self.ideal_span(spec, gamma)
            piece = QuotientPiece(gamma, basis, ech, spec.label())
        else:
            piece = self._saturated(spec, gamma)
        self._pieces[key] = piece
        return piece

    def _saturated(self, spec: IdealSpec, gamma: DivisorClass) -> QuotientPiece:
        """{A in S_gamma : A * s in I_{gamma + deg s}} by one block elimination."""
        s = spec.saturating_monomial(self.fan)
        gamma_up = gamma + self.group.cls(s)
        basis = monomials_of_degree(self.fan, gamma)
        up_basis, up_ech = self.ideal_span(spec, gamma_up)
        n_up = len(up_basis)
        rows = []
        for mono in basis.monomials:
            prod = tuple(a + b for a, b in zip(mono, s))
            red = up_ech.reduce({up_basis.column(prod): QQ(1)})
            row = dict(red)
            row[n_up + basis.column(mono)] = QQ(1)
            rows.append(row)
        block = SparseEchelon(rows, n_up + len(basis))
        kernel = []
        for p in block.pivots:
            if p >= n_up:
                kernel.append({c - n_up: v for c, v in block.pivot_rows[p].items()})
        sat = SparseEchelon(kernel, len(basis))
        label = ("J1" if spec.sigma is None else f"Jsigma1{list(spec.sigma)}")
        return QuotientPiece(gamma, basis, sat, label)

    # convenience wrappers for the standard pieces

    def R(self, gamma: DivisorClass) -> QuotientPiece:
        return self.quotient_piece(IdealSpec("J"), gamma)

    def R0(self, gamma: DivisorClass) -> QuotientPiece:
        return self.quotient_piece(IdealSpec("J0"), gamma)

    def R1(self, gamma: DivisorClass) -> QuotientPiece:
        return self.quotient_piece(IdealSpec("J0"), gamma, saturate=True)

    def Rsigma1(self, sigma: Sequence[int], gamma: DivisorClass) -> QuotientPiece:
        return self.quotient_piece(IdealSpec("Jsigma0", tuple(sigma)), gamma, saturate=True)

    # --- mu isomorphism ---------------------------------------------------

    def mu_data(self, top: DivisorClass):
        """(R1 piece at top - beta0, R0 piece at top, inverse matrix of mu)."""
        key = ("mu", top.canon)
        if key in self._pieces:
            return self._pieces[key]
        src = self.R1(top - self.beta0)
        dst = self.R0(top)
        if src.dim != dst.dim:
            raise DimensionMismatch(f"mu: dim R1 = {src.dim} but dim R0 = {dst.dim}")
        n = src.dim
        prod_all = (1,) * self.fan.n
        cols = [dst.normal_form(Polynomial.monomial(self.fan, m).times_monomial(prod_all)) for m in src.quotient_monomials]
        inv = None
        if n:
            mat = DomainMatrix([[to_gauss(cols[j][i]) for j in range(n)] for i in range(n)], (n, n), QQ_I)
            if mat.rank() != n:
                raise NoSolution("mu is not injective on the computed pieces")
            inv = mat.inv()
        data = (src, dst, inv)
        self._pieces[key] = data
        return data

    def mu_inverse(self, P: Polynomial) -> tuple:
        """Coordinates in R1(f)_{deg P - beta0} of the Q with prod(x) Q = P mod J0."""
        src, dst, inv = self.mu_data(P.degree)
        if src.dim == 0:
            return ()
        rhs = dst.normal_form(P)
        vec = DomainMatrix([[to_gauss(x)] for x in rhs], (len(rhs), 1), QQ_I)
        sol = inv * vec
        return tuple(to_gauss(x[0]) for x in sol.to_list())

    # --- witnesses --------------------------------------------------------

    def irrelevant_generators(self) -> list[Monomial]:
        gens = set()
        for c in self.fan.max_cones:
            gens.add(variable_monomial(self.fan, [k for k in range(self.fan.n) if k not in c.rays]))
        return sorted(gens)

    def quasismooth_witness(self, k_max: int, regular: bool = False) -> dict:
        """Certify V(partials) empty on P by powers of irrelevant generators.

        Certified at k when g^k lies in the ideal (J, or J0 when ``regular``)
        for every irrelevant-ideal generator g; this puts the irrelevant ideal
        inside the radical. Exhaustion is inconclusive.
        """
        spec = IdealSpec("J0" if regular else "J")
        gens = self.irrelevant_generators()
        for k in range(1, k_max + 1):
            ok = True
            for g in gens:
                power = tuple(k * x for x in g)
                p = Polynomial.monomial(self.fan, power)
                basis, ech = self.ideal_span(spec, p.degree)
                if not ech.contains({basis.column(power): QQ(1)}):
                    ok = False
                    break
            if ok:
                return {"certified": True, "k": k, "ideal": spec.kind}
        return {"certified": False, "k": "exhausted", "ideal": spec.kind}


def quasismooth_witness(fan: Fan, f: Polynomial, k_max: int, regular: bool = False) -> dict:
    return JacobianContext(fan, f).quasismooth_witness(k_max, regular)
