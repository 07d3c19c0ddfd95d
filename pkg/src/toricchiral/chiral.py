"""Chiral ring of a semiample anticanonical regular hypersurface.

Basis vectors are standard monomials of the pieces R1(f)_{p beta} (Gamma) and
R^sigma_1(f)_{(p-1) beta + beta_1^sigma}, one copy per interior ray of each
2-cone sigma of Sigma_X (GammaSigma). Products follow the closed-form rules;
products of two sigma-classes below the top grade are undetermined unless
completed through the nondegenerate pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from sympy.polys.matrices import DomainMatrix

from .cohomology import SigmaCone, SigmaXData, sigma_X_data
from .coxring import (
    ZERO,
    Monomial,
    Polynomial,
    beta1,
    special_polynomial_G,
    special_polynomial_H,
)
from .divisors import anticanonical
from .errors import (
    GradeMismatch,
    GradeOverflow,
    NoSolution,
    NotAnticanonical,
    UndeterminedProduct,
)
from .fan import Fan, mult
from .io import gauss_to_json
from .jacobian import JacobianContext, QuotientPiece
from .lattice import QQ, QQ_I, to_gauss

Vector = dict[int, object]


@dataclass(frozen=True)
class ChiralBasisVector:
    grade: int
    kind: str  # "Gamma" or "GammaSigma"
    monomial: Monomial
    sigma: tuple[int, int] | None = None
    ray: int | None = None

    def label(self) -> str:
        mono = ",".join(map(str, self.monomial))
        if self.kind == "Gamma":
            return f"Gamma[{self.grade}](x^[{mono}])"
        return f"GammaSigma[{self.grade}](sigma=[{self.sigma[0]},{self.sigma[1]}],ray={self.ray},x^[{mono}])"


def _q(x: Fraction):
    return QQ_I(QQ(x.numerator, x.denominator), 0)


class ChiralRing:
    """Basis, products, trace and pairing for one (fan, f)."""

    def __init__(self, fan: Fan, f: Polynomial, complete_via_pairing: bool = False):
        if f.degree != anticanonical(fan):
            raise NotAnticanonical("the chiral ring needs an anticanonical polynomial")
        self.fan = fan
        self.f = f
        self.d = fan.dim
        self.beta = f.degree
        self.complete_via_pairing = complete_via_pairing
        self.sx: SigmaXData = sigma_X_data(fan, self.beta.canon)
        self.ctx = JacobianContext(fan, f)
        self.sigmas: dict[tuple[int, int], SigmaCone] = {sc.boundary: sc for sc in self.sx.with_interior()}
        self._nf_cache: dict = {}
        self._gh: dict = {}
        self._completed: dict = {}
        self.basis: list[ChiralBasisVector] = []
        self.grades: list[list[int]] = []
        self._index: dict = {}
        for p in range(self.d):
            idx = []
            for m in self.gamma_piece(p).quotient_monomials:
                idx.append(self._add(ChiralBasisVector(p, "Gamma", m)))
            for key, sc in self.sigmas.items():
                piece = self.sigma_piece(sc, p)
                for i in sc.ordering.interior:
                    for m in piece.quotient_monomials:
                        idx.append(self._add(ChiralBasisVector(p, "GammaSigma", m, key, i)))
            self.grades.append(idx)
        top = self.gamma_piece(self.d - 1)
        if top.dim != 1:
            raise NoSolution(f"top piece has dimension {top.dim}, expected 1")
        self.top_index = self.grades[self.d - 1][0]

    def _add(self, v: ChiralBasisVector) -> int:
        self._index[v] = len(self.basis)
        self.basis.append(v)
        return len(self.basis) - 1

    # --- pieces -----------------------------------------------------------

    def gamma_piece(self, p: int) -> QuotientPiece:
        return self.ctx.R1(self.beta * p)

    def sigma_piece(self, sc: SigmaCone, p: int) -> QuotientPiece:
        return self.ctx.Rsigma1(sc.rays, self.beta * (p - 1) + beta1(self.fan, sc.ordering))

    def dims(self) -> list[int]:
        return [len(g) for g in self.grades]

    def index(self, v: ChiralBasisVector) -> int:
        return self._index[v]

    def _nf_monomial(self, piece: QuotientPiece, mono: Monomial) -> tuple:
        key = (piece.label, piece.degree.canon, mono)
        if key not in self._nf_cache:
            self._nf_cache[key] = piece.normal_form(Polynomial.monomial(self.fan, mono))
        return self._nf_cache[key]

    def _gamma_vector(self, p: int, coords) -> Vector:
        return {i: c for i, c in zip(self.grades[p], coords) if c}

    def _sigma_vector(self, sc: SigmaCone, ray: int, p: int, coords) -> Vector:
        piece = self.sigma_piece(sc, p)
        out = {}
        for m, c in zip(piece.quotient_monomials, coords):
            if c:
                out[self._index[ChiralBasisVector(p, "GammaSigma", m, sc.boundary, ray)]] = c
        return out

    def _G_H(self, sc: SigmaCone) -> tuple[Polynomial, Polynomial]:
        if sc.boundary not in self._gh:
            o = sc.ordering
            self._gh[sc.boundary] = (
                special_polynomial_G(self.fan, o, self.f),
                special_polynomial_H(self.fan, o, self.f),
            )
        return self._gh[sc.boundary]

    def _top_from(self, poly: Polynomial) -> Vector:
        """gamma_{mu^{-1}(poly)} as a vector in the top grade."""
        if not poly:
            return {}
        coords = self.ctx.mu_inverse(poly)
        return self._gamma_vector(self.d - 1, coords)

    # --- products ---------------------------------------------------------

    def _mono_product(self, *vs: ChiralBasisVector) -> Polynomial:
        mono = tuple(sum(x) for x in zip(*(v.monomial for v in vs)))
        return Polynomial.monomial(self.fan, mono)

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.fan.is_cone((i, j))

    def product(self, a: int, b: int) -> Vector:
        """Product of two basis vectors (by index) as a sparse vector."""
        u, v = self.basis[a], self.basis[b]
        r = u.grade + v.grade
        if r > self.d - 1:
            raise GradeOverflow(f"grades {u.grade} + {v.grade} exceed {self.d - 1}")
        if u.kind == "GammaSigma" and v.kind == "Gamma":
            u, v = v, u
        if u.kind == "Gamma" and v.kind == "Gamma":
            piece = self.gamma_piece(r)
            return self._gamma_vector(r, self._nf_monomial(piece, tuple(x + y for x, y in zip(u.monomial, v.monomial))))
        if u.kind == "Gamma":
            sc = self.sigmas[v.sigma]
            piece = self.sigma_piece(sc, r)
            coords = self._nf_monomial(piece, tuple(x + y for x, y in zip(u.monomial, v.monomial)))
            return self._sigma_vector(sc, v.ray, r, coords)
        # two sigma classes
        if u.sigma != v.sigma:
            return {}
        if u.ray != v.ray and not self.adjacent(u.ray, v.ray):
            return {}
        if r != self.d - 1:
            key = (min(a, b), max(a, b))
            if key in self._completed:
                return self._completed[key]
            if self.complete_via_pairing:
                vec = self._complete(a, b)
                self._completed[key] = vec
                return vec
            raise UndeterminedProduct(
                f"{u.label()} * {v.label()} lands in grade {r} < {self.d - 1}",
                (u.grade, v.grade),
            )
        return self._top_sigma_product(u, v)

    def _top_sigma_product(self, u: ChiralBasisVector, v: ChiralBasisVector) -> Vector:
        sc = self.sigmas[u.sigma]
        o = sc.ordering
        G, _ = self._G_H(sc)
        P = self._mono_product(u, v) * G
        if u.ray == v.ray:
            k = o.position(u.ray)
            scale = Fraction(o.pair_mult(self.fan, k), o.sub_mults[k - 1] * o.sub_mults[k])
        else:
            scale = Fraction(-1, mult(self.fan, (u.ray, v.ray)))
        return {i: c * _q(scale) for i, c in self._top_from(P).items()}

    def multiply(self, x: Vector, y: Vector) -> Vector:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for w, c in self.product(a, b).items():
                    out[w] = out.get(w, ZERO) + ca * cb * c
        return {w: c for w, c in out.items() if c}

    def trace(self, x: Vector) -> object:
        return to_gauss(x.get(self.top_index, ZERO))

    # --- triples and pairing ----------------------------------------------

    def triple_product(self, a: int, b: int, c: int) -> object:
        vs = [self.basis[a], self.basis[b], self.basis[c]]
        if sum(v.grade for v in vs) != self.d - 1:
            raise GradeMismatch("triple product grades must sum to d - 1")
        sig = [v for v in vs if v.kind == "GammaSigma"]
        if len(sig) < 3:
            # at most two sigma classes: associate so the sigma pair meets last
            order = sorted(range(3), key=lambda t: vs[t].kind == "GammaSigma")
            x, y, z = ((a, b, c)[t] for t in order)
            return self.trace(self.multiply(self.product(x, y), {z: QQ_I(1, 0)}))
        if len({v.sigma for v in sig}) > 1:
            return ZERO
        sc = self.sigmas[sig[0].sigma]
        o = sc.ordering
        rays = [v.ray for v in sig]
        G, H = self._G_H(sc)
        P = self._mono_product(*sig) * H * G
        if len(set(rays)) == 1:
            k = o.position(rays[0])
            mk, mk1 = o.sub_mults[k - 1], o.sub_mults[k]
            scale = Fraction((mk - mk1) * o.pair_mult(self.fan, k), (mk * mk1) ** 2)
        elif len(set(rays)) == 2:
            i = max(set(rays), key=rays.count)
            l = min(set(rays), key=rays.count)
            if not self.adjacent(i, l):
                return ZERO
            k, kl = o.position(i), o.position(l)
            sign = -1 if kl == k + 1 else 1
            scale = Fraction(sign, mult(self.fan, (i, l)) ** 2)
        else:
            return ZERO
        if scale == 0:
            return ZERO
        return self.trace(self._top_from(P)) * _q(scale)

    def pairing(self, a: int, b: int) -> object:
        return self.trace(self.product(a, b))

    def pairing_matrix(self, p: int) -> list[list]:
        rows, cols = self.grades[p], self.grades[self.d - 1 - p]
        return [[self.pairing(a, b) for b in cols] for a in rows]

    def pairing_rank(self, p: int) -> int:
        m = self.pairing_matrix(p)
        if not m or not m[0]:
            return 0
        return DomainMatrix([[to_gauss(x) for x in r] for r in m], (len(m), len(m[0])), QQ_I).rank()

    def _complete(self, a: int, b: int) -> Vector:
        """Solve for a * b from triple products and the nondegenerate pairing."""
        r = self.basis[a].grade + self.basis[b].grade
        rows, cols = self.grades[r], self.grades[self.d - 1 - r]
        n = len(rows)
        if n == 0:
            return {}
        if len(cols) != n:
            raise NoSolution("pairing is not square")
        P = DomainMatrix([[to_gauss(self.pairing(x, w)) for x in rows] for w in cols], (n, n), QQ_I)
        if P.rank() != n:
            raise NoSolution("pairing is degenerate; cannot complete the product")
        t = DomainMatrix([[to_gauss(self.triple_product(a, b, w))] for w in cols], (n, 1), QQ_I)
        sol = P.inv() * t
        return {x: to_gauss(c[0]) for x, c in zip(rows, sol.to_list()) if c[0]}

    # --- bulk output ------------------------------------------------------

    def structure_constants(self, top_only: bool = False) -> tuple[list[tuple[int, int, int, object]], list[dict]]:
        """All determined constants c(u, v -> w) with u <= v, and the undetermined pairs."""
        consts, undetermined = [], []
        for a, b in self._pairs(top_only):
            try:
                vec = self.product(a, b)
            except UndeterminedProduct as exc:
                undetermined.append({"u": self.basis[a].label(), "v": self.basis[b].label(), "grades": list(exc.degrees)})
                continue
            for w, c in sorted(vec.items()):
                consts.append((a, b, w, c))
        return consts, undetermined

    def _pairs(self, top_only: bool = False) -> Iterator[tuple[int, int]]:
        # sigma-sigma pairs are always visited so undetermined products are reported
        for a, u in enumerate(self.basis):
            for b in range(a, len(self.basis)):
                v = self.basis[b]
                r = u.grade + v.grade
                both_sigma = u.kind == v.kind == "GammaSigma"
                if r == self.d - 1 or (r < self.d - 1 and (both_sigma or not top_only)):
                    yield a, b

    def conventions(self) -> dict:
        return {
            "basis": "standard monomials; lex-largest monomial pivots first",
            "trace": "coefficient of the standard monomial of the one-dimensional top piece",
            "commutative": True,
            "orientation": {
                f"[{k[0]},{k[1]}]": {"sequence": list(sc.ordering.sequence), "flag": sc.ordering.orientation}
                for k, sc in sorted(self.sigmas.items())
            },
            "sigma_sign": "GammaSigma classes follow the stored ray sequence; reversing it negates them",
            "phase": "H^sigma carries a factor sqrt(-1)",
            "completion": "via pairing" if self.complete_via_pairing else "off",
            "scope": "full chiral ring" if self.d <= 4 else "subring only",
        }

    def to_json(self, max_full_basis: int = 60) -> dict:
        """Constants for every grade pair on small bases; top-grade couplings otherwise."""
        top_only = len(self.basis) > max_full_basis
        consts, und = self.structure_constants(top_only)
        conv = self.conventions()
        conv["constants_scope"] = "products landing in the top grade, plus sigma-sigma products" if top_only else "all products"
        return {
            "basis": [v.label() for v in self.basis],
            "grades": self.dims(),
            "pairings": [
                {"grade": p, "matrix": [[gauss_to_json(x) for x in row] for row in self.pairing_matrix(p)]}
                for p in range((self.d + 1) // 2)
            ],
            "constants": [
                {"u": self.basis[a].label(), "v": self.basis[b].label(), "w": self.basis[w].label(), "c": gauss_to_json(c)}
                for a, b, w, c in consts
            ],
            "undetermined": und,
            "conventions": conv,
        }


def build_chiral_basis(fan: Fan, f: Polynomial) -> list[list[ChiralBasisVector]]:
    ring = ChiralRing(fan, f)
    return [[ring.basis[i] for i in g] for g in ring.grades]
