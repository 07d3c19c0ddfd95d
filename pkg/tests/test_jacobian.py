"""Jacobian-type quotient pieces, normal forms, mu inverse and witnesses."""

import pytest
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from toricchiral.coxring import Polynomial, fermat_polynomial, monomials_of_degree, partial_derivative, random_polynomial
from toricchiral.divisors import anticanonical, chow_group
from toricchiral.errors import DegreeMismatch
from toricchiral.jacobian import IdealSpec, JacobianContext, quasismooth_witness
from toricchiral.cohomology import sigma_X_data
from toricchiral.coxring import beta1


def dense_span_rank(fan, gens, gamma):
    """Independent oracle: dense sympy rank of generator-times-monomial vectors."""
    basis = monomials_of_degree(fan, gamma).monomials
    col = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        for m in monomials_of_degree(fan, gamma - g.degree).monomials:
            row = [0] * len(basis)
            for gm, c in g.terms.items():
                row[col[tuple(a + b for a, b in zip(gm, m))]] = c.x
            rows.append(row)
    return len(basis), (dense_rank(rows, len(basis)) if rows else 0)


def dense_rank(rows, ncols):
    return DomainMatrix([[QQ(x) for x in r] for r in rows], (len(rows), ncols), QQ).rank()


@pytest.fixture(scope="module")
def quintic(p4):
    return JacobianContext(p4, fermat_polynomial(p4, anticanonical(p4)))


class TestSpans:
    def test_quintic_J_beta(self, quintic, p4):
        basis, ech = quintic.ideal_span(IdealSpec("J"), quintic.beta)
        assert len(basis) == 126 and ech.rank == 25
        assert dense_span_rank(p4, quintic.partials, quintic.beta) == (126, 25)

    def test_empty_degree(self, quintic):
        basis, ech = quintic.ideal_span(IdealSpec("J"), -quintic.beta)
        assert len(basis) == 0 and ech.rank == 0

    def test_jsigma_all_variables(self, p2):
        ctx = JacobianContext(p2, fermat_polynomial(p2, anticanonical(p2)))
        basis, ech = ctx.ideal_span(IdealSpec("Jsigma", (0, 1, 2)), ctx.beta)
        assert ech.rank == len(basis)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            IdealSpec("J", (0, 1))
        with pytest.raises(ValueError):
            IdealSpec("Jsigma")


class TestPieces:
    def test_quintic_R_beta(self, quintic):
        assert quintic.R(quintic.beta).dim == 101

    def test_cubic_R(self, p2):
        ctx = JacobianContext(p2, fermat_polynomial(p2, anticanonical(p2)))
        piece = ctx.R(2 * ctx.beta - ctx.beta0)
        assert piece.dim == 1 and piece.ideal_rank == 9

    def test_R1_zero(self, quintic):
        assert quintic.R1(quintic.group.zero()).dim == 1

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_rank_nullity(self, quintic, k):
        for piece in (quintic.R(k * quintic.beta), quintic.R0(k * quintic.beta), quintic.R1(k * quintic.beta)):
            assert piece.dim + piece.ideal_rank == len(piece.ambient)

    @pytest.mark.parametrize("name,seed", [("p2", 1), ("p1xp1", 2), ("k3_p1122_resolved", 3)])
    def test_saturation_contains_J0(self, fans, name, seed):
        fan = fans[name]
        ctx = JacobianContext(fan, random_polynomial(fan, anticanonical(fan), seed))
        for k in range(fan.dim + 1):
            gamma = k * ctx.beta - (ctx.beta0 if k else ctx.group.zero())
            r0, r1 = ctx.R0(gamma), ctx.R1(gamma)
            assert r1.ideal_rank >= r0.ideal_rank
            basis, ech = ctx.ideal_span(IdealSpec("J0"), gamma)
            for p in ech.pivot_rows.values():
                assert r1.ideal.contains(p)

    @pytest.mark.parametrize("name,seed", [("p3", 0), ("k3_p1122_resolved", 3)])
    def test_dense_oracle_R0(self, fans, name, seed):
        fan = fans[name]
        f = random_polynomial(fan, anticanonical(fan), seed)
        ctx = JacobianContext(fan, f)
        for k in (1, 2):
            n, r = dense_span_rank(fan, ctx.euler, k * ctx.beta)
            assert ctx.R0(k * ctx.beta).dim == n - r


class TestNormalForm:
    def test_ideal_element(self, quintic, p4):
        p = quintic.partials[0].times_monomial((0, 1, 0, 0, 0))
        assert all(not c for c in quintic.R(quintic.beta).normal_form(p))

    def test_basis_monomial(self, quintic, p4):
        piece = quintic.R(quintic.beta)
        for i in (0, 7, 100):
            nf = piece.normal_form(piece.basis_polynomial(i))
            assert [bool(c) for c in nf] == [j == i for j in range(piece.dim)]

    def test_degree_mismatch(self, quintic, p4):
        with pytest.raises(DegreeMismatch):
            quintic.R(quintic.beta).normal_form(Polynomial.monomial(p4, (1, 0, 0, 0, 0)))

    def test_second_elimination_order(self, p4):
        """x1^5 times a quintic in degree 2 beta, checked by a dense reversed-order solve.

        Uses the Dwork-type quintic: its Jacobian ideal is not monomial, so the
        normal form is a genuine combination of standard monomials.
        """
        from conftest import DATA

        from toricchiral.io import load_json, polynomial_from_json

        f = polynomial_from_json(p4, load_json(DATA / "polys" / "quintic_dwork.json"))
        ctx = JacobianContext(p4, f)
        piece = ctx.R(2 * ctx.beta)
        p = Polynomial.monomial(p4, (5, 2, 1, 1, 1))
        nf = piece.normal_form(p)
        residual = p - piece.from_coords(nf)
        basis = list(piece.ambient.monomials)[::-1]
        col = {m: i for i, m in enumerate(basis)}
        rows = []
        for g in ctx.partials:
            for m in monomials_of_degree(p4, 2 * ctx.beta - g.degree).monomials:
                row = [0] * len(basis)
                for gm, c in g.terms.items():
                    row[col[tuple(a + b for a, b in zip(gm, m))]] = c.x
                rows.append(row)
        vec = [0] * len(basis)
        for m, c in residual.terms.items():
            vec[col[m]] = c.x
        assert dense_rank(rows, len(basis)) == dense_rank(rows + [vec], len(basis))
        assert sum(1 for c in nf if c) >= 1 and p.terms.keys() != residual.terms.keys()


class TestMu:
    def test_interior_monomial(self, quintic, p4):
        top = 4 * quintic.beta
        src, _, _ = quintic.mu_data(top)
        Q = src.quotient_monomials[0]
        P = Polynomial.monomial(p4, tuple(a + 1 for a in Q))
        coords = quintic.mu_inverse(P)
        assert [bool(c) for c in coords] == [i == 0 for i in range(src.dim)]
        assert coords[0] == QQ_I(1, 0)

    def test_ideal_element(self, quintic, p4):
        P = quintic.euler[2] * Polynomial.monomial(p4, (3, 3, 3, 3, 3))
        assert all(not c for c in quintic.mu_inverse(P))

    def test_quintic_generator(self, quintic, p4):
        src, dst, _ = quintic.mu_data(4 * quintic.beta)
        assert src.dim == dst.dim == 1
        P = Polynomial.monomial(p4, dst.quotient_monomials[0])
        (c,) = quintic.mu_inverse(P)
        assert c and c.y == 0


class TestWitness:
    def test_fermat_quintic(self, p4):
        w = quasismooth_witness(p4, fermat_polynomial(p4, anticanonical(p4)), 5)
        assert w["certified"] and w["k"] <= 5

    def test_fermat_quintic_regular(self, p4):
        w = quasismooth_witness(p4, fermat_polynomial(p4, anticanonical(p4)), 5, regular=True)
        assert w == {"certified": True, "k": 5, "ideal": "J0"}

    def test_singular(self, p4):
        f = Polynomial.monomial(p4, (5, 0, 0, 0, 0))
        assert quasismooth_witness(p4, f, 4) == {"certified": False, "k": "exhausted", "ideal": "J"}

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_generic(self, fans, seed):
        # the Jacobian ring of a smooth quartic surface has socle degree 8
        fan = fans["p3"]
        w = quasismooth_witness(fan, random_polynomial(fan, anticanonical(fan), seed), 9)
        assert w == {"certified": True, "k": 9, "ideal": "J"}


@pytest.fixture(scope="module")
def octic_ctx(octic):
    f = fermat_polynomial(octic, anticanonical(octic))
    ctx = JacobianContext(octic, f)
    (sc,) = sigma_X_data(octic, f.degree.canon).with_interior()
    return ctx, sc


class TestSigmaPieces:
    def test_vanishing_ends(self, octic, octic_ctx):
        ctx, sc = octic_ctx
        b1 = beta1(octic, sc.ordering)
        for q in (0, octic.dim - 1):
            assert ctx.Rsigma1(sc.rays, q * ctx.beta - ctx.beta0 + b1).dim == 0

    def test_middle_positive(self, octic, octic_ctx):
        ctx, sc = octic_ctx
        b1 = beta1(octic, sc.ordering)
        assert [ctx.Rsigma1(sc.rays, q * ctx.beta - ctx.beta0 + b1).dim for q in (1, 2)] == [3, 3]

    def test_hodge_symmetry_R1(self, octic, octic_ctx):
        ctx, _ = octic_ctx
        dims = [ctx.R1((q + 1) * ctx.beta - ctx.beta0).dim for q in range(4)]
        assert dims == dims[::-1] == [1, 83, 83, 1]
