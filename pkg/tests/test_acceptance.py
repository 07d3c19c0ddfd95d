"""Acceptance criteria 1 to 6, one test each.

A terminal-summary hook in conftest prints one PASS/FAIL line per criterion.
"""

import time
from itertools import product as iproduct

from conftest import DATA, PROPERTY_FANS, quotient_cones_as_ray_sets, random_semiample_divisors
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from toricchiral.chiral import ChiralRing
from toricchiral.cohomology import middle_cohomology, sigma_X_data
from toricchiral.coxring import beta1, fermat_polynomial, monomials_of_degree, restrict_to_star
from toricchiral.divisors import anticanonical, normal_fan_of_polytope, semiample_quotient
from toricchiral.fan import Cone, generator_relation_holds, order_rays_in_2cone
from toricchiral.io import load_json, polynomial_from_json
from toricchiral.jacobian import JacobianContext

CRITERIA = {
    1: "quintic threefold: h = (1, 101, 101, 1), h^{1,1} = 1, chiral grades, dense oracle, < 10 s",
    2: "quartic K3: residue part 19 = 35 - 16, toric part 1, h^{1,1} = 20",
    3: "elliptic cubic: h^{1,0} = h^{0,1} = 1",
    4: "resolved octic: one sigma with n = 1, h^{2,1} = 83 + 3, star restriction agrees",
    5: "property suite",
    6: "unit sub-cone multiplicities: same-ray sigma triples vanish",
}
ONE = QQ_I(1, 0)


def totals(h):
    return [t for _, _, t in h.hodge_numbers()]


def fermat(fan):
    return fermat_polynomial(fan, anticanonical(fan))


def dense_quotient_dim(fan, gens, gamma):
    """dim S_gamma minus the rank of the dense generator-times-monomial matrix."""
    basis = monomials_of_degree(fan, gamma).monomials
    col = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        for m in monomials_of_degree(fan, gamma - g.degree).monomials:
            row = [QQ(0)] * len(basis)
            for gm, c in g.terms.items():
                row[col[tuple(a + b for a, b in zip(gm, m))]] = QQ(c.x)
            rows.append(row)
    rank = DomainMatrix(rows, (len(rows), len(basis)), QQ).rank() if rows else 0
    return len(basis), len(rows), rank


def test_criterion_1_quintic(p4):
    start = time.perf_counter()
    f = fermat(p4)
    h = middle_cohomology(p4, f)
    ring = ChiralRing(p4, f)
    elapsed = time.perf_counter() - start
    assert totals(h) == [1, 101, 101, 1]
    assert h.toric[1] == 1
    assert ring.dims() == [1, 101, 101, 1]
    ctx = JacobianContext(p4, f)
    n, n_rows, rank = dense_quotient_dim(p4, ctx.partials, ctx.beta)
    assert (n, n_rows, rank) == (126, 25, 25)
    assert n - rank == ctx.R(ctx.beta).dim == 101
    assert elapsed < 10


def test_criterion_2_quartic_k3(p3):
    f = fermat(p3)
    h = middle_cohomology(p3, f)
    parts = {s.label: s.dim for s in h.summands[1]}
    ctx = JacobianContext(p3, f)
    n, _, rank = dense_quotient_dim(p3, ctx.partials, ctx.beta)
    assert (n, rank) == (35, 16)
    assert parts["Polynomial(q=1)"] == n - rank == 19
    assert parts["Toric(1,1)"] == 1
    assert totals(h) == [1, 20, 1]


def test_criterion_3_cubic(p2):
    f = polynomial_from_json(p2, load_json(DATA / "polys" / "cubic_curve.json"))
    h = middle_cohomology(p2, f)
    assert h.h(1, 0) == h.h(0, 1) == 1


def test_criterion_4_octic(octic):
    f = fermat(octic)
    sx = sigma_X_data(octic, f.degree.canon)
    with_interior = sx.with_interior()
    assert len(with_interior) == 1 and with_interior[0].n == 1
    (sc,) = with_interior
    ctx = JacobianContext(octic, f)
    poly_part = ctx.R1(2 * ctx.beta - ctx.beta0).dim
    sigma_part = ctx.Rsigma1(sc.rays, ctx.beta - ctx.beta0 + beta1(octic, sc.ordering)).dim
    assert poly_part > 0 and sigma_part > 0
    # independent pipeline: restrict f to the star of cone(l0, l1) and take R1 there
    res = restrict_to_star(octic, Cone(sc.ordering.sequence[:2]), f)
    g = res.polynomial
    star_ctx = JacobianContext(res.star.fan, g)
    star_dim = star_ctx.R1(g.degree - anticanonical(res.star.fan)).dim
    assert sigma_part == star_dim
    h = middle_cohomology(octic, f)
    assert h.h(2, 1) == poly_part + sigma_part
    assert (poly_part, sigma_part, h.h(2, 1)) == (83, 3, 86)


def _structure_checks(ring):
    consts, _ = ring.structure_constants(top_only=len(ring.basis) > 60)
    (one,) = ring.grades[0]
    for b in range(len(ring.basis)):
        assert ring.product(one, b) == {b: ONE}
    for a, b, w, _ in consts:
        u, v = ring.basis[a], ring.basis[b]
        assert ring.basis[w].grade == u.grade + v.grade
        if u.kind == v.kind == "GammaSigma":
            adjacent = u.ray == v.ray or any({u.ray, v.ray} <= set(c.rays) for c in ring.fan.max_cones)
            assert u.sigma == v.sigma and adjacent


def _associative(ring):
    n = len(ring.basis)
    for a, b, c in iproduct(range(n), repeat=3):
        if ring.basis[a].grade + ring.basis[b].grade + ring.basis[c].grade > ring.d - 1:
            continue
        assert ring.multiply(ring.product(a, b), {c: ONE}) == ring.multiply({a: ONE}, ring.product(b, c))


def test_criterion_5_property_suite(fans, p2, p3, p4, octic):
    # normal fan of the polytope on 20 random semiample divisors over 5 fans
    drawn = 0
    for name in PROPERTY_FANS:
        fan = fans[name]
        for a in random_semiample_divisors(fan, 4, seed=20):
            drawn += 1
            an = semiample_quotient(fan, a)
            rays, cones = normal_fan_of_polytope(fan, a)
            if an.kappa == 0:
                assert rays == []
                continue
            assert quotient_cones_as_ray_sets(an) == (set(rays), set(cones))
    assert drawn == 20

    cubic = polynomial_from_json(p2, load_json(DATA / "polys" / "cubic_curve.json"))
    examples = {"quintic": (p4, fermat(p4)), "quartic": (p3, fermat(p3)), "cubic": (p2, cubic), "octic": (octic, fermat(octic))}
    extra = {
        "k3_p1122": (fans["k3_p1122_resolved"], fermat(fans["k3_p1122_resolved"])),
        "k3_a2": (fans["k3_p1_x_p123_resolved"], polynomial_from_json(fans["k3_p1_x_p123_resolved"], {"generator": "random", "seed": 1})),
    }

    # Hodge symmetry on every anticanonical example
    for fan, f in {**examples, **extra}.values():
        assert middle_cohomology(fan, f).is_symmetric()

    # R^sigma_1 vanishing at q = 0 and q = d - 1
    for fan, f in (examples["octic"], *extra.values()):
        ctx = JacobianContext(fan, f)
        for sc in sigma_X_data(fan, f.degree.canon).with_interior():
            b1 = beta1(fan, sc.ordering)
            for q in (0, fan.dim - 1):
                assert ctx.Rsigma1(sc.rays, q * ctx.beta - ctx.beta0 + b1).dim == 0

    rings = {k: ChiralRing(fan, f) for k, (fan, f) in {**examples, **extra}.items()}
    # unit law, grading and adjacency vanishing
    for ring in rings.values():
        _structure_checks(ring)
    # pairing nondegeneracy on examples 1 to 4
    for key in examples:
        ring = rings[key]
        assert all(ring.pairing_rank(p) == len(ring.grades[p]) for p in range(ring.d))
    # associativity on every basis of size at most 40
    small = [r for r in rings.values() if len(r.basis) <= 40]
    assert len(small) >= 3
    for ring in small:
        _associative(ring)

    # generator relation on every ordered 2-cone
    for fan in fans.values():
        if not fan.report.complete:
            continue
        for c in fan.cones(2):
            assert generator_relation_holds(fan, order_rays_in_2cone(fan, *c.rays))
    for fan, f in (examples["octic"], *extra.values()):
        for sc in sigma_X_data(fan, f.degree.canon).with_interior():
            assert generator_relation_holds(fan, sc.ordering)


def test_criterion_6_same_ray_triples(octic, fans):
    checked = 0
    for fan, f in ((octic, fermat(octic)),
                   (fans["k3_p1122_resolved"], fermat(fans["k3_p1122_resolved"]))):
        ring = ChiralRing(fan, f)
        for sc in ring.sigmas.values():
            assert all(m == 1 for m in sc.ordering.sub_mults)
        sig = [i for i, v in enumerate(ring.basis) if v.kind == "GammaSigma"]
        for a, b, c in iproduct(sig, repeat=3):
            vs = [ring.basis[i] for i in (a, b, c)]
            if sum(v.grade for v in vs) != ring.d - 1 or len({v.ray for v in vs}) != 1:
                continue
            assert not ring.triple_product(a, b, c)
            checked += 1
    assert checked > 0
