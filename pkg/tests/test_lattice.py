"""Exact integer and rational linear algebra, lattice points, sparse elimination."""

from itertools import product

import pytest
from hypothesis import given, strategies as st
from sympy import QQ, QQ_I

from toricchiral.errors import UnboundedRegion
from toricchiral.lattice import (
    SparseEchelon,
    complete_basis,
    det,
    integer_kernel,
    lattice_points_of_polyhedron,
    rational_rank_and_kernel,
    reduce_mod_hnf,
    row_hnf,
    smith_normal_form,
    solve_integer,
    solve_rational,
)

small = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


class TestSmithForm:
    def test_diag_2_3(self):
        assert smith_normal_form([[2, 0], [0, 3]]).diag == (1, 6)

    def test_identity(self):
        assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diag == (1, 1, 1)

    def test_lower_triangular(self):
        assert smith_normal_form([[1, 0], [1, 2]]).diag == (1, 2)

    @given(matrices())
    def test_reconstruction_and_divisibility(self, m):
        snf = smith_normal_form(m)
        prod_ = matmul(matmul(snf.left, m), snf.right)
        for i, row in enumerate(prod_):
            for j, x in enumerate(row):
                assert x == (snf.diag[i] if i == j and i < len(snf.diag) else 0)
        assert abs(det(snf.left)) == 1 and abs(det(snf.right)) == 1
        nz = snf.nonzero
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        assert all(x == 0 for x in snf.diag[len(nz):])


class TestRankKernel:
    def test_zero(self):
        rank, ker = rational_rank_and_kernel([[0, 0], [0, 0]])
        assert rank == 0 and len(ker) == 2

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_identity(self, n):
        rank, ker = rational_rank_and_kernel([[int(i == j) for j in range(n)] for i in range(n)])
        assert rank == n and ker == []

    def test_rank_one(self):
        rank, ker = rational_rank_and_kernel([[1, 2], [2, 4]])
        assert rank == 1 and len(ker) == 1
        v = ker[0]
        assert v[0] == -2 * v[1] and v[1] != 0

    @given(matrices())
    def test_rank_nullity(self, m):
        rank, ker = rational_rank_and_kernel(m)
        assert rank + len(ker) == len(m[0])
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)

    @given(matrices())
    def test_integer_kernel_saturated(self, m):
        ker = integer_kernel(m)
        rank, _ = rational_rank_and_kernel(m)
        assert len(ker) == len(m[0]) - rank
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
        if ker:
            # saturated: the kernel basis extends to a basis of Z^c
            extra = complete_basis(ker, len(m[0]))
            assert abs(det(list(ker) + list(extra))) == 1


class TestHNF:
    @given(matrices())
    def test_canonical_representatives(self, m):
        ncols = len(m[0])
        hnf = row_hnf(m, ncols)
        for row in m:
            assert reduce_mod_hnf(row, hnf) == (0,) * ncols
        v = tuple(range(ncols))
        w = tuple(a + 3 * b for a, b in zip(v, m[0]))
        assert reduce_mod_hnf(v, hnf) == reduce_mod_hnf(w, hnf)


class TestSolvers:
    def test_solve_rational_inconsistent(self):
        assert solve_rational([[1, 1], [1, 1]], [1, 2]) is None

    def test_solve_rational(self):
        x = solve_rational([[2, 0], [0, 3]], [1, 1])
        assert x == (QQ(1, 2), QQ(1, 3))

    def test_solve_integer(self):
        assert solve_integer([[2, 0], [0, 3]], [1, 1], 2) is None
        x = solve_integer([[2, 4]], [6], 2)
        assert 2 * x[0] + 4 * x[1] == 6


class TestLatticePoints:
    def test_anticanonical_triangle(self):
        pts = lattice_points_of_polyhedron([((1, 0), -1), ((0, 1), -1), ((-1, -1), -1)])
        assert len(pts) == 10
        assert pts == sorted(pts)

    def test_empty(self):
        assert lattice_points_of_polyhedron([((1,), 1), ((-1,), 0)]) == []

    def test_single_point(self):
        ineqs = [((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), 0)]
        assert lattice_points_of_polyhedron(ineqs) == [(0, 0)]

    def test_unbounded(self):
        with pytest.raises(UnboundedRegion):
            lattice_points_of_polyhedron([((1, 0), 0), ((0, 1), 0)])

    @given(st.integers(0, 4), st.integers(2, 3))
    def test_simplex_brute_force_and_symmetry(self, k, d):
        # {m_i >= 0, sum m_i <= k}
        ineqs = [(tuple(int(i == j) for j in range(d)), 0) for i in range(d)]
        ineqs.append(((-1,) * d, -k))
        pts = lattice_points_of_polyhedron(ineqs)
        brute = [p for p in product(range(k + 1), repeat=d) if sum(p) <= k]
        assert pts == sorted(brute)
        s = set(pts)
        assert {p[::-1] for p in pts} == s


class TestSparseEchelon:
    def test_reduce_into_span(self):
        ech = SparseEchelon([{0: QQ(1), 1: QQ(1)}, {1: QQ(1), 2: QQ(1)}], 3)
        assert ech.rank == 2
        assert ech.contains({0: QQ(1), 2: QQ(-1)})
        assert not ech.contains({2: QQ(1)})

    def test_gaussian_entries(self):
        ech = SparseEchelon([{0: QQ_I(0, 1), 1: QQ_I(1, 0)}], 2)
        assert ech.domain == QQ_I
        assert ech.contains({0: QQ_I(1, 0), 1: QQ_I(0, -1)})

    def test_zero_gaussian_entries_dropped(self):
        ech = SparseEchelon([{0: QQ_I(0, 0)}, {}], 2)
        assert ech.rank == 0

    @given(matrices(4, 5))
    def test_rank_matches_dense(self, m):
        rows = [{j: QQ(x) for j, x in enumerate(r) if x} for r in m]
        ech = SparseEchelon(rows, len(m[0]))
        assert ech.rank == rational_rank_and_kernel(m)[0]
        for r in rows:
            assert ech.contains(r)
        assert len(ech.non_pivots()) == len(m[0]) - ech.rank
