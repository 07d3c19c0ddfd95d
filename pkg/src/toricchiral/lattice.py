"""Exact integer and rational linear algebra, and lattice-point enumeration.

Scalars are ``QQ`` rationals and ``QQ_I`` Gaussian rationals from
sympy's domain system. Dense rank/kernel and Smith forms go through sympy's
``DomainMatrix``; large sparse eliminations use :class:`SparseEchelon`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import QQ, QQ_I, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .errors import UnboundedRegion

Rational = type(QQ(1))
GaussianRational = type(QQ_I(0, 1))
IntMatrix = Sequence[Sequence[int]]

__all__ = [
    "QQ",
    "QQ_I",
    "Rational",
    "GaussianRational",
    "to_qq",
    "to_gauss",
    "gauss_is_real",
    "format_rational",
    "parse_rational",
    "SmithForm",
    "smith_normal_form",
    "rational_rank_and_kernel",
    "integer_kernel",
    "complete_basis",
    "row_hnf",
    "reduce_mod_hnf",
    "det",
    "solve_rational",
    "lattice_points_of_polyhedron",
    "solve_integer",
    "SparseEchelon",
]


def to_qq(x) -> Rational:
    """Coerce int, Fraction, mpq, string "p/q" or real Gaussian to QQ."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, GaussianRational):
        if x.y != 0:
            raise ValueError(f"not a real scalar: {x}")
        return x.x
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, int):
        return QQ(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def to_gauss(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return QQ_I(to_qq(x), 0)


def gauss_is_real(x: GaussianRational) -> bool:
    return x.y == 0


def format_rational(q) -> str:
    q = to_qq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str | int) -> Rational:
    if isinstance(s, int):
        return QQ(s)
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return QQ(int(num), int(den))
    return QQ(int(s))


@dataclass(frozen=True)
class SmithForm:
    """``left @ m @ right == diag`` with ``diag`` padded by zeros."""

    diag: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diag if x != 0)

    @property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(x for x in self.diag if x != 0)


def _as_tuple_rows(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


def _identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms.

    The diagonal has length ``min(r, c)``, nonnegative entries and the
    divisibility chain ``d1 | d2 | ...`` (zeros last).
    """
    rows = [list(map(int, row)) for row in m]
    r = len(rows)
    c = len(rows[0]) if rows else 0
    if r == 0 or c == 0:
        return SmithForm((), _identity(r), _identity(c))
    dm = DomainMatrix([[ZZ(x) for x in row] for row in rows], (r, c), ZZ)
    s, u, v = smith_normal_decomp(dm)
    s_rows = s.to_list()
    u_rows = [list(map(int, row)) for row in u.to_list()]
    diag = []
    for i in range(min(r, c)):
        x = int(s_rows[i][i])
        if x < 0:
            u_rows[i] = [-y for y in u_rows[i]]
            x = -x
        diag.append(x)
    return SmithForm(tuple(diag), _as_tuple_rows(u_rows), _as_tuple_rows(v.to_list()))


def _clear_row(row: Sequence) -> list[int]:
    qs = [to_qq(x) for x in row]
    den = 1
    for q in qs:
        den = den * q.denominator // math.gcd(den, q.denominator)
    return [int(q * den) for q in qs]


def rational_rank_and_kernel(m: Sequence[Sequence]) -> tuple[int, list[tuple[Rational, ...]]]:
    """Exact rank and a kernel basis (right null space) of a rational matrix.

    Rows are scaled to integers and reduced fraction-free over ZZ.
    """
    rows = [_clear_row(row) for row in m]
    if not rows:
        return 0, []
    c = len(rows[0])
    if c == 0:
        return 0, []
    dm = DomainMatrix([[ZZ(x) for x in row] for row in rows], (len(rows), c), ZZ)
    rank = dm.rank()
    kernel = [tuple(QQ(int(x)) for x in vec) for vec in dm.nullspace().to_list()]
    if rank == 0:
        kernel = [tuple(QQ(int(i == j)) for j in range(c)) for i in range(c)]
    return rank, kernel


def integer_kernel(m: IntMatrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice ``{x in Z^c : m x = 0}``."""
    rows = [list(map(int, row)) for row in m]
    c = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return [tuple(int(i == j) for j in range(c)) for i in range(c)]
    snf = smith_normal_form(rows)
    rank = snf.rank
    right = snf.right
    return [tuple(right[i][j] for i in range(c)) for j in range(rank, c)]


def det(m: IntMatrix) -> int:
    n = len(m)
    if n == 0:
        return 1
    return int(DomainMatrix([[ZZ(int(x)) for x in row] for row in m], (n, n), ZZ).det())


def complete_basis(rows: IntMatrix, d: int) -> list[tuple[int, ...]]:
    """Extend a basis of a saturated sublattice of Z^d to a basis of Z^d.

    Returns only the added vectors; the stacked matrix is unimodular.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return [tuple(int(i == j) for j in range(d)) for i in range(d)]
    snf = smith_normal_form(rows)
    if any(x != 1 for x in snf.diag) or snf.rank != len(rows):
        raise ValueError("rows do not span a saturated sublattice")
    vmat = DomainMatrix([[ZZ(x) for x in r] for r in snf.right], (d, d), ZZ)
    vinv, den = vmat.inv_den()
    # right is unimodular, so the denominator is +-1
    vinv_rows = [[int(x) * int(den) for x in r] for r in vinv.to_list()]
    return [tuple(vinv_rows[i]) for i in range(len(rows), d)]


def row_hnf(rows: IntMatrix, ncols: int) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Positive pivots, strictly increasing pivot columns, entries above a pivot
    reduced into ``[0, pivot)``. Zero rows dropped.
    """
    work = [list(map(int, r)) for r in rows if any(r)]
    basis: list[list[int]] = []
    col = 0
    while work and col < ncols:
        nz = [r for r in work if r[col] != 0]
        zero = [r for r in work if r[col] == 0]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col] != 0:
                    rest.append(r2)
                elif any(r2):
                    zero.append(r2)
            nz = [piv] + rest
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        work = zero
        col += 1
    for i, row in enumerate(basis):
        c = next(j for j, a in enumerate(row) if a != 0)
        for k in range(i):
            q = basis[k][c] // row[c]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], row)]
    return [tuple(r) for r in basis]


def reduce_mod_hnf(v: Sequence[int], hnf: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical representative of ``v`` modulo the lattice with basis ``hnf``."""
    out = list(map(int, v))
    for row in hnf:
        c = next(j for j, a in enumerate(row) if a != 0)
        q = out[c] // row[c]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return tuple(out)


def solve_rational(a: Sequence[Sequence], b: Sequence) -> tuple[Rational, ...] | None:
    """One solution of ``a x = b`` over QQ, or None when inconsistent."""
    r = len(a)
    c = len(a[0]) if r else 0
    aug = DomainMatrix([[to_qq(x) for x in row] + [to_qq(y)] for row, y in zip(a, b)], (r, c + 1), QQ)
    red, pivots = aug.rref()
    if c in pivots:
        return None
    rows = red.to_list()
    x = [QQ(0)] * c
    for i, p in enumerate(pivots):
        x[p] = rows[i][c]
    return tuple(x)


# --- lattice points -------------------------------------------------------


def _normalize(coeffs: tuple, b) -> tuple[tuple, Rational]:
    lead = next(abs(x) for x in coeffs if x != 0)
    return tuple(x / lead for x in coeffs), b / lead


def _dedupe(ineqs: Iterable[tuple[tuple, Rational]]) -> list[tuple[tuple, Rational]]:
    best: dict[tuple, Rational] = {}
    for a, b in ineqs:
        if all(x == 0 for x in a):
            best.setdefault((), QQ(0))
            best[()] = max(best[()], b)
            continue
        a, b = _normalize(a, b)
        if a not in best or b > best[a]:
            best[a] = b
    return sorted(best.items())


def _fm_systems(ineqs: list[tuple[tuple, Rational]], d: int) -> list[list[tuple[tuple, Rational]]] | None:
    """Fourier-Motzkin projections; ``systems[k]`` involves only m_1..m_k.

    Returns None when the rational region is empty.
    """
    systems: list = [None] * (d + 1)
    systems[d] = _dedupe(ineqs)
    for k in range(d, 0, -1):
        j = k - 1
        cur = systems[k]
        pos = [(a, b) for a, b in cur if a and a[j] > 0]
        neg = [(a, b) for a, b in cur if a and a[j] < 0]
        new = [(a, b) for a, b in cur if not a or a[j] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                sp, sn = ap[j], -an[j]
                a = tuple(x / sp + y / sn for x, y in zip(ap, an))
                new.append((a, bp / sp + bn / sn))
        systems[k - 1] = _dedupe(new)
    for a, b in systems[0]:
        if b > 0:
            return None
    return systems


def lattice_points_of_polyhedron(
    inequalities: Sequence[tuple[Sequence[int], object]],
) -> list[tuple[int, ...]]:
    """Integer points of ``{m : <m, a_i> >= b_i for all i}`` in lex order."""
    if not inequalities:
        raise UnboundedRegion("no inequalities")
    d = len(inequalities[0][0])
    ineqs = [(tuple(QQ(int(x)) for x in a), to_qq(b)) for a, b in inequalities]
    systems = _fm_systems(ineqs, d)
    if systems is None:
        return []
    levels = []
    for k in range(1, d + 1):
        j = k - 1
        rel = [(a, b) for a, b in systems[k] if a and a[j] != 0]
        lows = [(a, b) for a, b in rel if a[j] > 0]
        highs = [(a, b) for a, b in rel if a[j] < 0]
        if not lows or not highs:
            raise UnboundedRegion(f"no bound on coordinate {k} (recession direction)")
        levels.append((lows, highs))

    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def rec(k: int) -> None:
        j = k
        lows, highs = levels[k]
        lo = None
        hi = None
        for a, b in lows:
            rest = b - sum((a[i] * prefix[i] for i in range(j)), QQ(0))
            val = math.ceil(rest / a[j])
            lo = val if lo is None or val > lo else lo
        for a, b in highs:
            rest = b - sum((a[i] * prefix[i] for i in range(j)), QQ(0))
            val = math.floor(rest / a[j])
            hi = val if hi is None or val < hi else hi
        for x in range(lo, hi + 1):
            prefix.append(x)
            if k + 1 == d:
                out.append(tuple(prefix))
            else:
                rec(k + 1)
            prefix.pop()

    rec(0)
    return out


# --- sparse elimination ---------------------------------------------------


def _real_parts(vec: Mapping[int, object]) -> tuple[dict[int, Rational], dict[int, Rational]]:
    re: dict[int, Rational] = {}
    im: dict[int, Rational] = {}
    for c, v in vec.items():
        if isinstance(v, GaussianRational):
            if v.x != 0:
                re[c] = v.x
            if v.y != 0:
                im[c] = v.y
        else:
            q = to_qq(v)
            if q != 0:
                re[c] = q
    return re, im


class SparseEchelon:
    """Reduced row echelon form of a span of sparse vectors.

    Column 0 has the highest pivot priority. Works over QQ when every input
    entry is real and over QQ_I otherwise. Vectors are ``{col: scalar}``.
    """

    def __init__(self, rows: Iterable[Mapping[int, object]], ncols: int):
        self.ncols = ncols
        rows = [r for r in rows if r]
        gaussian = any(isinstance(v, GaussianRational) and v.y != 0 for r in rows for v in r.values())
        self.domain = QQ_I if gaussian else QQ
        conv = to_gauss if gaussian else to_qq
        data = {}
        for i, r in enumerate(rows):
            entries = {c: conv(v) for c, v in r.items()}
            entries = {c: v for c, v in entries.items() if v}
            if entries:
                data[len(data)] = entries
        self.pivot_rows: dict[int, dict[int, object]] = {}
        if data:
            dm = DomainMatrix(data, (len(data), ncols), self.domain)
            red, pivots = dm.rref()
            sdm = red.rep.to_sdm()
            for i, p in enumerate(pivots):
                self.pivot_rows[p] = dict(sdm[i])
        self.pivots = tuple(sorted(self.pivot_rows))
        self._pivot_set = frozenset(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def non_pivots(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self._pivot_set]

    def _reduce_field(self, vec: dict[int, object]) -> dict[int, object]:
        out = dict(vec)
        for c in [c for c in vec if c in self._pivot_set]:
            coef = out.pop(c, None)
            if not coef:
                continue
            for cc, v in self.pivot_rows[c].items():
                if cc == c:
                    continue
                nv = out.get(cc, 0) - coef * v
                if not nv:
                    out.pop(cc, None)
                else:
                    out[cc] = nv
        return out

    def reduce(self, vec: Mapping[int, object]) -> dict[int, object]:
        """Normal form: the unique equivalent vector supported off the pivots."""
        if self.domain == QQ_I:
            return self._reduce_field({c: to_gauss(v) for c, v in vec.items() if v})
        re, im = _real_parts(vec)
        re = self._reduce_field(re)
        im = self._reduce_field(im)
        if not im and not any(isinstance(v, GaussianRational) for v in vec.values()):
            return re
        out: dict[int, object] = {}
        for c in set(re) | set(im):
            out[c] = QQ_I(re.get(c, QQ(0)), im.get(c, QQ(0)))
        return out

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)


def solve_integer(a: IntMatrix, b: Sequence[int], ncols: int) -> tuple[int, ...] | None:
    """One integer solution of ``a x = b`` via the Smith form, or None."""
    rows = [list(map(int, r)) for r in a]
    if not rows:
        return (0,) * ncols
    snf = smith_normal_form(rows)
    ub = [sum(u * y for u, y in zip(row, b)) for row in snf.left]
    y = []
    for i in range(ncols):
        di = snf.diag[i] if i < len(snf.diag) else 0
        bi = ub[i] if i < len(ub) else 0
        if di == 0:
            y.append(0)
        elif bi % di:
            return None
        else:
            y.append(bi // di)
    if any(ub[i] != 0 for i in range(len(ub)) if i >= len(snf.diag) or snf.diag[i] == 0):
        return None
    return tuple(sum(snf.right[i][j] * y[j] for j in range(ncols)) for i in range(ncols))
