"""Rational H-polyhedra: membership, recession cone, rays, extreme rays,
and projection of recession vectors onto facets of the recession cone."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    NoBlockingRow,
    NotPointed,
    ValidationError,
)
from .exactnum import FieldElement, Scalar, exact_sign


class HPolyhedron:
    """P = {x : Ax <= b} with rational data; rows may be redundant."""

    __slots__ = ("A", "b")

    def __init__(self, A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
        A = tuple(tuple(Fraction(v) for v in row) for row in A)
        b = tuple(Fraction(v) for v in b)
        if len(A) != len(b):
            raise DimensionMismatch("row count of A must match length of b")
        if A and any(len(row) != len(A[0]) for row in A):
            raise DimensionMismatch("ragged constraint matrix")
        if not A:
            raise ValidationError("ambient dimension undetermined for empty system")
        self.A = A
        self.b = b

    @classmethod
    def from_rows(cls, A, b) -> "HPolyhedron":
        return cls(A, b)

    @classmethod
    def whole_space(cls, n: int) -> "HPolyhedron":
        # One vacuous row keeps the ambient dimension explicit.
        return cls([tuple(Fraction(0) for _ in range(n))], [Fraction(0)])

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def m(self) -> int:
        return len(self.A)

    def row_value(self, i: int, x) -> Scalar:
        acc = self.A[i][0] * x[0]
        for j in range(1, self.n):
            acc = acc + self.A[i][j] * x[j]
        return acc

    def with_rows(self, extra_rows, extra_b) -> "HPolyhedron":
        return HPolyhedron(list(self.A) + list(extra_rows), list(self.b) + list(extra_b))


class RaySpec:
    """Ray {y + lam*d : lam >= 0} with integer apex and nonzero direction."""

    __slots__ = ("y", "d")

    def __init__(self, y: Sequence[int], d: Sequence[Scalar]):
        y = tuple(int(v) for v in y)
        d = tuple(d)
        if len(y) != len(d):
            raise DimensionMismatch("apex and direction dimensions differ")
        if all(exact_sign(v) == 0 for v in d):
            raise ValidationError("ray direction must be nonzero")
        self.y = y
        self.d = d

    @property
    def n(self) -> int:
        return len(self.y)


def contains(P: HPolyhedron, x) -> bool:
    """Exact membership test; x may have rational or field-valued entries."""
    if len(x) != P.n:
        raise DimensionMismatch("point dimension differs from polyhedron")
    for i in range(P.m):
        if exact_sign(P.row_value(i, x) - P.b[i]) > 0:
            return False
    return True


def in_recession(P: HPolyhedron, d) -> bool:
    """True iff Ad <= 0 exactly."""
    if len(d) != P.n:
        raise DimensionMismatch("direction dimension differs from polyhedron")
    for i in range(P.m):
        if exact_sign(P.row_value(i, d)) > 0:
            return False
    return True


def is_ray(P: HPolyhedron, ray: RaySpec) -> bool:
    return contains(P, ray.y) and in_recession(P, ray.d)


def _rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by Gaussian elimination."""
    mat = [list(map(Fraction, row)) for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    col = 0
    while rank < len(mat) and col < ncols:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        for r in range(rank + 1, len(mat)):
            if mat[r][col] != 0:
                factor = mat[r][col] / prow[col]
                for c in range(col, ncols):
                    mat[r][c] -= factor * prow[c]
        rank += 1
        col += 1
    return rank


def is_pointed(P: HPolyhedron) -> bool:
    """True iff the lineality space {x : Ax = 0} is trivial, i.e. rank(A) = n."""
    return _rank(P.A) == P.n


def _kernel_vector(rows: Sequence[Sequence[Fraction]], n: int) -> Optional[Tuple[Fraction, ...]]:
    """A nonzero kernel vector when the rows have rank exactly n-1, else None."""
    mat = [list(map(Fraction, row)) for row in rows]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col] / prow[col]
                for c in range(col, n):
                    mat[r][c] -= factor * prow[c]
        pivots.append(col)
        rank += 1
    if rank != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    v = [Fraction(0)] * n
    v[free] = Fraction(1)
    for r, col in enumerate(pivots):
        v[col] = -mat[r][free] / mat[r][col]
    return tuple(v)


def _primitive(v: Sequence[Fraction]) -> Tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector."""
    denom_lcm = 1
    for c in v:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in v]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    return tuple(c // g for c in ints)


def extreme_rays(P: HPolyhedron) -> List[Tuple[int, ...]]:
    """All extreme rays of rec(P) as primitive integer vectors, for n <= 4.

    Enumerates (n-1)-subsets of rows, solves for one-dimensional kernels, and
    keeps the recession-feasible orientation; a nonzero recession direction
    whose tight rows have rank n-1 is extreme for a pointed cone.
    """
    if not is_pointed(P):
        raise NotPointed("extreme rays are only enumerated for pointed polyhedra")
    n = P.n
    if n > 4:
        raise DimensionTooLarge("extreme-ray enumeration is desk-scale (n <= 4)")
    if n == 1:
        candidates = [(Fraction(1),), (Fraction(-1),)]
    else:
        candidates = []
        for subset in combinations(range(P.m), n - 1):
            v = _kernel_vector([P.A[i] for i in subset], n)
            if v is not None:
                candidates.append(v)
    found = {}
    for v in candidates:
        for oriented in (v, tuple(-c for c in v)):
            if in_recession(P, oriented):
                prim = _primitive(oriented)
                found.setdefault(prim, prim)
    return sorted(found)


def facet_project(P: HPolyhedron, x, d):
    """Project a recession vector x along -d onto a facet of rec(P).

    Requires Ax <= 0, Ad <= 0 and some row with a_i.d < 0.  Returns
    (y, p, tight_row) with p = min over such rows of (a_i.x)/(a_i.d) >= 0,
    y = x - p*d satisfying Ay <= 0 and a_tight.y = 0.  Ties pick the
    smallest row index.
    """
    if not in_recession(P, x) or not in_recession(P, d):
        raise ValidationError("facet projection needs x and d in the recession cone")
    best_ratio = None
    best_row = None
    for i in range(P.m):
        ad = P.row_value(i, d)
        if exact_sign(ad) < 0:
            ratio = P.row_value(i, x) / ad
            if best_ratio is None or exact_sign(ratio - best_ratio) < 0:
                best_ratio = ratio
                best_row = i
    if best_row is None:
        raise NoBlockingRow("-d is in the recession cone; no row blocks the projection")
    y = tuple(x[j] - best_ratio * d[j] for j in range(P.n))
    return y, best_ratio, best_row
