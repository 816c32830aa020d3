"""Integer linear algebra: column Hermite normal form and the parametrization
of the integer points of a rational affine subspace {x : Wx = w} as
x_base + Mmap * Z^(n'), with the image equal to the full integer point set."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import ValidationError
from .polyhedron import _rank


class AffineSubspace:
    """{x : Wx = w} with rational data."""

    __slots__ = ("W", "w")

    def __init__(self, W, w):
        W = tuple(tuple(Fraction(v) for v in row) for row in W)
        w = tuple(Fraction(v) for v in w)
        if len(W) != len(w):
            raise ValidationError("row count of W must match length of w")
        if W and any(len(row) != len(W[0]) for row in W):
            raise ValidationError("ragged equation matrix")
        self.W = W
        self.w = w

    @property
    def nrows(self) -> int:
        return len(self.W)

    def ncols(self, default: Optional[int] = None) -> int:
        if self.W:
            return len(self.W[0])
        if default is None:
            raise ValidationError("empty system needs an explicit dimension")
        return default


class IntegerParam:
    """Integer point plus lattice basis: pi(z) = x_base + Mmap @ z."""

    __slots__ = ("x_base", "Mmap")

    def __init__(self, x_base: Sequence[int], Mmap: Sequence[Sequence[int]]):
        self.x_base = tuple(int(v) for v in x_base)
        self.Mmap = tuple(tuple(int(v) for v in row) for row in Mmap)

    @property
    def n(self) -> int:
        return len(self.x_base)

    @property
    def n_prime(self) -> int:
        return len(self.Mmap[0]) if self.Mmap and self.Mmap[0] else 0

    def apply(self, z: Sequence) -> Tuple:
        return tuple(
            self.x_base[i] + sum(self.Mmap[i][j] * z[j] for j in range(len(z)))
            for i in range(self.n)
        )


def hnf(B: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Column Hermite normal form: H = B @ U with U unimodular.

    Pivots are positive, sit in increasing rows over the leading columns,
    entries left of a pivot are reduced into [0, pivot), and the trailing
    columns of H are zero.
    """
    if not B or not B[0]:
        raise ValidationError("HNF of an empty matrix")
    m, n = len(B), len(B[0])
    if any(len(row) != n for row in B):
        raise ValidationError("ragged matrix")
    H = [[int(v) for v in row] for row in B]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_combine(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k); ad-bc = +-1
        for mat in (H, U):
            for row in mat:
                row[j], row[k] = a * row[j] + b * row[k], c * row[j] + d * row[k]

    pivot_col = 0
    pivots = []  # (row, col)
    for r in range(m):
        # Clear row r across columns >= pivot_col down to one nonzero entry.
        j = pivot_col
        for k in range(pivot_col + 1, n):
            if H[r][k] == 0:
                continue
            if H[r][j] == 0:
                for mat in (H, U):
                    for row in mat:
                        row[j], row[k] = row[k], -row[j]
                continue
            g = math.gcd(H[r][j], H[r][k])
            x, y = _bezout(H[r][j], H[r][k], g)
            col_combine(j, k, x, y, -H[r][k] // g, H[r][j] // g)
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            for mat in (H, U):
                for row in mat:
                    row[j] = -row[j]
        # Reduce entries left of the pivot into [0, pivot).
        for k in range(j):
            q = H[r][k] // H[r][j]
            if q:
                for mat in (H, U):
                    for row in mat:
                        row[k] -= q * row[j]
        pivots.append((r, j))
        pivot_col += 1
        if pivot_col == n:
            break
    return H, U


def _bezout(a: int, b: int, g: int) -> Tuple[int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    r0, r1 = a, b
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    # r0 = +-g
    if r0 == g:
        return x0, y0
    return -x0, -y0


def _pivots_of(H: Sequence[Sequence[int]]) -> List[Tuple[int, int]]:
    pivots = []
    m = len(H)
    n = len(H[0])
    col = 0
    for r in range(m):
        if col < n and H[r][col] != 0 and all(H[r][k] == 0 for k in range(col + 1, n)):
            pivots.append((r, col))
            col += 1
    return pivots


def integer_affine_param(S: AffineSubspace, dimension: Optional[int] = None) -> Optional[IntegerParam]:
    """Parametrize the integer points of {x : Wx = w}, or None if there are none.

    The columns of Mmap are a lattice basis of ker(W) over Z, so the image of
    Z^(n') is exactly the integer point set of the subspace (both inclusions).
    """
    n = S.ncols(dimension)
    if S.nrows == 0:
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return IntegerParam([0] * n, ident)

    # Scale each row to integers (including the right-hand side).
    W_int: List[List[int]] = []
    w_int: List[int] = []
    for row, rhs in zip(S.W, S.w):
        scale = 1
        for v in list(row) + [rhs]:
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
        W_int.append([int(v * scale) for v in row])
        w_int.append(int(rhs * scale))

    if all(all(v == 0 for v in row) for row in W_int):
        if any(v != 0 for v in w_int):
            return None
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return IntegerParam([0] * n, ident)

    H, U = hnf(W_int)
    pivots = _pivots_of(H)

    # Solve H y = w on the pivot columns, left to right.
    y = [Fraction(0)] * len(H[0])
    for r, c in pivots:
        acc = Fraction(w_int[r])
        for k in range(c):
            acc -= H[r][k] * y[k]
        y[c] = acc / H[r][c]
        if y[c].denominator != 1:
            return None
    # Consistency on the remaining rows.
    for r in range(len(H)):
        total = sum(H[r][c] * y[c] for c in range(len(y)))
        if total != w_int[r]:
            return None

    x_base = [
        sum(U[i][c] * int(y[c]) for c in range(len(y))) for i in range(n)
    ]
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(len(H[0])) if c not in pivot_cols]
    Mmap = [[U[i][c] for c in free_cols] for i in range(n)]
    return IntegerParam(x_base, Mmap)
