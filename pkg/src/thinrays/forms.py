"""Symmetric tensor, matrix, and vector forms for cubic objectives.

The objective is f(x) = T[x,x,x] + M[x,x] + V[x] + c with a symmetric
3-tensor T, symmetric matrix M, vector V, and constant c.  Entries are
rational; for objectives with entries in Q(theta) the same types carry
FieldElement entries (scalar extension), and every operation below works
unchanged for either.

Only the constant c never influences unboundedness decisions; it is stored
and included in evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence, Tuple

from .errors import DimensionMismatch, ValidationError
from .exactnum import (
    AlgebraicReal,
    FieldElement,
    Scalar,
    exact_sign,
    field_generator_of,
    upper_abs,
)


def _as_scalar(v) -> Scalar:
    if isinstance(v, (int, Fraction, FieldElement)):
        return v if not isinstance(v, int) else Fraction(v)
    raise ValidationError(f"unsupported entry type {type(v).__name__}")


def _scalar_zero(values) -> Scalar:
    gen = field_generator_of(values)
    if gen is not None:
        return FieldElement(gen, [])
    return Fraction(0)


class SymTensor3:
    """Dense symmetric 3-tensor; entries invariant under index permutations."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Sequence[Scalar]):
        if len(entries) != n**3:
            raise DimensionMismatch(f"expected {n**3} entries, got {len(entries)}")
        entries = tuple(_as_scalar(e) for e in entries)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    a = entries[(i * n + j) * n + k]
                    b = entries[(j * n + i) * n + k]
                    c = entries[(i * n + k) * n + j]
                    if exact_sign(a - b) != 0 or exact_sign(a - c) != 0:
                        raise ValidationError("tensor entries are not symmetric")
        self.n = n
        self.entries = entries

    @classmethod
    def zero(cls, n: int) -> "SymTensor3":
        return cls(n, [Fraction(0)] * n**3)

    def __getitem__(self, ijk) -> Scalar:
        i, j, k = ijk
        return self.entries[(i * self.n + j) * self.n + k]

    @property
    def is_zero(self) -> bool:
        return all(exact_sign(e) == 0 for e in self.entries)

    def nonzero_items(self):
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    e = self[i, j, k]
                    if exact_sign(e) != 0:
                        yield (i, j, k), e


class SymMatrix:
    """Dense symmetric matrix."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Sequence[Scalar]):
        if len(entries) != n * n:
            raise DimensionMismatch(f"expected {n * n} entries, got {len(entries)}")
        entries = tuple(_as_scalar(e) for e in entries)
        for i in range(n):
            for j in range(i + 1, n):
                if exact_sign(entries[i * n + j] - entries[j * n + i]) != 0:
                    raise ValidationError("matrix entries are not symmetric")
        self.n = n
        self.entries = entries

    @classmethod
    def zero(cls, n: int) -> "SymMatrix":
        return cls(n, [Fraction(0)] * (n * n))

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.entries[i * self.n + j]

    @property
    def is_zero(self) -> bool:
        return all(exact_sign(e) == 0 for e in self.entries)

    def nonzero_items(self):
        for i in range(self.n):
            for j in range(self.n):
                e = self[i, j]
                if exact_sign(e) != 0:
                    yield (i, j), e


class LinVec:
    """Coefficient vector of the linear form."""

    __slots__ = ("n", "entries")

    def __init__(self, entries: Sequence[Scalar]):
        self.entries = tuple(_as_scalar(e) for e in entries)
        self.n = len(self.entries)

    @classmethod
    def zero(cls, n: int) -> "LinVec":
        return cls([Fraction(0)] * n)

    def __getitem__(self, i) -> Scalar:
        return self.entries[i]

    @property
    def is_zero(self) -> bool:
        return all(exact_sign(e) == 0 for e in self.entries)


class CubicObjective:
    """f(x) = T[x,x,x] + M[x,x] + V[x] + c with all parts of one dimension."""

    __slots__ = ("T", "M", "V", "c", "n")

    def __init__(self, T: SymTensor3, M: SymMatrix, V: LinVec, c=Fraction(0)):
        if not (T.n == M.n == V.n):
            raise DimensionMismatch("objective parts have different dimensions")
        self.T = T
        self.M = M
        self.V = V
        self.c = _as_scalar(c)
        self.n = T.n

    @property
    def generator(self) -> Optional[AlgebraicReal]:
        """Shared field generator of any irrational entries, or None."""
        return field_generator_of(
            list(self.T.entries) + list(self.M.entries) + list(self.V.entries) + [self.c]
        )

    @property
    def is_quadratic(self) -> bool:
        return self.T.is_zero

    def __call__(self, x) -> Scalar:
        return eval_cubic(self, x)


def _check_dim(n: int, *vectors):
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch(f"expected vectors of length {n}")


def symmetrize_tensor(raw) -> SymTensor3:
    """Average raw cubic coefficients over all six index permutations.

    ``raw`` is an n*n*n nested sequence of coefficients alpha; the result T
    satisfies sum(alpha_ijk x_i x_j x_k) = T[x,x,x] for all x.
    """
    n = len(raw)
    for plane in raw:
        if len(plane) != n or any(len(row) != n for row in plane):
            raise DimensionMismatch("raw tensor is not cubic")
    entries = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = sum(
                    (_as_scalar(raw[a][b][c]) for a, b, c in permutations((i, j, k))),
                    Fraction(0),
                )
                entries.append(acc / 6)
    return SymTensor3(n, entries)


def symmetrize_matrix(raw) -> SymMatrix:
    """M_ij = (raw_ij + raw_ji) / 2."""
    n = len(raw)
    if any(len(row) != n for row in raw):
        raise DimensionMismatch("raw matrix is not square")
    entries = []
    for i in range(n):
        for j in range(n):
            entries.append((_as_scalar(raw[i][j]) + _as_scalar(raw[j][i])) / 2)
    return SymMatrix(n, entries)


def eval_trilinear(T: SymTensor3, x, y, z) -> Scalar:
    """Exact T[x,y,z] = sum T_ijk x_i y_j z_k."""
    n = T.n
    _check_dim(n, x, y, z)
    acc = _scalar_zero(list(T.entries) + list(x) + list(y) + list(z))
    for (i, j, k), e in T.nonzero_items():
        acc = acc + e * x[i] * y[j] * z[k]
    return acc


def eval_bilinear(M: SymMatrix, x, y) -> Scalar:
    """Exact M[x,y] = sum M_ij x_i y_j."""
    n = M.n
    _check_dim(n, x, y)
    acc = _scalar_zero(list(M.entries) + list(x) + list(y))
    for (i, j), e in M.nonzero_items():
        acc = acc + e * x[i] * y[j]
    return acc


def eval_linear(V: LinVec, x) -> Scalar:
    """Exact V[x] = sum V_i x_i."""
    _check_dim(V.n, x)
    acc = _scalar_zero(list(V.entries) + list(x))
    for i in range(V.n):
        acc = acc + V[i] * x[i]
    return acc


def contract(form, *vectors):
    """Partial evaluation of a symmetric form against one or two vectors.

    T with two vectors -> LinVec with (T[d,e])_i = sum_jk T_ijk d_j e_k;
    T with one vector  -> SymMatrix with (T[d])_ij = sum_k T_ijk d_k;
    M with one vector  -> LinVec with (M[d])_i = sum_j M_ij d_j.
    By symmetry the contracted axes are immaterial.
    """
    if isinstance(form, SymTensor3):
        n = form.n
        if len(vectors) == 2:
            d, e = vectors
            _check_dim(n, d, e)
            zero = _scalar_zero(list(form.entries) + list(d) + list(e))
            out = [zero] * n
            for (i, j, k), t in form.nonzero_items():
                out[i] = out[i] + t * d[j] * e[k]
            return LinVec(out)
        if len(vectors) == 1:
            (d,) = vectors
            _check_dim(n, d)
            zero = _scalar_zero(list(form.entries) + list(d))
            out = [zero] * (n * n)
            for (i, j, k), t in form.nonzero_items():
                out[i * n + j] = out[i * n + j] + t * d[k]
            return SymMatrix(n, out)
        raise DimensionMismatch("tensor contraction takes one or two vectors")
    if isinstance(form, SymMatrix):
        if len(vectors) != 1:
            raise DimensionMismatch("matrix contraction takes one vector")
        (d,) = vectors
        _check_dim(form.n, d)
        zero = _scalar_zero(list(form.entries) + list(d))
        out = [zero] * form.n
        for (i, j), m in form.nonzero_items():
            out[i] = out[i] + m * d[j]
        return LinVec(out)
    raise ValidationError(f"cannot contract {type(form).__name__}")


def eval_cubic(f: CubicObjective, x) -> Scalar:
    """Exact objective value f(x)."""
    _check_dim(f.n, x)
    return (
        eval_trilinear(f.T, x, x, x)
        + eval_bilinear(f.M, x, x)
        + eval_linear(f.V, x)
        + f.c
    )


def norm_bound(form) -> Fraction:
    """Entrywise absolute sum N1, a rational upper bound for the form norms.

    Guarantees |T[x,y,z]| <= N1(T) ||x|| ||y|| ||z|| for the Euclidean norm,
    and likewise for matrices and vectors.  For entries in Q(theta) this is a
    certified rational upper bound of the exact sum.
    """
    if isinstance(form, (SymTensor3, SymMatrix, LinVec)):
        total = Fraction(0)
        for e in form.entries:
            if isinstance(e, FieldElement):
                total += upper_abs(e)
            else:
                total += abs(e)
        return total
    raise ValidationError(f"cannot bound {type(form).__name__}")
