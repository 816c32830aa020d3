"""Shared constructions: the two built-in counterexample instances."""

from fractions import Fraction

import pytest

from thinrays.exactnum import AlgebraicReal, FieldElement, IntPolynomial
from thinrays.forms import CubicObjective, LinVec, SymMatrix, SymTensor3
from thinrays.polyhedron import HPolyhedron


def cbrt2_root():
    return AlgebraicReal(IntPolynomial([-2, 0, 0, 1]), 1, 2)


def sqrt2_root():
    return AlgebraicReal(IntPolynomial([-2, 0, 1]), 1, 2)


def cubic_instance():
    """Cubic counterexample: f = 2x1^3 + x2^3 + 4x3^3 - 6x1x2x3 - x1 over the
    cone spanned by the slab 1 <= x1, x2 <= 2, x3 = 1."""
    n = 3
    entries = [Fraction(0)] * 27

    def put(i, j, k, v):
        for a, b, c in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
            entries[(a * n + b) * n + c] = Fraction(v)

    put(0, 0, 0, 2)
    put(1, 1, 1, 1)
    put(2, 2, 2, 4)
    put(0, 1, 2, -1)
    T = SymTensor3(n, entries)
    f = CubicObjective(T, SymMatrix.zero(n), LinVec([Fraction(-1), 0, 0]))
    A = [
        (-1, 0, 1),
        (1, 0, -2),
        (0, -1, 1),
        (0, 1, -2),
        (0, 0, -1),
    ]
    P = HPolyhedron.from_rows(A, [0] * 5)
    theta = cbrt2_root()
    t1 = FieldElement.theta(theta)
    d_tilde = (t1, t1 * t1, FieldElement.embed(theta, 1))
    return f, P, theta, d_tilde


def quadratic_instance():
    """Quadratic counterexample: f = x1^2 - 2*sqrt(2) x1 x2 + 2x2^2 - x1 over
    the cone spanned by the slab 1 <= x1 <= 2, x2 = 1."""
    theta = sqrt2_root()
    rt2 = FieldElement.theta(theta)
    one = FieldElement.embed(theta, 1)
    M = SymMatrix(2, [one, -rt2, -rt2, 2 * one])
    f = CubicObjective(SymTensor3.zero(2), M, LinVec([Fraction(-1), 0]))
    A = [(-1, 1), (1, -2), (0, -1)]
    P = HPolyhedron.from_rows(A, [0] * 3)
    d_tilde = (rt2, one)
    return f, P, theta, d_tilde


@pytest.fixture
def cubic():
    return cubic_instance()


@pytest.fixture
def quadratic():
    return quadratic_instance()
