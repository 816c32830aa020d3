"""Restriction of the objective to rays and its exact analysis.

The restriction of f to the ray {y + lam*d} is the univariate polynomial
a3*lam^3 + a2*lam^2 + a1*lam + a0 with

    a3 = T[d,d,d]
    a2 = 3 T[y,d,d] + M[d,d]
    a1 = 3 T[y,y,d] + 2 M[y,d] + V[d]
    a0 = f(y)

Translating the base point by z with ||z|| <= eps perturbs the lower
coefficients by the delta terms

    delta2(z) = 3 T[z,d,d]
    delta1(z) = 6 T[y,z,d] + 3 T[z,z,d] + 2 M[z,d]
    delta0(z) = 3 T[y,z,z] + 3 T[y,y,z] + T[z,z,z] + 2 M[y,z] + M[z,z] + V[z]

which this module bounds by rational constants D2, D1, D0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import DimensionMismatch, ValidationError, WrongCase
from .exactnum import (
    AlgebraicReal,
    FieldElement,
    IntPolynomial,
    Scalar,
    exact_sign,
    field_generator_of,
    isolate_real_roots,
    sqrt_upper,
    upper_abs,
)
from .forms import (
    CubicObjective,
    LinVec,
    contract,
    eval_bilinear,
    eval_cubic,
    eval_linear,
    eval_trilinear,
    norm_bound,
)


@dataclass(frozen=True)
class RestrictionPoly:
    """Coefficients of f(y + lam*d) as a polynomial in lam."""

    a3: Scalar
    a2: Scalar
    a1: Scalar
    a0: Scalar

    def __call__(self, lam) -> Scalar:
        return ((self.a3 * lam + self.a2) * lam + self.a1) * lam + self.a0

    def coefficients(self):
        return (self.a3, self.a2, self.a1, self.a0)


def restriction(f: CubicObjective, y, d) -> RestrictionPoly:
    """Exact coefficients of the restriction of f to the ray from y along d."""
    if len(y) != f.n or len(d) != f.n:
        raise DimensionMismatch("ray dimension differs from objective")
    if all(exact_sign(v) == 0 for v in d):
        raise ValidationError("direction must be nonzero")
    a3 = eval_trilinear(f.T, d, d, d)
    a2 = 3 * eval_trilinear(f.T, y, d, d) + eval_bilinear(f.M, d, d)
    a1 = (
        3 * eval_trilinear(f.T, y, y, d)
        + 2 * eval_bilinear(f.M, y, d)
        + eval_linear(f.V, d)
    )
    a0 = eval_cubic(f, y)
    return RestrictionPoly(a3, a2, a1, a0)


class LimitClass(enum.Enum):
    MINUS_INF = "minus_inf"
    PLUS_INF = "plus_inf"
    BOUNDED_BELOW_NONCONST = "bounded_below_nonconst"
    CONSTANT = "constant"


class LimitVerdict(NamedTuple):
    kind: LimitClass
    degree: int


def classify_limit(r: RestrictionPoly) -> LimitVerdict:
    """Limit of r(lam) as lam -> +inf from the first nonzero coefficient.

    A positive leading coefficient yields PLUS_INF for every degree,
    including degree one (linear nondecreasing restrictions tend to +inf).
    """
    for degree, coeff in ((3, r.a3), (2, r.a2), (1, r.a1)):
        s = exact_sign(coeff)
        if s < 0:
            return LimitVerdict(LimitClass.MINUS_INF, degree)
        if s > 0:
            return LimitVerdict(LimitClass.PLUS_INF, degree)
    return LimitVerdict(LimitClass.CONSTANT, 0)


@dataclass(frozen=True)
class PerturbationBounds:
    """Rational bounds with |delta_i(z)| <= Di whenever ||z|| <= eps."""

    d2: Fraction
    d1: Fraction
    d0: Fraction
    norm_t: Fraction
    norm_m: Fraction
    norm_v: Fraction
    u_y: Fraction
    u_d: Fraction


def _norm_upper(vec) -> Tuple[Fraction, Fraction]:
    """(U, U_sq) with ||vec|| <= U and ||vec||^2 <= U_sq, both rational."""
    sq = sum((c * c for c in vec), Fraction(0))
    if isinstance(sq, FieldElement):
        sq_ub = upper_abs(sq)
    else:
        sq_ub = Fraction(sq)
    return sqrt_upper(sq_ub), sq_ub


def perturbation_bounds(f: CubicObjective, y, d, eps) -> PerturbationBounds:
    """Sound rational bounds on the translation deltas for ||z|| <= eps."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValidationError("eps must be positive")
    nt = norm_bound(f.T)
    nm = norm_bound(f.M)
    nv = norm_bound(f.V)
    uy, uy_sq = _norm_upper(y)
    ud, ud_sq = _norm_upper(d)
    d2 = 3 * eps * nt * ud_sq
    d1 = eps * (6 * nt * uy * ud + 2 * nm * ud) + 3 * eps**2 * nt * ud
    d0 = (
        eps * (3 * nt * uy_sq + 2 * nm * uy + nv)
        + eps**2 * (3 * nt * uy + nm)
        + eps**3 * nt
    )
    return PerturbationBounds(d2, d1, d0, nt, nm, nv, uy, ud)


class ShrinkCase(enum.Enum):
    DEG2 = 2
    DEG1 = 1


def shrink_epsilon(f: CubicObjective, y, d, eps0, case: ShrinkCase) -> Fraction:
    """Largest eps = eps0 / 2^k with the perturbed leading coefficient negative.

    DEG2 requires a2 + D2(eps) < 0; DEG1 requires a1 + D1(eps) < 0.  Halving
    terminates since the Di vanish with eps and the coefficient is strictly
    negative.
    """
    eps0 = Fraction(eps0)
    if eps0 <= 0:
        raise ValidationError("eps0 must be positive")
    r = restriction(f, y, d)
    coeff = r.a2 if case is ShrinkCase.DEG2 else r.a1
    if exact_sign(coeff) >= 0:
        raise WrongCase(f"{case.name} shrink needs a strictly negative coefficient")
    eps = eps0
    while True:
        bounds = perturbation_bounds(f, y, d, eps)
        slack = bounds.d2 if case is ShrinkCase.DEG2 else bounds.d1
        if exact_sign(coeff + slack) < 0:
            return eps
        eps /= 2


@dataclass(frozen=True)
class DirectionDiagnostics:
    """Exact contractions governing the vanishing conditions of a direction."""

    t3: Scalar                     # T[d,d,d]
    m2: Scalar                     # M[d,d]
    v1: Scalar                     # V[d]
    tdd: LinVec                    # T[d,d]
    mdv: Optional[Scalar] = None   # M[d,v]
    tdv: Optional[LinVec] = None   # T[d,v]

    @property
    def t3_zero(self) -> bool:
        return exact_sign(self.t3) == 0

    @property
    def m2_zero(self) -> bool:
        return exact_sign(self.m2) == 0

    @property
    def v1_nonnegative(self) -> bool:
        return exact_sign(self.v1) >= 0

    @property
    def tdd_zero(self) -> bool:
        return self.tdd.is_zero

    @property
    def mdv_zero(self) -> Optional[bool]:
        return None if self.mdv is None else exact_sign(self.mdv) == 0

    @property
    def tdv_zero(self) -> Optional[bool]:
        return None if self.tdv is None else self.tdv.is_zero


def direction_diagnostics(f: CubicObjective, d, v=None) -> DirectionDiagnostics:
    """All contractions used by the vanishing-condition checks, exactly."""
    if len(d) != f.n:
        raise DimensionMismatch("direction dimension differs from objective")
    t3 = eval_trilinear(f.T, d, d, d)
    m2 = eval_bilinear(f.M, d, d)
    v1 = eval_linear(f.V, d)
    tdd = contract(f.T, d, d)
    mdv = None
    tdv = None
    if v is not None:
        if len(v) != f.n:
            raise DimensionMismatch("second direction dimension differs")
        mdv = eval_bilinear(f.M, d, v)
        tdv = contract(f.T, d, v)
    return DirectionDiagnostics(t3, m2, v1, tdd, mdv, tdv)


# ---------------------------------------------------------------------------
# Critical directions along polynomial curves
# ---------------------------------------------------------------------------


def _poly_add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else Fraction(0)
        y = b[i] if i < len(b) else Fraction(0)
        out.append(x + y)
    while out and exact_sign(out[-1]) == 0:
        out.pop()
    return out


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    while out and exact_sign(out[-1]) == 0:
        out.pop()
    return out


def _poly_scale(a, s):
    out = [s * c for c in a]
    while out and exact_sign(out[-1]) == 0:
        out.pop()
    return out


def _polydet(mat) -> List[Fraction]:
    """Determinant of a matrix of Fraction-coefficient polynomials."""
    n = len(mat)
    if n == 1:
        return list(mat[0][0])
    out: List[Fraction] = []
    for i in range(n):
        if not mat[i][0]:
            continue
        minor = [row[1:] for r, row in enumerate(mat) if r != i]
        term = _poly_mul(mat[i][0], _polydet(minor))
        if i % 2:
            term = _poly_scale(term, Fraction(-1))
        out = _poly_add(out, term)
    return out


def _norm_polynomial(coeff_vectors, min_poly: IntPolynomial) -> List[Fraction]:
    """Resultant in u of min_poly(u) and sum_e A_e(t) u^e, a polynomial in t
    whose real roots include every real root of the field-coefficient input."""
    k = min_poly.degree
    a_polys = []  # index = power of u, entries are polynomials in t
    for e in range(k):
        a_e = [vec[e] for vec in coeff_vectors]
        while a_e and a_e[-1] == 0:
            a_e.pop()
        a_polys.append(a_e)
    while a_polys and not a_polys[-1]:
        a_polys.pop()
    du = len(a_polys) - 1
    if du < 1:
        raise ValidationError("norm polynomial requested for rational coefficients")
    dm = k
    size = dm + du
    m_cs = min_poly.to_fractions()
    mat = [[[] for _ in range(size)] for _ in range(size)]
    for r in range(du):  # rows of min_poly coefficients (descending powers)
        for i, c in enumerate(reversed(m_cs)):
            mat[r][r + i] = [c] if c else []
    for r in range(dm):  # rows of the input coefficients
        for i, a in enumerate(reversed(a_polys)):
            mat[du + r][r + i] = list(a)
    return _polydet(mat)


@dataclass(frozen=True)
class CriticalDirection:
    root: AlgebraicReal
    direction: Tuple[Scalar, ...]


@dataclass(frozen=True)
class CurveCriticalResult:
    """Roots of the leading form along a polynomial curve.

    ``coefficients`` is the expanded univariate polynomial (index = degree)
    of T[d(t),d(t),d(t)] for cubic objectives or M[d(t),d(t)] for quadratic
    ones.  ``uncertified`` collects domain roots of the rational norm
    polynomial at which vanishing could not be verified inside the
    objective's field.
    """

    coefficients: Tuple[Scalar, ...]
    form_degree: int
    identically_zero: bool
    roots: Tuple[CriticalDirection, ...]
    uncertified: Tuple[AlgebraicReal, ...]


def curve_critical_directions(
    f: CubicObjective, curve: Sequence[IntPolynomial], domain
) -> CurveCriticalResult:
    """Isolate parameter values where the leading form vanishes along a curve.

    The curve is one integer polynomial per coordinate; the domain is a
    rational interval for the parameter.  Each certified root is returned
    with the curve evaluated at it as exact field elements.
    """
    if len(curve) != f.n:
        raise DimensionMismatch("curve dimension differs from objective")
    lo, hi = Fraction(domain[0]), Fraction(domain[1])
    if lo > hi:
        raise ValidationError("empty parameter domain")
    comps = [p.to_fractions() for p in curve]

    if not f.T.is_zero:
        form_degree = 3
        poly: List[Scalar] = []
        for (i, j, k), t in f.T.nonzero_items():
            prod = _poly_mul(_poly_mul(comps[i], comps[j]), comps[k])
            poly = _poly_add(poly, _poly_scale(prod, t))
    elif not f.M.is_zero:
        form_degree = 2
        poly = []
        for (i, j), m in f.M.nonzero_items():
            poly = _poly_add(poly, _poly_scale(_poly_mul(comps[i], comps[j]), m))
    else:
        return CurveCriticalResult((), 1, True, (), ())

    if not poly:
        return CurveCriticalResult((), form_degree, True, (), ())

    gen = field_generator_of(poly)
    if gen is None:
        norm_poly = IntPolynomial.from_fractions([Fraction(c) for c in poly])
    else:
        vectors = []
        for c in poly:
            if isinstance(c, FieldElement):
                vectors.append(list(c.coeffs))
            else:
                vectors.append([Fraction(c)] + [Fraction(0)] * (gen.degree - 1))
        if all(all(v == 0 for v in vec[1:]) for vec in vectors):
            norm_poly = IntPolynomial.from_fractions([vec[0] for vec in vectors])
        else:
            norm_poly = IntPolynomial.from_fractions(
                _norm_polynomial(vectors, gen.min_poly)
            )

    roots: List[CriticalDirection] = []
    uncertified: List[AlgebraicReal] = []
    for root in isolate_real_roots(norm_poly):
        if root.compare_fraction(lo) < 0 or root.compare_fraction(hi) > 0:
            continue
        direction_gen: Optional[AlgebraicReal] = None
        if gen is None:
            # Roots of the rational polynomial vanish by construction.
            if root.certified_irreducible:
                direction_gen = root
            else:
                uncertified.append(root)
                continue
        else:
            rational = root.to_fraction()
            if rational is not None:
                value = sum(
                    (c * rational**e for e, c in enumerate(poly)), Fraction(0)
                )
                if exact_sign(value) != 0:
                    continue
                direction_gen = root
            elif root.min_poly == gen.min_poly and root.same_root(gen):
                theta = FieldElement.theta(gen)
                value = sum(
                    (c * theta**e for e, c in enumerate(poly)),
                    FieldElement(gen, []),
                )
                if not value.is_zero:
                    continue
                direction_gen = gen
            else:
                uncertified.append(root)
                continue
        arg = FieldElement.theta(direction_gen)
        direction = tuple(p(arg) for p in curve)
        roots.append(CriticalDirection(root, direction))
    return CurveCriticalResult(
        tuple(poly), form_degree, False, tuple(roots), tuple(uncertified)
    )
