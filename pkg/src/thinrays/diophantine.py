"""Simultaneous Diophantine approximation and integer points near half-lines.

``simultaneous_approx`` scans denominators q = 1..Q and returns the one whose
worst distance of q*theta_i to the integers is smallest, decided exactly by
comparing squared residuals in the field.  ``point_near_halfline`` turns the
approximation into an integer point of a rational polyhedron at distance less
than eps from {y + lam*d : lam >= lambda_bar}, certifying membership,
distance, and projection parameter exactly before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import List, Optional, Sequence, Tuple

from .errors import BudgetExhausted, ValidationError
from .exactnum import (
    FieldElement,
    Scalar,
    exact_sign,
    nearest_int,
    upper_abs,
)
from .lattice import AffineSubspace, IntegerParam, integer_affine_param
from .polyhedron import HPolyhedron, RaySpec, contains, is_ray

DEFAULT_Q_MAX = 2**20
_MULTIPLES_PER_ROUND = 8


@dataclass(frozen=True)
class ApproxResult:
    """Best denominator q, the rounded numerators, and a certified bound on
    max_i |q*theta_i - numerators_i|."""

    q: int
    numerators: Tuple[int, ...]
    max_err: Fraction


def _residuals(theta: Sequence[Scalar], q: int):
    """Nearest integers and residuals of q*theta_i."""
    nums = []
    errs = []
    for t in theta:
        k, e = nearest_int(q * t)
        nums.append(k)
        errs.append(e)
    return tuple(nums), errs


def _max_residual_sq(errs) -> Scalar:
    worst = errs[0] * errs[0]
    for e in errs[1:]:
        sq = e * e
        if exact_sign(sq - worst) > 0:
            worst = sq
    return worst


def _best_denominator(theta: Sequence[Scalar], q_lo: int, q_hi: int):
    """(q, numerators, worst squared residual) minimizing the worst residual
    over q in [q_lo, q_hi]; ties take the smallest q."""
    best = None
    for q in range(q_lo, q_hi + 1):
        nums, errs = _residuals(theta, q)
        worst = _max_residual_sq(errs)
        if best is None or exact_sign(worst - best[2]) < 0:
            best = (q, nums, worst)
            if exact_sign(worst) == 0:
                break  # exact hit cannot be improved
    return best


def simultaneous_approx(theta: Sequence[Scalar], Q: int) -> ApproxResult:
    """Best simultaneous approximation denominator q <= Q, decided exactly.

    Dirichlet's theorem guarantees the worst residual is at most about
    Q**(-1/k) for k = len(theta); the scan returns the true optimum over the
    range together with a certified rational upper bound on its error.
    """
    if Q < 1:
        raise ValidationError("Q must be at least 1")
    if not theta:
        raise ValidationError("theta must be nonempty")
    q, nums, worst = _best_denominator(theta, 1, Q)
    if exact_sign(worst) == 0:
        return ApproxResult(q, nums, Fraction(0))
    _, errs = _residuals(theta, q)
    max_err = max(upper_abs(e, Fraction(1, 2**24)) for e in errs)
    return ApproxResult(q, nums, max_err)


def _solve_columns_exact(columns: Sequence[Sequence[int]], rhs):
    """Solve sum_j x_j * columns[j] = rhs for full-column-rank integer columns;
    rhs entries may be field elements.  Returns None when inconsistent."""
    ncols = len(columns)
    nrows = len(rhs)
    mat = [[Fraction(columns[j][i]) for j in range(ncols)] for i in range(nrows)]
    vec = list(rhs)
    piv_of_col: List[Optional[int]] = [None] * ncols
    used = set()
    for col in range(ncols):
        piv = next(
            (r for r in range(nrows) if r not in used and mat[r][col] != 0), None
        )
        if piv is None:
            return None
        used.add(piv)
        piv_of_col[col] = piv
        inv = 1 / mat[piv][col]
        mat[piv] = [v * inv for v in mat[piv]]
        vec[piv] = vec[piv] * inv
        for r in range(nrows):
            if r != piv and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[piv])]
                vec[r] = vec[r] - factor * vec[piv]
    for r in range(nrows):
        if r not in used and exact_sign(vec[r]) != 0:
            return None
    return [vec[piv_of_col[c]] for c in range(ncols)]


def _as_fraction_vector(d) -> Optional[List[Fraction]]:
    out = []
    for c in d:
        if isinstance(c, FieldElement):
            r = c.as_fraction()
            if r is None:
                return None
            out.append(r)
        else:
            out.append(Fraction(c))
    return out


def _primitive_with_scale(vec: Sequence[Fraction]) -> Tuple[Tuple[int, ...], Fraction]:
    """(primitive integer vector v, s) with vec = s * v and s > 0."""
    lcm = 1
    for c in vec:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in vec]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    prim = tuple(c // g for c in ints)
    return prim, Fraction(g, lcm)


class _Search:
    """Shared exact certification for candidate points."""

    def __init__(self, P, y, d, eps, lambda_bar, face_param, face):
        self.P = P
        self.y = y
        self.d = d
        self.eps_sq = Fraction(eps) * Fraction(eps)
        self.lambda_bar = Fraction(lambda_bar)
        self.face_param = face_param
        self.face = face
        self.dd = sum((c * c for c in d), Fraction(0))

    def certify(self, z: Tuple[int, ...]) -> bool:
        if not contains(self.P, z):
            return False
        if self.face is not None:
            for row, rhs in zip(self.face.W, self.face.w):
                if sum(Fraction(c) * zi for c, zi in zip(row, z)) != rhs:
                    return False
        u = tuple(z[i] - self.y[i] for i in range(len(z)))
        ud = sum((c * di for c, di in zip(u, self.d)), Fraction(0))
        lam = ud / self.dd
        if exact_sign(lam - self.lambda_bar) < 0:
            return False
        uu = sum(c * c for c in u)
        dist_sq = uu - ud * ud / self.dd
        return exact_sign(self.eps_sq - dist_sq) > 0


def point_near_halfline(
    P: HPolyhedron,
    y: Sequence[int],
    d: Sequence[Scalar],
    eps,
    lambda_bar,
    face: Optional[AffineSubspace] = None,
    q_max: int = DEFAULT_Q_MAX,
) -> Tuple[int, ...]:
    """An integer point of P (and of ``face`` if given) at distance < eps from
    the half-line {y + lam*d : lam >= lambda_bar}.

    Candidates come from rounding y + lam*d at integer lam drawn from
    simultaneous-approximation denominators with doubling budget Q; every
    returned point is certified exactly.  Raises BudgetExhausted with the
    largest Q tried when the budget is too small.
    """
    eps = Fraction(eps)
    lambda_bar = Fraction(lambda_bar)
    if eps <= 0 or lambda_bar <= 0:
        raise ValidationError("eps and lambda_bar must be positive")
    if not is_ray(P, RaySpec(y, d)):
        raise ValidationError("(y, d) is not a ray of P")

    face_param: Optional[IntegerParam] = None
    if face is not None:
        face_param = integer_affine_param(face, dimension=P.n)
        if face_param is None:
            raise ValidationError("face contains no integer points")
        if face_param.n_prime == 0:
            raise ValidationError("face is a single point; no half-line fits")
        cols = [
            [face_param.Mmap[i][j] for i in range(P.n)]
            for j in range(face_param.n_prime)
        ]
        y_shift = [Fraction(y[i] - face_param.x_base[i]) for i in range(P.n)]
        y_red = _solve_columns_exact(cols, y_shift)
        if y_red is None or any(v.denominator != 1 for v in y_red):
            raise ValidationError("apex is not an integer point of the face")
        d_red = _solve_columns_exact(cols, list(d))
        if d_red is None:
            raise ValidationError("direction does not lie in the face")
        search_y = tuple(int(v) for v in y_red)
        search_d = tuple(d_red)

        def to_ambient(zp):
            return face_param.apply(zp)

    else:
        search_y = tuple(int(v) for v in y)
        search_d = tuple(d)

        def to_ambient(zp):
            return zp

    search = _Search(P, tuple(int(v) for v in y), tuple(d), eps, lambda_bar, face_param, face)

    rational = _as_fraction_vector(search_d)
    if rational is not None:
        prim, scale = _primitive_with_scale(rational)
        # lam in original units corresponds to m = lam * scale along prim.
        m = floor(lambda_bar * scale) + 1
        for _ in range(max(64, q_max)):
            z = to_ambient(tuple(search_y[i] + m * prim[i] for i in range(len(prim))))
            if search.certify(z):
                return z
            m += 1
        raise BudgetExhausted("no on-ray integer point certified", q_max=q_max)

    Q = 16
    lam_floor = max(0, floor(lambda_bar))
    while Q <= q_max:
        candidates: List[int] = []
        best = _best_denominator(search_d, 1, Q)
        q = best[0]
        start = floor(lambda_bar / q) + 1
        candidates.extend(q * m for m in range(start, start + _MULTIPLES_PER_ROUND))
        if Q > lam_floor + 1:
            tail = _best_denominator(search_d, lam_floor + 1, Q)
            candidates.extend(tail[0] * m for m in (1, 2))
        seen = set()
        for lam in candidates:
            if lam in seen or lam <= lambda_bar:
                continue
            seen.add(lam)
            rounded = tuple(nearest_int(lam * c)[0] for c in search_d)
            z = to_ambient(tuple(search_y[i] + rounded[i] for i in range(len(rounded))))
            if search.certify(z):
                return z
        Q *= 2
    raise BudgetExhausted(
        f"no certified point within budget Q <= {q_max}", q_max=q_max
    )
