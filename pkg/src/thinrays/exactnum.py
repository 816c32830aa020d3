"""Exact arithmetic foundation.

Rationals are ``fractions.Fraction`` (arbitrary precision, canonical form by
construction).  On top of that this module provides integer polynomials, real
root isolation by Descartes-rule bisection, and exact arithmetic in a real
algebraic number field Q(theta) given by a minimal polynomial and an
isolating interval.

Every public value is immutable; the only hidden state is a monotone
narrowing cache for isolating intervals, which never changes the represented
number, so all operations stay pure and safe for concurrent use.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from .errors import DivisionByZero, MismatchedField, ValidationError

Rational = Fraction
Scalar = Union[int, Fraction, "FieldElement"]

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" with a positive denominator; reject everything else."""
    if not isinstance(text, str):
        raise ValidationError(f"rational must be a string, got {type(text).__name__}")
    parts = text.strip().split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            num, den = int(parts[0]), int(parts[1])
            if den <= 0:
                raise ValidationError(f"denominator must be positive in {text!r}")
            return Fraction(num, den)
    except ValueError:
        pass
    raise ValidationError(f"malformed rational {text!r}")


def format_rational(value) -> str:
    """Canonical string form: "p" for integers, "p/q" otherwise."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Dense polynomial helpers over Fraction (private).  Coefficient lists are
# indexed by degree and kept free of trailing zeros.
# ---------------------------------------------------------------------------


def _ftrim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _fadd(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _ftrim(out)


def _fneg(a):
    return [-c for c in a]


def _fsub(a, b):
    return _fadd(a, _fneg(b))


def _fmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _ftrim(out)


def _fscale(a, s):
    s = Fraction(s)
    if s == 0:
        return []
    return [c * s for c in a]


def _fdivmod(a, b):
    """Exact division with remainder over Q; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        k = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[k] = coef
        for i, cb in enumerate(b):
            a[k + i] -= coef * cb
        a.pop()
    return _ftrim(q), _ftrim(a)


def _fmonic(a):
    if not a:
        return []
    return [c / a[-1] for c in a]


def _fgcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _fdivmod(a, b)
        a, b = b, r
    return _fmonic(a)


def _fext_gcd(a, b):
    """Return (g, u, v) monic with u*a + v*b = g."""
    r0, r1 = list(a), list(b)
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]
    while r1:
        q, r = _fdivmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _fsub(u0, _fmul(q, u1))
        v0, v1 = v1, _fsub(v0, _fmul(q, v1))
    if not r0:
        return [], u0, v0
    lead = r0[-1]
    return _fmonic(r0), _fscale(u0, 1 / lead), _fscale(v0, 1 / lead)


def _feval(cs, x):
    acc = Fraction(0) if not isinstance(x, FieldElement) else x.field_zero()
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _fderiv(cs):
    return _ftrim([i * c for i, c in enumerate(cs)][1:])


def _fshift(cs, a):
    """Coefficients of p(x + a)."""
    out = list(cs)
    n = len(out)
    a = Fraction(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return _ftrim(out)


def _fstretch(cs, s):
    """Coefficients of p(s * x)."""
    s = Fraction(s)
    pw = Fraction(1)
    out = []
    for c in cs:
        out.append(c * pw)
        pw *= s
    return _ftrim(out)


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


class IntPolynomial:
    """Univariate polynomial with integer coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise ValidationError(f"integer coefficient expected, got {c!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_fractions(cls, cs: Sequence[Fraction]) -> "IntPolynomial":
        """Clear denominators: smallest positive integer multiple of the input."""
        cs = [Fraction(c) for c in cs]
        scale = 1
        for c in cs:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
        return cls([int(c * scale) for c in cs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValidationError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, abs(c))
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide by the content and make the leading coefficient positive."""
        if self.is_zero:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def to_fractions(self):
        return [Fraction(c) for c in self.coeffs]

    def __call__(self, x):
        if isinstance(x, int):
            acc = 0
        elif isinstance(x, Fraction):
            acc = Fraction(0)
        elif isinstance(x, FieldElement):
            acc = x.field_zero()
        else:
            raise ValidationError(f"cannot evaluate at {type(x).__name__}")
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p divided by gcd(p, p'), primitivized."""
    if p.is_zero:
        raise ValidationError("zero polynomial has no squarefree part")
    g = _fgcd(p.to_fractions(), p.derivative().to_fractions())
    q, r = _fdivmod(p.to_fractions(), g)
    assert not r
    return IntPolynomial.from_fractions(q).primitive()


def rational_roots(p: IntPolynomial):
    """All rational roots (no multiplicity), by the rational root test."""
    if p.is_zero:
        raise ValidationError("zero polynomial")
    roots = []
    cs = list(p.coeffs)
    low = 0
    while cs[low] == 0:
        low += 1
    if low > 0:
        roots.append(Fraction(0))
        cs = cs[low:]
    if len(cs) == 1:
        return roots

    def divisors(n):
        n = abs(n)
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.append(i)
                out.append(n // i)
            i += 1
        return sorted(set(out))

    trimmed = IntPolynomial(cs)
    for num in divisors(cs[0]):
        for den in divisors(cs[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and trimmed(cand) == 0:
                    roots.append(cand)
    roots.sort()
    return roots


def _sign_variations(cs) -> int:
    count = 0
    prev = 0
    for c in cs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev != 0 and s != prev:
            count += 1
        prev = s
    return count


def _variations_on(cs, a, b) -> int:
    """Descartes variation count bounding the root count of cs in (a, b)."""
    mapped = _fstretch(_fshift(cs, a), b - a)  # p on (0, 1)
    rev = list(reversed(mapped))               # x^n p(1/x)
    return _sign_variations(_fshift(rev, 1))   # roots of p in (0,1) <-> positive roots


def _isolate_squarefree(cs, a, b):
    """Disjoint open isolating intervals for a squarefree Fraction poly on (a, b).

    Assumes no rational roots at dyadic subdivision points of (a, b); callers
    strip rational roots first.
    """
    v = _variations_on(cs, a, b)
    if v == 0:
        return []
    if v == 1:
        return [(a, b)]
    mid = (a + b) / 2
    if _feval(cs, mid) == 0:
        raise ValidationError("unexpected rational root during isolation")
    return _isolate_squarefree(cs, a, mid) + _isolate_squarefree(cs, mid, b)


def cauchy_root_bound(p: IntPolynomial) -> Fraction:
    """B with every real root of p strictly inside (-B, B)."""
    if p.is_zero:
        raise ValidationError("zero polynomial")
    lead = abs(p.leading)
    top = max(abs(c) for c in p.coeffs)
    return 1 + Fraction(top, lead)


class AlgebraicReal:
    """A real root of an integer polynomial, with an isolating interval.

    The minimal polynomial is stored primitive with positive leading
    coefficient.  ``certified_irreducible`` is decided by the rational-root
    test for degree <= 3; higher degrees keep whatever the caller certifies.
    Reducible inputs of degree <= 3 are rejected.

    The isolating interval only ever narrows (monotone cache); the identity
    of the root never changes.
    """

    __slots__ = ("min_poly", "certified_irreducible", "_lo", "_hi")

    def __init__(self, min_poly: IntPolynomial, lo, hi, certified_irreducible=None):
        if min_poly.is_zero or min_poly.degree < 1:
            raise ValidationError("minimal polynomial must have degree >= 1")
        min_poly = min_poly.primitive()
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValidationError("isolating interval reversed")
        if min_poly.degree == 1:
            root = Fraction(-min_poly.coeffs[0], min_poly.coeffs[1])
            if not (lo <= root <= hi):
                raise ValidationError("interval does not contain the rational root")
            lo = hi = root
            certified = True
        else:
            if rational_roots(min_poly):
                raise ValidationError(
                    f"min_poly {list(min_poly.coeffs)} is reducible over Q"
                )
            certified = min_poly.degree <= 3 or bool(certified_irreducible)
            cs = min_poly.to_fractions()
            slo, shi = _feval(cs, lo), _feval(cs, hi)
            if slo == 0 or shi == 0 or (slo > 0) == (shi > 0):
                raise ValidationError("interval endpoints must straddle the root")
            if len(_isolate_squarefree(cs, lo, hi)) != 1:
                raise ValidationError("interval does not isolate exactly one root")
        self.min_poly = min_poly
        self.certified_irreducible = certified
        self._lo = lo
        self._hi = hi

    @property
    def lo(self) -> Fraction:
        return self._lo

    @property
    def hi(self) -> Fraction:
        return self._hi

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def width(self) -> Fraction:
        return self._hi - self._lo

    def to_fraction(self) -> Optional[Fraction]:
        if self.degree == 1:
            return self._lo
        return None

    def refine_to(self, width) -> None:
        """Narrow the cached interval to at most ``width`` by bisection."""
        width = Fraction(width)
        if width <= 0:
            raise ValidationError("width must be positive")
        if self.degree == 1:
            return
        cs = self.min_poly.to_fractions()
        lo, hi = self._lo, self._hi
        sign_lo = 1 if _feval(cs, lo) > 0 else -1
        while hi - lo > width:
            mid = (lo + hi) / 2
            smid = _feval(cs, mid)
            if smid == 0:  # impossible for an irreducible poly of degree >= 2
                raise ValidationError("rational root hit during refinement")
            if (smid > 0) == (sign_lo > 0):
                lo = mid
            else:
                hi = mid
        self._lo, self._hi = lo, hi

    def refined(self, width) -> "AlgebraicReal":
        """A copy of this root whose interval has width at most ``width``."""
        self.refine_to(width)
        out = AlgebraicReal.__new__(AlgebraicReal)
        out.min_poly = self.min_poly
        out.certified_irreducible = self.certified_irreducible
        out._lo = self._lo
        out._hi = self._hi
        return out

    def approx(self, tol) -> Tuple[Fraction, Fraction]:
        tol = Fraction(tol)
        if tol <= 0:
            raise ValidationError("tolerance must be positive")
        self.refine_to(2 * tol)
        mid = (self._lo + self._hi) / 2
        return mid, (self._hi - self._lo) / 2

    def compare_fraction(self, q) -> int:
        """Sign of (self - q), decided exactly."""
        q = Fraction(q)
        if self.degree == 1:
            r = self._lo
            return 0 if r == q else (1 if r > q else -1)
        # q is never a root of an irreducible polynomial of degree >= 2.
        while self._lo <= q <= self._hi:
            self.refine_to(self.width() / 2)
        return 1 if self._lo > q else -1

    def same_root(self, other: "AlgebraicReal") -> bool:
        if self is other:
            return True
        if self.min_poly != other.min_poly:
            return False
        if self.degree == 1:
            return self._lo == other._lo
        lo = max(self._lo, other._lo)
        hi = min(self._hi, other._hi)
        if lo >= hi:
            # Isolating endpoints are never roots, so an empty or degenerate
            # intersection means distinct roots.
            return False
        # Equal iff the intersection still contains a root: that root lies in
        # both isolating intervals, hence is both represented numbers.
        cs = self.min_poly.to_fractions()
        return len(_isolate_squarefree(cs, lo, hi)) >= 1

    def __repr__(self):
        return (
            f"AlgebraicReal(min_poly={list(self.min_poly.coeffs)}, "
            f"lo={self._lo!s}, hi={self._hi!s})"
        )


def refine(root: AlgebraicReal, width) -> AlgebraicReal:
    """Same root with isolating interval of width at most ``width``."""
    return root.refined(width)


def isolate_real_roots(p: IntPolynomial):
    """One AlgebraicReal per distinct real root of p, ascending, disjoint.

    The squarefree part is factored by the rational-root test; remaining
    factors of degree <= 3 are irreducible and become minimal polynomials.
    A remaining factor of degree >= 4 is attached as-is with
    ``certified_irreducible=False``.
    """
    if p.is_zero:
        raise ValidationError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    sf = squarefree_part(p)
    roots = []
    rr = rational_roots(sf)
    rest = sf.to_fractions()
    for r in rr:
        rest, rem = _fdivmod(rest, [-r, Fraction(1)])
        assert not rem
        lin = IntPolynomial.from_fractions([-r, Fraction(1)]).primitive()
        roots.append(AlgebraicReal(lin, r, r))
    rest_poly = IntPolynomial.from_fractions(rest).primitive()
    if rest_poly.degree >= 2:
        certified = rest_poly.degree <= 3
        bound = cauchy_root_bound(rest_poly)
        cs = rest_poly.to_fractions()
        for lo, hi in _isolate_squarefree(cs, -bound, bound):
            roots.append(
                AlgebraicReal(rest_poly, lo, hi, certified_irreducible=certified)
            )
    # Make the intervals pairwise disjoint (roots are distinct reals).
    while True:
        roots.sort(key=lambda r: (r.lo, r.hi))
        overlapping = [
            i for i in range(len(roots) - 1) if roots[i].hi >= roots[i + 1].lo
        ]
        if not overlapping:
            return roots
        for i in overlapping:
            for r in (roots[i], roots[i + 1]):
                if r.degree > 1:
                    r.refine_to(r.width() / 2)


# ---------------------------------------------------------------------------
# Interval arithmetic over Fractions (private helpers for sign decisions)
# ---------------------------------------------------------------------------


def _interval_mul(alo, ahi, blo, bhi):
    ps = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(ps), max(ps)


def _interval_poly_eval(cs, lo, hi):
    vlo = vhi = Fraction(0)
    for c in reversed(cs):
        vlo, vhi = _interval_mul(vlo, vhi, lo, hi)
        vlo, vhi = vlo + c, vhi + c
    return vlo, vhi


# ---------------------------------------------------------------------------
# Field elements of Q(theta)
# ---------------------------------------------------------------------------


class FieldElement:
    """Element of Q(theta) as a reduced residue c0 + c1*theta + ...

    The zero test is a coefficient test, valid because the generator's
    minimal polynomial is irreducible; construction therefore requires a
    certified generator.
    """

    __slots__ = ("generator", "coeffs")

    def __init__(self, generator: AlgebraicReal, coeffs):
        if not generator.certified_irreducible:
            raise ValidationError(
                "field arithmetic requires a generator with certified "
                "irreducible minimal polynomial"
            )
        deg = generator.degree
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce_mod(cs, generator)
        cs += [Fraction(0)] * (deg - len(cs))
        self.generator = generator
        self.coeffs = tuple(cs[:deg])

    @classmethod
    def embed(cls, generator: AlgebraicReal, value) -> "FieldElement":
        return cls(generator, [Fraction(value)])

    @classmethod
    def theta(cls, generator: AlgebraicReal) -> "FieldElement":
        return cls(generator, [Fraction(0), Fraction(1)])

    def field_zero(self) -> "FieldElement":
        return FieldElement(self.generator, [])

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_fraction(self) -> Optional[Fraction]:
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        if self.generator.degree == 1:
            return _feval(list(self.coeffs), self.generator.lo)
        return None

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.generator is self.generator:
                return other
            if not self.generator.same_root(other.generator):
                raise MismatchedField(
                    "operands generated by different algebraic numbers"
                )
            return FieldElement(self.generator, other.coeffs)
        if isinstance(other, (int, Fraction)):
            return FieldElement.embed(self.generator, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.generator, [a + b for a, b in zip(self.coeffs, o.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.generator, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.generator, [a - b for a, b in zip(self.coeffs, o.coeffs)]
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _fmul(list(self.coeffs), list(o.coeffs))
        return FieldElement(self.generator, _reduce_mod(prod, self.generator))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise DivisionByZero("cannot invert zero")
        m = self.generator.min_poly.to_fractions()
        g, u, _ = _fext_gcd(list(self.coeffs), m)
        if len(g) != 1:
            raise ValidationError("minimal polynomial not irreducible")
        return FieldElement(self.generator, _fscale(u, 1 / g[0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = FieldElement.embed(self.generator, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self) -> int:
        """Exact sign: coefficient test for zero, interval refinement otherwise."""
        if self.is_zero:
            return 0
        r = self.as_fraction()
        if r is not None:
            return 1 if r > 0 else -1
        gen = self.generator
        cs = list(self.coeffs)
        while True:
            vlo, vhi = _interval_poly_eval(cs, gen.lo, gen.hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            gen.refine_to(gen.width() / 2 if gen.width() > 0 else _HALF)

    def approx(self, tol) -> Tuple[Fraction, Fraction]:
        """(value, err) with |value - self| <= err <= tol."""
        tol = Fraction(tol)
        if tol <= 0:
            raise ValidationError("tolerance must be positive")
        r = self.as_fraction()
        if r is not None:
            return r, Fraction(0)
        gen = self.generator
        cs = list(self.coeffs)
        while True:
            vlo, vhi = _interval_poly_eval(cs, gen.lo, gen.hi)
            if vhi - vlo <= 2 * tol:
                return (vlo + vhi) / 2, (vhi - vlo) / 2
            gen.refine_to(gen.width() / 2 if gen.width() > 0 else _HALF)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            try:
                return (self - other).is_zero
            except MismatchedField:
                return False
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        terms = [format_rational(c) for c in self.coeffs]
        return f"FieldElement([{', '.join(terms)}] over {list(self.generator.min_poly.coeffs)})"


def _reduce_mod(cs, generator: AlgebraicReal):
    m = generator.min_poly.to_fractions()
    _, r = _fdivmod(list(cs), m)
    return r


# ---------------------------------------------------------------------------
# Generic scalar helpers (Fraction and FieldElement share these entry points)
# ---------------------------------------------------------------------------


def exact_sign(x) -> int:
    """Exact sign of an int, Fraction, or FieldElement."""
    if isinstance(x, FieldElement):
        return x.sign()
    if isinstance(x, (int, Fraction)):
        return 0 if x == 0 else (1 if x > 0 else -1)
    raise ValidationError(f"cannot take sign of {type(x).__name__}")


def scalar_is_zero(x) -> bool:
    return exact_sign(x) == 0


def approx_scalar(x, tol) -> Tuple[Fraction, Fraction]:
    """(value, err) with |value - x| <= err <= tol; exact for rationals."""
    if isinstance(x, FieldElement):
        return x.approx(tol)
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0)
    raise ValidationError(f"cannot approximate {type(x).__name__}")


def upper_abs(x, tol=Fraction(1, 2**20)) -> Fraction:
    """Certified rational upper bound on |x|."""
    mid, err = approx_scalar(x, tol)
    return abs(mid) + err


def sqrt_upper(s, rel_bits: int = 16) -> Fraction:
    """Rational u with sqrt(s) <= u <= sqrt(s)*(1 + 2**-rel_bits), for s >= 0."""
    s = Fraction(s)
    if s < 0:
        raise ValidationError("sqrt of a negative number")
    if s == 0:
        return Fraction(0)
    slack = 1 + Fraction(1, 2**rel_bits)
    target = s * slack * slack
    p = rel_bits + 2
    while True:
        scaled = s * (1 << (2 * p))
        n = -((-scaled.numerator) // scaled.denominator)  # ceil
        r = math.isqrt(n - 1) + 1
        u = Fraction(r, 1 << p)
        if u * u <= target:
            return u
        p += 8


def field_generator_of(values) -> Optional[AlgebraicReal]:
    """The shared generator among any FieldElements in ``values`` (or None).

    Raises MismatchedField if two distinct generators appear.
    """
    gen = None
    for v in values:
        if isinstance(v, FieldElement):
            if gen is None:
                gen = v.generator
            elif gen is not v.generator and not gen.same_root(v.generator):
                raise MismatchedField("values mix different field generators")
    return gen


def nearest_int(x) -> Tuple[int, "Scalar"]:
    """(k, x - k) with k the nearest integer to x; halves round up."""
    if isinstance(x, int):
        return x, 0
    if isinstance(x, Fraction):
        k = math.floor(x + _HALF)
        return k, x - k
    if isinstance(x, FieldElement):
        r = x.as_fraction()
        if r is not None:
            k = math.floor(r + _HALF)
            return k, FieldElement.embed(x.generator, r - k)
        tol = Fraction(1, 16)
        while True:
            mid, err = x.approx(tol)
            k_lo = math.floor(mid - err + _HALF)
            k_hi = math.floor(mid + err + _HALF)
            if k_lo == k_hi:
                return k_lo, x - k_lo
            if k_hi == k_lo + 1 and (x - k_lo - _HALF).is_zero:
                return k_hi, x - k_hi
            tol /= 16
    raise ValidationError(f"cannot round {type(x).__name__}")
