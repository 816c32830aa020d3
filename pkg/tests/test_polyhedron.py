"""Tests for H-polyhedra: membership, recession, rays, extreme rays, projection."""

import random
from fractions import Fraction

import pytest

from thinrays.errors import NoBlockingRow, NotPointed, ValidationError
from thinrays.exactnum import FieldElement
from thinrays.polyhedron import (
    HPolyhedron,
    RaySpec,
    _rank,
    contains,
    extreme_rays,
    facet_project,
    in_recession,
    is_pointed,
    is_ray,
)

ORTHANT2 = HPolyhedron.from_rows([(-1, 0), (0, -1)], [0, 0])


class TestMembership:
    def test_cone_contains_ones(self, cubic):
        _, P, _, _ = cubic
        assert contains(P, (1, 1, 1))

    def test_cone_rejects_violating_point(self, cubic):
        _, P, _, _ = cubic
        assert not contains(P, (3, 1, 1))  # x1 <= 2x3 violated

    def test_whole_space(self):
        P = HPolyhedron.whole_space(2)
        assert contains(P, (Fraction(-100), Fraction(100)))

    def test_field_valued_point(self, cubic):
        _, P, theta, d = cubic
        assert contains(P, d)


class TestRecession:
    def test_critical_direction_in_recession(self, cubic):
        _, P, _, d = cubic
        assert in_recession(P, d)

    def test_ones_in_recession(self, cubic):
        _, P, _, _ = cubic
        assert in_recession(P, (1, 1, 1))

    def test_negated_interior_not_in_recession(self, cubic):
        _, P, _, _ = cubic
        assert not in_recession(P, (-1, -1, -1))

    def test_slab_bounds(self, cubic):
        # Every rational recession direction with d3 = 1 lies in the slab.
        _, P, _, _ = cubic
        rng = random.Random(7)
        for _ in range(50):
            d1 = Fraction(rng.randint(-10, 30), rng.randint(1, 10))
            d2 = Fraction(rng.randint(-10, 30), rng.randint(1, 10))
            inside = 1 <= d1 <= 2 and 1 <= d2 <= 2
            assert in_recession(P, (d1, d2, Fraction(1))) == inside


class TestRays:
    def test_critical_ray(self, cubic):
        _, P, _, d = cubic
        assert is_ray(P, RaySpec((0, 0, 0), d))

    def test_rational_ray(self, cubic):
        _, P, _, _ = cubic
        assert is_ray(P, RaySpec((1, 1, 1), (1, 1, 1)))

    def test_apex_outside(self, cubic):
        _, P, _, _ = cubic
        assert not is_ray(P, RaySpec((5, 1, 1), (1, 1, 1)))

    def test_zero_direction_rejected(self):
        with pytest.raises(ValidationError):
            RaySpec((0, 0), (0, 0))


class TestPointed:
    def test_cubic_cone_pointed(self, cubic):
        _, P, _, _ = cubic
        assert _rank(P.A) == 3
        assert is_pointed(P)

    def test_whole_space_not_pointed(self):
        assert not is_pointed(HPolyhedron.whole_space(2))

    def test_halfspace_not_pointed(self):
        P = HPolyhedron.from_rows([(1, 1)], [5])
        assert not is_pointed(P)


class TestExtremeRays:
    def test_cubic_cone(self, cubic):
        _, P, _, _ = cubic
        rays = extreme_rays(P)
        assert sorted(rays) == sorted([(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 1)])

    def test_quadratic_cone(self, quadratic):
        _, P, _, _ = quadratic
        assert sorted(extreme_rays(P)) == sorted([(1, 1), (2, 1)])

    def test_orthant(self):
        assert sorted(extreme_rays(ORTHANT2)) == [(0, 1), (1, 0)]

    def test_not_pointed_raises(self):
        with pytest.raises(NotPointed):
            extreme_rays(HPolyhedron.whole_space(2))

    def test_rays_pass_recession_and_tight_rank(self, cubic):
        _, P, _, _ = cubic
        for r in extreme_rays(P):
            assert in_recession(P, r)
            tight = [P.A[i] for i in range(P.m) if P.row_value(i, r) == 0]
            assert _rank(tight) == P.n - 1

    def test_random_pointed_cones(self):
        rng = random.Random(99)
        tested = 0
        while tested < 20:
            n = rng.choice([2, 3])
            m = rng.randint(n, n + 3)
            A = [
                tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
                for _ in range(m)
            ]
            P = HPolyhedron.from_rows(A, [0] * m)
            if not is_pointed(P):
                continue
            tested += 1
            for r in extreme_rays(P):
                assert in_recession(P, r)
                tight = [P.A[i] for i in range(P.m) if P.row_value(i, r) == 0]
                assert _rank(tight) == n - 1


class TestFacetProject:
    def test_cubic_cone_projection(self, cubic):
        _, P, _, _ = cubic
        x = (Fraction(4), Fraction(5), Fraction(3))
        d = (Fraction(1), Fraction(1), Fraction(1))
        y, p, tight = facet_project(P, x, d)
        assert p >= 0
        assert in_recession(P, y)
        assert P.row_value(tight, y) == 0
        # Hand ratios: rows with a.d < 0 are (1,0,-2):d=-1 ratio 2 and
        # (0,1,-2):d=-1 ratio 1 and (0,0,-1):d=-1 ratio 3.
        assert p == 1
        assert y == (Fraction(3), Fraction(4), Fraction(2))

    def test_point_already_on_facet(self, cubic):
        _, P, _, _ = cubic
        x = (Fraction(2), Fraction(4), Fraction(2))  # row (1,0,-2) tight
        d = (Fraction(1), Fraction(1), Fraction(1))
        y, p, tight = facet_project(P, x, d)
        assert p == 0
        assert y == x

    def test_orthant_two_ratios(self):
        x = (Fraction(2), Fraction(3))
        d = (Fraction(1), Fraction(1))
        y, p, tight = facet_project(ORTHANT2, x, d)
        assert p == 2
        assert y == (Fraction(0), Fraction(1))
        assert tight == 0

    def test_no_blocking_row(self):
        P = HPolyhedron.from_rows([(0, -1)], [0])
        with pytest.raises(NoBlockingRow):
            facet_project(P, (Fraction(1), Fraction(1)), (Fraction(1), Fraction(0)))

    def test_random_projection_properties(self):
        rng = random.Random(123)
        done = 0
        while done < 100:
            n = rng.choice([2, 3])
            m = rng.randint(n, n + 2)
            A = [
                tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)) for _ in range(m)
            ]
            P = HPolyhedron.from_rows(A, [0] * m)
            if not is_pointed(P):
                continue
            rays = extreme_rays(P)
            if not rays:
                continue
            # A recession vector: random nonnegative combination of rays.
            coeffs = [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in rays]
            x = tuple(
                sum(c * r[j] for c, r in zip(coeffs, rays)) for j in range(n)
            )
            d = rays[rng.randrange(len(rays))]
            try:
                y, p, tight = facet_project(P, x, d)
            except NoBlockingRow:
                continue
            assert p >= 0
            assert in_recession(P, y)
            assert P.row_value(tight, y) == 0
            done += 1
