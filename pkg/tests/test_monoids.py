import random

import pytest

from chowfan.cones import cone_from_generators, all_faces, zero_cone, NotStrictlyConvex
from chowfan.intlinalg import sublattice
from chowfan.monoids import (
    NotAFace,
    UnsupportedMonoid,
    affine_monoid,
    dual_monoid,
    group_coordinates,
    image_monoid,
    is_saturated,
    member,
    monoid_from_cone,
    monoid_hom,
    restrict_to_face,
)

from conftest import p2_fan, p1p1_fan
import oracles


class TestHilbertBases:
    def test_quadrant(self):
        m = monoid_from_cone(cone_from_generators([(1, 0), (0, 1)]))
        assert m.hilbert_basis == ((0, 1), (1, 0))

    def test_singular_cone_needs_interior_point(self):
        m = monoid_from_cone(cone_from_generators([(1, 0), (1, 2)]))
        assert m.hilbert_basis == ((1, 0), (1, 1), (1, 2))

    def test_ray(self):
        m = monoid_from_cone(cone_from_generators([(1, 2)]))
        assert m.hilbert_basis == ((1, 2),)

    def test_rejects_lineality(self):
        with pytest.raises(NotStrictlyConvex):
            monoid_from_cone(cone_from_generators([(1, 0), (-1, 0)], ambient_rank=2))

    def test_coarse_lattice(self):
        m = monoid_from_cone(
            cone_from_generators([(1, 0), (0, 1)]), sublattice(2, [(2, 0), (0, 2)])
        )
        assert m.hilbert_basis == ((0, 2), (2, 0))

    def test_minimality_randomized(self):
        rng = random.Random(7)
        for _ in range(25):
            rays = [
                tuple(rng.randrange(-3, 4) for _ in range(2))
                for _ in range(rng.randrange(1, 4))
            ]
            rays = [r for r in rays if any(r)]
            if not rays:
                continue
            c = cone_from_generators(rays, ambient_rank=2)
            if c.lineality_dim:
                continue
            m = monoid_from_cone(c)
            for b in m.hilbert_basis:
                rest = [x for x in m.hilbert_basis if x != b]
                assert not member(affine_monoid(2, rest), b)

    def test_brute_force_agreement_small(self):
        # all monoid points of small grade are sums of basis elements
        c = cone_from_generators([(2, -1), (1, 3)])
        m = monoid_from_cone(c)
        for x in range(-8, 9):
            for y in range(-8, 9):
                if c.contains((x, y)):
                    assert oracles.exhaustive_member(m.hilbert_basis, (x, y), bound=9)


class TestMembership:
    def test_examples(self):
        m = monoid_from_cone(cone_from_generators([(1, 0), (1, 2)]))
        assert member(m, (2, 2))
        assert not member(m, (0, 1))
        assert member(m, (0, 0))

    def test_agrees_with_exhaustive_search(self):
        rng = random.Random(9)
        m = monoid_from_cone(cone_from_generators([(1, 0), (2, 3)]))
        for _ in range(60):
            v = (rng.randrange(0, 9), rng.randrange(-2, 9))
            assert member(m, v) == oracles.exhaustive_member(
                m.hilbert_basis, v, bound=10
            )

    def test_nonsaturated_monoid(self):
        g = affine_monoid(1, [(2,), (3,)])
        assert member(g, (5,)) and member(g, (2,)) and member(g, (0,))
        assert not member(g, (1,))


class TestSaturation:
    def test_cone_monoids_saturated(self):
        for fan in (p2_fan(), p1p1_fan()):
            for c in fan.cones:
                assert is_saturated(monoid_from_cone(c))

    def test_gap_monoid_not_saturated(self):
        assert not is_saturated(affine_monoid(1, [(2,), (3,)]))

    def test_even_monoid_saturated_in_its_group(self):
        assert is_saturated(affine_monoid(1, [(2,)]))


class TestDuals:
    def test_self_dual(self):
        m = monoid_from_cone(cone_from_generators([(1, 0), (0, 1)]))
        assert dual_monoid(m).hilbert_basis == ((0, 1), (1, 0))

    def test_singular_dual_needs_interior_point(self):
        m = monoid_from_cone(cone_from_generators([(1, 0), (1, 2)]))
        d = dual_monoid(m)
        # the dual cone has rays (0,1) and (2,-1) and lattice index two, so
        # its Hilbert basis picks up the interior vector (1,0) as well
        assert d.hilbert_basis == ((0, 1), (1, 0), (2, -1))

    def test_zero_monoid_dual_is_group(self):
        d = dual_monoid(monoid_from_cone(zero_cone(1)))
        assert d.units.basis == ((1,),)
        assert set(d.generators()) == {(1,), (-1,)}

    def test_double_dual_randomized(self):
        rng = random.Random(13)
        count = 0
        while count < 30:
            rays = [
                tuple(rng.randrange(-3, 4) for _ in range(2))
                for _ in range(rng.randrange(1, 4))
            ]
            rays = [r for r in rays if any(r)]
            c = cone_from_generators(rays, ambient_rank=2)
            if c.lineality_dim or c.dim != 2:
                continue
            m = monoid_from_cone(c)
            assert dual_monoid(dual_monoid(m)) == m
            count += 1

    def test_group_coordinates(self):
        m = monoid_from_cone(
            cone_from_generators([(1, 0), (0, 1)]), sublattice(2, [(2, 0), (0, 1)])
        )
        coords, basis = group_coordinates(m)
        assert coords.hilbert_basis == ((0, 1), (1, 0))
        assert basis == ((2, 0), (0, 1))


class TestImagesAndFaces:
    def test_image_examples(self):
        ray = monoid_from_cone(cone_from_generators([(0, 1)], ambient_rank=2))
        assert image_monoid(((0, 1),), ray).hilbert_basis == ((1,),)
        m = monoid_from_cone(cone_from_generators([(1, 0), (0, 1)]))
        assert image_monoid(((0, 0),), m).hilbert_basis == ()

    def test_restrict_to_face_examples(self):
        m = monoid_from_cone(cone_from_generators([(1, 0), (0, 1)]))
        axis = cone_from_generators([(1, 0)], ambient_rank=2)
        assert restrict_to_face(m, axis).hilbert_basis == ((1, 0),)
        sing = monoid_from_cone(cone_from_generators([(1, 0), (1, 2)]))
        face = cone_from_generators([(1, 2)], ambient_rank=2)
        assert restrict_to_face(sing, face).hilbert_basis == ((1, 2),)
        assert restrict_to_face(m, zero_cone(2)).hilbert_basis == ()
        with pytest.raises(NotAFace):
            restrict_to_face(m, cone_from_generators([(1, 1)], ambient_rank=2))

    def test_face_compatibility_on_fixture_fans(self):
        for fan in (p2_fan(), p1p1_fan()):
            for c in fan.cones:
                m = monoid_from_cone(c)
                for f in all_faces(c):
                    assert restrict_to_face(m, f) == monoid_from_cone(f)

    def test_generated_with_units_rejected(self):
        with pytest.raises(UnsupportedMonoid):
            affine_monoid(1, [(1,), (-1,)])


class TestHoms:
    def test_valid_hom(self):
        src = monoid_from_cone(cone_from_generators([(1, 0), (1, 2)]))
        dst = monoid_from_cone(cone_from_generators([(1, 0), (0, 1)]))
        h = monoid_hom(((1, 0), (0, 1)), src, dst)
        assert h.apply((1, 2)) == (1, 2)

    def test_invalid_hom_rejected(self):
        src = monoid_from_cone(cone_from_generators([(1, 0), (0, 1)]))
        dst = monoid_from_cone(cone_from_generators([(1, 0), (1, 2)]))
        with pytest.raises(ValueError):
            monoid_hom(((1, 0), (0, 1)), src, dst)
