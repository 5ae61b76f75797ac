"""Acceptance suite: worked examples, theorem-as-test laws on the corpus,
oracle equivalences and randomized round-trip properties.

Each criterion prints one PASS line when it completes (run with ``-s`` to
see them); any failure is a build-blocking defect.
"""

import random

import pytest

from chowfan import (
    chow_quotient,
    chow_stack_datum,
    check_basic_monoid,
    check_equidimensional,
    check_reduced,
    cone_from_generators,
    cones_over,
    component_bijection,
    dual_cone,
    dual_monoid,
    fiber_complex,
    hermite_normal_form,
    is_refinement_fixed_point,
    meeting_cones,
    monoid_from_cone,
    multiplicity,
    point_fiber_cones,
    quotient_monoid,
    relative_interior_sample,
    segment_length,
    sublattice,
    tropical_moduli_cone,
    universal_family,
    validate_stack_datum,
    validate_stack_morphism,
    wall_structure,
)
from chowfan.family import basic_monoid
from chowfan.serialize import (
    decode_cone,
    decode_monoid,
    decode_sublattice,
    encode_cone,
    encode_monoid,
    encode_sublattice,
)
from chowfan.verify import check_family_integral

from conftest import corpus, p2_fan, p1p1_fan
import oracles


def _announce(line):
    print(f"\n[PASS] {line}")


@pytest.fixture(scope="module")
def corpus_families():
    """Fixtures plus ten randomized inputs, with quotients and families."""
    inputs = [
        (p2_fan(), sublattice(2, [[1, 0]])),
        (p1p1_fan(), sublattice(2, [[1, 1]])),
    ] + corpus(count=10)
    out = []
    for fan, sub in inputs:
        cq = chow_quotient(fan, sub)
        out.append((fan, sub, cq, universal_family(cq)))
    return out


def test_criterion_1_p2_worked_example():
    fan = p2_fan()
    sub = sublattice(2, [[1, 0]])
    cq = chow_quotient(fan, sub)
    # quotient fan is the complete fan of the line
    assert {c.generators for c in cq.quotient_fan.cones} == {(), ((1,),), ((-1,),)}
    fam = universal_family(cq)
    # family fan: the ray (-1, 0) is inserted, four maximal cones
    rays = {c.generators[0] for c in fam.fan.cones if c.dim == 1}
    assert rays == {(1, 0), (0, 1), (-1, 0), (-1, -1)}
    maximal = sorted(
        c.generators for c in fam.fan.cones if c.dim == 2
    )
    assert len(maximal) == 4
    # all stack monoids are the full lattice monoids of their cones
    for i, c in enumerate(cq.quotient_fan.cones):
        assert quotient_monoid(cq, i) == monoid_from_cone(c)
    for i, c in enumerate(fam.fan.cones):
        assert fam.datum.monoids[i] == monoid_from_cone(c)
    _announce("criterion 1: quotient of the plane by a horizontal line "
              "(line fan, four-chamber family, trivial monoids)")


def test_criterion_2_p1p1_worked_example():
    fan = p1p1_fan()
    sub = sublattice(2, [[1, 1]])
    cq = chow_quotient(fan, sub)
    assert {c.generators for c in cq.quotient_fan.cones} == {(), ((1,),), ((-1,),)}
    fam = universal_family(cq)
    for i, kappa in enumerate(cq.quotient_fan.cones):
        if kappa.dim != 1:
            continue
        fc = fiber_complex(fam, i)
        assert len(fc.components) == 2
        assert len(fc.internal_walls) == 1
        wall = fc.internal_walls[0]
        assert wall.direction in [(1, 1), (-1, -1)]
        basis = quotient_monoid(cq, i).hilbert_basis
        assert len(basis) == 1
        # the gluing length is the identity on the monoid: c(v) = v
        for k in range(3):
            v = tuple(k * x for x in basis[0])
            assert segment_length(fam, i, wall.index, v) == k
        pres = basic_monoid(fam, i)
        assert len(pres.monoid.hilbert_basis) == 1  # the presentation is a line
        trop = tropical_moduli_cone(fam, i)
        assert trop.ambient_rank == 1 and trop.generators == ((1,),)
    _announce("criterion 2: quotient of the quadrant fan by the diagonal "
              "(broken line fibers, unit gluing, half-line moduli)")


def test_criterion_3_multiplicity_regression():
    fan = p2_fan()
    sub = sublattice(2, [[1, 2]])
    idx = fan.index_of(cone_from_generators([(1, 0)], ambient_rank=2))
    assert multiplicity(fan, sub, idx) == 2
    combined = list(sub.basis) + [(1, 0)]
    assert oracles.coset_count(combined, ((1, 0), (0, 1))) == 2
    _announce("criterion 3: index-two multiplicity, cross-checked against "
              "fundamental-domain coset enumeration")


def test_criterion_4a_quotient_datum_validates(corpus_families):
    for fan, sub, cq, fam in corpus_families:
        datum = chow_stack_datum(cq)
        assert validate_stack_datum(datum).ok
    _announce("criterion 4a: quotient stack data valid (incl. face "
              f"compatibility) on all {len(corpus_families)} corpus inputs")


def test_criterion_4b_family_morphisms_and_fixed_point(corpus_families):
    for fan, sub, cq, fam in corpus_families:
        assert validate_stack_morphism(
            cq.projection.matrix, fam.datum, fam.base
        ).cone_assignment == tuple(b for _, b in fam.provenance)
        identity = tuple(
            tuple(1 if i == j else 0 for j in range(fan.ambient_rank))
            for i in range(fan.ambient_rank)
        )
        assert validate_stack_morphism(identity, fam.datum, fam.variety)
        assert is_refinement_fixed_point(fam)
    _announce("criterion 4b: families map to both ends and refine to "
              "themselves on all corpus inputs")


def test_criterion_4c_reduced_and_integral(corpus_families):
    for fan, sub, cq, fam in corpus_families:
        assert check_reduced(fam).passed
        reports = check_family_integral(fam, 8)
        assert reports and all(r.passed for r in reports)
    _announce("criterion 4c: reduced fibers and integrality (bound 8) on "
              "all corpus inputs")


def test_criterion_4d_equidimensional(corpus_families):
    for fan, sub, cq, fam in corpus_families:
        assert check_equidimensional(fam).passed
    _announce("criterion 4d: every family cone maps onto a quotient cone")


def test_criterion_4e_walls_have_one_or_two_sections(corpus_families):
    walls_seen = 0
    for fan, sub, cq, fam in corpus_families:
        for k in range(len(fam.base.fan.cones)):
            for w_idx in cones_over(fam, k, 1):
                w = wall_structure(fam, k, w_idx)  # raises on any other count
                assert len(w.iso_faces) in (1, 2)
                walls_seen += 1
    assert walls_seen > 0
    _announce(f"criterion 4e: all {walls_seen} walls carry one or two sections")


def test_criterion_4f_fibers_connected(corpus_families):
    fibers = 0
    for fan, sub, cq, fam in corpus_families:
        for k in range(len(fam.base.fan.cones)):
            fiber_complex(fam, k)  # asserts connectivity internally
            fibers += 1
    _announce(f"criterion 4f: all {fibers} fiber graphs connected")


def test_criterion_4g_component_bijection(corpus_families):
    for fan, sub, cq, fam in corpus_families:
        for k in range(len(fam.base.fan.cones)):
            mapping = component_bijection(fam, k)
            assert sorted(mapping.values()) == sorted(point_fiber_cones(cq, k))
    _announce("criterion 4g: components biject onto single-point-slice cones")


def test_criterion_4h_basic_monoid_isomorphism(corpus_families):
    for fan, sub, cq, fam in corpus_families:
        for k in range(len(fam.base.fan.cones)):
            assert check_basic_monoid(fam, k).passed
    _announce("criterion 4h: presentation and quotient monoids isomorphic "
              "via both explicit maps")


def test_criterion_5_oracle_equivalences(corpus_families):
    checked = 0
    for fan, sub, cq, fam in corpus_families:
        if fan.ambient_rank == 2 and sub.rank == 1:
            walls = oracles.projected_ray_walls(fan, cq.projection.matrix, sub.basis)
            got = {c.generators[0][0] for c in cq.quotient_fan.cones if c.dim == 1}
            assert got == walls
            checked += 1
        for k, data in enumerate(cq.cone_data):
            kappa = cq.quotient_fan.cones[k]
            if kappa.is_zero():
                continue
            for variant in range(10):
                psi = cq.projection.lift(relative_interior_sample(kappa, variant))
                assert meeting_cones(fan, sub, psi) == data.meeting_set
    assert checked >= 2
    _announce("criterion 5: projected-ray wall oracle and tenfold "
              "class-invariant resampling agree")


def test_criterion_6_involutions_and_round_trips():
    rng = random.Random(987654)
    failures = 0
    # duality is involutive on cones
    for _ in range(1000):
        rank = rng.choice([2, 3])
        rays = [
            tuple(rng.randrange(-3, 4) for _ in range(rank))
            for _ in range(rng.randrange(0, rank + 2))
        ]
        c = cone_from_generators([r for r in rays if any(r)], ambient_rank=rank)
        if dual_cone(dual_cone(c)) != c:
            failures += 1
    # duality is involutive on saturated full-dimensional monoids
    count = 0
    while count < 1000:
        rays = [
            (rng.randrange(-3, 4), rng.randrange(-3, 4)) for _ in range(3)
        ]
        c = cone_from_generators([r for r in rays if any(r)], ambient_rank=2)
        if c.lineality_dim or c.dim != 2:
            continue
        m = monoid_from_cone(c)
        if dual_monoid(dual_monoid(m)) != m:
            failures += 1
        count += 1
    # normal form idempotence
    for _ in range(1000):
        rows = [
            [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 4))]
        ]
        rows = [
            [rng.randrange(-9, 10) for _ in range(len(rows[0]))]
            for _ in range(rng.randrange(1, 4))
        ]
        h, _ = hermite_normal_form(rows)
        h2, _ = hermite_normal_form(h)
        if h2 != h:
            failures += 1
    # serialization round-trips
    for _ in range(1000):
        kind = rng.randrange(3)
        if kind == 0:
            s = sublattice(
                3,
                [
                    tuple(rng.randrange(-4, 5) for _ in range(3))
                    for _ in range(rng.randrange(0, 3))
                ],
            )
            if decode_sublattice(encode_sublattice(s)) != s:
                failures += 1
        elif kind == 1:
            rays = [
                (rng.randrange(-3, 4), rng.randrange(-3, 4))
                for _ in range(rng.randrange(0, 4))
            ]
            c = cone_from_generators([r for r in rays if any(r)], ambient_rank=2)
            if decode_cone(encode_cone(c)) != c:
                failures += 1
        else:
            rays = [
                (rng.randrange(0, 4), rng.randrange(-2, 4))
                for _ in range(rng.randrange(1, 3))
            ]
            c = cone_from_generators([r for r in rays if any(r)], ambient_rank=2)
            if c.lineality_dim:
                continue
            m = monoid_from_cone(c)
            if decode_monoid(encode_monoid(m)) != m:
                failures += 1
    assert failures == 0
    _announce("criterion 6: 1000-case involution, idempotence and "
              "round-trip sweeps, zero failures")
