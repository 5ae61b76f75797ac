"""The Chow quotient of a complete fan by a saturated sublattice.

Given a complete fan in N = Z^r and a saturated sublattice L, the quotient
fan lives in Q = N/L.  Its cones are the closures of the equivalence
classes of the invariant

    meeting set of psi  =  the cones whose relative interior meets
                           psi + span_R(L),

which only depends on p(psi), and equals the set of cones whose projected
image contains p(psi) in its relative interior.  The construction
enumerates the cells of the central hyperplane arrangement spanned by the
facet and span functionals of all projected cones, merges cells with equal
meeting sets, and verifies exactly that each merged class is convex.

Each quotient cone carries provenance: the meeting set, the cones whose
generic translate slice is a single point, the associated cycle with its
lattice-index multiplicities, and the stack monoid obtained by
intersecting the projected cone lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .cones import (
    Cone,
    Fan,
    NotComplete,
    affine_slice_type,
    cone_from_generators,
    cone_from_halfspaces,
    fan_from_cones,
    fiber_dimension,
    image_cone,
    intersect_cones,
    is_complete,
    relative_interior_sample,
    validate_fan,
    _fm_sample,
)
from .intlinalg import (
    QuotientMap,
    Sublattice,
    Vec,
    dot,
    image_lattice,
    is_zero,
    lattice_index,
    lattice_intersection,
    lattice_sum,
    primitive,
    quotient_map,
    saturate,
    sublattice,
)
from .monoids import AffineMonoid, saturated_monoid
from .stacks import InternalConsistencyError, ToricStackDatum


class InfiniteIndex(ValueError):
    """The multiplicity index is infinite because spans overlap."""


# ---------------------------------------------------------------------------
# the class invariant


def meeting_cones(fan: Fan, sub: Sublattice, psi: Sequence) -> frozenset[int]:
    """Indices of fan cones whose relative interior meets ``psi + span(sub)``."""
    out = set()
    for i, c in enumerate(fan.cones):
        if affine_slice_type(c, psi, sub) != "empty":
            out.add(i)
    return frozenset(out)


def point_slice_cones(fan: Fan, sub: Sublattice, psi: Sequence) -> frozenset[int]:
    """Cones whose relative interior meets ``psi + span(sub)`` in one point."""
    out = set()
    for i, c in enumerate(fan.cones):
        if affine_slice_type(c, psi, sub) == "point":
            out.add(i)
    return frozenset(out)


# ---------------------------------------------------------------------------
# multiplicities


def multiplicity(fan: Fan, sub: Sublattice, cone_index: int) -> int:
    """Lattice index weight of an orbit closure in the quotient cycle.

    The index of ``(L ∩ N) + (span(sigma) ∩ N)`` inside the lattice points
    of the combined span.  Requires the spans to meet only at the origin.
    """
    c = fan.cones[cone_index]
    span_sigma = saturate(sublattice(fan.ambient_rank, c.generators))
    if lattice_intersection(span_sigma, sub).rank != 0:
        raise InfiniteIndex(
            f"span of cone {cone_index} meets the sublattice span nontrivially"
        )
    total = lattice_sum(sub, span_sigma)
    idx = lattice_index(total, saturate(total))
    assert idx is not None
    return idx


# ---------------------------------------------------------------------------
# arrangement cells


def _scale_to_int(point: Sequence[Fraction]) -> Vec:
    denom = 1
    for x in point:
        f = Fraction(x)
        denom = denom * f.denominator // gcd(denom, f.denominator)
    return tuple(int(Fraction(x) * denom) for x in point)


def _sign_system(normals, signs):
    """FM input for the relatively open cell with the given sign vector."""
    ineqs = []
    for h, s in zip(normals, signs):
        if s > 0:
            ineqs.append((tuple(Fraction(x) for x in h), Fraction(0), True))
        elif s < 0:
            ineqs.append((tuple(-Fraction(x) for x in h), Fraction(0), True))
    return ineqs


def _cell_split(normals, rank: int):
    """Enumerate nonempty relatively open cells of a central arrangement.

    Returns a list of ``(signs, integer sample)`` pairs.  Feasibility calls
    are kept to one strict LP per split by reusing cell samples: a cell
    splits along a hyperplane iff the opposite open side is nonempty, and
    the middle sample is then a positive combination of the two sides.
    """
    cells: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = [
        ((), tuple(Fraction(0) for _ in range(rank)))
    ]
    eq_basis_cache: dict = {}
    for idx, h in enumerate(normals):
        new_cells = []
        for signs, sample in cells:
            val = dot(h, sample)
            if val != 0:
                base_sign = 1 if val > 0 else -1
                opposite = _sign_system(normals[:idx], signs) + [
                    (
                        tuple(-base_sign * Fraction(x) for x in h),
                        Fraction(0),
                        True,
                    )
                ]
                eqs = [
                    tuple(Fraction(x) for x in n)
                    for n, s in zip(normals[:idx], signs)
                    if s == 0
                ]
                opp_sample = _solve_cell(eqs, opposite, rank)
                new_cells.append((signs + (base_sign,), sample))
                if opp_sample is not None:
                    new_cells.append((signs + (-base_sign,), opp_sample))
                    a = dot(h, sample)
                    b = dot(h, opp_sample)
                    middle = tuple(
                        a * y - b * x for x, y in zip(sample, opp_sample)
                    )
                    if base_sign < 0:
                        middle = tuple(-x for x in middle)
                    new_cells.append((signs + (0,), middle))
            else:
                # sample lies on the hyperplane: either the cell is inside it
                # or the hyperplane cuts through the relatively open cell
                eqs = [
                    tuple(Fraction(x) for x in n)
                    for n, s in zip(normals[:idx], signs)
                    if s == 0
                ]
                plus = _solve_cell(
                    eqs,
                    _sign_system(normals[:idx], signs)
                    + [(tuple(Fraction(x) for x in h), Fraction(0), True)],
                    rank,
                )
                if plus is None:
                    new_cells.append((signs + (0,), sample))
                else:
                    minus = _solve_cell(
                        eqs,
                        _sign_system(normals[:idx], signs)
                        + [(tuple(-Fraction(x) for x in h), Fraction(0), True)],
                        rank,
                    )
                    assert minus is not None, "open cell must cross the hyperplane"
                    new_cells.append((signs + (1,), plus))
                    new_cells.append((signs + (-1,), minus))
                    new_cells.append((signs + (0,), sample))
        cells = new_cells
    return [(signs, _scale_to_int(sample)) for signs, sample in cells]


def _solve_cell(eqs, strict_ineqs, rank: int):
    """Sample of ``{x : eqs.x == 0, strict ineqs}`` or None."""
    from .cones import _gauss_affine

    solved = _gauss_affine([(e, Fraction(0)) for e in eqs], rank)
    if solved is None:
        return None
    particular, basis = solved
    reduced = []
    for a, c, strict in strict_ineqs:
        const = dot(a, particular) + c
        coefs = tuple(dot(a, b) for b in basis)
        reduced.append((coefs, const, strict))
    t = _fm_sample(reduced, len(basis))
    if t is None:
        return None
    point = list(particular)
    for coef, b in zip(t, basis):
        point = [p + coef * x for p, x in zip(point, b)]
    return tuple(point)


# ---------------------------------------------------------------------------
# the quotient


@dataclass(frozen=True)
class QuotientConeData:
    """Provenance attached to one cone of the quotient fan."""

    meeting_set: frozenset[int]
    point_fiber_cones: tuple[int, ...]
    cycle: tuple[tuple[int, int], ...]
    monoid: AffineMonoid
    lift_lattice: Sublattice
    raw_monoid_inside_cone: bool


@dataclass(frozen=True)
class ChowQuotient:
    fan: Fan
    sub: Sublattice
    projection: QuotientMap
    quotient_fan: Fan
    cone_data: tuple[QuotientConeData, ...]
    image_cones: tuple[Cone, ...]  # projected fan cones, aligned with fan.cones

    def __repr__(self) -> str:
        return (
            f"ChowQuotient(rank {self.fan.ambient_rank} -> {self.projection.target_rank}, "
            f"{len(self.quotient_fan.cones)} quotient cones)"
        )


def _relint_sample_or_zero(c: Cone, variant: int = 0) -> Vec:
    if c.is_zero():
        return tuple(0 for _ in range(c.ambient_rank))
    return relative_interior_sample(c, variant)


def chow_quotient(fan: Fan, sub: Sublattice) -> ChowQuotient:
    """Quotient fan with full per-cone provenance.

    Requires a complete fan (the input variety is projective) and a
    saturated sublattice; raises :class:`~chowfan.cones.NotComplete` or
    :class:`~chowfan.intlinalg.NotSaturated` otherwise.
    """
    rep = validate_fan(fan)
    if not rep.ok:
        raise ValueError("input fan is invalid: " + "; ".join(rep.violations))
    if not is_complete(fan):
        raise NotComplete("the fan does not cover the whole space")
    proj = quotient_map(fan.ambient_rank, sub)  # checks saturation
    q = proj.target_rank
    images = tuple(image_cone(proj, c) for c in fan.cones)

    normals = set()
    for img in images:
        for h in img.halfspaces:
            normals.add(_canonical_normal(h))
        for e in img.equations:
            normals.add(_canonical_normal(e))
    normals = sorted(n for n in normals if not is_zero(n))

    cells = _cell_split(tuple(normals), q)

    def invariant_at(v: Sequence[int]) -> frozenset[int]:
        return frozenset(
            i for i, img in enumerate(images) if img.contains_in_relint(v)
        )

    groups: dict[frozenset[int], list[tuple[tuple[int, ...], Vec]]] = {}
    for signs, sample in cells:
        inv = invariant_at(sample)
        if not inv:
            raise InternalConsistencyError(
                "a quotient direction lies in no projected cone interior"
            )
        groups.setdefault(inv, []).append((signs, sample))

    merged: dict[frozenset[int], Cone] = {}
    for inv, members in groups.items():
        gens: list[Vec] = []
        lines: list[Vec] = []
        for signs, _sample in members:
            closure = cone_from_halfspaces(
                [
                    tuple(s * x for x in h)
                    for h, s in zip(normals, signs)
                    if s != 0
                ],
                [h for h, s in zip(normals, signs) if s == 0],
                q,
            )
            gens.extend(closure.generators)
            lines.extend(closure.lineality)
        merged[inv] = cone_from_generators(gens, lines, q)

    # exact convexity/partition verification: the relative interior of each
    # merged cone may only contain cells of its own class
    for inv, cone in merged.items():
        if cone.lineality:
            raise InternalConsistencyError(
                "a quotient class closed up to a non-pointed cone"
            )
        for signs, sample in cells:
            if cone.contains_in_relint(sample):
                if invariant_at(sample) != inv:
                    raise InternalConsistencyError(
                        "merged quotient class is not convex"
                    )

    gfan = fan_from_cones(merged.values(), ambient_rank=q)
    if len(gfan.cones) != len(merged):
        raise InternalConsistencyError(
            "quotient classes are not closed under taking faces"
        )
    grep = validate_fan(gfan)
    if not grep.ok:
        raise InternalConsistencyError(
            "quotient cones do not form a fan: " + "; ".join(grep.violations)
        )
    if not is_complete(gfan):
        raise InternalConsistencyError("quotient fan is not complete")

    data = []
    for kappa in gfan.cones:
        data.append(_cone_data(fan, sub, proj, images, kappa))
    return ChowQuotient(fan, sub, proj, gfan, tuple(data), images)


def _canonical_normal(h: Vec) -> Vec:
    p = primitive(h)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p


def _cone_data(
    fan: Fan,
    sub: Sublattice,
    proj: QuotientMap,
    images: tuple[Cone, ...],
    kappa: Cone,
) -> QuotientConeData:
    sample = _relint_sample_or_zero(kappa)
    psi = proj.lift(sample)
    meeting = set()
    point_cones = []
    for i, c in enumerate(fan.cones):
        t = affine_slice_type(c, psi, sub)
        if t != "empty":
            meeting.add(i)
        if t == "point":
            point_cones.append(i)
    if not point_cones:
        raise InternalConsistencyError(
            "no cone meets the generic translate in a single point"
        )
    cycle = tuple((i, multiplicity(fan, sub, i)) for i in sorted(point_cones))

    lattice: Optional[Sublattice] = None
    raw_cone: Optional[Cone] = None
    for i in point_cones:
        span_sigma = saturate(sublattice(fan.ambient_rank, fan.cones[i].generators))
        m_sigma = image_lattice(proj.matrix, span_sigma)
        lattice = m_sigma if lattice is None else lattice_intersection(lattice, m_sigma)
        raw_cone = images[i] if raw_cone is None else intersect_cones(raw_cone, images[i])
    assert lattice is not None and raw_cone is not None
    monoid = saturated_monoid(kappa, lattice)
    if not monoid.is_pointed:
        raise InternalConsistencyError("quotient stack monoid has units")
    # diagnostic: does the raw intersection of projected monoids stay in the
    # quotient cone?  (equivalently: raw cone ∩ span(lattice) inside kappa)
    span_cone = cone_from_generators([], lattice.basis, proj.target_rank)
    raw_restricted = intersect_cones(raw_cone, span_cone)
    raw_inside = kappa.contains_cone(raw_restricted)
    return QuotientConeData(
        frozenset(meeting),
        tuple(sorted(point_cones)),
        cycle,
        monoid,
        lattice,
        raw_inside,
    )


# ---------------------------------------------------------------------------
# per-cone accessors


def point_fiber_cones(cq: ChowQuotient, kappa_index: int) -> tuple[int, ...]:
    """Fan cones whose generic translate slice over this cone is one point."""
    return cq.cone_data[kappa_index].point_fiber_cones


def fiber_dim_cones(cq: ChowQuotient, kappa_index: int, k: int) -> tuple[int, ...]:
    """Fan cones whose closed fiber polyhedron has dimension exactly k."""
    kappa = cq.quotient_fan.cones[kappa_index]
    v = _relint_sample_or_zero(kappa)
    out = []
    for i, c in enumerate(cq.fan.cones):
        d = fiber_dimension(c, cq.projection.matrix, v)
        if d == k:
            out.append(i)
    return tuple(out)


def cycle(cq: ChowQuotient, kappa_index: int) -> tuple[tuple[int, int], ...]:
    """The weighted cycle of orbit closures over a quotient cone."""
    return cq.cone_data[kappa_index].cycle


def quotient_monoid(cq: ChowQuotient, kappa_index: int) -> AffineMonoid:
    """The stack monoid attached to a quotient cone."""
    return cq.cone_data[kappa_index].monoid


def chow_stack_datum(cq: ChowQuotient) -> ToricStackDatum:
    """Assemble the quotient stack datum and assert its validity."""
    from .stacks import validate_stack_datum

    datum = ToricStackDatum(
        cq.projection.target_rank,
        cq.quotient_fan,
        tuple(d.monoid for d in cq.cone_data),
    )
    rep = validate_stack_datum(datum)
    if not rep.ok:
        raise InternalConsistencyError(
            "quotient stack datum failed validation: " + "; ".join(rep.violations)
        )
    return datum
