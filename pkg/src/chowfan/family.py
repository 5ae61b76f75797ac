"""The universal family over a Chow quotient and its degenerate fibers.

The family fan is the common refinement ``{p^{-1}(kappa) ∩ sigma}`` over all
pairs of quotient and input cones; it is the terminal fan mapping to both
the input fan and the quotient fan.  Its monoids are cut from the input
monoids by the quotient stack monoids.  Over each quotient cone the family
decomposes into a broken toric variety: components (cones mapping
isomorphically), walls of relative dimension one (with one or two sections,
a primitive direction in the acting sublattice, and a lattice-length
gluing map), and higher-dimensional strata.  The components-and-walls graph
is connected and the wall monoids carry product / fiber-product structure,
all of which is verified element by element rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .chow import ChowQuotient, chow_stack_datum, point_fiber_cones
from .cones import (
    Cone,
    Fan,
    cone_from_generators,
    cone_from_halfspaces,
    dual_cone,
    fan_from_cones,
    image_cone,
    intersect_cones,
    preimage_cone,
    relative_interior_sample,
)
from .intlinalg import (
    Sublattice,
    Vec,
    coordinates_in,
    dot,
    full_lattice,
    identity_matrix,
    is_zero,
    lattice_intersection,
    preimage_lattice,
    row_lattice_hnf,
    saturate,
    solve_rational,
    sublattice,
    vadd,
    vec,
    vsub,
)
from .monoids import AffineMonoid, member, saturated_monoid
from .stacks import (
    InternalConsistencyError,
    StackMorphism,
    ToricStackDatum,
    validate_stack_morphism,
    variety_datum,
)


class VerificationFailed(RuntimeError):
    """An explicit isomorphism failed to verify; carries a witness."""


@dataclass(frozen=True)
class UniversalFamily:
    chow: ChowQuotient
    datum: ToricStackDatum  # the family fan with its monoids
    provenance: tuple[tuple[int, int], ...]  # per family cone: (host in F, base in G)
    variety: ToricStackDatum
    base: ToricStackDatum
    to_base: StackMorphism
    to_target: StackMorphism

    @property
    def fan(self) -> Fan:
        return self.datum.fan

    def __repr__(self) -> str:
        return f"UniversalFamily({len(self.fan.cones)} cones over {len(self.base.fan.cones)})"


def universal_family(cq: ChowQuotient) -> UniversalFamily:
    """Terminal refinement with its monoids and both verified morphisms."""
    fan, proj, gfan = cq.fan, cq.projection, cq.quotient_fan
    rank = fan.ambient_rank
    preimages = [preimage_cone(proj, kappa, rank) for kappa in gfan.cones]
    collected = {}
    for pre in preimages:
        for sigma in fan.cones:
            c = intersect_cones(pre, sigma)
            collected[c.key()] = c
    ffan = fan_from_cones(collected.values(), ambient_rank=rank)
    if len(ffan.cones) != len(collected):
        raise InternalConsistencyError(
            "refinement cones are not closed under taking faces"
        )

    provenance = []
    monoids = []
    for c in ffan.cones:
        host = _host_index(fan, c)
        base = _base_index(cq, c)
        expected = intersect_cones(preimages[base], fan.cones[host])
        if expected.key() != c.key():
            raise InternalConsistencyError(
                "family cone does not match its provenance intersection"
            )
        provenance.append((host, base))
        lift_lattice = cq.cone_data[base].lift_lattice
        ambient_lattice = preimage_lattice(proj.matrix, rank, lift_lattice)
        monoids.append(saturated_monoid(c, ambient_lattice))
    datum = ToricStackDatum(rank, ffan, tuple(monoids))

    variety = variety_datum(fan)
    base_datum = chow_stack_datum(cq)
    try:
        to_base = validate_stack_morphism(proj.matrix, datum, base_datum)
        to_target = validate_stack_morphism(identity_matrix(rank), datum, variety)
    except Exception as exc:  # theory guarantees both morphisms
        raise InternalConsistencyError(
            f"universal family morphism failed to validate: {exc}"
        ) from exc
    return UniversalFamily(
        cq, datum, tuple(provenance), variety, base_datum, to_base, to_target
    )


def _host_index(fan: Fan, c: Cone) -> int:
    """The unique input cone whose relative interior contains c's interior."""
    if c.is_zero():
        sample = tuple(0 for _ in range(c.ambient_rank))
    else:
        sample = relative_interior_sample(c)
    idx = fan.cone_containing_in_relint(sample)
    if idx is None:
        raise InternalConsistencyError("family cone escapes the input fan support")
    return idx


def _base_index(cq: ChowQuotient, c: Cone) -> int:
    img = image_cone(cq.projection, c)
    idx = cq.quotient_fan._index().get(img.key())
    if idx is None:
        raise InternalConsistencyError(
            "a family cone does not project onto a quotient cone"
        )
    return idx


def host_cone(fam: UniversalFamily, family_cone_index: int) -> int:
    """Input-fan cone whose interior contains the family cone's interior."""
    return fam.provenance[family_cone_index][0]


def base_cone(fam: UniversalFamily, family_cone_index: int) -> int:
    """Quotient cone the family cone projects onto."""
    return fam.provenance[family_cone_index][1]


def is_refinement_fixed_point(fam: UniversalFamily) -> bool:
    """Re-running the refinement on the family fan must reproduce it."""
    proj = fam.chow.projection
    rank = fam.fan.ambient_rank
    keys = set()
    for kappa in fam.base.fan.cones:
        pre = preimage_cone(proj, kappa, rank)
        for c in fam.fan.cones:
            keys.add(intersect_cones(pre, c).key())
    return keys == {c.key() for c in fam.fan.cones}


def cones_over(fam: UniversalFamily, base_index: int, k: int) -> tuple[int, ...]:
    """Family cones projecting onto the given base cone with relative dim k."""
    kappa_dim = fam.base.fan.cones[base_index].dim
    return tuple(
        i
        for i, c in enumerate(fam.fan.cones)
        if fam.provenance[i][1] == base_index and c.dim == kappa_dim + k
    )


def component_bijection(fam: UniversalFamily, base_index: int) -> dict[int, int]:
    """Host map from fiber components onto single-point-slice input cones."""
    comps = cones_over(fam, base_index, 0)
    mapping = {i: fam.provenance[i][0] for i in comps}
    targets = point_fiber_cones(fam.chow, base_index)
    if len(set(mapping.values())) != len(mapping) or set(mapping.values()) != set(targets):
        raise InternalConsistencyError(
            "components do not biject onto single-point-slice cones"
        )
    return mapping


# ---------------------------------------------------------------------------
# walls


@dataclass(frozen=True)
class Wall:
    """A family cone of relative dimension one over its base cone."""

    index: int
    base_index: int
    kind: str  # "boundary" (one section) or "internal" (two sections)
    iso_faces: tuple[int, ...]  # family cone indices, canonically ordered
    direction: Vec  # primitive vector in the acting sublattice


def _span_lattice(c: Cone) -> Sublattice:
    return saturate(sublattice(c.ambient_rank, c.generators + c.lineality))


def lift_into_span(proj, c: Cone, value: Sequence) -> tuple[Fraction, ...]:
    """The unique preimage of ``value`` in the span of ``c`` (rational)."""
    span = _span_lattice(c)
    if span.rank == 0:
        if any(Fraction(x) != 0 for x in value):
            raise ValueError("nonzero value cannot lift into the zero cone")
        return tuple(Fraction(0) for _ in range(c.ambient_rank))
    rows = [
        tuple(dot(prow, b) for b in span.basis) for prow in proj.matrix
    ]
    t = solve_rational(rows, value)
    if t is None:
        raise ValueError("value is not in the projected span")
    out = [Fraction(0)] * c.ambient_rank
    for coef, b in zip(t, span.basis):
        out = [x + coef * y for x, y in zip(out, b)]
    return tuple(out)


def integral_lift(proj, c: Cone, value: Sequence[int]) -> Vec:
    lifted = lift_into_span(proj, c, value)
    if any(x.denominator != 1 for x in lifted):
        raise InternalConsistencyError(
            f"lift of {tuple(value)} into a section is not integral"
        )
    return tuple(int(x) for x in lifted)


def _wall_direction_lattice(fam: UniversalFamily, wall_index: int) -> Vec:
    c = fam.fan.cones[wall_index]
    k = lattice_intersection(_span_lattice(c), fam.chow.sub)
    if k.rank != 1:
        raise InternalConsistencyError(
            "wall span must meet the acting sublattice in a line"
        )
    return k.basis[0]


def wall_structure(fam: UniversalFamily, base_index: int, wall_index: int) -> Wall:
    """Classify a relative-dimension-one cone and orient its direction.

    Walls admit exactly one iso section (boundary, direction from interior
    point minus its section image) or two (internal, direction from second
    section minus first); any other count is an internal error.
    """
    if wall_index not in cones_over(fam, base_index, 1):
        raise ValueError("cone is not a wall over this base cone")
    kappa = fam.base.fan.cones[base_index]
    proj = fam.chow.projection
    wall = fam.fan.cones[wall_index]
    iso = [
        j
        for j in fam.fan.face_indices(wall_index)
        if fam.fan.cones[j].dim == kappa.dim and fam.provenance[j][1] == base_index
    ]
    iso = sorted(iso)
    if len(iso) not in (1, 2):
        raise InternalConsistencyError(
            f"wall {wall_index} has {len(iso)} sections over its base cone"
        )
    u0 = _wall_direction_lattice(fam, wall_index)
    if len(iso) == 1:
        x = relative_interior_sample(wall)
        v = proj.apply(x)
        lifted = lift_into_span(proj, fam.fan.cones[iso[0]], v)
        diff = tuple(Fraction(a) - b for a, b in zip(x, lifted))
        sign = _parallel_sign(diff, u0)
        return Wall(wall_index, base_index, "boundary", tuple(iso), _signed(u0, sign))
    v = _relint_sample(kappa)
    l1 = lift_into_span(proj, fam.fan.cones[iso[0]], v)
    l2 = lift_into_span(proj, fam.fan.cones[iso[1]], v)
    diff = tuple(b - a for a, b in zip(l1, l2))
    sign = _parallel_sign(diff, u0)
    return Wall(wall_index, base_index, "internal", tuple(iso), _signed(u0, sign))


def _relint_sample(c: Cone) -> Vec:
    if c.is_zero():
        return tuple(0 for _ in range(c.ambient_rank))
    return relative_interior_sample(c)


def _parallel_sign(diff: Sequence[Fraction], u: Vec) -> int:
    coef = None
    for d, x in zip(diff, u):
        if x != 0:
            coef = Fraction(d) / x
            break
    if coef is None or coef == 0:
        raise InternalConsistencyError("wall direction degenerated to zero")
    for d, x in zip(diff, u):
        if Fraction(d) != coef * x:
            raise InternalConsistencyError("wall displacement is not parallel to the line")
    return 1 if coef > 0 else -1


def _signed(u: Vec, sign: int) -> Vec:
    return u if sign > 0 else tuple(-x for x in u)


def segment_length(
    fam: UniversalFamily, base_index: int, wall_index: int, value: Sequence[int]
) -> int:
    """Lattice steps between the two section lifts of a quotient point.

    One less than the number of family-monoid points on the fiber segment.
    """
    w = wall_structure(fam, base_index, wall_index)
    if w.kind != "internal":
        raise ValueError("the gluing length is defined for internal walls only")
    q_monoid = fam.chow.cone_data[base_index].monoid
    if not member(q_monoid, value):
        raise ValueError(f"{tuple(value)} is not in the quotient monoid")
    proj = fam.chow.projection
    v1 = integral_lift(proj, fam.fan.cones[w.iso_faces[0]], value)
    v2 = integral_lift(proj, fam.fan.cones[w.iso_faces[1]], value)
    diff = vsub(v2, v1)
    if is_zero(diff):
        return 0
    m = _parallel_multiple(diff, w.direction)
    if m < 0:
        raise InternalConsistencyError("gluing length came out negative")
    return m


def _parallel_multiple(diff: Vec, u: Vec) -> int:
    coef = None
    for d, x in zip(diff, u):
        if x != 0:
            if d % x != 0:
                raise InternalConsistencyError("segment is not an integral multiple")
            coef = d // x
            break
    assert coef is not None
    if vec(tuple(coef * x for x in u)) != diff:
        raise InternalConsistencyError("segment is not parallel to the wall direction")
    return coef


# ---------------------------------------------------------------------------
# fiber complexes


@dataclass(frozen=True)
class FiberComplex:
    """The broken fiber over a quotient cone as a labelled cone complex."""

    base_index: int
    components: tuple[int, ...]
    component_hosts: tuple[int, ...]
    boundary_walls: tuple[Wall, ...]
    internal_walls: tuple[Wall, ...]
    higher: tuple[tuple[int, tuple[int, ...]], ...]
    adjacency: tuple[tuple[int, int, int], ...]  # (component, component, wall)


def fiber_complex(fam: UniversalFamily, base_index: int) -> FiberComplex:
    """Assemble components, walls and the connectivity graph of one fiber."""
    comps = cones_over(fam, base_index, 0)
    mapping = component_bijection(fam, base_index)
    hosts = tuple(mapping[i] for i in comps)
    walls = [wall_structure(fam, base_index, i) for i in cones_over(fam, base_index, 1)]
    boundary = tuple(w for w in walls if w.kind == "boundary")
    internal = tuple(w for w in walls if w.kind == "internal")
    higher = []
    k = 2
    max_k = fam.chow.sub.rank
    while k <= max_k:
        level = cones_over(fam, base_index, k)
        if level:
            higher.append((k, level))
        k += 1
    edges = tuple((w.iso_faces[0], w.iso_faces[1], w.index) for w in internal)
    _assert_connected(comps, edges)
    return FiberComplex(
        base_index, comps, hosts, boundary, internal, tuple(higher), edges
    )


def _assert_connected(vertices: tuple[int, ...], edges) -> None:
    if not vertices:
        raise InternalConsistencyError("fiber has no components")
    reached = {vertices[0]}
    frontier = [vertices[0]]
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for a, b, _ in edges:
        adj[a].append(b)
        adj[b].append(a)
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                frontier.append(w)
    if reached != set(vertices):
        raise InternalConsistencyError("fiber adjacency graph is disconnected")


def adjacency_dot(fam: UniversalFamily, fc: FiberComplex) -> str:
    """The components-and-walls graph in DOT format."""
    lines = ["graph fiber {"]
    for comp, host in zip(fc.components, fc.component_hosts):
        rays = list(fam.variety.fan.cones[host].generators)
        lines.append(f'  c{comp} [label="component {comp} over cone {host} rays {rays}"];')
    q_basis = fam.chow.cone_data[fc.base_index].monoid.hilbert_basis
    for w in fc.internal_walls:
        cvals = [
            (list(v), segment_length(fam, fc.base_index, w.index, v)) for v in q_basis
        ]
        lines.append(
            f'  c{w.iso_faces[0]} -- c{w.iso_faces[1]} '
            f'[label="wall {w.index} u={list(w.direction)} c={cvals}"];'
        )
    for w in fc.boundary_walls:
        lines.append(
            f'  m{w.index} [shape=point label=""];'
        )
        lines.append(
            f'  c{w.iso_faces[0]} -- m{w.index} '
            f'[style=dashed label="boundary wall {w.index} u={list(w.direction)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# wall monoid structure


@dataclass(frozen=True)
class WallMonoidStructure:
    wall: Wall
    kind: str  # "product" or "fiber_product"
    gluing_on_basis: tuple[tuple[Vec, int], ...]  # internal walls: (v, length)


def wall_monoid_structure(
    fam: UniversalFamily, base_index: int, wall_index: int
) -> WallMonoidStructure:
    """Verify the wall monoid splits as a product or gluing fiber product.

    Boundary walls: (v, n) maps to section(v) + n * direction, bijectively.
    Internal walls: triples (v, a, b) with a + b equal to the gluing length
    map to section1(v) + b * direction.  Both directions are checked on the
    Hilbert bases; failure raises :class:`VerificationFailed` with the
    offending element.
    """
    w = wall_structure(fam, base_index, wall_index)
    proj = fam.chow.projection
    wall_monoid = fam.datum.monoids[wall_index]
    q_monoid = fam.chow.cone_data[base_index].monoid
    if w.kind == "boundary":
        sec = fam.fan.cones[w.iso_faces[0]]
        for v in q_monoid.hilbert_basis:
            x = integral_lift(proj, sec, v)
            if not member(wall_monoid, x):
                raise VerificationFailed(f"section lift of {v} escapes the wall monoid")
        if not member(wall_monoid, w.direction):
            raise VerificationFailed("wall direction is not in the wall monoid")
        for x in wall_monoid.hilbert_basis:
            v = proj.apply(x)
            if not member(q_monoid, v):
                raise VerificationFailed(f"projection of {x} escapes the base monoid")
            n = _parallel_multiple(vsub(x, integral_lift(proj, sec, v)), w.direction)
            if n < 0:
                raise VerificationFailed(f"element {x} decomposes with negative step")
        return WallMonoidStructure(w, "product", ())
    # internal: build the fiber product monoid and map both ways
    gluing = tuple(
        (v, segment_length(fam, base_index, wall_index, v))
        for v in q_monoid.hilbert_basis
    )
    fp = _fiber_product_monoid(fam, base_index, w)
    sec1 = fam.fan.cones[w.iso_faces[0]]
    q = proj.target_rank
    for t in fp.hilbert_basis:
        v, a, b = t[:q], t[q], t[q + 1]
        x = vadd(integral_lift(proj, sec1, v), tuple(b * y for y in w.direction))
        if not member(wall_monoid, x):
            raise VerificationFailed(f"fiber product element {t} maps outside the wall")
        if a + b != segment_length(fam, base_index, wall_index, v):
            raise VerificationFailed(f"fiber product element {t} violates the gluing sum")
    for x in wall_monoid.hilbert_basis:
        v = proj.apply(x)
        if not member(q_monoid, v):
            raise VerificationFailed(f"projection of {x} escapes the base monoid")
        b = _parallel_multiple(vsub(x, integral_lift(proj, sec1, v)), w.direction)
        c = segment_length(fam, base_index, wall_index, v)
        if not (0 <= b <= c):
            raise VerificationFailed(f"element {x} sits outside the fiber segment")
        if not member(fp, v + (c - b, b)):
            raise VerificationFailed(f"decomposition of {x} escapes the fiber product")
    return WallMonoidStructure(w, "fiber_product", gluing)


def _gluing_functional(fam: UniversalFamily, base_index: int, w: Wall):
    """Rational row with <row, v> = gluing length for v in the base span."""
    proj = fam.chow.projection
    kappa = fam.base.fan.cones[base_index]
    span = _span_lattice(kappa)
    values = []
    for b in span.basis:
        l1 = lift_into_span(proj, fam.fan.cones[w.iso_faces[0]], b)
        l2 = lift_into_span(proj, fam.fan.cones[w.iso_faces[1]], b)
        diff = tuple(y - x for x, y in zip(l1, l2))
        coef = Fraction(0)
        for d, x in zip(diff, w.direction):
            if x != 0:
                coef = Fraction(d) / x
                break
        values.append(coef)
    gamma = solve_rational(span.basis, values)
    assert gamma is not None
    return gamma


def _fiber_product_monoid(fam: UniversalFamily, base_index: int, w: Wall) -> AffineMonoid:
    """Triples (v, a, b) with v in the base monoid and a + b = gluing(v)."""
    kappa = fam.base.fan.cones[base_index]
    q = fam.chow.projection.target_rank
    gamma = _gluing_functional(fam, base_index, w)
    denom = 1
    for x in gamma:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    gamma_int = [int(x * denom) for x in gamma]
    halfspaces = [tuple(h) + (0, 0) for h in kappa.halfspaces]
    halfspaces.append(tuple(0 for _ in range(q)) + (1, 0))
    halfspaces.append(tuple(0 for _ in range(q)) + (0, 1))
    equations = [tuple(e) + (0, 0) for e in kappa.equations]
    equations.append(tuple(-x for x in gamma_int) + (denom, denom))
    cone = cone_from_halfspaces(halfspaces, equations, q + 2)
    lat = fam.chow.cone_data[base_index].lift_lattice
    rows = [tuple(b) + (0, 0) for b in lat.basis]
    rows.append(tuple(0 for _ in range(q)) + (1, 0))
    rows.append(tuple(0 for _ in range(q)) + (0, 1))
    lattice = Sublattice(q + 2, row_lattice_hnf(rows))
    return saturated_monoid(cone, lattice)


# ---------------------------------------------------------------------------
# the basic monoid and its tropical dual


@dataclass(frozen=True)
class BasicMonoidPresentation:
    """The quotient monoid presented by component tuples and wall steps.

    Tuples ``(v_0, ..., v_n, m_w)`` of lattice points of the single-point
    cones, one block per component, with one integer per internal wall
    subject to ``v_first - v_second = m * direction``.
    """

    base_index: int
    component_cones: tuple[int, ...]  # input-fan indices, canonical order
    wall_relations: tuple[tuple[int, int, Vec, int], ...]  # (i, j, u, wall index)
    monoid: AffineMonoid  # inside Z^(r*(n+1) + #walls)
    block_rank: int
    host_collisions: tuple[tuple[int, int], ...]


def basic_monoid(fam: UniversalFamily, base_index: int) -> BasicMonoidPresentation:
    comps = point_fiber_cones(fam.chow, base_index)
    rank = fam.fan.ambient_rank
    pos = {c: i for i, c in enumerate(comps)}
    walls = []
    for widx in cones_over(fam, base_index, 1):
        w = wall_structure(fam, base_index, widx)
        if w.kind == "internal":
            walls.append(w)
    relations = []
    hosts_seen: dict[int, int] = {}
    collisions = []
    for w in walls:
        host = fam.provenance[w.index][0]
        if host in hosts_seen:
            collisions.append((hosts_seen[host], w.index))
        else:
            hosts_seen[host] = w.index
        i = pos[fam.provenance[w.iso_faces[0]][0]]
        j = pos[fam.provenance[w.iso_faces[1]][0]]
        relations.append((i, j, w.direction, w.index))

    n = len(comps)
    nwalls = len(relations)
    total = rank * n + nwalls

    def block(vec_idx: int, v: Sequence[int]) -> Vec:
        out = [0] * total
        out[vec_idx * rank : (vec_idx + 1) * rank] = list(v)
        return tuple(out)

    halfspaces = []
    equations = []
    for bi, ci in enumerate(comps):
        c = fam.variety.fan.cones[ci]
        for h in c.halfspaces:
            halfspaces.append(block(bi, h))
        for e in c.equations:
            equations.append(block(bi, e))
    for widx, (i, j, u, _) in enumerate(relations):
        for t in range(rank):
            row = [0] * total
            row[i * rank + t] += 1
            row[j * rank + t] -= 1
            row[rank * n + widx] -= u[t]
            equations.append(tuple(row))
    cone = cone_from_halfspaces(halfspaces, equations, total)
    monoid = saturated_monoid(cone, full_lattice(total))
    if not monoid.is_pointed:
        raise InternalConsistencyError("basic monoid presentation has units")
    return BasicMonoidPresentation(
        base_index, comps, tuple(relations), monoid, rank, tuple(collisions)
    )


def presentation_tuple(
    fam: UniversalFamily, pres: BasicMonoidPresentation, value: Sequence[int]
) -> Vec:
    """Map a quotient monoid element to its presentation tuple."""
    proj = fam.chow.projection
    rank = pres.block_rank
    lifts = [
        integral_lift(proj, fam.variety.fan.cones[ci], value)
        for ci in pres.component_cones
    ]
    out: list[int] = []
    for l in lifts:
        out.extend(l)
    for i, j, u, _ in pres.wall_relations:
        diff = vsub(lifts[i], lifts[j])
        if is_zero(diff):
            out.append(0)
        else:
            out.append(_parallel_multiple(diff, u))
    return tuple(out)


def presentation_value(
    fam: UniversalFamily, pres: BasicMonoidPresentation, t: Sequence[int]
) -> Vec:
    """Common projection of the component blocks of a presentation tuple."""
    proj = fam.chow.projection
    rank = pres.block_rank
    blocks = [
        tuple(t[i * rank : (i + 1) * rank]) for i in range(len(pres.component_cones))
    ]
    images = {proj.apply(b) for b in blocks}
    if len(images) != 1:
        raise VerificationFailed(f"blocks of {tuple(t)} project to different points")
    return images.pop()


def tropical_moduli_cone(fam: UniversalFamily, base_index: int) -> Cone:
    """Dual cone of the basic monoid, coordinatized by Hilbert-basis values.

    A dual functional is recorded by its values on the Hilbert basis of the
    presentation monoid, which embeds the dual cone into nonnegative
    coordinates canonically (independent of any basis orientation).
    """
    pres = basic_monoid(fam, base_index)
    span = saturate(pres.monoid.group)
    if span.rank == 0:
        return cone_from_generators([], ambient_rank=0)
    coords = []
    for g in pres.monoid.hilbert_basis:
        c = coordinates_in(span.basis, g)
        assert c is not None
        coords.append(c)
    dual = dual_cone(cone_from_generators(coords, ambient_rank=span.rank))
    embed = [tuple(dot(g, c) for c in coords) for g in dual.generators]
    embed_lines = [tuple(dot(l, c) for c in coords) for l in dual.lineality]
    return cone_from_generators(embed, embed_lines, len(coords))
