"""Finitely generated submonoids of lattices and their Hilbert bases.

The workhorse is :func:`monoid_from_cone`: the saturated monoid of lattice
points of a strictly convex cone, with its Hilbert basis computed by a
pulling triangulation plus fundamental-parallelepiped enumeration and an
irreducibility sieve.  Monoids built from arbitrary generator sets (not
necessarily saturated) are supported as long as they are pointed; their
membership test is a bounded search driven by a strictly positive grading,
so it always terminates.

Monoids with invertible elements (units) arise as duals of monoids that are
not full-dimensional; they are represented by the unit lattice plus a
canonical pointed generating set and are only built in saturated form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cones import (
    Cone,
    NotStrictlyConvex,
    cone_from_generators,
    cone_from_halfspaces,
    dual_cone,
    intersect_cones,
    is_face_of,
)
from .intlinalg import (
    Mat,
    Sublattice,
    Vec,
    dot,
    full_lattice,
    is_zero,
    mat_vec,
    quotient_map,
    row_lattice_hnf,
    saturate,
    solve_rational,
    sublattice,
    vadd,
    vec,
    vsub,
    zero_sublattice,
)


class NotAFace(ValueError):
    """Raised when a claimed face is not a face of the monoid's cone."""


class UnsupportedMonoid(ValueError):
    """Raised for generator-defined monoids with invertible elements."""


@dataclass(frozen=True)
class AffineMonoid:
    """A finitely generated submonoid of Z^r in canonical form.

    ``hilbert_basis`` is the sorted tuple of irreducible elements of the
    pointed part; ``units`` is the lattice of invertible elements (the zero
    lattice for pointed monoids).  Two monoids constructed through the
    library's canonical paths are equal iff these fields coincide.
    """

    ambient_rank: int
    hilbert_basis: tuple[Vec, ...]
    units: Sublattice
    cone: Cone = field(compare=False)
    group: Sublattice = field(compare=False)
    # set when the monoid is exactly cone ∩ lattice; enables O(1) membership
    saturated_lattice: Optional[Sublattice] = field(compare=False, default=None)

    @property
    def is_pointed(self) -> bool:
        return self.units.rank == 0

    def generators(self) -> tuple[Vec, ...]:
        gens = list(self.hilbert_basis)
        for u in self.units.basis:
            gens.append(u)
            gens.append(tuple(-x for x in u))
        return tuple(gens)

    def grading(self) -> Vec:
        """A functional strictly positive on the pointed part minus zero."""
        total = tuple(0 for _ in range(self.ambient_rank))
        for h in self.cone.halfspaces:
            total = vadd(total, h)
        return total

    def __repr__(self) -> str:
        units = f", units rank {self.units.rank}" if self.units.rank else ""
        return f"AffineMonoid(rank {self.ambient_rank}, basis {list(self.hilbert_basis)}{units})"


def _reduce_mod_units(v: Sequence[int], units: Sublattice) -> Vec:
    """Canonical coset representative: subtract unit multiples at pivots."""
    out = list(v)
    for row in units.basis:
        piv = next(j for j, x in enumerate(row) if x != 0)
        q = out[piv] // row[piv]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return tuple(out)


# ---------------------------------------------------------------------------
# Hilbert bases of saturated monoids


def _triangulate(c: Cone) -> list[tuple[Vec, ...]]:
    """Pulling triangulation of a strictly convex cone into simplicial cones."""
    rays = c.generators
    if len(rays) == c.dim:
        return [rays]
    v = rays[0]
    out = []
    for h in c.halfspaces:
        if dot(h, v) > 0:
            fr = tuple(r for r in rays if dot(h, r) == 0)
            facet = cone_from_generators(fr, ambient_rank=c.ambient_rank)
            for simplex in _triangulate(facet):
                out.append(simplex + (v,))
    return out


def _parallelepiped_points(simplex_rays: tuple[Vec, ...], rank: int) -> list[Vec]:
    """Lattice points of the half-open parallelepiped of independent rays."""
    from .intlinalg import (
        coordinates_in,
        smith_normal_form,
        transpose,
        unimodular_inverse,
    )

    span = saturate(sublattice(rank, simplex_rays))
    coords = [coordinates_in(span.basis, r) for r in simplex_rays]
    assert all(c is not None for c in coords)
    s, _, v = smith_normal_form(tuple(coords))
    diag = [s[i][i] for i in range(len(simplex_rays))]
    v_inv = unimodular_inverse(v)
    reps: list[Vec] = []
    stack = [()]
    for d in diag:
        stack = [t + (a,) for t in stack for a in range(d)]
    ray_mat_t = transpose(tuple(simplex_rays))
    out = []
    for z in stack:
        y = mat_vec(transpose(v_inv), z)  # z @ v_inv
        w = mat_vec(transpose(span.basis), y)  # y @ basis
        lam = solve_rational(ray_mat_t, w)
        assert lam is not None
        shifted = list(w)
        for coef, r in zip(lam, simplex_rays):
            f = coef.numerator // coef.denominator  # floor
            if f:
                shifted = [a - f * b for a, b in zip(shifted, r)]
        pt = tuple(shifted)
        if not is_zero(pt):
            out.append(pt)
    return out


def _hilbert_basis_full(c: Cone) -> tuple[Vec, ...]:
    """Hilbert basis of ``c ∩ Z^rank`` for a strictly convex cone."""
    if c.dim == 0:
        return ()
    candidates = set(c.generators)
    for simplex in _triangulate(c):
        candidates.update(_parallelepiped_points(simplex, c.ambient_rank))
    grading = tuple(0 for _ in range(c.ambient_rank))
    for h in c.halfspaces:
        grading = vadd(grading, h)
    halfspaces = c.halfspaces
    # precomputed halfspace values make the sieve pure integer comparisons
    valued = sorted(
        ((dot(grading, x), x, tuple(dot(h, x) for h in halfspaces)) for x in candidates),
        key=lambda t: (t[0], t[1]),
    )
    # processed in grade order, reducibility only needs smaller irreducibles
    basis: list[tuple[int, Vec, tuple[int, ...]]] = []
    for gx, x, hx in valued:
        reducible = False
        for gb, _b, hb in basis:
            if gb >= gx:
                break
            if all(p >= q for p, q in zip(hx, hb)):
                reducible = True
                break
        if not reducible:
            basis.append((gx, x, hx))
    return tuple(sorted(x for _, x, _hx in basis))


def _subspace_cone(s: Sublattice) -> Cone:
    return cone_from_generators([], s.basis, ambient_rank=s.ambient_rank)


def saturated_monoid(c: Cone, lattice: Sublattice) -> AffineMonoid:
    """The monoid ``c ∩ lattice`` (lineality allowed; units become explicit)."""
    rank = c.ambient_rank
    if lattice.ambient_rank != rank:
        raise ValueError("lattice has wrong ambient rank")
    if lattice.rank == 0:
        return AffineMonoid(
            rank, (), zero_sublattice(rank), cone_from_generators([], ambient_rank=rank),
            zero_sublattice(rank), lattice,
        )
    c2 = intersect_cones(c, _subspace_cone(lattice))
    basis = lattice.basis  # rows: coordinates y -> point y @ basis
    k = len(basis)
    pulled_h = [tuple(dot(h, b) for b in basis) for h in c2.halfspaces]
    pulled_e = [tuple(dot(e, b) for b in basis) for e in c2.equations]
    cy = cone_from_halfspaces(pulled_h, pulled_e, k)

    def push(y: Sequence[int]) -> Vec:
        out = [0] * rank
        for coef, b in zip(y, basis):
            out = [a + coef * x for a, x in zip(out, b)]
        return tuple(out)

    if cy.lineality:
        units_y = Sublattice(k, cy.lineality)
        qu = quotient_map(k, units_y)
        pointed = cone_from_generators(
            [qu.apply(g) for g in cy.generators], ambient_rank=qu.target_rank
        )
        hb_down = _hilbert_basis_full(pointed)
        hb_y = [_reduce_mod_units(qu.lift(v), units_y) for v in hb_down]
        units = Sublattice(rank, row_lattice_hnf([push(u) for u in units_y.basis]))
        hb = tuple(sorted(push(y) for y in hb_y))
    else:
        units = zero_sublattice(rank)
        hb = tuple(sorted(push(y) for y in _hilbert_basis_full(cy)))
    cone_back = cone_from_generators(
        [g for g in hb], [u for u in units.basis], ambient_rank=rank
    ) if (hb or units.rank) else cone_from_generators([], ambient_rank=rank)
    group = Sublattice(rank, row_lattice_hnf(list(hb) + list(units.basis)))
    return AffineMonoid(rank, hb, units, cone_back, group, lattice)


def monoid_from_cone(c: Cone, lattice: Optional[Sublattice] = None) -> AffineMonoid:
    """Hilbert-basis presentation of ``c ∩ lattice`` for strictly convex c."""
    if not c.is_strictly_convex:
        raise NotStrictlyConvex("monoid_from_cone needs a strictly convex cone")
    if lattice is None:
        lattice = full_lattice(c.ambient_rank)
    m = saturated_monoid(c, lattice)
    assert m.is_pointed
    return m


def affine_monoid(rank: int, generators: Sequence[Sequence[int]]) -> AffineMonoid:
    """Monoid generated by arbitrary integer vectors (must be pointed)."""
    gens = [vec(g) for g in generators if not is_zero(g)]
    cone = cone_from_generators(gens, ambient_rank=rank)
    if cone.lineality:
        raise UnsupportedMonoid(
            "generator-defined monoids with invertible elements are not supported"
        )
    group = Sublattice(rank, row_lattice_hnf(gens))
    grading = tuple(0 for _ in range(rank))
    for h in cone.halfspaces:
        grading = vadd(grading, h)
    uniq = sorted(set(gens), key=lambda x: (dot(grading, x), x))
    basis = []
    for x in uniq:
        gx = dot(grading, x)
        smaller = [g for g in uniq if 0 < dot(grading, g) < gx]
        reducible = any(
            _member_search(vsub(x, g), uniq, cone, grading) for g in smaller
        )
        if not reducible:
            basis.append(x)
    return AffineMonoid(rank, tuple(sorted(basis)), zero_sublattice(rank), cone, group, None)


def _member_search(v: Vec, gens: Sequence[Vec], cone: Cone, grading: Vec) -> bool:
    """Decide membership in the monoid generated by ``gens`` (pointed)."""
    if is_zero(v):
        return True
    if not cone.contains(v):
        return False
    memo: dict[Vec, bool] = {}
    usable = [g for g in gens if not is_zero(g)]

    def reach(x: Vec) -> bool:
        if is_zero(x):
            return True
        known = memo.get(x)
        if known is not None:
            return known
        memo[x] = False  # cycle guard; grading strictly decreases anyway
        gx = dot(grading, x)
        for g in usable:
            if dot(grading, g) <= gx and cone.contains(vsub(x, g)) and reach(vsub(x, g)):
                memo[x] = True
                return True
        return memo[x]

    return reach(v)


def member(m: AffineMonoid, v: Sequence[int]) -> bool:
    """Exact membership test."""
    v = vec(v)
    if len(v) != m.ambient_rank:
        raise ValueError("vector has wrong length")
    if m.saturated_lattice is not None:
        return m.cone.contains(v) and m.saturated_lattice.contains(v)
    if not m.is_pointed:
        raise UnsupportedMonoid("membership for non-saturated monoids with units")
    return _member_search(v, m.hilbert_basis, m.cone, m.grading())


def image_monoid(matrix: Mat, m: AffineMonoid) -> AffineMonoid:
    """Monoid generated by the images of the generators."""
    target_rank = len(matrix)
    gens = [mat_vec(matrix, g) for g in m.generators()]
    return affine_monoid(target_rank, gens)


def dual_monoid(m: AffineMonoid) -> AffineMonoid:
    """All functionals of the ambient dual lattice nonnegative on ``m``."""
    return saturated_monoid(dual_cone(m.cone), full_lattice(m.ambient_rank))


def group_coordinates(m: AffineMonoid) -> tuple[AffineMonoid, Mat]:
    """The monoid rewritten in coordinates of its own group lattice.

    Returns ``(monoid', basis)`` where ``basis`` rows span the group and a
    point ``y`` of the new monoid corresponds to ``y @ basis``.  Useful for
    forming ``Hom(m, N)`` faithfully when the group is a proper sublattice.
    """
    basis = m.group.basis
    k = len(basis)
    halfs = [tuple(dot(h, b) for b in basis) for h in m.cone.halfspaces]
    eqs = [tuple(dot(e, b) for b in basis) for e in m.cone.equations]
    cone = cone_from_halfspaces(halfs, eqs, k)
    return saturated_monoid(cone, full_lattice(k)), basis


def is_saturated(m: AffineMonoid) -> bool:
    """True iff the monoid equals cone(m) ∩ group(m)."""
    if m.saturated_lattice is not None:
        return True
    sat = saturated_monoid(m.cone, m.group)
    return all(member(m, g) for g in sat.generators())


def restrict_to_face(m: AffineMonoid, face: Cone) -> AffineMonoid:
    """The submonoid of elements lying on a face of the monoid's cone."""
    if not is_face_of(face, m.cone):
        raise NotAFace(f"{face} is not a face of {m.cone}")
    if m.saturated_lattice is not None:
        return saturated_monoid(face, m.saturated_lattice)
    picked = [g for g in m.hilbert_basis if face.contains(g)]
    return affine_monoid(m.ambient_rank, picked)


@dataclass(frozen=True)
class MonoidHom:
    """An integer-linear map sending one affine monoid into another."""

    matrix: Mat
    source: AffineMonoid
    target: AffineMonoid

    def apply(self, v: Sequence[int]) -> Vec:
        return mat_vec(self.matrix, v)


def monoid_hom(matrix: Sequence[Sequence[int]], source: AffineMonoid, target: AffineMonoid) -> MonoidHom:
    mtx = tuple(vec(r) for r in matrix)
    for g in source.generators():
        if not member(target, mat_vec(mtx, g)):
            raise ValueError(f"generator {g} does not map into the target monoid")
    return MonoidHom(mtx, source, target)
