"""Rational polyhedral cones and fans with exact dual descriptions.

A cone is stored with both descriptions in canonical form:

* generators: the extreme rays of the cone modulo its lineality space,
  reduced to canonical representatives, primitive and sorted;
* lineality: the saturated lattice of the lineality space, in row HNF;
* halfspaces/equations: the same data for the dual cone, so that duality is
  literally a swap of the two description pairs.

Conversions run the double description method with exact integer
arithmetic; strict feasibility questions (relative interiors, affine slice
types) go through small Fourier-Motzkin eliminations over Fractions.  This
is comfortably fast at the intended scale (rank <= 5, fans of ~100 cones).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .intlinalg import (
    Mat,
    Sublattice,
    Vec,
    dot,
    identity_matrix,
    integer_kernel,
    is_zero,
    mat,
    mat_vec,
    matrix_rank,
    primitive,
    row_lattice_hnf,
    vadd,
    vec,
    vscale,
)


class ZeroCone(ValueError):
    """Raised when an operation needs a nonzero cone."""


class NotStrictlyConvex(ValueError):
    """Raised when a cone unexpectedly contains a line."""


class NoTargetCone(ValueError):
    """A lattice map fails to send some source cone into any target cone."""


class NotComplete(ValueError):
    """Raised when a fan was required to cover the whole space."""


# ---------------------------------------------------------------------------
# double description method


def _reduce_mod_rows(v: Sequence[int], rows: Mat) -> Vec:
    """Canonical representative of ``v`` modulo the span of HNF rows.

    Eliminates the pivot coordinates of the rows; the result is an integer
    vector on the same ray modulo the span, made primitive.
    """
    out = tuple(v)
    for row in rows:
        piv = next(j for j, x in enumerate(row) if x != 0)
        if out[piv] != 0:
            p = row[piv]
            out = primitive(tuple(p * a - out[piv] * b for a, b in zip(out, row)))
    return out


def double_description(
    ineqs: Sequence[Sequence[int]], eqs: Sequence[Sequence[int]], rank: int
) -> tuple[tuple[Vec, ...], Mat]:
    """Extreme rays and lineality basis of ``{x : ineqs.x >= 0, eqs.x == 0}``.

    Returns ``(rays, lineality)`` where the rays are canonical primitive
    representatives modulo the lineality space and the lineality basis is a
    saturated HNF lattice basis.  Incremental insertion with the standard
    combinatorial adjacency test keeps the ray set irredundant.
    """
    lineality: list[Vec] = [tuple(r) for r in identity_matrix(rank)]
    rays: list[Vec] = []
    zsets: list[frozenset[int]] = []  # per-ray indices of tight constraints
    nproc = 0

    def cut_lineality(h: Vec) -> Vec:
        """Slice the lineality space along h; returns the removed direction
        normalized so that <h, l0> > 0."""
        nonlocal lineality, rays
        vals = [dot(h, l) for l in lineality]
        i0 = next(i for i, v in enumerate(vals) if v != 0)
        l0, a = lineality[i0], vals[i0]
        if a < 0:
            l0, a = vscale(-1, l0), -a
        lineality = [
            primitive(tuple(a * x - v * y for x, y in zip(l, l0)))
            for i, (l, v) in enumerate(zip(lineality, vals))
            if i != i0
        ]
        # prior constraints vanish on l0, so prior tight sets are unchanged
        rays = [
            primitive(tuple(a * x - dot(h, r) * y for x, y in zip(r, l0)))
            for r in rays
        ]
        return l0

    for e in eqs:  # rays are still empty here, equations only slice lineality
        e = tuple(e)
        if not is_zero(e) and any(dot(e, l) != 0 for l in lineality):
            cut_lineality(e)

    for h_raw in ineqs:
        h = tuple(h_raw)
        if is_zero(h):
            continue
        if any(dot(h, l) != 0 for l in lineality):
            l0 = cut_lineality(h)
            # every old ray was projected into the hyperplane of h
            zsets = [zs | {nproc} for zs in zsets]
            rays.append(l0)
            zsets.append(frozenset(range(nproc)))
            nproc += 1
            continue
        vals = [dot(h, r) for r in rays]
        if all(v >= 0 for v in vals):
            zsets = [
                zs | {nproc} if v == 0 else zs for zs, v in zip(zsets, vals)
            ]
            nproc += 1
            continue
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        new_rays = []
        new_zsets = []
        for i, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[i])
                new_zsets.append(zsets[i])
            elif v == 0:
                new_rays.append(rays[i])
                new_zsets.append(zsets[i] | {nproc})
        for ip in plus:
            for im in minus:
                common = zsets[ip] & zsets[im]
                if any(
                    k != ip and k != im and common <= zsets[k]
                    for k in range(len(rays))
                ):
                    continue
                new_rays.append(
                    primitive(
                        tuple(
                            vals[ip] * x - vals[im] * y
                            for x, y in zip(rays[im], rays[ip])
                        )
                    )
                )
                new_zsets.append(common | {nproc})
        rays = new_rays
        zsets = new_zsets
        nproc += 1

    lin_hnf = row_lattice_hnf(lineality)
    if lin_hnf:
        orth = integer_kernel(lin_hnf, rank)
        lin_hnf = integer_kernel(orth, rank) if orth else identity_matrix(rank)
    canon = {primitive(_reduce_mod_rows(r, lin_hnf)) for r in rays}
    return tuple(sorted(r for r in canon if not is_zero(r))), lin_hnf


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone with canonical dual descriptions.

    ``generators``/``lineality`` describe the cone itself, ``halfspaces``/
    ``equations`` are the extreme rays and lineality lattice of the dual
    cone, i.e. a canonical irredundant H-description.
    """

    ambient_rank: int
    generators: tuple[Vec, ...]
    lineality: Mat
    halfspaces: tuple[Vec, ...]
    equations: Mat

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def is_strictly_convex(self) -> bool:
        return not self.lineality

    def contains(self, v: Sequence) -> bool:
        return all(dot(h, v) >= 0 for h in self.halfspaces) and all(
            dot(e, v) == 0 for e in self.equations
        )

    def contains_in_relint(self, v: Sequence) -> bool:
        return all(dot(h, v) > 0 for h in self.halfspaces) and all(
            dot(e, v) == 0 for e in self.equations
        )

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators) and all(
            self.contains(l) and self.contains(vscale(-1, l)) for l in other.lineality
        )

    def is_zero(self) -> bool:
        return not self.generators and not self.lineality

    def key(self):
        return (self.ambient_rank, self.generators, self.lineality)

    def __repr__(self) -> str:
        return f"Cone(rank {self.ambient_rank}, rays {list(self.generators)}" + (
            f", lines {list(self.lineality)})" if self.lineality else ")"
        )


# Canonical cones are interned here.  Values are immutable and equality is
# by value, so a racy duplicate insertion under concurrent use is harmless.
_cone_cache: dict = {}


def _build_cone(rank: int, rays: tuple[Vec, ...], lines: Mat) -> Cone:
    """Canonical cone from an already-reduced V-description."""
    key = (rank, rays, lines)
    cached = _cone_cache.get(key)
    if cached is not None:
        return cached
    ineqs, eqs = double_description(rays, lines, rank)
    cone = Cone(rank, rays, lines, ineqs, eqs)
    _cone_cache[key] = cone
    _cone_cache[(rank, rays, lines, "v")] = cone
    return cone


def cone_from_generators(
    rays: Sequence[Sequence[int]], lines: Sequence[Sequence[int]] = (), ambient_rank: Optional[int] = None
) -> Cone:
    """Cone generated by rays (and optional lines), canonicalized."""
    rays = [vec(r) for r in rays]
    lines = [vec(l) for l in lines]
    if ambient_rank is None:
        if rays:
            ambient_rank = len(rays[0])
        elif lines:
            ambient_rank = len(lines[0])
        else:
            raise ValueError("ambient_rank required for the zero cone")
    for v in list(rays) + list(lines):
        if len(v) != ambient_rank:
            raise ValueError("generator of wrong length")
    # dual H-description: functionals nonnegative on rays, zero on lines
    dual_rays, dual_lin = double_description(rays, lines, ambient_rank)
    # now rebuild the cone canonically from its own H-description
    crays, clin = double_description(dual_rays, dual_lin, ambient_rank)
    cone = Cone(ambient_rank, crays, clin, dual_rays, dual_lin)
    cached = _cone_cache.get(cone.key())
    if cached is not None:
        return cached
    _cone_cache[cone.key()] = cone
    return cone


def cone_from_halfspaces(
    halfspaces: Sequence[Sequence[int]], equations: Sequence[Sequence[int]] = (), ambient_rank: Optional[int] = None
) -> Cone:
    """Cone cut out by ``<h,x> >= 0`` and ``<e,x> == 0``, canonicalized."""
    halfspaces = [vec(h) for h in halfspaces]
    equations = [vec(e) for e in equations]
    if ambient_rank is None:
        pool = list(halfspaces) + list(equations)
        if not pool:
            raise ValueError("ambient_rank required for the full space")
        ambient_rank = len(pool[0])
    rays, lin = double_description(halfspaces, equations, ambient_rank)
    return _build_cone(ambient_rank, rays, lin)


def zero_cone(ambient_rank: int) -> Cone:
    return cone_from_generators([], ambient_rank=ambient_rank)


def full_cone(ambient_rank: int) -> Cone:
    return cone_from_halfspaces([], ambient_rank=ambient_rank)


def dual_cone(c: Cone) -> Cone:
    """Polar dual ``{u : <u,x> >= 0 for all x in c}``; involutive."""
    return Cone(c.ambient_rank, c.halfspaces, c.equations, c.generators, c.lineality)


def intersect_cones(a: Cone, b: Cone) -> Cone:
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient ranks differ")
    return cone_from_halfspaces(
        a.halfspaces + b.halfspaces, a.equations + b.equations, a.ambient_rank
    )


def image_cone(matrix_or_map, c: Cone) -> Cone:
    """Image of a cone under an integer matrix (rows act on column vectors)."""
    matrix = getattr(matrix_or_map, "matrix", matrix_or_map)
    target_rank = len(matrix)
    rays = [mat_vec(matrix, g) for g in c.generators]
    lines = [mat_vec(matrix, l) for l in c.lineality]
    return cone_from_generators(
        [primitive(r) for r in rays if not is_zero(r)],
        [l for l in lines if not is_zero(l)],
        ambient_rank=target_rank,
    )


def preimage_cone(matrix_or_map, c: Cone, source_rank: Optional[int] = None) -> Cone:
    """Preimage ``{x : Mx in c}``; includes ker(M) in its lineality."""
    matrix = getattr(matrix_or_map, "matrix", matrix_or_map)
    if source_rank is None:
        source_rank = getattr(matrix_or_map, "source_rank", None)
        if source_rank is None:
            source_rank = len(matrix[0]) if matrix else 0
    # <h, Mx> = <hM, x>: pull every functional back along the matrix
    cols = list(zip(*matrix)) if matrix else []
    halfspaces = [tuple(dot(h, col) for col in cols) for h in c.halfspaces]
    equations = [tuple(dot(e, col) for col in cols) for e in c.equations]
    if not matrix:  # map to the rank-0 lattice: preimage is everything
        halfspaces, equations = [], []
    return cone_from_halfspaces(halfspaces, equations, source_rank)


def relative_interior_sample(c: Cone, variant: int = 0) -> Vec:
    """A deterministic integer point in the relative interior of ``c``.

    ``variant`` selects between different deterministic interior points.
    Raises :class:`ZeroCone` for the zero cone.
    """
    if c.is_zero():
        raise ZeroCone("the zero cone has no nonzero interior sample")
    if not c.generators:
        return tuple(0 for _ in range(c.ambient_rank))
    total = tuple(0 for _ in range(c.ambient_rank))
    for i, g in enumerate(c.generators):
        weight = 1 + variant * (i + 1)
        total = vadd(total, vscale(weight, g))
    return total


# ---------------------------------------------------------------------------
# exact linear feasibility (Fourier-Motzkin over Fractions)


def _gauss_affine(eqs: list[tuple[tuple[Fraction, ...], Fraction]], nvars: int):
    """Solve ``a.x + c == 0``; returns (particular, basis) or None."""
    rows = [list(a) + [c] for a, c in eqs]
    pivots = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][nvars] != 0:
            return None
    particular = [Fraction(0)] * nvars
    for i, col in enumerate(pivots):
        particular[col] = -rows[i][nvars]
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fcol in free:
        b = [Fraction(0)] * nvars
        b[fcol] = Fraction(1)
        for i, col in enumerate(pivots):
            b[col] = -rows[i][fcol]
        basis.append(tuple(b))
    return tuple(particular), tuple(basis)


def _fm_sample(ineqs: list[tuple[tuple[Fraction, ...], Fraction, bool]], nvars: int):
    """A point satisfying ``a.x + c >= 0`` (``> 0`` when strict), or None."""
    system = [(tuple(a), c, strict) for a, c, strict in ineqs]
    stack = []
    for v in range(nvars - 1, -1, -1):
        lows, highs, rest = [], [], []
        for a, c, strict in system:
            coef = a[v]
            trimmed = a[:v]
            if coef == 0:
                rest.append((trimmed, c, strict))
            elif coef > 0:
                lows.append((tuple(-x / coef for x in trimmed), -c / coef, strict))
            else:
                highs.append((tuple(-x / coef for x in trimmed), -c / coef, strict))
        stack.append((lows, highs))
        new_system = list(rest)
        for la, lc, ls in lows:
            for ha, hc, hs in highs:
                new_system.append(
                    (tuple(h - l for l, h in zip(la, ha)), hc - lc, ls or hs)
                )
        system = new_system
    for a, c, strict in system:
        if c < 0 or (strict and c == 0):
            return None
    point: list[Fraction] = []
    for lows, highs in reversed(stack):
        # feasibility was already decided above: if lo == hi here, every
        # bound attaining it is non-strict, so the midpoint always works
        lo = None
        for a, c, _strict in lows:
            val = dot(a, point) + c if a else c
            if lo is None or val > lo:
                lo = val
        hi = None
        for a, c, _strict in highs:
            val = dot(a, point) + c if a else c
            if hi is None or val < hi:
                hi = val
        if lo is None and hi is None:
            point.append(Fraction(0))
        elif lo is None:
            point.append(hi - 1)
        elif hi is None:
            point.append(lo + 1)
        else:
            point.append((lo + hi) / 2)
    return tuple(point)


def affine_polyhedron_sample(
    eqs: Sequence[tuple[Sequence, object]],
    ineqs: Sequence[tuple[Sequence, object, bool]],
    nvars: int,
):
    """Sample of ``{x : a.x + c == 0, b.x + d >= 0 (or > 0)}`` or None.

    Returns ``(point, dim_of_equation_solution_space)``; the dimension refers
    to the affine space cut by the equations alone.
    """
    frac_eqs = [(tuple(Fraction(x) for x in a), Fraction(c)) for a, c in eqs]
    solved = _gauss_affine(frac_eqs, nvars)
    if solved is None:
        return None
    particular, basis = solved
    d = len(basis)
    reduced = []
    for a, c, strict in ineqs:
        af = tuple(Fraction(x) for x in a)
        const = dot(af, particular) + Fraction(c)
        coefs = tuple(dot(af, b) for b in basis)
        reduced.append((coefs, const, strict))
    t = _fm_sample(reduced, d)
    if t is None:
        return None
    point = list(particular)
    for coef, b in zip(t, basis):
        point = [p + coef * x for p, x in zip(point, b)]
    return tuple(point), d


def affine_slice_type(c: Cone, psi: Sequence, sub: Sublattice) -> str:
    """Classify ``relint(c) ∩ (psi + span_R(sub))``.

    Returns one of ``"empty"``, ``"point"``, ``"positive_dim"``.  Decided by
    exact rational feasibility with strict inequalities; "point" requires the
    solution set of the active equations to be zero-dimensional.
    """
    if len(psi) != c.ambient_rank or sub.ambient_rank != c.ambient_rank:
        raise ValueError("dimension mismatch")
    basis = sub.basis
    nvars = len(basis)
    psi_f = tuple(Fraction(x) for x in psi)
    eqs = []
    for e in c.equations:
        coefs = tuple(dot(e, b) for b in basis)
        eqs.append((coefs, dot(e, psi_f)))
    ineqs = []
    for h in c.halfspaces:
        coefs = tuple(dot(h, b) for b in basis)
        ineqs.append((coefs, dot(h, psi_f), True))
    if c.is_zero():
        # relint of the zero cone is the origin itself
        eqs = [(tuple(b[j] for b in basis), psi_f[j]) for j in range(c.ambient_rank)]
        ineqs = []
    frac_eqs = [(tuple(Fraction(x) for x in a), Fraction(cst)) for a, cst in eqs]
    solved = _gauss_affine(frac_eqs, nvars)
    if solved is None:
        return "empty"
    particular, bas = solved
    reduced = []
    for a, cst, strict in ineqs:
        af = tuple(Fraction(x) for x in a)
        const = dot(af, particular) + Fraction(cst)
        coefs = tuple(dot(af, b) for b in bas)
        reduced.append((coefs, const, strict))
    t = _fm_sample(reduced, len(bas))
    if t is None:
        return "empty"
    return "point" if len(bas) == 0 else "positive_dim"


def fiber_dimension(c: Cone, matrix: Mat, value: Sequence) -> Optional[int]:
    """Dimension of the closed fiber ``c ∩ {x : matrix @ x == value}``.

    Returns None when the fiber is empty.  Computed exactly: feasibility,
    then implicit equalities among the halfspace constraints.
    """
    rank = c.ambient_rank
    eqs = [(row, -Fraction(v)) for row, v in zip(matrix, value)]
    eqs += [(e, Fraction(0)) for e in c.equations]
    ineqs = [(h, Fraction(0), False) for h in c.halfspaces]
    res = affine_polyhedron_sample(eqs, ineqs, rank)
    if res is None:
        return None
    _, d = res
    # dimension = d minus the rank of constraints that hold with equality
    # everywhere on the feasible set
    frac_eqs = [(tuple(Fraction(x) for x in a), Fraction(cst)) for a, cst in eqs]
    solved = _gauss_affine(frac_eqs, rank)
    assert solved is not None
    _, basis = solved
    implicit = []
    for h in c.halfspaces:
        strict_test = [(h2, Fraction(0), h2 == h) for h2 in c.halfspaces]
        if affine_polyhedron_sample(eqs, strict_test, rank) is None:
            implicit.append(tuple(dot(tuple(Fraction(x) for x in h), b) for b in basis))
    implicit = [row for row in implicit if any(x != 0 for x in row)]
    if not implicit:
        return d
    scaled = []
    for row in implicit:
        denom = 1
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        scaled.append(tuple(int(x * denom) for x in row))
    return d - matrix_rank(scaled)


# ---------------------------------------------------------------------------
# faces


def facets(c: Cone) -> tuple[Cone, ...]:
    """The codimension-one faces of a strictly convex cone."""
    out = []
    seen = set()
    for h in c.halfspaces:
        rays = tuple(g for g in c.generators if dot(h, g) == 0)
        f = _canonical_subcone(c, rays)
        if f.key() not in seen:
            seen.add(f.key())
            out.append(f)
    return tuple(out)


def _canonical_subcone(c: Cone, rays: tuple[Vec, ...]) -> Cone:
    return cone_from_generators(rays, c.lineality, c.ambient_rank)


def all_faces(c: Cone) -> tuple[Cone, ...]:
    """Every face of ``c``, including ``c`` itself and the zero cone."""
    seen = {c.key(): c}
    frontier = [c]
    while frontier:
        nxt = []
        for f in frontier:
            if f.dim == 0:
                continue
            for g in facets(f):
                if g.key() not in seen:
                    seen[g.key()] = g
                    nxt.append(g)
        frontier = nxt
    z = zero_cone(c.ambient_rank)
    if z.key() not in seen:
        seen[z.key()] = z
    return tuple(sorted(seen.values(), key=_cone_sort_key))


def is_face_of(face: Cone, c: Cone) -> bool:
    """Exact test that ``face`` is a face of ``c``."""
    if not c.contains_cone(face):
        return False
    if face.key() == c.key():
        return True
    # the face must be the zero locus of the supporting functionals of c
    # vanishing on it
    w = tuple(0 for _ in range(c.ambient_rank))
    have = False
    for h in c.halfspaces:
        if all(dot(h, g) == 0 for g in face.generators) and all(
            dot(h, l) == 0 for l in face.lineality
        ):
            w = vadd(w, h)
            have = True
    if not have:
        return False
    rays = tuple(g for g in c.generators if dot(w, g) == 0)
    return _canonical_subcone(c, rays).key() == face.key()


# ---------------------------------------------------------------------------
# fans


def _cone_sort_key(c: Cone):
    return (c.dim, c.generators, c.lineality)


@dataclass(frozen=True)
class Fan:
    """A finite collection of strictly convex cones, closed under faces.

    Cones are stored sorted by a canonical key, so equal fans compare equal
    and cone indices are stable across runs.
    """

    ambient_rank: int
    cones: tuple[Cone, ...]

    def index_of(self, c: Cone) -> int:
        return self._index()[c.key()]

    def _index(self):
        d = getattr(self, "_index_cache", None)
        if d is None:
            d = {c.key(): i for i, c in enumerate(self.cones)}
            object.__setattr__(self, "_index_cache", d)
        return d

    def __contains__(self, c: Cone) -> bool:
        return c.key() in self._index()

    def maximal_indices(self) -> tuple[int, ...]:
        out = []
        for i, c in enumerate(self.cones):
            if not any(
                j != i and other.contains_cone(c) for j, other in enumerate(self.cones)
            ):
                out.append(i)
        return tuple(out)

    def cone_containing_in_relint(self, v: Sequence) -> Optional[int]:
        for i, c in enumerate(self.cones):
            if c.contains_in_relint(v):
                return i
        return None

    def face_indices(self, i: int) -> tuple[int, ...]:
        """Indices of all faces of cone ``i`` (including itself)."""
        idx = self._index()
        return tuple(idx[f.key()] for f in all_faces(self.cones[i]) if f.key() in idx)

    def __repr__(self) -> str:
        return f"Fan(rank {self.ambient_rank}, {len(self.cones)} cones)"


def fan_from_cones(cones: Iterable[Cone], ambient_rank: Optional[int] = None) -> Fan:
    """Build a fan from (typically maximal) cones, completing all faces."""
    cones = list(cones)
    if ambient_rank is None:
        if not cones:
            raise ValueError("ambient_rank required for the empty fan")
        ambient_rank = cones[0].ambient_rank
    seen: dict = {}
    for c in cones:
        if c.ambient_rank != ambient_rank:
            raise ValueError("mixed ambient ranks")
        for f in all_faces(c):
            seen[f.key()] = f
    if not seen:
        z = zero_cone(ambient_rank)
        seen[z.key()] = z
    ordered = tuple(sorted(seen.values(), key=_cone_sort_key))
    return Fan(ambient_rank, ordered)


@dataclass(frozen=True)
class FanValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate_fan(f: Fan) -> FanValidationReport:
    """Check strict convexity, face closure and pairwise face intersections."""
    problems = []
    index = {c.key(): i for i, c in enumerate(f.cones)}
    for i, c in enumerate(f.cones):
        if not c.is_strictly_convex:
            problems.append(f"cone {i} contains a line")
        for face in all_faces(c):
            if face.key() not in index:
                problems.append(f"cone {i} has a face missing from the fan")
                break
    n = len(f.cones)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = f.cones[i], f.cones[j]
            inter = intersect_cones(a, b)
            if not (is_face_of(inter, a) and is_face_of(inter, b)):
                problems.append(f"intersection of cones {i} and {j} is not a common face")
    return FanValidationReport(not problems, tuple(problems))


def is_complete(f: Fan) -> bool:
    """Exact completeness test: support equals the whole space.

    A valid fan is complete iff it has a full-dimensional cone and every
    cone of codimension one is a facet of exactly two full-dimensional
    cones (no boundary facets).
    """
    n = f.ambient_rank
    if n == 0:
        return len(f.cones) >= 1
    top = [c for c in f.cones if c.dim == n]
    if not top:
        return False
    ridge_count: dict = {}
    for c in top:
        for facet in facets(c):
            ridge_count[facet.key()] = ridge_count.get(facet.key(), 0) + 1
    if any(v != 2 for v in ridge_count.values()):
        return False
    # every codimension-one cone of the fan must appear among those facets
    for c in f.cones:
        if c.dim == n - 1 and c.key() not in ridge_count:
            return False
    return True


@dataclass(frozen=True)
class FanMorphism:
    lattice_map: Mat
    source: Fan
    target: Fan
    cone_assignment: tuple[int, ...]


def check_fan_morphism(matrix_or_map, src: Fan, dst: Fan) -> FanMorphism:
    """Verify a lattice map sends every source cone into a target cone.

    Assigns to each source cone the minimal target cone containing its
    image; raises :class:`NoTargetCone` naming the first failure.
    """
    matrix = getattr(matrix_or_map, "matrix", matrix_or_map)
    assignment = []
    for i, c in enumerate(src.cones):
        img = image_cone(matrix, c)
        candidates = [j for j, t in enumerate(dst.cones) if t.contains_cone(img)]
        if not candidates:
            raise NoTargetCone(f"image of source cone {i} lies in no target cone")
        minimal = min(candidates, key=lambda j: dst.cones[j].dim)
        for j in candidates:
            if not dst.cones[j].contains_cone(dst.cones[minimal]):
                raise NoTargetCone(
                    f"target cones containing the image of cone {i} have no minimum"
                )
        assignment.append(minimal)
    return FanMorphism(mat(matrix), src, dst, tuple(assignment))
