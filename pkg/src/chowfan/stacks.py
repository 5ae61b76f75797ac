"""Toric stack data: a fan with a compatible submonoid attached to each cone.

A datum is valid when every monoid sits inside its cone's lattice points,
restricting a monoid to a face gives exactly the face's monoid, and the
monoids of maximal cones generate finite-index subgroups.  Morphisms are
lattice maps compatible with both the fans and the monoids.  Validation
reports list every violation instead of stopping at the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cones import Fan, FanMorphism, all_faces, check_fan_morphism
from .intlinalg import (
    Mat,
    elementary_divisors,
    mat,
    mat_vec,
)
from .monoids import AffineMonoid, member, monoid_from_cone, restrict_to_face


class NotMaximalCone(ValueError):
    """Raised when an operation needs a maximal cone of the fan."""


class MonoidNotMapped(ValueError):
    """A lattice map fails to carry some cone's monoid into its target."""


class InternalConsistencyError(RuntimeError):
    """A structural property the theory guarantees failed to hold.

    Reaching this error on valid input is a bug signal, not a user error.
    """


@dataclass(frozen=True)
class ToricStackDatum:
    """A fan together with one affine monoid per cone (aligned by index)."""

    lattice_rank: int
    fan: Fan
    monoids: tuple[AffineMonoid, ...]

    def monoid_at(self, cone_index: int) -> AffineMonoid:
        return self.monoids[cone_index]

    def __post_init__(self):
        if len(self.monoids) != len(self.fan.cones):
            raise ValueError("one monoid per fan cone required")

    def __repr__(self) -> str:
        return f"ToricStackDatum(rank {self.lattice_rank}, {len(self.fan.cones)} cones)"


def variety_datum(fan: Fan) -> ToricStackDatum:
    """The datum with the full monoid of lattice points on every cone."""
    monoids = tuple(monoid_from_cone(c) for c in fan.cones)
    return ToricStackDatum(fan.ambient_rank, fan, monoids)


@dataclass(frozen=True)
class StackValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate_stack_datum(d: ToricStackDatum) -> StackValidationReport:
    """Check containment, face compatibility and finite index on maximal cones."""
    problems = []
    fan = d.fan
    for i, (c, m) in enumerate(zip(fan.cones, d.monoids)):
        if m.ambient_rank != d.lattice_rank:
            problems.append(f"monoid {i} lives in the wrong lattice")
            continue
        for g in m.generators():
            if not c.contains(g):
                problems.append(f"monoid {i} has generator {g} outside its cone")
                break
        for face in all_faces(c):
            j = fan._index().get(face.key())
            if j is None:
                continue  # reported by fan validation
            expected = d.monoids[j]
            if restrict_to_face(m, face) != expected:
                problems.append(
                    f"face compatibility fails between cones {i} and {j}"
                )
    for i in fan.maximal_indices():
        c = fan.cones[i]
        if c.dim != d.lattice_rank:
            problems.append(f"maximal cone {i} is not full-dimensional")
            continue
        if d.monoids[i].group.rank != d.lattice_rank:
            problems.append(
                f"monoid of maximal cone {i} does not have finite index in the lattice"
            )
    return StackValidationReport(not problems, tuple(problems))


@dataclass(frozen=True)
class StackMorphism:
    """A lattice map with verified fan- and monoid-level compatibility."""

    lattice_map: Mat
    source: ToricStackDatum
    target: ToricStackDatum
    fan_morphism: FanMorphism

    @property
    def cone_assignment(self) -> tuple[int, ...]:
        return self.fan_morphism.cone_assignment

    def apply(self, v: Sequence[int]):
        return mat_vec(self.lattice_map, v)


def validate_stack_morphism(
    matrix: Sequence[Sequence[int]], src: ToricStackDatum, dst: ToricStackDatum
) -> StackMorphism:
    """Check a lattice map defines a morphism of stack data.

    Raises :class:`~chowfan.cones.NoTargetCone` when some cone has no image
    cone and :class:`MonoidNotMapped` naming the failing generator when a
    monoid escapes its target.
    """
    mtx = mat(matrix)
    fm = check_fan_morphism(mtx, src.fan, dst.fan)
    for i, m in enumerate(src.monoids):
        target = dst.monoids[fm.cone_assignment[i]]
        for g in m.generators():
            if not member(target, mat_vec(mtx, g)):
                raise MonoidNotMapped(
                    f"generator {g} of the monoid at cone {i} does not map into "
                    f"the monoid at target cone {fm.cone_assignment[i]}"
                )
    return StackMorphism(mtx, src, dst, fm)


def stabilizer_invariants(d: ToricStackDatum, cone_index: int) -> tuple[int, ...]:
    """Elementary divisors of lattice / monoid-group at a maximal cone.

    All ones means the point is scheme-like (trivial stabilizer).
    """
    if cone_index not in d.fan.maximal_indices():
        raise NotMaximalCone(f"cone {cone_index} is not maximal")
    basis = d.monoids[cone_index].group.basis
    if len(basis) < d.lattice_rank:
        raise InternalConsistencyError(
            "monoid group of a maximal cone must have full rank"
        )
    return elementary_divisors(basis)


def data_equal_after_canonicalization(a: ToricStackDatum, b: ToricStackDatum) -> bool:
    """Structural equality of canonicalized data.

    Two data over the same lattice admitting morphisms in both directions
    are necessarily equal, so this equality test is the executable form of
    that rigidity statement.
    """
    if a.lattice_rank != b.lattice_rank:
        raise ValueError("data live over different lattice ranks")
    return a.fan == b.fan and a.monoids == b.monoids
