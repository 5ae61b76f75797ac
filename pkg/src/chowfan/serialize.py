"""Deterministic document encoding for every object the CLI emits.

The document format is canonical JSON: sorted keys, two-space indent, a
single trailing newline, integers as plain decimal literals (Python ints
are unbounded, so no precision is ever lost).  Every document carries
``format_version`` and ``kind``.  The schema is documented in
``docs/format.md``; encode/decode pairs below round-trip exactly.
"""

from __future__ import annotations

import json
from typing import Any

from .cones import Cone, Fan, cone_from_generators, fan_from_cones
from .intlinalg import Sublattice, row_lattice_hnf, mat
from .monoids import AffineMonoid, affine_monoid
from .stacks import ToricStackDatum

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed or schema-violating document."""


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _vectors(rows) -> list[list[int]]:
    return [list(map(int, r)) for r in rows]


def _require(doc: dict, field: str):
    if field not in doc:
        raise DocumentError(f"missing field {field!r}")
    return doc[field]


# ---------------------------------------------------------------------------
# core types


def encode_sublattice(s: Sublattice) -> dict:
    return {"ambient_rank": s.ambient_rank, "basis": _vectors(s.basis)}


def decode_sublattice(doc: dict) -> Sublattice:
    rank = int(_require(doc, "ambient_rank"))
    basis = [tuple(map(int, r)) for r in _require(doc, "basis")]
    for r in basis:
        if len(r) != rank:
            raise DocumentError("sublattice basis vector of wrong length")
    return Sublattice(rank, row_lattice_hnf(basis))


def encode_cone(c: Cone) -> dict:
    return {
        "ambient_rank": c.ambient_rank,
        "rays": _vectors(c.generators),
        "lineality": _vectors(c.lineality),
    }


def decode_cone(doc: dict) -> Cone:
    rank = int(_require(doc, "ambient_rank"))
    return cone_from_generators(
        [tuple(map(int, r)) for r in _require(doc, "rays")],
        [tuple(map(int, r)) for r in doc.get("lineality", [])],
        ambient_rank=rank,
    )


def encode_fan(f: Fan) -> dict:
    return {
        "lattice_rank": f.ambient_rank,
        "cones": [
            {"rays": _vectors(c.generators), "lineality": _vectors(c.lineality)}
            for c in f.cones
        ],
        "maximal": list(f.maximal_indices()),
    }


def decode_fan(doc: dict) -> Fan:
    rank = int(_require(doc, "lattice_rank"))
    cones = []
    for cdoc in _require(doc, "cones"):
        cones.append(
            cone_from_generators(
                [tuple(map(int, r)) for r in _require(cdoc, "rays")],
                [tuple(map(int, r)) for r in cdoc.get("lineality", [])],
                ambient_rank=rank,
            )
        )
    return fan_from_cones(cones, ambient_rank=rank)


def encode_monoid(m: AffineMonoid) -> dict:
    return {
        "ambient_rank": m.ambient_rank,
        "hilbert_basis": _vectors(m.hilbert_basis),
        "units": _vectors(m.units.basis),
    }


def decode_monoid(doc: dict) -> AffineMonoid:
    rank = int(_require(doc, "ambient_rank"))
    basis = [tuple(map(int, r)) for r in _require(doc, "hilbert_basis")]
    units = [tuple(map(int, r)) for r in doc.get("units", [])]
    if not units:
        return affine_monoid(rank, basis)
    # a monoid with units is stored in saturated form: cone ∩ group
    from .cones import cone_from_generators as cfg
    from .intlinalg import Sublattice as SL

    gens = list(basis)
    cone = cfg(gens, units, ambient_rank=rank)
    group = SL(rank, row_lattice_hnf(gens + units))
    from .monoids import saturated_monoid

    return saturated_monoid(cone, group)


def encode_datum(d: ToricStackDatum) -> dict:
    return {
        "lattice_rank": d.lattice_rank,
        "fan": encode_fan(d.fan),
        "monoids": [encode_monoid(m) for m in d.monoids],
    }


def decode_datum(doc: dict) -> ToricStackDatum:
    fan = decode_fan(_require(doc, "fan"))
    monoids = tuple(decode_monoid(m) for m in _require(doc, "monoids"))
    return ToricStackDatum(int(_require(doc, "lattice_rank")), fan, monoids)


# ---------------------------------------------------------------------------
# composite documents


def _with_header(kind: str, payload: dict) -> dict:
    out = {"format_version": FORMAT_VERSION, "kind": kind}
    out.update(payload)
    return out


def encode_quotient_map(p) -> dict:
    return {
        "source_rank": p.source_rank,
        "target_rank": p.target_rank,
        "matrix": _vectors(p.matrix),
        "kernel": encode_sublattice(p.kernel),
        "section": _vectors(p.section),
    }


def encode_chow_document(cq) -> dict:
    cones = []
    for i, data in enumerate(cq.cone_data):
        cones.append(
            {
                "index": i,
                "meeting_set": sorted(data.meeting_set),
                "point_fiber_cones": list(data.point_fiber_cones),
                "cycle": [[s, m] for s, m in data.cycle],
                "monoid": encode_monoid(data.monoid),
                "lift_lattice": encode_sublattice(data.lift_lattice),
                "raw_monoid_inside_cone": data.raw_monoid_inside_cone,
            }
        )
    return _with_header(
        "chow_quotient",
        {
            "input_fan": encode_fan(cq.fan),
            "sublattice": encode_sublattice(cq.sub),
            "projection": encode_quotient_map(cq.projection),
            "quotient_fan": encode_fan(cq.quotient_fan),
            "cones": cones,
        },
    )


def encode_morphism(m) -> dict:
    return {
        "lattice_map": _vectors(m.lattice_map),
        "cone_assignment": list(m.cone_assignment),
    }


def encode_family_document(fam) -> dict:
    return _with_header(
        "family",
        {
            "datum": encode_datum(fam.datum),
            "provenance": [[h, b] for h, b in fam.provenance],
            "to_base": encode_morphism(fam.to_base),
            "to_target": encode_morphism(fam.to_target),
            "base_datum": encode_datum(fam.base),
            "variety_datum": encode_datum(fam.variety),
        },
    )


def encode_wall(w) -> dict:
    return {
        "cone": w.index,
        "kind": w.kind,
        "iso_faces": list(w.iso_faces),
        "direction": list(w.direction),
    }


def encode_fiber_document(fam, fc, pres, tropical, dot: str) -> dict:
    from .family import segment_length

    q_basis = fam.chow.cone_data[fc.base_index].monoid.hilbert_basis
    internal = []
    for w in fc.internal_walls:
        doc = encode_wall(w)
        doc["gluing_on_basis"] = [
            [list(v), segment_length(fam, fc.base_index, w.index, v)] for v in q_basis
        ]
        internal.append(doc)
    return _with_header(
        "fiber",
        {
            "base_cone": fc.base_index,
            "components": list(fc.components),
            "component_hosts": list(fc.component_hosts),
            "boundary_walls": [encode_wall(w) for w in fc.boundary_walls],
            "internal_walls": internal,
            "higher": [[k, list(v)] for k, v in fc.higher],
            "adjacency": [list(e) for e in fc.adjacency],
            "basic_monoid": {
                "component_cones": list(pres.component_cones),
                "wall_relations": [
                    {"first": i, "second": j, "direction": list(u), "wall": w}
                    for i, j, u, w in pres.wall_relations
                ],
                "monoid": encode_monoid(pres.monoid),
                "block_rank": pres.block_rank,
                "host_collisions": [list(c) for c in pres.host_collisions],
            },
            "tropical_cone": encode_cone(tropical),
            "graph_dot": dot,
        },
    )


def encode_check_report(rep) -> dict:
    return {
        "name": rep.name,
        "verdict": rep.verdict,
        "witnesses": [_jsonable(w) for w in rep.witnesses],
        "parameters": {k: _jsonable(v) for k, v in rep.parameters},
    }


def decode_check_report(doc: dict):
    from .verify import CheckReport

    return CheckReport(
        str(_require(doc, "name")),
        str(_require(doc, "verdict")),
        tuple(_tupleize(w) for w in doc.get("witnesses", [])),
        tuple(sorted((k, _tupleize(v)) for k, v in doc.get("parameters", {}).items())),
    )


def _jsonable(x: Any):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (dict,)):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


def _tupleize(x: Any):
    if isinstance(x, list):
        return tuple(_tupleize(y) for y in x)
    return x
