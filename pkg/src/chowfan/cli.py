"""Command line interface.

Input documents describe a complete fan and a sublattice; subcommands
compute and print deterministic JSON documents.  Exit codes: 0 success,
1 usage, 2 parse error, 3 validation error, 4 internal consistency
(a structural property the theory guarantees failed, which is a bug
signal rather than a user error).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .chow import ChowQuotient, chow_quotient, multiplicity, InfiniteIndex
from .cones import (
    Fan,
    NoTargetCone,
    NotComplete,
    cone_from_generators,
    fan_from_cones,
    is_complete,
    validate_fan,
)
from .family import (
    UniversalFamily,
    adjacency_dot,
    basic_monoid,
    fiber_complex,
    tropical_moduli_cone,
    universal_family,
)
from .intlinalg import NotASublattice, NotSaturated, Sublattice, saturate, sublattice
from .monoids import NotAFace, UnsupportedMonoid
from .serialize import (
    DocumentError,
    dumps,
    encode_check_report,
    encode_chow_document,
    encode_family_document,
    encode_fiber_document,
    encode_sublattice,
    FORMAT_VERSION,
)
from .stacks import InternalConsistencyError, MonoidNotMapped, NotMaximalCone
from .verify import (
    check_basic_monoid,
    check_equidimensional,
    check_family_integral,
    check_reduced,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4


class UsageError(Exception):
    pass


class ValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we want exit 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="chowfan", description=__doc__)
    p.add_argument("command", choices=[
        "validate", "quotient", "multiplicities", "cycle", "family", "fiber",
        "check", "all",
    ])
    p.add_argument("input", help="input document path, or - for stdin")
    p.add_argument("--saturate", action="store_true",
                   help="replace the sublattice by its saturation instead of failing")
    p.add_argument("--cone", type=int, default=None,
                   help="quotient cone index for cycle/fiber")
    p.add_argument("--bound", type=int, default=8,
                   help="degree bound for the integrality check")
    p.add_argument("--integral", action="store_true")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--equidim", action="store_true")
    p.add_argument("--basic", action="store_true")
    p.add_argument("--output", default=None, help="write the document here instead of stdout")
    p.add_argument("--graph-out", default=None,
                   help="also write the fiber graph in DOT format to this path")
    return p


# ---------------------------------------------------------------------------
# input parsing


def parse_input(text: str, allow_saturate: bool = False):
    """Parse an input document into (fan, sublattice, options).

    The fan is completed with faces and validated; the sublattice is
    canonicalized and must be saturated unless ``allow_saturate``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise DocumentError("input document must be a JSON object")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version}")
    try:
        rank = int(doc["lattice_rank"])
    except KeyError:
        raise DocumentError("missing field 'lattice_rank'") from None
    raw_cones = doc.get("maximal_cones")
    if raw_cones is None:
        raise DocumentError("missing field 'maximal_cones'")
    cones = []
    for pos, gens in enumerate(raw_cones):
        try:
            cones.append(
                cone_from_generators(
                    [tuple(map(int, g)) for g in gens], ambient_rank=rank
                )
            )
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"maximal_cones[{pos}]: {exc}") from exc
    fan = fan_from_cones(cones, ambient_rank=rank)
    rep = validate_fan(fan)
    if not rep.ok:
        raise ValidationError("invalid fan: " + "; ".join(rep.violations))
    raw_sub = doc.get("sublattice")
    if raw_sub is None:
        raise DocumentError("missing field 'sublattice'")
    try:
        sub = sublattice(rank, [tuple(map(int, g)) for g in raw_sub])
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"sublattice: {exc}") from exc
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise DocumentError("'options' must be an object")
    saturate_flag = allow_saturate or bool(options.get("saturate", False))
    saturated = saturate(sub)
    if saturated != sub:
        if not saturate_flag:
            raise NotSaturated(
                "the sublattice is not saturated; pass --saturate to replace it "
                "by its saturation"
            )
        sub = saturated
    return fan, sub, options


# ---------------------------------------------------------------------------
# commands


def _cmd_validate(fan: Fan, sub: Sublattice) -> dict:
    rep = validate_fan(fan)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "validation",
        "fan_ok": rep.ok,
        "violations": list(rep.violations),
        "complete": is_complete(fan),
        "sublattice": encode_sublattice(sub),
        "cones": len(fan.cones),
        "maximal_cones": len(fan.maximal_indices()),
    }


def _cmd_multiplicities(fan: Fan, sub: Sublattice) -> dict:
    finite = []
    infinite = []
    for i in range(len(fan.cones)):
        try:
            finite.append([i, multiplicity(fan, sub, i)])
        except InfiniteIndex:
            infinite.append(i)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "multiplicities",
        "finite": finite,
        "infinite": infinite,
    }


def _cmd_cycle(cq: ChowQuotient, cone_index: int) -> dict:
    if not 0 <= cone_index < len(cq.quotient_fan.cones):
        raise ValidationError(f"unknown quotient cone index {cone_index}")
    return {
        "format_version": FORMAT_VERSION,
        "kind": "cycle",
        "cone": cone_index,
        "terms": [[s, m] for s, m in cq.cone_data[cone_index].cycle],
    }


def _cmd_fiber(fam: UniversalFamily, cone_index: int, graph_out: Optional[str]) -> dict:
    if not 0 <= cone_index < len(fam.base.fan.cones):
        raise ValidationError(f"unknown quotient cone index {cone_index}")
    fc = fiber_complex(fam, cone_index)
    pres = basic_monoid(fam, cone_index)
    tropical = tropical_moduli_cone(fam, cone_index)
    dot = adjacency_dot(fam, fc)
    if graph_out:
        with open(graph_out, "w") as fh:
            fh.write(dot)
    from .serialize import encode_fiber_document

    return encode_fiber_document(fam, fc, pres, tropical, dot)


def _checks(fam: UniversalFamily, args) -> list:
    selected = [args.integral, args.reduced, args.equidim, args.basic]
    run_all = not any(selected)
    reports = []
    if run_all or args.reduced:
        reports.append(check_reduced(fam))
    if run_all or args.equidim:
        reports.append(check_equidimensional(fam))
    if run_all or args.integral:
        reports.extend(check_family_integral(fam, args.bound))
    if run_all or args.basic:
        for k in range(len(fam.base.fan.cones)):
            rep = check_basic_monoid(fam, k)
            reports.append(
                rep.__class__(
                    f"basic_monoid[cone {k}]", rep.verdict, rep.witnesses, rep.parameters
                )
            )
    return reports


def _cmd_check(fam: UniversalFamily, args) -> dict:
    reports = _checks(fam, args)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "report",
        "checks": [encode_check_report(r) for r in reports],
        "all_passed": all(r.passed for r in reports),
    }


def _cmd_all(fan: Fan, sub: Sublattice, cq: ChowQuotient, fam: UniversalFamily, args) -> dict:
    fibers = []
    for k in range(len(fam.base.fan.cones)):
        fc = fiber_complex(fam, k)
        pres = basic_monoid(fam, k)
        tropical = tropical_moduli_cone(fam, k)
        fibers.append(encode_fiber_document(fam, fc, pres, tropical, adjacency_dot(fam, fc)))
    reports = _checks(fam, args)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "full_report",
        "validation": _cmd_validate(fan, sub),
        "chow_quotient": encode_chow_document(cq),
        "multiplicities": _cmd_multiplicities(fan, sub),
        "family": encode_family_document(fam),
        "fibers": fibers,
        "checks": [encode_check_report(r) for r in reports],
        "all_passed": all(r.passed for r in reports),
    }


def run(argv: Optional[Sequence[str]] = None, stdout=None):
    """Dispatch a CLI invocation; returns the process exit code."""
    out = stdout if stdout is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.input) as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(str(exc)) from exc
        fan, sub, _options = parse_input(text, allow_saturate=args.saturate)
        command = args.command
        if command == "validate":
            doc = _cmd_validate(fan, sub)
        elif command == "multiplicities":
            doc = _cmd_multiplicities(fan, sub)
        else:
            cq = chow_quotient(fan, sub)
            if command == "quotient":
                doc = encode_chow_document(cq)
            elif command == "cycle":
                if args.cone is None:
                    raise UsageError("cycle requires --cone")
                doc = _cmd_cycle(cq, args.cone)
            else:
                fam = universal_family(cq)
                if command == "family":
                    doc = encode_family_document(fam)
                elif command == "fiber":
                    if args.cone is None:
                        raise UsageError("fiber requires --cone")
                    doc = _cmd_fiber(fam, args.cone, args.graph_out)
                elif command == "check":
                    doc = _cmd_check(fam, args)
                else:
                    doc = _cmd_all(fan, sub, cq, fam, args)
        payload = dumps(doc)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(payload)
        else:
            out.write(payload)
        if doc.get("kind") in ("report", "full_report") and not doc.get("all_passed", True):
            return EXIT_INTERNAL
        if doc.get("kind") == "validation" and not (doc["fan_ok"] and doc["complete"]):
            return EXIT_VALIDATION
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DocumentError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (
        ValidationError,
        NotSaturated,
        NotASublattice,
        NotComplete,
        NoTargetCone,
        MonoidNotMapped,
        NotMaximalCone,
        NotAFace,
        UnsupportedMonoid,
        InfiniteIndex,
    ) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InternalConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
