import io
import json
import os

import pytest

from chowfan.cli import parse_input, run
from chowfan.serialize import (
    DocumentError,
    decode_cone,
    decode_datum,
    decode_fan,
    decode_monoid,
    decode_sublattice,
    dumps,
    encode_cone,
    encode_datum,
    encode_fan,
    encode_monoid,
    encode_sublattice,
)
from chowfan.intlinalg import NotSaturated, sublattice
from chowfan.cones import cone_from_generators
from chowfan.monoids import affine_monoid, dual_monoid, monoid_from_cone
from chowfan.stacks import variety_datum

from conftest import p2_fan, p1p1_fan

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")
P2 = os.path.join(FIXTURES, "p2_horizontal.json")
P1P1 = os.path.join(FIXTURES, "p1p1_diagonal.json")
WEIGHTED = os.path.join(FIXTURES, "p2_weighted.json")


def _run(args):
    buf = io.StringIO()
    code = run(args, stdout=buf)
    return code, buf.getvalue()


class TestParseInput:
    def test_fixture_round_trip(self):
        fan, sub, _ = parse_input(open(P2).read())
        assert fan == p2_fan()
        assert sub == sublattice(2, [[1, 0]])

    def test_overlapping_cones_rejected(self):
        doc = {
            "lattice_rank": 2,
            "maximal_cones": [[[1, 0], [0, 1]], [[1, 1], [1, -1]]],
            "sublattice": [[1, 0]],
        }
        from chowfan.cli import ValidationError

        with pytest.raises(ValidationError):
            parse_input(json.dumps(doc))

    def test_saturation_flag(self):
        doc = {
            "lattice_rank": 2,
            "maximal_cones": [[[1, 0], [0, 1]], [[0, 1], [-1, -1]], [[-1, -1], [1, 0]]],
            "sublattice": [[2, 0]],
        }
        with pytest.raises(NotSaturated):
            parse_input(json.dumps(doc))
        _, sub, _ = parse_input(json.dumps(doc), allow_saturate=True)
        assert sub == sublattice(2, [[1, 0]])

    def test_syntax_error_located(self):
        with pytest.raises(DocumentError) as err:
            parse_input('{"lattice_rank": 2\n')
        assert "line" in str(err.value)

    def test_missing_field_named(self):
        with pytest.raises(DocumentError) as err:
            parse_input('{"lattice_rank": 2}')
        assert "maximal_cones" in str(err.value)


class TestCommands:
    def test_validate(self):
        code, out = _run(["validate", P2])
        assert code == 0
        doc = json.loads(out)
        assert doc["fan_ok"] and doc["complete"] and doc["cones"] == 7

    def test_quotient_is_line_fan(self):
        code, out = _run(["quotient", P2])
        assert code == 0
        doc = json.loads(out)
        rays = [c["rays"] for c in doc["quotient_fan"]["cones"]]
        assert rays == [[], [[-1]], [[1]]]

    def test_multiplicities(self):
        code, out = _run(["multiplicities", WEIGHTED])
        assert code == 0
        doc = json.loads(out)
        finite = dict(map(tuple, doc["finite"]))
        assert 2 in finite.values()

    def test_cycle_requires_cone(self):
        code, _ = _run(["cycle", P2])
        assert code == 1

    def test_cycle(self):
        code, out = _run(["cycle", P2, "--cone", "2"])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["terms"]) == 1 and doc["terms"][0][1] == 1

    def test_unknown_cone_index(self):
        code, _ = _run(["cycle", P2, "--cone", "99"])
        assert code == 3

    def test_family(self):
        code, out = _run(["family", P2])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["datum"]["fan"]["maximal"]) == 4

    def test_fiber_document(self):
        code, out = _run(["fiber", P1P1, "--cone", "1"])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["components"]) == 2
        assert len(doc["internal_walls"]) == 1
        assert doc["tropical_cone"]["rays"] == [[1]]
        assert doc["graph_dot"].startswith("graph fiber {")

    def test_fiber_graph_out(self, tmp_path):
        target = tmp_path / "graph.dot"
        code, _ = _run(["fiber", P1P1, "--cone", "1", "--graph-out", str(target)])
        assert code == 0
        assert target.read_text().startswith("graph fiber {")

    def test_check_passes(self):
        code, out = _run(["check", P2, "--bound", "5"])
        assert code == 0
        doc = json.loads(out)
        assert doc["all_passed"]
        names = {c["name"].split("[")[0] for c in doc["checks"]}
        assert names == {"reduced", "equidimensional", "integral", "basic_monoid"}

    def test_check_subset_flags(self):
        code, out = _run(["check", P2, "--reduced", "--equidim"])
        assert code == 0
        doc = json.loads(out)
        assert {c["name"] for c in doc["checks"]} == {"reduced", "equidimensional"}

    def test_all_document(self):
        code, out = _run(["all", P1P1, "--bound", "4"])
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "full_report"
        assert doc["all_passed"]
        assert len(doc["fibers"]) == 3

    def test_output_file(self, tmp_path):
        target = tmp_path / "out.json"
        code, out = _run(["validate", P2, "--output", str(target)])
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["fan_ok"]


class TestExitCodes:
    def test_usage(self):
        code, _ = _run(["frobnicate", P2])
        assert code == 1

    def test_missing_file_is_usage(self):
        code, _ = _run(["validate", "/nonexistent/input.json"])
        assert code == 1

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"lattice_rank": 2')
        code, _ = _run(["validate", str(bad)])
        assert code == 2

    def test_validation_error(self, tmp_path):
        doc = {
            "lattice_rank": 2,
            "maximal_cones": [[[1, 0], [0, 1]], [[0, 1], [-1, -1]], [[-1, -1], [1, 0]]],
            "sublattice": [[2, 0]],
        }
        path = tmp_path / "ns.json"
        path.write_text(json.dumps(doc))
        code, _ = _run(["quotient", str(path)])
        assert code == 3
        code, _ = _run(["quotient", str(path), "--saturate"])
        assert code == 0

    def test_incomplete_fan_is_validation_error(self, tmp_path):
        doc = {
            "lattice_rank": 2,
            "maximal_cones": [[[1, 0], [0, 1]]],
            "sublattice": [[1, 0]],
        }
        path = tmp_path / "half.json"
        path.write_text(json.dumps(doc))
        code, _ = _run(["quotient", str(path)])
        assert code == 3


class TestDeterminism:
    def test_identical_bytes(self):
        _, a = _run(["all", P2, "--bound", "4"])
        _, b = _run(["all", P2, "--bound", "4"])
        assert a == b

    def test_json_round_trip(self):
        _, out = _run(["quotient", P1P1])
        doc = json.loads(out)
        assert json.loads(dumps(doc)) == doc


class TestSerializeRoundTrips:
    def test_sublattice(self):
        s = sublattice(3, [[2, 0, 1], [0, 1, 1]])
        assert decode_sublattice(encode_sublattice(s)) == s

    def test_cone(self):
        c = cone_from_generators([(1, 0), (1, 2)])
        assert decode_cone(encode_cone(c)) == c

    def test_fan(self):
        f = p1p1_fan()
        assert decode_fan(encode_fan(f)) == f

    def test_monoid_pointed(self):
        m = monoid_from_cone(cone_from_generators([(1, 0), (1, 2)]))
        assert decode_monoid(encode_monoid(m)) == m
        g = affine_monoid(1, [(2,), (3,)])
        assert decode_monoid(encode_monoid(g)) == g

    def test_monoid_with_units(self):
        d = dual_monoid(monoid_from_cone(cone_from_generators([(1, 0)], ambient_rank=2)))
        assert d.units.rank == 1
        assert decode_monoid(encode_monoid(d)) == d

    def test_datum(self):
        d = variety_datum(p2_fan())
        assert decode_datum(encode_datum(d)) == d
