"""Scenario construction, JSON (de)serialization and report rendering."""

import json

import pytest

from kirwan.lattice import NotClosed
from kirwan.report import CHECKS, emit_report, run_pipeline
from kirwan.scenario import (
    NotInvariant,
    ParseError,
    Scenario,
    dump_scenario,
    enriques_scenario,
    load_scenario,
    scenario_from_dict,
    scenario_to_dict,
)
from kirwan.series import Polynomial

from conftest import P, V, scenario2


class TestBuiltinScenario:
    def test_thirteen_weights(self, enriques):
        assert enriques.total_multiplicity == 13
        assert enriques.projective_dimension == 12
        assert enriques.zero_multiplicity == 1

    def test_labels(self, enriques):
        by_label = {e.label: e.vector for e in enriques.diagram}
        assert by_label["x0^4 x1^0 y0^0 y1^4"] == V(4, -4)
        assert by_label["x0^2 x1^2 y0^2 y1^2"] == V(0, 0)
        assert by_label["x0^4 x1^0 y0^4 y1^0"] == V(4, 4)

    def test_weight_support(self, enriques):
        vs = set(enriques.vector_multiplicities())
        assert vs == {V(4 - 2 * i, 4 - 2 * j)
                      for i in range(5) for j in range(5) if (i + j) % 2 == 0}

    def test_group(self, enriques):
        assert enriques.group.torus_rank == 2
        assert enriques.group.finite_order == 8

    def test_override(self, enriques):
        ov, = enriques.overrides
        assert (ov.subtorus_rank, ov.direction) == (1, (0, 1))
        assert ov.polynomial == P({0: 1, 2: 1})


class TestRoundTrip:
    def test_enriques(self, enriques):
        assert load_scenario(dump_scenario(enriques)) == enriques

    def test_fractional_weights(self):
        s = scenario2([(("1/2", 0), 2), (("-1/2", 0), 2), ((0, 0), 1)],
                      generators=[((-1, 0), (0, 1))])
        assert load_scenario(dump_scenario(s)) == s

    def test_rank1(self):
        text = json.dumps({
            "torus_rank": 1,
            "weights": [{"vector": [-1]}, {"vector": [0]}, {"vector": [1]}],
        })
        s = load_scenario(text)
        assert s.group.torus_rank == 1
        assert s.total_multiplicity == 3
        assert load_scenario(dump_scenario(s)) == s

    def test_rational_strings(self):
        text = json.dumps({
            "torus_rank": 1,
            "weights": [{"vector": ["1/2"]}, {"vector": ["-1/2"]}],
        })
        s = load_scenario(text)
        assert sorted(s.vector_multiplicities()) == [V("-1/2"), V("1/2")]
        assert load_scenario(dump_scenario(s)) == s

    def test_dict_schema(self, enriques):
        data = scenario_to_dict(enriques)
        assert data["torus_rank"] == 2
        assert len(data["weights"]) == 13
        assert data["overrides"] == [{"subtorus_rank": 1, "direction": [0, 1],
                                      "polynomial": [1, 0, 1]}]
        assert scenario_from_dict(data) == enriques


class TestParseErrors:
    def test_invalid_json(self):
        with pytest.raises(ParseError):
            load_scenario("{not json")

    def test_missing_rank(self):
        with pytest.raises(ParseError):
            scenario_from_dict({"weights": [{"vector": [1]}]})

    def test_bad_rank(self):
        with pytest.raises(ParseError):
            scenario_from_dict({"torus_rank": 3, "weights": [{"vector": [1, 1, 1]}]})

    def test_empty_weights(self):
        with pytest.raises(ParseError):
            scenario_from_dict({"torus_rank": 1, "weights": []})

    def test_bad_rational(self):
        with pytest.raises(ParseError):
            scenario_from_dict({"torus_rank": 1, "weights": [{"vector": ["x"]}]})

    def test_zero_multiplicity(self):
        with pytest.raises(ParseError):
            scenario_from_dict({"torus_rank": 1,
                                "weights": [{"vector": [1], "multiplicity": 0}]})

    def test_rank_mismatch_in_weight(self):
        with pytest.raises(ParseError):
            scenario_from_dict({"torus_rank": 2, "weights": [{"vector": [1]}]})

    def test_bad_override(self):
        with pytest.raises(ParseError):
            scenario_from_dict({"torus_rank": 1, "weights": [{"vector": [1]}],
                                "overrides": [{"subtorus_rank": 1}]})

    def test_infinite_generator(self):
        with pytest.raises(NotClosed):
            scenario_from_dict({"torus_rank": 2,
                                "weights": [{"vector": [0, 0]}],
                                "finite_generators": [[[1, 1], [0, 1]]]})

    def test_non_invariant_group(self):
        with pytest.raises(NotInvariant):
            scenario_from_dict({"torus_rank": 2,
                                "weights": [{"vector": [1, 0]},
                                            {"vector": [-1, 0]}],
                                "finite_generators": [[[0, 1], [1, 0]]]})


class TestCanonicalKey:
    def test_ignores_labels_and_order(self, enriques):
        reordered = Scenario(tuple(reversed([
            type(e)(e.vector, e.multiplicity, "") for e in enriques.diagram])),
            enriques.group)
        assert reordered.canonical_key() == enriques.canonical_key()

    def test_distinguishes_multiplicity(self):
        a = scenario2([((1, 0), 1), ((-1, 0), 1)])
        b = scenario2([((1, 0), 2), ((-1, 0), 2)])
        assert a.canonical_key() != b.canonical_key()


@pytest.fixture(scope="module")
def result(enriques):
    return run_pipeline(enriques)


class TestReports:
    def test_checks_pass(self, result):
        for name, fn in CHECKS.items():
            ok, msg = fn(result)
            assert ok, (name, msg)

    def test_table_contents(self, result):
        text = emit_report(result, "table", mod_t=11)
        assert "1 + 4t^2 + 8t^4 + 13t^6 + 18t^8 + 20t^10" in text
        assert "intersection series 1 + t^2 + 2t^4" in text
        assert "mod t^11" in text
        assert "(override)" in text
        assert "Betti table (even degrees)" in text

    def test_byte_stability(self, result, enriques):
        again = run_pipeline(enriques)
        for fmt in ("table", "json", "csv"):
            assert emit_report(result, fmt, mod_t=11) == \
                emit_report(again, fmt, mod_t=11)

    def test_json_payload(self, result):
        data = json.loads(emit_report(result, "json", mod_t=11))
        assert data["blowup"] == [1, 0, 4, 0, 8, 0, 13, 0, 18, 0, 20, 0,
                                  18, 0, 13, 0, 8, 0, 4, 0, 1]
        assert data["intersection"] == [1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 3, 0,
                                        3, 0, 2, 0, 2, 0, 1, 0, 1]
        assert data["semistable_mod_t"]["coefficients"] == \
            [1, 0, 1, 0, 2, 0, 2, 0, 4, 0, 4]
        assert len(data["strata"]) == 7
        assert len(data["loci"]) == 3

    def test_csv_rows(self, result):
        rows = emit_report(result, "csv", mod_t=None).splitlines()
        assert rows[0] == "series,degree,coefficient"
        assert "blowup,10,20" in rows
        assert "intersection,10,3" in rows

    def test_unknown_format_rejected(self, result):
        with pytest.raises(ValueError):
            emit_report(result, "yaml")
