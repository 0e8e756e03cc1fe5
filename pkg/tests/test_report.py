"""Report assembly, exact number encoding, and the three output formats."""

import json
from fractions import Fraction

import pytest

from wordbalance.report import (
    FORMATS,
    SCHEMA_VERSION,
    build_report,
    from_csv,
    from_json,
    parse_rational,
    rational_str,
    render_report,
    to_csv,
    to_json,
    to_text,
)


class TestRationalEncoding:
    def test_integral_values_stay_ints(self):
        assert rational_str(7) == 7
        assert rational_str(-3) == -3
        assert rational_str(Fraction(6, 3)) == 2

    def test_proper_fractions_become_strings(self):
        assert rational_str(Fraction(1, 2)) == "1/2"
        assert rational_str(Fraction(-5, 4)) == "-5/4"

    def test_booleans_rejected(self):
        with pytest.raises(TypeError):
            rational_str(True)
        with pytest.raises(TypeError):
            parse_rational(False)

    def test_parse(self):
        assert parse_rational(7) == Fraction(7)
        assert parse_rational("1/2") == Fraction(1, 2)
        assert parse_rational("-5/4") == Fraction(-5, 4)
        assert parse_rational("3") == Fraction(3)
        with pytest.raises(TypeError):
            parse_rational(0.5)

    def test_round_trip(self):
        for f in (Fraction(0), Fraction(22, 7), Fraction(-9, 8), Fraction(4)):
            assert parse_rational(rational_str(f)) == f


class TestBuildReport:
    def test_top_level_keys(self):
        rep = build_report("analyze", {"n": 1}, {"ok": True})
        assert set(rep) == {"schema_version", "command", "config", "results", "checks"}
        assert rep["schema_version"] == SCHEMA_VERSION == 1
        assert rep["checks"] == []

    def test_checks_pass_through(self):
        checks = [{"check_id": "x", "passed": True, "details": None}]
        rep = build_report("verify", {}, {}, checks=checks)
        assert rep["checks"] == checks

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            build_report("analyze", {}, {"value": 0.5})

    def test_non_string_keys_rejected(self):
        with pytest.raises(TypeError):
            build_report("analyze", {}, {1: "x"})

    def test_unsupported_values_rejected(self):
        with pytest.raises(TypeError):
            build_report("analyze", {}, {"value": Fraction(1, 2)})
        with pytest.raises(TypeError):
            build_report("analyze", {}, {"value": {1, 2}})


SAMPLE = {
    "schema_version": 1,
    "command": "analyze",
    "config": {"directive": "|M", "max_length": 40, "flag": None},
    "results": {
        "curve": [[1, 1], [2, 2]],
        "frequency": {"0": "1/2", "1": "1/2"},
        "empty_map": {},
        "empty_list": [],
        "growing": True,
    },
    "checks": [],
}


class TestJsonFormat:
    def test_deterministic_and_terminated(self):
        a, b = to_json(SAMPLE), to_json(SAMPLE)
        assert a == b
        assert a.endswith("\n")
        assert from_json(a) == SAMPLE

    def test_keys_sorted(self):
        text = to_json({"b": 1, "a": 2, "command": "x"})
        assert text.index('"a"') < text.index('"b"')


class TestCsvFormat:
    def test_round_trip(self):
        assert from_csv(to_csv(SAMPLE)) == SAMPLE

    def test_header_and_paths(self):
        import csv
        import io

        rows = list(csv.reader(io.StringIO(to_csv(SAMPLE))))
        assert rows[0] == ["path", "value"]
        paths = {tuple(json.loads(path)) for path, _ in rows[1:]}
        assert ("results", "curve", 0, 0) in paths
        assert ("results", "empty_map", "{}") in paths

    def test_same_numbers_as_json(self):
        parsed = from_csv(to_csv(SAMPLE))
        assert parsed["results"]["frequency"]["0"] == "1/2"
        assert parsed["results"]["curve"] == [[1, 1], [2, 2]]
        assert parsed["results"]["empty_map"] == {}
        assert parsed["results"]["empty_list"] == []
        assert parsed["config"]["flag"] is None
        assert parsed["results"]["growing"] is True

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError):
            from_csv("key,val\n")
        with pytest.raises(ValueError):
            from_csv("")


class TestTextFormat:
    def test_renders_scalars(self):
        text = to_text(SAMPLE)
        assert "directive: |M" in text
        assert "flag: null" in text
        assert "growing: true" in text
        assert "(empty)" in text
        assert text.endswith("\n")


class TestRenderDispatch:
    def test_formats_cover_constant(self):
        for fmt in FORMATS:
            assert isinstance(render_report(SAMPLE, fmt), str)
        assert FORMATS == ("json", "csv", "text")

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render_report(SAMPLE, "yaml")
