"""The self-verification suite: check ids, filtering, and a full green run."""

import json
import re

import pytest

from wordbalance.verification import check_ids, run_checks


class TestSuiteMetadata:
    def test_ids_unique_and_slug_like(self):
        ids = check_ids()
        assert len(ids) == len(set(ids))
        assert all(re.fullmatch(r"[a-z0-9]+(-[a-z0-9]+)*", i) for i in ids)
        assert len(ids) >= 20

    def test_filter_miss_raises(self):
        with pytest.raises(ValueError):
            run_checks(only="zzz-no-such-check")

    def test_single_filter(self):
        results = run_checks(only="report-round-trip")
        assert [r.check_id for r in results] == ["report-round-trip"]
        assert results[0].passed


class TestFullSuite:
    def test_all_checks_pass(self):
        results = run_checks()
        failed = [r.check_id for r in results if not r.passed]
        assert failed == []
        assert len(results) == len(check_ids())
        for r in results:
            d = r.as_dict()
            assert d["check_id"] == r.check_id
            assert isinstance(d["passed"], bool)
            json.dumps(d)  # JSON-safe details
