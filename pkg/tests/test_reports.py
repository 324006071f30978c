"""Report serialization: canonical JSON, rational strings, CSV."""

import json
from fractions import Fraction

import numpy as np
import pytest

from daverify.exact import QComplex
from daverify.reports import (
    SCHEMA_VERSION,
    dump_report,
    jsonable,
    load_report,
    make_report,
    report_schema_version,
    write_csv,
)


class TestJsonable:
    def test_rationals_as_strings(self):
        assert jsonable(Fraction(3, 6)) == "1/2"
        assert jsonable([Fraction(1), {"x": Fraction(-2, 4)}]) == ["1/1", {"x": "-1/2"}]

    def test_complex_and_qcomplex(self):
        assert jsonable(1 + 2j) == {"re": 1.0, "im": 2.0}
        assert jsonable(QComplex(Fraction(1, 2))) == {"re": "1/2", "im": "0/1"}

    def test_numpy_scalars(self):
        assert jsonable(np.float64(0.5)) == 0.5
        assert jsonable(np.int64(3)) == 3
        assert jsonable(np.bool_(True)) is True
        assert jsonable(np.array([1.0, 2.0])) == [1.0, 2.0]

    def test_rejects_unknown(self):
        with pytest.raises(TypeError):
            jsonable(object())


class TestReports:
    def test_envelope_and_overall_pass(self):
        rep = make_report("x", {"n": 1}, [{"check": "a", "pass": True},
                                          {"check": "b", "pass": True}])
        assert rep["pass"] is True
        assert rep["schema_version"] == SCHEMA_VERSION == report_schema_version()
        rep2 = make_report("x", {}, [{"check": "a", "pass": False}])
        assert rep2["pass"] is False

    def test_dump_is_byte_deterministic(self, tmp_path):
        rep = make_report("x", {"b": 2, "a": Fraction(1, 3)},
                          [{"check": "c", "pass": True, "value": 0.1}])
        p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
        dump_report(rep, p1)
        dump_report(rep, p2)
        assert p1.read_bytes() == p2.read_bytes()
        assert p1.read_text().endswith("\n")
        # keys sorted
        loaded = json.loads(p1.read_text())
        assert list(loaded) == sorted(loaded)

    def test_round_trip(self, tmp_path):
        rep = make_report("y", {}, [])
        path = tmp_path / "r.json"
        dump_report(rep, path)
        assert load_report(path) == rep

    def test_nan_rejected(self, tmp_path):
        rep = make_report("z", {}, [{"check": "c", "pass": True, "v": float("nan")}])
        with pytest.raises(ValueError):
            dump_report(rep, tmp_path / "bad.json")


class TestCsv:
    def test_write(self, tmp_path):
        path = tmp_path / "t.csv"
        write_csv(path, ["n", "v"], [[0, "1/2"], [1, 0.25]])
        lines = path.read_text().splitlines()
        assert lines[0] == "n,v"
        assert lines[1] == "0,1/2"
        assert len(lines) == 3
