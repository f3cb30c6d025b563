"""Unit tests for records: JSON-lines registry and CSV tables."""

import io
import json

import pytest

from rational_cycles.records import (
    REGISTRY_FIELDS,
    csv_text,
    load_registry,
    read_csv,
    read_registry,
    record_from_json,
    record_to_json,
    registry_lines,
    save_registry,
    write_registry,
)
from tests.helpers import make_record, make_report


@pytest.mark.unit
class TestRecordJson:
    """One attractor as a JSON object."""

    def test_numerators_are_decimal_strings(self):
        obj = record_to_json(make_record(), depth=500, step_cap=100)
        assert obj["cycle_numerators"] == ["5", "11", "20", "10"]
        assert obj["min_numerator"] == "5"
        assert (obj["lambda"], obj["omega"], obj["depth"], obj["step_cap"]) == (4, 2, 500, 100)
        assert tuple(obj) == REGISTRY_FIELDS

    def test_round_trip_keeps_large_numerators_exact(self, k5_report):
        record = k5_report.attractors[-1]
        assert record.lam == 27
        assert record_from_json(record_to_json(record, 500, 100_000)) == record

    def test_schema_rejects_numeric_numerators(self):
        obj = record_to_json(make_record(), 500, 100)
        obj["cycle_numerators"] = [5, 11, 20, 10]
        with pytest.raises(ValueError, match="schema"):
            record_from_json(obj)

    def test_schema_rejects_extra_fields(self):
        obj = record_to_json(make_record(), 500, 100)
        obj["note"] = "x"
        with pytest.raises(ValueError, match="schema"):
            record_from_json(obj)

    def test_closure_is_rechecked(self):
        obj = record_to_json(make_record(), 500, 100)
        obj["cycle_numerators"] = ["5", "11", "20", "12"]
        with pytest.raises(ValueError, match="close"):
            record_from_json(obj)


@pytest.mark.unit
class TestRegistry:
    """Writing and reading the JSON-lines registry."""

    def test_lines_sorted_by_k_then_min(self, k5_report, k7_report):
        lines = registry_lines([k7_report, k5_report])
        keys = [(json.loads(line)["k"], int(json.loads(line)["min_numerator"])) for line in lines]
        assert keys == sorted(keys)
        assert keys[0] == (5, 1)
        assert all(" " not in line for line in lines)

    def test_write_then_read(self, k13_report):
        buffer = io.StringIO()
        assert write_registry(buffer, [k13_report]) == 9
        buffer.seek(0)
        assert read_registry(buffer) == list(k13_report.attractors)

    def test_blank_lines_ignored(self):
        line = registry_lines([make_report()])[0]
        assert read_registry(io.StringIO("\n" + line + "\n\n")) == [make_record()]

    def test_strict_read_names_line(self):
        line = registry_lines([make_report()])[0]
        with pytest.raises(ValueError, match="line 2"):
            read_registry(io.StringIO(line + "\n{not json\n"))

    def test_lenient_read_skips_bad_lines(self, caplog):
        line = registry_lines([make_report()])[0]
        records = read_registry(io.StringIO("{}\n" + line + "\n"), strict=False)
        assert records == [make_record()]
        assert "Skipped malformed registry line 1" in caplog.text

    def test_save_and_load(self, tmp_path, k5_report):
        path = tmp_path / "registry.jsonl"
        assert save_registry(path, [k5_report]) == 5
        assert load_registry(path) == list(k5_report.attractors)


@pytest.mark.unit
class TestCsv:
    """CSV text output and parsing."""

    def test_csv_text_and_read_back(self):
        text = csv_text(("depth", "a"), [{"depth": 20, "a": 213}, {"depth": 50, "a": 184}])
        assert text == "depth,a\n20,213\n50,184\n"
        assert read_csv(io.StringIO(text)) == [
            {"depth": "20", "a": "213"},
            {"depth": "50", "a": "184"},
        ]
