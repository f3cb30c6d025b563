"""
Contract tests for files other tools consume: the attractor registry
(JSON-lines) and the CSV tables written by the CLI.

If a field is renamed, retyped or reordered these tests fail before any
downstream reader does.
"""

import json

import jsonschema
import pytest

from rational_cycles import cli
from rational_cycles.records import ATTRACTOR_LINE_SCHEMA, REGISTRY_FIELDS, registry_lines

pytestmark = pytest.mark.contract


class TestRegistryLines:
    """Every registry line matches the registry JSON schema."""

    def test_every_line_matches_schema(self, k5_report, k13_report):
        for line in registry_lines([k5_report, k13_report]):
            jsonschema.validate(json.loads(line), ATTRACTOR_LINE_SCHEMA)

    def test_field_order_is_stable(self, k7_report):
        (line,) = registry_lines([k7_report])
        assert tuple(json.loads(line)) == REGISTRY_FIELDS

    def test_numerators_are_strings(self, k5_report):
        for line in registry_lines([k5_report]):
            obj = json.loads(line)
            assert isinstance(obj["min_numerator"], str)
            assert all(isinstance(j, str) for j in obj["cycle_numerators"])
            assert obj["min_numerator"] == obj["cycle_numerators"][0]
            assert len(obj["cycle_numerators"]) == obj["lambda"]

    @pytest.mark.parametrize(
        "mutation",
        [
            lambda o: o.pop("depth"),
            lambda o: o.update(k="13"),
            lambda o: o.update(min_numerator="013"),
            lambda o: o.update(cycle_numerators=[]),
            lambda o: o.update(extra=1),
        ],
    )
    def test_schema_rejects_drift(self, k7_report, mutation):
        obj = json.loads(registry_lines([k7_report])[0])
        mutation(obj)
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(obj, ATTRACTOR_LINE_SCHEMA)


class TestCsvHeaders:
    """CSV headers are stable for every tabular subcommand."""

    @pytest.mark.parametrize(
        "argv, header",
        [
            (["census", "--k-max", "7", "--depth", "20"], ",".join(cli.SUMMARY_FIELDS)),
            (["atable", "--k-max", "7", "--depths", "20"], "depth,a"),
            (["enumerate", "--n", "3"], "vector,x,k"),
            (["fit"], "c1,c2"),
            (
                ["phenomena", "--k-max", "7", "--depth", "20"],
                "k_max,depth,surveyed,scaling_denominators,repetition_denominators,"
                "both_denominators,scaling_pairs,fractional_pairs,repetition_groups,"
                "covariance_exception_denominators",
            ),
        ],
    )
    def test_header(self, capsys, argv, header):
        assert cli.main([*argv, "--format", "csv", "--jobs", "1"]) == cli.EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == header
