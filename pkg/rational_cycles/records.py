"""
Registry and table files.

Attractor registry: JSON-lines, one attractor per line. Arbitrary-size
integers (numerators) are written as decimal strings so they survive any
JSON reader bit-exactly. Each line must match ATTRACTOR_LINE_SCHEMA.

Tables (A(N), censuses): CSV with a header row of field names.
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, TextIO, Union

import jsonschema

from rational_cycles.census import AttractorRecord, DenominatorReport

logger = logging.getLogger(__name__)

REGISTRY_FIELDS = (
    "k",
    "min_numerator",
    "lambda",
    "omega",
    "cycle_numerators",
    "depth",
    "step_cap",
)

_DECIMAL = {"type": "string", "pattern": "^[1-9][0-9]*$"}

ATTRACTOR_LINE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "additionalProperties": False,
    "required": list(REGISTRY_FIELDS),
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "min_numerator": _DECIMAL,
        "lambda": {"type": "integer", "minimum": 1},
        "omega": {"type": "integer", "minimum": 0},
        "cycle_numerators": {"type": "array", "minItems": 1, "items": _DECIMAL},
        "depth": {"type": "integer", "minimum": 1},
        "step_cap": {"type": "integer", "minimum": 1},
    },
}

_validator = jsonschema.Draft7Validator(ATTRACTOR_LINE_SCHEMA)

PathLike = Union[str, Path]


def record_to_json(record: AttractorRecord, depth: int, step_cap: int) -> Dict:
    return {
        "k": record.k,
        "min_numerator": str(record.min_numerator),
        "lambda": record.lam,
        "omega": record.omega,
        "cycle_numerators": [str(j) for j in record.cycle_numerators],
        "depth": depth,
        "step_cap": step_cap,
    }


def record_from_json(obj: Dict) -> AttractorRecord:
    """Rebuild a record from one decoded registry line; re-checks closure."""
    try:
        _validator.validate(obj)
    except jsonschema.ValidationError as exc:
        raise ValueError(f"Registry line does not match the schema: {exc.message}") from exc
    return AttractorRecord(
        k=obj["k"],
        cycle_numerators=tuple(int(j) for j in obj["cycle_numerators"]),
        lam=obj["lambda"],
        omega=obj["omega"],
        min_numerator=int(obj["min_numerator"]),
    )


def registry_lines(reports: Iterable[DenominatorReport]) -> List[str]:
    """One JSON line per attractor, ordered by (k, min_numerator)."""
    lines = []
    for report in sorted(reports, key=lambda r: r.k):
        for record in sorted(report.attractors, key=lambda r: r.min_numerator):
            obj = record_to_json(record, report.depth, report.step_cap)
            lines.append(json.dumps(obj, separators=(",", ":")))
    return lines


def write_registry(stream: TextIO, reports: Iterable[DenominatorReport]) -> int:
    count = 0
    for line in registry_lines(reports):
        stream.write(line + "\n")
        count += 1
    return count


def save_registry(path: PathLike, reports: Iterable[DenominatorReport]) -> int:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        count = write_registry(fh, reports)
    logger.info("Wrote %d attractor record(s) to %s", count, path)
    return count


def read_registry(stream: TextIO, strict: bool = True) -> List[AttractorRecord]:
    """
    Parse registry lines. Blank lines are ignored. A malformed line raises
    ValueError naming its line number, or is logged and skipped when
    strict is False.
    """
    records: List[AttractorRecord] = []
    skipped = 0
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            records.append(record_from_json(json.loads(line)))
        except (ValueError, TypeError) as exc:
            if strict:
                raise ValueError(f"Registry line {lineno}: {exc}") from exc
            skipped += 1
            logger.warning("Skipped malformed registry line %d: %s", lineno, exc)
    if skipped:
        logger.error("Registry read finished with %d skipped line(s)", skipped)
    return records


def load_registry(path: PathLike, strict: bool = True) -> List[AttractorRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        return read_registry(fh, strict=strict)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def csv_text(fieldnames: Sequence[str], rows: Iterable[Dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def read_csv(stream: TextIO) -> List[Dict[str, str]]:
    return list(csv.DictReader(stream))
