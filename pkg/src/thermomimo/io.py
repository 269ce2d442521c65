"""CSV and JSON serialization of sweep records."""

import csv
import io
import json
import math
import os
import tempfile

__all__ = ["CSV_COLUMNS", "format_float", "records_to_csv", "records_to_json", "atomic_write", "jsonable"]

CSV_COLUMNS = ("variable", "thermo_bps", "shannon_bps", "lower_bps", "upper_bps", "warnings")
ENERGY_COLUMN = "energy_per_bit_j"

_OUTPUT_COLUMNS = (
    ("thermo", "thermo_bps", "thermo_capacity"),
    ("shannon", "shannon_bps", "shannon_reference"),
    ("lower_bound", "lower_bps", "lower_bound"),
    ("upper_bound", "upper_bps", "upper_bound"),
)


def format_float(value: float) -> str:
    """Scientific notation with 17 significant digits, independent of locale."""
    return "%.16e" % value


def records_to_csv(records, spec) -> str:
    """Render records as CSV.

    Columns are always ``variable, thermo_bps, shannon_bps, lower_bps,
    upper_bps, warnings``; outputs not requested by ``spec`` are left empty.
    ``energy_per_bit_j`` is appended only when that output was requested.
    Multiple warnings are joined with ``"; "``.
    """
    with_energy = "energy_per_bit" in spec.outputs
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS + ((ENERGY_COLUMN,) if with_energy else ()))
    for rec in records:
        result = rec.capacity_result
        row = [format_float(rec.variable_value)]
        for output, _, attr in _OUTPUT_COLUMNS:
            row.append(format_float(getattr(result, attr)) if output in spec.outputs else "")
        row.append("; ".join(result.warnings))
        if with_energy:
            row.append("" if rec.energy_per_bit is None else format_float(rec.energy_per_bit))
        writer.writerow(row)
    return buf.getvalue()


def jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def records_to_json(records, spec, config=None, version=None) -> str:
    """Render records as a JSON document that embeds the sweep definition."""
    doc = {
        "library": "thermomimo",
        "version": version,
        "config": config or {},
        "sweep": spec.to_dict(),
        "records": [
            {
                "variable": rec.variable_value,
                **rec.capacity_result.to_dict(),
                "energy_per_bit": rec.energy_per_bit,
            }
            for rec in records
        ],
    }
    return json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n"


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
