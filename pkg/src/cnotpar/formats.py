"""Counts and report files.

A counts file is one JSON document::

    {
      "format_version": 1,
      "metadata": {"synthetic": true, ...},
      "settings": [
        {"input_basis": ["Z", "Z"], "output_basis": ["Z", "Z"],
         "records": [{"input": "00", "counts": {"00": 812, "01": 3, "10": 0, "11": 0}}, ...]},
        ...
      ]
    }

Outcome and input labels are "00".."11", qubit one first, bit 0 meaning
eigenvalue +1.  The three canonical settings must be present; other
settings are accepted and ignored with a warning.
"""
from __future__ import annotations

import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from cnotpar.entanglement import bound_from_fidelities
from cnotpar.evaluator import (
    CANONICAL_SETTINGS,
    DEFAULT_EQUALITY_TOL,
    LABELS,
    XX_SETTING,
    XZ_YY_SETTING,
    ZZ_SETTING,
    BasisSetting,
    FidelityTriple,
    ProbabilityTable,
    fidelities_from_tables,
    p_e_estimate,
)
from cnotpar.expsim import CountsRecord, counts_to_table, total_shots
from cnotpar.gatezoo import ExpansionCoefficients
from cnotpar.qcore import SuperOperator, choi_of, is_cp, is_tp

log = logging.getLogger(__name__)

FORMAT_VERSION = 1


class SchemaError(ValueError):
    """A counts file violates the schema; ``where`` locates the problem."""

    def __init__(self, where: str, reason: str):
        super().__init__(f"{where}: {reason}")
        self.where = where
        self.reason = reason


def write_json_atomic(path: str | os.PathLike, doc: Any) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=2, allow_nan=False)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- counts files ------------------------------------------------------------

def counts_document(
    experiment: dict[BasisSetting, list[CountsRecord]], metadata: dict[str, Any]
) -> dict[str, Any]:
    if "synthetic" not in metadata:
        raise ValueError("metadata must include 'synthetic'")
    return {
        "format_version": FORMAT_VERSION,
        "metadata": dict(metadata),
        "settings": [
            {
                "input_basis": list(setting.input_basis),
                "output_basis": list(setting.output_basis),
                "records": [{"input": r.input_label, "counts": dict(r.counts)} for r in records],
            }
            for setting, records in experiment.items()
        ],
    }


def _require(obj: Any, key: str, where: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    if key not in obj:
        raise SchemaError(where, f"missing required key {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise SchemaError(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return value


def _basis_pair(value: list, where: str) -> tuple[str, str]:
    if len(value) != 2 or any(b not in ("X", "Y", "Z") for b in value):
        raise SchemaError(where, f"expected two labels from X, Y, Z, got {value!r}")
    return tuple(value)


def parse_counts_document(doc: Any) -> tuple[dict[str, Any], dict[BasisSetting, list[CountsRecord]]]:
    """Validate a counts document; return its metadata and records by setting."""
    version = _require(doc, "format_version", "$", int)
    if version != FORMAT_VERSION:
        raise SchemaError("$.format_version", f"unsupported version {version}")
    metadata = _require(doc, "metadata", "$", dict)
    _require(metadata, "synthetic", "$.metadata", bool)
    settings = _require(doc, "settings", "$", list)

    experiment: dict[BasisSetting, list[CountsRecord]] = {}
    for i, entry in enumerate(settings):
        where = f"$.settings[{i}]"
        setting = BasisSetting(
            _basis_pair(_require(entry, "input_basis", where, list), f"{where}.input_basis"),
            _basis_pair(_require(entry, "output_basis", where, list), f"{where}.output_basis"),
        )
        if setting in experiment:
            raise SchemaError(where, f"duplicate setting {setting.name}")
        records = []
        for j, rec in enumerate(_require(entry, "records", where, list)):
            rwhere = f"{where}.records[{j}]"
            label = _require(rec, "input", rwhere, str)
            if label not in LABELS:
                raise SchemaError(f"{rwhere}.input", f"expected one of {LABELS}, got {label!r}")
            counts = _require(rec, "counts", rwhere, dict)
            if set(counts) != set(LABELS):
                raise SchemaError(f"{rwhere}.counts", f"keys must be exactly {list(LABELS)}")
            for k, c in counts.items():
                if not isinstance(c, int) or isinstance(c, bool):
                    raise SchemaError(f"{rwhere}.counts.{k}", "expected an integer")
                if c < 0:
                    raise SchemaError(f"{rwhere}.counts.{k}", f"negative count {c}")
            if sum(counts.values()) < 1:
                raise SchemaError(f"{rwhere}.counts", "zero shots")
            records.append(CountsRecord(setting, label, counts))
        try:
            counts_to_table(records)
        except ValueError as exc:
            raise SchemaError(f"{where}.records", str(exc)) from None
        experiment[setting] = records

    missing = [s.name for s in CANONICAL_SETTINGS if s not in experiment]
    if missing:
        raise SchemaError("$.settings", f"missing canonical setting(s) {', '.join(missing)}")
    for setting in experiment:
        if setting not in CANONICAL_SETTINGS:
            log.warning("ignoring non-canonical setting %s", setting.name)
    return metadata, experiment


def read_counts_file(path: str | os.PathLike):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from None
    return parse_counts_document(doc)


# -- reports -----------------------------------------------------------------

def table_document(table: ProbabilityTable) -> dict[str, Any]:
    return {
        "input_basis": list(table.setting.input_basis),
        "output_basis": list(table.setting.output_basis),
        "probs": {inp: {out: table[out, inp] for out in LABELS} for inp in LABELS},
    }


def binomial_stderr(f: float, n: int) -> float:
    return math.sqrt(max(f * (1 - f), 0.0) / n)


def reconstruction_document(f: FidelityTriple, include_matrices: bool = False) -> dict[str, Any]:
    coeffs = ExpansionCoefficients.from_fidelities(*f.as_tuple())
    s = coeffs.combine()
    doc: dict[str, Any] = {
        "coefficients": coeffs.as_dict(),
        "is_cp": is_cp(s),
        "is_tp": is_tp(s),
        "choi_available": True,
    }
    if include_matrices:
        doc["superoperator"] = complex_matrix_document(s.map)
        doc["choi"] = complex_matrix_document(choi_of(s))
    return doc


def complex_matrix_document(m: np.ndarray) -> dict[str, list[list[float]]]:
    return {"real": np.real(m).tolist(), "imag": np.imag(m).tolist()}


def matrix_from_document(doc: dict[str, list[list[float]]]) -> np.ndarray:
    return np.array(doc["real"]) + 1j * np.array(doc["imag"])


def superop_from_document(doc: dict[str, Any]) -> SuperOperator:
    return SuperOperator(matrix_from_document(doc))


def build_report(
    experiment: dict[BasisSetting, list[CountsRecord]],
    equality_tol: float = DEFAULT_EQUALITY_TOL,
) -> dict[str, Any]:
    tables = {s: counts_to_table(experiment[s]) for s in CANONICAL_SETTINGS}
    f = fidelities_from_tables(tables)
    shots = {s: total_shots(experiment[s]) for s in CANONICAL_SETTINGS}
    pe = p_e_estimate(f, equality_tol)
    names = {ZZ_SETTING: "F1", XX_SETTING: "F2", XZ_YY_SETTING: "F3"}
    return {
        "format_version": FORMAT_VERSION,
        "fidelities": {
            "F1": f.F1,
            "F2": f.F2,
            "F3": f.F3,
            "standard_errors": {
                names[s]: binomial_stderr(getattr(f, names[s]), shots[s]) for s in CANONICAL_SETTINGS
            },
            "shots": {names[s]: shots[s] for s in CANONICAL_SETTINGS},
        },
        "sum": f.sum,
        "parallelism_number": f.parallelism_number,
        "criterion_met": f.criterion_met,
        "p_e_estimate": {"value": pe.value, "reason": pe.reason, "equality_tol": equality_tol},
        "concurrence": {
            "bound_from_fidelities": bound_from_fidelities(f),
            # needs ZZ and XX correlations under XZ inputs, which the plan does not measure
            "bound_from_correlations": None,
        },
        "tables": {s.name: table_document(tables[s]) for s in CANONICAL_SETTINGS},
        "channel_reconstruction": reconstruction_document(f),
    }
