"""JSON documents for triples, states and floor estimates.

Every document is an object ``{"kind": ..., "dim": d, "entries": ...}``; complex
numbers are ``[re, im]`` pairs and matrices are row-major lists of rows. Floats are
written with Python's shortest round-trip repr, so reading a document back gives
bit-identical values.
"""

import csv
import io
import json
import math
import os
import sys
import tempfile
from collections.abc import Iterable
from pathlib import Path
from typing import Any

import numpy as np

from ..algebra import ObservableTriple
from ..campaigns import TrialRow
from ..errors import DocumentError, TripleUncertaintyError
from ..matrix import ComplexMatrix, ComplexVector, Observable, QuantumState
from ..witness import FloorEstimate


def load_document(path: str | Path) -> dict[str, Any]:
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as ex:
        raise DocumentError(source, f"byte {ex.start}", "file is not valid UTF-8") from ex
    except OSError as ex:
        raise DocumentError(source, None, f"cannot read file: {ex.strerror}") from ex
    try:
        document = json.loads(text)
    except json.JSONDecodeError as ex:
        raise DocumentError(source, f"line {ex.lineno} column {ex.colno}", ex.msg) from ex
    if not isinstance(document, dict):
        raise DocumentError(source, None, "top-level value must be an object")
    return document


def _field(document: dict[str, Any], name: str, source: str) -> Any:
    if name not in document:
        raise DocumentError(source, name, "missing field")
    return document[name]


def _kind(document: dict[str, Any], source: str, allowed: Iterable[str]) -> str:
    kind = _field(document, "kind", source)
    allowed = tuple(allowed)
    if kind not in allowed:
        raise DocumentError(source, "kind", f"expected one of {allowed}, got {kind!r}")
    return kind


def _dim(document: dict[str, Any], source: str) -> int:
    dim = _field(document, "dim", source)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise DocumentError(source, "dim", f"expected a positive integer, got {dim!r}")
    return dim


def _scalar(value: Any, source: str, where: str) -> complex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise DocumentError(source, where, f"expected [re, im], got {value!r}")
    try:
        return complex(float(value[0]), float(value[1]))
    except OverflowError as ex:
        raise DocumentError(source, where, "number does not fit in a double") from ex


def _vector(entries: Any, dim: int, source: str, where: str) -> ComplexVector:
    if not isinstance(entries, list) or len(entries) != dim:
        raise DocumentError(source, where, f"expected {dim} complex entries")
    return np.array([_scalar(x, source, f"{where}[{i}]") for i, x in enumerate(entries)])


def _matrix(entries: Any, dim: int, source: str, where: str) -> ComplexMatrix:
    if not isinstance(entries, list) or len(entries) != dim:
        raise DocumentError(source, where, f"expected {dim} rows")
    return np.stack([_vector(row, dim, source, f"{where}[{i}]") for i, row in enumerate(entries)])


def _encode_vector(vector: ComplexVector) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in vector]


def _encode_matrix(matrix: ComplexMatrix) -> list[list[list[float]]]:
    return [_encode_vector(row) for row in matrix]


def parse_triple(document: dict[str, Any], source: str) -> ObservableTriple:
    _kind(document, source, ("triple",))
    dim = _dim(document, source)
    entries = _field(document, "entries", source)
    if not isinstance(entries, list) or len(entries) != 3:
        raise DocumentError(source, "entries", "a triple needs exactly three matrices")
    members = []
    for j, block in enumerate(entries):
        where = f"entries[{j}]"
        matrix = _matrix(block, dim, source, where)
        try:
            members.append(Observable(matrix))
        except TripleUncertaintyError as ex:
            raise DocumentError(source, where, str(ex)) from ex
    return ObservableTriple((members[0], members[1], members[2]))


def parse_state(document: dict[str, Any], source: str) -> QuantumState:
    kind = _kind(document, source, ("pure", "density"))
    dim = _dim(document, source)
    entries = _field(document, "entries", source)
    try:
        if kind == "pure":
            return QuantumState.pure(_vector(entries, dim, source, "entries"))
        return QuantumState.mixed(_matrix(entries, dim, source, "entries"))
    except DocumentError:
        raise
    except TripleUncertaintyError as ex:
        raise DocumentError(source, "entries", str(ex)) from ex


def _finite(value: Any) -> float | None:
    """``value`` as a finite float, or None for anything else (bools and huge ints included)."""
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        return None
    try:
        number = float(value)
    except OverflowError:
        return None
    return number if math.isfinite(number) else None


def _optional_number(document: dict[str, Any], name: str, source: str) -> float | None:
    value = document.get(name)
    if value is None:
        return None
    number = _finite(value)
    if number is None:
        raise DocumentError(source, name, f"expected a finite number or null, got {value!r}")
    return number


def parse_floor(document: dict[str, Any], source: str) -> FloorEstimate:
    _kind(document, source, ("floor",))
    raw_c = _field(document, "c", source)
    c = _finite(raw_c)
    if c is None or c < 0:
        raise DocumentError(source, "c", f"expected a finite non-negative number, got {raw_c!r}")
    fingerprint = _field(document, "fingerprint", source)
    if not isinstance(fingerprint, str):
        raise DocumentError(source, "fingerprint", "expected a string")
    restarts = document.get("restarts", 0)
    if not isinstance(restarts, int) or isinstance(restarts, bool) or restarts < 0:
        raise DocumentError(
            source, "restarts", f"expected a non-negative integer, got {restarts!r}"
        )
    converged = document.get("converged", False)
    if not isinstance(converged, bool):
        raise DocumentError(source, "converged", f"expected true or false, got {converged!r}")
    mu = _field(document, "argmin_mu", source)
    nu = _field(document, "argmin_nu", source)
    for name, value in (("argmin_mu", mu), ("argmin_nu", nu)):
        if not isinstance(value, dict):
            raise DocumentError(source, name, "argmin states must be state documents")
    return FloorEstimate(
        c=c,
        argmin_mu=parse_state(mu, f"{source}:argmin_mu"),
        argmin_nu=parse_state(nu, f"{source}:argmin_nu"),
        restarts=restarts,
        converged=converged,
        fingerprint=fingerprint,
        multistart_value=_optional_number(document, "multistart_value", source),
        grid_value=_optional_number(document, "grid_value", source),
    )


def load_triple(path: str | Path) -> ObservableTriple:
    return parse_triple(load_document(path), str(path))


def load_state(path: str | Path) -> QuantumState:
    return parse_state(load_document(path), str(path))


def load_floor(path: str | Path) -> FloorEstimate:
    return parse_floor(load_document(path), str(path))


def triple_document(t: ObservableTriple) -> dict[str, Any]:
    return {"kind": "triple", "dim": t.dim, "entries": [_encode_matrix(h.matrix) for h in t]}


def state_document(state: QuantumState) -> dict[str, Any]:
    if state.vector is not None:
        return {"kind": "pure", "dim": state.dim, "entries": _encode_vector(state.vector)}
    return {"kind": "density", "dim": state.dim, "entries": _encode_matrix(state.density_matrix())}


def floor_document(floor: FloorEstimate) -> dict[str, Any]:
    return {
        "kind": "floor",
        "c": floor.c,
        "fingerprint": floor.fingerprint,
        "restarts": floor.restarts,
        "converged": floor.converged,
        "multistart_value": floor.multistart_value,
        "grid_value": floor.grid_value,
        "argmin_mu": state_document(floor.argmin_mu),
        "argmin_nu": state_document(floor.argmin_nu),
    }


def dumps(document: Any) -> str:
    return json.dumps(document, indent=2) + "\n"


def rows_to_csv(rows: Iterable[TrialRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["suite", "trial", "seed", "value", "passed"])
    for row in rows:
        writer.writerow([row.suite, row.trial, row.seed, f"{row.value:.17g}", int(row.passed)])
    return buffer.getvalue()


def emit(text: str, out: str | None) -> None:
    """Write ``text`` to stdout, or to ``out`` through a temp file in the same directory."""
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    try:
        with tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", dir=target.parent, delete=False, suffix=".tmp"
        ) as handle:
            handle.write(text)
        os.replace(handle.name, target)
    except OSError as ex:
        raise DocumentError(out, None, f"cannot write file: {ex.strerror}") from ex
