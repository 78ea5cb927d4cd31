"""JSON documents for matrices, states, measurements and channels.

Every complex entry is a two-element array ``[re, im]``.  Document kinds are
recognised by their keys:

* ``{"unitary": M}``                  orthonormal basis (columns are vectors)
* ``{"dim": d, "elements": [M, ...]}`` POVM
* ``{"dims": [..], "data": M}``       density matrix
* ``{"kraus": [M, ...]}``             channel
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path

import numpy as np

from .quantum import DensityMatrix, KrausChannel, OrthonormalBasis, Povm

SCHEMA = "entroplex.report/1"


class DocumentError(ValueError):
    """Malformed input document (bad JSON or wrong structure)."""


def matrix_from_json(data, where: str = "matrix") -> np.ndarray:
    if not isinstance(data, list) or not data or not all(isinstance(row, list) for row in data):
        raise DocumentError(f"{where}: expected a non-empty list of rows")
    ncols = len(data[0])
    out = np.empty((len(data), ncols), dtype=np.complex128)
    for i, row in enumerate(data):
        if len(row) != ncols:
            raise DocumentError(f"{where}: row {i} has {len(row)} entries, expected {ncols}")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise DocumentError(f"{where}[{i}][{j}]: expected [re, im], got {entry!r}")
            out[i, j] = complex(entry[0], entry[1])
    return out


def matrix_to_json(M) -> list:
    M = np.asarray(M, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def load_json(path) -> tuple[dict, str]:
    """Parse ``path`` and return the document with the SHA-256 of its bytes."""
    raw = Path(path).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except UnicodeDecodeError as exc:
        raise DocumentError(f"{path}: not UTF-8 text at byte {exc.start}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: top level must be a JSON object")
    return doc, digest


def measurement_from_doc(doc: dict, where: str = "document"):
    if "unitary" in doc:
        return OrthonormalBasis(matrix_from_json(doc["unitary"], f"{where}.unitary"))
    if "elements" in doc:
        elems = doc["elements"]
        if not isinstance(elems, list) or not elems:
            raise DocumentError(f"{where}.elements: expected a non-empty list")
        mats = [matrix_from_json(E, f"{where}.elements[{i}]") for i, E in enumerate(elems)]
        povm = Povm(mats)
        if "dim" in doc and doc["dim"] != povm.dim:
            raise DocumentError(f"{where}: declared dim {doc['dim']} but elements are {povm.dim}x{povm.dim}")
        return povm
    raise DocumentError(f"{where}: expected a basis ('unitary') or POVM ('elements') document")


def state_from_doc(doc: dict, where: str = "document") -> DensityMatrix:
    if "data" not in doc:
        raise DocumentError(f"{where}: state documents need 'data'")
    M = matrix_from_json(doc["data"], f"{where}.data")
    dims = doc.get("dims", doc.get("dim"))
    if isinstance(dims, int):
        dims = [dims]
    return DensityMatrix(M, dims)


def channel_from_doc(doc: dict, where: str = "document") -> KrausChannel:
    ops = doc.get("kraus")
    if not isinstance(ops, list) or not ops:
        raise DocumentError(f"{where}: channel documents need a non-empty 'kraus' list")
    return KrausChannel([matrix_from_json(K, f"{where}.kraus[{i}]") for i, K in enumerate(ops)])


def basis_doc(U) -> dict:
    return {"unitary": matrix_to_json(U)}


def povm_doc(elements) -> dict:
    elements = [np.asarray(E) for E in elements]
    return {"dim": int(elements[0].shape[0]), "elements": [matrix_to_json(E) for E in elements]}


def state_doc(matrix, dims) -> dict:
    return {"dims": [int(d) for d in dims], "data": matrix_to_json(matrix)}


def channel_doc(kraus) -> dict:
    return {"kraus": [matrix_to_json(K) for K in kraus]}


def format_number(x: float) -> str:
    return f"{x:.12g}"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_number(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
