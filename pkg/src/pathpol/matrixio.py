"""Matrix files: JSON documents {"dim": N, "entries": N x N x [re, im]}.

Real/imaginary pairs keep the format lossless and language-neutral.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError


def matrix_to_json(mat: np.ndarray) -> dict:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    entries = [[[float(z.real), float(z.imag)] for z in row] for row in mat]
    return {"dim": mat.shape[0], "entries": entries}


def matrix_from_json(data: dict) -> np.ndarray:
    try:
        dim = int(data["dim"])
        entries = data["entries"]
    except (TypeError, KeyError, ValueError) as exc:
        raise ParseError(f"matrix record needs integer 'dim' and 'entries': {exc}") from exc
    if dim < 1:
        raise ParseError(f"matrix dimension must be positive, got {dim}")
    if len(entries) != dim or any(len(row) != dim for row in entries):
        raise ParseError(f"entries do not form a {dim} x {dim} array")
    out = np.empty((dim, dim), dtype=complex)
    try:
        for i, row in enumerate(entries):
            for j, pair in enumerate(row):
                re, im = pair
                out[i, j] = complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"entry ({i}, {j}) is not a [re, im] pair: {exc}") from exc
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        raise ParseError("matrix entries must be finite")
    return out


def save_matrix(path: str, mat: np.ndarray) -> None:
    doc = matrix_to_json(mat)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=1)
        handle.write("\n")


def load_matrix(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return matrix_from_json(data)
