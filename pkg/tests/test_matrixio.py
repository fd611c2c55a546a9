"""Complex-matrix JSON records on disk."""

import json

import numpy as np
import pytest

from pathpol.errors import ParseError
from pathpol.linalg import haar_unitary
from pathpol.matrixio import load_matrix, matrix_from_json, matrix_to_json, save_matrix


def test_round_trip_exact(tmp_path):
    u = haar_unitary(5, seed=4)
    path = tmp_path / "u.json"
    save_matrix(str(path), u)
    np.testing.assert_array_equal(load_matrix(str(path)), u)


def test_record_shape():
    u = haar_unitary(2, seed=0)
    data = matrix_to_json(u)
    assert data["dim"] == 2
    assert len(data["entries"]) == 2
    assert len(data["entries"][0]) == 2
    assert data["entries"][0][0] == [u[0, 0].real, u[0, 0].imag]


def test_matrix_to_json_rejects_non_square():
    with pytest.raises(ValueError):
        matrix_to_json(np.zeros((2, 3)))


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{]")
    with pytest.raises(ParseError):
        load_matrix(str(path))


def test_load_rejects_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_matrix(str(tmp_path / "missing.json"))


def test_from_json_rejects_missing_keys():
    with pytest.raises(ParseError):
        matrix_from_json({"dim": 2})


def test_from_json_rejects_shape_mismatch():
    with pytest.raises(ParseError):
        matrix_from_json({"dim": 2, "entries": [[[1.0, 0.0]]]})


def test_from_json_rejects_bad_pair():
    with pytest.raises(ParseError):
        matrix_from_json({"dim": 1, "entries": [[[1.0]]]})


def test_from_json_rejects_nonfinite():
    with pytest.raises(ParseError):
        matrix_from_json({"dim": 1, "entries": [[[float("nan"), 0.0]]]})


def test_from_json_rejects_nonpositive_dim():
    with pytest.raises(ParseError):
        matrix_from_json({"dim": 0, "entries": []})


def test_saved_file_is_valid_json(tmp_path):
    path = tmp_path / "u.json"
    save_matrix(str(path), haar_unitary(3, seed=1))
    data = json.loads(path.read_text())
    assert data["dim"] == 3
