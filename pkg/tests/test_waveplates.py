"""Jones matrices and the QWP-HWP-QWP synthesis of 2x2 unitaries."""

import math

import numpy as np
import pytest

from pathpol.errors import DimensionError
from pathpol.linalg import distance_up_to_global_phase, haar_unitary
from pathpol.waveplates import (
    HWP,
    QWP,
    PolarizationGadget,
    WavePlate,
    gadget_unitary,
    hwp,
    jones,
    qwp,
    synthesize,
)


def test_axis_aligned_plates():
    np.testing.assert_allclose(hwp(0.0), np.diag([1.0, -1.0]), atol=1e-15)
    np.testing.assert_allclose(qwp(0.0), np.diag([1.0, 1.0j]), atol=1e-15)


def test_half_wave_plate_at_45_degrees_swaps():
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(hwp(math.pi / 4), swap, atol=1e-15)


def test_orientation_wraps_modulo_pi():
    plate = WavePlate(kind=HWP, orientation=math.pi + 0.3)
    assert plate.orientation == pytest.approx(0.3)
    np.testing.assert_allclose(jones(plate), hwp(0.3), atol=1e-14)


def test_plates_are_unitary():
    rng = np.random.default_rng(17)
    for angle in rng.uniform(0.0, math.pi, size=25):
        for mat in (hwp(angle), qwp(angle)):
            np.testing.assert_allclose(mat @ mat.conj().T, np.eye(2), atol=1e-14)


def test_wave_plate_json_round_trip():
    plate = WavePlate(kind=QWP, orientation=0.77)
    assert WavePlate.from_json(plate.to_json()) == plate


def test_synthesize_structure():
    gadget = synthesize(haar_unitary(2, seed=3))
    kinds = [p.kind for p in gadget.plates]
    assert kinds == [QWP, HWP, QWP]


def test_synthesize_special_targets():
    targets = [
        np.eye(2, dtype=complex),
        np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
        np.diag([1.0, 1.0j]),
        np.diag([np.exp(0.7j), np.exp(-0.7j)]),
        np.diag([1.0, -1.0]).astype(complex),
    ]
    for target in targets:
        gadget = synthesize(target)
        np.testing.assert_allclose(gadget_unitary(gadget), target, atol=1e-12)


def test_synthesize_haar_batch_exact_phase():
    """1000 seeded draws reproduce the target including its global phase."""
    rng = np.random.default_rng(2024)
    worst_phase_free = 0.0
    worst_exact = 0.0
    for _ in range(1000):
        target = haar_unitary(2, rng)
        gadget = synthesize(target)
        produced = gadget_unitary(gadget, exact_phase=True)
        worst_exact = max(worst_exact, float(np.linalg.norm(produced - target)))
        worst_phase_free = max(
            worst_phase_free, distance_up_to_global_phase(produced, target)
        )
    assert worst_phase_free < 1e-10
    assert worst_exact < 1e-10


def test_gadget_unitary_phase_toggle():
    target = haar_unitary(2, seed=44)
    gadget = synthesize(target)
    bare = gadget_unitary(gadget, exact_phase=False)
    full = gadget_unitary(gadget, exact_phase=True)
    np.testing.assert_allclose(full, np.exp(1j * gadget.global_phase) * bare, atol=1e-14)
    assert distance_up_to_global_phase(bare, target) < 1e-12


def test_synthesize_rejects_wrong_shape():
    with pytest.raises(DimensionError):
        synthesize(np.eye(3, dtype=complex))


def test_gadget_json_round_trip():
    gadget = synthesize(haar_unitary(2, seed=9))
    again = PolarizationGadget.from_json(gadget.to_json())
    assert again.plates == gadget.plates
    assert again.global_phase == pytest.approx(gadget.global_phase)
