"""Jones calculus for wave plates and closed-form gadget synthesis.

Conventions (Jones basis ordered (h, v), R the real rotation):

    HWP(t) = R(t) @ diag(1, -1) @ R(-t)
    QWP(t) = R(t) @ diag(1,  i) @ R(-t)

A product QWP(q1) HWP(h) QWP(q2) always lands in SU(2); writing it as
R(q1) * exp(i*v*sigma_x) * R(-q2) with v = 2h - q1 - q2 shows it is a
Y-X-Y Euler product, so any 2x2 unitary splits into three plates plus a
recorded global phase.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .linalg import require_unitary

HWP = "hwp"
QWP = "qwp"

_RETARDANCE = {HWP: -1.0 + 0.0j, QWP: 1.0j}


def _real_rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class WavePlate:
    """A half- or quarter-wave plate at a given fast-axis orientation.

    Orientations are physically periodic in pi and normalized to [0, pi).
    """

    kind: str
    orientation: float

    def __post_init__(self) -> None:
        if self.kind not in _RETARDANCE:
            raise ValueError(f"unknown plate kind {self.kind!r}")
        if not math.isfinite(self.orientation):
            raise ValueError("orientation must be finite")
        object.__setattr__(self, "orientation", float(self.orientation) % math.pi)

    def to_json(self) -> dict:
        return {"kind": self.kind, "orientation": self.orientation}

    @classmethod
    def from_json(cls, obj: dict) -> "WavePlate":
        return cls(kind=str(obj["kind"]), orientation=float(obj["orientation"]))


def jones(plate: WavePlate) -> np.ndarray:
    """2x2 Jones matrix of a single plate."""
    rot = _real_rotation(plate.orientation)
    ret = np.diag([1.0 + 0.0j, _RETARDANCE[plate.kind]])
    return rot @ ret @ rot.T


def hwp(orientation: float) -> np.ndarray:
    return jones(WavePlate(HWP, orientation))


def qwp(orientation: float) -> np.ndarray:
    return jones(WavePlate(QWP, orientation))


@dataclass(frozen=True)
class PolarizationGadget:
    """Plate chain plus the global phase needed to match a target exactly.

    plates are listed in application order (first plate hits the light
    first), so the matrix product runs right to left.
    """

    plates: tuple[WavePlate, ...]
    global_phase: float

    def to_json(self) -> dict:
        return {
            "plates": [p.to_json() for p in self.plates],
            "global_phase": self.global_phase,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PolarizationGadget":
        return cls(
            plates=tuple(WavePlate.from_json(p) for p in obj["plates"]),
            global_phase=float(obj["global_phase"]),
        )


def gadget_unitary(gadget: PolarizationGadget, exact_phase: bool = True) -> np.ndarray:
    """Compose the plate chain; include the global phase unless told not to."""
    out = np.eye(2, dtype=complex)
    for plate in gadget.plates:
        out = jones(plate) @ out
    if exact_phase:
        out = cmath.exp(1j * gadget.global_phase) * out
    return out


def synthesize(target: np.ndarray, tol: float = 1e-10) -> PolarizationGadget:
    """QWP-HWP-QWP realization of an arbitrary 2x2 unitary.

    The determinant phase is peeled off first; the SU(2) remainder is
    Euler-decomposed about Y-X-Y, which maps directly onto the plate
    orientations.  Closed form, so the residual is at machine precision.
    """
    arr = np.asarray(target, dtype=complex)
    if arr.shape != (2, 2):
        raise DimensionError(f"expected a 2x2 matrix, got shape {arr.shape}")
    require_unitary(arr, tol=max(tol, 1e-10))

    lam = cmath.phase(complex(np.linalg.det(arr))) / 2.0
    su = cmath.exp(-1j * lam) * arr
    alpha, beta = complex(su[0, 0]), complex(su[1, 0])

    # su = [[cB cosS + i sB sinD, ...], [cB sinS - i sB cosD, ...]] with
    # S = (a+c)/2, D = (a-c)/2 and (a, b, c) the Y-X-Y Euler angles.
    c_half = math.hypot(alpha.real, beta.real)
    s_half = math.hypot(alpha.imag, beta.imag)
    sigma = math.atan2(beta.real, alpha.real) if c_half > 0 else 0.0
    delta = math.atan2(alpha.imag, -beta.imag) if s_half > 0 else 0.0
    b = 2.0 * math.atan2(s_half, c_half)

    q1 = (sigma + delta) / 2.0
    q2 = (delta - sigma) / 2.0
    h = (delta - b / 2.0) / 2.0

    # Application order: the rightmost factor of Q(q1) H(h) Q(q2) is hit
    # by the light first.
    return PolarizationGadget(
        plates=(WavePlate(QWP, q2), WavePlate(HWP, h), WavePlate(QWP, q1)),
        global_phase=lam,
    )
