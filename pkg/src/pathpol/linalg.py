"""Dense complex linear algebra used by the decomposition and the backends.

Everything here works on plain ``numpy.ndarray`` matrices of dtype
complex128.  The two-mode rotation convention is fixed once, in
:func:`rotation_matrix`, and every other module builds on it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NonUnitaryError

TWO_PI = 2.0 * math.pi


def _as_square_matrix(mat: np.ndarray) -> np.ndarray:
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class RotationParams:
    """Parameters of one two-mode rotation acting on modes (m, m+1).

    theta is kept in the canonical range [0, pi/2]; phi is reduced
    modulo 2*pi.  Values outside the canonical theta range cannot be
    folded back without changing the matrix, so they are rejected.
    """

    m: int
    theta: float
    phi: float

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"mode index must be nonnegative, got {self.m}")
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("rotation angles must be finite")
        theta = float(self.theta)
        if -1e-12 <= theta < 0.0:
            theta = 0.0
        if math.pi / 2 < theta <= math.pi / 2 + 1e-12:
            theta = math.pi / 2
        if not 0.0 <= theta <= math.pi / 2:
            raise ValueError(f"theta={theta} outside canonical range [0, pi/2]")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    def to_json(self) -> dict:
        return {"m": self.m, "theta": self.theta, "phi": self.phi}

    @classmethod
    def from_json(cls, obj: dict) -> "RotationParams":
        return cls(m=int(obj["m"]), theta=float(obj["theta"]), phi=float(obj["phi"]))


def rotation_matrix(theta: float, phi: float) -> np.ndarray:
    """2x2 rotation with a tunable phase on the first row/column:

        [[exp(i*phi)*cos(theta), -sin(theta)],
         [exp(i*phi)*sin(theta),  cos(theta)]]
    """
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError("rotation angles must be finite")
    c, s = math.cos(theta), math.sin(theta)
    e = cmath.exp(1j * phi)
    return np.array([[e * c, -s], [e * s, c]], dtype=complex)


def embed_rotation(dim: int, params: RotationParams) -> np.ndarray:
    """Identity of size dim with rotation_matrix placed at modes (m, m+1)."""
    if params.m + 1 >= dim:
        raise IndexError(f"mode pair ({params.m}, {params.m + 1}) exceeds dim {dim}")
    out = np.eye(dim, dtype=complex)
    out[np.ix_([params.m, params.m + 1], [params.m, params.m + 1])] = rotation_matrix(
        params.theta, params.phi
    )
    return out


def apply_rotation_left(mat: np.ndarray, params: RotationParams) -> np.ndarray:
    """Return embed_rotation(dim, params) @ mat without forming the embedding."""
    out = np.array(mat, dtype=complex)
    block = rotation_matrix(params.theta, params.phi)
    rows = [params.m, params.m + 1]
    out[rows, :] = block @ out[rows, :]
    return out


def is_unitary(mat: np.ndarray, tol: float = 1e-10) -> bool:
    """True when ||M^dag M - I||_F <= tol."""
    arr = _as_square_matrix(mat)
    return unitarity_residual(arr) <= tol


def unitarity_residual(mat: np.ndarray) -> float:
    arr = _as_square_matrix(mat)
    eye = np.eye(arr.shape[0], dtype=complex)
    return float(np.linalg.norm(arr.conj().T @ arr - eye))


def require_unitary(mat: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    arr = _as_square_matrix(mat)
    residual = unitarity_residual(arr)
    if residual > tol:
        raise NonUnitaryError(
            f"matrix is not unitary: residual ||U^dag U - I||_F = {residual:.3e} > {tol:.1e}"
        )
    return arr


def project_to_unitary(mat: np.ndarray) -> np.ndarray:
    """Closest unitary in Frobenius norm (polar factor via SVD)."""
    arr = _as_square_matrix(mat)
    u, _, vh = np.linalg.svd(arr)
    return u @ vh


def distance_up_to_global_phase(a: np.ndarray, b: np.ndarray) -> float:
    """min over gamma of ||A - exp(i*gamma) B||_F.

    The minimizing phase is gamma = arg(tr(B^dag A)).  The norm is then
    evaluated directly at that phase; the expanded form
    sqrt(||A||^2 + ||B||^2 - 2|tr|) loses half the significant digits to
    cancellation when the matrices nearly agree.
    """
    am = _as_square_matrix(a)
    bm = _as_square_matrix(b)
    if am.shape != bm.shape:
        raise DimensionError(f"shape mismatch: {am.shape} vs {bm.shape}")
    overlap = complex(np.trace(bm.conj().T @ am))
    phase = cmath.phase(overlap) if overlap != 0 else 0.0
    return float(np.linalg.norm(am - cmath.exp(1j * phase) * bm))


def relative_global_phase(a: np.ndarray, b: np.ndarray) -> float:
    """Phase gamma minimizing ||A - exp(i*gamma) B||_F (0 when tr(B^dag A)=0)."""
    am = _as_square_matrix(a)
    bm = _as_square_matrix(b)
    if am.shape != bm.shape:
        raise DimensionError(f"shape mismatch: {am.shape} vs {bm.shape}")
    overlap = complex(np.trace(bm.conj().T @ am))
    if overlap == 0:
        return 0.0
    return cmath.phase(overlap)


def haar_unitary(dim: int, seed: int | np.random.Generator = 0) -> np.ndarray:
    """Haar-distributed random unitary via QR of a complex Ginibre matrix.

    The R-diagonal phases are divided out so the distribution is exactly
    Haar rather than QR-convention dependent.  Deterministic for a fixed
    integer seed.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of comparing a synthesized unitary against a target."""

    frobenius_error: float
    phase_invariant_error: float
    global_phase: float
    passed: bool
    tolerance: float = field(default=1e-9)

    def to_json(self) -> dict:
        return {
            "frobenius_error": self.frobenius_error,
            "phase_invariant_error": self.phase_invariant_error,
            "global_phase": self.global_phase,
            "pass": self.passed,
            "tolerance": self.tolerance,
        }


def compare_unitaries(
    produced: np.ndarray, target: np.ndarray, tol: float = 1e-9
) -> VerificationReport:
    """Verification report for produced vs target (phase-invariant pass)."""
    frob = float(np.linalg.norm(_as_square_matrix(produced) - _as_square_matrix(target)))
    phase_err = distance_up_to_global_phase(produced, target)
    gamma = relative_global_phase(produced, target)
    # Floating-point can leave the minimized distance a hair above the
    # plain norm; the invariant phase_err <= frob is exact math.
    phase_err = min(phase_err, frob)
    return VerificationReport(
        frobenius_error=frob,
        phase_invariant_error=phase_err,
        global_phase=gamma,
        passed=phase_err <= tol,
        tolerance=tol,
    )
