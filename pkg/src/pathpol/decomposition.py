"""Rectangular decomposition of an N x N unitary into two-mode rotations.

U factors as D * T_k * ... * T_1 where each T embeds a two-mode rotation
on adjacent modes and D is a diagonal of unit-modulus phases.  The
elimination alternates right-multiplications (nulling anti-diagonals that
start at the bottom-left corner) with left-multiplications, then sweeps
the left factors through the diagonal so only right-side rotations remain.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonUnitaryError
from .linalg import (
    TWO_PI,
    RotationParams,
    _as_square_matrix,
    apply_rotation_left,
    project_to_unitary,
    rotation_matrix,
    unitarity_residual,
)

# Entries at or below this magnitude are treated as already nulled.
_ZERO_CUTOFF = 1e-14


@dataclass(frozen=True)
class DecompositionPlan:
    """Ordered rotations plus trailing diagonal phases.

    rotations are listed in application order: rotations[0] acts first on
    an input state, i.e. it is the rightmost factor of the product.
    diagonal holds the phase angles of D (radians), applied last.
    """

    dim: int
    rotations: tuple[RotationParams, ...]
    diagonal: tuple[float, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.diagonal) != self.dim:
            raise ValueError(
                f"diagonal has {len(self.diagonal)} phases for dim {self.dim}"
            )
        for rot in self.rotations:
            if rot.m + 1 >= self.dim:
                raise ValueError(f"rotation on modes ({rot.m},{rot.m+1}) exceeds dim")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rotations": [r.to_json() for r in self.rotations],
            "diagonal": list(self.diagonal),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DecompositionPlan":
        return cls(
            dim=int(obj["dim"]),
            rotations=tuple(RotationParams.from_json(r) for r in obj["rotations"]),
            diagonal=tuple(float(x) for x in obj["diagonal"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "DecompositionPlan":
        return cls.from_json(json.loads(text))


def _right_null_params(a: complex, b: complex) -> tuple[float, float]:
    """Angles zeroing a row entry by mixing its column with the next one.

    Solves exp(-i*phi)*cos(theta)*a - sin(theta)*b = 0 with theta in
    [0, pi/2]; the sign/phase ends up folded into phi.
    """
    if abs(a) <= _ZERO_CUTOFF:
        return 0.0, 0.0
    theta = math.atan2(abs(a), abs(b))
    phi = (cmath.phase(a) - cmath.phase(b)) % TWO_PI if abs(b) > 0 else cmath.phase(a) % TWO_PI
    return theta, phi


def _left_null_params(a: complex, b: complex) -> tuple[float, float]:
    """Angles zeroing an entry by mixing its row with the one above.

    Solves exp(i*phi)*sin(theta)*a + cos(theta)*b = 0 for the lower row,
    where a sits in the upper row and b is the entry being nulled.
    """
    if abs(b) <= _ZERO_CUTOFF:
        return 0.0, 0.0
    theta = math.atan2(abs(b), abs(a))
    phi = (cmath.phase(b) - cmath.phase(a) + math.pi) % TWO_PI
    return theta, phi


def null_element_right(mat: np.ndarray, row: int, col: int) -> tuple[np.ndarray, RotationParams]:
    """Zero mat[row][col] by right-multiplying with an inverse rotation on
    columns (col, col+1).  Returns the updated matrix and the rotation.
    """
    arr = _as_square_matrix(mat).copy()
    n = arr.shape[0]
    if not 0 <= col < n - 1:
        raise IndexError(f"column pair ({col},{col+1}) out of range for dim {n}")
    if not 0 <= row < n:
        raise IndexError(f"row {row} out of range for dim {n}")
    theta, phi = _right_null_params(arr[row, col], arr[row, col + 1])
    params = RotationParams(m=col, theta=theta, phi=phi)
    _apply_inverse_right(arr, params)
    arr[row, col] = 0.0
    return arr, params


def null_element_left(mat: np.ndarray, row: int, col: int) -> tuple[np.ndarray, RotationParams]:
    """Zero mat[row][col] by left-multiplying with a rotation on rows
    (row-1, row).  Returns the updated matrix and the rotation.
    """
    arr = _as_square_matrix(mat).copy()
    n = arr.shape[0]
    if not 1 <= row < n:
        raise IndexError(f"row pair ({row-1},{row}) out of range for dim {n}")
    if not 0 <= col < n:
        raise IndexError(f"column {col} out of range for dim {n}")
    theta, phi = _left_null_params(arr[row - 1, col], arr[row, col])
    params = RotationParams(m=row - 1, theta=theta, phi=phi)
    _apply_forward_left(arr, params)
    arr[row, col] = 0.0
    return arr, params


def _apply_inverse_right(arr: np.ndarray, params: RotationParams) -> None:
    """In-place arr <- arr @ T^{-1} on columns (m, m+1)."""
    c, s = math.cos(params.theta), math.sin(params.theta)
    em = cmath.exp(-1j * params.phi)
    col0 = arr[:, params.m].copy()
    col1 = arr[:, params.m + 1]
    arr[:, params.m] = em * c * col0 - s * col1
    arr[:, params.m + 1] = em * s * col0 + c * col1


def _apply_forward_left(arr: np.ndarray, params: RotationParams) -> None:
    """In-place arr <- T @ arr on rows (m, m+1)."""
    c, s = math.cos(params.theta), math.sin(params.theta)
    ep = cmath.exp(1j * params.phi)
    row0 = arr[params.m, :].copy()
    row1 = arr[params.m + 1, :]
    arr[params.m, :] = ep * c * row0 - s * row1
    arr[params.m + 1, :] = ep * s * row0 + c * row1


def commute_through_diagonal(
    diagonal: tuple[float, ...], params: RotationParams
) -> tuple[tuple[float, ...], RotationParams]:
    """Rewrite T^{-1}(params) * D as D' * T(params') on the same mode pair.

    Only the phase at mode m changes; theta is preserved so the rotation
    stays in canonical range.  Exact identities on the 2x2 block:

        d1' = -exp(-i*phi) * d2,   d2' = d2,   phi' = pi + a1 - a2

    with d = exp(i*a).  Note the commuted factor comes out as a forward
    rotation: that is the form the final product D * prod(T) needs.
    """
    m = params.m
    if m + 1 >= len(diagonal):
        raise IndexError(f"mode pair ({m},{m+1}) exceeds diagonal of length {len(diagonal)}")
    a1, a2 = diagonal[m], diagonal[m + 1]
    new_diag = list(diagonal)
    if params.theta == 0.0:
        # T(0, phi) is itself diagonal, so absorb it entirely and keep the
        # emitted rotation a plain identity.  This keeps plans of diagonal
        # inputs free of spurious compensating pi phases.
        new_diag[m] = (a1 - params.phi) % TWO_PI
        return tuple(new_diag), RotationParams(m=m, theta=0.0, phi=0.0)
    new_diag[m] = (math.pi - params.phi + a2) % TWO_PI
    new_phi = (math.pi + a1 - a2) % TWO_PI
    return tuple(new_diag), RotationParams(m=m, theta=params.theta, phi=new_phi)


def decompose(mat: np.ndarray, tol: float = 1e-10) -> DecompositionPlan:
    """Factor a unitary into the rectangular rotation mesh.

    Inputs with unitarity residual in (tol, 1e-8] are projected to the
    nearest unitary first (recorded in plan.metadata); beyond 1e-8 the
    input is rejected.  Every one of the N(N-1)/2 eliminations is recorded
    even when the entry is already zero, so the mesh is always full.
    """
    arr = _as_square_matrix(mat)
    n = arr.shape[0]
    residual = unitarity_residual(arr)
    metadata: dict = {}
    if residual > 1e-8:
        raise NonUnitaryError(
            f"matrix is not unitary: residual ||U^dag U - I||_F = {residual:.3e} > 1e-08"
        )
    if residual > tol:
        arr = project_to_unitary(arr)
        metadata = {"reunitarized": True, "input_residual": residual}

    work = arr.astype(complex, copy=True)
    rights: list[RotationParams] = []
    lefts: list[RotationParams] = []

    for i in range(1, n):
        if i % 2 == 1:
            # Null an anti-diagonal from the bottom-left corner upward by
            # mixing column pairs on the right.
            for j in range(i):
                row, col = n - 1 - j, i - 1 - j
                theta, phi = _right_null_params(work[row, col], work[row, col + 1])
                params = RotationParams(m=col, theta=theta, phi=phi)
                _apply_inverse_right(work, params)
                work[row, col] = 0.0
                rights.append(params)
        else:
            # Null the next anti-diagonal by mixing row pairs on the left.
            for j in range(1, i + 1):
                row, col = n + j - i - 1, j - 1
                theta, phi = _left_null_params(work[row - 1, col], work[row, col])
                params = RotationParams(m=row - 1, theta=theta, phi=phi)
                _apply_forward_left(work, params)
                work[row, col] = 0.0
                lefts.append(params)

    # A unitary with zero sub-diagonal is diagonal.
    diagonal = tuple(float(cmath.phase(work[k, k])) % TWO_PI for k in range(n))

    # U = L1^-1 ... Lq^-1 D Rp ... R1; push each left factor through D,
    # innermost (last applied) first, turning it into a forward rotation.
    commuted: list[RotationParams] = []
    for params in reversed(lefts):
        diagonal, forward = commute_through_diagonal(diagonal, params)
        commuted.append(forward)

    return DecompositionPlan(
        dim=n,
        rotations=tuple(rights + commuted),
        diagonal=diagonal,
        metadata=metadata,
    )


def reconstruct(plan: DecompositionPlan) -> np.ndarray:
    """Multiply the plan back out: D * T_last * ... * T_first."""
    out = np.eye(plan.dim, dtype=complex)
    for params in plan.rotations:
        out = apply_rotation_left(out, params)
    phases = np.exp(1j * np.asarray(plan.diagonal))
    return phases[:, None] * out


def rotation_count(dim: int) -> int:
    """Size of the full mesh for dimension dim."""
    return dim * (dim - 1) // 2
