"""Pack plan rotations into alternating even/odd layer columns.

A column of kind "O1" holds rotations on even mode pairs (0,1), (2,3), ...
and a column of kind "O2" holds odd pairs (1,2), (3,4), ...  Columns
strictly alternate starting with O1, and rotations within a column act on
disjoint mode pairs, so replaying the columns in order reproduces the plan
product exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .decomposition import DecompositionPlan
from .errors import SchedulingError
from .linalg import RotationParams, apply_rotation_left

KIND_EVEN = "O1"
KIND_ODD = "O2"


def column_kind(index: int) -> str:
    return KIND_EVEN if index % 2 == 0 else KIND_ODD


@dataclass(frozen=True)
class LayerColumn:
    kind: str
    ops: tuple[RotationParams, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "ops": [r.to_json() for r in self.ops]}

    @classmethod
    def from_json(cls, obj: dict) -> "LayerColumn":
        return cls(
            kind=str(obj["kind"]),
            ops=tuple(RotationParams.from_json(r) for r in obj["ops"]),
        )


@dataclass(frozen=True)
class LayerSchedule:
    """Columns in light-propagation order plus the trailing diagonal.

    The diagonal is carried along so backends can emit the final phase
    stage without needing the originating plan.
    """

    dim: int
    columns: tuple[LayerColumn, ...]
    diagonal: tuple[float, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "columns": [c.to_json() for c in self.columns],
            "diagonal": list(self.diagonal),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LayerSchedule":
        return cls(
            dim=int(obj["dim"]),
            columns=tuple(LayerColumn.from_json(c) for c in obj["columns"]),
            diagonal=tuple(float(x) for x in obj.get("diagonal", [])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "LayerSchedule":
        return cls.from_json(json.loads(text))


def expected_column_sizes(dim: int) -> list[int]:
    """Column sizes of the full rectangle, in order.

    Even dim 2n: n columns of n ops alternating with n columns of n-1 ops
    (the empty odd column of dim 2 is dropped).  Odd dim: dim columns of
    (dim-1)/2 ops each.
    """
    if dim < 2:
        return []
    if dim == 2:
        return [1]
    if dim % 2 == 0:
        half = dim // 2
        return [half if i % 2 == 0 else half - 1 for i in range(dim)]
    return [(dim - 1) // 2] * dim


def schedule(plan: DecompositionPlan) -> LayerSchedule:
    """Greedy earliest-column packing of the plan's rotation order.

    Each rotation lands in the first column after its operands' last use
    whose parity matches the mode pair.  Rotations that share a mode keep
    their relative order, so only exactly-commuting swaps occur.  A plan
    whose order cannot fill the rectangle is rejected.
    """
    sizes = expected_column_sizes(plan.dim)
    n_columns = len(sizes)
    buckets: list[list[RotationParams]] = [[] for _ in range(n_columns)]
    frontier = [-1] * plan.dim

    for index, rot in enumerate(plan.rotations):
        earliest = max(frontier[rot.m], frontier[rot.m + 1]) + 1
        col = earliest if earliest % 2 == rot.m % 2 else earliest + 1
        if col >= n_columns:
            raise SchedulingError(
                f"rotation {index} on modes ({rot.m},{rot.m+1}) does not fit the "
                f"{n_columns}-column rectangle; plan order violates adjacency"
            )
        buckets[col].append(rot)
        frontier[rot.m] = col
        frontier[rot.m + 1] = col

    for col, (bucket, size) in enumerate(zip(buckets, sizes)):
        if len(bucket) != size:
            raise SchedulingError(
                f"column {col} holds {len(bucket)} rotations, expected {size}; "
                "plan order violates adjacency"
            )

    columns = tuple(
        LayerColumn(kind=column_kind(i), ops=tuple(bucket))
        for i, bucket in enumerate(buckets)
    )
    return LayerSchedule(dim=plan.dim, columns=columns, diagonal=plan.diagonal)


def validate(sched: LayerSchedule) -> list[str]:
    """Structural check; returns a list of violations (empty when valid)."""
    problems: list[str] = []
    for i, col in enumerate(sched.columns):
        if col.kind not in (KIND_EVEN, KIND_ODD):
            problems.append(f"column {i}: unknown kind {col.kind!r}")
            continue
        if col.kind != column_kind(i):
            problems.append(
                f"column {i}: kind {col.kind} breaks the alternation starting at {KIND_EVEN}"
            )
        if not col.ops:
            problems.append(f"column {i}: empty column")
        want_parity = 0 if col.kind == KIND_EVEN else 1
        seen: set[int] = set()
        for rot in col.ops:
            if rot.m % 2 != want_parity:
                problems.append(
                    f"column {i}: rotation on modes ({rot.m},{rot.m+1}) has wrong parity"
                )
            if rot.m + 1 >= sched.dim:
                problems.append(f"column {i}: modes ({rot.m},{rot.m+1}) exceed dim {sched.dim}")
            if rot.m in seen or rot.m + 1 in seen:
                problems.append(f"column {i}: overlapping rotations at mode {rot.m}")
            seen.update((rot.m, rot.m + 1))
    if len(sched.diagonal) not in (0, sched.dim):
        problems.append(
            f"diagonal carries {len(sched.diagonal)} phases for dim {sched.dim}"
        )
    return problems


def schedule_unitary(sched: LayerSchedule) -> np.ndarray:
    """Replay columns in order (then the diagonal, when present)."""
    out = np.eye(sched.dim, dtype=complex)
    for col in sched.columns:
        for rot in col.ops:
            out = apply_rotation_left(out, rot)
    if sched.diagonal:
        phases = np.exp(1j * np.asarray(sched.diagonal))
        out = phases[:, None] * out
    return out
