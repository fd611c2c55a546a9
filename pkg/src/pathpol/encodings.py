"""Maps between logical modes and physical (path, polarization) labels.

Two encodings are supported for N = 2n logical modes on n paths:

* hybrid: consecutive logical pairs share a path, with the polarization
  order flipping path by path -- (h, v) on even paths, (v, h) on odd
  paths -- so neighbouring logical modes on different paths always share
  a polarization.
* fullpol: logical (2k, 2k+1) sit on path k as (v, h).

The reference physical ordering used for permutation matrices is
path-major with v before h inside each path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

POL_H = "h"
POL_V = "v"

HYBRID = "hybrid"
FULLPOL = "fullpol"


@dataclass(frozen=True)
class ModeEncoding:
    """Bijection logical mode -> (path, pol) for N = 2n modes on n paths."""

    kind: str
    n: int
    assignment: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        if len(self.assignment) != 2 * self.n:
            raise ValueError("assignment must cover all 2n logical modes")
        if len(set(self.assignment)) != len(self.assignment):
            raise ValueError("assignment is not a bijection")

    @property
    def dim(self) -> int:
        return 2 * self.n

    def path_pol(self, logical: int) -> tuple[int, str]:
        return self.assignment[logical]

    def logical(self, path: int, pol: str) -> int:
        return self._inverse()[(path, pol)]

    def _inverse(self) -> dict[tuple[int, str], int]:
        return {pp: i for i, pp in enumerate(self.assignment)}

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "map": [
                {"logical": i, "path": p, "pol": s}
                for i, (p, s) in enumerate(self.assignment)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ModeEncoding":
        n = int(obj["n"])
        assignment: list[tuple[int, str]] = [(-1, "")] * (2 * n)
        for entry in obj["map"]:
            assignment[int(entry["logical"])] = (int(entry["path"]), str(entry["pol"]))
        return cls(kind=str(obj["kind"]), n=n, assignment=tuple(assignment))


def hybrid_encoding(n: int) -> ModeEncoding:
    """Logical (2k, 2k+1) on path k; order (h, v) for even k, (v, h) for odd."""
    if n < 1:
        raise ValueError(f"path count must be >= 1, got {n}")
    assignment: list[tuple[int, str]] = []
    for k in range(n):
        first, second = (POL_H, POL_V) if k % 2 == 0 else (POL_V, POL_H)
        assignment.append((k, first))
        assignment.append((k, second))
    return ModeEncoding(kind=HYBRID, n=n, assignment=tuple(assignment))


def fullpol_encoding(n: int) -> ModeEncoding:
    """Logical (2k, 2k+1) on path k as (v, h)."""
    if n < 1:
        raise ValueError(f"path count must be >= 1, got {n}")
    assignment: list[tuple[int, str]] = []
    for k in range(n):
        assignment.append((k, POL_V))
        assignment.append((k, POL_H))
    return ModeEncoding(kind=FULLPOL, n=n, assignment=tuple(assignment))


def reference_index(path: int, pol: str) -> int:
    """Index in the path-major reference ordering (v before h)."""
    return 2 * path + (0 if pol == POL_V else 1)


def permutation_matrix(encoding: ModeEncoding) -> np.ndarray:
    """P with P[reference_index(path,pol), logical] = 1.

    Columns follow logical order, rows the path-major reference order, so
    P maps logical-basis vectors onto their physical slots.  For the
    fullpol encoding this is the identity.
    """
    dim = encoding.dim
    out = np.zeros((dim, dim))
    for logical, (path, pol) in enumerate(encoding.assignment):
        out[reference_index(path, pol), logical] = 1.0
    return out
