"""Expand netlist elements to full-space unitaries, compose, verify, lose.

Physical basis conventions:

* Path-only netlists (architecture "mzi") use one mode per rail.
* Polarized netlists use two modes per rail, index 2*rail for vertical and
  2*rail + 1 for horizontal.

``netlist_unitary`` composes all stages on the physical space and projects
onto the logical modes given by the netlist encoding (and, when present,
the output assignment for circuits that end in a shifted rail layout).

The loss model is scalar power transmission per element.  ``transmission``
charges each interferometric stage its calibrated per-layer budget, the
same for every mode, so the worst case reproduces the closed-form loss of
each architecture at every size, including the degenerate single-pair mesh.
``lossy_transfer_matrix`` instead folds per-element amplitude factors into
the physical composition; its largest singular value never exceeds one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .elements import (
    MZI,
    PBS,
    PDBS,
    BalancedBS,
    CombinedRotation,
    DiagonalPhases,
    Netlist,
    PhaseShifter,
    Stage,
    WavePlateElement,
)
from .encodings import POL_V, ModeEncoding
from .errors import DimensionError, NetlistError
from .linalg import VerificationReport, compare_unitaries, rotation_matrix
from .waveplates import gadget_unitary, jones

_SQRT_HALF = 2.0 ** -0.5
_HADAMARD = np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]])


def is_polarized(architecture: str) -> bool:
    return architecture != "mzi"


def physical_dim(n_rails: int, polarized: bool) -> int:
    return 2 * n_rails if polarized else n_rails


def _pol_index(rail: int, pol: str) -> int:
    return 2 * rail + (0 if pol == POL_V else 1)


def _embed_two(dim: int, i: int, j: int, block: np.ndarray) -> np.ndarray:
    out = np.eye(dim, dtype=complex)
    out[i, i] = block[0, 0]
    out[i, j] = block[0, 1]
    out[j, i] = block[1, 0]
    out[j, j] = block[1, 1]
    return out


def _jones_block_vfirst(mat: np.ndarray) -> np.ndarray:
    """Reorder a Jones matrix from (h, v) to the physical (v, h) order."""
    return np.array([[mat[1, 1], mat[1, 0]], [mat[0, 1], mat[0, 0]]], dtype=complex)


def element_unitary(
    elem,
    n_rails: int,
    polarized: bool,
    encoding: Optional[ModeEncoding] = None,
) -> np.ndarray:
    """Full-space unitary of one element; identity off its touched modes."""
    for path in elem.touched_paths():
        if path >= n_rails:
            raise NetlistError(f"element touches path {path}, netlist has {n_rails} rails")
    dim = physical_dim(n_rails, polarized)
    if isinstance(elem, MZI):
        block = rotation_matrix(elem.theta, elem.phi)
        p, q = elem.paths
        if not polarized:
            return _embed_two(dim, p, q, block)
        out = _embed_two(dim, 2 * p, 2 * q, block)
        return _embed_two(dim, 2 * p + 1, 2 * q + 1, block) @ out
    if isinstance(elem, BalancedBS):
        p, q = elem.paths
        if not polarized:
            return _embed_two(dim, p, q, _HADAMARD)
        out = _embed_two(dim, 2 * p, 2 * q, _HADAMARD)
        return _embed_two(dim, 2 * p + 1, 2 * q + 1, _HADAMARD) @ out
    if isinstance(elem, PhaseShifter):
        out = np.eye(dim, dtype=complex)
        factor = np.exp(1j * elem.phi)
        if not polarized:
            if elem.pol is not None:
                raise NetlistError("polarization-resolved phase shifter on a path-only netlist")
            out[elem.path, elem.path] = factor
            return out
        if elem.pol is None:
            out[2 * elem.path, 2 * elem.path] = factor
            out[2 * elem.path + 1, 2 * elem.path + 1] = factor
        else:
            idx = _pol_index(elem.path, elem.pol)
            out[idx, idx] = factor
        return out
    if isinstance(elem, WavePlateElement):
        if not polarized:
            raise NetlistError("wave plate on a path-only netlist")
        block = _jones_block_vfirst(jones(elem.plate))
        return _embed_two(dim, 2 * elem.path, 2 * elem.path + 1, block)
    if isinstance(elem, CombinedRotation):
        if not polarized:
            raise NetlistError("polarization gadget on a path-only netlist")
        block = _jones_block_vfirst(gadget_unitary(elem.gadget, exact_phase=True))
        return _embed_two(dim, 2 * elem.path, 2 * elem.path + 1, block)
    if isinstance(elem, PDBS):
        if not polarized:
            raise NetlistError("polarization-dependent splitter on a path-only netlist")
        p, q = elem.paths
        block = rotation_matrix(elem.theta, elem.phi)
        return _embed_two(dim, _pol_index(p, elem.active_pol), _pol_index(q, elem.active_pol), block)
    if isinstance(elem, PBS):
        if not polarized:
            raise NetlistError("polarizing splitter on a path-only netlist")
        p, q = elem.paths
        out = np.eye(dim, dtype=complex)
        i, j = 2 * p, 2 * q
        out[i, i] = out[j, j] = 0.0
        out[i, j] = out[j, i] = 1.0
        return out
    if isinstance(elem, DiagonalPhases):
        out = np.eye(dim, dtype=complex)
        if not polarized:
            if len(elem.phases) != n_rails:
                raise NetlistError(
                    f"diagonal carries {len(elem.phases)} phases for {n_rails} paths"
                )
            for j, phase in enumerate(elem.phases):
                out[j, j] = np.exp(1j * phase)
            return out
        if encoding is None or len(elem.phases) != encoding.dim:
            raise NetlistError("per-mode diagonal on a polarized netlist needs a matching encoding")
        for j, phase in enumerate(elem.phases):
            idx = _pol_index(*encoding.path_pol(j))
            out[idx, idx] = np.exp(1j * phase)
        return out
    raise NetlistError(f"unknown element kind {type(elem).__name__}")


def stage_unitary(
    stage: Stage,
    n_rails: int,
    polarized: bool,
    encoding: Optional[ModeEncoding] = None,
) -> np.ndarray:
    dim = physical_dim(n_rails, polarized)
    out = np.eye(dim, dtype=complex)
    for elem in stage.elements:
        out = element_unitary(elem, n_rails, polarized, encoding) @ out
    return out


def physical_unitary(nl: Netlist) -> np.ndarray:
    """Product of all stage unitaries on the physical mode space."""
    polarized = is_polarized(nl.architecture)
    out = np.eye(physical_dim(nl.n_rails, polarized), dtype=complex)
    for stage in nl.stages:
        out = stage_unitary(stage, nl.n_rails, polarized, nl.encoding) @ out
    return out


def _logical_indices(nl: Netlist) -> tuple:
    polarized = is_polarized(nl.architecture)
    if not polarized:
        idx = list(range(nl.dim))
        return idx, idx
    if nl.encoding is None:
        raise NetlistError("polarized netlist lacks a mode encoding")
    in_idx = [_pol_index(*nl.encoding.path_pol(j)) for j in range(nl.dim)]
    if nl.output_assignment is None:
        return in_idx, in_idx
    out_idx = [_pol_index(rail, pol) for rail, pol in nl.output_assignment]
    return in_idx, out_idx


def netlist_unitary(nl: Netlist) -> np.ndarray:
    """Logical-mode unitary realized by the netlist.

    Raises ``NetlistError`` if the composed circuit leaks light out of the
    logical modes (the projected block would not be unitary).
    """
    phys = physical_unitary(nl)
    in_idx, out_idx = _logical_indices(nl)
    block = phys[np.ix_(out_idx, in_idx)]
    residual = np.linalg.norm(block.conj().T @ block - np.eye(nl.dim), ord=2)
    if residual > 1e-11:
        raise NetlistError(
            f"netlist does not preserve the logical modes (unitarity residual {residual:.3e})"
        )
    return block


def verify(nl: Netlist, target, tol: float = 1e-9) -> VerificationReport:
    target = np.asarray(target, dtype=complex)
    if target.shape != (nl.dim, nl.dim):
        raise DimensionError(
            f"target shape {target.shape} does not match netlist dimension {nl.dim}"
        )
    return compare_unitaries(netlist_unitary(nl), target, tol=tol)


@dataclass(frozen=True)
class LossModel:
    """Scalar power transmission per element kind, each in (0, 1].

    ``eta_b``: balanced beam splitter; ``eta_p``: polarizing beam splitter;
    ``eta_w``: wave plate; ``eta_ph_tilde``: path phase shifter in the MZI
    mesh; ``eta_ph``: phase element inside a polarization-dependent
    splitter.
    """

    eta_b: float = 1.0
    eta_p: float = 1.0
    eta_w: float = 1.0
    eta_ph_tilde: float = 1.0
    eta_ph: float = 1.0

    def __post_init__(self):
        for name in ("eta_b", "eta_p", "eta_w", "eta_ph_tilde", "eta_ph"):
            value = float(getattr(self, name))
            if not 0.0 < value <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {value}")
            object.__setattr__(self, name, value)
        if self.eta_ph_tilde <= self.eta_ph:
            warnings.warn("Generally, we have eta_ph_tilde > eta_ph", UserWarning, stacklevel=2)

    def to_json(self) -> dict:
        return {
            "eta_b": self.eta_b,
            "eta_p": self.eta_p,
            "eta_w": self.eta_w,
            "eta_ph_tilde": self.eta_ph_tilde,
            "eta_ph": self.eta_ph,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LossModel":
        return cls(**{k: float(v) for k, v in data.items()})


@dataclass(frozen=True)
class TransmissionReport:
    worst_case: float
    per_mode: tuple

    def to_json(self) -> dict:
        return {"worst_case": self.worst_case, "per_mode": list(self.per_mode)}


def _stage_budget(nl: Netlist, stage: Stage, loss: LossModel) -> float:
    """Power transmission charged for one stage under per-layer accounting."""
    if stage.role == "diagonal":
        return 1.0
    if nl.architecture == "mzi":
        if stage.role == "rotation":
            return (loss.eta_b * loss.eta_ph_tilde) ** 2
        return 1.0
    if nl.architecture == "hybrid":
        if stage.role == "rotation":
            return loss.eta_w ** 3
        if stage.role == "pdbs":
            return (loss.eta_b * loss.eta_ph) ** 2
        return 1.0
    if nl.architecture == "fullpol":
        if stage.role == "rotation" and stage.depth_group is None:
            return loss.eta_w ** 3
        return 1.0
    return 1.0


def transmission(nl: Netlist, loss: LossModel) -> TransmissionReport:
    """Per-mode and worst-case power transmission through the netlist.

    Every interferometric layer charges its calibrated budget to every
    mode: an MZI column costs two splitters and two shifters, a gadget
    column three plates, a PDBS sub-stage two splitters and two phase
    elements, and a full X-rotation-X block costs the two X traversals
    plus one gadget.  Budgets are uniform across modes, so the worst case
    equals the per-mode value and matches the closed-form architecture
    loss at every size.
    """
    total = 1.0
    for stage in nl.stages:
        total *= _stage_budget(nl, stage, loss)
    if nl.architecture == "fullpol":
        groups = {s.depth_group for s in nl.stages if s.depth_group is not None}
        total *= (loss.eta_p ** 2 * loss.eta_w ** 5) ** len(groups)
    return TransmissionReport(worst_case=total, per_mode=(total,) * nl.dim)


_ELEMENT_LOSS = {
    MZI: lambda m: (m.eta_b * m.eta_ph_tilde) ** 2,
    BalancedBS: lambda m: m.eta_b,
    PhaseShifter: lambda m: m.eta_ph_tilde,
    WavePlateElement: lambda m: m.eta_w,
    CombinedRotation: lambda m: m.eta_w ** 3,
    PDBS: lambda m: (m.eta_b * m.eta_ph) ** 2,
    PBS: lambda m: m.eta_p,
    DiagonalPhases: lambda m: m.eta_ph_tilde,
}


def _touched_indices(elem, polarized: bool, n_rails: int, encoding) -> list:
    if not polarized:
        return sorted(elem.touched_paths())
    if isinstance(elem, PhaseShifter) and elem.pol is not None:
        return [_pol_index(elem.path, elem.pol)]
    if isinstance(elem, PDBS):
        return [_pol_index(p, elem.active_pol) for p in elem.paths]
    if isinstance(elem, PBS):
        return [2 * p for p in elem.paths]
    if isinstance(elem, DiagonalPhases) and encoding is not None:
        return [_pol_index(*encoding.path_pol(j)) for j in range(len(elem.phases))]
    out = []
    for path in sorted(elem.touched_paths()):
        out.extend((2 * path, 2 * path + 1))
    return out


def lossy_transfer_matrix(nl: Netlist, loss: LossModel) -> np.ndarray:
    """Physical transfer matrix with per-element amplitude loss folded in.

    Each element is followed by an amplitude factor sqrt(eta) on the modes
    it touches.  The result is subunitary: its largest singular value is
    at most one.
    """
    polarized = is_polarized(nl.architecture)
    dim = physical_dim(nl.n_rails, polarized)
    out = np.eye(dim, dtype=complex)
    for stage in nl.stages:
        for elem in stage.elements:
            mat = element_unitary(elem, nl.n_rails, polarized, nl.encoding)
            eta = _ELEMENT_LOSS[type(elem)](loss)
            scale = np.ones(dim)
            for idx in _touched_indices(elem, polarized, nl.n_rails, nl.encoding):
                scale[idx] = np.sqrt(eta)
            out = (scale[:, None] * mat) @ out
    return out
