"""Netlist data model: optical elements, stages, and whole-circuit containers.

A netlist is an ordered list of stages.  Each stage holds elements that act
on disjoint paths, so the stage unitary is simply the product of the element
embeddings in any order.  Stages are applied left to right: stage 0 touches
the light first.

Element fields follow the hardware conventions used across the package:

* ``MZI`` carries the rotation angles ``theta`` and ``phi`` of the two-mode
  rotation it realizes, not raw modulator settings.  The exact settings are
  derived in :mod:`pathpol.compilers`.
* ``PhaseShifter`` is polarization-resolved when ``pol`` is ``"h"`` or
  ``"v"``; with ``pol=None`` it shifts the whole path.
* ``PDBS`` is a polarization-dependent beam splitter: it applies a two-path
  rotation to one polarization component and leaves the other alone.
* ``PBS`` is a polarizing beam splitter that transmits horizontal and
  reflects vertical light between two paths.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import NetlistError, ParseError
from .encodings import POL_H, POL_V, ModeEncoding
from .waveplates import PolarizationGadget, WavePlate

NETLIST_VERSION = "netlist-v1"

_TWO_PI = 6.283185307179586476925287


def _check_path(path: int) -> int:
    if not isinstance(path, int) or isinstance(path, bool) or path < 0:
        raise NetlistError(f"path index must be a non-negative integer, got {path!r}")
    return path


def _check_pair(paths) -> tuple:
    p, q = paths
    _check_path(p)
    _check_path(q)
    if p == q:
        raise NetlistError(f"two-path element needs distinct paths, got ({p}, {q})")
    return (p, q)


@dataclass(frozen=True)
class MZI:
    """Mach-Zehnder interferometer realizing a two-mode rotation.

    Acts on the ordered pair ``paths``; ``theta`` and ``phi`` parametrize the
    rotation matrix the device implements (see ``rotation_matrix``).
    """

    paths: tuple
    theta: float
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "paths", _check_pair(self.paths))

    def touched_paths(self):
        return set(self.paths)

    def to_json(self) -> dict:
        return {
            "variant": "mzi",
            "paths": list(self.paths),
            "theta": float(self.theta),
            "phi": float(self.phi),
        }


@dataclass(frozen=True)
class BalancedBS:
    """50:50 beam splitter between two paths."""

    paths: tuple

    def __post_init__(self):
        object.__setattr__(self, "paths", _check_pair(self.paths))

    def touched_paths(self):
        return set(self.paths)

    def to_json(self) -> dict:
        return {"variant": "bs", "paths": list(self.paths)}


@dataclass(frozen=True)
class PhaseShifter:
    """Phase shift on one path, optionally restricted to one polarization."""

    path: int
    phi: float
    pol: Optional[str] = None

    def __post_init__(self):
        _check_path(self.path)
        if self.pol not in (None, POL_H, POL_V):
            raise NetlistError(f"phase shifter polarization must be 'h', 'v' or None, got {self.pol!r}")
        object.__setattr__(self, "phi", float(self.phi) % _TWO_PI)

    def touched_paths(self):
        return {self.path}

    def to_json(self) -> dict:
        return {"variant": "phase_shifter", "path": self.path, "phi": float(self.phi), "pol": self.pol}


@dataclass(frozen=True)
class WavePlateElement:
    """A single wave plate in one path."""

    path: int
    plate: WavePlate

    def __post_init__(self):
        _check_path(self.path)

    def touched_paths(self):
        return {self.path}

    def to_json(self) -> dict:
        return {"variant": "waveplate", "path": self.path, **self.plate.to_json()}


@dataclass(frozen=True)
class CombinedRotation:
    """QWP-HWP-QWP gadget realizing an arbitrary polarization rotation."""

    path: int
    gadget: PolarizationGadget

    def __post_init__(self):
        _check_path(self.path)

    def touched_paths(self):
        return {self.path}

    def to_json(self) -> dict:
        return {"variant": "combined", "path": self.path, **self.gadget.to_json()}


@dataclass(frozen=True)
class PDBS:
    """Polarization-dependent beam splitter pair acting between two paths.

    Applies the two-mode rotation ``(theta, phi)`` to the ``active_pol``
    components of the two paths and leaves the other polarization alone.
    """

    paths: tuple
    active_pol: str
    theta: float
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "paths", _check_pair(self.paths))
        if self.active_pol not in (POL_H, POL_V):
            raise NetlistError(f"PDBS active polarization must be 'h' or 'v', got {self.active_pol!r}")

    def touched_paths(self):
        return set(self.paths)

    def to_json(self) -> dict:
        return {
            "variant": "pdbs",
            "paths": list(self.paths),
            "active_pol": self.active_pol,
            "theta": float(self.theta),
            "phi": float(self.phi),
        }


@dataclass(frozen=True)
class PBS:
    """Polarizing beam splitter: transmits h, swaps v between two paths."""

    paths: tuple

    def __post_init__(self):
        object.__setattr__(self, "paths", _check_pair(self.paths))

    def touched_paths(self):
        return set(self.paths)

    def to_json(self) -> dict:
        return {"variant": "pbs", "paths": list(self.paths)}


@dataclass(frozen=True)
class DiagonalPhases:
    """Per-mode output phases, one per logical mode."""

    phases: tuple

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(float(p) % _TWO_PI for p in self.phases))

    def touched_paths(self):
        return set(range(len(self.phases)))

    def to_json(self) -> dict:
        return {"variant": "diagonal", "phases": [float(p) for p in self.phases]}


ELEMENT_TYPES = (MZI, BalancedBS, PhaseShifter, WavePlateElement, CombinedRotation, PDBS, PBS, DiagonalPhases)


def element_from_json(data: dict):
    """Rebuild one element from its JSON form.

    Raises ``NetlistError`` for unknown variants or malformed fields.
    """
    try:
        variant = data["variant"]
    except (TypeError, KeyError) as exc:
        raise NetlistError(f"element record lacks a variant: {data!r}") from exc
    try:
        if variant == "mzi":
            return MZI(paths=tuple(data["paths"]), theta=float(data["theta"]), phi=float(data["phi"]))
        if variant == "bs":
            return BalancedBS(paths=tuple(data["paths"]))
        if variant == "phase_shifter":
            return PhaseShifter(path=int(data["path"]), phi=float(data["phi"]), pol=data.get("pol"))
        if variant == "waveplate":
            return WavePlateElement(
                path=int(data["path"]),
                plate=WavePlate(kind=data["kind"], orientation=float(data["orientation"])),
            )
        if variant == "combined":
            return CombinedRotation(
                path=int(data["path"]),
                gadget=PolarizationGadget.from_json(data),
            )
        if variant == "pdbs":
            return PDBS(
                paths=tuple(data["paths"]),
                active_pol=data["active_pol"],
                theta=float(data["theta"]),
                phi=float(data["phi"]),
            )
        if variant == "pbs":
            return PBS(paths=tuple(data["paths"]))
        if variant == "diagonal":
            return DiagonalPhases(phases=tuple(data["phases"]))
    except NetlistError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise NetlistError(f"malformed {variant!r} element: {data!r}") from exc
    raise NetlistError(f"unknown element variant {variant!r}")


@dataclass(frozen=True)
class Stage:
    """One column of simultaneously placed elements on disjoint paths.

    ``role`` tags what the stage implements ("rotation", "x", "x_dagger",
    "diagonal", ...).  ``depth_group`` groups stages that share one slot of
    optical depth; ``None`` leaves the stage out of the depth count.
    """

    elements: tuple
    role: str = "rotation"
    depth_group: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        seen = set()
        for elem in self.elements:
            touched = elem.touched_paths()
            if touched & seen:
                raise NetlistError(f"stage elements overlap on paths {sorted(touched & seen)}")
            seen |= touched

    def touched_paths(self):
        out = set()
        for elem in self.elements:
            out |= elem.touched_paths()
        return out

    def to_json(self) -> list:
        return [elem.to_json() for elem in self.elements]


@dataclass(frozen=True)
class Netlist:
    """A full circuit: stages plus the logical-mode encoding bookkeeping.

    ``architecture`` is one of ``"mzi"``, ``"hybrid"``, ``"fullpol"``.
    ``dim`` is the size of the compiled unitary; ``n_rails`` the number of
    physical paths, which exceeds ``dim``-implied needs when ancilla rails
    are present.  ``encoding`` is ``None`` for the path-only architecture.
    ``output_assignment`` optionally records where each logical mode exits
    when the circuit ends in a different encoding than it starts with (used
    by the standalone X-gate fragment).
    """

    architecture: str
    dim: int
    n_rails: int
    stages: tuple
    encoding: Optional[ModeEncoding] = None
    output_assignment: Optional[tuple] = None

    def __post_init__(self):
        if self.architecture not in ("mzi", "hybrid", "fullpol"):
            raise NetlistError(f"unknown architecture {self.architecture!r}")
        if self.dim < 1:
            raise NetlistError(f"netlist dimension must be positive, got {self.dim}")
        if self.n_rails < 1:
            raise NetlistError(f"rail count must be positive, got {self.n_rails}")
        object.__setattr__(self, "stages", tuple(self.stages))
        for idx, stage in enumerate(self.stages):
            bad = [p for p in stage.touched_paths() if p >= self.n_rails]
            if bad:
                raise NetlistError(f"stage {idx} touches unknown paths {sorted(bad)} (have {self.n_rails} rails)")
        if self.output_assignment is not None:
            object.__setattr__(
                self,
                "output_assignment",
                tuple((int(p), str(pol)) for p, pol in self.output_assignment),
            )

    @property
    def n_stages(self) -> int:
        return len(self.stages)

    def element_count(self) -> int:
        return sum(len(stage.elements) for stage in self.stages)

    def to_json(self) -> dict:
        data = {
            "version": NETLIST_VERSION,
            "architecture": self.architecture,
            "dim": self.dim,
            "n_rails": self.n_rails,
            "encoding": None if self.encoding is None else self.encoding.to_json(),
            "stages": [stage.to_json() for stage in self.stages],
            "stage_info": [
                {"role": stage.role, "depth_group": stage.depth_group} for stage in self.stages
            ],
        }
        if self.output_assignment is not None:
            data["output_assignment"] = [[p, pol] for p, pol in self.output_assignment]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Netlist":
        try:
            version = data.get("version", NETLIST_VERSION)
            if version != NETLIST_VERSION:
                raise NetlistError(f"unsupported netlist version {version!r}")
            raw_stages = data["stages"]
            info = data.get("stage_info")
            if info is None:
                info = [{"role": "rotation", "depth_group": None}] * len(raw_stages)
            if len(info) != len(raw_stages):
                raise NetlistError("stage_info length does not match stages")
            stages = tuple(
                Stage(
                    elements=tuple(element_from_json(e) for e in raw),
                    role=meta.get("role", "rotation"),
                    depth_group=meta.get("depth_group"),
                )
                for raw, meta in zip(raw_stages, info)
            )
            enc = data.get("encoding")
            assignment = data.get("output_assignment")
            return cls(
                architecture=data["architecture"],
                dim=int(data["dim"]),
                n_rails=int(data["n_rails"]),
                stages=stages,
                encoding=None if enc is None else ModeEncoding.from_json(enc),
                output_assignment=None if assignment is None else tuple((int(p), str(pol)) for p, pol in assignment),
            )
        except NetlistError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise NetlistError(f"malformed netlist record: {exc}") from exc

    def dumps(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_json(), indent=indent, sort_keys=False)

    @classmethod
    def loads(cls, text: str) -> "Netlist":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"netlist is not valid JSON: {exc}") from exc
        return cls.from_json(data)
