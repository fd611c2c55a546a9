"""Lower layer schedules onto the three hardware netlists.

Three backends share one input, the layered rotation schedule:

* ``compile_mzi``: one Mach-Zehnder interferometer per rotation on N paths,
  one stage per layer slot, trailing per-mode phases.
* ``compile_hybrid``: N = 2n modes on n paths times two polarizations.
  Even layers become per-path wave-plate gadgets, odd layers become two
  sub-stages of polarization-dependent beam splitters.
* ``compile_fullpol``: same mode count, but odd layers are realized as
  X gate, per-rail wave-plate gadgets, X-dagger.

All three materialize every layer slot of the rectangle, including slots the
schedule leaves empty (that only happens for N = 2).  Keeping empty slots
preserves the fabricated depth of the mesh, which the resource analyzer
counts, and costs nothing in elements.
"""

from __future__ import annotations

import math

import numpy as np

from .decomposition import DecompositionPlan
from .elements import (
    MZI,
    PBS,
    PDBS,
    CombinedRotation,
    DiagonalPhases,
    Netlist,
    PhaseShifter,
    Stage,
    WavePlateElement,
)
from .encodings import (
    FULLPOL,
    HYBRID,
    POL_H,
    POL_V,
    ModeEncoding,
    fullpol_encoding,
    hybrid_encoding,
)
from .errors import DimensionError
from .linalg import TWO_PI, RotationParams, rotation_matrix
from .scheduling import KIND_EVEN, LayerSchedule, column_kind, schedule
from .waveplates import HWP, WavePlate, synthesize

ROLE_ROTATION = "rotation"
ROLE_PDBS = "pdbs"
ROLE_X = "x"
ROLE_XDAG = "x_dagger"
ROLE_DIAGONAL = "diagonal"

_SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])

_HALF_PI = math.pi / 2.0


def mzi_settings(params: RotationParams) -> tuple:
    """Hardware phases realizing one rotation as a Mach-Zehnder device.

    Returns ``(internal, external)``: the differential phase between the two
    internal arms and the phase shifter at the first input port.  With the
    balanced splitter pinned to the real form H = (1/sqrt 2)[[1, 1], [1, -1]]
    and a fixed quarter-turn compensation on the first output port, the
    composed device reproduces ``rotation_matrix(theta, phi)`` exactly; see
    ``mzi_composed_unitary``.
    """
    internal = (2.0 * params.theta) % TWO_PI
    external = (params.phi - _HALF_PI) % TWO_PI
    return (internal, external)


def mzi_composed_unitary(internal: float, external: float) -> np.ndarray:
    """Compose the splitter-phase-splitter-phase chain for given settings.

    The internal phase is split differentially between the arms (plus and
    minus half), and the first output port carries a fixed pi/2 trim.  The
    result satisfies ``mzi_composed_unitary(*mzi_settings(p))`` equal to
    ``rotation_matrix(p.theta, p.phi)`` at machine precision.
    """
    had = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    arms = np.diag([np.exp(0.5j * internal), np.exp(-0.5j * internal)])
    trim = np.diag([np.exp(0.5j * math.pi), 1.0])
    feed = np.diag([np.exp(1j * external), 1.0])
    return trim @ had @ arms @ had @ feed


def cyclic_shift(dim: int) -> np.ndarray:
    """Permutation matrix sending mode j to mode j+1 (mod dim)."""
    mat = np.zeros((dim, dim))
    for j in range(dim):
        mat[(j + 1) % dim, j] = 1.0
    return mat


def conjugate_omega2(params: RotationParams, n: int) -> tuple:
    """Relocate an odd-position rotation to a single path via X conjugation.

    A rotation at odd position m = 2k-1 couples the last mode of path k-1
    to the first mode of path k.  Conjugating by the cyclic-shift gate X
    moves it one mode up, where both coupled modes share path k.  Returns
    ``(k, mat)`` with ``mat = rotation_matrix(theta, phi)`` acting on path
    k's two modes in logical order, satisfying

        embed(m) == X_dagger @ embed_on_path(k) @ X

    exactly on the 2n logical modes.
    """
    if params.m % 2 == 0:
        raise ValueError(
            f"rotation at even position {params.m} stays on one path and compiles directly"
        )
    k = (params.m + 1) // 2
    if k >= n:
        raise ValueError(f"rotation position {params.m} is out of range for {n} paths")
    return (k, rotation_matrix(params.theta, params.phi))


def _padded_columns(sched: LayerSchedule):
    """Yield (slot, kind, ops) for every slot of the full rectangle.

    The schedule omits trailing empty columns (N = 2 has a single occupied
    column); compilers still materialize all ``dim`` slots.
    """
    n_slots = sched.dim if sched.dim >= 2 else 0
    for slot in range(n_slots):
        if slot < len(sched.columns):
            col = sched.columns[slot]
            if col.kind != column_kind(slot):
                raise ValueError(f"column {slot} has kind {col.kind}, expected {column_kind(slot)}")
            yield slot, col.kind, col.ops
        else:
            yield slot, column_kind(slot), ()


def _require_even(dim: int, architecture: str) -> int:
    if dim % 2 != 0 or dim < 2:
        raise DimensionError(
            f"{architecture} architecture requires even dimension N = 2n, got N = {dim}; "
            "the mzi backend handles odd sizes"
        )
    return dim // 2


def _check_encoding(encoding, kind: str, n: int) -> ModeEncoding:
    if encoding is None:
        return hybrid_encoding(n) if kind == HYBRID else fullpol_encoding(n)
    if encoding.kind != kind:
        raise ValueError(f"expected a {kind} encoding, got {encoding.kind}")
    if encoding.n != n:
        raise DimensionError(f"encoding covers {encoding.n} paths, schedule needs {n}")
    return encoding


def _gadget_for_block(block: np.ndarray, first_pol: str) -> "PolarizationGadget":
    """Synthesize the wave-plate gadget for a 2x2 block on one path.

    ``block`` acts on the path's two logical modes in logical order;
    ``first_pol`` says which polarization carries the first of them.  The
    Jones frame always orders (h, v), so a v-first path needs a basis swap.
    """
    if first_pol == POL_H:
        target = block
    else:
        target = _SWAP @ block @ _SWAP
    return synthesize(target)


def compile_mzi(sched: LayerSchedule) -> Netlist:
    """Lower a schedule onto the path-only Mach-Zehnder mesh."""
    stages = []
    for slot, _kind, ops in _padded_columns(sched):
        elems = [MZI(paths=(op.m, op.m + 1), theta=op.theta, phi=op.phi) for op in ops]
        stages.append(Stage(elements=elems, role=ROLE_ROTATION, depth_group=slot))
    if sched.diagonal:
        stages.append(
            Stage(
                elements=[DiagonalPhases(phases=sched.diagonal)],
                role=ROLE_DIAGONAL,
                depth_group=None,
            )
        )
    return Netlist(
        architecture="mzi",
        dim=sched.dim,
        n_rails=sched.dim,
        stages=tuple(stages),
    )


def compile_hybrid(sched: LayerSchedule, encoding: ModeEncoding = None) -> Netlist:
    """Lower a schedule onto n paths carrying two polarization modes each.

    Even layer slots become one CombinedRotation per path.  Odd slots split
    into two sub-stages of PDBS elements: first the couplings whose lower
    path index is even, then those whose lower path index is odd.  The two
    sub-stages touch different path pairs, so each acts on its own set of
    mode pairs and their product reproduces the layer exactly.
    """
    n = _require_even(sched.dim, HYBRID)
    encoding = _check_encoding(encoding, HYBRID, n)
    stages = []
    for slot, kind, ops in _padded_columns(sched):
        if kind == KIND_EVEN:
            elems = []
            for op in ops:
                path = op.m // 2
                block = rotation_matrix(op.theta, op.phi)
                first_pol = encoding.path_pol(op.m)[1]
                elems.append(CombinedRotation(path=path, gadget=_gadget_for_block(block, first_pol)))
            stages.append(Stage(elements=elems, role=ROLE_ROTATION, depth_group=None))
        else:
            even_sub = []
            odd_sub = []
            for op in ops:
                k = (op.m + 1) // 2
                active = POL_V if (k - 1) % 2 == 0 else POL_H
                elem = PDBS(paths=(k - 1, k), active_pol=active, theta=op.theta, phi=op.phi)
                (even_sub if (k - 1) % 2 == 0 else odd_sub).append(elem)
            stages.append(Stage(elements=even_sub, role=ROLE_PDBS, depth_group=2 * slot))
            stages.append(Stage(elements=odd_sub, role=ROLE_PDBS, depth_group=2 * slot + 1))
    stages.extend(_split_phase_stages(sched.diagonal, encoding))
    return Netlist(
        architecture=HYBRID,
        dim=sched.dim,
        n_rails=n,
        stages=tuple(stages),
        encoding=encoding,
    )


def _split_phase_stages(diagonal, encoding: ModeEncoding):
    """Realize per-mode output phases on a polarized architecture.

    Each path gets an overall phase shifter carrying its first mode's phase
    and a polarization-resolved shifter carrying the difference, so both
    modes come out with their own phase.  Two stages because both elements
    sit on the same path.
    """
    if not diagonal:
        return []
    n = encoding.n
    overall = []
    relative = []
    for path in range(n):
        first = diagonal[2 * path]
        second = diagonal[2 * path + 1]
        overall.append(PhaseShifter(path=path, phi=first, pol=None))
        second_pol = encoding.path_pol(2 * path + 1)[1]
        relative.append(PhaseShifter(path=path, phi=(second - first) % TWO_PI, pol=second_pol))
    return [
        Stage(elements=overall, role=ROLE_DIAGONAL, depth_group=None),
        Stage(elements=relative, role=ROLE_DIAGONAL, depth_group=None),
    ]


def _fullpol_phase_stages(diagonal, n: int):
    """Polarization-resolved output phases: one shifter per mode, no plain
    path shifters (the fullpol backend never uses those)."""
    if not diagonal:
        return []
    v_stage = [PhaseShifter(path=k, phi=diagonal[2 * k], pol=POL_V) for k in range(n)]
    h_stage = [PhaseShifter(path=k, phi=diagonal[2 * k + 1], pol=POL_H) for k in range(n)]
    return [
        Stage(elements=v_stage, role=ROLE_DIAGONAL, depth_group=None),
        Stage(elements=h_stage, role=ROLE_DIAGONAL, depth_group=None),
    ]


def _x_stage_elements(n: int):
    """The three stages of the cyclic-shift gate on n data rails.

    Rails n..2n-1 are ancilla rails.  A PBS per path peels the v component
    onto the matching ancilla rail, half-wave plates at pi/4 flip every
    rail's polarization, and a second PBS ladder merges each data rail's
    remaining component one ancilla rail up.  Tallies 2n plates, 2n-1 PBS.
    """
    split = [PBS(paths=(k, n + k)) for k in range(n)]
    flip = [WavePlateElement(path=r, plate=WavePlate(kind=HWP, orientation=math.pi / 4)) for r in range(2 * n)]
    merge = [PBS(paths=(k, n + k + 1)) for k in range(n - 1)]
    return split, flip, merge


def _x_output_assignment(n: int):
    """Where each logical mode sits after one X gate (rail, polarization)."""
    assignment = [None] * (2 * n)
    assignment[0] = (n - 1, POL_V)
    for k in range(n):
        assignment[2 * k + 1] = (n + k, POL_H)
    for k in range(1, n):
        assignment[2 * k] = (n + k, POL_V)
    return tuple(assignment)


def xgate_netlist(n: int) -> Netlist:
    """Standalone netlist fragment realizing the cyclic shift j -> j+1.

    Uses 2n rails (n data + n ancilla).  The fragment ends with the logical
    modes parked on the rail map recorded in ``output_assignment``; a full
    layer sandwiches rotations between this fragment and its reverse, which
    restores the standard rail layout.
    """
    if n < 1:
        raise ValueError(f"need at least one path, got {n}")
    split, flip, merge = _x_stage_elements(n)
    stages = (
        Stage(elements=split, role=ROLE_X, depth_group=0),
        Stage(elements=flip, role=ROLE_X, depth_group=0),
        Stage(elements=merge, role=ROLE_X, depth_group=0),
    )
    return Netlist(
        architecture=FULLPOL,
        dim=2 * n,
        n_rails=2 * n,
        stages=stages,
        encoding=fullpol_encoding(n),
        output_assignment=_x_output_assignment(n),
    )


def compile_fullpol(sched: LayerSchedule, encoding: ModeEncoding = None) -> Netlist:
    """Lower a schedule onto polarization gadgets bracketed by X gates.

    Even layer slots compile to one CombinedRotation per path.  Each odd
    slot becomes one block: the X stages, a stage of CombinedRotation
    gadgets on the ancilla rails that carry the shifted mode pairs, then
    the X stages reversed.  Every element of the block shares one depth
    group, since the block acts as a single interferometer.
    """
    n = _require_even(sched.dim, FULLPOL)
    encoding = _check_encoding(encoding, FULLPOL, n)
    assignment = _x_output_assignment(n)
    stages = []
    for slot, kind, ops in _padded_columns(sched):
        if kind == KIND_EVEN:
            elems = []
            for op in ops:
                block = rotation_matrix(op.theta, op.phi)
                first_pol = encoding.path_pol(op.m)[1]
                elems.append(CombinedRotation(path=op.m // 2, gadget=_gadget_for_block(block, first_pol)))
            stages.append(Stage(elements=elems, role=ROLE_ROTATION, depth_group=None))
            continue
        split, flip, merge = _x_stage_elements(n)
        group = slot
        stages.append(Stage(elements=split, role=ROLE_X, depth_group=group))
        stages.append(Stage(elements=flip, role=ROLE_X, depth_group=group))
        stages.append(Stage(elements=merge, role=ROLE_X, depth_group=group))
        mids = []
        for op in ops:
            k, block = conjugate_omega2(op, n)
            rail, first_pol = assignment[2 * k]
            if assignment[2 * k + 1][0] != rail:
                raise RuntimeError("shifted mode pair does not share a rail")
            mids.append(CombinedRotation(path=rail, gadget=_gadget_for_block(block, first_pol)))
        stages.append(Stage(elements=mids, role=ROLE_ROTATION, depth_group=group))
        stages.append(Stage(elements=list(merge), role=ROLE_XDAG, depth_group=group))
        stages.append(Stage(elements=list(flip), role=ROLE_XDAG, depth_group=group))
        stages.append(Stage(elements=list(split), role=ROLE_XDAG, depth_group=group))
    stages.extend(_fullpol_phase_stages(sched.diagonal, n))
    return Netlist(
        architecture=FULLPOL,
        dim=sched.dim,
        n_rails=2 * n,
        stages=tuple(stages),
        encoding=encoding,
    )


_BACKENDS = {
    "mzi": compile_mzi,
    HYBRID: compile_hybrid,
    FULLPOL: compile_fullpol,
}


def compile_unitary(mat, architecture: str, tol: float = 1e-10) -> Netlist:
    """Full pipeline: decompose, schedule, and lower onto one architecture."""
    if architecture not in _BACKENDS:
        raise ValueError(f"unknown architecture {architecture!r}; pick one of {sorted(_BACKENDS)}")
    from .decomposition import decompose

    plan = decompose(np.asarray(mat), tol=tol)
    return _BACKENDS[architecture](schedule(plan))
