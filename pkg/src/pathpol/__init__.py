"""pathpol: compile N x N unitaries onto photonic interferometer meshes.

The pipeline factors a unitary into a rectangle of two-mode rotations plus
output phases, packs the rotations into alternating layers, and lowers the
layers onto one of three hardware models: a Mach-Zehnder mesh on N paths,
a hybrid design on N/2 paths carrying two polarization modes each, or a
full-polarization design whose odd layers are realized between cyclic-shift
X gates.  A stage-level simulator, a loss model, and resource/depth
analysis close the loop.
"""

from .decomposition import DecompositionPlan, decompose, reconstruct, rotation_count
from .elements import Netlist, Stage
from .encodings import ModeEncoding, fullpol_encoding, hybrid_encoding, permutation_matrix
from .errors import (
    DimensionError,
    NetlistError,
    NonUnitaryError,
    ParseError,
    PathpolError,
    SchedulingError,
)
from .compilers import (
    compile_fullpol,
    compile_hybrid,
    compile_mzi,
    compile_unitary,
    conjugate_omega2,
    cyclic_shift,
    mzi_composed_unitary,
    mzi_settings,
    xgate_netlist,
)
from .linalg import (
    RotationParams,
    VerificationReport,
    compare_unitaries,
    distance_up_to_global_phase,
    haar_unitary,
    is_unitary,
    rotation_matrix,
)
from .resources import (
    ResourceReport,
    closed_form_counts,
    compare_report,
    count_elements,
    optical_depth,
    resource_report,
)
from .scheduling import LayerSchedule, expected_column_sizes, schedule, schedule_unitary
from .simulator import (
    LossModel,
    TransmissionReport,
    element_unitary,
    lossy_transfer_matrix,
    netlist_unitary,
    physical_unitary,
    transmission,
    verify,
)
from .waveplates import PolarizationGadget, WavePlate, gadget_unitary, synthesize

__version__ = "0.1.0"

__all__ = [
    "DecompositionPlan",
    "DimensionError",
    "LayerSchedule",
    "LossModel",
    "ModeEncoding",
    "Netlist",
    "NetlistError",
    "NonUnitaryError",
    "ParseError",
    "PathpolError",
    "PolarizationGadget",
    "ResourceReport",
    "RotationParams",
    "SchedulingError",
    "Stage",
    "TransmissionReport",
    "VerificationReport",
    "WavePlate",
    "closed_form_counts",
    "compare_report",
    "compare_unitaries",
    "compile_fullpol",
    "compile_hybrid",
    "compile_mzi",
    "compile_unitary",
    "conjugate_omega2",
    "count_elements",
    "cyclic_shift",
    "decompose",
    "distance_up_to_global_phase",
    "element_unitary",
    "expected_column_sizes",
    "fullpol_encoding",
    "gadget_unitary",
    "haar_unitary",
    "hybrid_encoding",
    "is_unitary",
    "lossy_transfer_matrix",
    "mzi_composed_unitary",
    "mzi_settings",
    "netlist_unitary",
    "optical_depth",
    "permutation_matrix",
    "physical_unitary",
    "reconstruct",
    "resource_report",
    "rotation_count",
    "rotation_matrix",
    "schedule",
    "schedule_unitary",
    "synthesize",
    "transmission",
    "verify",
    "xgate_netlist",
]
