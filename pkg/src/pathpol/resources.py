"""Element counts, optical depth, and cross-architecture comparison.

Counting conventions: a CombinedRotation tallies as one "combined" unit,
the fixed plates and splitters inside X gates tally individually, and
everything in a trailing phase stage tallies under "diagonal" regardless
of element kind.  The closed-form tables exclude the diagonal, so the
match check does too.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .elements import (
    MZI,
    PBS,
    PDBS,
    BalancedBS,
    CombinedRotation,
    DiagonalPhases,
    Netlist,
    PhaseShifter,
    WavePlateElement,
)
from .simulator import LossModel, transmission

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    LOSSLESS = LossModel()


_KIND_KEYS = {
    MZI: "mzi",
    BalancedBS: "bs",
    PhaseShifter: "phase_shifter",
    CombinedRotation: "combined",
    PDBS: "pdbs",
    PBS: "pbs",
    DiagonalPhases: "diagonal",
}


def _element_key(elem) -> str:
    if isinstance(elem, WavePlateElement):
        return f"{elem.plate.kind}_fixed"
    try:
        return _KIND_KEYS[type(elem)]
    except KeyError:
        raise ValueError(f"unknown element kind {type(elem).__name__}") from None


def count_elements(nl: Netlist) -> dict:
    """Tally elements by kind; trailing phase stages tally as "diagonal"."""
    counts: dict = {}
    for stage in nl.stages:
        for elem in stage.elements:
            key = "diagonal" if stage.role == "diagonal" else _element_key(elem)
            counts[key] = counts.get(key, 0) + 1
    return counts


def closed_form_counts(architecture: str, n: int) -> dict:
    """Published element counts for n path-pairs (dimension N = 2n)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if architecture == "mzi":
        return {"mzi": n * (2 * n - 1)}
    if architecture == "hybrid":
        return {"combined": n * n, "pdbs": n * (n - 1)}
    if architecture == "fullpol":
        return {"pbs": 2 * n * (2 * n - 1), "hwp_fixed": 4 * n * n, "combined": n * (2 * n - 1)}
    raise ValueError(f"unknown architecture {architecture!r}")


def optical_depth(nl: Netlist) -> int:
    """Number of interferometric depth slots a photon traverses.

    Stages tagged with a depth group count; wave-plate and phase stages
    carry no group and count zero.  Stages sharing a group (the pieces of
    one X block) count once together; the two PDBS sub-stages of a hybrid
    layer carry distinct groups because a middle path crosses both.
    """
    return len({s.depth_group for s in nl.stages if s.depth_group is not None})


def expected_depth(architecture: str, dim: int) -> int:
    if architecture == "fullpol":
        return dim // 2
    return dim


def transmission_formula(architecture: str, dim: int, loss: LossModel) -> float:
    """Closed-form overall transmission for a dim-sized compiled circuit."""
    if architecture == "mzi":
        return (loss.eta_b * loss.eta_ph_tilde) ** (2 * dim)
    n = dim // 2
    if architecture == "hybrid":
        return (loss.eta_w ** 3 * (loss.eta_b * loss.eta_ph) ** 4) ** n
    if architecture == "fullpol":
        return (loss.eta_p * loss.eta_w ** 4) ** (2 * n)
    raise ValueError(f"unknown architecture {architecture!r}")


def formula_text(architecture: str, dim: int) -> str:
    if architecture == "mzi":
        return f"(eta_b*eta_ph_tilde)^{2 * dim}"
    n = dim // 2
    if architecture == "hybrid":
        return f"(eta_w^3*(eta_b*eta_ph)^4)^{n}"
    if architecture == "fullpol":
        return f"(eta_p*eta_w^4)^{2 * n}"
    raise ValueError(f"unknown architecture {architecture!r}")


@dataclass(frozen=True)
class ResourceReport:
    """Counted versus closed-form resources for one compiled netlist."""

    architecture: str
    counted: dict
    closed_form: dict
    optical_depth: int
    transmission_formula: float
    match: bool

    def to_json(self) -> dict:
        return {
            "architecture": self.architecture,
            "counted": dict(sorted(self.counted.items())),
            "closed_form": dict(sorted(self.closed_form.items())),
            "optical_depth": self.optical_depth,
            "transmission_formula": self.transmission_formula,
            "match": self.match,
        }


def _counts_match(counted: dict, closed: dict) -> bool:
    keys = (set(counted) | set(closed)) - {"diagonal"}
    return all(counted.get(k, 0) == closed.get(k, 0) for k in keys)


def resource_report(nl: Netlist, loss: LossModel = None) -> ResourceReport:
    loss = LOSSLESS if loss is None else loss
    counted = count_elements(nl)
    if nl.architecture == "mzi":
        closed = {"mzi": nl.dim * (nl.dim - 1) // 2}
    else:
        closed = closed_form_counts(nl.architecture, nl.dim // 2)
    depth = optical_depth(nl)
    match = _counts_match(counted, closed) and depth == expected_depth(nl.architecture, nl.dim)
    return ResourceReport(
        architecture=nl.architecture,
        counted=counted,
        closed_form=closed,
        optical_depth=depth,
        transmission_formula=transmission_formula(nl.architecture, nl.dim, loss),
        match=match,
    )


CS_COMPARISON = {
    "scheme": "cs-decomposition (path + internal modes)",
    "computed": False,
    "note": (
        "Alternative scheme using n_s paths and an n_p-dimensional internal "
        "mode: the cosine-sine decomposition cuts the beam splitter count by "
        "a factor n_p^2/2 at the cost of extra internal-mode elements. For "
        "n_s = n and n_p = 2 its optical depth lies between n and 2n; at "
        "n_s = 4 the decomposition yields 6 CS matrices with depth 5 (the "
        "middle two commute). The layout is not symmetric, which costs "
        "noise resilience."
    ),
}


def compare_report(n: int, loss: LossModel = None) -> dict:
    """Closed-form comparison row set for one size (dimension N = 2n).

    Rows carry the published element counts, depth, and the symbolic plus
    evaluated transmission for each architecture; the CS-decomposition row
    is fixed reference text, not computed.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    loss = LOSSLESS if loss is None else loss
    dim = 2 * n
    rows = []
    for arch in ("mzi", "hybrid", "fullpol"):
        rows.append(
            {
                "architecture": arch,
                "dim": dim,
                "elements": dict(sorted(closed_form_counts(arch, n).items())),
                "optical_depth": expected_depth(arch, dim),
                "transmission_formula": formula_text(arch, dim),
                "transmission": transmission_formula(arch, dim, loss),
            }
        )
    return {"n": n, "dim": dim, "rows": rows, "comparison": CS_COMPARISON}


def comparison_markdown(reports: list) -> str:
    """Render compare_report rows (one per n) as a Markdown table."""
    lines = [
        "| n | architecture | elements | depth | transmission | value |",
        "|---|--------------|----------|-------|--------------|-------|",
    ]
    for rep in reports:
        for row in rep["rows"]:
            elems = ", ".join(f"{k}={v}" for k, v in row["elements"].items())
            lines.append(
                "| {n} | {arch} | {elems} | {depth} | {formula} | {value:.6g} |".format(
                    n=rep["n"],
                    arch=row["architecture"],
                    elems=elems,
                    depth=row["optical_depth"],
                    formula=row["transmission_formula"],
                    value=row["transmission"],
                )
            )
    lines.append("")
    lines.append(f"Note ({CS_COMPARISON['scheme']}, not computed): {CS_COMPARISON['note']}")
    return "\n".join(lines)


def cross_check(nl: Netlist, loss: LossModel = None) -> bool:
    """Does the simulator's worst-case transmission meet the closed form?"""
    loss = LOSSLESS if loss is None else loss
    simulated = transmission(nl, loss).worst_case
    formula = transmission_formula(nl.architecture, nl.dim, loss)
    scale = max(abs(formula), 1e-300)
    return abs(simulated - formula) / scale <= 1e-12
