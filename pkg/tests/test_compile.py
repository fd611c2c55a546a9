"""Architecture backends: netlist layout, device settings, X conjugation."""

import math

import numpy as np
import pytest

from pathpol.compilers import (
    ROLE_DIAGONAL,
    ROLE_PDBS,
    ROLE_ROTATION,
    ROLE_X,
    ROLE_XDAG,
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
from pathpol.decomposition import decompose
from pathpol.elements import (
    MZI,
    PBS,
    PDBS,
    BalancedBS,
    CombinedRotation,
    DiagonalPhases,
    PhaseShifter,
    WavePlateElement,
)
from pathpol.errors import DimensionError
from pathpol.linalg import RotationParams, embed_rotation, haar_unitary, rotation_matrix
from pathpol.scheduling import schedule
from pathpol.simulator import netlist_unitary, verify


def _netlists(dim, seed=0):
    sched = schedule(decompose(haar_unitary(dim, seed=seed)))
    return {
        "mzi": compile_mzi(sched),
        "hybrid": compile_hybrid(sched),
        "fullpol": compile_fullpol(sched),
    }


def test_mzi_settings_identity_rotation():
    internal, external = mzi_settings(RotationParams(m=0, theta=0.0, phi=0.0))
    assert internal == 0.0
    assert external == pytest.approx(2 * math.pi - math.pi / 2)
    np.testing.assert_allclose(
        mzi_composed_unitary(internal, external), np.eye(2), atol=1e-14
    )


def test_mzi_settings_full_cross():
    params = RotationParams(m=0, theta=math.pi / 2, phi=0.0)
    got = mzi_composed_unitary(*mzi_settings(params))
    np.testing.assert_allclose(got, rotation_matrix(math.pi / 2, 0.0), atol=1e-14)
    assert abs(got[0, 0]) < 1e-14


def test_mzi_settings_random_batch():
    rng = np.random.default_rng(6)
    for _ in range(100):
        params = RotationParams(
            m=0,
            theta=rng.uniform(0.0, math.pi / 2),
            phi=rng.uniform(0.0, 2 * math.pi),
        )
        got = mzi_composed_unitary(*mzi_settings(params))
        np.testing.assert_allclose(
            got, rotation_matrix(params.theta, params.phi), atol=1e-13
        )


def test_cyclic_shift_structure():
    x = cyclic_shift(4)
    vec = np.array([1.0, 2.0, 3.0, 4.0])
    np.testing.assert_array_equal(x @ vec, np.array([4.0, 1.0, 2.0, 3.0]))
    np.testing.assert_array_equal(np.linalg.matrix_power(x, 4), np.eye(4))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_conjugate_omega2_identity(n):
    """X^dag (rotation on path k) X reproduces the straddling rotation."""
    rng = np.random.default_rng(40 + n)
    dim = 2 * n
    x = cyclic_shift(dim)
    for m in range(1, dim - 1, 2):
        for _ in range(10):
            params = RotationParams(
                m=m,
                theta=rng.uniform(0.0, math.pi / 2),
                phi=rng.uniform(0.0, 2 * math.pi),
            )
            k, mat = conjugate_omega2(params, n)
            assert k == (m + 1) // 2
            on_path = np.eye(dim, dtype=complex)
            on_path[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = mat
            moved = x.T @ on_path @ x
            np.testing.assert_allclose(moved, embed_rotation(dim, params), atol=1e-12)


def test_conjugate_omega2_path_examples():
    assert conjugate_omega2(RotationParams(m=1, theta=0.1, phi=0.0), 3)[0] == 1
    assert conjugate_omega2(RotationParams(m=3, theta=0.1, phi=0.0), 3)[0] == 2


def test_conjugate_omega2_rejects_even_position():
    with pytest.raises(ValueError):
        conjugate_omega2(RotationParams(m=2, theta=0.1, phi=0.0), 3)


def test_conjugate_omega2_rejects_out_of_range():
    with pytest.raises(ValueError):
        conjugate_omega2(RotationParams(m=5, theta=0.1, phi=0.0), 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_xgate_is_exact_cyclic_shift(n):
    nl = xgate_netlist(n)
    got = netlist_unitary(nl)
    np.testing.assert_array_equal(got, cyclic_shift(2 * n))


def test_xgate_stage_roles_and_tallies():
    nl = xgate_netlist(3)
    assert [s.role for s in nl.stages] == [ROLE_X, ROLE_X, ROLE_X]
    hwps = [e for s in nl.stages for e in s.elements if isinstance(e, WavePlateElement)]
    pbss = [e for s in nl.stages for e in s.elements if isinstance(e, PBS)]
    assert len(hwps) == 6
    assert len(pbss) == 5
    assert all(e.plate.orientation == pytest.approx(math.pi / 4) for e in hwps)


def test_xgate_order_is_identity():
    """Applying the shift 2n times returns every mode home."""
    for n in (1, 2, 3):
        u = netlist_unitary(xgate_netlist(n))
        np.testing.assert_allclose(
            np.linalg.matrix_power(u, 2 * n), np.eye(2 * n), atol=1e-12
        )


def test_compile_mzi_stage_layout():
    nl = _netlists(6)["mzi"]
    assert nl.architecture == "mzi"
    assert nl.n_rails == 6
    roles = [s.role for s in nl.stages]
    assert roles == [ROLE_ROTATION] * 6 + [ROLE_DIAGONAL]
    assert [s.depth_group for s in nl.stages] == [0, 1, 2, 3, 4, 5, None]
    sizes = [len(s.elements) for s in nl.stages[:-1]]
    assert sizes == [3, 2, 3, 2, 3, 2]
    assert all(isinstance(e, MZI) for s in nl.stages[:-1] for e in s.elements)
    assert isinstance(nl.stages[-1].elements[0], DiagonalPhases)


def test_compile_mzi_pads_small_meshes():
    nl = _netlists(2)["mzi"]
    roles = [s.role for s in nl.stages]
    assert roles == [ROLE_ROTATION, ROLE_ROTATION, ROLE_DIAGONAL]
    assert len(nl.stages[0].elements) == 1
    assert len(nl.stages[1].elements) == 0


def test_compile_mzi_handles_odd_dimension():
    u = haar_unitary(5, seed=3)
    nl = compile_mzi(schedule(decompose(u)))
    assert verify(nl, u, tol=1e-9).passed


def test_compile_hybrid_layout():
    nl = _netlists(6)["hybrid"]
    assert nl.architecture == "hybrid"
    assert nl.n_rails == 3
    assert nl.encoding is not None and nl.encoding.kind == "hybrid"
    for stage in nl.stages:
        if stage.role == ROLE_ROTATION:
            assert stage.depth_group is None
            assert all(isinstance(e, CombinedRotation) for e in stage.elements)
        elif stage.role == ROLE_PDBS:
            assert stage.depth_group is not None
            assert all(isinstance(e, PDBS) for e in stage.elements)
        else:
            assert stage.role == ROLE_DIAGONAL


def test_compile_hybrid_pdbs_polarization_pattern():
    """Boundary couplers act on v for even lower paths and h for odd ones."""
    nl = _netlists(8, seed=4)["hybrid"]
    seen = set()
    for stage in nl.stages:
        if stage.role != ROLE_PDBS:
            continue
        for elem in stage.elements:
            lo, hi = elem.paths
            assert hi == lo + 1
            expected = "v" if lo % 2 == 0 else "h"
            assert elem.active_pol == expected
            seen.add(lo % 2)
    assert seen == {0, 1}


def test_compile_hybrid_sub_stage_groups():
    """Each odd slot splits into two depth groups of non-clashing couplers."""
    nl = _netlists(8, seed=4)["hybrid"]
    groups = {}
    for stage in nl.stages:
        if stage.role == ROLE_PDBS and stage.depth_group is not None:
            groups.setdefault(stage.depth_group, []).append(stage)
    assert len(groups) == 2 * 4
    for stages in groups.values():
        assert len(stages) == 1


def test_compile_hybrid_rejects_odd_dimension():
    with pytest.raises(DimensionError) as info:
        compile_hybrid(schedule(decompose(haar_unitary(5, seed=1))))
    assert "mzi" in str(info.value)


def test_compile_fullpol_rejects_odd_dimension():
    with pytest.raises(DimensionError):
        compile_fullpol(schedule(decompose(haar_unitary(3, seed=1))))


def test_compile_fullpol_layout():
    nl = _netlists(6)["fullpol"]
    assert nl.architecture == "fullpol"
    assert nl.n_rails == 6
    assert nl.encoding is not None and nl.encoding.kind == "fullpol"
    assert nl.output_assignment is None
    roles = {s.role for s in nl.stages}
    assert roles == {ROLE_ROTATION, ROLE_X, ROLE_XDAG, ROLE_DIAGONAL}
    for stage in nl.stages:
        for elem in stage.elements:
            assert not isinstance(elem, BalancedBS)
            assert not isinstance(elem, MZI)
            if isinstance(elem, PhaseShifter):
                assert elem.pol in ("h", "v")


def test_compile_fullpol_block_depth_groups():
    """Each odd slot forms one depth group spanning X, rotations, and X^dag.

    Wave-plate-only stages (the even slots) carry no depth group, so the
    distinct group count equals the number of boundary blocks, n.
    """
    nl = _netlists(6)["fullpol"]
    by_group = {}
    for stage in nl.stages:
        if stage.depth_group is None:
            assert stage.role in (ROLE_ROTATION, ROLE_DIAGONAL)
        else:
            by_group.setdefault(stage.depth_group, set()).add(stage.role)
    assert len(by_group) == 3
    for roles in by_group.values():
        assert roles == {ROLE_X, ROLE_ROTATION, ROLE_XDAG}


@pytest.mark.parametrize("dim", [2, 4, 6])
@pytest.mark.parametrize("arch", ["mzi", "hybrid", "fullpol"])
def test_backend_round_trip(dim, arch):
    u = haar_unitary(dim, seed=dim * 17 + 1)
    nl = _netlists(dim, seed=dim * 17 + 1)[arch]
    report = verify(nl, u, tol=1e-9)
    assert report.passed, report.phase_invariant_error


def test_compile_unitary_dispatch():
    u = haar_unitary(4, seed=99)
    for arch in ("mzi", "hybrid", "fullpol"):
        nl = compile_unitary(u, arch)
        assert nl.architecture == arch
        assert verify(nl, u, tol=1e-9).passed


def test_compile_unitary_rejects_unknown_architecture():
    with pytest.raises(ValueError):
        compile_unitary(haar_unitary(2, seed=0), "ring")
