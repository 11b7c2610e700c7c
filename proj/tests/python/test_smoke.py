"""Smoke-level checks that the python module exposes working bindings.

The heavy validation lives in the C++ test binaries; these tests only make
sure the core operations survive the trip through python and numpy.
"""

import numpy as np
import pytest

import zonokit as zk


def test_box_roundtrip_queries():
    s = zk.Set.box(np.array([-1.0, -2.0]), np.array([3.0, 2.0]))
    assert s.kind == zk.SetKind.zono
    assert s.dim == 2
    assert not zk.is_empty(s)
    assert zk.contains_point(s, np.array([0.5, 1.5]))
    assert not zk.contains_point(s, np.array([3.5, 0.0]))
    lo, hi = zk.bounding_box(s)
    np.testing.assert_allclose(lo, [-1.0, -2.0])
    np.testing.assert_allclose(hi, [3.0, 2.0])


def test_operations_compose():
    a = zk.Set.box(np.array([-1.0, -1.0]), np.array([1.0, 1.0]))
    b = zk.Set.box(np.array([-0.5, -0.5]), np.array([0.5, 0.5]))
    s = a + b
    assert zk.support(s, np.array([1.0, 0.0])) == pytest.approx(1.5)

    rotated = zk.linear_map(np.array([[0.0, -1.0], [1.0, 0.0]]), s)
    assert zk.support(rotated, np.array([0.0, 1.0])) == pytest.approx(1.5)

    both = zk.union(a, zk.translate(a, np.array([4.0, 0.0])))
    assert both.kind == zk.SetKind.hybZono
    assert zk.contains_point(both, np.array([4.2, 0.3]))
    assert not zk.contains_point(both, np.array([2.0, 0.0]))
    assert len(zk.get_leaves(both)) == 2


def test_relu_unit_counts():
    unit = zk.relu_unit_set(2.0)
    assert (unit.num_gen, unit.num_bin, unit.num_con) == (4, 1, 2)
    assert zk.contains_point(unit, np.array([-1.5, 0.0]))
    assert zk.contains_point(unit, np.array([1.5, 1.5]))
    assert not zk.contains_point(unit, np.array([1.5, 0.5]))


def test_reach_step_matches_direct_image():
    sys = zk.LinearSystem(np.array([[0.9, 0.2], [-0.1, 0.8]]),
                          np.array([[0.1], [0.05]]))
    R = zk.Set.box(np.array([-1.0, -1.0]), np.array([1.0, 1.0]))
    U = zk.Set.box(np.array([-0.5]), np.array([0.5]))
    D = zk.Set.box(np.array([-3.0, -3.0, -1.0]), np.array([3.0, 3.0, 1.0]))

    psi = zk.build_linear_update_set(sys, D)
    via_psi = zk.successor(psi, R, U)
    direct = zk.step_linear(sys, R, U)
    for d in (np.array([1.0, 0.0]), np.array([0.0, -1.0]),
              np.array([0.7, 0.7])):
        assert zk.support(via_psi, d) == pytest.approx(zk.support(direct, d),
                                                       abs=1e-6)


def test_serialize_roundtrip():
    s = zk.Set.con_zono(np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]),
                        np.array([0.0, 0.0]), np.array([[1.0, 1.0, 1.0]]),
                        np.array([1.0]))
    back = zk.set_from_json(zk.set_to_json(s))
    assert back.kind == zk.SetKind.conZono
    assert zk.structurally_equal(back, s)

    with pytest.raises(ValueError):
        zk.set_from_json("{not json")
