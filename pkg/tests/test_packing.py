import math
from collections import deque

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conveyor.belt import MULTI_TOUCH, ONE_TOUCH, check_spec
from conveyor.errors import CollinearCenters, NotHamiltonian, OddCycleLength
from conveyor.geom import Disk, check_disjoint, power_distance
from conveyor.graphs import cube_graph, maximal_planar_graphs, octahedron, tetrahedron
from conveyor.packing import (
    ReductionConfig, audit, audit_multi_touch, belt_from_hamiltonian_cycle, choose_delta,
    circle_pack, classify_ply, gap_ply_audit, multi_touch_instance, one_touch_belts_for_cycle,
    one_touch_instance, radical_center, triangle_gadget, unblocked_kinds,
)
from conveyor.solver import hamiltonian_cycles

CORPUS = maximal_planar_graphs(8)
EPS_EMP = 0.01  # measured worst case on the corpus is 0.0146


def angle_sums(t, radii):
    """Angle sum at each vertex from radii alone (law of cosines on each face)."""
    total = np.zeros(t.n)
    for f in t.interior_faces:
        for k in range(3):
            v, a, b = f[k], f[(k + 1) % 3], f[(k + 2) % 3]
            x, y, z = radii[v] + radii[a], radii[v] + radii[b], radii[a] + radii[b]
            total[v] += math.acos(max(-1.0, min(1.0, (x * x + y * y - z * z) / (2 * x * y))))
    return total


def test_k4_inner_radius():
    p = circle_pack(tetrahedron())
    inner = [v for v in range(4) if v not in p.outer][0]
    assert p.radii[inner] == pytest.approx(1 / (3 + 2 * math.sqrt(3)), abs=1e-12)
    assert np.allclose(p.radii[list(p.outer)], 1.0)


@pytest.mark.parametrize("t", CORPUS, ids=lambda t: f"n{t.n}")
def test_packing_is_tangent_and_flat(t):
    p = circle_pack(t)
    edge, gap = p.tangency_residuals()
    assert edge <= 1e-10 and gap > 1e-10
    sums = angle_sums(t, p.radii)
    interior = [v for v in range(t.n) if v not in p.outer]
    assert np.allclose(sums[interior], 2 * math.pi, atol=1e-9)


@pytest.mark.parametrize("t", CORPUS, ids=lambda t: f"n{t.n}")
def test_radius_floor_trend(t):
    """Radii stay above eps^d (d the graph distance to the outer triple) and
    neighbouring radii differ by a factor of at most 1/eps."""
    p = circle_pack(t)
    adj = t.adjacency()
    dist = {v: 0 for v in p.outer}
    q = deque(p.outer)
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    for v in range(t.n):
        assert p.radii[v] >= EPS_EMP ** dist[v]
    for u, v in t.edges:
        assert min(p.radii[u], p.radii[v]) >= EPS_EMP * max(p.radii[u], p.radii[v])


@pytest.mark.parametrize("t", CORPUS, ids=lambda t: f"n{t.n}")
def test_reduction_audit(t):
    inst = one_touch_instance(t)
    assert inst.audit_report.ok, (inst.audit_report.missing, inst.audit_report.extra)
    assert 0 < inst.delta <= 0.025
    for i, a in enumerate(inst.disks):
        for b in inst.disks[i + 1:]:
            check_disjoint(a, b)


def test_choose_delta_passes_audit_and_large_shrink_fails():
    p = circle_pack(octahedron())
    d = choose_delta(p)
    assert audit(p.disks(d), p.graph.edges, p.outer).ok
    # unshrunk disks are tangent: no inner bitangents at all
    assert not audit(p.disks(0.5), p.graph.edges, p.outer).ok


def test_unblocked_kinds_two_disks():
    got = unblocked_kinds([Disk.at(0, 0, 0, 1), Disk.at(1, 5, 0, 1)])
    assert got == {(0, 1): {"upper", "lower", "inner_a", "inner_b"}}


def test_integer_scale():
    inst = one_touch_instance(octahedron(), ReductionConfig(integer_scale=10**6))
    assert all(float(d.x).is_integer() and float(d.radius).is_integer() for d in inst.disks)
    assert inst.audit_report.ok


def test_odd_graph_warns():
    odd = maximal_planar_graphs(5, even_only=False)[1]
    assert odd.n == 5
    with pytest.warns(UserWarning):
        inst = one_touch_instance(odd)
    cyc = hamiltonian_cycles(odd.adjacency())[0]
    with pytest.raises(OddCycleLength):
        one_touch_belts_for_cycle(cyc, inst)


def test_octahedron_cycles_give_both_phases():
    inst = one_touch_instance(octahedron())
    for cyc in hamiltonian_cycles(octahedron().adjacency()):
        belts = one_touch_belts_for_cycle(cyc, inst)
        assert len(belts) == 2
        assert all(check_spec(b, inst.disks, ONE_TOUCH).valid for b in belts)
    with pytest.raises(NotHamiltonian):
        one_touch_belts_for_cycle([0, 1, 2, 3, 4], inst)


@given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10), st.floats(0.1, 2)), min_size=3, max_size=3))
def test_radical_center_equal_power(triple):
    ds = [Disk.at(i, *t) for i, t in enumerate(triple)]
    try:
        p = radical_center(*ds)
    except CollinearCenters:
        return
    pw = [power_distance(p, d) for d in ds]
    scale = 1 + max(abs(x) for x in pw)
    assert max(pw) - min(pw) <= 1e-6 * scale


def test_radical_center_collinear():
    with pytest.raises(CollinearCenters):
        radical_center(Disk.at(0, 0, 0, 1), Disk.at(1, 3, 0, 1), Disk.at(2, 6, 0, 1))


@pytest.fixture(scope="module")
def cube_instance():
    return multi_touch_instance(cube_graph())


def test_cube_instance_shape(cube_instance):
    inst = cube_instance
    assert len(inst.disks) == 6 + 7 + 3
    assert audit_multi_touch(inst).ok
    assert gap_ply_audit(inst) == []


def test_cube_cycle_belt(cube_instance):
    cyc = hamiltonian_cycles(cube_graph().adjacency())[0]
    spec = belt_from_hamiltonian_cycle(cyc, cube_instance, MULTI_TOUCH)
    assert check_spec(spec, cube_instance.disks, MULTI_TOUCH).valid
    assert set(spec.disks) == {d.id for d in cube_instance.disks}


def test_classify_ply():
    gates = [(0, 1), (0, 2), (1, 2)]
    ply = dict(zip(gates, (1, 1, 0)))
    assert classify_ply(ply, [((0, 1), (0, 2))]) == "two_single"
    ply = dict(zip(gates, (2, 1, 1)))
    assert classify_ply(ply, [((0, 1), (0, 1)), ((0, 2), (1, 2))]) == "double_and_two_single"
    assert classify_ply(ply, [((0, 1), (0, 2)), ((0, 1), (1, 2))]) == "mixed"
    assert classify_ply(dict(zip(gates, (3, 1, 0))), []) is None


def test_triangle_gadget_disjoint():
    g = triangle_gadget()
    for i, a in enumerate(g.disks):
        for b in g.disks[i + 1:]:
            check_disjoint(a, b)
    assert len(g.gates) == 3
