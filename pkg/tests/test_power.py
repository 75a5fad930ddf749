import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conveyor.belt import MULTI_TOUCH, ONE_TOUCH, verify
from conveyor.errors import DegenerateInput
from conveyor.generators import mixed_radii
from conveyor.geom import Disk, check_disjoint, power_distance
from conveyor.power import (
    MULTI_GUIDES_PER_DISK, ONE_TOUCH_GUIDES_PER_DISK, augment_one_touch, dual_spanning_tree,
    lower_bound_instance, outside_tour, place_guides, power_diagram,
)
from conveyor.solver import solve_one_touch
from conveyor.packing import audit

seeds = st.integers(0, 10_000)


@given(seeds, st.integers(1, 25))
def test_locate_matches_power_distance(seed, n):
    ds = mixed_radii(n, seed)
    pd = power_diagram(ds)
    rng = np.random.default_rng(seed)
    x0, y0, x1, y1 = pd.box
    for p in rng.uniform((x0, y0), (x1, y1), (40, 2)):
        pw = [power_distance(p, d) for d in ds]
        best = int(np.argmin(pw))
        second = sorted(pw)[1] if n > 1 else math.inf
        if second - pw[best] < 1e-6:
            continue  # on a cell boundary
        assert pd.locate(p) == best


@given(seeds, st.integers(2, 25))
def test_each_disk_inside_its_cell(seed, n):
    ds = mixed_radii(n, seed)
    pd = power_diagram(ds)
    for i in range(n):
        assert pd.locate(ds[i].center) == i
        assert pd.clearance(i) > 0


@given(seeds, st.integers(4, 20))
def test_lifting_agrees_with_all_pairs(seed, n):
    ds = mixed_radii(n, seed)
    a = power_diagram(ds)
    b = power_diagram(ds, force_all_pairs=True)
    assert {(e.cell_a, e.cell_b) for e in a.edges} == {(e.cell_a, e.cell_b) for e in b.edges}


@given(seeds, st.integers(2, 25))
def test_tree_and_tour(seed, n):
    ds = mixed_radii(n, seed)
    pd = power_diagram(ds)
    tree = dual_spanning_tree(pd)
    assert len(tree.edges) == n - 1
    # connected: a walk from cell 0 reaches everything
    seen, stack = {0}, [0]
    while stack:
        for j in tree.neighbours(stack.pop()):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    assert seen == set(range(n))
    tour = outside_tour(tree, pd)
    assert len(tour) == 2 * (n - 1)
    # every tree edge is walked twice, once from each end
    uses = Counter((cell, k) for cell, k in tour)
    for k, e in enumerate(tree.edges):
        assert uses[(e.cell_a, k)] == 1 and uses[(e.cell_b, k)] == 1
    # each cell appears as often as its degree
    assert Counter(c for c, _ in tour) == Counter({i: tree.degree(i) for i in range(n)})


def _check_plan(plan, ds, mode, bound):
    every = ds + plan.guides
    for i, a in enumerate(every):
        for b in every[i + 1:]:
            check_disjoint(a, b)
    if len(ds) == 1:
        assert plan.belt is None
        return
    assert verify(plan.curve, every, mode).valid
    assert len(plan.guides) <= bound * len(ds)


@given(seeds, st.integers(1, 20))
def test_place_guides(seed, n):
    ds = mixed_radii(n, seed)
    _check_plan(place_guides(ds), ds, MULTI_TOUCH, MULTI_GUIDES_PER_DISK)


@given(seeds, st.integers(1, 20))
def test_augment_one_touch(seed, n):
    ds = mixed_radii(n, seed)
    plan = augment_one_touch(ds)
    _check_plan(plan, ds, ONE_TOUCH, ONE_TOUCH_GUIDES_PER_DISK)
    if n > 1:
        counts = Counter(plan.belt.disks)
        assert all(counts[d.id] == 1 for d in ds)


def test_lower_bound_instance():
    lb = lower_bound_instance(6)
    k = len(lb.small)
    assert len(lb.blocked_pairs) == k * (k - 1) // 2
    # among the small disks, with the central disk as obstacle, nothing is unblocked
    rep = audit(lb.disks, [], among=lb.small)
    assert not rep.unblocked_pairs
    assert solve_one_touch(lb.disks) is None
    plan = augment_one_touch(lb.disks)
    assert verify(plan.curve, lb.disks + plan.guides, ONE_TOUCH).valid
    with pytest.raises(ValueError):
        lower_bound_instance(3)


def test_power_diagram_rejects_empty():
    with pytest.raises(DegenerateInput):
        power_diagram([])


def test_two_disks():
    ds = [Disk.at(0, 0, 0, 1), Disk.at(1, 5, 0, 2)]
    pd = power_diagram(ds)
    assert pd.method == "all-pairs"
    e = pd.edges[0]
    # the radical axis: x with x^2 - 1 = (x - 5)^2 - 4
    assert e.p[0] == pytest.approx(2.2) and e.q[0] == pytest.approx(2.2)
