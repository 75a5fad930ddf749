import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conveyor.belt import (
    MULTI_TOUCH, ONE_TOUCH, BeltSpec, Contact, canonicalize, check_spec, full_circle,
    is_bitonic, polygonalization_belt, polyline, realize, verify,
)
from conveyor.errors import CollinearCenters
from conveyor.geom import Disk
from conveyor.generators import mixed_radii

from oracles import sampled_valid

ROW = [Disk.at(0, 0, 0, 1), Disk.at(1, 4, 0, 1), Disk.at(2, 8, 1, 1)]


def spec(*items, mode=ONE_TOUCH):
    return BeltSpec.from_signs(items, mode)


def test_hull_belt_is_valid():
    curve = realize(spec((0, 1), (1, 1), (2, 1)), ROW)
    rep = verify(curve, ROW, ONE_TOUCH)
    assert rep.valid, rep.failures
    assert curve.contact_disks() == [0, 1, 2]


def test_full_circle_valid_for_single_disk():
    d = [Disk.at(3, 1, 1, 2)]
    assert verify(full_circle(d[0]), d).valid


def test_two_disk_belt():
    two = ROW[:2]
    assert check_spec(spec((0, 1), (1, 1)), two).valid
    # figure eight: crossing inner tangents
    assert "NOT_SIMPLE" in check_spec(spec((0, 1), (1, -1)), two).codes()


def test_missed_disk():
    rep = check_spec(spec((0, 1), (2, 1)), ROW)
    assert "MISSED_DISK" in rep.codes()


def test_require_restricts_coverage():
    rep = check_spec(spec((0, 1), (2, 1)), ROW, require=[0, 2])
    assert "MISSED_DISK" not in rep.codes()


def test_blocked_bitangent():
    ds = [Disk.at(0, 0, 0, 1), Disk.at(1, 5, -0.5, 1), Disk.at(2, 10, 0, 1)]
    # 0 -> 2 along the line y = -1 cuts through disk 1
    rep = check_spec(spec((0, 1), (2, 1), (1, -1), mode=MULTI_TOUCH), ds)
    assert rep.codes() & {"BLOCKED_BITANGENT", "INTERIOR_HIT"}


def test_multi_touch_in_one_touch_mode():
    ds = [Disk.at(0, 0, 0, 1), Disk.at(1, 4, 0, 1), Disk.at(2, 2, 5, 1)]
    s = spec((0, 1), (1, 1), (2, 1), (1, 1), mode=MULTI_TOUCH)
    assert "MULTI_TOUCH_IN_ONE_TOUCH_MODE" in check_spec(s, ds, ONE_TOUCH).codes()


def test_spec_validation():
    with pytest.raises(ValueError):
        spec((0, 1))
    with pytest.raises(ValueError):
        spec((0, 1), (0, -1), (1, 1))
    with pytest.raises(ValueError):
        spec((0, 1), (1, 1), (0, -1))
    with pytest.raises(ValueError):
        Contact(0, "up")


@given(st.lists(st.tuples(st.integers(0, 5), st.sampled_from([1, -1])), min_size=2, max_size=8),
       st.integers(0, 7))
def test_canonicalize_invariant(items, r):
    items = [it for k, it in enumerate(items) if k == 0 or it[0] != items[k - 1][0]]
    if len(items) < 2 or items[0][0] == items[-1][0]:
        return
    s = spec(*items, mode=MULTI_TOUCH)
    rot = items[r % len(items):] + items[:r % len(items)]
    rev = [(d, -sg) for d, sg in reversed(items)]
    c = canonicalize(s)
    assert canonicalize(spec(*rot, mode=MULTI_TOUCH)) == c
    assert canonicalize(spec(*rev, mode=MULTI_TOUCH)) == c
    assert c.contacts[0].key() <= min(ct.key() for ct in c.contacts)


def test_is_bitonic():
    assert is_bitonic([0, 1, 2, 1])
    assert not is_bitonic([0, 2, 1, 3])
    assert not is_bitonic([0, 1, 1])


def test_polygonalization_belt_valid_on_spread_disks():
    ds = mixed_radii(8, 3)
    s = polygonalization_belt(ds)
    assert sorted(s.disks) == list(range(8))
    with pytest.raises(CollinearCenters):
        polygonalization_belt([Disk.at(i, 3 * i, 0, 1) for i in range(3)])


def test_polyline_closes_on_circles():
    curve = realize(spec((0, 1), (1, 1), (2, 1)), ROW)
    pts = polyline(curve, ROW)
    d = np.min([np.abs(np.hypot(pts[:, 0] - x.x, pts[:, 1] - x.y) - x.radius) for x in ROW], axis=0)
    assert len(pts) > 20
    # every sample lies on a disk boundary or on a straight tangent run
    assert np.sum(d < 1e-9) > len(pts) // 2


def test_verifier_agrees_with_sampling_oracle():
    """Random short specs on random small instances: exact verifier vs dense sampling."""
    rng = random.Random(7)
    agree = checked = 0
    for trial in range(300):
        ds = mixed_radii(4, trial, r_range=(0.5, 1.5), clearance=0.3)
        k = rng.randint(2, 5)
        items = []
        while len(items) < k:
            d = rng.randrange(4)
            if items and items[-1][0] == d:
                continue
            items.append((d, rng.choice((1, -1))))
        if items[0][0] == items[-1][0]:
            continue
        s = spec(*items, mode=MULTI_TOUCH)
        try:
            curve = realize(s, ds)
        except Exception:
            continue
        checked += 1
        exact = verify(curve, ds, MULTI_TOUCH).valid
        agree += exact == sampled_valid(curve, ds)
    assert checked > 150  # almost all random specs are invalid; the next test covers valid ones
    assert agree == checked


def test_solver_belts_and_mutants_against_sampling_oracle():
    from conveyor.solver import SearchLimits, enumerate_multi_touch

    valid = mutants = 0
    for seed in range(25):
        ds = mixed_radii(3, seed, r_range=(0.5, 1.5), clearance=0.3)
        for s in enumerate_multi_touch(ds, SearchLimits(max_contacts_per_disk=2)):
            curve = realize(s, ds)
            assert verify(curve, ds, MULTI_TOUCH).valid
            assert sampled_valid(curve, ds)
            valid += 1
            for k in range(len(s.contacts)):
                cs = list(s.contacts)
                cs[k] = cs[k].flipped()
                try:
                    bad = realize(BeltSpec(tuple(cs), MULTI_TOUCH), ds)
                except Exception:
                    continue
                mutants += 1
                assert verify(bad, ds, MULTI_TOUCH).valid == sampled_valid(bad, ds)
    assert valid >= 25 and mutants >= 25
