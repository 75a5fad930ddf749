import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conveyor.belt import MULTI_TOUCH, ONE_TOUCH, check_spec, contact_x_sequence, is_bitonic, verify
from conveyor.errors import NotSeparated, NotUnitRadii
from conveyor.generators import x_separated_unit, xy_monotone_unit
from conveyor.geom import Disk, directed_bitangent, disjoint_from_hull, is_blocked
from conveyor.monotone import (
    bitonic_dp, build_belt, build_spec, is_monotonically_separated, is_x_separated,
    is_xy_monotone, sort_by_x, unblocked_table, upper_hull,
)

seeds = st.integers(0, 10_000)


def test_predicates_on_examples():
    ds = [Disk.at(0, 0, 0, 1), Disk.at(1, 3, 1, 1), Disk.at(2, 6, 3, 1)]
    assert is_xy_monotone(ds) and is_x_separated(ds) and is_monotonically_separated(ds)
    mirrored = [Disk.at(d.id, d.x, -d.y, 1) for d in ds]
    assert is_xy_monotone(mirrored)
    zig = [Disk.at(0, 0, 0, 1), Disk.at(1, 3, 5, 1), Disk.at(2, 6, 0, 1)]
    assert not is_xy_monotone(zig) and is_x_separated(zig)
    # tight x spacing with big height swings: disk 3 meets hull(0, 1)
    bad = [Disk.at(0, 0.0, -0.65, 1), Disk.at(1, 1.2, 2.34, 1), Disk.at(2, 2.4, -1.64, 1), Disk.at(3, 3.6, 0.74, 1)]
    assert not is_monotonically_separated(bad)
    with pytest.raises(NotUnitRadii):
        is_xy_monotone([Disk.at(0, 0, 0, 2)])


@given(seeds, st.integers(2, 25))
def test_generators_satisfy_predicates(seed, n):
    a = xy_monotone_unit(n, seed)
    b = x_separated_unit(n, seed)
    assert is_xy_monotone(a) and is_monotonically_separated(a)
    assert is_x_separated(b) and is_monotonically_separated(b)


def _separated_oracle(ds):
    ds = sort_by_x(ds)
    n = len(ds)
    for i in range(n):
        for j in range(i + 1, n):
            if any(not disjoint_from_hull(ds[k], ds[i], ds[j]) for k in range(j + 1, n)):
                return False
            if any(not disjoint_from_hull(ds[k], ds[i], ds[j]) for k in range(i)):
                return False
    return True


@given(seeds, st.integers(3, 7), st.floats(2.05, 3.0))
def test_separation_matches_scalar_oracle(seed, n, dx):
    rng = np.random.default_rng(seed)
    ds = [Disk.at(i, dx * i * 0.6, rng.uniform(-3, 3), 1) for i in range(n)]
    if any(np.hypot(a.x - b.x, a.y - b.y) <= 2.01 for a in ds for b in ds if a.id < b.id):
        return
    assert is_monotonically_separated(ds) == _separated_oracle(ds)


def _support_oracle(ds, n_dirs=20000):
    """Indices that attain the support function in some upward direction."""
    c = np.array([d.center for d in ds])
    r = np.array([d.radius for d in ds])
    th = np.linspace(1e-6, np.pi - 1e-6, n_dirs)
    u = np.stack([np.cos(th), np.sin(th)], 1)
    h = c @ u.T + r[:, None]
    return set(np.argmax(h, axis=0).tolist()) | {0, len(ds) - 1}


@given(seeds, st.integers(3, 15))
def test_upper_hull_matches_support_function(seed, n):
    ds = sort_by_x(x_separated_unit(n, seed))
    assert set(upper_hull(ds).chain) == _support_oracle(ds)


@given(seeds, st.integers(1, 30), st.booleans())
def test_build_belt_valid_and_bitonic(seed, n, xy):
    ds = xy_monotone_unit(n, seed) if xy else x_separated_unit(n, seed)
    curve = build_belt(ds)
    assert verify(curve, ds, MULTI_TOUCH).valid
    if n >= 2:
        assert is_bitonic(contact_x_sequence(build_spec(ds), ds))


def test_build_spec_rejects_equal_x():
    with pytest.raises(NotSeparated):
        build_spec([Disk.at(0, 0, 0, 1), Disk.at(1, 0, 5, 1)])


def test_unblocked_table_matches_brute_force():
    ds = x_separated_unit(7, 11)
    ok = unblocked_table(ds)
    for i in range(7):
        for j in range(7):
            if i == j:
                continue
            for a, sa in enumerate((1, -1)):
                for b, sb in enumerate((1, -1)):
                    seg = directed_bitangent(ds[i], sa, ds[j], sb)
                    assert ok[i, j, a, b] == (not is_blocked(seg, ds))


@given(seeds, st.integers(2, 9))
def test_bitonic_dp_gives_verified_one_touch_belt(seed, n):
    ds = x_separated_unit(n, seed)
    spec = bitonic_dp(ds)
    if spec is None:
        return
    assert check_spec(spec, ds, ONE_TOUCH).valid
    assert sorted(spec.disks) == list(range(n))
    assert is_bitonic(contact_x_sequence(spec, ds))


@pytest.mark.parametrize("seed", range(6))
def test_bitonic_dp_finds_belt_when_one_exists(seed):
    from conveyor.solver import SearchLimits, enumerate_one_touch

    ds = xy_monotone_unit(7, seed)
    bitonic = [s for s in enumerate_one_touch(ds, SearchLimits(max_disks=12))
               if is_bitonic(contact_x_sequence(s, ds))]
    assert (bitonic_dp(ds) is not None) == bool(bitonic)
