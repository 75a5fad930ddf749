import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from conveyor.generators import mixed_radii, unit_random, x_separated_unit, xy_monotone_unit
from conveyor.geom import check_disjoint


@given(st.integers(0, 10_000), st.integers(1, 40))
def test_mixed_radii_disjoint_and_in_range(seed, n):
    ds = mixed_radii(n, seed)
    assert [d.id for d in ds] == list(range(n))
    assert all(0.2 <= d.radius <= 2.0 for d in ds)
    for i, a in enumerate(ds):
        for b in ds[i + 1:]:
            check_disjoint(a, b)


def test_seeded_generators_reproducible():
    for gen in (mixed_radii, unit_random, x_separated_unit, xy_monotone_unit):
        assert gen(12, 3) == gen(12, 3)
        assert gen(12, np.random.default_rng(3)) == gen(12, 3)
        assert gen(12, 3) != gen(12, 4)
