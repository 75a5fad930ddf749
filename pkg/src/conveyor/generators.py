"""Seeded random instance generators.

Every generator takes an explicit ``numpy.random.Generator`` (or a seed), so a
corpus is reproducible from its seed alone.
"""

from __future__ import annotations

import math
from typing import Union

import numpy as np

from .geom import Disk

SeedLike = Union[int, np.random.Generator]


def _rng(seed: SeedLike) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def xy_monotone_unit(n: int, seed: SeedLike, step: tuple[float, float] = (2.05, 4.0)) -> list[Disk]:
    """Unit disks whose centers increase in both x and y.

    Each step has length at least ``step[0]`` > 2 and both components positive,
    so later centers only get farther away: the disks are disjoint.
    """
    rng = _rng(seed)
    theta = rng.uniform(0.1, math.pi / 2 - 0.1, n)
    length = rng.uniform(step[0], step[1], n)
    xs = np.cumsum(length * np.cos(theta))
    ys = np.cumsum(length * np.sin(theta))
    return [Disk.at(i, float(x), float(y), 1.0) for i, (x, y) in enumerate(zip(xs, ys))]


def x_separated_unit(n: int, seed: SeedLike, gap: tuple[float, float] = (2.0, 3.5),
                     y_range: float = 6.0) -> list[Disk]:
    """Unit disks with consecutive x gaps of at least 2 and arbitrary heights."""
    rng = _rng(seed)
    lo = max(gap[0], 2.0 + 1e-9)
    xs = np.cumsum(rng.uniform(lo, gap[1], n))
    ys = rng.uniform(-y_range, y_range, n)
    return [Disk.at(i, float(x), float(y), 1.0) for i, (x, y) in enumerate(zip(xs, ys))]


def mixed_radii(n: int, seed: SeedLike, r_range: tuple[float, float] = (0.2, 2.0),
                clearance: float = 0.05, max_tries: int = 100_000) -> list[Disk]:
    """Disjoint disks of mixed radii, rejection-sampled in a square that grows like sqrt(n)."""
    rng = _rng(seed)
    half = 4.0 * math.sqrt(max(n, 1))
    centers = np.empty((0, 2))
    radii = np.empty(0)
    tries = 0
    while len(radii) < n:
        tries += 1
        if tries > max_tries:
            raise RuntimeError("could not place disjoint disks; enlarge the square")
        r = rng.uniform(*r_range)
        c = rng.uniform(-half, half, 2)
        if len(radii) and np.any(np.hypot(*(centers - c).T) <= radii + r + clearance):
            continue
        centers = np.vstack([centers, c])
        radii = np.append(radii, r)
    return [Disk.at(i, float(c[0]), float(c[1]), float(r)) for i, (c, r) in enumerate(zip(centers, radii))]


def unit_random(n: int, seed: SeedLike, clearance: float = 0.05) -> list[Disk]:
    return mixed_radii(n, seed, (1.0, 1.0), clearance)
