"""Exhaustive belt search at desk scale.

Every belt curve has exactly one contact sequence that starts with a plus
contact on the lowest-id disk: rotate to any contact on that disk, and if
it is a minus contact traverse the curve backwards (reversal flips all
signs).  Both searches enumerate only sequences of that shape, so each
curve is produced once.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .belt import (
    MULTI_TOUCH,
    ONE_TOUCH,
    BeltCurve,
    BeltSpec,
    Contact,
    canonicalize,
    full_circle,
    realize,
    verify,
)
from .errors import BudgetExceeded, GeometryError
from .geom import DEFAULT_TOL, INTERIOR, Disk, Tolerance, directed_bitangent, segment_segment_intersect
from .monotone import unblocked_table

SIGNS = (1, -1)  # index 0 is plus, which sorts first


@dataclass(frozen=True)
class SearchLimits:
    max_disks: int = 12
    max_contacts_per_disk: int = 2
    time_budget: Optional[float] = None

    def __post_init__(self):
        if self.max_disks <= 0 or self.max_contacts_per_disk <= 0:
            raise ValueError("search limits must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")


class AdjacencyOracle:
    """Which directed bitangents (disk i sign a -> disk j sign b) exist and are unblocked."""

    def __init__(self, disks: Sequence[Disk], tol: Tolerance = DEFAULT_TOL):
        self.disks = list(disks)
        self.table = unblocked_table(self.disks, tol)

    def ok(self, i: int, a: int, j: int, b: int) -> bool:
        """``a`` and ``b`` are signs (+1/-1)."""
        return bool(self.table[i, j, 0 if a > 0 else 1, 0 if b > 0 else 1])

    def unblocked_pairs(self) -> set[tuple[int, int]]:
        """Unordered disk-id pairs joined by at least one unblocked bitangent."""
        n = len(self.disks)
        out = set()
        for i in range(n):
            for j in range(i + 1, n):
                if self.table[i, j].any():
                    a, b = self.disks[i].id, self.disks[j].id
                    out.add((min(a, b), max(a, b)))
        return out


class _Clock:
    def __init__(self, budget: Optional[float]):
        self.deadline = None if budget is None else time.perf_counter() + budget
        self.ticks = 0

    def check(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks % 64 == 0 and time.perf_counter() > self.deadline:
            raise BudgetExceeded("time budget exhausted before the enumeration finished")


class _Search:
    """Depth-first search over contact sequences starting with (0, +)."""

    def __init__(self, disks, limits, mode, prune, tol):
        self.ds = sorted(disks, key=lambda d: d.id)
        self.n = len(self.ds)
        self.mode = mode
        self.prune = prune
        self.tol = tol
        self.clock = _Clock(limits.time_budget)
        self.cap = 1 if mode == ONE_TOUCH else limits.max_contacts_per_disk
        self.oracle = AdjacencyOracle(self.ds, tol) if prune else None
        self._segs: dict = {}

    def seg(self, i, a, j, b):
        key = (i, a, j, b)
        if key not in self._segs:
            try:
                self._segs[key] = directed_bitangent(self.ds[i], a, self.ds[j], b)
            except GeometryError:
                self._segs[key] = None
        return self._segs[key]

    def edge_ok(self, i, a, j, b) -> bool:
        if self.prune:
            return self.oracle.ok(i, a, j, b)
        return self.seg(i, a, j, b) is not None

    def crosses(self, segs: list, new) -> bool:
        """Does ``new`` properly cross any earlier, non-consecutive segment?"""
        if not self.prune:
            return False
        for s in segs[:-1]:
            if segment_segment_intersect(s.p1, s.p2, new.p1, new.p2, self.tol.eps) == INTERIOR:
                return True
        return False

    def to_spec(self, seq) -> BeltSpec:
        return BeltSpec(tuple(Contact.signed(self.ds[p].id, s) for p, s in seq), self.mode)

    def check(self, seq) -> Optional[BeltCurve]:
        spec = self.to_spec(seq)
        try:
            curve = realize(spec, self.ds, self.tol)
        except GeometryError:
            return None
        if verify(curve, self.ds, self.mode, self.tol).valid:
            return curve
        return None

    def run(self, length: int, on_found) -> bool:
        """Enumerate sequences of exactly ``length`` contacts; stop when ``on_found`` returns True."""
        n, cap = self.n, self.cap
        counts = [0] * n
        counts[0] = 1
        seq = [(0, 1)]
        segs: list = []
        uncovered = [n - 1]

        def closing_ok() -> bool:
            (p, s), (q, t) = seq[-1], seq[0]
            if p == q or not self.edge_ok(p, s, q, t):
                return False
            last = self.seg(p, s, q, t)
            if self.prune:
                for x in segs[1:-1]:
                    if segment_segment_intersect(x.p1, x.p2, last.p1, last.p2, self.tol.eps) == INTERIOR:
                        return False
            return True

        def rec() -> bool:
            self.clock.check()
            if len(seq) == length:
                if uncovered[0] == 0 and closing_ok():
                    curve = self.check(seq)
                    if curve is not None:
                        return on_found(list(seq), curve)
                return False
            if uncovered[0] > length - len(seq):
                return False
            p, s = seq[-1]
            for q in range(n):
                if q == p or counts[q] >= cap:
                    continue
                for t in SIGNS:
                    if q == 0 and t < 0 and self.mode == ONE_TOUCH:
                        continue
                    if not self.edge_ok(p, s, q, t):
                        continue
                    new = self.seg(p, s, q, t)
                    if self.crosses(segs, new):
                        continue
                    seq.append((q, t))
                    segs.append(new)
                    counts[q] += 1
                    if counts[q] == 1:
                        uncovered[0] -= 1
                    stop = rec()
                    if counts[q] == 1:
                        uncovered[0] += 1
                    counts[q] -= 1
                    segs.pop()
                    seq.pop()
                    if stop:
                        return True
            return False

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 4 * length + 200))
        try:
            return rec()
        finally:
            sys.setrecursionlimit(old)


def _require_size(disks: Sequence[Disk], limits: SearchLimits) -> None:
    if len(disks) > limits.max_disks:
        raise ValueError(f"{len(disks)} disks exceed the search limit of {limits.max_disks}")
    if not disks:
        raise ValueError("no disks")


def solve_one_touch(disks: Sequence[Disk], limits: SearchLimits = SearchLimits(),
                    prune: bool = True, tol: Tolerance = DEFAULT_TOL) -> Optional[BeltCurve]:
    """Lexicographically least verified one-touch belt, or ``None``."""
    _require_size(disks, limits)
    if len(disks) == 1:
        return full_circle(disks[0])
    search = _Search(disks, limits, ONE_TOUCH, prune, tol)
    found: list = []

    def take(seq, curve):
        found.append(curve)
        return True

    search.run(len(disks), take)
    return found[0] if found else None


def enumerate_one_touch(disks: Sequence[Disk], limits: SearchLimits = SearchLimits(),
                        prune: bool = True, tol: Tolerance = DEFAULT_TOL) -> list[BeltSpec]:
    """All verified one-touch belts as canonical specs, in search order.

    A single disk has one belt, its boundary circle, but no contact
    sequence, so the list is empty; ``count_one_touch`` still counts it.
    """
    _require_size(disks, limits)
    if len(disks) == 1:
        return []
    search = _Search(disks, limits, ONE_TOUCH, prune, tol)
    seen: dict = {}

    def take(seq, curve):
        spec = canonicalize(search.to_spec(seq))
        seen.setdefault(spec.key(), spec)
        return False

    search.run(len(disks), take)
    return list(seen.values())


def count_one_touch(disks: Sequence[Disk], limits: SearchLimits = SearchLimits(),
                    prune: bool = True, tol: Tolerance = DEFAULT_TOL) -> int:
    if len(disks) == 1:
        return 1
    return len(enumerate_one_touch(disks, limits, prune, tol))


def solve_multi_touch(disks: Sequence[Disk], limits: SearchLimits = SearchLimits(),
                      prune: bool = True, tol: Tolerance = DEFAULT_TOL) -> Optional[BeltCurve]:
    """Shortest, then lexicographically least, verified belt with at most
    ``limits.max_contacts_per_disk`` contacts per disk.

    Complete only relative to the cap.
    """
    _require_size(disks, limits)
    n = len(disks)
    if n == 1:
        return full_circle(disks[0])
    search = _Search(disks, limits, MULTI_TOUCH, prune, tol)
    found: list = []

    def take(seq, curve):
        found.append(curve)
        return True

    for length in range(n, limits.max_contacts_per_disk * n + 1):
        if search.run(length, take):
            return found[0]
    return None


def enumerate_multi_touch(disks: Sequence[Disk], limits: SearchLimits = SearchLimits(),
                          prune: bool = True, tol: Tolerance = DEFAULT_TOL) -> list[BeltSpec]:
    """All verified belts with at most ``limits.max_contacts_per_disk`` contacts per disk, canonical."""
    _require_size(disks, limits)
    if len(disks) == 1:
        return []  # the circle itself; see enumerate_one_touch
    search = _Search(disks, limits, MULTI_TOUCH, prune, tol)
    seen: dict = {}

    def take(seq, curve):
        spec = canonicalize(search.to_spec(seq))
        seen.setdefault(spec.key(), spec)
        return False

    for length in range(len(disks), limits.max_contacts_per_disk * len(disks) + 1):
        search.run(length, take)
    return list(seen.values())


# ---------------------------------------------------------------------------
# Hamiltonian cycles
# ---------------------------------------------------------------------------


def _adjacency(graph) -> dict:
    if hasattr(graph, "adj") and not isinstance(graph, Mapping):
        return {v: set(graph.adj[v]) for v in graph.nodes}
    if isinstance(graph, Mapping):
        adj = {v: set(ns) for v, ns in graph.items()}
    else:
        adj = {}
        for u, v in graph:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    for v, ns in list(adj.items()):
        for u in ns:
            adj.setdefault(u, set()).add(v)
    return adj


def hamiltonian_cycles(graph) -> list[tuple]:
    """All Hamiltonian cycles by backtracking.

    ``graph`` is a mapping vertex -> neighbours, an edge list, or any object
    with ``nodes`` and ``adj``.  Each cycle starts at the least vertex and
    its second vertex is smaller than its last.
    """
    adj = _adjacency(graph)
    verts = sorted(adj)
    n = len(verts)
    if n < 3:
        return []
    start = verts[0]
    out: list[tuple] = []
    path = [start]
    used = {start}

    def rec():
        v = path[-1]
        if len(path) == n:
            if start in adj[v] and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for u in sorted(adj[v]):
            if u not in used:
                used.add(u)
                path.append(u)
                rec()
                path.pop()
                used.discard(u)

    rec()
    return sorted(out)
