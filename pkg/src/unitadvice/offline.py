"""Optimal offline unit clustering.

``greedy_1d`` is the classic left-to-right sweep.  For any dimension,
``exact_min_clusters`` and ``enumerate_optimal`` run a branch-and-bound over
set partitions; they are the brute-force oracles the rest of the package is
checked against, so they refuse instances above a configurable size cap.
"""
from __future__ import annotations

import os
from typing import Iterator, List, Optional, Sequence, Tuple

from .geometry import Clustering, Instance, Partition, canonical, linf_distance

DEFAULT_SEARCH_CAP = 14
CAP_ENV_VAR = "UNITADVICE_SEARCH_CAP"


class InstanceTooLarge(ValueError):
    """Raised when an exact search is requested above the size cap."""


def default_search_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    return int(raw) if raw else DEFAULT_SEARCH_CAP


def _check_cap(instance: Instance, cap: Optional[int]) -> None:
    cap = default_search_cap() if cap is None else cap
    if instance.n > cap:
        raise InstanceTooLarge(
            f"instance too large for exact search: n={instance.n} > cap={cap}"
        )


def greedy_1d(instance: Instance) -> Clustering:
    """Sweep from the left; each leftmost unserved q opens [q, q+1]."""
    if instance.dim != 1:
        raise ValueError("greedy_1d needs a one-dimensional instance")
    order = sorted(range(instance.n), key=lambda i: instance.points[i][0])
    assignment = [0] * instance.n
    cid = -1
    left = None
    for i in order:
        x = instance.points[i][0]
        if left is None or x > left + instance.scale:
            cid += 1
            left = x
        assignment[i] = cid
    return Clustering(tuple(assignment))


def _first_fit(points: Sequence[Tuple[int, ...]], order: Sequence[int], scale: int) -> int:
    """Cluster count of a first-fit pass; an upper bound on the optimum."""
    lo: List[List[int]] = []
    hi: List[List[int]] = []
    for i in order:
        p = points[i]
        for b in range(len(lo)):
            if all(max(hi[b][t], p[t]) - min(lo[b][t], p[t]) <= scale for t in range(len(p))):
                lo[b] = [min(a, c) for a, c in zip(lo[b], p)]
                hi[b] = [max(a, c) for a, c in zip(hi[b], p)]
                break
        else:
            lo.append(list(p))
            hi.append(list(p))
    return len(lo)


def _far_set_size(points: Sequence[Tuple[int, ...]], order: Sequence[int], scale: int) -> int:
    """Size of a greedily built set of pairwise-far points; a lower bound."""
    chosen: List[Tuple[int, ...]] = []
    for i in order:
        p = points[i]
        if all(linf_distance(p, q) > scale for q in chosen):
            chosen.append(p)
    return len(chosen)


class _Search:
    """Depth-first assignment of points (in a fixed order) to at most k blocks."""

    def __init__(self, instance: Instance):
        self.points = instance.points
        self.scale = instance.scale
        self.dim = instance.dim
        # sorted order makes infeasible joins show up early
        self.order = sorted(range(instance.n), key=lambda i: instance.points[i])

    def run(self, k: int, collect: bool) -> List[Partition]:
        found: List[Partition] = []
        pts, S, dim, order = self.points, self.scale, self.dim, self.order
        n = len(order)
        lo: List[List[int]] = []
        hi: List[List[int]] = []
        members: List[List[int]] = []

        def rec(t: int) -> bool:
            if t == n:
                found.append(canonical(members))
                return not collect
            i = order[t]
            p = pts[i]
            for b in range(len(lo)):
                blo, bhi = lo[b], hi[b]
                if all(max(bhi[s], p[s]) - min(blo[s], p[s]) <= S for s in range(dim)):
                    old_lo, old_hi = blo[:], bhi[:]
                    for s in range(dim):
                        if p[s] < blo[s]:
                            blo[s] = p[s]
                        if p[s] > bhi[s]:
                            bhi[s] = p[s]
                    members[b].append(i)
                    stop = rec(t + 1)
                    members[b].pop()
                    lo[b], hi[b] = old_lo, old_hi
                    if stop:
                        return True
            if len(lo) < k:
                lo.append(list(p))
                hi.append(list(p))
                members.append([i])
                stop = rec(t + 1)
                lo.pop()
                hi.pop()
                members.pop()
                if stop:
                    return True
            return False

        rec(0)
        return found


def exact_min_clusters(instance: Instance, cap: Optional[int] = None) -> Tuple[int, Clustering]:
    """Minimum number of unit clusters and one optimal witness."""
    _check_cap(instance, cap)
    if instance.n == 0:
        return 0, Clustering(())
    search = _Search(instance)
    lower = _far_set_size(instance.points, search.order, instance.scale)
    upper = _first_fit(instance.points, search.order, instance.scale)
    for k in range(lower, upper + 1):
        hit = search.run(k, collect=False)
        if hit:
            return k, Clustering.from_blocks(hit[0], instance.n)
    raise AssertionError("first-fit bound was not attained")  # pragma: no cover


def iter_optimal(instance: Instance, cap: Optional[int] = None) -> Iterator[Partition]:
    count, _ = exact_min_clusters(instance, cap)
    if instance.n == 0:
        yield ()
        return
    yield from sorted(_Search(instance).run(count, collect=True))


def enumerate_optimal(instance: Instance, cap: Optional[int] = None) -> List[Partition]:
    """Every optimal clustering, canonical form, in lexicographic order."""
    return list(iter_optimal(instance, cap))


def optimal_count(instance: Instance, cap: Optional[int] = None) -> int:
    """Optimal cluster count; the 1-D sweep handles d=1 at any size."""
    if instance.dim == 1:
        return greedy_1d(instance).num_clusters
    return exact_min_clusters(instance, cap)[0]
