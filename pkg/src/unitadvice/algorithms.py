"""Advice algorithms for optimal online unit clustering, plus a grid baseline.

Cluster labels are anchors: the integer tuple ``z`` naming the cube
``[z, z+1]^d``.  ``AZ`` labels its clusters by opening order instead.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Set, Tuple

from .geometry import Instance, Partition, Point, cell, lower_corner
from .offline import enumerate_optimal, greedy_1d
from .runtime import AdviceTape, OnlineAlgorithm


class OracleError(RuntimeError):
    pass


def _require_dim(dim: int, want: int, who: str) -> None:
    if dim != want:
        raise ValueError(f"{who} works in dimension {want}, got {dim}")


def cluster_anchor(points: Sequence[Point], scale: int) -> Tuple[int, ...]:
    """Per-dimension largest integer in the cube whose lower corner is the minimum."""
    return tuple(cell(q, scale) + 1 for q in lower_corner(points))


def anchor_options(points: Sequence[Point], scale: int) -> List[Tuple[int, ...]]:
    """Integer vectors z with floor(p) <= z <= floor(p)+1 for every member p."""
    canon = cluster_anchor(points, scale)
    axes = []
    for t, c in enumerate(canon):
        top = cell(max(p[t] for p in points), scale)
        axes.append((c,) if top == c else (c, top))
    return list(itertools.product(*axes))


def distinct_representatives(options: Sequence[Sequence[Hashable]]) -> Optional[List]:
    """Pick one option per slot, all different (augmenting-path matching)."""
    owner: Dict[Hashable, int] = {}

    def augment(slot: int, seen: Set[Hashable]) -> bool:
        for z in options[slot]:
            if z in seen:
                continue
            seen.add(z)
            if z not in owner or augment(owner[z], seen):
                owner[z] = slot
                return True
        return False

    for slot in range(len(options)):
        if not augment(slot, set()):
            return None
    chosen: List = [None] * len(options)
    for z, slot in owner.items():
        chosen[slot] = z
    return chosen


class GridBaseline(OnlineAlgorithm):
    """Put p into the cube of its floor; never reads advice."""

    name = "grid"
    reads_advice = False

    def start(self, dim, scale, lattice):
        return scale

    def serve(self, state, point, read_bit):
        return tuple(cell(c, state) for c in point)

    def claimed_bits(self, n, dim):
        return 0


class A1(OnlineAlgorithm):
    """One bit per point on the line.

    With ``z = floor(p)``, the bit says whether the optimal cluster of ``p``
    (closed interval ``[q, q+1]``) reaches ``[z+1, z+2)``.  The point goes to
    anchor ``z + bit``.
    """

    name = "a1"

    def start(self, dim, scale, lattice):
        _require_dim(dim, 1, "a1")
        return scale

    def serve(self, state, point, read_bit):
        return (cell(point[0], state) + read_bit(),)

    def oracle(self, instance: Instance) -> AdviceTape:
        _require_dim(instance.dim, 1, "a1")
        S = instance.scale
        opt = greedy_1d(instance)
        left = {}
        for i, c in enumerate(opt.assignment):
            x = instance.points[i][0]
            left[c] = min(left.get(c, x), x)
        bits = []
        for i, p in enumerate(instance.points):
            q = left[opt.assignment[i]]
            z = cell(p[0], S)
            # [q, q+S] meets [(z+1)S, (z+2)S)
            bits.append(int(q + S >= (z + 1) * S and q < (z + 2) * S))
        return AdviceTape(bits)

    def claimed_bits(self, n, dim):
        return n


class AD(OnlineAlgorithm):
    """d bits per point: bit i says whether the optimal cube's anchor is floor(p_i)+1."""

    name = "ad"

    def __init__(self, cap: Optional[int] = None):
        self.cap = cap

    def start(self, dim, scale, lattice):
        return scale

    def serve(self, state, point, read_bit):
        return tuple(cell(c, state) + read_bit() for c in point)

    def choose_anchors(self, instance: Instance) -> Tuple[Partition, List[Tuple[int, ...]]]:
        """An optimal clustering and pairwise distinct anchors for its clusters.

        A cluster may sit in any unit cube containing it, so along each axis
        its anchor is ``floor(min)+1`` (cube at the minimum) or ``floor(max)``
        (cube ending at the maximum).  The lower-corner choice is tried first.
        """
        S = instance.scale
        if instance.dim == 1:
            # sweep clusters start more than one unit apart, so anchors differ
            part = greedy_1d(instance).canonical()
            return part, [cluster_anchor([instance.points[i] for i in b], S) for b in part]
        for part in enumerate_optimal(instance, self.cap):
            options = [anchor_options([instance.points[i] for i in b], S) for b in part]
            chosen = distinct_representatives(options)
            if chosen is not None:
                return part, chosen
        raise OracleError("no optimal clustering admits pairwise distinct anchors")

    def oracle(self, instance: Instance) -> AdviceTape:
        part, anchors = self.choose_anchors(instance)
        anchor_of: Dict[int, Tuple[int, ...]] = {}
        for block, z in zip(part, anchors):
            for i in block:
                anchor_of[i] = z
        bits: List[int] = []
        for i, p in enumerate(instance.points):
            z = anchor_of[i]
            bits.extend(z[t] - cell(p[t], instance.scale) for t in range(instance.dim))
        return AdviceTape(bits)

    def claimed_bits(self, n, dim):
        return n * dim


@dataclass
class AZState:
    scale: int
    label: Dict[int, int] = field(default_factory=dict)
    marked: Set[int] = field(default_factory=set)
    cases: List[int] = field(default_factory=list)
    opened: int = 0

    def new_cluster(self, x: int) -> int:
        self.label[x] = self.opened
        self.opened += 1
        return self.label[x]

    def join(self, x: int, y: int, mark: bool) -> int:
        self.label[x] = self.label[y]
        if mark:
            self.marked.update((x, y))
        return self.label[x]


Ask = Callable[[int, int], int]


class AZ(OnlineAlgorithm):
    """Integer-line algorithm that asks for advice only next to an unmarked point.

    A bit answers "does the optimum put these two neighbours together?".
    Every confirmed pair is marked; marked points no longer attract requests.
    """

    name = "az"

    def start(self, dim, scale, lattice):
        _require_dim(dim, 1, "az")
        if not lattice:
            raise ValueError("az needs a lattice instance")
        return AZState(scale)

    @staticmethod
    def step(st: AZState, x: int, ask: Ask) -> int:
        if x in st.label:
            raise ValueError(f"az: repeated request point {x}")
        lo, hi = x - st.scale, x + st.scale
        lo_free = lo in st.label and lo not in st.marked
        hi_free = hi in st.label and hi not in st.marked
        if not lo_free and not hi_free:
            st.cases.append(1)
            return st.new_cluster(x)
        if lo_free and hi_free:
            st.cases.append(6)
            if ask(lo, x):
                return st.join(x, lo, mark=True)
            return st.join(x, hi, mark=True)
        if lo_free:
            if hi in st.marked:
                st.cases.append(2)
                return st.join(x, lo, mark=False)
            st.cases.append(4)
            if ask(lo, x):
                return st.join(x, lo, mark=True)
            return st.new_cluster(x)
        if lo in st.marked:
            st.cases.append(3)
            return st.join(x, hi, mark=False)
        st.cases.append(5)
        if ask(x, hi):
            return st.join(x, hi, mark=True)
        return st.new_cluster(x)

    def serve(self, state, point, read_bit):
        return self.step(state, point[0], lambda a, b: read_bit())

    def oracle(self, instance: Instance) -> AdviceTape:
        self.start(instance.dim, instance.scale, instance.lattice)
        xs = [p[0] for p in instance.points]
        if len(set(xs)) != len(xs):
            raise ValueError("az: repeated request point")
        opt = greedy_1d(instance)
        cluster_of = {x: c for x, c in zip(xs, opt.assignment)}
        bits: List[int] = []

        def ask(a: int, b: int) -> int:
            bits.append(int(a in cluster_of and cluster_of[a] == cluster_of[b]))
            return bits[-1]

        st = AZState(instance.scale)
        for x in xs:
            self.step(st, x, ask)
        return AdviceTape(bits)

    def claimed_bits(self, n, dim):
        return n // 2

    def bit_cap(self, n, dim):
        return n


REGISTRY: Dict[str, Callable[..., OnlineAlgorithm]] = {
    "a1": A1,
    "ad": AD,
    "az": AZ,
    "grid": GridBaseline,
}


def get_algorithm(name: str, cap: Optional[int] = None) -> OnlineAlgorithm:
    try:
        factory = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; choose from {sorted(REGISTRY)}") from None
    return factory(cap) if factory is AD else factory()
