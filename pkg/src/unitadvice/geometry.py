"""Exact fixed-point points, request sequences and clusterings under L-infinity.

Every coordinate is an integer numerator over a per-instance denominator
``scale``; the real coordinate is ``numerator / scale``.  A set of points fits
a closed unit cube iff its spread in every dimension is at most ``scale``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Point = Tuple[int, ...]
Partition = Tuple[Tuple[int, ...], ...]

DEFAULT_SCALE = 10


class DimensionError(ValueError):
    pass


def to_scaled(value: Union[int, str, Fraction, Decimal], scale: int) -> int:
    """Convert an exact real (int, decimal string, Fraction) to a numerator.

    Floats are refused on purpose: ``0.1`` has no exact binary form.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    frac = Fraction(value) if not isinstance(value, str) else Fraction(Decimal(value))
    scaled = frac * scale
    if scaled.denominator != 1:
        raise ValueError(f"{value} is not representable with scale {scale}")
    return int(scaled)


@dataclass(frozen=True)
class Instance:
    """An ordered request sequence in ``dim`` dimensions."""

    dim: int
    scale: int
    points: Tuple[Point, ...]
    lattice: bool = False

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.scale < 1:
            raise ValueError("scale must be positive")
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            if len(p) != self.dim:
                raise DimensionError(f"point {p} does not have dimension {self.dim}")
            if self.lattice and any(c % self.scale for c in p):
                raise ValueError(f"point {p} is not on the integer lattice")

    @classmethod
    def from_reals(
        cls,
        values: Iterable,
        scale: int = DEFAULT_SCALE,
        lattice: bool = False,
    ) -> "Instance":
        """Build from real coordinates; scalars are read as 1-D points."""
        pts = []
        for v in values:
            if isinstance(v, (tuple, list)):
                pts.append(tuple(to_scaled(c, scale) for c in v))
            else:
                pts.append((to_scaled(v, scale),))
        if not pts:
            raise ValueError("cannot infer dimension of an empty sequence")
        return cls(len(pts[0]), scale, tuple(pts), lattice)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    def prefix(self, k: int) -> "Instance":
        return Instance(self.dim, self.scale, self.points[:k], self.lattice)

    def real(self, i: int) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.scale) for c in self.points[i])


def linf_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Chebyshev distance between two points, in scaled units."""
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return max((abs(x - y) for x, y in zip(a, b)), default=0)


def spread(points: Iterable[Sequence[int]]) -> Tuple[int, ...]:
    """Per-dimension ``max - min`` of a nonempty point set."""
    pts = list(points)
    if not pts:
        raise ValueError("empty point set")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionError("points of mixed dimension")
    return tuple(max(p[i] for p in pts) - min(p[i] for p in pts) for i in range(dim))


def fits_unit_cube(points: Iterable[Sequence[int]], scale: int) -> bool:
    # closed cube: spread exactly ``scale`` is allowed
    return all(s <= scale for s in spread(points))


def lower_corner(points: Iterable[Sequence[int]]) -> Point:
    """Canonical anchor of a cluster: the per-dimension minimum of its members."""
    pts = list(points)
    if not pts:
        raise ValueError("empty point set")
    return tuple(min(p[i] for p in pts) for i in range(len(pts[0])))


def cell(coord: int, scale: int) -> int:
    """``floor(coord / scale)`` computed exactly."""
    return coord // scale


def canonical(blocks: Iterable[Iterable[int]]) -> Partition:
    """Sort each block and order blocks by their minimum element."""
    out = [tuple(sorted(b)) for b in blocks]
    out = [b for b in out if b]
    out.sort()
    return tuple(out)


@dataclass(frozen=True)
class Clustering:
    """Assignment of request index -> cluster id (ids contiguous from 0)."""

    assignment: Tuple[int, ...]

    def __post_init__(self) -> None:
        a = tuple(self.assignment)
        object.__setattr__(self, "assignment", a)
        if set(a) != set(range(len(set(a)))):
            raise ValueError("cluster ids must be contiguous from 0")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "Clustering":
        blocks = canonical(blocks)
        size = sum(len(b) for b in blocks) if n is None else n
        assignment = [-1] * size
        for cid, block in enumerate(blocks):
            for i in block:
                if assignment[i] != -1:
                    raise ValueError(f"index {i} assigned twice")
                assignment[i] = cid
        if -1 in assignment:
            raise ValueError("some request index is unassigned")
        return cls(tuple(assignment))

    @property
    def num_clusters(self) -> int:
        return len(set(self.assignment))

    def __len__(self) -> int:
        return len(self.assignment)

    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_clusters)]
        for i, c in enumerate(self.assignment):
            out[c].append(i)
        return tuple(tuple(b) for b in out)

    def canonical(self) -> Partition:
        return canonical(self.blocks())


def is_feasible(instance: Instance, clustering: Clustering) -> bool:
    if len(clustering) != instance.n:
        return False
    return all(
        fits_unit_cube([instance.points[i] for i in block], instance.scale)
        for block in clustering.blocks()
    )


def restrict_to_prefix(c: Union[Clustering, Partition], k: int) -> Partition:
    """Partition induced on request indices ``0..k-1``, labels erased."""
    blocks = c.blocks() if isinstance(c, Clustering) else c
    n = sum(len(b) for b in blocks)
    if k > n:
        raise ValueError(f"prefix length {k} exceeds sequence length {n}")
    if k < 0:
        raise ValueError("prefix length must be non-negative")
    return canonical([i for i in b if i < k] for b in blocks)


def random_instance(
    rng: random.Random,
    n: int,
    dim: int = 1,
    lo: int = 0,
    hi: int = 10,
    scale: int = DEFAULT_SCALE,
    lattice: bool = False,
    distinct: bool = False,
) -> Instance:
    """Coordinates uniform on ``[lo, hi]`` (real units); lattice snaps to integers."""
    if hi < lo:
        raise ValueError("empty coordinate range")
    step = scale if lattice else 1
    grid = range(lo * scale, hi * scale + 1, step)
    if distinct:
        if n > len(grid) ** dim:
            raise ValueError(f"cannot draw {n} distinct points from the range")
        seen: set = set()
        pts = []
        while len(pts) < n:
            p = tuple(rng.choice(grid) for _ in range(dim))
            if p not in seen:
                seen.add(p)
                pts.append(p)
    else:
        pts = [tuple(rng.choice(grid) for _ in range(dim)) for _ in range(n)]
    return Instance(dim, scale, tuple(pts), lattice)
