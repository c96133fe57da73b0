"""Adversarial families for advice lower bounds and their verification.

Each family shares a first part; the second part, chosen by an index vector
``j``, forces a different optimal clustering of that shared prefix.  The
verifier checks this by enumerating every optimal clustering of every member.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .geometry import Instance, Partition, Point, restrict_to_prefix
from .offline import enumerate_optimal

REAL_SCALE = 10
RECONSTRUCTED = "reconstructed"
PAPER_FORMULA = "paper-formula"


@dataclass(frozen=True)
class FamilySpec:
    m: int
    d: int
    lattice: bool
    j: Tuple[int, ...]
    variant: str = RECONSTRUCTED

    def __post_init__(self) -> None:
        if self.m < 1 or self.d < 1:
            raise ValueError("m and d must be positive")
        object.__setattr__(self, "j", tuple(self.j))
        if len(self.j) != self.m * self.d:
            raise ValueError(f"j must have length m*d = {self.m * self.d}")
        alphabet = (0, 1) if self.lattice else (-1, 0, 1)
        bad = [x for x in self.j if x not in alphabet]
        if bad:
            raise ValueError(f"invalid j entries {bad}; allowed {alphabet}")
        if self.variant not in (RECONSTRUCTED, PAPER_FORMULA):
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def prefix_length(self) -> int:
        return self.m * (1 + self.d if self.lattice else 1 + 2 * self.d)

    def to_dict(self) -> dict:
        return {"m": self.m, "d": self.d, "lattice": self.lattice, "j": list(self.j),
                "variant": self.variant}


def _offset(d: int, base: int, axis: int, delta: int) -> Point:
    """``base * e_1 + delta * e_axis`` (axis is 0-based)."""
    p = [0] * d
    p[0] = base
    p[axis] += delta
    return tuple(p)


def _shuffled(points: List[Point], seed: Optional[int]) -> List[Point]:
    if seed is not None:
        random.Random(seed).shuffle(points)
    return points


def gen_real_family(m: int, d: int, j: Sequence[int], shuffle_seed: Optional[int] = None) -> Instance:
    """Instance over R^d with scale 10 for index vector ``j`` in {-1,0,1}^(m*d).

    First part: the centres ``4i e_1`` for every block, then for each axis the
    points at -0.5 then +0.5 along it.  Second part, for each ``j_k != 0``:
    the pair at ``0.1 j_k -1`` and ``0.1 j_k + 1`` along axis ``l``.
    """
    spec = FamilySpec(m, d, False, tuple(j))
    S = REAL_SCALE
    pts = [_offset(d, 4 * i * S, 0, 0) for i in range(1, m + 1)]
    for axis in range(d):
        for delta in (-S // 2, S // 2):
            pts.extend(_offset(d, 4 * i * S, axis, delta) for i in range(1, m + 1))
    tail = []
    for i in range(1, m + 1):
        for axis in range(d):
            jk = spec.j[(i - 1) * d + axis]
            if jk:
                tail.append(_offset(d, 4 * i * S, axis, jk - S))
                tail.append(_offset(d, 4 * i * S, axis, jk + S))
    return Instance(d, S, tuple(pts + _shuffled(tail, shuffle_seed)), lattice=False)


def gen_int_family(
    m: int,
    d: int,
    j: Sequence[int],
    variant: str = RECONSTRUCTED,
    shuffle_seed: Optional[int] = None,
) -> Instance:
    """Lattice instance over Z^d for ``j`` in {0,1}^(m*d).

    First part: the centres ``5i e_1``, then ``5i e_1 + e_l`` for each axis.
    Each ``j_k = 1`` appends the points at -1 and +2 along axis ``l``.  The
    ``paper-formula`` variant uses +3 instead of +2.
    """
    spec = FamilySpec(m, d, True, tuple(j), variant)
    far = 3 if variant == PAPER_FORMULA else 2
    pts = [_offset(d, 5 * i, 0, 0) for i in range(1, m + 1)]
    for axis in range(d):
        pts.extend(_offset(d, 5 * i, axis, 1) for i in range(1, m + 1))
    tail = []
    for i in range(1, m + 1):
        for axis in range(d):
            if spec.j[(i - 1) * d + axis]:
                tail.append(_offset(d, 5 * i, axis, -1))
                tail.append(_offset(d, 5 * i, axis, far))
    return Instance(d, 1, tuple(pts + _shuffled(tail, shuffle_seed)), lattice=True)


def family_specs(m: int, d: int, lattice: bool, variant: str = RECONSTRUCTED) -> List[FamilySpec]:
    alphabet = (0, 1) if lattice else (-1, 0, 1)
    return [FamilySpec(m, d, lattice, j, variant) for j in itertools.product(alphabet, repeat=m * d)]


def build(spec: FamilySpec, shuffle_seed: Optional[int] = None) -> Instance:
    if spec.lattice:
        return gen_int_family(spec.m, spec.d, spec.j, spec.variant, shuffle_seed)
    return gen_real_family(spec.m, spec.d, spec.j, shuffle_seed)


def real_family(m: int, d: int) -> List[Instance]:
    """All 3^(m*d) real-family instances, j in lexicographic order."""
    return [build(s) for s in family_specs(m, d, False)]


def int_family(m: int, d: int, variant: str = RECONSTRUCTED) -> List[Instance]:
    return [build(s) for s in family_specs(m, d, True, variant)]


def ceil_log2(k: int) -> int:
    if k < 1:
        raise ValueError("need a positive count")
    return (k - 1).bit_length()


@dataclass
class Prop1Report:
    family_size: int
    prefix_length: int
    prefix_partitions: List[List[Partition]]
    pairs: List[Tuple[int, int, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok in self.pairs)

    @property
    def distinct_words(self) -> int:
        return self.family_size if self.passed else behavior_classes(self.prefix_partitions)

    @property
    def implied_bits(self) -> int:
        """Length some advice word must reach: ceil(log2 #distinct words)."""
        return ceil_log2(self.distinct_words)

    def to_dict(self) -> dict:
        return {
            "family_size": self.family_size,
            "prefix_length": self.prefix_length,
            "passed": self.passed,
            "distinct_words": self.distinct_words,
            "implied_bits": self.implied_bits,
            "pairs": [{"a": a, "b": b, "disjoint": ok} for a, b, ok in self.pairs],
            "prefix_partitions": [
                [[list(block) for block in part] for part in parts]
                for parts in self.prefix_partitions
            ],
        }


def _prefix_partition_sets(family: Sequence[Instance], k: int, cap: Optional[int]) -> List[Set[Partition]]:
    if not family:
        raise ValueError("empty family")
    head = family[0].points[:k]
    for idx, inst in enumerate(family):
        if inst.n < k or inst.points[:k] != head:
            raise ValueError(f"family member {idx} does not share the first {k} points")
    return [{restrict_to_prefix(p, k) for p in enumerate_optimal(inst, cap)} for inst in family]


def behavior_classes(prefix_sets: Sequence) -> int:
    """Connected components of the "share an optimal prefix partition" relation."""
    sets = [set(s) for s in prefix_sets]
    parent = list(range(len(sets)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: Dict[Partition, int] = {}
    for idx, s in enumerate(sets):
        for part in s:
            if part in owner:
                parent[find(idx)] = find(owner[part])
            else:
                owner[part] = idx
    return len({find(i) for i in range(len(sets))})


def proposition1_check(family: Sequence[Instance], k: int, cap: Optional[int] = None) -> Prop1Report:
    """Check that members sharing the first ``k`` requests need different advice.

    Passes iff, for every pair, no optimal clustering of one member and no
    optimal clustering of the other induce the same partition of the prefix.
    """
    sets = _prefix_partition_sets(family, k, cap)
    pairs = [(a, b, not (sets[a] & sets[b])) for a, b in itertools.combinations(range(len(sets)), 2)]
    return Prop1Report(len(family), k, [sorted(s) for s in sets], pairs)


def prefix_behavior_count(family: Sequence[Instance], k: int, cap: Optional[int] = None) -> int:
    return behavior_classes(_prefix_partition_sets(family, k, cap))


@dataclass(frozen=True)
class AdviceBound:
    """``coefficient`` bits, times log2(3) when ``log2_3`` is set."""

    coefficient: Fraction
    log2_3: bool

    def __float__(self) -> float:
        return float(self.coefficient) * (math.log2(3) if self.log2_3 else 1.0)

    def render(self, digits: int = 6) -> str:
        return f"{float(self):.{digits}f}"

    def __str__(self) -> str:
        if self.coefficient == 0:
            return "0"
        return f"{self.coefficient}*log2(3)" if self.log2_3 else str(self.coefficient)


def min_advice_lower_bound(n: int, d: int, lattice: bool) -> AdviceBound:
    """Bits some length-n input forces: n*d*log2(3)/(1+4d) over R^d, n*d/(1+3d) over Z^d."""
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    if lattice:
        return AdviceBound(Fraction(n * d, 1 + 3 * d), False)
    return AdviceBound(Fraction(n * d, 1 + 4 * d), n > 0)
