"""Tape-model runtime: an oracle writes bits, an online algorithm reads them.

Algorithms implement :class:`OnlineAlgorithm`.  ``start`` builds the per-run
state, and ``serve`` handles one request, pulling advice bits through the
``read_bit`` callable.  It returns a hashable cluster label.  The runner turns
labels into contiguous ids, counts bits, and checks feasibility.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Tuple

from .geometry import Clustering, Instance, Point, is_feasible
from .offline import InstanceTooLarge, optimal_count


class TapeUnderrun(RuntimeError):
    """The algorithm asked for a bit the oracle never wrote."""

    def __init__(self, position: int, step: Optional[int] = None):
        where = "" if step is None else f" at step {step}"
        super().__init__(f"oracle wrote too few bits{where}: bit #{position} is missing")
        self.step = step
        self.position = position


class AdviceTape:
    """Finite written prefix of the advice tape plus a forward-only cursor."""

    def __init__(self, bits: Iterable[int] = ()):
        self.bits: Tuple[int, ...] = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("advice bits must be 0 or 1")
        self.cursor = 0

    @classmethod
    def from_string(cls, s: str) -> "AdviceTape":
        return cls(int(ch) for ch in s)

    def read(self) -> int:
        if self.cursor >= len(self.bits):
            raise TapeUnderrun(self.cursor)
        b = self.bits[self.cursor]
        self.cursor += 1
        return b

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


class OnlineAlgorithm:
    """Base class for online algorithms; subclasses override the hooks."""

    name = "abstract"
    reads_advice = True

    def start(self, dim: int, scale: int, lattice: bool) -> Any:
        raise NotImplementedError

    def serve(self, state: Any, point: Point, read_bit: Callable[[], int]) -> Hashable:
        raise NotImplementedError

    def oracle(self, instance: Instance) -> AdviceTape:
        return AdviceTape()

    def claimed_bits(self, n: int, dim: int) -> Optional[int]:
        """Advice bits the algorithm is claimed to need on n points, if any."""
        return None

    def bit_cap(self, n: int, dim: int) -> Optional[int]:
        """Hard bit limit that must never be exceeded."""
        return self.claimed_bits(n, dim)


@dataclass
class Step:
    index: int
    bits: Tuple[int, ...]
    cluster: int


@dataclass
class Transcript:
    algorithm: str
    n: int
    dim: int
    steps: List[Step] = field(default_factory=list)
    bits_read: int = 0
    clusters_used: int = 0
    optimal: Optional[int] = None
    feasible: bool = True
    claimed_bits: Optional[int] = None
    over_claim: bool = False
    over_cap: bool = False

    @property
    def verdict(self) -> str:
        if not self.feasible:
            return "infeasible"
        if self.optimal is None:
            return "unchecked"
        return "optimal" if self.clusters_used == self.optimal else "suboptimal"

    @property
    def clustering(self) -> Clustering:
        return Clustering(tuple(s.cluster for s in self.steps))

    @property
    def bit_string(self) -> str:
        return "".join(str(b) for s in self.steps for b in s.bits)

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["steps"] = [
            {"index": s.index, "bits": "".join(map(str, s.bits)), "cluster": s.cluster}
            for s in self.steps
        ]
        d["bit_string"] = self.bit_string
        d["verdict"] = self.verdict
        return d

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Transcript":
        steps = [Step(s["index"], tuple(int(c) for c in s["bits"]), s["cluster"]) for s in d["steps"]]
        keys = ("algorithm", "n", "dim", "bits_read", "clusters_used", "optimal",
                "feasible", "claimed_bits", "over_claim", "over_cap")
        return cls(steps=steps, **{k: d[k] for k in keys})


def run_online(
    algorithm: OnlineAlgorithm,
    instance: Instance,
    tape: AdviceTape,
    optimal: Optional[int] = None,
    check_optimal: bool = True,
    cap: Optional[int] = None,
) -> Transcript:
    """Serve ``instance`` request by request, reading advice from ``tape``.

    If ``optimal`` is not given it is computed (greedy in 1-D, exact search
    otherwise); instances above the search cap get verdict ``unchecked``.
    """
    state = algorithm.start(instance.dim, instance.scale, instance.lattice)
    labels: Dict[Hashable, int] = {}
    tr = Transcript(algorithm.name, instance.n, instance.dim)
    for i, p in enumerate(instance.points):
        before = tape.cursor
        try:
            label = algorithm.serve(state, p, tape.read)
        except TapeUnderrun as exc:
            raise TapeUnderrun(exc.position, step=i) from None
        cid = labels.setdefault(label, len(labels))
        tr.steps.append(Step(i, tape.bits[before:tape.cursor], cid))
    tr.bits_read = tape.cursor
    tr.clusters_used = len(labels)
    tr.feasible = is_feasible(instance, tr.clustering)

    if optimal is None and check_optimal:
        try:
            optimal = optimal_count(instance, cap)
        except InstanceTooLarge:
            optimal = None
    tr.optimal = optimal

    tr.claimed_bits = algorithm.claimed_bits(instance.n, instance.dim)
    if tr.claimed_bits is not None:
        tr.over_claim = tr.bits_read > tr.claimed_bits
    hard = algorithm.bit_cap(instance.n, instance.dim)
    if hard is not None:
        tr.over_cap = tr.bits_read > hard
    return tr


def solve(algorithm: OnlineAlgorithm, instance: Instance, cap: Optional[int] = None) -> Transcript:
    """Write the oracle tape for ``instance`` and run the algorithm on it."""
    tape = algorithm.oracle(instance) if algorithm.reads_advice else AdviceTape()
    return run_online(algorithm, instance, tape, cap=cap)
