import itertools

import pytest


def all_partitions(items):
    """Every set partition of ``items``; no pruning, used as an oracle."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in all_partitions(rest):
        for k in range(len(smaller)):
            yield smaller[:k] + [[first] + smaller[k]] + smaller[k + 1:]
        yield [[first]] + smaller


def brute_optimal(points, scale):
    """(min cluster count, set of canonical optimal partitions) by exhaustion."""
    best, found = None, set()
    for part in all_partitions(range(len(points))):
        ok = all(
            max(points[i][t] for i in b) - min(points[i][t] for i in b) <= scale
            for b in part
            for t in range(len(points[0]))
        )
        if not ok:
            continue
        canon = tuple(sorted(tuple(sorted(b)) for b in part))
        if best is None or len(part) < best:
            best, found = len(part), {canon}
        elif len(part) == best:
            found.add(canon)
    return (best or 0), found


def best_anchor_count(points, scale):
    """Fewest clusters any anchor-labelling algorithm can reach (each point
    goes to some anchor floor(p)+b, b in {0,1}^d), by exhaustive search."""
    d = len(points[0])
    options = [
        [tuple(c // scale + b for c, b in zip(p, bs)) for bs in itertools.product((0, 1), repeat=d)]
        for p in points
    ]
    best = [len(points) + 1]

    def rec(i, groups):
        if len(groups) >= best[0]:
            return
        if i == len(points):
            best[0] = len(groups)
            return
        for z in options[i]:
            members = groups.get(z)
            if members is None:
                groups[z] = [points[i]]
                rec(i + 1, groups)
                del groups[z]
            else:
                trial = members + [points[i]]
                if all(max(p[t] for p in trial) - min(p[t] for p in trial) <= scale for t in range(d)):
                    members.append(points[i])
                    rec(i + 1, groups)
                    members.pop()

    rec(0, {})
    return best[0]


@pytest.fixture
def brute():
    return brute_optimal
