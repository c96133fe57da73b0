"""Acceptance criteria, one check per criterion.

Run with ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``)
to see one PASS/FAIL line per criterion.
"""
import math
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import best_anchor_count  # noqa: E402

from unitadvice.algorithms import A1, AD, AZ, OracleError  # noqa: E402
from unitadvice.cli import main as cli_main  # noqa: E402
from unitadvice.geometry import Instance, random_instance, restrict_to_prefix  # noqa: E402
from unitadvice.lower_bounds import (  # noqa: E402
    family_specs,
    build,
    gen_real_family,
    min_advice_lower_bound,
    proposition1_check,
)
from unitadvice.offline import enumerate_optimal, exact_min_clusters, greedy_1d  # noqa: E402
from unitadvice.runtime import run_online, solve  # noqa: E402

FAMILY_CAP = 16


def criterion_1():
    rng = random.Random(1001)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(1000):
        inst = random_instance(rng, rng.randint(1, 12), 1, lo=0, hi=rng.choice((3, 6, 12)))
        if greedy_1d(inst).num_clusters != exact_min_clusters(inst)[0]:
            mismatches += 1
    elapsed = time.perf_counter() - start
    return mismatches == 0 and elapsed < 60, f"mismatches={mismatches} time={elapsed:.1f}s (<60s)"


def criterion_2():
    rng = random.Random(1002)
    bad = 0
    for _ in range(1000):
        n = rng.randint(1, 200)
        inst = random_instance(rng, n, 1, lo=-20, hi=rng.choice((10, 40, 100)))
        tr = solve(A1(), inst)
        if tr.verdict != "optimal" or tr.bits_read != n:
            bad += 1
    return bad == 0, f"failures={bad}/1000"


def criterion_3():
    rng = random.Random(1003)
    bad, counterexamples, spurious = 0, [], 0
    for idx in range(500):
        d = (2, 3)[idx % 2]
        n = rng.randint(1, 12)
        inst = random_instance(rng, n, d, lo=0, hi=rng.choice((2, 3)))
        try:
            tape = AD().oracle(inst)
        except OracleError:
            counterexamples.append(inst.points)
            # a logged counterexample must be real: no anchor labelling reaches OPT
            if best_anchor_count(inst.points, inst.scale) <= exact_min_clusters(inst)[0]:
                spurious += 1
            continue
        tr = run_online(AD(), inst, tape)
        if tr.verdict != "optimal" or tr.bits_read != n * d:
            bad += 1
    for pts in counterexamples:
        print(f"    ad counterexample (no distinct-anchor optimum): {pts}")
    detail = f"failures={bad} counterexamples={len(counterexamples)} (verified) spurious={spurious}"
    return bad == 0 and spurious == 0, detail


def criterion_4():
    bad = 0
    total = 0
    for m in range(1, 5):
        for spec in family_specs(m, 1, True):
            total += 1
            if solve(AZ(), build(spec)).verdict != "optimal":
                bad += 1
    rng = random.Random(1004)
    for _ in range(1000):
        n = rng.randint(1, 100)
        inst = random_instance(rng, n, 1, lo=0, hi=rng.choice((n, 2 * n, 3 * n)), scale=1,
                               lattice=True, distinct=True)
        total += 1
        if solve(AZ(), inst).verdict != "optimal":
            bad += 1
    return bad == 0, f"non-optimal={bad}/{total}"


def criterion_5():
    inst = Instance(1, 1, ((5,), (6,), (4,), (7,)), lattice=True)
    tr = solve(AZ(), inst)
    ok = (
        [s.bits for s in tr.steps] == [(), (0,), (1,), (1,)]
        and tr.bits_read == 3
        and tr.over_claim
        and tr.claimed_bits == 2
        and tr.verdict == "optimal"
        and tr.clusters_used == 2
    )
    return ok, f"bits={tr.bit_string} claimed<={tr.claimed_bits} flagged={tr.over_claim} verdict={tr.verdict}"


def _family_check(m, d, lattice):
    specs = family_specs(m, d, lattice)
    rep = proposition1_check([build(s) for s in specs], specs[0].prefix_length, cap=FAMILY_CAP)
    return rep


def criterion_6():
    start = time.perf_counter()
    expected = {(1, 1): (3, 2), (2, 1): (9, 4), (3, 1): (27, 5), (1, 2): (9, 4)}
    ok, parts = True, []
    for (m, d), (size, bits) in expected.items():
        rep = _family_check(m, d, False)
        assert bits == math.ceil(m * d * math.log2(3))
        good = rep.passed and rep.family_size == size and rep.implied_bits == bits
        ok &= good
        parts.append(f"({m},{d}):{rep.family_size}/{rep.implied_bits}b{'' if good else '!'}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 300, " ".join(parts) + f" time={elapsed:.1f}s (<300s)"


def criterion_7():
    ok, parts = True, []
    for m, d in [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3)]:
        rep = _family_check(m, d, True)
        good = rep.passed and rep.family_size == 2 ** (m * d) and rep.implied_bits == m * d
        ok &= good
        parts.append(f"({m},{d}):{rep.implied_bits}b{'' if good else '!'}")
    return ok, " ".join(parts)


def criterion_8():
    real = min_advice_lower_bound(5, 1, lattice=False)
    lat = min_advice_lower_bound(4, 1, lattice=True)
    ok = (
        real.coefficient == 1 and real.log2_3 and abs(float(real) - math.log2(3)) <= 1e-12
        and lat.coefficient == 1 and not lat.log2_3 and float(lat) == 1.0
    )
    return ok, f"real(5,1)={real} lattice(4,1)={lat}"


def criterion_9():
    # a=4 (index 0), b=3.5 (index 1), c=4.5 (index 2)
    wanted = {
        (-1,): {((0, 2), (1,))},   # {b}, {a, c}
        (0,): {((0, 1, 2),)},      # {b, a, c}
        (1,): {((0, 1), (2,))},    # {b, a}, {c}
    }
    got = {}
    for j in wanted:
        inst = gen_real_family(1, 1, j)
        got[j] = {restrict_to_prefix(p, 3) for p in enumerate_optimal(inst)}
    disjoint = all(not (got[x] & got[y]) for x in got for y in got if x < y)
    return got == wanted and disjoint, f"prefix partitions={[sorted(v) for v in got.values()]}"


def _snapshot(root):
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def _acceptance_commands(out):
    out.mkdir(parents=True)
    cli_main(["gen", "random", "--n", "10", "--d", "2", "--seed", "7", "--count", "3", "--out", str(out / "rnd")])
    cli_main(["gen", "real-family", "--m", "2", "--d", "1", "--all", "--out", str(out / "real")])
    cli_main(["gen", "int-family", "--m", "1", "--d", "2", "--all", "--out", str(out / "int")])
    cli_main(["verify-lb", str(out / "real" / "manifest.json"), "--out", str(out / "real_report.json")])
    cli_main(["verify-lb", str(out / "int" / "manifest.json"), "--out", str(out / "int_report.json")])
    cli_main(["run", "--algorithm", "ad", str(out / "rnd" / "random_0000.json"), "--out", str(out / "t.json")])
    cli_main(["sweep", "--algorithm", "a1", "--algorithm", "grid", "--count", "20", "--n", "50",
              "--seed", "9", "--out", str(out / "sweep.csv")])
    cli_main(["sweep", "--algorithm", "az", "--family", "int", "--m-max", "3", "--out", str(out / "az.csv")])


def criterion_10(tmp):
    _acceptance_commands(tmp / "first")
    _acceptance_commands(tmp / "second")
    a, b = _snapshot(tmp / "first"), _snapshot(tmp / "second")
    return a == b and len(a) > 0, f"files={len(a)} identical={a == b}"


def _report(number, result):
    ok, detail = result
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    return ok, line


@pytest.fixture
def report(capsys):
    def _do(number, result):
        with capsys.disabled():
            ok, line = _report(number, result)
        assert ok, line
    return _do


def test_criterion_01_greedy_matches_exact(report):
    report(1, criterion_1())


def test_criterion_02_a1_optimal_n_bits(report):
    report(2, criterion_2())


def test_criterion_03_ad_optimal_nd_bits(report, capsys):
    with capsys.disabled():
        result = criterion_3()
    report(3, result)


def test_criterion_04_az_optimal(report):
    report(4, criterion_4())


def test_criterion_05_az_budget_trace(report):
    report(5, criterion_5())


def test_criterion_06_prop1_real(report):
    report(6, criterion_6())


def test_criterion_07_prop1_lattice(report):
    report(7, criterion_7())


def test_criterion_08_bound_formulas(report):
    report(8, criterion_8())


def test_criterion_09_prefix_partition_triple(report):
    report(9, criterion_9())


def test_criterion_10_determinism(report, tmp_path):
    report(10, criterion_10(tmp_path))


if __name__ == "__main__":
    import tempfile

    checks = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
              criterion_6, criterion_7, criterion_8, criterion_9]
    results = [_report(i, c())[0] for i, c in enumerate(checks, 1)]
    with tempfile.TemporaryDirectory() as tmp:
        results.append(_report(10, criterion_10(Path(tmp)))[0])
    sys.exit(0 if all(results) else 1)
