"""Acceptance criteria, one test per criterion.

Each criterion prints a single ``[PASS]`` / ``[FAIL]`` line (collected into
the pytest terminal summary). Run directly with ``python
tests/test_acceptance.py`` to get just those lines.

Tolerances: every comparison is exact integer equality; the time budgets
are 120 s (criterion 1), 60 s (criterion 4) and 600 s (criterion 13).
"""

from __future__ import annotations

import os
import subprocess
import sys
import tempfile
import time
from functools import lru_cache
from pathlib import Path

import pytest

from zdg import catalog as cat
from zdg import harness
from zdg.alliance import (
    DEFENSIVE,
    KINDS,
    OFFENSIVE,
    brute_force_min_alliance,
    enumerate_min_alliances,
    solve_min_alliance,
)
from zdg.graph import build_zdg

ORACLE_VERTEX_LIMIT = 20
ORACLE_MIN_GRAPHS = 40
ORACLE_BUDGET_S = 120.0
FIELD_GRID_BUDGET_S = 60.0
VERIFY_BUDGET_S = 600.0
Z2R_VERTEX_LIMIT = 30


@lru_cache(maxsize=None)
def bench() -> harness.Workbench:
    return harness.Workbench()


@lru_cache(maxsize=None)
def entries() -> tuple[cat.CatalogEntry, ...]:
    return tuple(cat.catalog(100))


def non_fields():
    return [e for e in entries() if not bench().ring(e.descriptor).analysis.is_field]


def brute(desc: str, kind: str = OFFENSIVE) -> int:
    return brute_force_min_alliance(bench().graph(desc), kind).number


def outcome(check_id: str, max_order: int = 100) -> harness.CheckOutcome:
    return harness.run_check(check_id, list(entries()), bench(), max_order)


def z2_small(e) -> bool:
    return bench().graph(bench().z2(e.descriptor)).vertex_count <= Z2R_VERTEX_LIMIT


# ------------------------------------------------------------- criteria


def criterion_1():
    start = time.perf_counter()
    graphs, bad = 0, []
    for e in entries():
        g = bench().graph(e.descriptor)
        if not 0 < g.vertex_count <= ORACLE_VERTEX_LIMIT:
            continue
        graphs += 1
        for kind in KINDS:
            fast, slow = solve_min_alliance(g, kind).number, brute_force_min_alliance(g, kind).number
            if fast != slow:
                bad.append((e.descriptor, kind, fast, slow))
    elapsed = time.perf_counter() - start
    ok = not bad and graphs >= ORACLE_MIN_GRAPHS and elapsed < ORACLE_BUDGET_S
    return ok, f"{graphs} graphs x 2 kinds, mismatches {bad}, {elapsed:.1f} s"


def criterion_2():
    wrong = []
    for name, desc in cat.GAMMA1_RINGS:
        g, b = bench().gamma_o(desc), brute(desc)
        if (g, b) != (1, 1):
            wrong.append((name, g, b))
    rev = outcome("GAMMA1-REV")
    ok = not wrong and rev.passed
    return ok, f"{len(cat.GAMMA1_RINGS)} listed instances, wrong {wrong}; reverse counterexamples " \
               f"{[i.rings for i in rev.counterexamples]}"


def criterion_3():
    wrong = []
    for name, desc in cat.GAMMA2_RINGS:
        g, b = bench().gamma_o(desc), brute(desc)
        if (g, b) != (2, 2):
            wrong.append((name, g, b))
    rev = outcome("GAMMA2-REV")
    ok = not wrong and rev.passed
    return ok, f"{len(cat.GAMMA2_RINGS)} listed instances, measuring other than 2: {wrong}; reverse counterexamples " \
               f"{[i.rings for i in rev.counterexamples]}"


def criterion_4():
    # fresh workbench so the timing covers ring construction and solving
    fresh = harness.Workbench()
    start = time.perf_counter()
    wrong = []
    for q1 in cat.FIELD_ORDERS:
        for q2 in cat.FIELD_ORDERS:
            desc = f"{cat.field_descriptor(q1)}x{cat.field_descriptor(q2)}"
            g = fresh.gamma_o(desc)
            n = fresh.graph(desc).vertex_count
            b = brute(desc) if n <= ORACLE_VERTEX_LIMIT else g
            if not g == b == min(q1, q2) - 1:
                wrong.append((desc, g, b))
    elapsed = time.perf_counter() - start
    return not wrong and elapsed < FIELD_GRID_BUDGET_S, f"49 pairs, wrong {wrong}, {elapsed:.1f} s"


def criterion_5():
    violations, equal = [], []
    for e in non_fields():
        g, z = bench().gamma_o(e.descriptor), len(bench().ring(e.descriptor).analysis.zero_divisors)
        if g + 2 > z:
            violations.append((e.descriptor, g, z))
        elif g + 2 == z:
            equal.append(e.descriptor)
    z9 = bench().fingerprint("Z9")
    outside = [d for d in equal if bench().fingerprint(d) != z9]
    ok = not violations and "Z9" in equal and not outside
    return ok, f"violations (ring, gamma_o, |Z|) {violations}; equality outside the Z9 class {outside}"


def criterion_6():
    lower, upper = [], []
    for e in non_fields():
        g, a = bench().gamma_o(e.descriptor), bench().gamma_a(e.descriptor)
        z = len(bench().ring(e.descriptor).analysis.zero_divisors)
        if g + 2 > z:
            lower.append((e.descriptor, g, z))
        if z > a * a + a + 1:
            upper.append((e.descriptor, a, z))
    g9, a9, z9 = bench().gamma_o("Z9"), bench().gamma_a("Z9"), 3
    sharp = a9 == 1 == brute("Z9", DEFENSIVE) and g9 + 2 == z9 == a9 * a9 + a9 + 1
    ok = not lower and not upper and sharp
    return ok, f"lower violations {lower}; upper violations {upper}; Z9 sharp on both sides: {sharp}"


def criterion_7():
    out = outcome("LOCAL-BOUND")
    z9 = [i for i in out.instances if i.rings == ["Z9"] and "gamma_o" in i.measured]
    ok = out.passed and bool(z9) and z9[0].equality
    return ok, f"{len(out.instances) - 1} local rings, counterexamples {[i.rings for i in out.counterexamples]}"


def criterion_8():
    upper, prop = outcome("Z2R-UPPER"), outcome("Z2R-PROP")
    member_bad, checked = [], 0
    for e in entries():
        ring = bench().ring(e.descriptor)
        if len(ring.analysis.units) < 2 or not z2_small(e):
            continue
        desc2 = bench().z2(e.descriptor)
        graph2 = bench().graph(desc2)
        target = graph2.vertex_elements.index(ring.order + ring.zero)
        res = enumerate_min_alliances(graph2, OFFENSIVE, cap=10**6)
        checked += 1
        if res.enumeration_truncated or not all(target in S for S in res.all_minimum):
            member_bad.append(e.descriptor)
    reduced = [i for i in prop.instances if i.measured.get("reduced")]
    ok = upper.passed and prop.passed and not member_bad and checked > 0 and bool(reduced)
    return ok, (f"upper {len(upper.instances)} ok={upper.passed}; (1,0) membership over {checked} rings, "
                f"bad {member_bad}; lower/reduced bounds {len(prop.instances)} ok={prop.passed}")


def criterion_9():
    out = outcome("NILP-BOUND")
    inconclusive = [i.rings for i in out.instances if i.verdict == "inconclusive"]
    ring8 = bench().ring("Z8")
    r_list = harness.compute_r_by_listing(ring8)
    g28 = brute("Z2xZ8")
    # r from the brute-force list of minimum alliances of Γ(Z8)
    g8 = build_zdg(ring8)
    nil2 = {v for v, x in enumerate(g8.vertex_elements) if ring8.mul(x, x) == ring8.zero}
    r_brute = min(len(nil2 - set(S)) for S in brute_force_min_alliance(g8, OFFENSIVE).all_minimum)
    eq = 1 + r_brute + 2 * brute("Z8") == g28
    ok = out.passed and not inconclusive and r_list == r_brute == 0 and g28 == 3 and eq
    return ok, f"{len(out.instances)} instances, inconclusive {inconclusive}; r(Z8) = {r_brute}, " \
               f"gamma_o(Z2xZ8) = {g28}, equality {eq}"


def criterion_10():
    out = outcome("COMPLETE-IFF")
    scoped = [i for i in out.instances if bench().graph(i.rings[1]).vertex_count <= Z2R_VERTEX_LIMIT]
    bad = [i.rings[0] for i in scoped if i.verdict != "pass"]
    z9 = next(i for i in scoped if i.rings[0] == "Z9")
    z3z3 = next(i for i in scoped if i.rings[0] == "Z3xZ3")
    ok = (not bad and z9.measured["complete"] and z9.measured["n"] == 2
          and z3z3.measured["isomorphic_to_Z3xZ3"] and z3z3.verdict == "pass")
    return ok, f"{len(scoped)} rings in scope, failing {bad}; Z9 n = {z9.measured['n']}, Z3xZ3 excluded"


def criterion_11():
    fxr, z2kf = outcome("FXR-FORMULA"), outcome("Z2KF-FORMULA")
    anchors = {"Z3xZ4": brute("Z3xZ4"), "Z2xZ2xZ3": brute("Z2xZ2xZ3")}
    ok = fxr.passed and z2kf.passed and anchors == {"Z3xZ4": 3, "Z2xZ2xZ3": 3} and len(fxr.instances) > 0
    return ok, f"F x R {len(fxr.instances)} instances, Z2 x K x F {len(z2kf.instances)} instances, anchors {anchors}"


def criterion_12():
    parts = {cid: outcome(cid) for cid in ("DEG-ANN", "FACTS-LOCAL", "COLOCAL-LOCAL")}
    ok = all(o.passed and o.instances for o in parts.values())
    return ok, ", ".join(f"{cid} {len(o.instances)} ok={o.passed}" for cid, o in parts.items())


def criterion_13():
    codes, reports, elapsed = [], [], []
    with tempfile.TemporaryDirectory() as tmp:
        for run in ("a", "b"):
            env = dict(os.environ, ZDG_DATA_DIR=str(Path(tmp) / f"cache-{run}"))
            report = Path(tmp) / run / "report.json"
            start = time.perf_counter()
            proc = subprocess.run(
                [sys.executable, "-m", "zdg.cli", "verify", "--all", "--max-order", "100", "--report", str(report)],
                env=env, capture_output=True, text=True,
            )
            elapsed.append(time.perf_counter() - start)
            codes.append(proc.returncode)
            reports.append(report.read_bytes() if report.exists() else b"")
    identical = reports[0] == reports[1] and bool(reports[0])
    ok = codes == [0, 0] and identical and max(elapsed) < VERIFY_BUDGET_S
    return ok, f"exit codes {codes}, byte-identical {identical}, {max(elapsed):.1f} s"


CRITERIA = {
    1: ("oracle equivalence", criterion_1),
    2: ("gamma_o = 1 classification", criterion_2),
    3: ("gamma_o = 2 classification", criterion_3),
    4: ("field product grid", criterion_4),
    5: ("gamma_o + 2 <= |Z(R)|, equality only at the Z9 class", criterion_5),
    6: ("corollary chain, both sides sharp at Z9", criterion_6),
    7: ("local bound", criterion_7),
    8: ("Z2 x R suite", criterion_8),
    9: ("nilpotent bound, equality at Z8", criterion_9),
    10: ("complete-graph biconditional", criterion_10),
    11: ("F x R and Z2 x K x F formulas", criterion_11),
    12: ("degree-annihilator, local facts, co-local => local", criterion_12),
    13: ("full verify run", criterion_13),
}


def evaluate(number: int) -> tuple[bool, str]:
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] {number}: {title} -- {detail}"
    print(line)
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    from conftest import ACCEPTANCE_LINES

    ok, line = evaluate(number)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
