"""Replays the bounds, formulas and classifications about global offensive
alliances of zero-divisor graphs over the ring catalog.

Every check is a pure function of the catalog slice it receives. Instances
record the integers that were compared, so a report can be audited without
re-running anything.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from . import __version__
from . import catalog as cat
from .alliance import (
    DEFAULT_ENUMERATION_CAP,
    DEFENSIVE,
    OFFENSIVE,
    enumerate_min_alliances,
    minimum_alliance_profiles,
    solve_min_alliance,
)
from .errors import EmptyGraph, EnumerationTruncated, IoFailure, ResourceCap, UnknownCheck, ZdgError
from .graph import ZeroDivisorGraph, build_zdg, recognize_structure
from .ring import (
    DEFAULT_ORDER_CAP,
    FiniteRing,
    annihilator,
    build_ring,
    find_isomorphism,
    fingerprint,
    local_profile,
)
from .descriptor import prime_power

PASS, FAIL, INCONCLUSIVE, ERROR = "pass", "fail", "inconclusive", "error"

REVERSE_SCOPE = (
    "reverse directions are checked only over the shipped catalog; isomorphism is "
    "decided by exhaustive bijection search up to order 9 and by fingerprint "
    "equality above (a heuristic)"
)


@dataclass
class Instance:
    rings: list[str]
    measured: dict
    relation: str
    verdict: str
    equality: bool | None = None
    note: str | None = None


@dataclass
class CheckOutcome:
    check_id: str
    anchor: str
    instances: list[Instance]
    skipped: list[dict]
    passed: bool
    status: str
    counterexamples: list[Instance]
    r_statistic: dict[str, int] | None = None
    runtime: float = 0.0
    error: str | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("runtime")
        return out


@dataclass
class CheckReport:
    header: dict
    outcomes: list[CheckOutcome]
    runtimes: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    @property
    def inconclusive(self) -> bool:
        return any(o.status == INCONCLUSIVE for o in self.outcomes)

    def counts(self) -> list[tuple[str, int, int, int, int]]:
        rows = []
        for o in self.outcomes:
            verdicts = [i.verdict for i in o.instances]
            rows.append((
                o.check_id,
                verdicts.count(PASS),
                verdicts.count(FAIL) + verdicts.count(ERROR),
                len(o.skipped),
                verdicts.count(INCONCLUSIVE),
            ))
        return rows

    def to_json(self) -> str:
        doc = {"header": self.header, "checks": [o.to_dict() for o in self.outcomes]}
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check_id", "pass", "fail", "skip", "inconclusive"])
        writer.writerows(self.counts())
        return buf.getvalue()


# ------------------------------------------------------------- workbench


class Workbench:
    """Memoizes rings, graphs and alliance numbers by canonical descriptor,
    optionally backed by the persistent result cache."""

    def __init__(self, cache: cat.ResultCache | None = None, order_cap: int = DEFAULT_ORDER_CAP,
                 enumeration_cap: int = DEFAULT_ENUMERATION_CAP, write_cache: bool = True):
        self.cache = cache
        self.write_cache = write_cache
        self.order_cap = order_cap
        self.enumeration_cap = enumeration_cap
        self._rings: dict[str, FiniteRing] = {}
        self._graphs: dict[str, ZeroDivisorGraph] = {}
        self._values: dict[tuple[str, str], object] = {}

    def ring(self, desc: str) -> FiniteRing:
        if desc not in self._rings:
            ring = build_ring(desc, self.order_cap)
            self._rings[ring.descriptor] = ring
            self._rings[desc] = ring
        return self._rings[desc]

    def graph(self, desc: str) -> ZeroDivisorGraph:
        if desc not in self._graphs:
            self._graphs[desc] = build_zdg(self.ring(desc))
        return self._graphs[desc]

    def z2(self, desc: str) -> str:
        return "Z2x" + self.ring(desc).descriptor

    def _cached(self, desc: str, name: str, compute: Callable[[], object]):
        key = (self.ring(desc).descriptor, name)
        if key in self._values:
            return self._values[key]
        value = None
        if self.cache is not None:
            rec = self.cache.get(key[0])
            value = getattr(rec, name) if rec is not None else None
        if value is None:
            value = compute()
            if self.cache is not None and self.write_cache:
                self.cache.put(cat.CacheRecord(key[0], **{name: value}))
        self._values[key] = value
        return value

    def gamma_o(self, desc: str) -> int:
        return self._cached(desc, "gamma_offensive", lambda: solve_min_alliance(self.graph(desc), OFFENSIVE).number)

    def gamma_a(self, desc: str) -> int:
        return self._cached(desc, "gamma_defensive", lambda: solve_min_alliance(self.graph(desc), DEFENSIVE).number)

    def r(self, desc: str) -> int:
        return self._cached(desc, "r_statistic", lambda: compute_r(self.ring(desc), self.graph(desc)))

    def fingerprint(self, desc: str) -> str:
        return self._cached(desc, "fingerprint", lambda: json.dumps(fingerprint(self.ring(desc))))

    def isomorphic(self, a: str, b: str) -> tuple[bool, str]:
        if self.fingerprint(a) != self.fingerprint(b):
            return False, "fingerprint"
        ra, rb = self.ring(a), self.ring(b)
        if ra.order <= 9:
            return find_isomorphism(ra, rb) is not None, "exhaustive"
        return True, "fingerprint"


def compute_r(ring: FiniteRing, graph: ZeroDivisorGraph | None = None) -> int:
    """Fewest index-2 nilpotents left outside a minimum offensive alliance.

    Minimum alliances are enumerated up to twin symmetry: twin classes split
    by whether ``x**2 == 0``, and all admissible per-class counts. Every
    minimum alliance is one choice of members for one count vector, and the
    statistic only depends on the counts.
    """
    graph = graph if graph is not None else build_zdg(ring)
    if graph.vertex_count == 0:
        raise EmptyGraph(f"Γ({ring.descriptor}) is empty")
    square_zero = [ring.mul(x, x) == ring.zero for x in graph.vertex_elements]
    try:
        _, classes, profiles = minimum_alliance_profiles(graph, OFFENSIVE, square_zero)
    except ResourceCap as exc:
        raise EnumerationTruncated(str(exc)) from exc
    return min(
        sum(len(members) - c for members, c in zip(classes, p) if square_zero[members[0]])
        for p in profiles
    )


def compute_r_by_listing(ring: FiniteRing, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Same statistic from the explicit list of minimum alliances."""
    graph = build_zdg(ring)
    result = enumerate_min_alliances(graph, OFFENSIVE, cap)
    if result.enumeration_truncated:
        raise EnumerationTruncated(f"more than {cap} minimum alliances in Γ({ring.descriptor})")
    nil2 = {v for v, x in enumerate(graph.vertex_elements) if ring.mul(x, x) == ring.zero}
    return min(len(nil2 - set(S)) for S in result.all_minimum)


# ----------------------------------------------------------------- checks


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    run: Callable  # (bench, entries, max_order) -> (instances, skipped, extra)


REGISTRY: dict[str, Check] = {}


def _register(check_id: str, anchor: str):
    def wrap(fn):
        REGISTRY[check_id] = Check(check_id, anchor, fn)
        return fn
    return wrap


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _skip(desc: str, reason: str) -> dict:
    return {"ring": desc, "reason": reason}


def _z_size(bench: Workbench, desc: str) -> int:
    return len(bench.ring(desc).analysis.zero_divisors_star) + 1


def _sharpness(instances: list[Instance], entries, witness: str, check: str) -> None:
    """Append a sharpness instance asserting equality at ``witness``."""
    if not any(e.descriptor == witness for e in entries):
        return
    hits = [i for i in instances if i.rings == [witness]]
    eq = bool(hits) and bool(hits[0].equality)
    instances.append(Instance([witness], {"equality": eq}, f"{check} is attained at {witness}", _verdict(eq)))


# Γ(R) = K_1 forces the only alliance to be the whole vertex set, so
# γ° = 1 = |Z(R)| - 1 and the lower bound cannot hold (Z_4, Z_2[x]/(x^2))
K1_REASON = "Γ(R) = K_1: the minimum alliance leaves no vertex outside, gamma_o + 2 = |Z(R)| + 1"


@_register("BOUND-ZR", "γ^o(Γ(R))+2 ≤ |Z(R)|")
def _bound_zr(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        info = bench.ring(e.descriptor).analysis
        if info.is_field:
            skipped.append(_skip(e.descriptor, "field"))
            continue
        if len(info.zero_divisors_star) == 1:
            skipped.append(_skip(e.descriptor, K1_REASON))
            continue
        g, z = bench.gamma_o(e.descriptor), _z_size(bench, e.descriptor)
        out.append(Instance([e.descriptor], {"gamma_o": g, "Z": z}, "gamma_o + 2 <= |Z(R)|",
                            _verdict(g + 2 <= z), g + 2 == z))
    _sharpness(out, entries, "Z9", "equality")
    return out, skipped, None


@_register("COR-DEFENSIVE", "γ_a(Γ(R))^2 + γ_a(Γ(R)) +1")
def _cor_defensive(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        info = bench.ring(e.descriptor).analysis
        if info.is_field:
            skipped.append(_skip(e.descriptor, "field"))
            continue
        if len(info.zero_divisors_star) == 1:
            skipped.append(_skip(e.descriptor, K1_REASON))
            continue
        g, a, z = bench.gamma_o(e.descriptor), bench.gamma_a(e.descriptor), _z_size(bench, e.descriptor)
        ok = g + 2 <= z <= a * a + a + 1
        out.append(Instance([e.descriptor], {"gamma_o": g, "gamma_a": a, "Z": z},
                            "gamma_o + 2 <= |Z(R)| <= gamma_a^2 + gamma_a + 1", _verdict(ok),
                            g + 2 == z and z == a * a + a + 1))
    _sharpness(out, entries, "Z9", "both equalities")
    return out, skipped, None


@_register("LOCAL-BOUND", "(|Z(R)^*| - γ^o(Γ(R)))(γ^o(Γ(R)) -1) + 1")
def _local_bound(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        info = bench.ring(e.descriptor).analysis
        if info.is_field or not info.is_local:
            skipped.append(_skip(e.descriptor, "field" if info.is_field else "not local"))
            continue
        g, zs = bench.gamma_o(e.descriptor), len(info.zero_divisors_star)
        rhs = (zs - g) * (g - 1) + 1
        out.append(Instance([e.descriptor], {"gamma_o": g, "Zstar": zs, "rhs": rhs},
                            "gamma_o <= (|Z(R)*| - gamma_o)(gamma_o - 1) + 1", _verdict(g <= rhs), g == rhs))
    _sharpness(out, entries, "Z9", "equality")
    return out, skipped, None


@_register("FIELD-PROD", "min{|F| -1, |K|-1}")
def _field_prod(bench, entries, max_order):
    out, skipped = [], []
    for q1 in cat.FIELD_ORDERS:
        for q2 in cat.FIELD_ORDERS:
            desc = cat.field_descriptor(q1) + "x" + cat.field_descriptor(q2)
            if q1 * q2 > max_order:
                skipped.append(_skip(desc, f"order {q1 * q2} above max_order"))
                continue
            g = bench.gamma_o(desc)
            out.append(Instance([desc], {"q1": q1, "q2": q2, "gamma_o": g},
                                "gamma_o = min(q1, q2) - 1", _verdict(g == min(q1, q2) - 1)))
    return out, skipped, None


@_register("Z2R-UPPER", "γ^o(Γ(Z_2 × R)) ≤ |Z(R)|")
def _z2r_upper(bench, entries, max_order):
    out = []
    for e in entries:
        g2, z = bench.gamma_o(bench.z2(e.descriptor)), _z_size(bench, e.descriptor)
        out.append(Instance([e.descriptor, bench.z2(e.descriptor)], {"gamma_o_Z2xR": g2, "Z": z},
                            "gamma_o(Z2 x R) <= |Z(R)|", _verdict(g2 <= z), g2 == z))
    return out, [], None


@_register("Z2R-MEMBER", "(1,0) is an element of every")
def _z2r_member(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        info = bench.ring(e.descriptor).analysis
        if len(info.units) < 2:
            skipped.append(_skip(e.descriptor, "fewer than two units"))
            continue
        desc2 = bench.z2(e.descriptor)
        ring2, graph2 = bench.ring(desc2), bench.graph(desc2)
        target = graph2.vertex_elements.index(_one_zero(bench.ring(e.descriptor)))
        colouring = [v == target for v in range(graph2.vertex_count)]
        number, classes, profiles = minimum_alliance_profiles(graph2, OFFENSIVE, colouring)
        k = next(i for i, members in enumerate(classes) if target in members)
        ok = all(p[k] == 1 for p in profiles)
        out.append(Instance([e.descriptor, desc2], {"gamma_o_Z2xR": number, "units": len(info.units),
                                                    "count_profiles": len(profiles)},
                            "(1,0) lies in every minimum offensive alliance of Γ(Z2 x R)", _verdict(ok)))
    return out, skipped, None


def _one_zero(ring: FiniteRing) -> int:
    """Index of (1,0) in Z2 x R (mixed radix, first factor most significant)."""
    return ring.order + ring.zero


@_register("COMPLETE-IFF", "Γ(R)=K_n if and only if γ^o(Γ(Z_2×R))=n+1")
def _complete_iff(bench, entries, max_order):
    out, skipped = [], []
    z3z3 = "Z3xZ3"
    for e in entries:
        info = bench.ring(e.descriptor).analysis
        if info.is_field:
            skipped.append(_skip(e.descriptor, "field: Γ(R) is empty"))
            continue
        graph = bench.graph(e.descriptor)
        n = graph.vertex_count
        degs = graph.degrees()
        complete = all(x == n - 1 for x in degs)
        g2 = bench.gamma_o(bench.z2(e.descriptor))
        iso_z3z3 = bench.isomorphic(e.descriptor, z3z3)[0] if bench.ring(e.descriptor).order == 9 else False
        cond_i = n <= 4 and not iso_z3z3
        cond_ii = min(degs) >= 4
        rhs = g2 == n + 1 and (cond_i != cond_ii)
        out.append(Instance(
            [e.descriptor, bench.z2(e.descriptor)],
            {"n": n, "complete": complete, "gamma_o_Z2xR": g2, "cond_i": cond_i, "cond_ii": cond_ii,
             "isomorphic_to_Z3xZ3": iso_z3z3},
            "Γ(R) = K_n <=> gamma_o(Z2 x R) = n + 1 and (cond_i xor cond_ii)",
            _verdict(complete == rhs)))
    return out, skipped, None


@_register("COLOCAL-LOCAL", "If a finite ring R is co-local then is local")
def _colocal_local(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        info = bench.ring(e.descriptor).analysis
        if not info.is_colocal:
            skipped.append(_skip(e.descriptor, "not co-local"))
            continue
        out.append(Instance([e.descriptor], {"colocal": True, "local": info.is_local}, "co-local => local",
                            _verdict(info.is_local)))
    return out, skipped, None


@_register("COLOCAL-BOUND", "γ^o(Γ(R)) ≥ ⌈|N^*|/2⌉")
def _colocal_bound(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        info = bench.ring(e.descriptor).analysis
        if info.is_field or not info.is_colocal:
            skipped.append(_skip(e.descriptor, "field" if info.is_field else "not co-local"))
            continue
        g, nstar = bench.gamma_o(e.descriptor), len(info.colocal_core) - 1
        bound = math.ceil(nstar / 2)
        out.append(Instance([e.descriptor], {"gamma_o": g, "Nstar": nstar, "bound": bound},
                            "gamma_o >= ceil(|N*| / 2)", _verdict(g >= bound), g == bound))
    _sharpness(out, entries, "Z9", "equality")
    return out, skipped, None


@_register("NILP-BOUND", "1+ r + 2γ^o(Γ(R))")
def _nilp_bound(bench, entries, max_order):
    out, skipped, rs = [], [], {}
    for e in entries:
        if bench.ring(e.descriptor).analysis.is_field:
            skipped.append(_skip(e.descriptor, "field: Γ(R) is empty"))
            continue
        g, desc2 = bench.gamma_o(e.descriptor), bench.z2(e.descriptor)
        g2 = bench.gamma_o(desc2)
        try:
            r = bench.r(e.descriptor)
        except EnumerationTruncated as exc:
            out.append(Instance([e.descriptor, desc2], {"gamma_o": g, "gamma_o_Z2xR": g2},
                                "gamma_o(Z2 x R) <= 1 + r + 2 gamma_o(R)", INCONCLUSIVE, note=str(exc)))
            continue
        rs[e.descriptor] = r
        bound = 1 + r + 2 * g
        out.append(Instance([e.descriptor, desc2], {"gamma_o": g, "gamma_o_Z2xR": g2, "r": r, "bound": bound},
                            "gamma_o(Z2 x R) <= 1 + r + 2 gamma_o(R)", _verdict(g2 <= bound), g2 == bound))
    if any(e.descriptor == "Z8" for e in entries):
        hit = next(i for i in out if i.rings[0] == "Z8")
        ok = hit.equality is True and hit.measured.get("r") == 0 and hit.measured["gamma_o_Z2xR"] == 3
        out.append(Instance(["Z8"], {"equality": bool(hit.equality), "r": hit.measured.get("r"),
                                     "gamma_o_Z2xR": hit.measured["gamma_o_Z2xR"]},
                            "bound is attained at Z8 with r = 0 and gamma_o(Z2 x Z8) = 3", _verdict(ok)))
    return out, skipped, rs


@_register("Z2R-PROP", "γ^o(Γ(Z_2×R)) ≥ γ^o(Γ(R))+1")
def _z2r_prop(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        info = bench.ring(e.descriptor).analysis
        if info.is_field:
            skipped.append(_skip(e.descriptor, "field: Γ(R) is empty"))
            continue
        g, desc2 = bench.gamma_o(e.descriptor), bench.z2(e.descriptor)
        g2 = bench.gamma_o(desc2)
        out.append(Instance([e.descriptor, desc2], {"gamma_o": g, "gamma_o_Z2xR": g2},
                            "gamma_o(Z2 x R) >= gamma_o(R) + 1", _verdict(g2 >= g + 1), g2 == g + 1))
        if info.is_reduced:
            out.append(Instance([e.descriptor, desc2], {"gamma_o": g, "gamma_o_Z2xR": g2, "reduced": True},
                                "gamma_o(Z2 x R) <= 2 gamma_o(R) + 1", _verdict(g2 <= 2 * g + 1),
                                g2 == 2 * g + 1))
    return out, skipped, None


FXR_F = ("Z3", "GF(4)", "Z5", "Z7")
FXR_R = ("Z4", "Z2[x]/(x^2)", "Z9", "Z3[x]/(x^2)", "Z25", "GF(4)[x]/(x^2)", "Z2xZ2",
         *(cat.field_descriptor(q) for q in cat.FIELD_ORDERS))


def fxr_formula(f_units: int, units: int, zstar: int) -> int:
    return zstar + min(units, f_units, 2 + (units - zstar) // 2 + f_units // 2)


def z2kf_formula(k_units: int, f_units: int) -> int:
    return 1 + min(2 * k_units, 2 * f_units, f_units + k_units // 2 + 1, k_units + f_units // 2 + 1)


@_register("FXR-FORMULA", "2 + ⌊(|U(R)|-|Z(R)^*|)/2⌋ + ⌊|F^*|/2⌋")
def _fxr(bench, entries, max_order):
    out, skipped = [], []
    for f in FXR_F:
        for r in FXR_R:
            desc = f"{f}x{r}"
            ring_f, ring_r = bench.ring(f), bench.ring(r)
            if ring_f.order * ring_r.order > max_order:
                skipped.append(_skip(desc, f"order {ring_f.order * ring_r.order} above max_order"))
                continue
            info = ring_r.analysis
            graph = bench.graph(r)
            n = graph.vertex_count
            if any(x != n - 1 for x in graph.degrees()):
                skipped.append(_skip(desc, "Γ(R) is not complete"))
                continue
            expected = fxr_formula(ring_f.order - 1, len(info.units), n)
            g = bench.gamma_o(desc)
            out.append(Instance([desc], {"F*": ring_f.order - 1, "U": len(info.units), "Zstar": n,
                                         "gamma_o": g, "formula": expected},
                                "gamma_o(F x R) = |Z(R)*| + min{...}", _verdict(g == expected)))
    return out, skipped, None


@_register("Z2KF-FORMULA", "γ^o(Γ(Z_2 × K × F)) = 1 + min")
def _z2kf(bench, entries, max_order):
    out, skipped = [], []
    for qk in cat.FIELD_ORDERS:
        for qf in cat.FIELD_ORDERS:
            if qf < 3:
                continue
            desc = f"Z2x{cat.field_descriptor(qk)}x{cat.field_descriptor(qf)}"
            if 2 * qk * qf > max_order:
                skipped.append(_skip(desc, f"order {2 * qk * qf} above max_order"))
                continue
            expected = z2kf_formula(qk - 1, qf - 1)
            g = bench.gamma_o(desc)
            out.append(Instance([desc], {"K*": qk - 1, "F*": qf - 1, "gamma_o": g, "formula": expected},
                                "gamma_o(Z2 x K x F) = 1 + min{...}", _verdict(g == expected)))
    return out, skipped, None


def _forward(bench, listed, target, max_order, exclude=()):
    out, skipped = [], []
    for name, desc in listed:
        desc = bench.ring(desc).descriptor if bench.ring(desc).order <= max_order else desc
        if desc in exclude:
            skipped.append(_skip(desc, exclude[desc]))
            continue
        ring = bench.ring(desc)
        if ring.order > max_order:
            skipped.append(_skip(desc, f"order {ring.order} above max_order"))
            continue
        g = bench.gamma_o(desc)
        note = None
        if target == 2:
            rep = recognize_structure(bench.graph(desc))
            note = "4-book: " + ("yes" if rep.is_4book else "no (informational)")
        out.append(Instance([desc], {"name": name, "gamma_o": g}, f"gamma_o = {target}",
                            _verdict(g == target), note=note))
    return out, skipped


def _family_members(order: int, families) -> list[tuple[str, str]]:
    """Instances of the ``Z_m x F`` families (F any field) of the given order."""
    out = []
    for m, name, excluded in families:
        if order % m:
            continue
        q = order // m
        if prime_power(q) is not None and q not in excluded:
            out.append((name.replace("F", f"F_{q}"), f"Z{m}x{cat.field_descriptor(q)}"))
    return out


def _reverse(bench, entries, listed, target, families=()):
    out, skipped = [], []
    listed_desc = [(name, bench.ring(desc).descriptor) for name, desc in listed]
    for e in entries:
        if bench.ring(e.descriptor).analysis.is_field:
            skipped.append(_skip(e.descriptor, "field"))
            continue
        g = bench.gamma_o(e.descriptor)
        if g != target:
            continue
        match, method = None, None
        order = bench.ring(e.descriptor).order
        for name, desc in listed_desc + _family_members(order, families):
            if bench.ring(desc).order != bench.ring(e.descriptor).order:
                continue
            ok, how = bench.isomorphic(e.descriptor, desc)
            if ok:
                match, method = name, how
                break
        out.append(Instance([e.descriptor], {"gamma_o": g, "matches": match, "method": method},
                            f"gamma_o = {target} => isomorphic to a listed ring", _verdict(match is not None)))
    return out, skipped


# (m, name, excluded field orders): Z_m x F for every finite field F
GAMMA1_FAMILIES = ((2, "Z_2 x F", ()),)
GAMMA2_FAMILIES = ((3, "Z_3 x F", (2,)),)


@_register("GAMMA1-FWD", cat.GAMMA1_ANCHOR)
def _gamma1_fwd(bench, entries, max_order):
    return (*_forward(bench, cat.GAMMA1_RINGS, 1, max_order), None)


@_register("GAMMA1-REV", cat.GAMMA1_ANCHOR)
def _gamma1_rev(bench, entries, max_order):
    listed = [(n, dsc) for n, dsc in cat.GAMMA1_RINGS if not n.startswith("Z_2 x F")]
    return (*_reverse(bench, entries, listed, 1, GAMMA1_FAMILIES), None)


# Z_3 x F_2 is Z_6 = Z_2 x F_3, which the γ=1 classification already claims
GAMMA2_EXCLUDED = {"Z3xZ2": "Z3 x F2 is isomorphic to Z2 x F3 from the gamma_o = 1 list (gamma_o = 1)"}


@_register("GAMMA2-FWD", cat.GAMMA2_ANCHOR)
def _gamma2_fwd(bench, entries, max_order):
    return (*_forward(bench, cat.GAMMA2_RINGS, 2, max_order, GAMMA2_EXCLUDED), None)


@_register("GAMMA2-REV", cat.GAMMA2_ANCHOR)
def _gamma2_rev(bench, entries, max_order):
    listed = [(n, dsc) for n, dsc in cat.GAMMA2_RINGS if not n.startswith("Z_3 x F")]
    return (*_reverse(bench, entries, listed, 2, GAMMA2_FAMILIES), None)


@_register("DEG-ANN", "d(v)=|Ann(v)| -1 if v^2 ≠ 0")
def _deg_ann(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        ring, graph = bench.ring(e.descriptor), bench.graph(e.descriptor)
        if graph.vertex_count == 0:
            skipped.append(_skip(e.descriptor, "field: Γ(R) is empty"))
            continue
        bad = []
        for v, x in enumerate(graph.vertex_elements):
            ann = len(annihilator(ring, x))
            expected = ann - 2 if ring.mul(x, x) == ring.zero else ann - 1
            if graph.degree(v) != expected:
                bad.append(graph.vertex_labels[v])
        out.append(Instance([e.descriptor], {"vertices": graph.vertex_count, "violations": bad},
                            "d(v) = |Ann(v)| - 1 (v^2 != 0) or |Ann(v)| - 2 (v^2 = 0)", _verdict(not bad)))
    return out, skipped, None


@_register("FACTS-LOCAL", "|R|=p^{nr}, and |M|=p^{(n-1)r}")
def _facts_local(bench, entries, max_order):
    out, skipped = [], []
    for e in entries:
        ring = bench.ring(e.descriptor)
        info = ring.analysis
        if info.is_field or not info.is_local:
            skipped.append(_skip(e.descriptor, "field" if info.is_field else "not local"))
            continue
        profile = local_profile(ring)
        m_is_ann = any(annihilator(ring, x) == info.maximal_ideal for x in info.zero_divisors_star)
        ok = profile is not None and profile[1] >= 2 and m_is_ann
        measured = {"order": ring.order, "M": len(info.maximal_ideal), "M_is_annihilator": m_is_ann}
        if profile:
            measured.update(p=profile[0], n=profile[1], r=profile[2])
        out.append(Instance([e.descriptor], measured,
                            "M = Z(R) = Ann(x) for some x; |R| = p^(nr), |M| = p^((n-1)r)", _verdict(ok)))
    return out, skipped, None


CHECK_IDS = tuple(sorted(REGISTRY))


# ------------------------------------------------------------------ driver


def _finish(check: Check, instances, skipped, extra, runtime, error=None) -> CheckOutcome:
    instances = sorted(instances, key=lambda i: (i.rings, i.relation))
    skipped = sorted(skipped, key=lambda s: s["ring"])
    bad = [i for i in instances if i.verdict in (FAIL, ERROR)]
    if bad:
        status = FAIL
    elif error or any(i.verdict == INCONCLUSIVE for i in instances):
        status = INCONCLUSIVE
    elif instances:
        status = PASS
    else:
        status = "skip"
    return CheckOutcome(check.check_id, check.anchor, instances, skipped, not bad, status, bad,
                        extra, runtime, error)


def run_check(check_id: str, entries: list[cat.CatalogEntry], bench: Workbench | None = None,
              max_order: int | None = None) -> CheckOutcome:
    """Evaluate one registry check over ``entries``."""
    try:
        check = REGISTRY[check_id]
    except KeyError:
        raise UnknownCheck(f"unknown check {check_id!r}; known: {', '.join(CHECK_IDS)}") from None
    bench = bench if bench is not None else Workbench()
    if max_order is None:
        max_order = max((e.order for e in entries), default=4)
    start = time.perf_counter()
    good, broken = [], []
    for e in entries:
        try:
            bench.ring(e.descriptor)
            good.append(e)
        except ZdgError as exc:
            broken.append(Instance([e.descriptor], {}, "ring is constructible", ERROR,
                                   note=f"{type(exc).__name__}: {exc}"))
    try:
        instances, skipped, extra = check.run(bench, good, max_order)
        error = None
    except Exception as exc:  # surfaces as an inconclusive check, never a crash
        instances, skipped, extra, error = [], [], None, f"{type(exc).__name__}: {exc}"
    return _finish(check, instances + broken, skipped, extra, time.perf_counter() - start, error)


def _run_in_worker(args):
    check_id, entries, max_order, cache_dir = args
    cache = cat.ResultCache(cache_dir) if cache_dir is not None else None
    return run_check(check_id, entries, Workbench(cache, write_cache=False), max_order)


def run_all(max_order: int = 100, report_path: str | Path | None = None, *, check_ids=None,
            entries: list[cat.CatalogEntry] | None = None, cache: cat.ResultCache | None = None,
            jobs: int = 1) -> CheckReport:
    """Run every (or the selected) registry check and optionally write the
    JSON report, a CSV summary next to it, and a timings file."""
    if max_order < 4:
        raise ValueError("max_order must be at least 4")
    ids = CHECK_IDS if check_ids is None else tuple(sorted(check_ids))
    for cid in ids:
        if cid not in REGISTRY:
            raise UnknownCheck(f"unknown check {cid!r}; known: {', '.join(CHECK_IDS)}")
    entries = cat.catalog(max_order) if entries is None else [e for e in entries if e.order <= max_order]
    if jobs > 1:
        cache_dir = str(cache.directory) if cache is not None else None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_in_worker, [(cid, entries, max_order, cache_dir) for cid in ids]))
    else:
        bench = Workbench(cache)
        outcomes = [run_check(cid, entries, bench, max_order) for cid in ids]
    header = {
        "artifact_version": __version__,
        "catalog_hash": cat.catalog_hash(entries),
        "catalog_size": len(entries),
        "caps": {"max_order": max_order, "order_cap": DEFAULT_ORDER_CAP,
                 "enumeration_cap": DEFAULT_ENUMERATION_CAP},
        "reverse_scope": REVERSE_SCOPE,
        "checks": list(ids),
    }
    report = CheckReport(header, outcomes, {o.check_id: round(o.runtime, 3) for o in outcomes})
    if report_path is not None:
        write_report(report, report_path)
    return report


def write_report(report: CheckReport, report_path: str | Path) -> None:
    path = Path(report_path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.to_json(), encoding="utf-8")
        path.with_suffix(".csv").write_text(report.to_csv(), encoding="utf-8")
        path.with_suffix(".timings.json").write_text(
            json.dumps(report.runtimes, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write report {path}: {exc}") from exc
