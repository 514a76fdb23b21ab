"""Finite commutative rings with identity, stored as full Cayley tables.

Element encodings are fixed so that vertex indices (and therefore alliance
witnesses) are reproducible:

* ``Z_n``: residues ``0..n-1``.
* ``GF(p^k)`` and quotient rings: coefficient vectors, index
  ``sum(c_t * b**t)`` with the constant term least significant.
  Quotient elements are cosets, ordered by their smallest member.
* products: mixed-radix lexicographic order on the components.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import descriptor as d
from .errors import MalformedDescriptor, NotUnital, OrderCapExceeded

DEFAULT_ORDER_CAP = 4096
CARRIER_CAP = 1 << 14


@dataclass(frozen=True, eq=False)
class FiniteRing:
    order: int
    add_table: np.ndarray
    mul_table: np.ndarray
    zero: int
    one: int
    descriptor: str
    element_labels: tuple[str, ...]
    # component labels per element for product rings, else None
    components: tuple[tuple[str, ...], ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(np.flatnonzero(self.add_table[a] == self.zero)[0])

    def label(self, x: int) -> str:
        return self.element_labels[x]

    def element(self, label: str) -> int:
        """Look an element up by its label (whitespace-insensitive)."""
        key = "".join(label.split())
        try:
            return self._label_index[key]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of {self.descriptor}") from None

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.element_labels)}

    @cached_property
    def analysis(self) -> "RingAnalysis":
        return analyze_ring(self)

    def __repr__(self) -> str:
        return f"FiniteRing({self.descriptor!r}, order={self.order})"


@dataclass(frozen=True)
class RingAnalysis:
    units: frozenset[int]
    zero_divisors_star: frozenset[int]
    nilradical: frozenset[int]
    nilpotent_index: dict[int, int]
    is_field: bool
    is_local: bool
    maximal_ideal: frozenset[int] | None
    is_colocal: bool
    colocal_core: frozenset[int] | None
    full_annihilator_set: frozenset[int]
    is_reduced: bool
    characteristic: int

    @property
    def zero_divisors(self) -> frozenset[int]:
        """Z(R), zero included."""
        return self.zero_divisors_star | {0}


@dataclass(frozen=True)
class ElementClass:
    kind: str  # "zero" | "unit" | "zero-divisor"
    nilpotent_index: int | None = None


# ---------------------------------------------------------------- building


def build_ring(desc: d.RingDescriptor | str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Construct the ring named by ``desc`` (a descriptor or its string)."""
    if isinstance(desc, str):
        desc = d.parse_descriptor(desc)
    expected = _expected_order(desc)
    if expected is not None and expected > order_cap:
        raise OrderCapExceeded(f"{desc}: order {expected} exceeds cap {order_cap}")
    if isinstance(desc, d.Zn):
        ring = _build_zn(desc.n)
    elif isinstance(desc, d.GF):
        ring = _build_gf(desc.p, desc.k)
    elif isinstance(desc, d.Quotient):
        ring = _build_quotient(desc, order_cap)
    elif isinstance(desc, d.Product):
        parts = [build_ring(f, order_cap) for f in desc.factors]
        ring = parts[0]
        for part in parts[1:]:
            ring = _direct_product(ring, part)
    else:
        raise TypeError(f"not a ring descriptor: {desc!r}")
    if ring.order > order_cap:
        raise OrderCapExceeded(f"{desc}: order {ring.order} exceeds cap {order_cap}")
    return FiniteRing(
        ring.order, ring.add_table, ring.mul_table, ring.zero, ring.one,
        d.canonical(desc), ring.element_labels, ring.components,
    )


def _expected_order(desc: d.RingDescriptor) -> int | None:
    if isinstance(desc, d.Zn):
        return desc.n
    if isinstance(desc, d.GF):
        return desc.q
    if isinstance(desc, d.Product):
        sizes = [_expected_order(f) for f in desc.factors]
        return None if None in sizes else math.prod(sizes)
    return None


def _build_zn(n: int) -> FiniteRing:
    r = np.arange(n, dtype=np.int64)
    return FiniteRing(
        n,
        (r[:, None] + r[None, :]) % n,
        (r[:, None] * r[None, :]) % n,
        0,
        1 % n,
        f"Z{n}",
        tuple(str(i) for i in range(n)),
    )


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists over Z_p and reduce by a monic modulus."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    k = len(modulus) - 1
    for deg in range(len(out) - 1, k - 1, -1):
        c = out[deg]
        if c:
            for t in range(k + 1):
                out[deg - k + t] = (out[deg - k + t] - c * modulus[t]) % p
    return (out + [0] * k)[:k]


def _digits(index: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        index, r = divmod(index, base)
        out.append(r)
    return out


def _is_irreducible(poly: list[int], p: int) -> bool:
    k = len(poly) - 1
    for deg in range(1, k // 2 + 1):
        for low in range(p**deg):
            div = _digits(low, p, deg) + [1]
            # remainder of poly mod div
            rem = list(poly)
            for top in range(k, deg - 1, -1):
                c = rem[top]
                if c:
                    for t in range(deg + 1):
                        rem[top - deg + t] = (rem[top - deg + t] - c * div[t]) % p
            if not any(rem[:deg]):
                return False
    return True


def conway_free_modulus(p: int, k: int) -> list[int]:
    """Smallest monic irreducible of degree ``k`` over Z_p (ascending coeffs)."""
    for low in range(p**k):
        poly = _digits(low, p, k) + [1]
        if poly[0] and _is_irreducible(poly, p):
            return poly
    raise ValueError(f"no irreducible polynomial of degree {k} over Z_{p}")


def _poly_label(coeffs, var: str, coeff_label=str, wrap=lambda s: s) -> str:
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        mono = "" if deg == 0 else (var if deg == 1 else f"{var}^{deg}")
        cs = coeff_label(c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(wrap(cs) + mono)
    return "+".join(parts) if parts else "0"


def _build_gf(p: int, k: int) -> FiniteRing:
    if k == 1:
        ring = _build_zn(p)
        return FiniteRing(ring.order, ring.add_table, ring.mul_table, 0, 1, f"GF({p})", ring.element_labels)
    q = p**k
    modulus = conway_free_modulus(p, k)
    vecs = [_digits(i, p, k) for i in range(q)]
    weights = np.array([p**t for t in range(k)], dtype=np.int64)
    v = np.array(vecs, dtype=np.int64)
    add = (((v[:, None, :] + v[None, :, :]) % p) * weights).sum(axis=2)
    mul = np.zeros((q, q), dtype=np.int64)
    for i in range(q):
        for j in range(i, q):
            prod = _poly_mulmod(vecs[i], vecs[j], modulus, p)
            mul[i, j] = mul[j, i] = sum(c * p**t for t, c in enumerate(prod))
    labels = tuple(_poly_label(vec, "a") for vec in vecs)
    return FiniteRing(q, add, mul, 0, 1, f"GF({q})", labels)


def _direct_product(a: FiniteRing, b: FiniteRing) -> FiniteRing:
    n = a.order * b.order
    idx = np.arange(n)
    ia, ib = idx // b.order, idx % b.order
    add = a.add_table[ia[:, None], ia[None, :]] * b.order + b.add_table[ib[:, None], ib[None, :]]
    mul = a.mul_table[ia[:, None], ia[None, :]] * b.order + b.mul_table[ib[:, None], ib[None, :]]
    comps_a = a.components or tuple((lab,) for lab in a.element_labels)
    comps_b = b.components or tuple((lab,) for lab in b.element_labels)
    comps = tuple(comps_a[i] + comps_b[j] for i in range(a.order) for j in range(b.order))
    labels = tuple("(" + ",".join(c) + ")" for c in comps)
    return FiniteRing(
        n, add, mul, a.zero * b.order + b.zero, a.one * b.order + b.one,
        f"{a.descriptor}x{b.descriptor}", labels, comps,
    )


# ------------------------------------------------------------ quotients


class _PolyCarrier:
    """base[x(,y)] modulo one monic single-variable relation per indeterminate."""

    def __init__(self, base: FiniteRing, nvars: int, bounds: list[tuple[int, list[int]]]):
        self.base = base
        self.nvars = nvars
        self.degrees = [deg for deg, _ in bounds]
        # x_v^deg == sum(tail[e] x_v^e), tail already negated
        self.tails = [tail for _, tail in bounds]
        self.monomials = [
            tuple(m) for m in itertools.product(*(range(deg) for deg in reversed(self.degrees)))
        ]
        self.monomials = [tuple(reversed(m)) for m in self.monomials]
        self.position = {m: t for t, m in enumerate(self.monomials)}
        self.width = len(self.monomials)
        self.size = base.order**self.width

    def to_vec(self, index: int) -> tuple[int, ...]:
        return tuple(_digits(index, self.base.order, self.width))

    def to_index(self, vec) -> int:
        b = self.base.order
        return sum(c * b**t for t, c in enumerate(vec))

    def reduce(self, terms: dict[tuple[int, ...], int]) -> tuple[int, ...]:
        base = self.base
        pending = dict(terms)
        out = [base.zero] * self.width
        while pending:
            mono, c = pending.popitem()
            if c == base.zero:
                continue
            over = next((v for v in range(self.nvars) if mono[v] >= self.degrees[v]), None)
            if over is None:
                t = self.position[mono]
                out[t] = base.add(out[t], c)
                continue
            for e, tc in enumerate(self.tails[over]):
                if tc == base.zero:
                    continue
                m = list(mono)
                m[over] += e - self.degrees[over]
                m = tuple(m)
                pending[m] = base.add(pending.get(m, base.zero), base.mul(c, tc))
        return tuple(out)

    def mul(self, u, v) -> tuple[int, ...]:
        base = self.base
        terms: dict[tuple[int, ...], int] = {}
        for ti, a in enumerate(u):
            if a == base.zero:
                continue
            for tj, b in enumerate(v):
                if b == base.zero:
                    continue
                m = tuple(x + y for x, y in zip(self.monomials[ti], self.monomials[tj]))
                terms[m] = base.add(terms.get(m, base.zero), base.mul(a, b))
        return self.reduce(terms)

    def addv(self, u, v) -> tuple[int, ...]:
        return tuple(self.base.add(a, b) for a, b in zip(u, v))


def _int_in(base: FiniteRing, c: int) -> int:
    """Image of the integer ``c`` in ``base``."""
    char = additive_order(base, base.one)
    acc = base.zero
    for _ in range(c % char):
        acc = base.add(acc, base.one)
    return acc


def _bounding_relation(poly: d.Poly, var: int, base: FiniteRing):
    """Return (degree, negated tail) if ``poly`` is monic and pure in ``var``."""
    terms = poly.as_dict()
    if not terms or any(any(e for v, e in enumerate(m) if v != var) for m in terms):
        return None
    deg = max(m[var] for m in terms)
    if deg < 1 or _int_in(base, terms[tuple(deg if v == var else 0 for v in range(poly.nvars))]) != base.one:
        return None
    tail = [base.zero] * deg
    for m, c in terms.items():
        if m[var] < deg:
            tail[m[var]] = base.neg(_int_in(base, c))
    return deg, tail


def _build_quotient(desc: d.Quotient, order_cap: int) -> FiniteRing:
    base = build_ring(desc.base, order_cap)
    gens = desc.generators()
    bounds = []
    for var in range(desc.nvars):
        found = [b for g in gens if (b := _bounding_relation(g, var, base)) is not None]
        if not found:
            raise MalformedDescriptor(
                f"{desc}: no monic relation bounding the degree in {d.VARIABLES[var]}"
            )
        bounds.append(min(found, key=lambda b: b[0]))
    carrier = _PolyCarrier(base, desc.nvars, bounds)
    if carrier.size > CARRIER_CAP:
        raise OrderCapExceeded(f"{desc}: polynomial carrier of size {carrier.size} is too large")

    scalars = [base.one]
    if additive_order(base, base.one) != base.order:
        scalars = [s for s in range(base.order) if s != base.zero]
    gen_vecs = set()
    for g in gens:
        gv = carrier.reduce({m: _int_in(base, c) for m, c in g.terms})
        for m in carrier.monomials:
            unit = [base.zero] * carrier.width
            for s in scalars:
                unit[carrier.position[m]] = s
                vec = carrier.mul(gv, unit)
                if any(x != base.zero for x in vec):
                    gen_vecs.add(vec)

    # additive closure of the ideal generators
    zero_vec = tuple([base.zero] * carrier.width)
    ideal = {zero_vec}
    frontier = [zero_vec]
    gen_list = sorted(gen_vecs)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gen_list:
                s = carrier.addv(h, g)
                if s not in ideal:
                    ideal.add(s)
                    nxt.append(s)
        frontier = nxt

    if carrier.size // len(ideal) > order_cap:
        raise OrderCapExceeded(f"{desc}: order {carrier.size // len(ideal)} exceeds cap {order_cap}")
    coset_of = [-1] * carrier.size
    reps: list[tuple[int, ...]] = []
    ideal_list = list(ideal)
    for idx in range(carrier.size):
        if coset_of[idx] != -1:
            continue
        vec = carrier.to_vec(idx)
        cid = len(reps)
        reps.append(vec)
        for h in ideal_list:
            coset_of[carrier.to_index(carrier.addv(vec, h))] = cid
    n = len(reps)
    if n < 2:
        raise NotUnital(f"{desc}: relations generate the whole ring; no identity coset survives")

    one_vec = [base.zero] * carrier.width
    one_vec[carrier.position[tuple([0] * desc.nvars)]] = base.one
    one = coset_of[carrier.to_index(one_vec)]
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            add[i, j] = add[j, i] = coset_of[carrier.to_index(carrier.addv(reps[i], reps[j]))]
            mul[i, j] = mul[j, i] = coset_of[carrier.to_index(carrier.mul(reps[i], reps[j]))]
    if not all(mul[one, x] == x for x in range(n)):
        raise NotUnital(f"{desc}: no coset acts as multiplicative identity")
    labels = tuple(_quotient_label(carrier, vec) for vec in reps)
    return FiniteRing(n, add, mul, coset_of[0], one, str(desc), labels)


def _quotient_label(carrier: _PolyCarrier, vec) -> str:
    base = carrier.base
    parts = []
    order = sorted(range(carrier.width), key=lambda t: (sum(carrier.monomials[t]), carrier.monomials[t]), reverse=True)
    for t in order:
        c = vec[t]
        if c == base.zero:
            continue
        mono = "".join(
            d.VARIABLES[v] + (f"^{e}" if e > 1 else "") for v, e in enumerate(carrier.monomials[t]) if e
        )
        cs = base.label(c)
        if not mono:
            parts.append(cs)
        elif c == base.one:
            parts.append(mono)
        else:
            parts.append((f"({cs})" if "+" in cs else cs) + mono)
    return "+".join(parts) if parts else "0"


# --------------------------------------------------------------- queries


def additive_order(ring: FiniteRing, x: int) -> int:
    k, acc = 1, x
    while acc != ring.zero:
        acc = ring.add(acc, x)
        k += 1
    return k


def annihilator(ring: FiniteRing, x: int) -> frozenset[int]:
    """``{u : u*x == 0}``; always contains zero."""
    return frozenset(int(u) for u in np.flatnonzero(ring.mul_table[x] == ring.zero))


def nilpotent_index(ring: FiniteRing, x: int) -> int | None:
    """Smallest ``k >= 1`` with ``x**k == 0``, or None if x is not nilpotent."""
    power, k = x, 1
    seen = set()
    while power != ring.zero:
        if power in seen:
            return None
        seen.add(power)
        power = ring.mul(power, x)
        k += 1
    return k


def classify_element(ring: FiniteRing, x: int) -> ElementClass:
    if x == ring.zero:
        return ElementClass("zero")
    if np.any(ring.mul_table[x] == ring.one):
        return ElementClass("unit")
    return ElementClass("zero-divisor", nilpotent_index(ring, x))


def principal_ideal(ring: FiniteRing, x: int) -> frozenset[int]:
    return frozenset(int(u) for u in np.unique(ring.mul_table[x]))


def analyze_ring(ring: FiniteRing) -> RingAnalysis:
    mul = ring.mul_table
    units = frozenset(int(x) for x in np.flatnonzero(np.any(mul == ring.one, axis=1)))
    zd_star = frozenset(x for x in range(ring.order) if x != ring.zero and x not in units)
    nil_index = {}
    for x in range(ring.order):
        k = nilpotent_index(ring, x)
        if k is not None:
            nil_index[x] = k
    nilradical = frozenset(nil_index)
    is_field = not zd_star
    zd = zd_star | {ring.zero}
    closed = all(ring.add(a, b) in zd for a in zd for b in zd)
    is_local = closed
    maximal_ideal = frozenset(zd) if is_local else None

    full_ann = frozenset(x for x in zd_star if annihilator(ring, x) == zd)

    if is_field:
        is_colocal, core = True, None
    else:
        ideals = {principal_ideal(ring, x) for x in range(ring.order) if x != ring.zero}
        minimal = [i for i in ideals if not any(j < i for j in ideals)]
        is_colocal = len(minimal) == 1
        core = minimal[0] if is_colocal else None

    return RingAnalysis(
        units=units,
        zero_divisors_star=zd_star,
        nilradical=nilradical,
        nilpotent_index=nil_index,
        is_field=is_field,
        is_local=is_local,
        maximal_ideal=maximal_ideal,
        is_colocal=is_colocal,
        colocal_core=core,
        full_annihilator_set=full_ann,
        is_reduced=nilradical == {ring.zero},
        characteristic=additive_order(ring, ring.one),
    )


def check_axioms(ring: FiniteRing, exhaustive_limit: int = 64, samples: int = 20000, seed: int = 0) -> list[str]:
    """Return the list of violated ring axioms (empty for a valid ring).

    Associativity and distributivity are checked over all triples when
    ``order <= exhaustive_limit``, otherwise over a seeded random sample.
    """
    n, A, M = ring.order, ring.add_table, ring.mul_table
    problems = []
    if ring.zero == ring.one:
        problems.append("zero equals one")
    if not (np.array_equal(A, A.T) and np.array_equal(M, M.T)):
        problems.append("not commutative")
    if not np.array_equal(A[ring.zero], np.arange(n)):
        problems.append("zero is not an additive identity")
    if not np.array_equal(M[ring.one], np.arange(n)):
        problems.append("one is not a multiplicative identity")
    if not np.all(np.any(A == ring.zero, axis=1)):
        problems.append("missing additive inverse")
    if not np.all(np.sort(A, axis=1) == np.arange(n)):
        problems.append("addition is not a Latin square")
    if n <= exhaustive_limit:
        a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        a, b, c = a.ravel(), b.ravel(), c.ravel()
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
    if not np.array_equal(A[A[a, b], c], A[a, A[b, c]]):
        problems.append("addition not associative")
    if not np.array_equal(M[M[a, b], c], M[a, M[b, c]]):
        problems.append("multiplication not associative")
    if not np.array_equal(M[a, A[b, c]], A[M[a, b], M[a, c]]):
        problems.append("multiplication does not distribute")
    return problems


def local_profile(ring: FiniteRing) -> tuple[int, int, int] | None:
    """``(p, n, r)`` with ``|R| = p**(n*r)`` and ``|M| = p**((n-1)*r)``,
    for a local non-field ring; None if no such triple exists."""
    info = ring.analysis
    if not info.is_local or info.is_field:
        return None
    pk = d.prime_power(ring.order)
    if pk is None:
        return None
    p, e_ring = pk
    e_max = round(math.log(len(info.maximal_ideal), p))
    if p**e_max != len(info.maximal_ideal):
        return None
    # residue field has p**(e_ring - e_max) elements; take r as that exponent
    r = e_ring - e_max
    if r < 1 or e_ring % r:
        return None
    return p, e_ring // r, r


# ------------------------------------------------------------ isomorphism


def fingerprint(ring: FiniteRing) -> tuple:
    """Isomorphism-invariant summary of a ring and its zero-divisor graph.

    Isomorphic rings always agree; agreement of fingerprints is only a
    heuristic for isomorphism.
    """
    from .graph import build_zdg, canonical_form

    info = ring.analysis
    graph = build_zdg(ring)
    return (
        ring.order,
        info.characteristic,
        len(info.units),
        len(info.zero_divisors_star),
        tuple(sorted(info.nilpotent_index.values())),
        tuple(sorted(additive_order(ring, x) for x in range(ring.order))),
        tuple(sorted(graph.degrees())),
        canonical_form(graph),
    )


def _element_invariant(ring: FiniteRing, x: int) -> tuple:
    return (
        additive_order(ring, x),
        nilpotent_index(ring, x),
        len(annihilator(ring, x)),
        len(principal_ideal(ring, x)),
        ring.mul(x, x) == x,
    )


def find_isomorphism(a: FiniteRing, b: FiniteRing) -> list[int] | None:
    """Exhaustive backtracking search for a ring isomorphism ``a -> b``."""
    if a.order != b.order:
        return None
    n = a.order
    inv_a = [_element_invariant(a, x) for x in range(n)]
    inv_b = [_element_invariant(b, x) for x in range(n)]
    if Counter(inv_a) != Counter(inv_b):
        return None
    candidates = [[y for y in range(n) if inv_b[y] == inv_a[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: (len(candidates[x]), x))
    image = [-1] * n
    used = [False] * n
    A_add, A_mul, B_add, B_mul = a.add_table, a.mul_table, b.add_table, b.mul_table

    def consistent(x: int) -> bool:
        for z in range(n):
            if image[z] < 0:
                continue
            fx, fz = image[x], image[z]
            s = A_add[x, z]
            if image[s] >= 0 and image[s] != B_add[fx, fz]:
                return False
            p = A_mul[x, z]
            if image[p] >= 0 and image[p] != B_mul[fx, fz]:
                return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        for y in candidates[x]:
            if used[y]:
                continue
            image[x], used[y] = y, True
            if consistent(x) and search(k + 1):
                return True
            image[x], used[y] = -1, False
        return False

    return list(image) if search(0) else None


EXHAUSTIVE_ISO_ORDER = 9


def isomorphism_verdict(a: FiniteRing, b: FiniteRing) -> tuple[bool, str]:
    """Decide ``a ≅ b``; returns (verdict, method).

    Orders up to 9 get an exhaustive bijection search; larger rings fall
    back to fingerprint equality.
    """
    if fingerprint(a) != fingerprint(b):
        return False, "fingerprint"
    if a.order <= EXHAUSTIVE_ISO_ORDER:
        return find_isomorphism(a, b) is not None, "exhaustive"
    return True, "fingerprint"
