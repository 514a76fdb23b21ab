"""Ring descriptors: the expression trees naming a finite ring, their
canonical string form, and a recursive-descent parser for that form.

Grammar (whitespace-insensitive, indeterminates case-insensitive)::

    desc    := factor ( 'x' factor )*
    factor  := base [ '[' var (',' var)* ']' '/' '(' gen (',' gen)* ')' [ '^' int ] ]
    base    := 'Z' int | 'GF(' int ')'
    gen     := '(' poly (',' poly)* ')' '^' int | poly
    poly    := ['+'|'-'] term ( ('+'|'-') term )*
    term    := int ['*'] [mono] | mono
    mono    := var ['^' int] ( ['*'] var ['^' int] )*

A trailing ``^e`` after the whole generator list, as in ``Z4[x]/(2,x)^2``,
is the power of the ideal the list generates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ParseError, UnsupportedConstruction

VARIABLES = ("x", "y")

Monomial = tuple[int, ...]


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` for prime ``p``, else None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    return (p, k) if rest == 1 else None


@dataclass(frozen=True)
class Poly:
    """Integer-coefficient polynomial; ``terms`` holds (exponents, coeff)
    pairs sorted by exponent tuple, zero coefficients dropped."""

    nvars: int
    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_dict(cls, nvars: int, coeffs: dict[Monomial, int]) -> "Poly":
        return cls(nvars, tuple(sorted((m, c) for m, c in coeffs.items() if c != 0)))

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[Monomial, int] = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                m = tuple(a + b for a, b in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        return Poly.from_dict(self.nvars, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda t: (sum(t[0]), t[0]), reverse=True)
        out = ""
        for i, (mono, coeff) in enumerate(ordered):
            mono_s = "".join(
                VARIABLES[v] + (f"^{e}" if e > 1 else "") for v, e in enumerate(mono) if e
            )
            mag = abs(coeff)
            body = mono_s if (mag == 1 and mono_s) else f"{mag}{mono_s}"
            if i == 0:
                out = ("-" if coeff < 0 else "") + body
            else:
                out += ("-" if coeff < 0 else "+") + body
        return out


@dataclass(frozen=True)
class IdealPower:
    """The ideal generated by ``gens`` raised to ``exponent``."""

    gens: tuple[Poly, ...]
    exponent: int

    def expand(self) -> tuple[Poly, ...]:
        current = self.gens
        for _ in range(self.exponent - 1):
            current = tuple(a * b for a in current for b in self.gens)
        # drop duplicates, keep first occurrence order
        seen: dict[Poly, None] = {}
        for p in current:
            seen.setdefault(p, None)
        return tuple(seen)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.gens)) + f")^{self.exponent}"


Generator = Union[Poly, IdealPower]


@dataclass(frozen=True)
class Zn:
    n: int

    def __str__(self) -> str:
        return f"Z{self.n}"


@dataclass(frozen=True)
class GF:
    q: int

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def k(self) -> int:
        return prime_power(self.q)[1]

    def __str__(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True)
class Quotient:
    """``base[vars]/(relations)``; one or two indeterminates."""

    base: Union[Zn, GF]
    nvars: int
    relations: tuple[Generator, ...]

    def generators(self) -> tuple[Poly, ...]:
        out: list[Poly] = []
        for rel in self.relations:
            out.extend(rel.expand() if isinstance(rel, IdealPower) else (rel,))
        return tuple(out)

    def __str__(self) -> str:
        rels = ",".join(map(str, self.relations))
        return f"{self.base}[{','.join(VARIABLES[: self.nvars])}]/({rels})"


@dataclass(frozen=True)
class Product:
    factors: tuple["RingDescriptor", ...]

    def __str__(self) -> str:
        return "x".join(map(str, self.factors))


RingDescriptor = Union[Zn, GF, Quotient, Product]


def canonical(desc: RingDescriptor) -> str:
    return str(desc)


def product(*factors: RingDescriptor) -> RingDescriptor:
    """Build a flattened product descriptor."""
    flat: list[RingDescriptor] = []
    for f in factors:
        flat.extend(f.factors if isinstance(f, Product) else (f,))
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def is_field_descriptor(desc: RingDescriptor) -> bool:
    if isinstance(desc, GF):
        return True
    return isinstance(desc, Zn) and prime_power(desc.n) is not None and prime_power(desc.n)[1] == 1


class _Parser:
    def __init__(self, text: str):
        self.source = text
        self.text = "".join(text.split())
        self.pos = 0
        self.vars: tuple[str, ...] = ()

    def error(self, message: str, cls=ParseError) -> ParseError:
        return cls(message, self.pos, self.source)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, token: str, *, fold: bool = False) -> bool:
        chunk = self.text[self.pos : self.pos + len(token)]
        if (chunk.lower() == token.lower()) if fold else (chunk == token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str, *, fold: bool = False) -> None:
        if not self.accept(token, fold=fold):
            found = self.peek() or "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected integer")
        return int(self.text[start : self.pos])

    def parse(self) -> RingDescriptor:
        if not self.text:
            raise self.error("empty descriptor")
        factors = [self.factor()]
        while self.peek() in ("x", "X", "×"):
            self.pos += 1
            factors.append(self.factor())
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.peek()!r}")
        return product(*factors)

    def factor(self) -> RingDescriptor:
        base = self.base()
        if self.peek() != "[":
            return base
        self.pos += 1
        names = [self.var_name()]
        while self.accept(","):
            names.append(self.var_name())
        self.expect("]")
        if len(set(names)) != len(names) or tuple(names) != VARIABLES[: len(names)]:
            raise self.error("indeterminates must be [x] or [x,y]", UnsupportedConstruction)
        self.vars = tuple(names)
        self.expect("/")
        self.expect("(")
        if self.peek() == ")":
            raise self.error("empty relation list")
        gens = [self.generator()]
        while self.accept(","):
            gens.append(self.generator())
        self.expect(")")
        if self.accept("^"):
            exponent = self.integer()
            if exponent < 1:
                raise self.error("ideal exponent must be positive")
            if not all(isinstance(g, Poly) for g in gens):
                raise self.error("nested ideal powers", UnsupportedConstruction)
            gens = [IdealPower(tuple(gens), exponent)]
        self.vars = ()
        return Quotient(base, len(names), tuple(gens))

    def base(self) -> Union[Zn, GF]:
        start = self.pos
        if self.accept("GF(", fold=True):
            q = self.integer()
            self.expect(")")
            if prime_power(q) is None:
                self.pos = start
                raise self.error(f"GF({q}): order is not a prime power", UnsupportedConstruction)
            return GF(q)
        if self.accept("Z", fold=True):
            n = self.integer()
            if n < 2:
                self.pos = start
                raise self.error(f"Z{n}: modulus must be at least 2", UnsupportedConstruction)
            return Zn(n)
        raise self.error("expected 'Z<n>' or 'GF(<q>)'")

    def var_name(self) -> str:
        ch = self.peek().lower()
        if ch not in VARIABLES:
            raise self.error("expected indeterminate x or y")
        self.pos += 1
        return ch

    def generator(self) -> Generator:
        if self.peek() == "(":
            self.pos += 1
            polys = [self.poly()]
            while self.accept(","):
                polys.append(self.poly())
            self.expect(")")
            self.expect("^")
            exponent = self.integer()
            if exponent < 1:
                raise self.error("ideal exponent must be positive")
            return IdealPower(tuple(polys), exponent)
        return self.poly()

    def poly(self) -> Poly:
        nvars = len(self.vars)
        coeffs: dict[Monomial, int] = {}
        sign = -1 if self.peek() == "-" else 1
        if self.peek() in "+-" and self.peek():
            self.pos += 1
        while True:
            mono, coeff = self.term()
            coeffs[mono] = coeffs.get(mono, 0) + sign * coeff
            if self.peek() == "+":
                sign = 1
            elif self.peek() == "-":
                sign = -1
            else:
                break
            self.pos += 1
        return Poly.from_dict(nvars, coeffs)

    def term(self) -> tuple[Monomial, int]:
        exps = [0] * len(self.vars)
        coeff = 1
        had_coeff = False
        if self.peek().isdigit():
            coeff = self.integer()
            had_coeff = True
            self.accept("*")
        had_var = False
        while self.peek().lower() in VARIABLES and self.peek():
            name = self.peek().lower()
            if name not in self.vars:
                raise self.error(f"indeterminate {name!r} not declared")
            self.pos += 1
            e = self.integer() if self.accept("^") else 1
            exps[self.vars.index(name)] += e
            had_var = True
            if self.peek() == "*":
                self.pos += 1
        if not (had_coeff or had_var):
            raise self.error("expected polynomial term")
        return tuple(exps), coeff


def parse_descriptor(text: str) -> RingDescriptor:
    """Parse a ring descriptor string.

    >>> str(parse_descriptor("Z4[X]/(2X, X^2-2)"))
    'Z4[x]/(2x,x^2-2)'
    """
    return _Parser(text).parse()
