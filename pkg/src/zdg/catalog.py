"""The ring catalog and the append-only invariant cache.

Cache records are stored one JSON object per line in
``$ZDG_DATA_DIR/cache.ndjson`` (default ``~/.local/share/zdg``). Format
version 1 fields::

    descriptor, fingerprint, gamma_offensive, gamma_defensive,
    r_statistic, computed_at, artifact_version

Records are only ever appended; a later record for the same
(descriptor, artifact_version) may fill in fields left null earlier but
must agree with every value already stored.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import asdict, dataclass, replace
from datetime import datetime, timezone
from functools import lru_cache
from pathlib import Path

from . import __version__
from . import descriptor as d
from .errors import IntegrityConflict, IoFailure

PAPER_NAMED = "paper-named"
GENERATED = "generated"

FIELD_ORDERS = (2, 3, 4, 5, 7, 8, 9)
MAX_ZN = 100
MAX_PRODUCT_VERTICES = 40
CACHE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    descriptor: str
    provenance: str
    order: int
    paper_anchor: str | None = None

    @property
    def parsed(self) -> d.RingDescriptor:
        return d.parse_descriptor(self.descriptor)


def field_descriptor(q: int) -> str:
    return f"Z{q}" if d.prime_power(q)[1] == 1 else f"GF({q})"


GAMMA1_ANCHOR = "γ^o(Γ(R))=1 if and only if"
GAMMA2_ANCHOR = "γ^o(Γ(R))=2 if and only if"

# (conventional notation, descriptor)
GAMMA1_RINGS: tuple[tuple[str, str], ...] = (
    ("Z_4", "Z4"),
    ("Z_2[X]/(X^2)", "Z2[x]/(x^2)"),
    ("Z_9", "Z9"),
    ("Z_3[X]/(X^2)", "Z3[x]/(x^2)"),
    ("Z_8", "Z8"),
    ("Z_2[X]/(X^3)", "Z2[x]/(x^3)"),
    *((f"Z_2 x F_{q}", "Z2x" + field_descriptor(q)) for q in FIELD_ORDERS),
    ("Z_4[X]/(2X, X^2-2)", "Z4[x]/(2x,x^2-2)"),
)

GAMMA2_RINGS: tuple[tuple[str, str], ...] = (
    *((f"Z_3 x F_{q}", "Z3x" + field_descriptor(q)) for q in FIELD_ORDERS),
    ("Z_2 x Z_4", "Z2xZ4"),
    ("Z_2 x Z_2[X]/(X^2)", "Z2xZ2[x]/(x^2)"),
    ("Z_16", "Z16"),
    ("Z_2[X]/(X^4)", "Z2[x]/(x^4)"),
    ("Z_4[X]/(2X, X^3-2)", "Z4[x]/(2x,x^3-2)"),
    ("Z_4[X]/(X^2-2)", "Z4[x]/(x^2-2)"),
    ("Z_4[X]/(X^2+2X+2)", "Z4[x]/(x^2+2x+2)"),
    ("F_4[X]/(X^2)", "GF(4)[x]/(x^2)"),
    ("Z_4[X]/(X^2+X+1)", "Z4[x]/(x^2+x+1)"),
    ("Z_2[X,Y]/(X,Y)^2", "Z2[x,y]/((x,y)^2)"),
    ("Z_4[X]/(2,X)^2", "Z4[x]/((2,x)^2)"),
    ("Z_27", "Z27"),
    ("Z_3[X]/(X^3)", "Z3[x]/(x^3)"),
    ("Z_9[X]/(X^2-3, 3X)", "Z9[x]/(x^2-3,3x)"),
    ("Z_9[X]/(X^2-6, 3X)", "Z9[x]/(x^2-6,3x)"),
    ("Z_25", "Z25"),
    ("Z_5[X]/(X^2)", "Z5[x]/(x^2)"),
)

# rings named elsewhere in the results (sharpness witnesses, worked cases)
OTHER_NAMED: tuple[tuple[str, str, str], ...] = (
    ("Z_6", "Z6", "γ=1 classification proof"),
    ("Z_2 x Z_2", "Z2xZ2", "F x R formula worked case"),
    ("Z_3 x Z_3", "Z3xZ3", "Γ(R)=K_n if and only if"),
    ("Z_2 x Z_8", "Z2xZ8", "The bound is attained for R = Z_8"),
)

# local non-field rings used as product factors
LOCAL_BLOCKS = (
    "Z4", "Z2[x]/(x^2)", "Z8", "Z2[x]/(x^3)", "Z4[x]/(2x,x^2-2)", "Z9", "Z3[x]/(x^2)",
    "Z2[x,y]/((x,y)^2)", "Z4[x]/((2,x)^2)", "Z16", "Z2[x]/(x^4)", "Z4[x]/(x^2+x+1)",
    "GF(4)[x]/(x^2)", "Z25", "Z5[x]/(x^2)", "Z27", "Z3[x]/(x^3)",
)

# further local quotients: truncated polynomial rings, square-zero
# extensions and Galois rings
EXTRA_QUOTIENTS = (
    "Z2[x]/(x^5)", "Z2[x]/(x^6)", "Z3[x]/(x^4)", "Z7[x]/(x^2)", "Z3[x,y]/((x,y)^2)",
    "GF(8)[x]/(x^2)", "GF(9)[x]/(x^2)", "Z9[x]/(x^2+1)", "Z4[x]/(x^3+x+1)",
    "Z2[x,y]/(x^2,y^2)", "Z4[x]/(x^2)", "Z4[x]/(x^2-2x)",
)


def _order(desc: str) -> int:
    return _ring_stats(desc)[0]


@lru_cache(maxsize=None)
def _ring_stats(desc: str) -> tuple[int, int]:
    """(order, |Z(R)*|) of a descriptor, built once per process."""
    from .ring import build_ring

    ring = build_ring(desc)
    return ring.order, len(ring.analysis.zero_divisors_star)


def _flat(*descs: str) -> str:
    return d.canonical(d.product(*(d.parse_descriptor(s) for s in descs)))


@lru_cache(maxsize=None)
def _full_catalog() -> tuple[CatalogEntry, ...]:
    entries: dict[str, CatalogEntry] = {}

    def add(name: str, desc: str, provenance: str, anchor: str | None = None) -> None:
        desc = d.canonical(d.parse_descriptor(desc))
        if desc in entries:
            return
        entries[desc] = CatalogEntry(name, desc, provenance, _order(desc), anchor)

    for name, desc in GAMMA1_RINGS:
        add(name, desc, PAPER_NAMED, GAMMA1_ANCHOR)
    for name, desc in GAMMA2_RINGS:
        add(name, desc, PAPER_NAMED, GAMMA2_ANCHOR)
    for name, desc, anchor in OTHER_NAMED:
        add(name, desc, PAPER_NAMED, anchor)

    def add_generated(desc: str) -> None:
        desc = d.canonical(d.parse_descriptor(desc))
        add(desc, desc, GENERATED)

    for n in range(2, MAX_ZN + 1):
        add_generated(f"Z{n}")
    for q in FIELD_ORDERS:
        add_generated(field_descriptor(q))
    for desc in LOCAL_BLOCKS + EXTRA_QUOTIENTS:
        add_generated(desc)

    fields = [field_descriptor(q) for q in FIELD_ORDERS]
    blocks = fields + list(LOCAL_BLOCKS)
    for size in (2, 3):
        for combo in itertools.combinations_with_replacement(blocks, size):
            if size == 3 and sum(c not in fields for c in combo) > 1:
                continue
            order = 1
            for c in combo:
                order *= _ring_stats(c)[0]
            if order > MAX_ZN:
                continue
            desc = _flat(*combo)
            if _ring_stats(desc)[1] > MAX_PRODUCT_VERTICES:
                continue
            add_generated(desc)
    return tuple(sorted(entries.values(), key=lambda e: (e.order, e.descriptor)))


def catalog(max_order: int = MAX_ZN) -> list[CatalogEntry]:
    """Deterministic catalog of rings of order at most ``max_order``."""
    if max_order < 4:
        raise ValueError("max_order must be at least 4")
    return [e for e in _full_catalog() if e.order <= max_order]


def catalog_hash(entries: list[CatalogEntry]) -> str:
    h = hashlib.sha256()
    for e in entries:
        h.update(f"{e.descriptor}\t{e.provenance}\n".encode())
    return h.hexdigest()


# ----------------------------------------------------------------- cache


@dataclass(frozen=True)
class CacheRecord:
    descriptor: str
    fingerprint: str | None = None
    gamma_offensive: int | None = None
    gamma_defensive: int | None = None
    r_statistic: int | None = None
    computed_at: str = ""
    artifact_version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False)


VALUE_FIELDS = ("fingerprint", "gamma_offensive", "gamma_defensive", "r_statistic")


def data_dir() -> Path:
    env = os.environ.get("ZDG_DATA_DIR")
    return Path(env) if env else Path.home() / ".local" / "share" / "zdg"


class ResultCache:
    """Append-only NDJSON store of per-ring invariants."""

    def __init__(self, directory: str | Path | None = None, version: str = __version__):
        self.directory = Path(directory) if directory is not None else data_dir()
        self.path = self.directory / "cache.ndjson"
        self.version = version
        self._records: dict[str, CacheRecord] | None = None

    def _load(self) -> dict[str, CacheRecord]:
        if self._records is None:
            self._records = {}
            try:
                with open(self.path, encoding="utf-8") as fh:
                    for line in fh:
                        line = line.strip()
                        if not line:
                            continue
                        rec = CacheRecord(**json.loads(line))
                        if rec.artifact_version == self.version:
                            self._records[rec.descriptor] = self._merge(
                                self._records.get(rec.descriptor), rec
                            )
            except FileNotFoundError:
                pass
            except (OSError, ValueError, TypeError) as exc:
                raise IoFailure(f"cannot read cache {self.path}: {exc}") from exc
        return self._records

    @staticmethod
    def _merge(old: CacheRecord | None, new: CacheRecord) -> CacheRecord:
        if old is None:
            return new
        updates = {}
        for name in VALUE_FIELDS:
            a, b = getattr(old, name), getattr(new, name)
            if a is not None and b is not None and a != b:
                raise IntegrityConflict(
                    f"{new.descriptor}: {name} {b!r} conflicts with stored {a!r}"
                )
            updates[name] = a if b is None else b
        return replace(new, **updates)

    def get(self, descriptor: str) -> CacheRecord | None:
        return self._load().get(descriptor)

    def put(self, record: CacheRecord) -> CacheRecord:
        if record.artifact_version != self.version:
            raise ValueError("record belongs to a different artifact version")
        records = self._load()
        merged = self._merge(records.get(record.descriptor), record)
        if not record.computed_at:
            record = replace(record, computed_at=datetime.now(timezone.utc).isoformat(timespec="seconds"))
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(record.to_json() + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        except OSError as exc:
            raise IoFailure(f"cannot append to cache {self.path}: {exc}") from exc
        records[record.descriptor] = replace(merged, computed_at=record.computed_at)
        return records[record.descriptor]
