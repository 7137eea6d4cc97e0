"""Fan documents: a small JSON dialect for fans and named supports.

A document is a JSON object with the fields

    rank              positive integer
    rays              array of integer arrays, one primitive vector each
    edge_multipliers  optional array of positive integers, one per ray
    cones             array of ``{"rays": [...], "weight": w}`` objects;
                      ray indices are 1-based and strictly ascending
    supports          optional map from a name to an array of exact
                      rationals, written as integers or "p/q" strings

Floating point numbers are rejected everywhere.  Parse errors carry the
path of the offending field, so a bad cone index is reported as, say,
``cones[3].rays[1]: ray index 9 out of range 1..4``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FanDocumentError, MultiFanError
from .fans import MultiFan

_TOP_LEVEL_KEYS = ("rank", "rays", "edge_multipliers", "cones", "supports")


def format_rational(value):
    """Render an exact number as a JSON-safe value (int or "p/q")."""
    q = Fraction(value)
    if q.denominator == 1:
        return int(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(value, where: str) -> Fraction:
    """Read an exact rational given as an integer or a "p/q" string."""
    if isinstance(value, bool):
        raise FanDocumentError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        parts = value.split("/")
        try:
            if len(parts) == 1:
                return Fraction(int(parts[0].strip()))
            if len(parts) == 2:
                num = int(parts[0].strip())
                den = int(parts[1].strip())
                return Fraction(num, den)
        except (ValueError, ZeroDivisionError):
            pass
        raise FanDocumentError(f"{where}: malformed rational {value!r}")
    raise FanDocumentError(f"{where}: expected integer or 'p/q' string, got {type(value).__name__}")


def parse_integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FanDocumentError(f"{where}: expected an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class FanDocument:
    """Parsed fan file: exact data plus named support-number arrays."""

    rank: int
    rays: tuple
    multipliers: tuple
    cones: tuple
    weights: tuple
    supports: dict = field(default_factory=dict)

    def fan(self) -> MultiFan:
        try:
            return MultiFan(
                self.rank,
                self.rays,
                self.cones,
                weights=self.weights,
                multipliers=self.multipliers,
            )
        except MultiFanError as exc:
            raise FanDocumentError(f"document does not describe a valid fan: {exc}") from exc

    def support(self, name: str):
        if name not in self.supports:
            known = ", ".join(sorted(self.supports)) or "none"
            raise FanDocumentError(f"unknown support {name!r} (defined: {known})")
        return self.supports[name]


def parse_document(text: str, source: str = "<string>") -> FanDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanDocumentError(
            f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise FanDocumentError(f"{source}: top level must be an object")
    for key in data:
        if key not in _TOP_LEVEL_KEYS:
            raise FanDocumentError(f"{source}: unknown field {key!r}")
    for key in ("rank", "rays", "cones"):
        if key not in data:
            raise FanDocumentError(f"{source}: missing field {key!r}")

    rank = parse_integer(data["rank"], "rank")
    if rank < 1:
        raise FanDocumentError(f"rank: must be positive, got {rank}")

    raw_rays = data["rays"]
    if not isinstance(raw_rays, list) or not raw_rays:
        raise FanDocumentError("rays: expected a nonempty array")
    rays = []
    for i, row in enumerate(raw_rays):
        if not isinstance(row, list) or len(row) != rank:
            raise FanDocumentError(f"rays[{i}]: expected an array of {rank} integers")
        rays.append(tuple(parse_integer(x, f"rays[{i}][{j}]") for j, x in enumerate(row)))

    if "edge_multipliers" in data:
        raw = data["edge_multipliers"]
        if not isinstance(raw, list) or len(raw) != len(rays):
            raise FanDocumentError(
                f"edge_multipliers: expected an array of {len(rays)} integers"
            )
        multipliers = []
        for i, x in enumerate(raw):
            m = parse_integer(x, f"edge_multipliers[{i}]")
            if m < 1:
                raise FanDocumentError(f"edge_multipliers[{i}]: must be positive, got {m}")
            multipliers.append(m)
        multipliers = tuple(multipliers)
    else:
        multipliers = (1,) * len(rays)

    raw_cones = data["cones"]
    if not isinstance(raw_cones, list) or not raw_cones:
        raise FanDocumentError("cones: expected a nonempty array")
    cones = []
    weights = []
    for c, entry in enumerate(raw_cones):
        where = f"cones[{c}]"
        if not isinstance(entry, dict):
            raise FanDocumentError(f"{where}: expected an object")
        for key in entry:
            if key not in ("rays", "weight"):
                raise FanDocumentError(f"{where}: unknown field {key!r}")
        if "rays" not in entry:
            raise FanDocumentError(f"{where}: missing field 'rays'")
        raw_idx = entry["rays"]
        if not isinstance(raw_idx, list) or len(raw_idx) != rank:
            raise FanDocumentError(f"{where}.rays: expected an array of {rank} indices")
        idx = []
        for j, x in enumerate(raw_idx):
            k = parse_integer(x, f"{where}.rays[{j}]")
            if not 1 <= k <= len(rays):
                raise FanDocumentError(
                    f"{where}.rays[{j}]: ray index {k} out of range 1..{len(rays)}"
                )
            idx.append(k - 1)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise FanDocumentError(f"{where}.rays: indices must be strictly ascending")
        cones.append(tuple(idx))
        w = parse_integer(entry.get("weight", 1), f"{where}.weight")
        if w == 0:
            raise FanDocumentError(f"{where}.weight: must be nonzero")
        weights.append(w)

    supports = {}
    if "supports" in data:
        raw = data["supports"]
        if not isinstance(raw, dict):
            raise FanDocumentError("supports: expected an object")
        for name in sorted(raw):
            row = raw[name]
            where = f"supports[{name!r}]"
            if not isinstance(row, list) or len(row) != len(rays):
                raise FanDocumentError(f"{where}: expected an array of {len(rays)} numbers")
            supports[name] = tuple(
                parse_rational(x, f"{where}[{j}]") for j, x in enumerate(row)
            )

    return FanDocument(rank, tuple(rays), multipliers, tuple(cones), tuple(weights), supports)


def load_document(path: str) -> FanDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise FanDocumentError(f"{path}: {exc.strerror or exc}") from exc
    return parse_document(text, source=path)


def render_document(doc: FanDocument) -> str:
    """Serialize a document back to canonical JSON text."""
    payload = {
        "rank": doc.rank,
        "rays": [list(r) for r in doc.rays],
        "edge_multipliers": list(doc.multipliers),
        "cones": [
            {"rays": [i + 1 for i in cone], "weight": w}
            for cone, w in zip(doc.cones, doc.weights)
        ],
    }
    if doc.supports:
        payload["supports"] = {
            name: [format_rational(x) for x in doc.supports[name]]
            for name in sorted(doc.supports)
        }
    return json.dumps(payload, indent=2) + "\n"


def document_from_fan(fan: MultiFan, supports: dict | None = None) -> FanDocument:
    named = {}
    for name, row in (supports or {}).items():
        named[name] = tuple(Fraction(x) for x in row)
    return FanDocument(
        fan.rank, fan.rays, fan.multipliers, fan.cones, fan.weights, named
    )
