"""Line-oriented text format for posets, pomonoids, S-posets, maps and slices.

Example::

    kind: sposet
    name: X
    size: 4
    over: S2
    labels: bot a b top
    act:
    0 1
    1 1
    2 1
    3 3
    order:
    0 <= 1
    0 <= 2
    1 <= 3
    2 <= 3

Orders are given by generating pairs and closed on load; they are written
back as the sorted transitive reduction.  References (``over``, ``dom``,
``cod``, ``map``) are resolved by a :class:`Workspace`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

from .core import (
    BadShape,
    Pomonoid,
    Poset,
    PosactError,
    SPoset,
    SPosetMap,
    order_closure,
    validate_map,
    validate_pomonoid,
    validate_poset,
    validate_sposet,
)

BLOCK_KEYS = ("mult", "act", "order", "table")
_KEY = re.compile(r"^([A-Za-z_]+):\s*(.*)$")


class FormatError(PosactError):
    pass


class UnresolvedReference(PosactError):
    pass


@dataclass(frozen=True)
class SliceObject:
    """An S-poset map regarded as an object over its codomain."""

    f: SPosetMap
    name: Optional[str] = None

    @property
    def base(self) -> SPoset:
        return self.f.cod


@dataclass
class Record:
    fields: dict
    blocks: dict
    comments: list


def parse_record(text: str) -> Record:
    fields, blocks, comments = {}, {}, []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        m = _KEY.match(line)
        if m and "<=" not in line:
            key, value = m.group(1), m.group(2).strip()
            if key in BLOCK_KEYS:
                current = key
                blocks[key] = []
                if value:
                    blocks[key].append(value)
            else:
                current = None
                fields[key] = value
            continue
        if current is None:
            raise FormatError("line %d" % lineno, raw)
        blocks[current].append(line)
    if "kind" not in fields:
        raise FormatError("missing kind")
    return Record(fields, blocks, comments)


def _token(tok: str, labels) -> int:
    # integers are always indices; other tokens are looked up among the labels
    try:
        return int(tok)
    except ValueError:
        pass
    if labels is not None and tok in labels:
        return labels.index(tok)
    raise FormatError("bad element", tok)


def _rows(rec: Record, key: str, labels, n: int, width: int) -> list:
    rows = [[_token(t, labels) for t in line.split()] for line in rec.blocks.get(key, [])]
    if len(rows) != n or any(len(r) != width for r in rows):
        raise BadShape(key, n, width)
    return rows


def _order(rec: Record, labels, n: int) -> Poset:
    pairs = []
    for line in rec.blocks.get("order", []):
        left, sep, right = line.partition("<=")
        if not sep:
            raise FormatError("bad order line", line)
        pairs.append((_token(left.strip(), labels), _token(right.strip(), labels)))
    return order_closure(pairs, n, labels)


def _labels(rec: Record):
    lab = rec.fields.get("labels")
    return tuple(lab.split()) if lab else None


Resolver = Callable[[str], object]


def build(rec: Record, resolve: Resolver):
    """Turn a parsed record into a validated object."""
    kind = rec.fields["kind"]
    name = rec.fields.get("name")
    labels = _labels(rec)
    if kind == "poset":
        n = int(rec.fields["size"])
        P = _order(rec, labels, n)
        return validate_poset(n, P.leq, labels)
    if kind == "pomonoid":
        n = int(rec.fields["size"])
        P = _order(rec, labels, n)
        mult = _rows(rec, "mult", labels, n, n)
        ident = _token(rec.fields.get("identity", "0"), labels)
        return validate_pomonoid(P, mult, ident, name)
    if kind == "sposet":
        n = int(rec.fields["size"])
        S = resolve(rec.fields["over"])
        if not isinstance(S, Pomonoid):
            raise UnresolvedReference(rec.fields["over"])
        P = _order(rec, labels, n)
        act = _rows(rec, "act", labels, n, S.size)
        return validate_sposet(P, S, act, name)
    if kind == "map":
        A, B = resolve(rec.fields["dom"]), resolve(rec.fields["cod"])
        table = _rows(rec, "table", None, 1, A.size)[0]
        return validate_map(A, B, table)
    if kind == "slice":
        f = resolve(rec.fields["map"])
        if not isinstance(f, SPosetMap):
            raise UnresolvedReference(rec.fields["map"])
        return SliceObject(f, name)
    raise FormatError("unknown kind", kind)


# ---------------------------------------------------------------------------
# serialization


def _order_lines(P: Poset) -> list:
    return ["%d <= %d" % p for p in P.covers()]


def _header(kind: str, name, provenance) -> list:
    out = []
    if provenance:
        out.append("# provenance: %s" % provenance)
    out.append("kind: %s" % kind)
    if name:
        out.append("name: %s" % name)
    return out


def _label_line(P: Poset) -> list:
    return ["labels: %s" % " ".join(P.labels)] if P.labels is not None else []


def serialize(obj, name: Optional[str] = None, refs: Optional[dict] = None,
              provenance: Optional[str] = None) -> str:
    """Canonical text of ``obj``.  ``refs`` names referenced objects (by id)."""
    refs = refs or {}

    def ref(x, default):
        if id(x) in refs:
            return refs[id(x)]
        return getattr(x, "name", None) or default

    if isinstance(obj, Poset):
        lines = _header("poset", name, provenance) + ["size: %d" % obj.size] + _label_line(obj)
        lines += ["order:"] + _order_lines(obj)
    elif isinstance(obj, Pomonoid):
        name = name or obj.name
        lines = _header("pomonoid", name, provenance)
        lines += ["size: %d" % obj.size, "identity: %d" % obj.identity] + _label_line(obj.poset)
        lines += ["mult:"] + [" ".join(map(str, row)) for row in obj.mult]
        lines += ["order:"] + _order_lines(obj.poset)
    elif isinstance(obj, SPoset):
        name = name or obj.name
        lines = _header("sposet", name, provenance)
        lines += ["size: %d" % obj.size, "over: %s" % ref(obj.over, "S")] + _label_line(obj.poset)
        lines += ["act:"] + [" ".join(map(str, row)) for row in obj.act]
        lines += ["order:"] + _order_lines(obj.poset)
    elif isinstance(obj, SPosetMap):
        lines = _header("map", name, provenance)
        lines += ["dom: %s" % ref(obj.dom, "A"), "cod: %s" % ref(obj.cod, "B")]
        lines += ["table:", " ".join(map(str, obj.table))]
    elif isinstance(obj, SliceObject):
        lines = _header("slice", name or obj.name, provenance)
        lines += ["map: %s" % ref(obj.f, "f")]
    else:
        raise TypeError(type(obj))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# workspaces


class Workspace:
    """Resolves names to objects: in-memory registry, then ``<name>.pos`` files."""

    def __init__(self, dirs=(), objects: Optional[dict] = None, fallback: Optional[Resolver] = None):
        self.dirs = [Path(d) for d in dirs]
        self.objects = dict(objects or {})
        self.fallback = fallback
        self._loading: set = set()

    def add(self, name: str, obj) -> None:
        self.objects[name] = obj

    def get(self, name: str):
        if name in self.objects:
            return self.objects[name]
        for d in self.dirs:
            p = d / (name + ".pos")
            if p.exists():
                return self.load(p)
            for q in sorted(d.glob("*.pos")):
                if q.stem in self._loading:
                    continue
                try:
                    rec = parse_record(q.read_text(encoding="utf-8"))
                except FormatError:
                    continue
                if rec.fields.get("name") == name:
                    return self.load(q)
        if self.fallback is not None:
            obj = self.fallback(name)
            if obj is not None:
                self.objects[name] = obj
                return obj
        raise UnresolvedReference(name)

    def load(self, path: Union[str, Path]):
        path = Path(path)
        if path.parent not in self.dirs:
            self.dirs.append(path.parent)
        rec = parse_record(path.read_text(encoding="utf-8"))
        self._loading.add(path.stem)
        try:
            obj = build(rec, self.get)
        finally:
            self._loading.discard(path.stem)
        name = rec.fields.get("name") or path.stem
        self.objects[name] = obj
        if name != path.stem:
            self.objects.setdefault(path.stem, obj)
        return obj


def loads(text: str, resolve: Optional[Resolver] = None):
    def nothing(name):
        raise UnresolvedReference(name)

    return build(parse_record(text), resolve or nothing)
