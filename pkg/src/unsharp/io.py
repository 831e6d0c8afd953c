"""Poset documents, table rendering and DOT export."""
from __future__ import annotations

import json
from importlib import resources
from dataclasses import dataclass
from typing import Optional, Sequence

from unsharp.connectives import OperatorTable
from unsharp.errors import NotBounded, ParseError, UnknownLabel
from unsharp.poset import Poset, validate

FORMAT_VERSION = 1


@dataclass(frozen=True)
class PosetDocument:
    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    bottom: Optional[str] = None
    top: Optional[str] = None
    version: int = FORMAT_VERSION

    def to_json(self) -> dict:
        out = {"version": self.version, "elements": list(self.elements), "covers": [list(c) for c in self.covers]}
        if self.bottom is not None:
            out["bottom"] = self.bottom
        if self.top is not None:
            out["top"] = self.top
        return out


def load_document(text: str) -> PosetDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object")
    version = raw.get("version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version!r}")
    elements = raw.get("elements")
    if not isinstance(elements, list) or not all(isinstance(e, str) and e for e in elements):
        raise ParseError("'elements' must be a list of non-empty strings")
    covers = raw.get("covers", [])
    if not isinstance(covers, list):
        raise ParseError("'covers' must be a list of [lower, upper] pairs")
    known = set(elements)
    pairs = []
    for i, c in enumerate(covers):
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c)):
            raise ParseError(f"cover #{i} is not a [lower, upper] pair of labels")
        for lbl in c:
            if lbl not in known:
                raise ParseError(f"cover #{i} uses undeclared element {lbl!r}")
        pairs.append((c[0], c[1]))
    for key in ("bottom", "top"):
        if key in raw and raw[key] not in known:
            raise ParseError(f"{key} {raw[key]!r} is not a declared element")
    return PosetDocument(tuple(elements), tuple(pairs), raw.get("bottom"), raw.get("top"), version)


def build(doc: PosetDocument) -> Poset:
    try:
        p = validate(doc.elements, doc.covers)
    except UnknownLabel as exc:
        raise ParseError(str(exc)) from None
    if doc.bottom is not None and p.names[p.bottom] != doc.bottom:
        raise NotBounded(f"declared bottom {doc.bottom!r} but least element is {p.names[p.bottom]!r}")
    if doc.top is not None and p.names[p.top] != doc.top:
        raise NotBounded(f"declared top {doc.top!r} but greatest element is {p.names[p.top]!r}")
    return p


def parse(text: str) -> Poset:
    """Parse a JSON poset document into a validated :class:`Poset`."""
    return build(load_document(text))


def read(path) -> Poset:
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


def fixture_path(name: str):
    """Path of a bundled example document, e.g. ``fixture_path("fig1")``."""
    return resources.files("unsharp") / "data" / f"{name}.json"


def fixture(name: str) -> Poset:
    return parse(fixture_path(name).read_text(encoding="utf-8"))


def document(p: Poset) -> PosetDocument:
    covers = tuple((p.names[a], p.names[b]) for a, b in p.covers())
    return PosetDocument(p.names, covers)


def serialize(p: Poset) -> str:
    return json.dumps(document(p).to_json())


# -- tables ----------------------------------------------------------------------

_ROW_LABEL = {"neg": "x⁰", "negneg": "x⁰⁰"}
_SYMBOL = {"imp": "→", "conj": "⊙"}


def render_unary(tables: Sequence[OperatorTable]) -> str:
    """One line per table, e.g. ``x⁰: 1 f ac d c 0 a 0``, under a header row."""
    p = tables[0].poset
    lines = ["x: " + " ".join(p.names)]
    for t in tables:
        lines.append(f"{_ROW_LABEL[t.op]}: " + " ".join(p.fmt(v) for v in t.entries))
    return "\n".join(lines) + "\n"


def render_binary(table: OperatorTable) -> str:
    p = table.poset
    cells = [[p.fmt(v) for v in row] for row in table.entries]
    head = [_SYMBOL[table.op], *p.names]
    body = [[p.names[i], *row] for i, row in enumerate(cells)]
    widths = [max(len(r[j]) for r in [head, *body]) for j in range(len(head))]

    def line(r):
        return " | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()

    sep = "-+-".join("-" * w for w in widths)
    return "\n".join([line(head), sep, *(line(r) for r in body)]) + "\n"


def render_table(table: OperatorTable) -> str:
    if table.arity == 1:
        return render_unary([table])
    return render_binary(table)


def to_dot(p: Poset, name: str = "poset") -> str:
    """Hasse diagram as a DOT digraph, edges pointing upward."""
    q = json.dumps
    lines = [f"digraph {q(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in p.names:
        lines.append(f"  {q(x)};")
    if p.n > 1:
        lines.append(f"  {{ rank=min; {q(p.names[p.bottom])}; }}")
        lines.append(f"  {{ rank=max; {q(p.names[p.top])}; }}")
    for a, b in p.covers():
        lines.append(f"  {q(p.names[a])} -> {q(p.names[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
