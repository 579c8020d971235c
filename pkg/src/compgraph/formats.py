"""DMT text, JSON and DOT serialisation of multipartite tournaments.

DMT (v1)::

    # optional comment lines
    k n_1 ... n_k
    0110...        <- n rows of n characters; char j of row i is 1 iff arc i->j

JSON: ``{"sizes": [...], "arcs": [[u, v], ...]}``. DOT is export only.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import Digraph, MultipartiteTournament, PartiteStructure


class FormatError(ValueError):
    pass


def to_dmt(t: MultipartiteTournament, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(" ".join(map(str, (t.k, *t.sizes))))
    for row in t.d.matrix():
        lines.append("".join(map(str, row)))
    return "\n".join(lines) + "\n"


def parse_dmt(text: str) -> MultipartiteTournament:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        lines.append((lineno, line.strip()))
    if not lines:
        raise FormatError("empty DMT input")
    lineno, header = lines[0]
    try:
        nums = [int(x) for x in header.split()]
    except ValueError:
        raise FormatError(f"line {lineno}: header must be integers 'k n_1 ... n_k'") from None
    if not nums or nums[0] != len(nums) - 1:
        raise FormatError(f"line {lineno}: header declares k={nums[0] if nums else '?'} "
                          f"but lists {len(nums) - 1} part sizes")
    try:
        parts = PartiteStructure(tuple(nums[1:]))
    except ValueError as exc:
        raise FormatError(f"line {lineno}: {exc}") from None
    rows = lines[1:]
    if len(rows) != parts.n:
        raise FormatError(f"expected {parts.n} matrix rows, found {len(rows)}")
    out = []
    for i, (lineno, row) in enumerate(rows):
        if len(row) != parts.n or set(row) - {"0", "1"}:
            raise FormatError(f"line {lineno}: row {i} must be {parts.n} characters of 0/1")
        if row[i] == "1":
            raise FormatError(f"line {lineno}: self-loop at vertex {i}")
        out.append(int(row[::-1], 2))
    return MultipartiteTournament(Digraph(parts.n, tuple(out)), parts)


def to_json(t: MultipartiteTournament, indent: int | None = None) -> str:
    return json.dumps({"sizes": list(t.sizes), "arcs": [list(a) for a in t.d.arcs()]}, indent=indent)


def parse_json(text: str) -> MultipartiteTournament:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "sizes" not in data or "arcs" not in data:
        raise FormatError('JSON input must be an object with "sizes" and "arcs"')
    try:
        sizes = tuple(data["sizes"])
        arcs = [tuple(a) for a in data["arcs"]]
        if any(len(a) != 2 for a in arcs):
            raise ValueError("each arc must be a [u, v] pair")
        return MultipartiteTournament.from_arcs(sizes, arcs)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from None


def to_dot(t: MultipartiteTournament, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    for i in range(t.k):
        members = " ".join(f"v{v};" for v in t.parts.part(i))
        lines.append(f'  subgraph cluster_{i} {{ label="V{i + 1}"; {members} }}')
    for u, v in t.d.arcs():
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> MultipartiteTournament:
    """Parse DMT or JSON, chosen by the first non-blank character."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_dmt(text)


def load(path: str | Path) -> MultipartiteTournament:
    return loads(Path(path).read_text())


def dumps(t: MultipartiteTournament, fmt: str = "dmt", comment: str | None = None) -> str:
    if fmt == "dmt":
        return to_dmt(t, comment)
    if fmt == "json":
        return to_json(t) + "\n"
    if fmt == "dot":
        return to_dot(t)
    raise ValueError(f"unknown format {fmt!r}")
