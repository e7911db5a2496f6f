"""Flat-file formats: lattice files, relation files, and DOT export.

Lattice file: ``lattice <name> <n>`` then ``cover i j`` / ``leq i j`` lines,
optional ``label i text``. Relation file: ``relation <name> over <lattice>``,
``auto-reflexive on|off``, then ``pair i j`` lines. Blank lines and ``#``
comments are ignored in both. Files written by the formatters re-parse to
equal objects.
"""

from __future__ import annotations

from .errors import ParseError
from .lattice import Lattice, build_lattice
from .relcalc import Relation, validate_relation


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_lattice_file(text) -> Lattice:
    header = None
    pairs = []
    mode = None
    labels = {}
    for lineno, parts in _lines(text):
        kind = parts[0]
        if kind == "lattice":
            if header is not None:
                raise ParseError("duplicate lattice header", lineno)
            if len(parts) != 3 or not parts[2].isdigit():
                raise ParseError("expected: lattice <name> <n>", lineno)
            header = (parts[1], int(parts[2]))
        elif kind in ("cover", "leq"):
            if header is None:
                raise ParseError("pair before lattice header", lineno)
            if mode is None:
                mode = kind
            elif mode != kind:
                raise ParseError("cannot mix cover and leq lines", lineno)
            if len(parts) != 3:
                raise ParseError(f"expected: {kind} <i> <j>", lineno)
            pairs.append((int(parts[1]), int(parts[2])))
        elif kind == "label":
            if len(parts) < 3:
                raise ParseError("expected: label <i> <text>", lineno)
            labels[int(parts[1])] = " ".join(parts[2:])
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if header is None:
        raise ParseError("missing lattice header", 0)
    name, n = header
    label_tuple = tuple(labels.get(i) for i in range(n)) if labels else None
    build_mode = "leq" if mode == "leq" else "covers"
    return build_lattice(n, pairs, mode=build_mode, labels=label_tuple, name=name)


def format_lattice_file(lat: Lattice) -> str:
    lines = [f"lattice {lat.name} {lat.n}"]
    lines.extend(f"cover {i} {j}" for i, j in lat.covers())
    if lat.labels:
        lines.extend(
            f"label {i} {lab}" for i, lab in enumerate(lat.labels) if lab is not None
        )
    return "\n".join(lines) + "\n"


def parse_relation_file(text, lat: Lattice) -> Relation:
    header = None
    auto_reflexive = True
    pairs = []
    for lineno, parts in _lines(text):
        kind = parts[0]
        if kind == "relation":
            if len(parts) != 4 or parts[2] != "over":
                raise ParseError("expected: relation <name> over <lattice>", lineno)
            header = (parts[1], parts[3])
        elif kind == "auto-reflexive":
            if len(parts) != 2 or parts[1] not in ("on", "off"):
                raise ParseError("expected: auto-reflexive on|off", lineno)
            auto_reflexive = parts[1] == "on"
        elif kind == "pair":
            if len(parts) != 3:
                raise ParseError("expected: pair <i> <j>", lineno)
            pairs.append((int(parts[1]), int(parts[2])))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if header is None:
        raise ParseError("missing relation header", 0)
    if header[1] != lat.name:
        raise ParseError(f"relation is over {header[1]!r}, not {lat.name!r}", 0)
    return validate_relation(lat, pairs, auto_reflexive=auto_reflexive)


def format_relation_file(rel: Relation, name="relation") -> str:
    lines = [
        f"relation {name} over {rel.lattice.name}",
        "auto-reflexive on",
    ]
    lines.extend(f"pair {i} {j}" for i, j in sorted(rel.pairs(strict=True)))
    return "\n".join(lines) + "\n"


def to_dot(lat: Lattice, highlights=(), title=None) -> str:
    """Cover-edge diagram, bottom-up; highlighted nodes are filled."""
    marked = set(highlights)
    lines = [f'digraph "{title or lat.name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for i in range(lat.n):
        attrs = [f'label="{lat.label(i)}"']
        if i in marked:
            attrs.append('style=filled fillcolor="lightblue"')
        lines.append(f"  n{i} [{' '.join(attrs)}];")
    for i, j in lat.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
