"""Benchmark networks and their ground-truth communities."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

BUILTIN = ("karate", "dolphins", "polbooks")

# attribute names recognised as a community label, in priority order
CLASS_KEYS = ("value", "club", "community", "group", "class")
POLBOOKS_CODES = {"l": 1, "n": 2, "c": 3}


class GraphFormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None, path: str | None = None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {msg}" if where else msg)
        self.line = line


@dataclass(frozen=True)
class Network:
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        N = len(self.labels)
        if len(set(self.labels)) != N:
            dup = [lab for lab, c in Counter(self.labels).items() if c > 1]
            raise GraphFormatError(f"duplicate node ids {dup}")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < N and 0 <= v < N):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for {N} nodes")
            if u == v:
                raise GraphFormatError(f"self-loop on node {u}")
            if u > v:
                raise GraphFormatError(f"edge ({u}, {v}) not stored as u < v")
            if (u, v) in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_pairs(cls, labels: Sequence[str], pairs: Iterable[tuple[int, int]]) -> "Network":
        """Normalise undirected pairs: drop self-loops and duplicates, sort."""
        edges = {(min(u, v), max(u, v)) for u, v in pairs if u != v}
        return cls(tuple(labels), tuple(sorted(edges)))

    @property
    def N(self) -> int:
        return len(self.labels)

    def __len__(self):
        return self.N


@dataclass(frozen=True)
class GroundTruth:
    classes: tuple[int, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        classes = tuple(int(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        if not classes:
            raise ValueError("ground truth needs at least one node")
        n = max(classes)
        if min(classes) < 1 or set(classes) != set(range(1, n + 1)):
            raise ValueError(f"classes must cover 1..{n} with no gaps, got {sorted(set(classes))}")
        if self.names and len(self.names) != n:
            raise ValueError(f"{len(self.names)} class names for {n} classes")

    @property
    def n(self) -> int:
        return max(self.classes)

    @property
    def N(self) -> int:
        return len(self.classes)

    def members(self, c: int) -> list[int]:
        return [v for v, k in enumerate(self.classes) if k == c]

    def sizes(self) -> list[int]:
        counts = Counter(self.classes)
        return [counts[c] for c in range(1, self.n + 1)]


# ---------------------------------------------------------------------------
# GML

_TOKEN = re.compile(r'(\[)|(\])|"((?:[^"\\]|\\.)*)"|([^\s\[\]"]+)|(\s+)|(.)', re.S)


def _tokenize(text: str, path: str | None):
    line = 1
    for m in _TOKEN.finditer(text):
        if m.group(5):
            line += m.group(5).count("\n")
        elif m.group(6):
            raise GraphFormatError(f"unexpected character {m.group(6)!r}", line, path)
        elif m.group(1):
            yield "[", None, line
        elif m.group(2):
            yield "]", None, line
        elif m.group(3) is not None:
            yield "str", m.group(3).replace('\\"', '"'), line
            line += m.group(3).count("\n")
        else:
            yield "atom", m.group(4), line


def _atom(value: str):
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        return value


def _parse_list(tokens, path, depth_line=None, closing=False):
    items = []
    for kind, value, line in tokens:
        if kind == "]":
            if not closing:
                raise GraphFormatError("unbalanced ']'", line, path)
            return items
        if kind != "atom" or not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", value):
            raise GraphFormatError(f"expected a key, got {value!r}", line, path)
        key = value
        try:
            kind, value, vline = next(tokens)
        except StopIteration:
            raise GraphFormatError(f"key {key!r} has no value", line, path) from None
        if kind == "[":
            items.append((key, _parse_list(tokens, path, vline, closing=True), line))
        elif kind == "]":
            raise GraphFormatError(f"key {key!r} has no value", vline, path)
        elif kind == "str":
            items.append((key, value, line))
        else:
            items.append((key, _atom(value), line))
    if closing:
        raise GraphFormatError("unterminated '[' block", depth_line, path)
    return items


def _class_from_nodes(raw: list, path):
    """Pick the first recognised label attribute present on every node."""
    for key in CLASS_KEYS:
        values = [attrs.get(key) for attrs in raw]
        if all(v is not None for v in values):
            break
    else:
        return None
    distinct = sorted({str(v) for v in values})
    if set(distinct) == set(POLBOOKS_CODES):
        mapping = dict(POLBOOKS_CODES)
        names = tuple(POLBOOKS_CODES)
    elif all(isinstance(v, int) for v in values):
        order = sorted(set(values))
        mapping = {str(v): i + 1 for i, v in enumerate(order)}
        names = tuple(str(v) for v in order)
    else:
        mapping = {v: i + 1 for i, v in enumerate(distinct)}
        names = tuple(distinct)
    return GroundTruth(tuple(mapping[str(v)] for v in values), names)


def parse_gml(text: str, path: str | None = None) -> tuple[Network, GroundTruth | None]:
    items = _parse_list(_tokenize(text, path), path)
    graphs = [(v, line) for k, v, line in items if k == "graph"]
    if len(graphs) != 1:
        raise GraphFormatError(f"expected exactly one graph block, found {len(graphs)}", None, path)
    body, _ = graphs[0]
    raw_nodes, raw_edges = [], []
    for key, value, line in body:
        if key == "node":
            if not isinstance(value, list):
                raise GraphFormatError("node must be a block", line, path)
            raw_nodes.append((dict((k, v) for k, v, _ in value), line))
        elif key == "edge":
            if not isinstance(value, list):
                raise GraphFormatError("edge must be a block", line, path)
            raw_edges.append((dict((k, v) for k, v, _ in value), line))
    index = {}
    labels = []
    for attrs, line in raw_nodes:
        if "id" not in attrs:
            raise GraphFormatError("node without id", line, path)
        nid = attrs["id"]
        if nid in index:
            raise GraphFormatError(f"duplicate node id {nid!r}", line, path)
        index[nid] = len(labels)
        labels.append(str(attrs.get("label", nid)))
    if len(set(labels)) != len(labels):
        # labels are cosmetic in GML; fall back to ids when they collide
        labels = [str(attrs["id"]) for attrs, _ in raw_nodes]
    pairs = []
    for attrs, line in raw_edges:
        try:
            s, t = attrs["source"], attrs["target"]
        except KeyError:
            raise GraphFormatError("edge needs source and target", line, path) from None
        for end in (s, t):
            if end not in index:
                raise GraphFormatError(f"edge endpoint {end!r} is not a node", line, path)
        pairs.append((index[s], index[t]))
    truth = _class_from_nodes([attrs for attrs, _ in raw_nodes], path)
    return Network.from_pairs(labels, pairs), truth


def load_gml(path) -> tuple[Network, GroundTruth | None]:
    path = Path(path)
    return parse_gml(path.read_text(encoding="utf-8"), str(path))


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def dump_gml(network: Network, truth: GroundTruth | None = None) -> str:
    """Serialise to the GML subset read by :func:`parse_gml`.

    Class values are written as integers ``1..n``.
    """
    if truth is not None and truth.N != network.N:
        raise ValueError(f"ground truth has {truth.N} nodes, network {network.N}")
    out = ["graph [", "  directed 0"]
    for v, label in enumerate(network.labels):
        out.append("  node [")
        out.append(f"    id {v}")
        out.append(f"    label {_quote(label)}")
        if truth is not None:
            out.append(f"    value {truth.classes[v]}")
        out.append("  ]")
    for u, v in network.edges:
        out += ["  edge [", f"    source {u}", f"    target {v}", "  ]"]
    out.append("]")
    return "\n".join(out) + "\n"


def save_gml(path, network: Network, truth: GroundTruth | None = None) -> None:
    Path(path).write_text(dump_gml(network, truth), encoding="utf-8")


# ---------------------------------------------------------------------------
# edge lists


def _node_key(label: str):
    return (0, int(label), "") if re.fullmatch(r"-?\d+", label) else (1, 0, label)


def load_edge_list(path, labels) -> tuple[Network, GroundTruth]:
    """Read ``u v`` edge lines and ``node class`` label lines.

    The node set is the labelled nodes; every edge endpoint must be labelled.
    Blank lines and ``#`` comments are ignored in both files.
    """
    assigned: dict[str, str] = {}
    for lineno, line in _content_lines(labels):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'node class', got {line!r}", lineno, str(labels))
        node, cls = parts
        if node in assigned:
            raise GraphFormatError(f"duplicate node id {node!r}", lineno, str(labels))
        assigned[node] = cls
    raw_pairs = []
    for lineno, line in _content_lines(path):
        parts = line.split()
        if len(parts) < 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno, str(path))
        u, v = parts[:2]
        for end in (u, v):
            if end not in assigned:
                raise GraphFormatError(f"node {end!r} has no label", lineno, str(path))
        raw_pairs.append((u, v))
    order = sorted(assigned, key=_node_key)
    index = {lab: i for i, lab in enumerate(order)}
    values = [assigned[lab] for lab in order]
    if all(re.fullmatch(r"-?\d+", c) for c in values):
        distinct = sorted({int(c) for c in values})
        mapping = {str(c): i + 1 for i, c in enumerate(distinct)}
        names = tuple(str(c) for c in distinct)
    else:
        distinct = sorted(set(values))
        mapping = {c: i + 1 for i, c in enumerate(distinct)}
        names = tuple(distinct)
    truth = GroundTruth(tuple(mapping[c] for c in values), names)
    network = Network.from_pairs(order, [(index[u], index[v]) for u, v in raw_pairs])
    return network, truth


def _content_lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if line:
                yield lineno, line


# ---------------------------------------------------------------------------
# bundled datasets


def builtin(name: str) -> tuple[Network, GroundTruth]:
    """One of the bundled benchmark networks with its ground truth."""
    key = name.strip().lower()
    if key not in BUILTIN:
        raise KeyError(f"unknown dataset {name!r}; valid names: {', '.join(BUILTIN)}")
    text = resources.files("evident.data").joinpath(f"{key}.gml").read_text(encoding="utf-8")
    network, truth = parse_gml(text, f"{key}.gml")
    if truth is None:
        raise GraphFormatError(f"bundled {key}.gml carries no class labels")
    return network, truth
