"""Text formats: Newick trees, distance-matrix CSV, and edge lists.

Newick subset::

    tree    := subtree ";"
    subtree := leaf | "(" subtree ("," subtree)* ")" [label] [":" length]
    leaf    := label [":" length]

Labels are unquoted and may not contain whitespace or ``(),:;``. Missing
lengths default to 1.0. A single-child group is accepted so that trees with
degree-2 vertices survive a round trip.
"""

from __future__ import annotations

import csv
import io
import re

import numpy as np

from .errors import DimensionMismatch, NonPositiveLength, ParseError
from .geodesic_graph import WeightedGraph
from .metric_space import FiniteMetricSpace, build_space
from .metric_tree import MetricTree

_LABEL = re.compile(r"[^\s(),:;\[\]']+")
_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?inf|nan", re.IGNORECASE)


class _NewickParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.labels: list[str | None] = []
        self.edges: list[tuple[int, int, float]] = []

    def fail(self, expected: str):
        found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
        raise ParseError(f"expected {expected}, found {found!r}", position=self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def label(self) -> str | None:
        self.skip()
        m = _LABEL.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def length(self) -> float:
        if self.peek() != ":":
            return 1.0
        self.pos += 1
        self.skip()
        start = self.pos
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.fail("branch length")
        self.pos = m.end()
        value = float(m.group())
        if not value > 0 or not np.isfinite(value):
            raise NonPositiveLength(f"branch length {m.group()} at position {start} is not positive")
        return value

    def subtree(self) -> tuple[int, float]:
        v = len(self.labels)
        self.labels.append(None)
        if self.peek() == "(":
            self.pos += 1
            while True:
                child, w = self.subtree()
                self.edges.append((v, child, w))
                c = self.peek()
                if c == ",":
                    self.pos += 1
                elif c == ")":
                    self.pos += 1
                    break
                else:
                    self.fail("',' or ')'")
            self.labels[v] = self.label()
        else:
            lab = self.label()
            if lab is None:
                self.fail("label or '('")
            self.labels[v] = lab
        return v, self.length()

    def parse(self) -> MetricTree:
        self.subtree()
        if self.peek() != ";":
            self.fail("';'")
        self.pos += 1
        if self.peek():
            self.fail("end of input")
        named = {lab for lab in self.labels if lab is not None}
        if len(named) != sum(lab is not None for lab in self.labels):
            seen = set()
            dup = next(lab for lab in self.labels if lab is not None and (lab in seen or seen.add(lab)))
            raise ParseError(f"duplicate label {dup!r}")
        k = 0
        for i, lab in enumerate(self.labels):
            if lab is None:
                while f"_n{k}" in named:
                    k += 1
                self.labels[i] = f"_n{k}"
                k += 1
        return MetricTree(WeightedGraph(tuple(self.labels), tuple(self.edges)))


def parse_newick(text: str) -> MetricTree:
    return _NewickParser(text).parse()


def _fmt(x: float) -> str:
    return repr(float(x))


def emit_newick(tree: MetricTree, root: int = 0) -> str:
    """Newick text rooted at ``root``; children in vertex-index order."""
    adj = tree.graph.adjacency
    labels = tree.labels

    def render(v, parent):
        kids = [c for c in sorted(adj[v]) if c != parent]
        head = "(" + ",".join(render(c, v) for c in kids) + ")" if kids else ""
        tail = "" if parent is None else ":" + _fmt(adj[v][parent])
        return head + labels[v] + tail

    return render(root, None) + ";"


def _lines(text: str):
    for lineno, line in enumerate(text.split("\n"), start=1):
        yield lineno, line.rstrip("\r")


def parse_distance_csv(text: str) -> FiniteMetricSpace:
    rows = []
    for lineno, line in _lines(text):
        if not line.strip():
            continue
        rows.append((lineno, next(csv.reader([line]))))
    if not rows:
        raise ParseError("empty input", line=1)
    _, header = rows[0]
    labels = [h.strip() for h in header]
    n = len(labels)
    if len(rows) - 1 != n:
        raise DimensionMismatch(f"{n} labels but {len(rows) - 1} matrix rows")
    matrix = np.zeros((n, n))
    for i, (lineno, cells) in enumerate(rows[1:]):
        if len(cells) != n:
            raise ParseError(f"expected {n} values, got {len(cells)}", line=lineno)
        col = 1
        for j, cell in enumerate(cells):
            try:
                matrix[i, j] = float(cell)
            except ValueError:
                raise ParseError(f"not a number: {cell.strip()!r}", line=lineno, column=col) from None
            col += len(cell) + 1
    try:
        return build_space(labels, matrix)
    except DimensionMismatch as exc:
        raise ParseError(str(exc), line=rows[0][0]) from None


def emit_csv(space: FiniteMetricSpace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(space.labels)
    for row in space.dist:
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def parse_edge_list(text: str) -> WeightedGraph:
    """Lines ``u v length``; ``#`` starts a comment. Vertices are numbered in
    order of first appearance."""
    labels: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in _lines(text):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        parts = body.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'u v length', got {len(parts)} fields", line=lineno, column=1)
        u, v, raw = parts
        try:
            w = float(raw)
        except ValueError:
            raise ParseError(f"not a number: {raw!r}", line=lineno, column=body.index(raw) + 1) from None
        if not w > 0 or not np.isfinite(w):
            raise NonPositiveLength(f"edge {u}-{v} on line {lineno} has length {raw}")
        if u == v:
            raise ParseError(f"self-loop at {u!r}", line=lineno, column=1)
        for lab in (u, v):
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
        key = (min(index[u], index[v]), max(index[u], index[v]))
        if key in seen:
            raise ParseError(f"duplicate edge {u}-{v}", line=lineno, column=1)
        seen.add(key)
        edges.append((index[u], index[v], w))
    if not labels:
        raise ParseError("no edges", line=1)
    return WeightedGraph(tuple(labels), tuple(edges))


def emit_edge_list(graph: WeightedGraph | MetricTree) -> str:
    labels = graph.labels
    return "".join(f"{labels[u]} {labels[v]} {_fmt(w)}\n" for u, v, w in graph.edges)
