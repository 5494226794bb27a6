"""Quivers and paths.

Vertices are ``1..n``.  Paths compose right to left: the path ``(b, a)``
means ``b`` after ``a``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int


@dataclass(frozen=True, order=True)
class Path:
    """A path; ``arrows`` lists ids left to right, the rightmost applied first."""

    arrows: tuple[str, ...]
    start: int
    end: int

    @classmethod
    def lazy(cls, vertex: int) -> "Path":
        return cls((), vertex, vertex)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.start, self.end)

    def __mul__(self, other: "Path") -> "Path":
        """``self`` after ``other``."""
        if other.end != self.start:
            raise QuiverError(f"cannot compose {self} after {other}")
        return Path(self.arrows + other.arrows, other.start, self.end)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e{self.start}"
        return "*".join(self.arrows)


class Quiver:
    """Finite quiver with string-labelled arrows; loops and parallel arrows allowed."""

    def __init__(self, n: int, arrows: Iterable, labels: Iterable[str] | None = None):
        if n < 1:
            raise QuiverError("a quiver needs at least one vertex")
        arr = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(str(a[0]), int(a[1]), int(a[2]))
            if not (1 <= a.source <= n and 1 <= a.target <= n):
                raise QuiverError(f"arrow {a.id} has an endpoint outside 1..{n}")
            arr.append(a)
        ids = [a.id for a in arr]
        if len(set(ids)) != len(ids):
            raise QuiverError("arrow ids must be unique")
        self.n = n
        self.arrows: tuple[Arrow, ...] = tuple(arr)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(1, n + 1))
        self._by_id = {a.id: a for a in arr}

    def __repr__(self) -> str:
        return f"Quiver({self.n}, {[(a.id, a.source, a.target) for a in self.arrows]})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Quiver) and self.n == other.n and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.n, self.arrows))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def arrow(self, arrow_id: str) -> Arrow:
        return self._by_id[arrow_id]

    @cached_property
    def out_arrows(self) -> dict[int, tuple[Arrow, ...]]:
        d = defaultdict(list)
        for a in self.arrows:
            d[a.source].append(a)
        return {v: tuple(d[v]) for v in self.vertices}

    @cached_property
    def in_arrows(self) -> dict[int, tuple[Arrow, ...]]:
        d = defaultdict(list)
        for a in self.arrows:
            d[a.target].append(a)
        return {v: tuple(d[v]) for v in self.vertices}

    def adjacency_matrix(self) -> list[list[int]]:
        """``A[j-1][i-1]`` = number of arrows ``i -> j``."""
        m = [[0] * self.n for _ in range(self.n)]
        for a in self.arrows:
            m[a.target - 1][a.source - 1] += 1
        return m

    def arrow_multiplicities(self) -> dict[tuple[int, int], int]:
        d: dict[tuple[int, int], int] = defaultdict(int)
        for a in self.arrows:
            d[(a.source, a.target)] += 1
        return dict(d)

    def digraph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for a in self.arrows:
            g.add_edge(a.source, a.target, key=a.id)
        return g

    # json -------------------------------------------------------------
    def to_dict(self) -> dict:
        return {"vertices": self.n,
                "arrows": [{"id": a.id, "from": a.source, "to": a.target} for a in self.arrows]}

    @classmethod
    def from_dict(cls, data: dict) -> "Quiver":
        try:
            n = int(data["vertices"])
            arrows = [(a["id"], a["from"], a["to"]) for a in data.get("arrows", [])]
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver description: {exc}") from exc
        return cls(n, arrows)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise QuiverError(f"invalid JSON: {exc}") from exc


def cyclic_vertices(q: Quiver) -> set[int]:
    """Vertices lying on an oriented cycle (loops included)."""
    g = nx.DiGraph()
    g.add_nodes_from(q.vertices)
    loops = set()
    for a in q.arrows:
        if a.source == a.target:
            loops.add(a.source)
        else:
            g.add_edge(a.source, a.target)
    out = set(loops)
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1:
            out |= comp
    return out


def precyclic_vertices(q: Quiver) -> set[int]:
    """Vertices from which some path reaches an oriented cycle."""
    cyc = cyclic_vertices(q)
    reach = set(cyc)
    stack = list(cyc)
    while stack:
        v = stack.pop()
        for a in q.in_arrows[v]:
            if a.source not in reach:
                reach.add(a.source)
                stack.append(a.source)
    return reach


def has_oriented_cycle(q: Quiver) -> bool:
    return bool(cyclic_vertices(q))


def longest_path_length(q: Quiver) -> float:
    """Length of a longest path; ``inf`` when ``q`` has an oriented cycle."""
    if has_oriented_cycle(q):
        return float("inf")
    g = nx.DiGraph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from((a.source, a.target) for a in q.arrows)
    return nx.dag_longest_path_length(g) if q.arrows else 0


def enumerate_paths(q: Quiver, max_length: int) -> dict[tuple[int, int, int], list[Path]]:
    """All paths of length ``<= max_length`` keyed by ``(start, end, length)``."""
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    out: dict[tuple[int, int, int], list[Path]] = defaultdict(list)
    layer = [Path.lazy(v) for v in q.vertices]
    for length in range(max_length + 1):
        for p in layer:
            out[(p.start, p.end, length)].append(p)
        if length == max_length:
            break
        nxt = []
        for p in layer:
            for a in q.out_arrows[p.end]:
                nxt.append(Path((a.id,) + p.arrows, p.start, a.target))
        layer = sorted(nxt, key=Path.sort_key)
    for key in out:
        out[key].sort(key=Path.sort_key)
    return dict(out)


def all_paths(q: Quiver, max_length: int) -> list[Path]:
    """Flat list of paths of length ``<= max_length`` in basis order."""
    grouped = enumerate_paths(q, max_length)
    return sorted((p for ps in grouped.values() for p in ps), key=Path.sort_key)


def separated_quiver(q: Quiver) -> Quiver:
    """Bipartite quiver on ``1..n`` and ``n+1..2n`` (the hatted copies).

    Each arrow ``i -> j`` becomes ``i -> n+j``.
    """
    labels = [str(i) for i in q.vertices] + [f"{i}^" for i in q.vertices]
    return Quiver(2 * q.n, [(a.id, a.source, q.n + a.target) for a in q.arrows], labels=labels)
