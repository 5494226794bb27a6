"""Semisimple sequences: enumeration, dominance order, realizability."""

from __future__ import annotations

import enum
import itertools
from typing import Iterator, Sequence

from .modrep import Representation, SemisimpleSequence, radical_layering, socle_layering
from .quiver import Quiver


class Dominance(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts, lexicographically descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_sequences(d: Sequence[int], L: int) -> list[SemisimpleSequence]:
    """All ``L``-term sequences of dimension vectors summing to ``d``."""
    if L < 1:
        raise ValueError("L must be at least 1")
    per_vertex = [list(_compositions(x, L)) for x in d]
    out = []
    for choice in itertools.product(*per_vertex):
        out.append(SemisimpleSequence(zip(*choice)) if choice else SemisimpleSequence([()] * L))
    return out


def dominance_leq(s: SemisimpleSequence, t: SemisimpleSequence) -> Dominance:
    """Compare prefix sums componentwise (shorter sequences are zero-padded)."""
    if s.total() != t.total():
        raise ValueError("sequences have different total dimension vectors")
    n = max(len(s), len(t))
    ps, pt = s.padded(n).prefix_sums(), t.padded(n).prefix_sums()
    le = all(a <= b for x, y in zip(ps, pt) for a, b in zip(x, y))
    ge = all(a >= b for x, y in zip(ps, pt) for a, b in zip(x, y))
    if le and ge:
        return Dominance.EQUAL
    if le:
        return Dominance.LESS
    if ge:
        return Dominance.GREATER
    return Dominance.INCOMPARABLE


def leq(s: SemisimpleSequence, t: SemisimpleSequence) -> bool:
    return dominance_leq(s, t) in (Dominance.LESS, Dominance.EQUAL)


def is_realizable(q: Quiver, L: int, s: SemisimpleSequence) -> bool:
    """Cone test: every layer is bounded by the adjacency matrix applied to the previous one."""
    if len(s) != L:
        raise ValueError(f"sequence has {len(s)} layers, expected {L}")
    a = q.adjacency_matrix()
    for prev, nxt in zip(s.layers, s.layers[1:]):
        for j in range(q.n):
            if nxt[j] > sum(a[j][i] * prev[i] for i in range(q.n)):
                return False
    return True


def realizable_sequences(q: Quiver, d: Sequence[int], L: int) -> list[SemisimpleSequence]:
    return [s for s in enumerate_sequences(d, L) if is_realizable(q, L, s)]


def theta(rep: Representation) -> tuple[SemisimpleSequence, SemisimpleSequence]:
    """``(radical layering, socle layering)``."""
    return radical_layering(rep), socle_layering(rep)


def theta_leq(a: tuple[SemisimpleSequence, SemisimpleSequence],
              b: tuple[SemisimpleSequence, SemisimpleSequence]) -> bool:
    return leq(a[0], b[0]) and leq(a[1], b[1])
