"""Representation type: separated quivers, Nakayama and special biserial
checks, and a conservative combined verdict."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

import networkx as nx

from .algebra import TruncatedAlgebra, loewy_length
from .quiver import Path, Quiver, separated_quiver
from .tilting import Presentation


class RepType(str, enum.Enum):
    FINITE = "finite"
    TAME = "tame"
    WILD = "wild"
    UNKNOWN = "unknown"


@dataclass
class Rule:
    name: str
    outcome: str
    detail: str = ""
    citation: str = ""

    def to_dict(self) -> dict:
        return {"rule": self.name, "outcome": self.outcome, "detail": self.detail,
                "citation": self.citation}


@dataclass
class TypeVerdict:
    verdict: RepType
    evidence: list[Rule] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "evidence": [r.to_dict() for r in self.evidence]}


GABRIEL = "Gabriel's theorem; Donovan-Freislich and Nazarova for the tame list"
NAKAYAMA = "Nakayama algebras are representation-finite"
BISERIAL = "special biserial algebras are tame (Wald-Waschbuesch)"
KRONECKER = "the Kronecker algebra is a quotient of A/J^2"
GEN_KRONECKER = "the 3-Kronecker algebra is a quotient of A/J^2 and is wild"


# ----------------------------------------------------------------------
# Dynkin recognition


def dynkin_type(g: nx.MultiGraph) -> str | None:
    """Name of a connected graph as a Dynkin or extended Dynkin diagram.

    Extended types carry a leading ``~``.  Returns None for anything else.
    """
    n = g.number_of_nodes()
    m = g.number_of_edges()
    if n == 0:
        return None
    if nx.number_of_selfloops(g):
        return "~A0" if n == 1 and m == 1 else None
    simple = nx.Graph(g)
    if simple.number_of_edges() != m:
        # parallel edges: only the double edge on two vertices survives
        return "~A1" if n == 2 and m == 2 else None
    deg = dict(simple.degree())
    if m == n:
        return f"~A{n - 1}" if all(d == 2 for d in deg.values()) else None
    if m != n - 1:
        return None
    high = [v for v, d in deg.items() if d >= 3]
    if not high:
        return f"A{n}"
    if any(deg[v] > 4 for v in high):
        return None
    if len(high) == 1 and deg[high[0]] == 4:
        return "~D4" if n == 5 else None
    if len(high) == 1:
        p, q, r = sorted(_arm_lengths(simple, high[0]))
        if p == q == 1:
            return f"D{n}"
        known = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8",
                 (2, 2, 2): "~E6", (1, 3, 3): "~E7", (1, 2, 5): "~E8"}
        return known.get((p, q, r))
    if len(high) == 2 and all(deg[v] == 3 for v in high):
        for v in high:
            arms = [a for a in _arm_lengths(simple, v, stop=set(high)) if a is not None]
            if sorted(arms) != [1, 1]:
                return None
        return f"~D{n - 1}"
    return None


def _arm_lengths(g: nx.Graph, center, stop: set | None = None) -> list:
    """Lengths of the paths hanging off ``center``; None for arms that hit ``stop``."""
    out = []
    for nb in g.neighbors(center):
        prev, cur, length = center, nb, 1
        while True:
            if stop and cur in stop:
                length = None
                break
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if not nxt:
                break
            prev, cur, length = cur, nxt[0], length + 1
        out.append(length)
    return out


def _underlying(q: Quiver) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from((a.source, a.target) for a in q.arrows)
    return g


def classify_separated(q: Quiver) -> TypeVerdict:
    """Type of the radical-square-zero algebra of ``q`` via its separated quiver."""
    g = _underlying(separated_quiver(q))
    names = []
    verdict = RepType.FINITE
    for comp in sorted(nx.connected_components(g), key=min):
        name = dynkin_type(g.subgraph(comp))
        names.append(name or "wild")
        if name is None:
            verdict = RepType.WILD
        elif name.startswith("~") and verdict is RepType.FINITE:
            verdict = RepType.TAME
    detail = "separated quiver components: " + ", ".join(names)
    return TypeVerdict(verdict, [Rule("separated-quiver", verdict.value, detail, GABRIEL)])


# ----------------------------------------------------------------------
# Nakayama and special biserial


def _quiver_of(obj) -> Quiver:
    if isinstance(obj, Presentation):
        return obj.quiver
    if isinstance(obj, TruncatedAlgebra):
        return obj.quiver
    return obj


def is_nakayama(obj: Union[Presentation, Quiver, TruncatedAlgebra]) -> bool:
    """At most one arrow into and one arrow out of every vertex."""
    q = _quiver_of(obj)
    return all(len(q.out_arrows[v]) <= 1 and len(q.in_arrows[v]) <= 1 for v in q.vertices)


def truncated_presentation(alg: TruncatedAlgebra) -> Presentation:
    """``KQ`` modulo all paths of length ``L``; the relations stay implicit in ``truncation``."""
    return Presentation(alg.quiver, [], True, loewy_length(alg), truncation=alg.L)


def _biserial_conditions(P: Presentation) -> tuple[bool, str]:
    q = P.quiver
    for v in q.vertices:
        if len(q.in_arrows[v]) > 2 or len(q.out_arrows[v]) > 2:
            return False, f"vertex {v} has more than two arrows in or out"
    for b in q.arrows:
        after = [g for g in q.out_arrows[b.target]
                 if not P.kills(Path((g.id, b.id), b.source, g.target))]
        if len(after) > 1:
            return False, f"arrow {b.id} is followed by {len(after)} arrows without relation"
        before = [a for a in q.in_arrows[b.source]
                  if not P.kills(Path((b.id, a.id), a.source, b.target))]
        if len(before) > 1:
            return False, f"arrow {b.id} is preceded by {len(before)} arrows without relation"
    return True, ""


def is_special_biserial(P: Union[Presentation, TruncatedAlgebra]) -> bool | None:
    """True/False on the biserial conditions; None (not applicable) when they
    hold but the presentation is not monomial."""
    if isinstance(P, TruncatedAlgebra):
        P = truncated_presentation(P)
    ok, _ = _biserial_conditions(P)
    if not ok:
        return False
    return True if P.monomial else None


# ----------------------------------------------------------------------
# combined verdict


def _max_multiplicity(q: Quiver) -> int:
    mult = q.arrow_multiplicities()
    return max(mult.values(), default=0)


def classify(obj: Union[TruncatedAlgebra, Presentation]) -> TypeVerdict:
    """Apply the rules in order and stop at the first decision."""
    P = truncated_presentation(obj) if isinstance(obj, TruncatedAlgebra) else obj
    q = P.quiver
    evidence: list[Rule] = []
    mult = _max_multiplicity(q)

    if mult >= 3:
        evidence.append(Rule("triple-arrow", "wild", f"{mult} parallel arrows", GEN_KRONECKER))
        return TypeVerdict(RepType.WILD, evidence)
    evidence.append(Rule("triple-arrow", "undecided", "no triple arrows"))

    if P.loewy_length <= 2:
        sep = classify_separated(q)
        evidence.extend(sep.evidence)
        return TypeVerdict(sep.verdict, evidence)
    evidence.append(Rule("separated-quiver", "undecided", "J^2 != 0"))

    if is_nakayama(q):
        evidence.append(Rule("nakayama", "finite", "at most one arrow in and out at each vertex", NAKAYAMA))
        return TypeVerdict(RepType.FINITE, evidence)
    evidence.append(Rule("nakayama", "undecided", "not Nakayama"))

    sb = is_special_biserial(P)
    if sb:
        evidence.append(Rule("special-biserial", "tame", "monomial special biserial", BISERIAL))
        return TypeVerdict(RepType.TAME, evidence)
    if sb is None:
        evidence.append(Rule("special-biserial", "undecided", "biserial conditions hold but not monomial"))
    else:
        evidence.append(Rule("special-biserial", "undecided", "not special biserial: "
                             + _biserial_conditions(P)[1]))

    if mult == 2:
        evidence.append(Rule("double-arrow", "infinite", "double arrows; tame or wild undecided", KRONECKER))
        return TypeVerdict(RepType.UNKNOWN, evidence)
    evidence.append(Rule("double-arrow", "undecided", "no double arrows"))
    evidence.append(Rule("fallback", "unknown", "no rule decides; not Nakayama, not special biserial"))
    return TypeVerdict(RepType.UNKNOWN, evidence)
