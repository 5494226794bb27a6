"""Irreducible components of the varieties ``rep_d(Lambda_L)``.

A realizable sequence ``S`` gives a component exactly when a generic module
with radical layering ``S`` has no filtration governed by another realizable
sequence.  Generic modules are approximated by random layered modules; the
filtration search is an exhaustive backtracking over subspaces of a finite
field.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .algebra import TruncatedAlgebra
from .exactlinalg import QQ, Field, FieldError, Subspace, enumerate_subspaces, random_entry, span
from .modrep import (Representation, SemisimpleSequence, format_sequence,
                     radical_layering, socle_layering)
from .quiver import Quiver
from .ssq import is_realizable, leq, realizable_sequences

DEFAULT_PRIME = 101
DEFAULT_SAMPLES = 3
DEFAULT_RETRIES = 32
# a refutation needs this many times the base number of samples
ESCALATION = 4


class SamplerExhausted(RuntimeError):
    """The layered sampler never hit the requested radical layering."""


def derive_seed(master, *parts) -> int:
    """Stable 64-bit substream seed (independent of PYTHONHASHSEED)."""
    text = repr((master,) + tuple(str(p) for p in parts)).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big")


def replay_primes(start: int, k: int) -> list[int]:
    """The first ``k`` primes ``>= start``."""
    out = []
    p = max(2, start)
    while len(out) < k:
        if all(p % d for d in range(2, int(p ** 0.5) + 1)):
            out.append(p)
        p += 1
    return out


# ----------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class FiltrationWitness:
    """``M_0 = M > M_1 > ... > M_L = 0`` with ``M_l / M_(l+1)`` of dimension ``S_l``."""

    chain: tuple[tuple[Subspace, ...], ...]
    sequence: SemisimpleSequence
    field: Field

    def check(self, rep: Representation) -> bool:
        """Re-verify the witness against ``rep`` (which must live over ``self.field``)."""
        chain = self.chain
        if any(u.dim for u in chain[-1]):
            return False
        for l, (cur, nxt) in enumerate(zip(chain, chain[1:])):
            if not rep.is_stable(cur):
                return False
            jm = rep.J(cur)
            for v in range(rep.quiver.n):
                if not (cur[v].contains_space(nxt[v]) and nxt[v].contains_space(jm[v])):
                    return False
                if cur[v].dim - nxt[v].dim != self.sequence[l][v]:
                    return False
        return True

    def to_dict(self) -> dict:
        return {"sequence": self.sequence.to_list(), "field": str(self.field),
                "dims": [[u.dim for u in fam] for fam in self.chain]}


@dataclass(frozen=True)
class Verdict3:
    """``yes`` (with witness), ``no_exhaustive``, ``no_monte_carlo`` or ``unknown``."""

    kind: str
    witness: FiltrationWitness | None = None
    trials: int = 0
    note: str = ""

    KINDS = ("yes", "no_exhaustive", "no_monte_carlo", "unknown")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown verdict {self.kind!r}")

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def is_no(self) -> bool:
        return self.kind in ("no_exhaustive", "no_monte_carlo")

    def to_dict(self) -> dict:
        d: dict = {"verdict": self.kind}
        if self.kind == "no_monte_carlo":
            d["trials"] = self.trials
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        if self.note:
            d["note"] = self.note
        return d


def combine(verdicts: Sequence[Verdict3]) -> Verdict3:
    """Any witness wins; unanimous refutations give a refutation."""
    for v in verdicts:
        if v.is_yes:
            return v
    if verdicts and all(v.kind == "no_exhaustive" for v in verdicts):
        return Verdict3("no_exhaustive", trials=len(verdicts))
    if verdicts and all(v.is_no for v in verdicts):
        return Verdict3("no_monte_carlo", trials=sum(max(v.trials, 1) for v in verdicts))
    return Verdict3("unknown")


# ----------------------------------------------------------------------
# generic modules


def generic_module(q: Quiver, L: int, S: SemisimpleSequence, field: Field = QQ, seed=0,
                   retries: int = DEFAULT_RETRIES, bound: int = 10**6) -> Representation:
    """Random module on ``V = sum V_l`` (``dim V_l = S_l``) with strictly layer-raising arrows.

    Resamples until the radical layering is exactly ``S``.
    """
    S = SemisimpleSequence(S.layers) if not isinstance(S, SemisimpleSequence) else S
    if len(S) != L:
        S = S.padded(L) if len(S) < L else S
    if not is_realizable(q, L, S):
        raise ValueError(f"{format_sequence(S)} is not realizable for L={L}")
    alg = TruncatedAlgebra(q, L, field)
    dims = list(S.total())
    # layer of each basis vector at each vertex
    layer_of = {v: [l for l in range(L) for _ in range(S[l][v - 1])] for v in q.vertices}
    zero = field.zero()
    rng = random.Random(derive_seed(seed, "generic", q.to_json(), L, S.to_list(), str(field)))
    for _ in range(retries):
        maps = {}
        for a in q.arrows:
            src, tgt = layer_of[a.source], layer_of[a.target]
            maps[a.id] = [[random_entry(rng, field, bound) if lt > ls else zero for ls in src]
                          for lt in tgt]
        rep = Representation(alg, dims, maps, check=False, convert=False)
        if radical_layering(rep) == S.padded(max(L, len(S))):
            return rep
    raise SamplerExhausted(
        f"no module with radical layering {format_sequence(S)} after {retries} samples over {field}")


def reduce_mod(rep: Representation, p: int) -> Representation | None:
    """Image of a rational module over ``F_p``; None if a denominator vanishes."""
    fld = Field.prime(p)
    alg = TruncatedAlgebra(rep.quiver, rep.L, fld)
    try:
        maps = {aid: [[fld.element(x) for x in row] for row in m] for aid, m in rep.maps.items()}
    except FieldError:
        return None
    return Representation(alg, rep.dims, maps, check=False, convert=False)


# ----------------------------------------------------------------------
# governed filtrations


def _family_layering(rep: Representation, fam) -> list[tuple[int, ...]]:
    layers = []
    while any(u.dim for u in fam):
        nxt = rep.J(fam)
        layers.append(tuple(a.dim - b.dim for a, b in zip(fam, nxt)))
        fam = nxt
    return layers


def _tail_dominated(target: Sequence[tuple[int, ...]], layers: Sequence[tuple[int, ...]]) -> bool:
    """Prefix sums of ``target`` bounded by those of ``layers`` (equal totals assumed)."""
    n = len(target[0]) if target else 0
    a = [0] * n
    b = [0] * n
    for k in range(max(len(target), len(layers))):
        if k < len(target):
            a = [x + y for x, y in zip(a, target[k])]
        if k < len(layers):
            b = [x + y for x, y in zip(b, layers[k])]
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def _complement_vectors(big: Subspace, small: Subspace) -> list[list]:
    """Vectors of ``big`` whose classes form a basis of ``big / small``."""
    out = []
    cur = small
    for vec in big.vectors:
        if not cur.contains(vec):
            out.append(vec)
            cur = cur + span(cur.field, cur.ambient, [vec])
    return out


def _lazy_product(shapes, fld) -> Iterator[tuple[Subspace, ...]]:
    """Product of subspace enumerations without materialising any factor."""
    if not shapes:
        yield ()
        return
    (n, k), rest = shapes[0], shapes[1:]
    for w in enumerate_subspaces(n, k, fld):
        for tail in _lazy_product(rest, fld):
            yield (w,) + tail


def search_filtration(rep: Representation, target: SemisimpleSequence,
                      stats: dict | None = None) -> FiltrationWitness | None:
    """Exhaustive backtracking for a filtration of ``rep`` governed by ``target``.

    ``rep`` must live over a prime field.  Layers are processed top-down and
    subspaces enumerated in canonical echelon order, so the first witness
    found is deterministic.
    """
    fld = rep.field
    if not fld.is_prime:
        raise FieldError("exhaustive search needs a prime field")
    layers = [tuple(x) for x in target.layers]
    if tuple(target.total()) != rep.dims:
        raise ValueError("sequence total differs from the dimension vector")
    m = len(layers)
    while m and not any(layers[m - 1]):
        m -= 1
    socles = rep.socle_series()
    full = rep.full_family()
    n = rep.quiver.n

    def soc(j):
        return socles[j] if j < len(socles) else full

    failed: set = set()
    if stats is not None:
        stats.setdefault("nodes", 0)

    def rec(l, fam) -> list | None:
        if stats is not None:
            stats["nodes"] += 1
        if l == m:
            return [fam]
        key = (l, fam)
        if key in failed:
            return None
        if not _tail_dominated(layers[l:m], _family_layering(rep, fam)):
            failed.add(key)
            return None
        jm = rep.J(fam)
        bound = soc(m - l - 1)
        options = []
        for v in range(n):
            if not bound[v].contains_space(jm[v]):
                failed.add(key)
                return None
            room = fam[v].intersect(bound[v])
            k = fam[v].dim - layers[l][v] - jm[v].dim
            comp = _complement_vectors(room, jm[v])
            if k < 0 or k > len(comp):
                failed.add(key)
                return None
            options.append((comp, k))
        for pick in _lazy_product([(len(comp), k) for comp, k in options], fld):
            nxt = []
            for v, (w, (comp, _)) in enumerate(zip(pick, options)):
                lifts = [[sum(c * x for c, x in zip(row, col)) % fld.p for col in zip(*comp)]
                         for row in w.vectors] if comp else []
                nxt.append(jm[v] + span(fld, rep.dims[v], lifts) if lifts else jm[v])
            found = rec(l + 1, tuple(nxt))
            if found is not None:
                return [fam] + found
        failed.add(key)
        return None

    chain = rec(0, full)
    if chain is None:
        return None
    while len(chain) < len(layers) + 1:
        chain.append(rep.zero_family())
    return FiltrationWitness(tuple(chain), target, fld)


def has_governed_filtration(rep: Representation, target: SemisimpleSequence, mode: str = "auto",
                            samples: int = DEFAULT_SAMPLES, prime: int = DEFAULT_PRIME) -> Verdict3:
    """Does ``rep`` have a filtration governed by ``target``?

    ``exhaustive`` (prime fields) answers ``yes`` or ``no_exhaustive``.  Over
    the rationals the module is reduced modulo ``samples`` primes starting at
    ``prime``; each reduction that keeps the radical layering is searched
    exhaustively, giving ``yes``, ``no_monte_carlo`` or ``unknown``.
    """
    if tuple(target.total()) != rep.dims:
        raise ValueError("sequence total differs from the dimension vector")
    if mode == "auto":
        mode = "exhaustive" if rep.field.is_prime else "rational"
    rad = radical_layering(rep)
    tgt = target.padded(max(len(target), len(rad)))
    if tgt == rad.padded(len(tgt)):
        return Verdict3("yes", FiltrationWitness(tuple(_radical_chain(rep, len(tgt))), tgt, rep.field))
    if mode == "exhaustive":
        if not rep.field.is_prime:
            raise FieldError("exhaustive mode needs a prime field")
        w = search_filtration(rep, tgt)
        return Verdict3("yes", w) if w is not None else Verdict3("no_exhaustive")
    if mode != "rational":
        raise ValueError(f"unknown mode {mode!r}")
    # pruning rule: a governed filtration forces target <= radical layering
    if not leq(tgt, rad):
        return Verdict3("no_monte_carlo", trials=samples, note="rejected by dominance")
    verdicts = []
    for p in replay_primes(prime, samples):
        red = reduce_mod(rep, p)
        if red is None or radical_layering(red) != rad:
            continue
        w = search_filtration(red, tgt)
        verdicts.append(Verdict3("yes", w) if w is not None else Verdict3("no_monte_carlo", trials=1))
    return combine(verdicts) if verdicts else Verdict3("unknown", note="no usable prime")


def _radical_chain(rep: Representation, length: int) -> list:
    series = rep.radical_series()
    while len(series) < length + 1:
        series.append(rep.zero_family())
    return series


def gamma(rep: Representation, mode: str = "auto", samples: int = DEFAULT_SAMPLES,
          prime: int = DEFAULT_PRIME) -> tuple[int, str]:
    """Number of realizable sequences governing a filtration of ``rep``.

    Returns ``(count, tag)`` where ``tag`` is ``exact`` when every candidate
    was settled by exhaustive search and ``monte_carlo`` otherwise.
    """
    rad = radical_layering(rep)
    count, tag = 0, "exact"
    for s in realizable_sequences(rep.quiver, rep.dims, rep.L):
        if not leq(s, rad):
            continue
        v = has_governed_filtration(rep, s, mode, samples, prime)
        if v.is_yes:
            count += 1
        elif v.kind != "no_exhaustive":
            tag = "monte_carlo"
    return count, tag


# ----------------------------------------------------------------------
# classification


@dataclass
class ComponentReport:
    sequence: SemisimpleSequence
    is_component: bool
    evidence: str  # gamma_one | dominated | governed_by
    theta: tuple[SemisimpleSequence, SemisimpleSequence]
    field: Field
    seed: int
    mode: str
    governed_by: SemisimpleSequence | None = None
    verdicts: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "sequence": self.sequence.to_list(),
            "display": format_sequence(self.sequence),
            "is_component": self.is_component,
            "evidence": self.evidence,
            "theta": {"radical": self.theta[0].to_list(), "socle": self.theta[1].to_list()},
            "field": str(self.field),
            "seed": self.seed,
            "mode": self.mode,
        }
        if self.governed_by is not None:
            d["governed_by"] = self.governed_by.to_list()
        return d


class _Instances:
    """Generic module samples per sequence, cached and drawn lazily.

    Over ``F_p`` sample ``t`` is an independent draw; over the rationals a
    single draw is reduced modulo successive primes from ``prime`` on.
    Samples whose socle layering exceeds the smallest one among the first
    ``samples`` draws are treated as degenerate and redrawn.
    """

    def __init__(self, q: Quiver, field: Field, seed, samples: int, prime: int,
                 escalate: int = ESCALATION):
        self.q, self.field, self.seed = q, field, seed
        self.samples, self.prime = samples, prime
        self.max_samples = max(samples, samples * escalate)
        self._reps: dict = {}
        self._rational: dict = {}
        self._best: dict = {}

    @property
    def mode(self) -> str:
        return "exhaustive" if self.field.is_prime else "monte_carlo"

    def _raw(self, L, S, t) -> Representation:
        if self.field.is_prime:
            return generic_module(self.q, L, S, self.field, derive_seed(self.seed, "sample", t))
        key = (L, S)
        if key not in self._rational:
            self._rational[key] = generic_module(self.q, L, S, self.field, derive_seed(self.seed, "sample", 0))
        rep = self._rational[key]
        p = replay_primes(self.prime, t + 1)[t]
        red = reduce_mod(rep, p)
        if red is None or radical_layering(red) != radical_layering(rep):
            red = generic_module(self.q, L, S, Field.prime(p), derive_seed(self.seed, "replay", p))
        return red

    def best_socle(self, L, S) -> SemisimpleSequence:
        key = (L, S)
        if key not in self._best:
            socs = [socle_layering(self._raw(L, S, t)) for t in range(self.samples)]
            if not self.field.is_prime:
                socs.append(socle_layering(self._rational[key]))
            self._best[key] = min(socs, key=lambda s: [tuple(x) for x in s.prefix_sums()])
        return self._best[key]

    def sample(self, L, S, t) -> Representation:
        key = (L, S, t)
        if key not in self._reps:
            best = self.best_socle(L, S)
            rep = self._raw(L, S, t)
            extra = 0
            while socle_layering(rep) != best and extra < DEFAULT_RETRIES:
                extra += 1
                rep = generic_module(self.q, L, S, rep.field, derive_seed(self.seed, "redraw", t, extra))
            self._reps[key] = rep
        return self._reps[key]

    def theta(self, L, S) -> tuple[SemisimpleSequence, SemisimpleSequence]:
        r = self.sample(L, S, 0)
        return radical_layering(r), socle_layering(r)


def _search_all(inst: _Instances, L: int, S: SemisimpleSequence, target: SemisimpleSequence,
                L_target: int) -> Verdict3:
    """Search samples of ``G_S`` until a witness appears or the sample budget is spent."""
    verdicts = []
    for t in range(inst.max_samples):
        rep = inst.sample(L, S, t)
        if rep.L != L_target:
            rep = rep.with_algebra(TruncatedAlgebra(rep.quiver, L_target, rep.field))
        v = has_governed_filtration(rep, target, "exhaustive")
        if v.is_yes:
            return v
        verdicts.append(v if inst.field.is_prime else Verdict3("no_monte_carlo", trials=1))
    return combine(verdicts)


def classify_components(q: Quiver, L: int, d: Sequence[int], field: Field = QQ, seed=0,
                        samples: int = DEFAULT_SAMPLES, prime: int = DEFAULT_PRIME,
                        _instances: _Instances | None = None) -> list[ComponentReport]:
    """Reports for every realizable sequence with total ``d``, sorted."""
    inst = _instances or _Instances(q, field, seed, samples, prime)
    seqs = sorted(realizable_sequences(q, d, L))
    thetas = {S: inst.theta(L, S) for S in seqs}
    reports = []
    for S in seqs:
        soc_S = thetas[S][1]
        candidates = [T for T in seqs if T != S and leq(T, S) and leq(thetas[T][1], soc_S)]
        report = ComponentReport(S, True, "dominated" if not candidates else "gamma_one",
                                 thetas[S], field, seed, inst.mode)
        for T in candidates:
            v = _search_all(inst, L, S, T, L)
            report.verdicts[T] = v
            if v.is_yes:
                report.is_component = False
                report.evidence = "governed_by"
                report.governed_by = T
                break
        reports.append(report)
    return reports


def components(q: Quiver, L: int, d: Sequence[int], **kw) -> list[SemisimpleSequence]:
    return [r.sequence for r in classify_components(q, L, d, **kw) if r.is_component]


def containment(q: Quiver, d: Sequence[int], S: SemisimpleSequence, L: int, T: SemisimpleSequence,
                L2: int, field: Field = QQ, seed=0, samples: int = DEFAULT_SAMPLES,
                prime: int = DEFAULT_PRIME, _instances: _Instances | None = None) -> Verdict3:
    """Is the closure of ``rep S`` (level ``L``) inside that of ``rep T`` (level ``L2``)?"""
    if L > L2:
        raise ValueError("containment needs L <= L2")
    if tuple(S.total()) != tuple(d) or tuple(T.total()) != tuple(d):
        raise ValueError("sequences must have total d")
    inst = _instances or _Instances(q, field, seed, samples, prime)
    S2 = S.padded(L2)
    if S2 == T.padded(L2):
        return Verdict3("yes", note="identical sequences")
    if not leq(T.padded(L2), S2):
        # a governed filtration forces T <= radical layering
        return Verdict3("no_exhaustive" if field.is_prime else "no_monte_carlo",
                        trials=samples, note="rejected by dominance")
    return _search_all(inst, L, S, T.padded(L2), L2)


@dataclass
class Hierarchy:
    levels: dict[int, list[SemisimpleSequence]]
    edges: list[tuple[int, SemisimpleSequence, int, SemisimpleSequence, Verdict3]]

    def contained(self) -> set[tuple[int, SemisimpleSequence, int, SemisimpleSequence]]:
        return {(a, s, b, t) for a, s, b, t, v in self.edges if v.is_yes}

    def to_dict(self) -> dict:
        return {
            "levels": {str(L): [s.to_list() for s in seqs] for L, seqs in sorted(self.levels.items())},
            "edges": [{"from": {"L": a, "sequence": s.to_list()}, "to": {"L": b, "sequence": t.to_list()},
                       **v.to_dict()} for a, s, b, t, v in self.edges],
        }


def hierarchy(q: Quiver, d: Sequence[int], Ls: Sequence[int], field: Field = QQ, seed=0,
              samples: int = DEFAULT_SAMPLES, prime: int = DEFAULT_PRIME) -> Hierarchy:
    """Components for each ``L`` plus containments between consecutive levels."""
    Ls = sorted(Ls)
    inst = _Instances(q, field, seed, samples, prime)
    levels = {L: components(q, L, d, field=field, seed=seed, samples=samples, prime=prime,
                            _instances=inst) for L in Ls}
    edges = []
    for a, b in zip(Ls, Ls[1:]):
        for s in levels[a]:
            for t in levels[b]:
                v = containment(q, d, s, a, t, b, field, seed, samples, prime, _instances=inst)
                edges.append((a, s, b, t, v))
    return Hierarchy(levels, edges)


# ----------------------------------------------------------------------
# one vertex with loops


def local_components(r: int, d: int, L: int) -> list[SemisimpleSequence]:
    """Closed-form component list for one vertex carrying ``r >= 2`` loops."""
    if r < 2 or d < 1:
        raise ValueError("need r >= 2 loops and d >= 1")
    if L >= d:
        return [SemisimpleSequence.local([1] * d + [0] * (L - d))]
    out = []
    for comp in _positive_compositions(d, L):
        if all(comp[l] <= r * comp[l - 1] and comp[l - 1] <= r * comp[l] for l in range(1, L)):
            out.append(SemisimpleSequence.local(comp))
    return sorted(out)


def _positive_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest
