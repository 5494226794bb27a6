"""Representations of truncated path algebras as arrow-indexed matrices."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algebra import TruncatedAlgebra
from .exactlinalg import (
    Field,
    Subspace,
    annihilator,
    mat_mul,
    mat_vec,
    nullspace,
    sparse_kernel,
)
from .quiver import Path, Quiver


class RepresentationError(ValueError):
    pass


# ----------------------------------------------------------------------
# semisimple sequences


class SemisimpleSequence:
    """An ordered tuple of dimension vectors (the semisimple layers)."""

    __slots__ = ("layers",)

    def __init__(self, layers: Iterable[Iterable[int]]):
        self.layers = tuple(tuple(int(x) for x in layer) for layer in layers)
        if any(x < 0 for layer in self.layers for x in layer):
            raise ValueError("layer dimensions must be non-negative")
        if len({len(layer) for layer in self.layers}) > 1:
            raise ValueError("all layers need the same number of vertices")

    @classmethod
    def local(cls, dims: Iterable[int]) -> "SemisimpleSequence":
        """Sequence over a one-vertex quiver from plain layer dimensions."""
        return cls((d,) for d in dims)

    def __len__(self) -> int:
        return len(self.layers)

    def __iter__(self):
        return iter(self.layers)

    def __getitem__(self, i):
        return self.layers[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, SemisimpleSequence) and self.layers == other.layers

    def __hash__(self) -> int:
        return hash(self.layers)

    def __lt__(self, other: "SemisimpleSequence") -> bool:
        return self.layers < other.layers

    def __repr__(self) -> str:
        return f"SemisimpleSequence({[list(x) for x in self.layers]})"

    def __str__(self) -> str:
        return format_sequence(self)

    @property
    def n(self) -> int:
        return len(self.layers[0]) if self.layers else 0

    def total(self) -> tuple[int, ...]:
        if not self.layers:
            return ()
        return tuple(sum(col) for col in zip(*self.layers))

    def padded(self, length: int) -> "SemisimpleSequence":
        if length < len(self.layers):
            if any(any(layer) for layer in self.layers[length:]):
                raise ValueError("cannot truncate nonzero layers")
            return SemisimpleSequence(self.layers[:length])
        zero = (0,) * self.n
        return SemisimpleSequence(self.layers + (zero,) * (length - len(self.layers)))

    def trimmed(self) -> "SemisimpleSequence":
        layers = list(self.layers)
        while layers and not any(layers[-1]):
            layers.pop()
        return SemisimpleSequence(layers)

    def reversed(self) -> "SemisimpleSequence":
        """Reverse of the nonzero part, padded back to the same length."""
        t = self.trimmed()
        return SemisimpleSequence(t.layers[::-1]).padded(len(self))

    def prefix_sums(self) -> list[tuple[int, ...]]:
        acc = [0] * self.n
        out = []
        for layer in self.layers:
            acc = [a + b for a, b in zip(acc, layer)]
            out.append(tuple(acc))
        return out

    def to_list(self) -> list[list[int]]:
        return [list(layer) for layer in self.layers]


def format_sequence(s: SemisimpleSequence) -> str:
    """Human form such as ``(S2, S1^2, S2)``; ``0`` for an empty layer."""
    parts = []
    for layer in s.layers:
        terms = []
        for v, m in enumerate(layer, start=1):
            if m == 1:
                terms.append(f"S{v}")
            elif m > 1:
                terms.append(f"S{v}^{m}")
        parts.append("+".join(terms) if terms else "0")
    return "(" + ", ".join(parts) + ")"


# ----------------------------------------------------------------------
# representations


class Representation:
    """A module over a truncated path algebra: one matrix per arrow.

    ``maps[a]`` for ``a: i -> j`` has ``dims[j-1]`` rows and ``dims[i-1]``
    columns.  Construction checks that all paths of length ``L`` act as zero.
    """

    def __init__(self, algebra: TruncatedAlgebra, dims: Sequence[int], maps: dict | None = None,
                 check: bool = True, convert: bool = True):
        q = algebra.quiver
        if len(dims) != q.n:
            raise RepresentationError(f"dimension vector needs {q.n} entries")
        if any(d < 0 for d in dims):
            raise RepresentationError("dimensions must be non-negative")
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        maps = dict(maps or {})
        unknown = set(maps) - {a.id for a in q.arrows}
        if unknown:
            raise RepresentationError(f"unknown arrows {sorted(unknown)}")
        fld = algebra.field
        zero = fld.zero()
        self.maps: dict[str, list[list]] = {}
        for a in q.arrows:
            r, c = self.dims[a.target - 1], self.dims[a.source - 1]
            m = maps.get(a.id)
            if m is None:
                m = [[zero] * c for _ in range(r)]
            else:
                m = [list(row) for row in m]
                if len(m) != r or any(len(row) != c for row in m):
                    raise RepresentationError(f"arrow {a.id} needs a {r}x{c} matrix")
                if convert:
                    m = [[fld.element(x) for x in row] for row in m]
            self.maps[a.id] = m
        self.basis_labels: dict[int, list[str]] | None = None
        if check:
            fam = self.full_family()
            for _ in range(algebra.L):
                fam = self.J(fam)
            if any(u.dim for u in fam):
                raise RepresentationError("paths of length L do not act as zero")

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims}, L={self.L}, field={self.field})"

    @property
    def quiver(self) -> Quiver:
        return self.algebra.quiver

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def L(self) -> int:
        return self.algebra.L

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def d(self, v: int) -> int:
        return self.dims[v - 1]

    # actions ----------------------------------------------------------
    def act(self, arrow_id: str, vec: Sequence) -> list:
        return mat_vec(self.maps[arrow_id], vec, self.field)

    def act_path(self, path: Path, vec: Sequence) -> list:
        for aid in reversed(path.arrows):
            vec = self.act(aid, vec)
        return vec

    def with_algebra(self, algebra: TruncatedAlgebra) -> "Representation":
        """Same matrices over another truncation of the same quiver."""
        if algebra.quiver != self.quiver or algebra.field != self.field:
            raise RepresentationError("quiver and field must agree")
        rep = Representation(algebra, self.dims, self.maps, check=algebra.L < self.L, convert=False)
        rep.basis_labels = self.basis_labels
        return rep

    # subspace families --------------------------------------------------
    def zero_family(self) -> tuple[Subspace, ...]:
        return tuple(Subspace.zero(self.field, d) for d in self.dims)

    def full_family(self) -> tuple[Subspace, ...]:
        return tuple(Subspace.full(self.field, d) for d in self.dims)

    def J(self, fam: Sequence[Subspace]) -> tuple[Subspace, ...]:
        """The family ``J U``: arrow images of ``U`` summed at each vertex."""
        fld = self.field
        gens: list[list] = [[] for _ in self.dims]
        for a in self.quiver.arrows:
            m = self.maps[a.id]
            for u in fam[a.source - 1].vectors:
                w = mat_vec(m, u, fld)
                if any(w):
                    gens[a.target - 1].append(w)
        return tuple(Subspace(fld, d, g) for d, g in zip(self.dims, gens))

    def is_stable(self, fam: Sequence[Subspace]) -> bool:
        for a in self.quiver.arrows:
            tgt = fam[a.target - 1]
            m = self.maps[a.id]
            for u in fam[a.source - 1].vectors:
                if not tgt.contains(mat_vec(m, u, self.field)):
                    return False
        return True

    def radical_series(self) -> list[tuple[Subspace, ...]]:
        """``[M, JM, J^2M, ..., 0]`` (ends at the first zero term)."""
        series = [self.full_family()]
        guard = self.dim + 1
        while any(u.dim for u in series[-1]):
            series.append(self.J(series[-1]))
            guard -= 1
            if guard < 0:
                raise RepresentationError("radical series does not terminate")
        return series

    def socle_series(self) -> list[tuple[Subspace, ...]]:
        """``[0, soc M, soc_2 M, ..., M]``."""
        series = [self.zero_family()]
        full = self.full_family()
        while series[-1] != full:
            nxt = self._socle_step(series[-1])
            if nxt == series[-1]:
                raise RepresentationError("socle series stalls; module is not nilpotent")
            series.append(nxt)
        return series

    def _socle_step(self, fam: Sequence[Subspace]) -> tuple[Subspace, ...]:
        fld = self.field
        out = []
        for v in self.quiver.vertices:
            rows = []
            for a in self.quiver.out_arrows[v]:
                tgt = fam[a.target - 1]
                ann = annihilator(tgt)
                if ann:
                    rows.extend(mat_mul(ann, self.maps[a.id], fld, ncols=self.d(v)))
            out.append(Subspace(fld, self.d(v), nullspace(rows, self.d(v), fld)) if rows
                       else Subspace.full(fld, self.d(v)))
        return tuple(out)

    def top_basis(self) -> list[tuple[int, list]]:
        """Standard basis vectors spanning a complement of ``JM``, as ``(vertex, vector)``."""
        rad = self.J(self.full_family())
        one, zero = self.field.one(), self.field.zero()
        out = []
        for v in self.quiver.vertices:
            for c in rad[v - 1].complement_columns():
                vec = [zero] * self.d(v)
                vec[c] = one
                out.append((v, vec))
        return out

    # serialisation ------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "quiver": self.quiver.to_dict(),
            "L": self.L,
            "field": str(self.field),
            "dims": list(self.dims),
            "maps": {aid: [[str(x) for x in row] for row in m] for aid, m in sorted(self.maps.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Representation":
        q = Quiver.from_dict(data["quiver"])
        alg = TruncatedAlgebra(q, int(data["L"]), Field.parse(data.get("field", "rational")))
        return cls(alg, data["dims"], data.get("maps", {}))


def simple(alg: TruncatedAlgebra, i: int) -> Representation:
    return Representation(alg, [1 if v == i else 0 for v in alg.quiver.vertices])


def semisimple(alg: TruncatedAlgebra, dims: Sequence[int]) -> Representation:
    return Representation(alg, dims)


def direct_sum(*reps: Representation) -> Representation:
    if not reps:
        raise ValueError("need at least one summand")
    alg = reps[0].algebra
    zero = alg.field.zero()
    dims = [sum(r.d(v) for r in reps) for v in alg.quiver.vertices]
    maps = {}
    for a in alg.quiver.arrows:
        rows = []
        col_off = 0
        src_tot = dims[a.source - 1]
        for r in reps:
            c = r.d(a.source)
            for row in r.maps[a.id]:
                rows.append([zero] * col_off + list(row) + [zero] * (src_tot - col_off - c))
            col_off += c
        maps[a.id] = rows
    return Representation(alg, dims, maps, convert=False)


# ----------------------------------------------------------------------
# layerings


def radical_layering(rep: Representation, length: int | None = None) -> SemisimpleSequence:
    """Dimension vectors of ``J^l M / J^(l+1) M``, padded with zeros to ``L``."""
    series = rep.radical_series()
    layers = []
    for cur, nxt in zip(series, series[1:]):
        layers.append(tuple(a.dim - b.dim for a, b in zip(cur, nxt)))
    if not layers:
        layers = [(0,) * rep.quiver.n]
    return SemisimpleSequence(layers).padded(max(length or rep.L, len(layers)))


def socle_layering(rep: Representation, length: int | None = None) -> SemisimpleSequence:
    """Dimension vectors of ``soc_(l+1) M / soc_l M``, padded to ``L``."""
    series = rep.socle_series()
    layers = []
    for low, high in zip(series, series[1:]):
        layers.append(tuple(b.dim - a.dim for a, b in zip(low, high)))
    if not layers:
        layers = [(0,) * rep.quiver.n]
    return SemisimpleSequence(layers).padded(max(length or rep.L, len(layers)))


def loewy_length_of(rep: Representation) -> int:
    return len(rep.radical_series()) - 1


# ----------------------------------------------------------------------
# module maps


class ModuleMap:
    """Homomorphism given by one matrix per vertex (``target.d(v) x source.d(v)``)."""

    def __init__(self, source: Representation, target: Representation, mats: Sequence):
        self.source = source
        self.target = target
        self.mats = tuple([list(r) for r in m] for m in mats)

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.dims} -> {self.target.dims})"

    def apply(self, v: int, vec: Sequence) -> list:
        return mat_vec(self.mats[v - 1], vec, self.target.field)

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """``self`` after ``inner``."""
        fld = self.target.field
        mats = []
        for v in self.source.quiver.vertices:
            a, b = self.mats[v - 1], inner.mats[v - 1]
            mats.append(mat_mul(a, b, fld, ncols=inner.source.d(v)) if a and b
                        else [[fld.zero()] * inner.source.d(v) for _ in range(self.target.d(v))])
        return ModuleMap(inner.source, self.target, mats)

    def is_zero(self) -> bool:
        return not any(x for m in self.mats for row in m for x in row)

    def trace(self):
        """Trace of an endomorphism."""
        fld = self.target.field
        s = fld.zero()
        for m in self.mats:
            for i in range(len(m)):
                s += m[i][i]
        return s % fld.p if fld.p else s

    def kernel(self) -> tuple[Subspace, ...]:
        fld = self.source.field
        return tuple(Subspace(fld, self.source.d(v), nullspace(self.mats[v - 1], self.source.d(v), fld))
                     if self.mats[v - 1] else Subspace.full(fld, self.source.d(v))
                     for v in self.source.quiver.vertices)

    def image(self) -> tuple[Subspace, ...]:
        fld = self.target.field
        out = []
        for v in self.source.quiver.vertices:
            m = self.mats[v - 1]
            cols = [list(c) for c in zip(*m)] if m else []
            out.append(Subspace(fld, self.target.d(v), cols))
        return tuple(out)

    def is_homomorphism(self) -> bool:
        fld = self.source.field
        for a in self.source.quiver.arrows:
            i, j = a.source, a.target
            lhs = _mm(self.mats[j - 1], self.source.maps[a.id], fld, self.source.d(i), self.target.d(j))
            rhs = _mm(self.target.maps[a.id], self.mats[i - 1], fld, self.source.d(i), self.target.d(j))
            if lhs != rhs:
                return False
        return True

    def flat(self) -> tuple:
        return tuple(x for m in self.mats for row in m for x in row)


def _mm(a, b, fld, ncols, nrows):
    if not a or not b or ncols == 0:
        return [[fld.zero()] * ncols for _ in range(nrows)]
    return mat_mul(a, b, fld, ncols=ncols)


def identity_map(rep: Representation) -> ModuleMap:
    one, zero = rep.field.one(), rep.field.zero()
    return ModuleMap(rep, rep, [[[one if r == c else zero for c in range(d)] for r in range(d)] for d in rep.dims])


def hom_space(r1: Representation, r2: Representation) -> list[ModuleMap]:
    """Basis of ``Hom(r1, r2)`` from the intertwiner equations ``f_j R1(a) = R2(a) f_i``."""
    vecs, _ = hom_kernel(r1, r2)
    fld = r1.field
    zero = fld.zero()
    basis = []
    for vec in vecs:
        mats, pos = [], 0
        for v in r1.quiver.vertices:
            d1, d2 = r1.d(v), r2.d(v)
            mats.append([[vec.get(pos + r * d1 + c, zero) for c in range(d1)] for r in range(d2)])
            pos += d1 * d2
        basis.append(ModuleMap(r1, r2, mats))
    return basis


def hom_kernel(r1: Representation, r2: Representation) -> tuple[list[dict], list[int]]:
    """``Hom(r1, r2)`` as sparse flat vectors (per vertex, entry ``(r, c)`` at
    ``r * d1 + c``) and the free columns where coordinates are read."""
    if r1.quiver != r2.quiver or r1.field != r2.field:
        raise RepresentationError("modules over different algebras")
    fld = r1.field
    q = r1.quiver
    offs = {}
    n = 0
    for v in q.vertices:
        offs[v] = n
        n += r2.d(v) * r1.d(v)
    eqs = []
    for a in q.arrows:
        i, j = a.source, a.target
        A1, A2 = r1.maps[a.id], r2.maps[a.id]
        d1i, d1j, d2i, d2j = r1.d(i), r1.d(j), r2.d(i), r2.d(j)
        nz1 = [[(k, A1[k][c]) for k in range(d1j) if A1[k][c]] for c in range(d1i)]
        nz2 = [[(k, A2[r][k]) for k in range(d2i) if A2[r][k]] for r in range(d2j)]
        for r in range(d2j):
            for c in range(d1i):
                eq: dict[int, object] = {}
                for k, x in nz1[c]:  # (f_j)[r][k] * A1[k][c]
                    idx = offs[j] + r * d1j + k
                    eq[idx] = eq.get(idx, 0) + x
                for k, x in nz2[r]:  # A2[r][k] * (f_i)[k][c]
                    idx = offs[i] + k * d1i + c
                    eq[idx] = eq.get(idx, 0) - x
                if fld.p:
                    eq = {k2: v2 % fld.p for k2, v2 in eq.items()}
                if any(eq.values()):
                    eqs.append(eq)
    return sparse_kernel(eqs, n, fld, with_free=True)


# ----------------------------------------------------------------------
# free modules and covers


def free_module(alg: TruncatedAlgebra, gens: Sequence[int]) -> tuple[Representation, dict]:
    """``(+)_g Lambda_L e_{gens[g]}`` on the basis of pairs ``(g, path)``.

    Returns the representation and ``index[v] = [(g, path), ...]`` giving the
    basis order at each vertex.
    """
    q = alg.quiver
    index: dict[int, list[tuple[int, Path]]] = {v: [] for v in q.vertices}
    for g, v in enumerate(gens):
        for p in alg.paths_from(v):
            index[p.end].append((g, p))
    pos = {v: {key: k for k, key in enumerate(index[v])} for v in q.vertices}
    dims = [len(index[v]) for v in q.vertices]
    zero, one = alg.field.zero(), alg.field.one()
    maps = {}
    for a in q.arrows:
        m = [[zero] * dims[a.source - 1] for _ in range(dims[a.target - 1])]
        for c, (g, p) in enumerate(index[a.source]):
            if p.length + 1 < alg.L:
                m[pos[a.target][(g, Path((a.id,) + p.arrows, p.start, a.target))]][c] = one
        maps[a.id] = m
    rep = Representation(alg, dims, maps, check=False, convert=False)
    rep.basis_labels = {v: [f"g{g}:{p}" for g, p in index[v]] for v in q.vertices}
    return rep, index


@dataclass
class ProjectiveCover:
    projective: Representation
    map: ModuleMap
    kernel: tuple[Subspace, ...]
    generators: list[tuple[int, list]]
    index: dict = dc_field(repr=False)


def projective_cover(rep: Representation) -> ProjectiveCover:
    """``f: P -> rep`` lifting a basis of the top; ``kernel = Ker f``."""
    alg = rep.algebra
    gens = rep.top_basis()
    P, index = free_module(alg, [v for v, _ in gens])
    mats = []
    cache: dict[tuple[int, Path], list] = {}
    for v in rep.quiver.vertices:
        cols = []
        for g, p in index[v]:
            cols.append(_path_image(rep, gens[g][1], g, p, cache))
        d = rep.d(v)
        mats.append([[cols[c][r] for c in range(len(cols))] for r in range(d)])
    f = ModuleMap(P, rep, mats)
    return ProjectiveCover(P, f, f.kernel(), gens, index)


def _path_image(rep, top_vec, g, p: Path, cache):
    key = (g, p)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not p.arrows:
        out = list(top_vec)
    else:
        rest = Path(p.arrows[1:], p.start, rep.quiver.arrow(p.arrows[0]).source)
        out = rep.act(p.arrows[0], _path_image(rep, top_vec, g, rest, cache))
    cache[key] = out
    return out


def submodule(rep: Representation, fam: Sequence[Subspace]) -> Representation:
    """The submodule on the echelon bases of an arrow-stable family."""
    if not rep.is_stable(fam):
        raise RepresentationError("subspace family is not arrow-stable")
    fld = rep.field
    maps = {}
    for a in rep.quiver.arrows:
        src, tgt = fam[a.source - 1], fam[a.target - 1]
        cols = [tgt.coords(mat_vec(rep.maps[a.id], u, fld)) for u in src.vectors]
        maps[a.id] = [[cols[c][r] for c in range(src.dim)] for r in range(tgt.dim)]
    return Representation(rep.algebra, [u.dim for u in fam], maps, check=False, convert=False)


def quotient(rep: Representation, fam: Sequence[Subspace]) -> Representation:
    """``rep / U`` on the standard complements of the echelon bases."""
    if not rep.is_stable(fam):
        raise RepresentationError("subspace family is not arrow-stable")
    comp = {v: fam[v - 1].complement_columns() for v in rep.quiver.vertices}
    maps = {}
    for a in rep.quiver.arrows:
        m = rep.maps[a.id]
        tgt = fam[a.target - 1]
        cols = [tgt.quotient_coords([row[c] for row in m]) for c in comp[a.source]]
        maps[a.id] = [[cols[c][r] for c in range(len(cols))] for r in range(len(comp[a.target]))]
    out = Representation(rep.algebra, [len(comp[v]) for v in rep.quiver.vertices], maps,
                         check=False, convert=False)
    if rep.basis_labels:
        out.basis_labels = {v: [rep.basis_labels[v][c] for c in comp[v]] for v in rep.quiver.vertices}
    return out


def sub_quotient(rep: Representation, fam: Sequence[Subspace]) -> tuple[Representation, Representation]:
    return submodule(rep, fam), quotient(rep, fam)


def top(rep: Representation) -> Representation:
    return quotient(rep, rep.J(rep.full_family()))


# ----------------------------------------------------------------------
# endomorphisms and decomposability


def _sparse_entries(m: ModuleMap) -> dict:
    return {(v, r, c): x for v, mat in enumerate(m.mats) for r, row in enumerate(mat)
            for c, x in enumerate(row) if x}


def _trace_pairing(xs: Sequence[ModuleMap], ys: Sequence[ModuleMap]) -> list[list]:
    """``[[tr(y x) for y in ys] for x in xs]`` without forming the composites."""
    fld = (xs or ys)[0].source.field
    sx = [_sparse_entries(x) for x in xs]
    sy = [{(v, c, r): y for (v, r, c), y in _sparse_entries(m).items()} for m in ys]
    out = []
    for a in sx:
        row = []
        for b in sy:
            small, big = (a, b) if len(a) <= len(b) else (b, a)
            s = fld.zero()
            for key, x in small.items():
                y = big.get(key)
                if y:
                    s += x * y
            row.append(s % fld.p if fld.p else s)
        out.append(row)
    return out


def _trace_radical_dim(basis: Sequence[ModuleMap]) -> int:
    fld = basis[0].source.field
    gram = _trace_pairing(basis, basis)
    return len(nullspace(gram, len(basis), fld))


def _check_trace_field(rep: Representation):
    fld = rep.field
    if fld.p is not None and fld.p <= rep.dim:
        raise RepresentationError(
            f"trace-form radical needs characteristic 0 or p > dim M (p={fld.p}, dim={rep.dim})")


def is_indecomposable(rep: Representation) -> bool:
    """True iff ``End(rep)`` is local, i.e. ``End / J(End)`` is one-dimensional."""
    if rep.dim == 0:
        raise RepresentationError("the zero module is not indecomposable")
    _check_trace_field(rep)
    end = hom_space(rep, rep)
    return len(end) - _trace_radical_dim(end) == 1


def are_isomorphic(r1: Representation, r2: Representation) -> bool:
    """Isomorphism test for indecomposable modules.

    With local endomorphism rings, ``r1 ~ r2`` iff some composite ``g f``
    with ``f: r1 -> r2``, ``g: r2 -> r1`` is not in the radical, detected by
    a nonzero trace.
    """
    if r1.dims != r2.dims:
        return False
    _check_trace_field(r1)
    hs, gs = hom_space(r1, r2), hom_space(r2, r1)
    if not hs or not gs:
        return False
    return any(x for row in _trace_pairing(hs, gs) for x in row)


# ----------------------------------------------------------------------
# layered graphs


@dataclass
class LayeredGraph:
    nodes: list[tuple[int, int]]
    edges: list[tuple[int, int, str]]
    exact: bool
    labels: list[str] | None = None

    def to_dot(self, name: str = "M") -> str:
        lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
        layers: dict[int, list[int]] = {}
        for k, (layer, v) in enumerate(self.nodes):
            layers.setdefault(layer, []).append(k)
            lines.append(f'  n{k} [label="{v}"];')
        for layer in sorted(layers):
            lines.append("  { rank=same; " + " ".join(f"n{k};" for k in layers[layer]) + " }")
        for s, t, aid in self.edges:
            lines.append(f'  n{s} -> n{t} [label="{aid}", arrowhead=none];')
        if not self.exact:
            lines.append('  label="inexact: some arrow images are not single basis vectors";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"nodes": [list(n) for n in self.nodes], "edges": [list(e) for e in self.edges],
                "exact": self.exact}


def layered_graph(rep: Representation) -> LayeredGraph:
    """Graph on a basis adapted to the radical filtration.

    Layer ``l+1`` is chosen greedily among arrow images of layer ``l``.  An
    edge ``x -a-> y`` is drawn when ``a x`` is a nonzero multiple of the basis
    vector ``y``; ``exact`` is False as soon as some ``a x`` is not.
    """
    fld = rep.field
    q = rep.quiver
    series = rep.radical_series()
    layers: list[list[tuple[int, list]]] = [rep.top_basis()]
    for l in range(1, len(series) - 1):
        deeper = series[l + 1]
        chosen: list[tuple[int, list]] = []
        spans = {v: deeper[v - 1] for v in q.vertices}
        for v, x in layers[-1]:
            for a in q.out_arrows[v]:
                y = mat_vec(rep.maps[a.id], x, fld)
                cur = spans[a.target]
                if not cur.contains(y):
                    chosen.append((a.target, y))
                    spans[a.target] = cur + Subspace(fld, len(y), [y])
        layers.append(chosen)
    nodes = []
    basis = []
    for l, layer in enumerate(layers):
        for v, x in layer:
            nodes.append((l, v))
            basis.append((v, x))
    inv = {v: [k for k, (w, _) in enumerate(basis) if w == v] for v in q.vertices}
    edges = []
    exact = True
    for k, (v, x) in enumerate(basis):
        for a in q.out_arrows[v]:
            y = mat_vec(rep.maps[a.id], x, fld)
            if not any(y):
                continue
            ks = inv[a.target]
            vecs = [basis[m][1] for m in ks]
            coeff = _coordinates(vecs, y, fld)
            support = [ks[i] for i, c in enumerate(coeff) if c]
            if len(support) == 1:
                edges.append((k, support[0], a.id))
            else:
                exact = False
    return LayeredGraph(nodes, edges, exact)


def _coordinates(vecs: list[list], y: list, fld: Field) -> list:
    from .exactlinalg import solve

    a = [list(r) for r in zip(*vecs)]
    x = solve(a, y, len(vecs), fld)
    if x is None:
        raise RepresentationError("graph basis does not span the module")
    return x
