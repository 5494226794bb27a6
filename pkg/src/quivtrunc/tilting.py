"""The basic strong tilting module of ``Lambda_L`` and its endomorphism algebra.

Conventions: ``E = End(T)`` multiplies by composition, ``x y = x o y``.  The
block ``e~_j E e~_i`` is ``Hom(T_i, T_j)``, and the quiver reported by
:func:`tilt_quiver` has an arrow ``i -> j`` for each irreducible map
``T_i -> T_j``.  The tilted algebra is ``E^op``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from .algebra import TruncatedAlgebra, injective, loewy_length
from .exactlinalg import QQ, Echelon, Field, FieldError, Subspace, nullspace
from .modrep import (ModuleMap, Representation, are_isomorphic, hom_kernel,
                     is_indecomposable, layered_graph, projective_cover, quotient, simple, submodule)
from .quiver import Path, Quiver, all_paths, precyclic_vertices


class TiltingError(RuntimeError):
    """A verification of the tilting construction failed."""


def epsilon(q: Quiver) -> frozenset[int]:
    """Support of the idempotent: the non-precyclic vertices."""
    return frozenset(q.vertices) - frozenset(precyclic_vertices(q))


# ----------------------------------------------------------------------
# approximations and the tilting module


def pinf_approximation(rep: Representation) -> tuple[Representation, ModuleMap]:
    """``P(M) / eps Ker(f) -> M`` induced by the projective cover ``f``."""
    cover = projective_cover(rep)
    P, ker = cover.projective, cover.kernel
    eps = epsilon(rep.quiver)
    fld = rep.field
    fam = tuple(ker[v - 1] if v in eps else Subspace.zero(fld, P.d(v)) for v in rep.quiver.vertices)
    if not P.is_stable(fam):
        raise TiltingError("eps Ker(f) is not a submodule")
    A = quotient(P, fam)
    mats = []
    for v in rep.quiver.vertices:
        cols = fam[v - 1].complement_columns()
        f = cover.map.mats[v - 1]
        mats.append([[row[c] for c in cols] for row in f])
    return A, ModuleMap(A, rep, mats)


def strong_tilting_module(q: Quiver, L: int, field: Field = QQ, verify: bool = True) -> list[Representation]:
    """``[T_1, ..., T_n]``: approximations of the simples at precyclic vertices
    and of the indecomposable injectives elsewhere."""
    alg = TruncatedAlgebra(q, L, field)
    eps = epsilon(q)
    T = []
    for i in q.vertices:
        source = injective(alg, i) if i in eps else simple(alg, i)
        Ti, _ = pinf_approximation(source)
        T.append(Ti)
    if verify:
        verify_tilting(T)
    return T


def syzygy(rep: Representation) -> tuple[Representation, Representation]:
    """``(Omega M, P(M))``."""
    cover = projective_cover(rep)
    return submodule(cover.projective, cover.kernel), cover.projective


def ext_dimensions(M: Representation, N: Representation, kmax: int) -> list[int]:
    """``[dim Ext^1(M, N), ..., dim Ext^kmax(M, N)]`` via syzygies."""
    out = []
    cur = M
    hom_prev = len(hom_kernel(cur, N)[0])
    for _ in range(kmax):
        if cur.dim == 0:
            out.append(0)
            continue
        cover = projective_cover(cur)
        omega = submodule(cover.projective, cover.kernel)
        hom_p = sum(N.d(v) for v, _ in cover.generators)
        hom_omega = len(hom_kernel(omega, N)[0]) if omega.dim else 0
        out.append(hom_omega - hom_p + hom_prev)
        cur, hom_prev = omega, hom_omega
    return out


def projective_dimension(rep: Representation, bound: int | None = None) -> int | None:
    """``pdim M``, or None if the syzygies do not vanish within ``bound`` steps."""
    bound = bound if bound is not None else 4 * (rep.quiver.n + 1) * rep.L + rep.dim
    cur = rep
    for k in range(bound + 1):
        if cur.dim == 0:
            return max(k - 1, 0)
        cur, _ = syzygy(cur)
    return None


@dataclass
class TiltingCheck:
    pdims: list[int]
    ext_vanishes: bool
    indecomposable: bool
    pairwise_distinct: bool
    tree_graphs: list[bool]


def verify_tilting(T: Sequence[Representation]) -> TiltingCheck:
    """Indecomposable, pairwise non-isomorphic summands with ``Ext^k(T, T) = 0``."""
    pdims = []
    for i, Ti in enumerate(T, 1):
        if not is_indecomposable(Ti):
            raise TiltingError(f"T_{i} is decomposable")
        p = projective_dimension(Ti)
        if p is None:
            raise TiltingError(f"T_{i} has no finite projective resolution within the bound")
        pdims.append(p)
    for i in range(len(T)):
        for j in range(i + 1, len(T)):
            if are_isomorphic(T[i], T[j]):
                raise TiltingError(f"T_{i + 1} and T_{j + 1} are isomorphic")
    for i, Ti in enumerate(T, 1):
        if pdims[i - 1] == 0:
            continue
        for j, Tj in enumerate(T, 1):
            dims = ext_dimensions(Ti, Tj, pdims[i - 1])
            if any(dims):
                raise TiltingError(f"Ext(T_{i}, T_{j}) = {dims} is not zero")
    trees = [_is_tree(Ti) for Ti in T]
    return TiltingCheck(pdims, True, True, True, trees)


def _is_tree(rep: Representation) -> bool:
    g = layered_graph(rep)
    if not g.exact:
        return False
    nodes = len(g.nodes)
    edges = {(min(s, t), max(s, t)) for s, t, _ in g.edges}
    if len(edges) != len(g.edges) or len(edges) != nodes - 1:
        return False
    parent = list(range(nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in edges:
        rs, rt = find(s), find(t)
        if rs == rt:
            return False
        parent[rs] = rt
    return True


# ----------------------------------------------------------------------
# basic algebras


class BasicAlgebra:
    """Finite-dimensional algebra on a basis adapted to idempotents ``1..n``.

    Basis element ``b`` lies in ``e_target[b] A e_source[b]``.  ``product``
    returns the product of two basis elements as a sparse dict.  Elements are
    dense coordinate lists.
    """

    def __init__(self, field: Field, n: int, source: Sequence[int], target: Sequence[int],
                 product: Callable[[int, int], dict], labels: Sequence[str] | None = None):
        self.field = field
        self.n = n
        self.source = list(source)
        self.target = list(target)
        self.dim = len(self.source)
        self._product = product
        self._cache: dict[tuple[int, int], dict] = {}
        self.labels = list(labels) if labels else [f"b{k}" for k in range(self.dim)]

    @classmethod
    def from_structure_constants(cls, field: Field, n: int, source, target,
                                 table: dict[tuple[int, int], dict]) -> "BasicAlgebra":
        conv = {k: {c: field.element(x) for c, x in v.items()} for k, v in table.items()}
        return cls(field, n, source, target, lambda a, b: conv.get((a, b), {}))

    @classmethod
    def from_truncated(cls, alg: TruncatedAlgebra) -> "BasicAlgebra":
        """``Lambda_L`` on its path basis (``p q`` = ``p`` after ``q``)."""
        basis = list(alg.basis)
        index = {p: k for k, p in enumerate(basis)}
        one = alg.field.one()

        def prod(a, b):
            r = alg.multiply(basis[a], basis[b])
            return {index[r]: one} if r is not None else {}

        return cls(alg.field, alg.n, [p.start for p in basis], [p.end for p in basis], prod,
                   [str(p) for p in basis])

    def basis_product(self, a: int, b: int) -> dict:
        key = (a, b)
        if key not in self._cache:
            if self.source[a] != self.target[b]:
                self._cache[key] = {}
            else:
                self._cache[key] = self._product(a, b)
        return self._cache[key]

    def multiply(self, x: Sequence, y: Sequence) -> list:
        fld = self.field
        out = [fld.zero()] * self.dim
        xs = [(a, c) for a, c in enumerate(x) if c]
        ys = [(b, c) for b, c in enumerate(y) if c]
        for a, ca in xs:
            for b, cb in ys:
                for k, v in self.basis_product(a, b).items():
                    out[k] += ca * cb * v
        if fld.p:
            out = [z % fld.p for z in out]
        return out

    def unit_vector(self, b: int) -> list:
        v = [self.field.zero()] * self.dim
        v[b] = self.field.one()
        return v

    def idempotent(self, i: int) -> list:
        """``e_i`` as an element; needs basis elements that are the idempotents."""
        raise NotImplementedError

    def is_associative(self) -> bool:
        for a in range(self.dim):
            for b in range(self.dim):
                for c in range(self.dim):
                    ab = self.multiply(self.unit_vector(a), self.unit_vector(b))
                    bc = self.multiply(self.unit_vector(b), self.unit_vector(c))
                    if self.multiply(ab, self.unit_vector(c)) != self.multiply(self.unit_vector(a), bc):
                        return False
        return True

    # radical ----------------------------------------------------------
    def left_trace(self, b: int):
        """Trace of left multiplication by the basis element ``b``."""
        s = self.field.zero()
        for c in range(self.dim):
            s += self.basis_product(b, c).get(c, 0)
        return s % self.field.p if self.field.p else s

    def radical(self) -> Subspace:
        return algebra_radical(self)

    @cached_property
    def blocks(self) -> dict[tuple[int, int], list[int]]:
        """Global basis indices of ``e_j A e_i`` keyed by ``(i, j)``."""
        out: dict[tuple[int, int], list[int]] = {}
        for k, (i, j) in enumerate(zip(self.source, self.target)):
            out.setdefault((i, j), []).append(k)
        return out

    def to_global(self, block: tuple[int, int], loc: Sequence) -> list:
        out = [self.field.zero()] * self.dim
        for k, x in zip(self.blocks[block], loc):
            out[k] = x
        return out

    def to_local(self, block: tuple[int, int], vec: Sequence) -> list:
        return [vec[k] for k in self.blocks[block]]

    def block_multiply(self, x_block: tuple[int, int], x: Sequence, y_block: tuple[int, int],
                       y: Sequence) -> list:
        """Local coordinates of ``x y`` in block ``(source(y), target(x))``."""
        prod = self.multiply(self.to_global(x_block, x), self.to_global(y_block, y))
        return self.to_local((y_block[0], x_block[1]), prod)

    def prepare(self, block: tuple[int, int], x: Sequence):
        """Operand form used by :meth:`prepared_product`."""
        return block, x

    def prepared_product(self, x, y, target: tuple[int, int]) -> list:
        return self.block_multiply(x[0], x[1], y[0], y[1])

    @cached_property
    def radical_blocks(self) -> dict[tuple[int, int], Subspace]:
        J = self.radical()
        out = {}
        for blk, idx in self.blocks.items():
            rows = [self.to_local(blk, v) for v in J.vectors if _lead(v) in set(idx)]
            out[blk] = Subspace(self.field, len(idx), rows)
        return out

    @cached_property
    def loewy_blocks(self) -> list[dict[tuple[int, int], Subspace]]:
        """``[J, J^2, ..., 0]`` block by block."""
        return radical_powers(self)

    @property
    def loewy_chain(self) -> list[Subspace]:
        """``[J, J^2, ..., 0]`` as subspaces of the whole algebra."""
        return [Subspace(self.field, self.dim, [self.to_global(blk, v) for blk, sp in Jm.items()
                                                 for v in sp.vectors])
                for Jm in self.loewy_blocks]

    @property
    def loewy_length(self) -> int:
        return len(self.loewy_blocks) if self.dim else 0

    def loewy_length_at(self, i: int) -> int:
        """Loewy length of ``A e_i`` (elements with source ``i``)."""
        for m, Jm in enumerate(self.loewy_blocks, 1):
            if not any(sp.dim for (s, _), sp in Jm.items() if s == i):
                return m
        return len(self.loewy_blocks) + 1

    @cached_property
    def arrows(self) -> dict[tuple[int, int], list[list]]:
        """Lifts of a basis of ``e_j (J/J^2) e_i`` keyed by ``(i, j)``, in global coordinates."""
        chain = self.loewy_blocks
        out: dict[tuple[int, int], list[list]] = {}
        for blk in sorted(chain[0]):
            J = chain[0][blk]
            J2 = chain[1][blk] if len(chain) > 1 else Subspace.zero(self.field, J.ambient)
            lifts = _complement_vectors(J, J2)
            if lifts:
                out[blk] = [self.to_global(blk, v) for v in lifts]
        return out


def _complement_vectors(big: Subspace, small: Subspace) -> list[list]:
    ech = Echelon(big.field, big.ambient, small.vectors)
    return [list(vec) for vec in big.vectors if ech.add(vec)]


def _lead(v: Sequence) -> int:
    for k, x in enumerate(v):
        if x:
            return k
    raise ValueError("zero vector")


def algebra_radical(A: BasicAlgebra) -> Subspace:
    """Radical as the kernel of the trace form ``(x, y) -> tr(L_xy)`` (characteristic 0)."""
    if A.field.is_prime:
        raise FieldError("the trace-form radical is only computed over the rationals")
    fast = getattr(A, "_radical_fast", None)
    if fast is not None:
        return fast()
    traces = [A.left_trace(c) for c in range(A.dim)]
    gram = []
    for a in range(A.dim):
        row = []
        for b in range(A.dim):
            row.append(sum((x * traces[c] for c, x in A.basis_product(a, b).items()), A.field.zero()))
        gram.append(row)
    return Subspace(A.field, A.dim, nullspace(gram, A.dim, A.field))


def general_radical(A: BasicAlgebra) -> Subspace:
    """Trace-form radical, bypassing any structural shortcut."""
    fast = getattr(A, "_radical_fast", None)
    try:
        A._radical_fast = None
        return algebra_radical(A)
    finally:
        A._radical_fast = fast


def _random_combo(fld: Field, vecs: Sequence[Sequence], rng: random.Random) -> list:
    out = [fld.zero()] * len(vecs[0])
    for v in vecs:
        c = fld.element(rng.randint(1, 9))
        for t, x in enumerate(v):
            if x:
                out[t] = out[t] + c * x
    return [x % fld.p for x in out] if fld.p else out


def _product_space(A: BasicAlgebra, left: dict, right: dict, bound: dict | None = None,
                   ech: dict | None = None) -> dict[tuple[int, int], Echelon]:
    """Span of ``x y`` per block; a block stops growing once it reaches ``bound``."""
    ech = ech if ech is not None else {blk: Echelon(A.field, len(idx)) for blk, idx in A.blocks.items()}
    lp = {blk: [A.prepare(blk, x) for x in xs] for blk, xs in left.items()}
    rp = {blk: [A.prepare(blk, y) for y in ys] for blk, ys in right.items()}
    for (j, k), xs in lp.items():
        for (i, j2), ys in rp.items():
            blk = (i, k)
            if j2 != j or blk not in ech:
                continue
            cap = bound.get(blk, 0) if bound is not None else None
            e = ech[blk]
            for x in xs:
                for y in ys:
                    if cap is not None and e.dim >= cap:
                        break
                    e.add(A.prepared_product(x, y, blk))
    return ech


def radical_powers(A: BasicAlgebra) -> list[dict[tuple[int, int], Subspace]]:
    """``[J, J^2, ..., J^m = 0]`` per block.

    If ``W`` is any part of ``J^2`` and ``G`` spans a complement of ``W`` in
    ``J`` then ``J = G + J^2``, hence ``J^k = G J^(k-1)``.  ``W`` is seeded with
    products of random radical elements so that ``G`` is close to a set of arrows.
    """
    fld = A.field
    J = A.radical_blocks
    chain = [J]
    if not any(sp.dim for sp in J.values()):
        return chain
    rows = {blk: list(sp.vectors) for blk, sp in J.items() if sp.dim}
    dims = {blk: sp.dim for blk, sp in J.items()}
    rng = random.Random(0)
    rand = {blk: [_random_combo(fld, xs, rng) for _ in range(2)] for blk, xs in rows.items()}
    seed = _product_space(A, rand, rows, dims)
    seed = _product_space(A, rows, rand, dims, seed)
    gen = {}
    for blk in rows:
        g = _complement_vectors(J[blk], seed[blk].subspace())
        if g:
            gen[blk] = g
    ech = _product_space(A, gen, rows, dims)
    J2 = {blk: e.subspace() for blk, e in ech.items()}
    chain.append(J2)
    arrows = {blk: _complement_vectors(J[blk], J2[blk]) for blk in rows}
    arrows = {blk: v for blk, v in arrows.items() if v}
    while any(sp.dim for sp in chain[-1].values()):
        prev = {blk: list(sp.vectors) for blk, sp in chain[-1].items() if sp.dim}
        bound = {blk: sp.dim for blk, sp in chain[-1].items()}
        ech = _product_space(A, arrows, prev, bound)
        chain.append({blk: e.subspace() for blk, e in ech.items()})
        if len(chain) > A.dim + 2:
            raise TiltingError("radical is not nilpotent")
    return chain


# ----------------------------------------------------------------------
# End(T)


class HomBasis:
    """Sparse basis of ``Hom(T_i, T_j)``: flat vectors, each 1 at its own
    coordinate column and 0 at the others."""

    __slots__ = ("vectors", "pivots", "ambient")

    def __init__(self, vectors: list[dict], pivots: list[int], ambient: int):
        self.vectors = vectors
        self.pivots = pivots
        self.ambient = ambient

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coords(self, flat: Sequence) -> list:
        return [flat[c] for c in self.pivots]


class EndAlgebra(BasicAlgebra):
    """``End(T)`` for ``T = T_1 + ... + T_n`` with pairwise non-isomorphic
    indecomposable summands.  Basis: kernel bases of ``Hom(T_i, T_j)``."""

    def __init__(self, T: Sequence[Representation]):
        self.T = list(T)
        fld = T[0].field
        n = len(T)
        self.hom: dict[tuple[int, int], HomBasis] = {}
        source, target, labels = [], [], []
        self.offset: dict[tuple[int, int], int] = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                vecs, free = hom_kernel(T[i - 1], T[j - 1])
                self.hom[(i, j)] = HomBasis(vecs, free, _flat_len(T[i - 1], T[j - 1]))
                self.offset[(i, j)] = len(source)
                for k in range(len(vecs)):
                    source.append(i)
                    target.append(j)
                    labels.append(f"T{i}->T{j}#{k}")
        self._maps: dict[int, ModuleMap] = {}
        super().__init__(fld, n, source, target, self._compose_basis, labels)

    def basis_map(self, b: int) -> ModuleMap:
        """The homomorphism of basis element ``b``."""
        m = self._maps.get(b)
        if m is None:
            blk = (self.source[b], self.target[b])
            loc = [self.field.zero()] * self.hom[blk].dim
            loc[b - self.offset[blk]] = self.field.one()
            m = self._maps[b] = self.local_map(blk, loc)
        return m

    def _compose_basis(self, a: int, b: int) -> dict:
        m = self.basis_map(a).compose(self.basis_map(b))
        return self._coords(self.source[b], self.target[a], m)

    def _coords(self, i: int, j: int, m: ModuleMap) -> dict:
        sp = self.hom.get((i, j))
        if sp is None:
            return {}
        c = sp.coords(list(m.flat()))
        off = self.offset[(i, j)]
        return {off + k: x for k, x in enumerate(c) if x}

    @cached_property
    def _sparse(self) -> dict:
        """Per block: sparse basis maps ``{v: {row: {col: x}}}`` and pivot positions."""
        out = {}
        for (i, j), sp in self.hom.items():
            T1, T2 = self.T[i - 1], self.T[j - 1]
            starts = []
            pos = 0
            for v in T1.quiver.vertices:
                starts.append((pos, v, T1.d(v)))
                pos += T1.d(v) * T2.d(v)

            def where(t):
                for p0, v, d1 in reversed(starts):
                    if t >= p0:
                        r, c = divmod(t - p0, d1)
                        return v, r, c
                raise IndexError(t)

            maps = []
            for vec in sp.vectors:
                m: dict = {}
                for t, x in vec.items():
                    if x:
                        v, r, c = where(t)
                        m.setdefault(v, {}).setdefault(r, {})[c] = x
                maps.append(m)
            out[(i, j)] = (maps, [where(t) for t in sp.pivots])
        return out

    def _sparse_combo(self, block, x) -> dict:
        maps, _ = self._sparse[block]
        out: dict = {}
        for c, m in zip(x, maps):
            if not c:
                continue
            for v, rows in m.items():
                ov = out.setdefault(v, {})
                for r, cols in rows.items():
                    orow = ov.setdefault(r, {})
                    for col, y in cols.items():
                        orow[col] = orow.get(col, 0) + c * y
        return out

    def local_map(self, block: tuple[int, int], x: Sequence) -> ModuleMap:
        """The homomorphism ``T_i -> T_j`` with local coordinates ``x`` in block ``(i, j)``."""
        i, j = block
        T1, T2 = self.T[i - 1], self.T[j - 1]
        m = self._sparse_combo(block, x)
        zero = self.field.zero()
        mats = []
        for v in T1.quiver.vertices:
            rows = m.get(v, {})
            mats.append([[rows.get(r, {}).get(c, zero) for c in range(T1.d(v))] for r in range(T2.d(v))])
        return ModuleMap(T1, T2, mats)

    def element_map(self, x: Sequence) -> ModuleMap:
        """The homomorphism of a block-homogeneous element."""
        b = _lead(x)
        blk = (self.source[b], self.target[b])
        return self.local_map(blk, self.to_local(blk, x))

    def prepare(self, block, x):
        return self._sparse_combo(block, x)

    @cached_property
    def _pivot_rows(self) -> dict:
        """Per block: ``{(v, r): [(c, position)]}`` over the pivot entries."""
        out = {}
        for blk, (_, pivots) in self._sparse.items():
            rows: dict = {}
            for t, (v, r, c) in enumerate(pivots):
                rows.setdefault((v, r), []).append((c, t))
            out[blk] = rows
        return out

    def prepared_product(self, g, f, target) -> list:
        """Coordinates of ``g o f`` read off at the pivot entries of ``target``."""
        rows = self._pivot_rows[target]
        out = [0] * len(self._sparse[target][1])
        for v, grows in g.items():
            fv = f.get(v)
            if not fv:
                continue
            for r, grow in grows.items():
                slots = rows.get((v, r))
                if not slots:
                    continue
                for k, gx in grow.items():
                    fk = fv.get(k)
                    if not fk or not gx:
                        continue
                    for c, t in slots:
                        fx = fk.get(c)
                        if fx:
                            out[t] += gx * fx
        return out

    def block_multiply(self, x_block, x, y_block, y) -> list:
        return self.prepared_product(self._sparse_combo(x_block, x), self._sparse_combo(y_block, y),
                                     (y_block[0], x_block[1]))

    def multiply(self, x: Sequence, y: Sequence) -> list:
        """Compose block-homogeneous elements directly; fall back otherwise."""
        xs = {(self.source[k], self.target[k]) for k, c in enumerate(x) if c}
        ys = {(self.source[k], self.target[k]) for k, c in enumerate(y) if c}
        if len(xs) != 1 or len(ys) != 1:
            return super().multiply(x, y)
        xb, yb = next(iter(xs)), next(iter(ys))
        if xb[0] != yb[1] or (yb[0], xb[1]) not in self.blocks:
            return [self.field.zero()] * self.dim
        loc = self.block_multiply(xb, self.to_local(xb, x), yb, self.to_local(yb, y))
        return self.to_global((yb[0], xb[1]), loc)

    def _radical_fast(self) -> Subspace:
        """Maps between distinct summands plus trace-zero endomorphisms."""
        fld = self.field
        rows = []
        for b in range(self.dim):
            if self.source[b] != self.target[b]:
                rows.append(self.unit_vector(b))
        for i in range(1, self.n + 1):
            off = self.offset[(i, i)]
            k = self.hom[(i, i)].dim
            maps, _ = self._sparse[(i, i)]
            tr = [sum((x for rows in m.values() for r, cols in rows.items() for c, x in cols.items()
                       if r == c), fld.zero()) for m in maps]
            for v in nullspace([tr], k, fld):
                row = [fld.zero()] * self.dim
                row[off:off + k] = v
                rows.append(row)
        return Subspace(fld, self.dim, rows)


def _flat_len(r1: Representation, r2: Representation) -> int:
    return sum(r1.d(v) * r2.d(v) for v in r1.quiver.vertices)


def end_algebra(T: Sequence[Representation]) -> EndAlgebra:
    if not T:
        raise ValueError("empty tilting module")
    if T[0].field.is_prime:
        raise FieldError("End(T) computations run over the rationals")
    return EndAlgebra(T)


def tilt_quiver(E: BasicAlgebra) -> Quiver:
    """Arrow ``i -> j`` for each basis vector of ``e_j (J/J^2) e_i``."""
    arrows = []
    for (i, j), vecs in sorted(E.arrows.items()):
        for k in range(len(vecs)):
            arrows.append((f"t{i}{j}_{k}" if E.n < 10 else f"t{i}_{j}_{k}", i, j))
    return Quiver(E.n, arrows, labels=[f"~{i}" for i in range(1, E.n + 1)])


def arrow_count(E: BasicAlgebra, i: int, j: int) -> int:
    return len(E.arrows.get((i, j), []))


# ----------------------------------------------------------------------
# presentations


@dataclass
class Presentation:
    """``K Q / I``: minimal relations, plus the paths of length ``< loewy_length``
    that lie in ``I`` (longer paths always do)."""
    quiver: Quiver
    relations: list[dict[Path, object]]
    monomial: bool
    loewy_length: int
    ideal_paths: frozenset = frozenset()
    truncation: int | None = None

    def kills(self, p: Path) -> bool:
        """True iff the path ``p`` lies in the ideal."""
        if self.truncation is not None and p.length >= self.truncation:
            return True
        return p.length >= self.loewy_length or p in self.ideal_paths

    def to_dict(self) -> dict:
        return {
            "quiver": self.quiver.to_dict(),
            "relations": [[{"path": str(p), "coefficient": str(c)} for p, c in sorted(r.items(), key=lambda t: t[0].sort_key())]
                          for r in self.relations],
            "monomial": self.monomial,
            "loewy_length": self.loewy_length,
            "truncation": self.truncation,
        }


def tilt_presentation(E: BasicAlgebra, max_paths: int = 20000) -> Presentation:
    """Minimal relations for the surjection ``K Q~ -> E`` given by the arrow lifts."""
    Qt = tilt_quiver(E)
    fld = E.field
    N = E.loewy_length
    lifts = {}
    for (i, j), vecs in E.arrows.items():
        for k, v in enumerate(vecs):
            aid = f"t{i}{j}_{k}" if E.n < 10 else f"t{i}_{j}_{k}"
            lifts[aid] = v
    paths = [p for p in all_paths(Qt, N) if p.length >= 2]
    if len(paths) > max_paths:
        raise ValueError(f"{len(paths)} paths exceed the presentation limit {max_paths}")
    index = {p: k for k, p in enumerate(paths)}
    images: dict[Path, list] = {}

    def image(p: Path) -> list:
        if p.length == 1:
            return lifts[p.arrows[0]]
        hit = images.get(p)
        if hit is None:
            head = Path(p.arrows[:1], Qt.arrow(p.arrows[0]).source, p.end)
            tail = Path(p.arrows[1:], p.start, Qt.arrow(p.arrows[0]).source)
            hit = E.multiply(image(head), image(tail))
            images[p] = hit
        return hit

    # kernel of paths -> E, block by block (start, end); rows kept sparse
    I = Echelon(fld, len(paths))
    by_block: dict[tuple[int, int], list[Path]] = {}
    for p in paths:
        by_block.setdefault((p.start, p.end), []).append(p)
    for block, ps in sorted(by_block.items()):
        cols = [image(p) for p in ps]
        mat = [[c[r] for c in cols] for r in range(E.dim)]
        for v in nullspace(mat, len(ps), fld):
            I.add({index[ps[k]]: x for k, x in enumerate(v) if x})
    basis = [I.rows[c] for c in sorted(I.rows)]
    # ideal generated in lower degrees: arrow multiples of kernel elements
    lower = Echelon(fld, len(paths))
    for r in basis:
        terms = [(paths[k], x) for k, x in r.items()]
        for a in Qt.arrows:
            left: dict = {}
            right: dict = {}
            for p, x in terms:
                if a.source == p.end and p.length + 1 <= N:
                    k = index[Path((a.id,) + p.arrows, p.start, a.target)]
                    left[k] = left.get(k, 0) + x
                if a.target == p.start and p.length + 1 <= N:
                    k = index[Path(p.arrows + (a.id,), a.source, p.end)]
                    right[k] = right.get(k, 0) + x
            for row in (left, right):
                if row:
                    lower.add(row)
    rels = []
    for r in basis:
        if lower.add(r):
            rels.append({paths[k]: r[k] for k in sorted(r)})
    in_ideal = [p for k, p in enumerate(paths) if I.contains({k: fld.one()})]
    monomial = len(in_ideal) == I.dim
    return Presentation(Qt, rels, monomial, N, frozenset(p for p in in_ideal if p.length < N))


# ----------------------------------------------------------------------
# Loewy lengths and ratios


@dataclass
class TiltSummary:
    L: int
    loewy_lambda: int
    loewy_tilt: int
    loewy_at: dict[int, int]
    quiver: Quiver
    E: EndAlgebra = dc_field(repr=False)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.loewy_tilt, self.loewy_lambda)


def tilt(q: Quiver, L: int, verify: bool = True) -> TiltSummary:
    T = strong_tilting_module(q, L, QQ, verify=verify)
    E = end_algebra(T)
    alg = TruncatedAlgebra(q, L)
    return TiltSummary(L, loewy_length(alg), E.loewy_length,
                       {i: E.loewy_length_at(i) for i in q.vertices}, tilt_quiver(E), E)


def loewy_ratio_sequence(q: Quiver, L_min: int = 2, L_max: int = 20, verify: bool = False) -> list[Fraction]:
    if L_max < L_min:
        raise ValueError("need L_max >= L_min")
    return [tilt(q, L, verify=verify).ratio for L in range(L_min, L_max + 1)]


@dataclass
class Accumulation:
    points: set
    period: int | None
    window: tuple[int, int]


def accumulation_estimate(q: Quiver, L_min: int = 2, L_max: int = 20, max_period: int = 6,
                          verify: bool = False, values: dict | None = None) -> Accumulation:
    """Limits of the ratio along residue classes of an eventual period.

    Both Loewy lengths are eventually affine in ``L`` on each residue class;
    a period is accepted when every class has constant first differences
    over the second half of the window.  ``values`` maps ``L`` to
    ``(LL(tilt), LL(Lambda_L))`` and skips the computation.
    """
    if values is None:
        values = {}
        for L in range(L_min, L_max + 1):
            s = tilt(q, L, verify=verify)
            values[L] = (s.loewy_tilt, s.loewy_lambda)
    Ls = sorted(values)
    half = Ls[len(Ls) // 2:]
    for P in range(1, max_period + 1):
        limits = set()
        ok = True
        for r in range(P):
            cls = [L for L in half if L % P == r]
            if len(cls) < 3:
                ok = False
                break
            diffs = {(values[b][0] - values[a][0], values[b][1] - values[a][1]) for a, b in zip(cls, cls[1:])}
            if len(diffs) != 1:
                ok = False
                break
            dt, dl = diffs.pop()
            last = cls[-1]
            limits.add(Fraction(dt, dl) if dl else Fraction(*values[last]))
        if ok:
            return Accumulation(limits, P, (Ls[0], Ls[-1]))
    return Accumulation({Fraction(*values[Ls[-1]])}, None, (Ls[0], Ls[-1]))
