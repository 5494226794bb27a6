"""Exact linear algebra over the rationals and prime fields.

Vectors are plain tuples/lists of field elements: :class:`fractions.Fraction`
over the rationals and ints in ``range(p)`` over ``F_p``.  Dense routines take
lists of rows; :func:`sparse_kernel` works on rows given as ``{col: value}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Base field: ``Field.rationals()`` or ``Field.prime(p)``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise FieldError("rational field takes no characteristic")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise FieldError(f"{self.p!r} is not a prime")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls("prime", p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``rational``/``Q`` or ``pN``/``FN`` (e.g. ``p101``)."""
        t = text.strip().lower()
        if t in ("rational", "rationals", "q"):
            return cls.rationals()
        if t[:1] in ("p", "f") and t[1:].isdigit():
            return cls.prime(int(t[1:]))
        raise FieldError(f"cannot parse field {text!r}")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p if self.p is not None else 0

    def __str__(self) -> str:
        return "rational" if self.p is None else f"p{self.p}"

    # element handling -------------------------------------------------
    def element(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def fmt(self, x) -> str:
        return str(x)

    def elements(self) -> range:
        if self.p is None:
            raise FieldError("the rationals are not enumerable")
        return range(self.p)


QQ = Field.rationals()


@dataclass(frozen=True)
class Matrix:
    """Dense immutable matrix; ``entries`` in row-major order."""

    rows: int
    cols: int
    entries: tuple
    field: Field = dc_field(default=QQ, compare=True)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        ent = tuple(field.element(x) for r in rows for x in r)
        return cls(len(rows), ncols, ent, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        return cls(rows, cols, (field.zero(),) * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, cols=n)

    def to_rows(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        prod = mat_mul(self.to_rows(), other.to_rows(), self.field, inner=self.cols, ncols=other.cols)
        return Matrix.from_rows(prod, self.field, cols=other.cols)

    def rank(self) -> int:
        return rank(self.to_rows(), self.cols, self.field)

    def transpose(self) -> "Matrix":
        return Matrix.from_rows(transpose(self.to_rows(), self.cols), self.field, cols=self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)


# ----------------------------------------------------------------------
# dense kernels


def transpose(rows: Sequence[Sequence], ncols: int) -> list[list]:
    if not rows:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*rows)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field, inner: int | None = None,
            ncols: int | None = None) -> list[list]:
    """Product of row-lists ``a`` (m x k) and ``b`` (k x n)."""
    if ncols is None:
        ncols = len(b[0]) if b else 0
    p = field.p
    zero = field.zero()
    out = []
    bt = transpose(b, ncols) if b else [[] for _ in range(ncols)]
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        r = []
        for col in bt:
            s = zero
            for k, x in nz:
                y = col[k]
                if y:
                    s += x * y
            r.append(s % p if p else s)
        out.append(r)
    return out


def mat_vec(a: Sequence[Sequence], v: Sequence, field: Field) -> list:
    p = field.p
    nz = [(k, x) for k, x in enumerate(v) if x]
    out = []
    for row in a:
        s = field.zero()
        for k, x in nz:
            y = row[k]
            if y:
                s += x * y
        out.append(s % p if p else s)
    return out


def rref(rows: Iterable[Sequence], ncols: int, field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [list(r) for r in rows if any(r)]
    p = field.p
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        if p:
            pr = [(x * inv) % p for x in m[r]]
        else:
            pr = [x * inv for x in m[r]]
        m[r] = pr
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    if p:
                        for k in range(c, ncols):
                            if pr[k]:
                                row[k] = (row[k] - f * pr[k]) % p
                    else:
                        for k in range(c, ncols):
                            if pr[k]:
                                row[k] = row[k] - f * pr[k]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Iterable[Sequence], ncols: int, field: Field) -> int:
    return len(rref(rows, ncols, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field) -> list[list]:
    """Basis of ``{v : rows . v = 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols, field)
    pivset = set(pivots)
    one = field.one()
    p = field.p
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero()] * ncols
        v[f] = one
        for k, pc in enumerate(pivots):
            x = red[k][f]
            if x:
                v[pc] = (-x) % p if p else -x
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence, ncols: int, field: Field) -> list | None:
    """One solution of ``a x = b`` or None."""
    aug = [list(r) + [y] for r, y in zip(a, b)]
    red, piv = rref(aug, ncols + 1, field)
    if piv and piv[-1] == ncols:
        return None
    x = [field.zero()] * ncols
    for k, pc in enumerate(piv):
        x[pc] = red[k][ncols]
    return x


def sparse_kernel(eqs: Iterable[dict], ncols: int, field: Field, with_free: bool = False):
    """Kernel of a sparse system; each equation is ``{col: coeff}``.

    Returns basis vectors as ``{col: value}`` dicts, one per free column, in
    increasing free-column order.  The vector for free column ``f`` is 1 at
    ``f`` and 0 at the other free columns, so coordinates are read off there.
    With ``with_free`` the free columns are returned as well.
    """
    p = field.p
    pivrows: dict[int, dict] = {}
    for eq in eqs:
        row = {c: v for c, v in eq.items() if v}
        while row:
            c = min(row)
            pr = pivrows.get(c)
            if pr is None:
                inv = field.inv(row[c])
                if p:
                    row = {k: (v * inv) % p for k, v in row.items()}
                else:
                    row = {k: v * inv for k, v in row.items()}
                pivrows[c] = row
                break
            f = row[c]
            for k, v in pr.items():
                nv = row.get(k, 0) - f * v
                if p:
                    nv %= p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    # back-substitute so every pivot row is free of other pivot columns
    for c in sorted(pivrows, reverse=True):
        row = pivrows[c]
        for k in sorted(k for k in row if k != c and k in pivrows):
            f = row.get(k)
            if not f:
                continue
            for kk, v in pivrows[k].items():
                nv = row.get(kk, 0) - f * v
                if p:
                    nv %= p
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
    one = field.one()
    basis, free = [], []
    by_col: dict[int, list] = {}
    for c, row in pivrows.items():
        for k, x in row.items():
            if k != c:
                by_col.setdefault(k, []).append((c, x))
    for f in range(ncols):
        if f in pivrows:
            continue
        v = {f: one}
        for c, x in by_col.get(f, ()):
            v[c] = (-x) % p if p else -x
        basis.append(v)
        free.append(f)
    return (basis, free) if with_free else basis


# ----------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of ``field^ambient`` held by its reduced echelon basis.

    The basis rows are in reduced row echelon form, i.e. the basis matrix
    (vectors as columns) is in reduced column echelon form, so equal subspaces
    have identical ``vectors``.
    """

    __slots__ = ("field", "ambient", "vectors", "pivots", "_hash")

    def __init__(self, field: Field, ambient: int, vectors: Iterable[Sequence] = (), _reduced: bool = False):
        self.field = field
        self.ambient = ambient
        if _reduced:
            red, piv = [list(v) for v in vectors], None
        else:
            red, piv = rref(vectors, ambient, field)
        if piv is None:
            piv = [next(i for i, x in enumerate(v) if x) for v in red]
        self.vectors = tuple(tuple(v) for v in red)
        self.pivots = tuple(piv)
        self._hash = None

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), _reduced=True)

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        one = field.one()
        vecs = [[one if i == j else field.zero() for j in range(ambient)] for i in range(ambient)]
        return cls(field, ambient, vecs, _reduced=True)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> Matrix:
        return Matrix.from_rows(transpose(self.vectors, self.ambient), self.field, cols=self.dim)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient == other.ambient and self.vectors == other.vectors)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.ambient, self.vectors))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {list(map(list, self.vectors))})"

    def residue(self, v: Sequence) -> list:
        """``v`` minus its component along the echelon basis."""
        p = self.field.p
        w = list(v)
        for vec, pc in zip(self.vectors, self.pivots):
            f = w[pc]
            if f:
                if p:
                    w = [(a - f * b) % p for a, b in zip(w, vec)]
                else:
                    w = [a - f * b for a, b in zip(w, vec)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.residue(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def coords(self, v: Sequence) -> list:
        """Coordinates of ``v`` (assumed inside) in the echelon basis."""
        return [v[pc] for pc in self.pivots]

    def complement_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def quotient_coords(self, v: Sequence) -> list:
        """Coordinates of ``v`` modulo this subspace w.r.t. the standard complement."""
        w = self.residue(v)
        return [w[c] for c in self.complement_columns()]

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient, list(self.vectors) + list(other.vectors))

    def intersect(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient,
                        nullspace(annihilator(self) + annihilator(other), self.ambient, self.field))


class Echelon:
    """Incrementally built reduced echelon basis with sparse rows.

    Cheap when most added vectors are redundant; :meth:`subspace` gives the
    same canonical basis as :class:`Subspace`.
    """

    def __init__(self, field: Field, ambient: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.ambient = ambient
        self.rows: dict[int, dict[int, object]] = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, vec) -> dict:
        p = self.field.p
        w = {k: x for k, x in (vec.items() if isinstance(vec, dict) else enumerate(vec)) if x}
        for c in [c for c in w if c in self.rows]:
            f = w.get(c)
            if not f:
                continue
            for k, x in self.rows[c].items():
                y = w.get(k, 0) - f * x
                if p:
                    y %= p
                if y:
                    w[k] = y
                else:
                    w.pop(k, None)
        return w

    def contains(self, vec) -> bool:
        return not self._reduce(vec)

    def add(self, vec) -> bool:
        """Add ``vec``; False when it was already in the span."""
        w = self._reduce(vec)
        if not w:
            return False
        p = self.field.p
        c = min(w)
        inv = self.field.inv(w[c])
        w = {k: (x * inv) % p if p else x * inv for k, x in w.items()}
        for row in self.rows.values():
            f = row.get(c)
            if f:
                for k, x in w.items():
                    y = row.get(k, 0) - f * x
                    if p:
                        y %= p
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[c] = w
        return True

    def subspace(self) -> Subspace:
        zero = self.field.zero()
        vecs = []
        for c in sorted(self.rows):
            row = [zero] * self.ambient
            for k, x in self.rows[c].items():
                row[k] = x
            vecs.append(row)
        return Subspace(self.field, self.ambient, vecs, _reduced=True)


def span(field: Field, ambient: int, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace(field, ambient, vectors)


def annihilator(u: Subspace) -> list[list]:
    """Rows ``n`` with ``n . x = 0`` for every ``x`` in ``u``."""
    if u.dim == 0:
        return [list(v) for v in Subspace.full(u.field, u.ambient).vectors]
    return nullspace(u.vectors, u.ambient, u.field)


def image(a: Sequence[Sequence], u: Subspace, target_dim: int) -> Subspace:
    return Subspace(u.field, target_dim, [mat_vec(a, v, u.field) for v in u.vectors])


def preimage(a: Sequence[Sequence], u: Subspace, source_dim: int) -> Subspace:
    """``{v : a v in u}`` for a matrix ``a`` with ``source_dim`` columns."""
    ann = annihilator(u)
    if not ann:
        return Subspace.full(u.field, source_dim)
    rows = mat_mul(ann, a, u.field, ncols=source_dim) if a else [[u.field.zero()] * source_dim for _ in ann]
    return Subspace(u.field, source_dim, nullspace(rows, source_dim, u.field))


def kernel(m: Matrix) -> Subspace:
    """Canonical basis of the null space of ``m``."""
    return Subspace(m.field, m.cols, nullspace(m.to_rows(), m.cols, m.field))


# ----------------------------------------------------------------------
# enumeration and sampling


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(ambient_dim: int, sub_dim: int, field: Field) -> Iterator[Subspace]:
    """Every ``sub_dim``-dimensional subspace of ``F_p^ambient_dim`` exactly once.

    Order: pivot sets in lexicographic order, then free entries in
    lexicographic order of their values.
    """
    if not field.is_prime:
        raise FieldError("subspaces are only enumerable over a prime field")
    if not 0 <= sub_dim <= ambient_dim:
        raise ValueError("need 0 <= sub_dim <= ambient_dim")
    p = field.p
    for pivots in itertools.combinations(range(ambient_dim), sub_dim):
        pivset = set(pivots)
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, ambient_dim) if c not in pivset]
        for values in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * ambient_dim for _ in pivots]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(slots, values):
                rows[r][c] = x
            yield Subspace(field, ambient_dim, rows, _reduced=True)


def random_entry(rng: random.Random, field: Field, bound: int = 10**6):
    if field.p is None:
        return Fraction(rng.randint(-bound, bound))
    return rng.randrange(field.p)


def random_rows(rng: random.Random, rows: int, cols: int, field: Field, bound: int = 10**6) -> list[list]:
    return [[random_entry(rng, field, bound) for _ in range(cols)] for _ in range(rows)]


def random_matrix(rows: int, cols: int, field: Field, rng_seed, bound: int = 10**6) -> Matrix:
    """Uniform random matrix, a deterministic function of ``rng_seed``.

    Over the rationals the entries are integers in ``[-bound, bound]``.
    """
    rng = random.Random(rng_seed)
    return Matrix.from_rows(random_rows(rng, rows, cols, field, bound), field, cols=cols)
