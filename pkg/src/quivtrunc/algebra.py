"""Truncated path algebras ``KQ / <paths of length L>``."""

from __future__ import annotations

from functools import cached_property

from .exactlinalg import QQ, Field
from .quiver import Path, Quiver, all_paths, longest_path_length


class TruncatedAlgebra:
    """The algebra spanned by paths of length ``< L`` with truncated concatenation."""

    def __init__(self, quiver: Quiver, L: int, field: Field = QQ):
        if L < 1:
            raise ValueError("truncation length L must be at least 1")
        self.quiver = quiver
        self.L = L
        self.field = field

    def __repr__(self) -> str:
        return f"TruncatedAlgebra({self.quiver!r}, L={self.L}, field={self.field})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncatedAlgebra) and self.quiver == other.quiver
                and self.L == other.L and self.field == other.field)

    def __hash__(self) -> int:
        return hash((self.quiver, self.L, self.field))

    @property
    def n(self) -> int:
        return self.quiver.n

    def with_L(self, L: int) -> "TruncatedAlgebra":
        return TruncatedAlgebra(self.quiver, L, self.field)

    def with_field(self, field: Field) -> "TruncatedAlgebra":
        return TruncatedAlgebra(self.quiver, self.L, field)

    @cached_property
    def basis(self) -> tuple[Path, ...]:
        return tuple(all_paths(self.quiver, self.L - 1))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _from(self) -> dict[int, tuple[Path, ...]]:
        return {v: tuple(p for p in self.basis if p.start == v) for v in self.quiver.vertices}

    @cached_property
    def _to(self) -> dict[int, tuple[Path, ...]]:
        return {v: tuple(p for p in self.basis if p.end == v) for v in self.quiver.vertices}

    def paths_from(self, i: int) -> tuple[Path, ...]:
        return self._from[i]

    def paths_to(self, i: int) -> tuple[Path, ...]:
        return self._to[i]

    def multiply(self, p: Path, q: Path) -> Path | None:
        """``p q`` (``p`` after ``q``), or None when it vanishes in the truncation."""
        if q.end != p.start or p.length + q.length >= self.L:
            return None
        return p * q

    def loewy_length(self) -> int:
        return loewy_length(self)

    def projective(self, i: int):
        return projective(self, i)

    def injective(self, i: int):
        return injective(self, i)


def loewy_length(alg: TruncatedAlgebra) -> int:
    """``min(L, 1 + longest path)``; a cycle makes the longest path infinite."""
    longest = longest_path_length(alg.quiver)
    return int(min(alg.L, 1 + longest))


def projective(alg: TruncatedAlgebra, i: int):
    """``Lambda_L e_i`` on the basis of paths starting at ``i``."""
    from .modrep import free_module

    rep, _ = free_module(alg, [i])
    return rep


def injective(alg: TruncatedAlgebra, i: int):
    """Dual of the right projective ``e_i Lambda_L``.

    Basis: the duals ``p*`` of paths ``p`` ending at ``i``; ``p*`` sits at
    ``start(p)`` and an arrow ``a`` sends ``p*`` to ``q*`` when ``p = q a``.
    """
    from .modrep import Representation

    if not 1 <= i <= alg.n:
        raise ValueError(f"vertex {i} out of range")
    q = alg.quiver
    paths = alg.paths_to(i)
    at = {v: [p for p in paths if p.start == v] for v in q.vertices}
    index = {p: k for v in q.vertices for k, p in enumerate(at[v])}
    dims = [len(at[v]) for v in q.vertices]
    zero, one = alg.field.zero(), alg.field.one()
    maps = {}
    for a in q.arrows:
        m = [[zero] * dims[a.source - 1] for _ in range(dims[a.target - 1])]
        for p in at[a.source]:
            if p.arrows and p.arrows[-1] == a.id:
                rest = Path(p.arrows[:-1], a.target, p.end)
                m[index[rest]][index[p]] = one
        maps[a.id] = m
    rep = Representation(alg, dims, maps)
    rep.basis_labels = {v: [f"{p}*" for p in at[v]] for v in q.vertices}
    return rep
