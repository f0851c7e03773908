"""Finitely generated modules over Z and Z/n, presented by integer matrices.

A module with g generators is ``Z^g`` modulo the columns of its relation
matrix (plus ``n Z^g`` over Z/n).  Everything is decided through the Smith
normal form: invariant factors, lattice membership, integer kernels and
hence injectivity and joint monicity of module maps.

These are the finite stand-ins for testing flatness and the "preserves
jointly monic families" condition on tensor products.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .kernel import ExactMatrix, IntMatrix, kernel_basis, kron, snf, vstack

__all__ = [
    "FgModule",
    "ModMap",
    "free_module",
    "cyclic_module",
    "tensor_fg",
    "tensor_map",
    "in_lattice",
    "integer_kernel",
    "is_injective",
    "is_jointly_monic",
    "flatness_test_finite_ring",
    "preserves_jointly_monic",
    "linear_jointly_monic",
    "tensor_families",
    "divisors",
]


def _hcat(mats: Sequence[IntMatrix], rows: int) -> IntMatrix:
    cols = sum(m.cols for m in mats)
    out = [[] for _ in range(rows)]
    for m in mats:
        for i, r in enumerate(m.tolist()):
            out[i].extend(r)
    return IntMatrix.from_rows(out, cols) if rows else IntMatrix(0, cols, ())


def _ikron(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    rows = []
    for i in range(A.rows):
        for k in range(B.rows):
            rows.append([A[i, j] * B[k, l] for j in range(A.cols) for l in range(B.cols)])
    return IntMatrix.from_rows(rows, A.cols * B.cols) if rows else IntMatrix(0, A.cols * B.cols, ())


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class FgModule:
    """``ring`` is 0 for Z and n >= 2 for Z/n; ``relations`` is gens x rels."""

    ring: int
    relations: IntMatrix

    def __post_init__(self):
        if self.ring < 0 or self.ring == 1:
            raise ValueError("ring must be 0 (for Z) or n >= 2 (for Z/n)")

    @property
    def gens(self) -> int:
        return self.relations.rows

    @cached_property
    def full_relations(self) -> IntMatrix:
        """Relations including ``n e_i`` over Z/n."""
        if self.ring == 0:
            return self.relations
        nI = IntMatrix.from_rows([[self.ring * (i == j) for j in range(self.gens)] for i in range(self.gens)], self.gens)
        return _hcat([self.relations, nI], self.gens)

    @cached_property
    def _snf(self):
        return snf(self.full_relations)

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        """Non-unit invariant factors, 0 standing for a free summand Z."""
        U, D, V = self._snf
        diag = D.diagonal() + [0] * (self.gens - min(D.rows, D.cols))
        return tuple(d for d in diag if d != 1)

    def is_zero(self) -> bool:
        return not self.invariant_factors

    def order(self) -> int | None:
        """Number of elements, None if infinite."""
        out = 1
        for d in self.invariant_factors:
            if d == 0:
                return None
            out *= d
        return out

    def canonical(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of the class of the integer vector x."""
        U, D, V = self._snf
        y = [sum(U[i, k] * x[k] for k in range(self.gens)) for i in range(self.gens)]
        diag = D.diagonal() + [0] * (self.gens - min(D.rows, D.cols))
        return tuple(v % d if d else v for v, d in zip(y, diag))

    def contains_zero(self, x: Sequence[int]) -> bool:
        return in_lattice(self.full_relations, x)

    def __str__(self) -> str:
        ring = "Z" if self.ring == 0 else f"Z/{self.ring}"
        parts = ["Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors] or ["0"]
        return " + ".join(parts) + f" over {ring}"


def free_module(rank: int, ring: int = 0) -> FgModule:
    return FgModule(ring, IntMatrix(rank, 0, ()))


def cyclic_module(d: int, ring: int = 0) -> FgModule:
    """``Z/d`` (or ``ring/(d)``) on one generator."""
    return FgModule(ring, IntMatrix.from_rows([[d]]))


def in_lattice(P: IntMatrix, v: Sequence[int]) -> bool:
    """Is v an integer combination of the columns of P?"""
    if P.cols == 0:
        return all(x == 0 for x in v)
    U, D, V = snf(P)
    w = [sum(U[i, k] * v[k] for k in range(P.rows)) for i in range(P.rows)]
    diag = D.diagonal()
    for i, x in enumerate(w):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if x != 0:
                return False
        elif x % d:
            return False
    return True


def integer_kernel(M: IntMatrix) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x in Z^cols : M x = 0}``."""
    if M.cols == 0:
        return []
    if M.rows == 0:
        return [tuple(int(i == j) for i in range(M.cols)) for j in range(M.cols)]
    U, D, V = snf(M)
    rank = sum(1 for d in D.diagonal() if d != 0)
    return [tuple(V[i, j] for i in range(M.cols)) for j in range(rank, M.cols)]


@dataclass(frozen=True)
class ModMap:
    """``matrix`` (target gens x source gens) sends generators to target elements."""

    source: FgModule
    target: FgModule
    matrix: IntMatrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.target.gens, self.source.gens):
            raise ValueError("map matrix has the wrong shape")
        if self.source.ring != self.target.ring:
            raise ValueError("source and target live over different rings")
        R = self.source.full_relations
        for j in range(R.cols):
            col = [R[i, j] for i in range(R.rows)]
            img = [sum(self.matrix[r, k] * col[k] for k in range(len(col))) for r in range(self.matrix.rows)]
            if not self.target.contains_zero(img):
                raise ValueError(f"relation {j} of the source does not map to zero")


def _common_kernel(family: Sequence[ModMap]) -> list[tuple[int, ...]]:
    """Lattice of x in Z^g (g = source gens) with every map sending x into its target relations."""
    src = family[0].source
    g = src.gens
    extra = sum(m.target.full_relations.cols for m in family)
    rows = []
    offset = 0
    for m in family:
        P = m.target.full_relations
        for r in range(m.target.gens):
            row = [m.matrix[r, k] for k in range(g)] + [0] * extra
            for c in range(P.cols):
                row[g + offset + c] = -P[r, c]
            rows.append(row)
        offset += P.cols
    big = IntMatrix.from_rows(rows, g + extra) if rows else IntMatrix(0, g + extra, ())
    return [v[:g] for v in integer_kernel(big)]


def _normalize(v: tuple[int, ...]) -> tuple[int, ...]:
    lead = next((x for x in v if x), 0)
    return tuple(-x for x in v) if lead < 0 else v


def is_jointly_monic(family: Sequence[ModMap], source: FgModule | None = None) -> tuple[bool, tuple[int, ...] | None]:
    """Do the kernels of the family intersect in zero?  Returns a witness element otherwise.

    An empty family is jointly monic only on the zero module.
    """
    if not family:
        if source is None:
            raise ValueError("an empty family needs its source")
        if source.is_zero():
            return True, None
        for i in range(source.gens):
            e = tuple(int(k == i) for k in range(source.gens))
            if not source.contains_zero(e):
                return False, e
        raise AssertionError("nonzero module with zero generators")  # pragma: no cover
    src = family[0].source
    if any(m.source != src for m in family):
        raise ValueError("family members must share their source")
    for v in _common_kernel(family):
        if not src.contains_zero(v):
            return False, _normalize(v)
    return True, None


def is_injective(f: ModMap) -> tuple[bool, tuple[int, ...] | None]:
    return is_jointly_monic([f])


def tensor_fg(M: FgModule, N: FgModule) -> FgModule:
    """Presentation of ``M (x) N``: relations ``R_M (x) 1`` and ``1 (x) R_N``."""
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    I_M, I_N = IntMatrix.identity(M.gens), IntMatrix.identity(N.gens)
    rel = _hcat([_ikron(M.relations, I_N), _ikron(I_M, N.relations)], M.gens * N.gens)
    return FgModule(M.ring, rel)


def tensor_map(f: ModMap, M: FgModule) -> ModMap:
    """``f (x) id_M``."""
    return ModMap(tensor_fg(f.source, M), tensor_fg(f.target, M), _ikron(f.matrix, IntMatrix.identity(M.gens)))


def flatness_test_finite_ring(M: FgModule) -> tuple[bool, int | None]:
    """Ideal criterion over Z/n: ``I (x) M -> M`` injective for every ideal ``I = (d)``.

    Returns ``(True, None)`` or ``(False, d)`` for the first failing divisor d.
    """
    n = M.ring
    if n == 0:
        raise ValueError("flatness over Z has infinitely many ideals to test; unsupported")
    for d in divisors(n):
        if d == n:
            continue
        ideal = cyclic_module(n // d, n)  # (d) is isomorphic to Z/(n/d)
        inc = ModMap(ideal, free_module(1, n), IntMatrix.from_rows([[d]]))
        ok, _ = is_injective(tensor_map(inc, M))
        if not ok:
            return False, d
    return True, None


def preserves_jointly_monic(M: FgModule, family: Sequence[ModMap]) -> tuple[bool, tuple[int, ...] | None]:
    """Is ``{f (x) M}`` jointly monic for the jointly monic family ``{f}``?"""
    ok, w = is_jointly_monic(family)
    if not ok:
        raise ValueError(f"the family is not jointly monic (witness {w})")
    return is_jointly_monic([tensor_map(f, M) for f in family])


# -- the same questions over a field -------------------------------------------


def linear_jointly_monic(maps: Sequence[ExactMatrix]) -> bool:
    """Linear maps with a common source: is the intersection of their kernels zero?"""
    if not maps:
        raise ValueError("empty family")
    return not kernel_basis(vstack(maps[0].field, list(maps), maps[0].cols))


def tensor_families(fs: Sequence[ExactMatrix], gs: Sequence[ExactMatrix]) -> list[ExactMatrix]:
    """The doubly indexed family ``f_i (x) g_j``."""
    return [kron(f, g) for f in fs for g in gs]
