"""Small named semi-Hopf and Hopf categories used by the tests, tutorials and CLI."""

from __future__ import annotations

from itertools import permutations, product
from typing import Callable, Mapping

from .coalg import Coalgebra
from .groupoid import cyclic_group, groupoid_from_groups, linearize, monoid_category, pair_groupoid
from .kernel import ExactMatrix, FieldSpec, Q
from .vcat import SemiHopfCategory, VCategory
from .vgraph import VGraph

__all__ = [
    "one_object",
    "sweedler",
    "function_algebra",
    "group_algebra",
    "kz2",
    "pair",
    "monoid_t",
    "hopf_fixtures",
    "semihopf_fixtures",
]

Vec = Mapping[int, object]


def one_object(
    field: FieldSpec,
    dim: int,
    mult: Callable[[int, int], Vec],
    unit: Vec,
    delta: Callable[[int], Mapping[tuple[int, int], object]],
    eps: Callable[[int], object],
    obj: str = "*",
) -> SemiHopfCategory:
    """A bialgebra as a one-object semi-Hopf category, from structure constants."""
    m_cols, d_cols = [], []
    for i in range(dim):
        for j in range(dim):
            col = [0] * dim
            for k, c in mult(i, j).items():
                col[k] = c
            m_cols.append(col)
    for i in range(dim):
        col = [0] * (dim * dim)
        for (a, b), c in delta(i).items():
            col[a * dim + b] = c
        d_cols.append(col)
    u = [0] * dim
    for k, c in unit.items():
        u[k] = c
    graph = VGraph((obj,), {(obj, obj): dim})
    cat = VCategory(
        field,
        graph,
        {(obj, obj, obj): ExactMatrix.from_columns(field, m_cols, dim)},
        {obj: ExactMatrix.column(field, u)},
    )
    co = Coalgebra(
        field,
        dim,
        ExactMatrix.from_columns(field, d_cols, dim * dim),
        ExactMatrix.from_rows(field, [[eps(i) for i in range(dim)]], dim),
    )
    return SemiHopfCategory(cat, {(obj, obj): co})


def sweedler(field: FieldSpec = Q) -> SemiHopfCategory:
    """Sweedler's four-dimensional Hopf algebra.

    Basis ``g^i x^j`` at index ``i + 2 j``: ``1, g, x, gx``, with ``g^2 = 1``,
    ``x^2 = 0``, ``x g = -g x``, ``Delta x = x (x) 1 + g (x) x``.
    """

    def mult(a: int, b: int) -> Vec:
        i, j = a % 2, a // 2
        k, l = b % 2, b // 2
        if j + l > 1:
            return {}
        return {(i + k) % 2 + 2 * (j + l): (-1) ** (j * k)}

    def delta(a: int) -> dict:
        # Delta(g^i x^j) = Delta(g)^i Delta(x)^j
        i, j = a % 2, a // 2
        if j == 0:
            return {(i, i): 1}
        # g^i x (x) g^i + g^(i+1) (x) g^i x
        return {(2 + i, i): 1, ((i + 1) % 2, 2 + i): 1}

    return one_object(field, 4, mult, {0: 1}, delta, lambda a: 1 if a < 2 else 0)


def _s3() -> tuple[list[tuple[int, ...]], Callable]:
    els = sorted(permutations(range(3)))
    idx = {p: n for n, p in enumerate(els)}

    def mul(a: int, b: int) -> int:
        p, q = els[a], els[b]
        return idx[tuple(q[p[t]] for t in range(3))]

    return els, mul


def group_algebra(field: FieldSpec, order: int, mul: Callable[[int, int], int], e: int = 0) -> SemiHopfCategory:
    return one_object(field, order, lambda a, b: {mul(a, b): 1}, {e: 1}, lambda a: {(a, a): 1}, lambda a: 1)


def function_algebra(field: FieldSpec = Q) -> SemiHopfCategory:
    """Functions on the symmetric group S3: pointwise product, coproduct dual to the group law."""
    els, mul = _s3()
    n = len(els)
    return one_object(
        field,
        n,
        lambda a, b: {a: 1} if a == b else {},
        {k: 1 for k in range(n)},
        lambda g: {(a, b): 1 for a, b in product(range(n), repeat=2) if mul(a, b) == g},
        lambda a: 1 if a == 0 else 0,
    )


def kz2(field: FieldSpec = Q) -> SemiHopfCategory:
    return linearize(cyclic_group(2), field)


def pair(n: int = 2, field: FieldSpec = Q) -> SemiHopfCategory:
    return linearize(pair_groupoid([f"x{i}" for i in range(n)]), field)


def monoid_t(field: FieldSpec = Q) -> SemiHopfCategory:
    """The monoid ``{1, t}`` with ``t t = t``: a semi-Hopf category without antipode."""
    table = {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "t"}
    return linearize(monoid_category(["1", "t"], table, "1"), field)


def hopf_fixtures(field: FieldSpec = Q) -> dict[str, SemiHopfCategory]:
    """Fixtures that admit an antipode."""
    els, mul = _s3()
    out = {
        "kZ2": kz2(field),
        "kZ3": linearize(cyclic_group(3), field),
        "kS3": group_algebra(field, len(els), mul),
        "pair2": pair(2, field),
        "pair3": pair(3, field),
        "groupoid_mixed": linearize(groupoid_from_groups([(["a", "b"], 2), (["c"], 3)]), field),
        "function_S3": function_algebra(field),
    }
    if field.p != 2:
        out["sweedler"] = sweedler(field)
    return out


def semihopf_fixtures(field: FieldSpec = Q) -> dict[str, SemiHopfCategory]:
    """All fixtures, including ones without antipode."""
    out = hopf_fixtures(field)
    out["monoid_t"] = monoid_t(field)
    return out
