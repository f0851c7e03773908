"""V-categories and semi-Hopf categories over a field.

Composition follows path order: ``m[(x, y, z)]`` maps ``A_xy (x) A_yz`` to
``A_xz``.  A semi-Hopf category adds a coalgebra on every hom such that
composition and units are coalgebra maps.

The free V-category on a graph is infinite as soon as the graph has a
cycle, so it is only built up to a chain length ``L``
(:class:`TruncatedFreeCat`).  Compositions that would exceed ``L`` raise
:class:`TruncationError` instead of being dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Mapping

import numpy as np

from .coalg import (
    Coalgebra,
    Violation,
    check_coalgebra,
    cofree_factorization,
    cop,
    first_bad_column,
    is_coalgebra_morphism,
    largest_coideal_in,
)
from .kernel import (
    ExactMatrix,
    FieldSpec,
    Q,
    Subspace,
    kron,
    permute_factors,
    swap_matrix,
    vstack,
)
from .vgraph import VGraph, VGraphMorphism, opposite_graph

__all__ = [
    "VCategory",
    "SemiHopfCategory",
    "CoalgebraGraph",
    "TruncationError",
    "TruncatedFreeCat",
    "check_vcategory",
    "check_semihopf",
    "check_semihopf_morphism",
    "check_truncated",
    "free_vcategory_truncated",
    "free_semihopf_truncated",
    "variant",
    "CoreflectedImage",
    "coreflect_image_semihopf",
    "mult_shuffle",
    "comultiplicativity_defect",
]


class TruncationError(ArithmeticError):
    """A composition whose result is longer than the truncation length."""


def mult_shuffle(field: FieldSpec, a: int, b: int) -> ExactMatrix:
    """``(a (x) a') (x) (b (x) b') -> (a (x) b) (x) (a' (x) b')``: the middle symmetry."""
    return permute_factors(field, [a, a, b, b], [0, 2, 1, 3])


@dataclass(frozen=True, eq=False)
class VCategory:
    field: FieldSpec
    graph: VGraph
    m: Mapping[tuple[str, str, str], ExactMatrix]
    j: Mapping[str, ExactMatrix]

    def __post_init__(self):
        g = self.graph
        m = dict(self.m)
        for x, y, z in product(g.objects, repeat=3):
            shape = (g.dim(x, z), g.dim(x, y) * g.dim(y, z))
            M = m.get((x, y, z))
            if M is None:
                if 0 in shape:
                    m[(x, y, z)] = ExactMatrix.zeros(self.field, *shape)
                    continue
                raise ValueError(f"missing composition at {(x, y, z)}")
            if M.shape != shape:
                raise ValueError(f"composition {(x, y, z)} has shape {M.shape}, expected {shape}")
        extra = set(m) - set(product(g.objects, repeat=3))
        if extra:
            raise ValueError(f"compositions given for unknown triples {sorted(extra)}")
        j = dict(self.j)
        for x in g.objects:
            if x not in j:
                raise ValueError(f"missing unit at {x}")
            if j[x].shape != (g.dim(x, x), 1):
                raise ValueError(f"unit at {x} has shape {j[x].shape}, expected {(g.dim(x, x), 1)}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "j", j)

    @property
    def objects(self) -> tuple[str, ...]:
        return self.graph.objects

    def dim(self, x: str, y: str) -> int:
        return self.graph.dim(x, y)

    def __eq__(self, other):
        if not isinstance(other, VCategory):
            return NotImplemented
        return (
            self.field == other.field
            and self.graph == other.graph
            and all(self.m[k] == other.m[k] for k in self.m)
            and all(self.j[x] == other.j[x] for x in self.objects)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class SemiHopfCategory:
    cat: VCategory
    coalgebras: Mapping[tuple[str, str], Coalgebra]

    def __post_init__(self):
        co = dict(self.coalgebras)
        for x, y in self.cat.graph.pairs():
            d = self.cat.dim(x, y)
            C = co.get((x, y))
            if C is None:
                if d == 0:
                    co[(x, y)] = Coalgebra(
                        self.field, 0, ExactMatrix.zeros(self.field, 0, 0), ExactMatrix.zeros(self.field, 1, 0)
                    )
                    continue
                raise ValueError(f"missing coalgebra at {(x, y)}")
            if C.dim != d:
                raise ValueError(f"coalgebra at {(x, y)} has dimension {C.dim}, hom has {d}")
        object.__setattr__(self, "coalgebras", co)

    @property
    def field(self) -> FieldSpec:
        return self.cat.field

    @property
    def graph(self) -> VGraph:
        return self.cat.graph

    @property
    def objects(self) -> tuple[str, ...]:
        return self.cat.objects

    def dim(self, x: str, y: str) -> int:
        return self.cat.dim(x, y)

    def m(self, x: str, y: str, z: str) -> ExactMatrix:
        return self.cat.m[(x, y, z)]

    def j(self, x: str) -> ExactMatrix:
        return self.cat.j[x]

    def delta(self, x: str, y: str) -> ExactMatrix:
        return self.coalgebras[(x, y)].delta

    def eps(self, x: str, y: str) -> ExactMatrix:
        return self.coalgebras[(x, y)].epsilon

    def __eq__(self, other):
        if not isinstance(other, SemiHopfCategory):
            return NotImplemented
        return self.cat == other.cat and all(
            self.coalgebras[p].delta == other.coalgebras[p].delta
            and self.coalgebras[p].epsilon == other.coalgebras[p].epsilon
            for p in self.graph.pairs()
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class CoalgebraGraph:
    """A V-graph whose homs carry coalgebras: the input of the free semi-Hopf category."""

    graph: VGraph
    coalgebras: Mapping[tuple[str, str], Coalgebra]
    field: FieldSpec = Q

    def __post_init__(self):
        for p in self.graph.pairs():
            d = self.graph.dim(*p)
            if d and (p not in self.coalgebras or self.coalgebras[p].dim != d):
                raise ValueError(f"coalgebra at {p} missing or of the wrong dimension")


# -- axiom checks ------------------------------------------------------------


def check_vcategory(A: VCategory) -> list[Violation]:
    f, g = A.field, A.graph
    out = []
    I = lambda x, y: ExactMatrix.identity(f, g.dim(x, y))  # noqa: E731
    for x, y, z, w in product(g.objects, repeat=4):
        if g.dim(x, w) == 0 or 0 in (g.dim(x, y), g.dim(y, z), g.dim(z, w)):
            continue
        lhs = A.m[(x, z, w)] @ kron(A.m[(x, y, z)], I(z, w))
        rhs = A.m[(x, y, w)] @ kron(I(x, y), A.m[(y, z, w)])
        j = first_bad_column(lhs, rhs)
        if j is not None:
            out.append(Violation("associativity", (x, y, z, w), j))
    for x, y in g.pairs():
        if g.dim(x, y) == 0:
            continue
        j = first_bad_column(A.m[(x, x, y)] @ kron(A.j[x], I(x, y)), I(x, y))
        if j is not None:
            out.append(Violation("left unit", (x, y), j))
        j = first_bad_column(A.m[(x, y, y)] @ kron(I(x, y), A.j[y]), I(x, y))
        if j is not None:
            out.append(Violation("right unit", (x, y), j))
    return out


def comultiplicativity_defect(
    field: FieldSpec, m: ExactMatrix, d_out: ExactMatrix, d_left: ExactMatrix, d_right: ExactMatrix
) -> int | None:
    """First column ``u (x) v`` where ``Delta(m(u (x) v)) != (m (x) m)(Delta u, Delta v)`` shuffled.

    For each basis pair the right side equals ``M (D_u (x) D_v) M^T`` as a
    c x c array, where ``D_u`` is ``Delta(u)`` reshaped to a square.
    """
    c = m.rows
    a = int(round(d_left.rows ** 0.5))
    b = int(round(d_right.rows ** 0.5))
    M = m.array
    lhs = (d_out @ m).array
    for u in range(a):
        Du = d_left.array[:, u].reshape(a, a)
        for v in range(b):
            Dv = d_right.array[:, v].reshape(b, b)
            rhs = M @ np.kron(Du, Dv) @ M.T
            diff = lhs[:, u * b + v].reshape(c, c) - rhs
            if field.p is not None:
                diff = diff % field.p
            if any(t != 0 for t in diff.ravel()):
                return u * b + v
    return None


def check_semihopf(A: SemiHopfCategory) -> list[Violation]:
    """Category axioms, coalgebra axioms per hom, and their compatibility."""
    out = check_vcategory(A.cat)
    f, g = A.field, A.graph
    for p in g.pairs():
        out.extend(v._replace(where=p) for v in check_coalgebra(A.coalgebras[p]))
    for x, y, z in product(g.objects, repeat=3):
        a, b = g.dim(x, y), g.dim(y, z)
        if a * b == 0:
            continue
        m = A.m(x, y, z)
        j = comultiplicativity_defect(f, m, A.delta(x, z), A.delta(x, y), A.delta(y, z))
        if j is not None:
            out.append(Violation("comultiplicativity", (x, y, z), j))
        j = first_bad_column(A.eps(x, z) @ m, kron(A.eps(x, y), A.eps(y, z)))
        if j is not None:
            out.append(Violation("counit multiplicativity", (x, y, z), j))
    for x in g.objects:
        jx = A.j(x)
        if jx.rows == 0:
            out.append(Violation("unit grouplike", (x,), None))
            continue
        if A.delta(x, x) @ jx != kron(jx, jx):
            out.append(Violation("unit grouplike", (x,), None))
        if (A.eps(x, x) @ jx)[0, 0] != f.one:
            out.append(Violation("unit counit", (x,), None))
    return out


def check_semihopf_morphism(F: VGraphMorphism, A: SemiHopfCategory, B: SemiHopfCategory) -> list[Violation]:
    """Functoriality plus coalgebra-map conditions for ``F: A -> B``."""
    out = []
    if F.source != A.graph or F.target != B.graph:
        return [Violation("graph mismatch", ())]
    f0 = F.f0
    for x, y, z in product(A.objects, repeat=3):
        if A.dim(x, y) * A.dim(y, z) == 0:
            continue
        lhs = F.components[(x, z)] @ A.m(x, y, z)
        rhs = B.m(f0[x], f0[y], f0[z]) @ kron(F.components[(x, y)], F.components[(y, z)])
        j = first_bad_column(lhs, rhs)
        if j is not None:
            out.append(Violation("functoriality", (x, y, z), j))
    for x in A.objects:
        if F.components[(x, x)] @ A.j(x) != B.j(f0[x]):
            out.append(Violation("unit preservation", (x,), None))
    for x, y in A.graph.pairs():
        if not is_coalgebra_morphism(F.components[(x, y)], A.coalgebras[(x, y)], B.coalgebras[(f0[x], f0[y])]):
            out.append(Violation("coalgebra map", (x, y), None))
    return out


# -- variants ----------------------------------------------------------------


def _op_cat(A: VCategory) -> VCategory:
    g = A.graph
    m = {}
    for x, y, z in product(g.objects, repeat=3):
        # A'_xy (x) A'_yz = A_yx (x) A_zy  ->  A_zy (x) A_yx  ->  A_zx = A'_xz
        m[(x, y, z)] = A.m[(z, y, x)] @ swap_matrix(A.field, g.dim(y, x), g.dim(z, y))
    return VCategory(A.field, opposite_graph(g), m, A.j)


def variant(A: SemiHopfCategory, which: str) -> SemiHopfCategory:
    """Opposite (``op``), co-opposite (``cop``) or both (``opcop``)."""
    if which not in ("op", "cop", "opcop"):
        raise ValueError(f"unknown variant {which!r}")
    cat, co = A.cat, dict(A.coalgebras)
    if "op" in which.replace("cop", ""):
        cat = _op_cat(cat)
        co = {(x, y): co[(y, x)] for x, y in A.graph.pairs()}
    if "cop" in which:
        co = {p: cop(C) for p, C in co.items()}
    return SemiHopfCategory(cat, co)


# -- truncated free constructions --------------------------------------------


@dataclass(frozen=True, eq=False)
class TruncatedFreeCat:
    """Chains of composable edges up to length ``L``.

    The hom ``(x, y)`` is the direct sum over chains ``x = z_0, ..., z_l = y``
    of ``G_{z_0 z_1} (x) ... (x) G_{z_{l-1} z_l}``, with the length-0 chain
    (the unit) present only when ``x == y``.  Basis order: chain length,
    then chain in object order, then the tensor index.
    """

    field: FieldSpec
    base: VGraph
    L: int
    chains: Mapping[tuple[str, str], tuple[tuple[str, ...], ...]]
    offsets: Mapping[tuple[str, str], tuple[int, ...]]
    coalgebras: Mapping[tuple[str, str], Coalgebra] | None = None

    @property
    def objects(self) -> tuple[str, ...]:
        return self.base.objects

    def chain_dim(self, chain: tuple[str, ...]) -> int:
        d = 1
        for a, b in zip(chain, chain[1:]):
            d *= self.base.dim(a, b)
        return d

    def dim(self, x: str, y: str) -> int:
        cs = self.chains[(x, y)]
        return self.offsets[(x, y)][-1] + self.chain_dim(cs[-1]) if cs else 0

    @property
    def graph(self) -> VGraph:
        return VGraph(self.objects, {p: self.dim(*p) for p in self.base.pairs()})

    def bucket_dims(self) -> dict[tuple[str, str, int], int]:
        out = {}
        for (x, y), cs in self.chains.items():
            for l in range(self.L + 1):
                out[(x, y, l)] = sum(self.chain_dim(c) for c in cs if len(c) - 1 == l)
        return out

    def basis(self, x: str, y: str) -> list[tuple[tuple[str, ...], tuple[int, ...]]]:
        """Basis elements as ``(chain, letter indices)``."""
        out = []
        for c in self.chains[(x, y)]:
            dims = [self.base.dim(a, b) for a, b in zip(c, c[1:])]
            out.extend((c, idx) for idx in product(*[range(d) for d in dims]))
        return out

    def length(self, x: str, y: str, i: int) -> int:
        """Chain length of basis vector ``i`` of hom ``(x, y)``."""
        offs = self.offsets[(x, y)]
        k = max(t for t in range(len(offs)) if offs[t] <= i)
        return len(self.chains[(x, y)][k]) - 1

    def index(self, chain: tuple[str, ...], idx: tuple[int, ...]) -> int:
        key = (chain[0], chain[-1])
        k = self.chains[key].index(chain)
        flat = 0
        for (a, b), i in zip(zip(chain, chain[1:]), idx):
            flat = flat * self.base.dim(a, b) + i
        return self.offsets[key][k] + flat

    def j(self, x: str) -> ExactMatrix:
        return ExactMatrix.unit_vector(self.field, self.dim(x, x), self.index((x,), ()))

    def compose_partial(self, x: str, y: str, z: str) -> tuple[ExactMatrix, list[int]]:
        """Composition matrix with overflowing columns left zero, plus their indices."""
        f = self.field
        dxy, dyz, dxz = self.dim(x, y), self.dim(y, z), self.dim(x, z)
        cols, undefined = [], []
        for u, (c1, i1) in enumerate(self.basis(x, y)):
            for v, (c2, i2) in enumerate(self.basis(y, z)):
                col = [0] * dxz
                if len(c1) + len(c2) - 2 > self.L:
                    undefined.append(u * dyz + v)
                else:
                    col[self.index(c1 + c2[1:], i1 + i2)] = 1
                cols.append(col)
        return ExactMatrix.from_columns(f, cols, dxz) if cols else ExactMatrix.zeros(f, dxz, dxy * dyz), undefined

    def compose(self, x: str, y: str, z: str) -> ExactMatrix:
        M, undefined = self.compose_partial(x, y, z)
        if undefined:
            raise TruncationError(f"composition {(x, y, z)} exceeds length {self.L} at columns {undefined[:5]}")
        return M

    def _letter_delta(self, a: str, b: str) -> list[dict[tuple[int, int], object]]:
        C = self.coalgebras[(a, b)]
        n = C.dim
        return [{divmod(r, n): C.delta[r, k] for r in range(n * n) if C.delta[r, k]} for k in range(n)]

    def delta_label(self, chain: tuple[str, ...], idx: tuple[int, ...]) -> dict:
        """Comultiplication of one basis label: ``{(idx1, idx2): coeff}`` over the same chain."""
        if self.coalgebras is None:
            raise ValueError("no coalgebra structure on the base graph")
        f = self.field
        terms = {((), ()): f.one}
        for (a, b), i in zip(zip(chain, chain[1:]), idx):
            col = self._letter_delta(a, b)[i]
            nxt: dict = {}
            for (l, r), c in terms.items():
                for (p, q), d in col.items():
                    key = (l + (p,), r + (q,))
                    nxt[key] = nxt.get(key, f.zero) + c * d
            terms = {k: f(v) for k, v in nxt.items() if f(v)}
        return terms

    def epsilon_label(self, chain: tuple[str, ...], idx: tuple[int, ...]):
        if self.coalgebras is None:
            raise ValueError("no coalgebra structure on the base graph")
        v = self.field.one
        for (a, b), i in zip(zip(chain, chain[1:]), idx):
            v = v * self.coalgebras[(a, b)].epsilon[0, i]
        return self.field(v)

    def delta(self, x: str, y: str) -> ExactMatrix:
        """Chainwise tensor product of the letter comultiplications."""
        f = self.field
        d = self.dim(x, y)
        a = ExactMatrix.zeros(f, d * d, d).array.copy()
        for k, (c, i) in enumerate(self.basis(x, y)):
            for (l, r), v in self.delta_label(c, i).items():
                a[self.index(c, l) * d + self.index(c, r), k] = v
        return ExactMatrix(f, a, _trusted=True)

    def epsilon(self, x: str, y: str) -> ExactMatrix:
        row = [self.epsilon_label(c, i) for c, i in self.basis(x, y)]
        return ExactMatrix.from_rows(self.field, [row], len(row)) if row else ExactMatrix.zeros(self.field, 1, 0)

    def coalgebra(self, x: str, y: str) -> Coalgebra:
        return Coalgebra(self.field, self.dim(x, y), self.delta(x, y), self.epsilon(x, y))


def _chains(G: VGraph, L: int) -> dict[tuple[str, str], list[tuple[str, ...]]]:
    out = {p: [] for p in G.pairs()}
    layer = [(x,) for x in G.objects]
    for _ in range(L + 1):
        for c in layer:
            out[(c[0], c[-1])].append(c)
        layer = [c + (z,) for c in layer for z in G.objects if G.dim(c[-1], z) > 0]
    return out


def free_vcategory_truncated(G: VGraph, L: int, field: FieldSpec = Q) -> TruncatedFreeCat:
    if L < 0:
        raise ValueError("L must be non-negative")
    return _build_free(G, L, field, None)


def _build_free(G, L, field, coalgebras):
    chains = _chains(G, L)
    offsets = {}
    for p, cs in chains.items():
        offs, acc = [], 0
        for c in cs:
            offs.append(acc)
            d = 1
            for a, b in zip(c, c[1:]):
                d *= G.dim(a, b)
            acc += d
        offsets[p] = tuple(offs)
    return TruncatedFreeCat(field, G, L, {p: tuple(c) for p, c in chains.items()}, offsets, coalgebras)


def free_semihopf_truncated(G: CoalgebraGraph, L: int) -> TruncatedFreeCat:
    if L < 0:
        raise ValueError("L must be non-negative")
    for p, C in G.coalgebras.items():
        bad = check_coalgebra(C)
        if bad:
            raise ValueError(f"letter coalgebra at {p} is invalid: {bad[0]}")
    return _build_free(G.graph, L, G.field, dict(G.coalgebras))


def check_truncated(T: TruncatedFreeCat) -> list[Violation]:
    """Semi-Hopf axioms restricted to inputs whose products stay within ``L``.

    Associativity and comultiplicativity are tested on basis labels of total
    length at most ``L``; units, coalgebra axioms and grouplike units on
    everything.
    """
    f = T.field
    out = []
    objs = T.objects
    for x, y, z, w in product(objs, repeat=4):
        for (c1, i1), (c2, i2), (c3, i3) in product(T.basis(x, y), T.basis(y, z), T.basis(z, w)):
            if len(c1) + len(c2) + len(c3) - 3 > T.L:
                continue
            left = T.index(*T_concat(T_concat((c1, i1), (c2, i2)), (c3, i3)))
            right = T.index(*T_concat((c1, i1), T_concat((c2, i2), (c3, i3))))
            if left != right:
                out.append(Violation("associativity", (x, y, z, w), T.index(c1, i1)))
    for x, y in T.base.pairs():
        for c, i in T.basis(x, y):
            k = T.index(c, i)
            if T.index(*T_concat(((x,), ()), (c, i))) != k:
                out.append(Violation("left unit", (x, y), k))
            if T.index(*T_concat((c, i), ((y,), ()))) != k:
                out.append(Violation("right unit", (x, y), k))
    if T.coalgebras is None:
        return out
    for x, y in T.base.pairs():
        out.extend(v._replace(where=(x, y)) for v in check_coalgebra(T.coalgebra(x, y)))
    for x, y, z in product(objs, repeat=3):
        dyz = T.dim(y, z)
        for u, (c1, i1) in enumerate(T.basis(x, y)):
            for v, (c2, i2) in enumerate(T.basis(y, z)):
                if len(c1) + len(c2) - 2 > T.L:
                    continue
                c, i = T_concat((c1, i1), (c2, i2))
                lhs = T.delta_label(c, i)
                rhs: dict = {}
                d1, d2 = T.delta_label(c1, i1), T.delta_label(c2, i2)
                for (l1, r1), a in d1.items():
                    for (l2, r2), b in d2.items():
                        key = (l1 + l2, r1 + r2)
                        rhs[key] = rhs.get(key, f.zero) + a * b
                rhs = {k: f(val) for k, val in rhs.items() if f(val)}
                if lhs != rhs:
                    out.append(Violation("comultiplicativity", (x, y, z), u * dyz + v))
                if T.epsilon_label(c, i) != f(T.epsilon_label(c1, i1) * T.epsilon_label(c2, i2)):
                    out.append(Violation("counit multiplicativity", (x, y, z), u * dyz + v))
    for x in objs:
        jx = T.j(x)
        if T.delta(x, x) @ jx != kron(jx, jx) or (T.epsilon(x, x) @ jx)[0, 0] != f.one:
            out.append(Violation("unit grouplike", (x,), None))
    return out


def T_concat(u, v):
    """Concatenate two ``(chain, indices)`` basis labels."""
    (c1, i1), (c2, i2) = u, v
    if c1[-1] != c2[0]:
        raise ValueError("chains do not compose")
    return c1 + c2[1:], i1 + i2


# -- couniversal image -------------------------------------------------------


@dataclass(frozen=True)
class CoreflectedImage:
    """Image of ``C`` in the cofree semi-Hopf category over a V-category.

    ``kernels[(x, y)]`` is the hom-wise kernel, ``image`` the quotient with
    its induced structure, ``quotient_maps``/``sections`` the canonical maps
    and ``components[(x, y)]`` the maps ``gamma_k`` restricted to the image.
    """

    image: SemiHopfCategory
    kernels: dict
    quotient_maps: dict
    sections: dict
    components: dict = dc_field(default_factory=dict)


def _ideal_step(C: SemiHopfCategory, J: dict) -> dict:
    f, objs = C.field, C.objects
    pis = {p: J[p].quotient_map() for p in J}
    out = {}
    for x, y in C.graph.pairs():
        rows = []
        dxy = C.dim(x, y)
        for z in objs:
            dyz, dzx = C.dim(y, z), C.dim(z, x)
            m = C.m(x, y, z)
            for b in range(dyz):
                e = ExactMatrix.unit_vector(f, dyz, b)
                rows.append(pis[(x, z)] @ m @ kron(ExactMatrix.identity(f, dxy), e))
            m = C.m(z, x, y)
            for b in range(dzx):
                e = ExactMatrix.unit_vector(f, dzx, b)
                rows.append(pis[(z, y)] @ m @ kron(e, ExactMatrix.identity(f, dxy)))
        out[(x, y)] = J[(x, y)].restrict_kernel(vstack(f, rows, dxy)) if rows else J[(x, y)]
    return out


def coreflect_image_semihopf(C: SemiHopfCategory, gamma: VGraphMorphism, A: VCategory) -> CoreflectedImage:
    """Factor ``gamma: C -> A`` through the cofree semi-Hopf category over ``A``.

    The kernel family is the largest family of coideals inside ``ker gamma``
    that is also a two-sided categorical ideal, found by alternating the
    hom-wise largest coideal with the ideal condition until nothing changes.
    """
    if gamma.source != C.graph or gamma.target != A.graph:
        raise ValueError("gamma must go from the graph of C to the graph of A")
    if any(gamma.f0[x] != x for x in C.objects):
        raise ValueError("gamma must be the identity on objects")
    f = C.field
    J = {p: Subspace.kernel_of(gamma.components[p]) for p in C.graph.pairs()}
    while True:
        J1 = {p: largest_coideal_in(C.coalgebras[p], J[p]) for p in J}
        J2 = _ideal_step(C, J1)
        if all(J2[p] == J[p] for p in J):
            break
        J = J2
    pis = {p: J[p].quotient_map() for p in J}
    secs = {p: J[p].section() for p in J}
    objs = C.objects
    dims = {p: pis[p].rows for p in J}
    graph = VGraph(objs, dims)
    m = {
        (x, y, z): pis[(x, z)] @ C.m(x, y, z) @ kron(secs[(x, y)], secs[(y, z)])
        for x, y, z in product(objs, repeat=3)
    }
    j = {x: pis[(x, x)] @ C.j(x) for x in objs}
    co = {
        p: Coalgebra(f, dims[p], kron(pis[p], pis[p]) @ C.delta(*p) @ secs[p], C.eps(*p) @ secs[p]) for p in J
    }
    image = SemiHopfCategory(VCategory(f, graph, m, j), co)
    comps = {}
    for p in J:
        if C.dim(*p) == 0:
            comps[p] = []
            continue
        fac = cofree_factorization(C.coalgebras[p], gamma.components[p])
        comps[p] = [g @ secs[p] for g in fac.components]
    return CoreflectedImage(image, J, pis, secs, comps)
