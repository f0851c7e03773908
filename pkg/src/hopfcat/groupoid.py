"""Set-enriched specialization: graphs, free categories, free groupoids, finite categories.

Everything here is plain combinatorics.  The reduced-word enumeration is
used as an independent count for the truncated free Hopf category of a
graph, and :func:`linearize` turns a finite category into a semi-Hopf
category with grouplike basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .coalg import Coalgebra, grouplike_coalgebra
from .freehopf import free_hopf_truncated
from .hopf import Antipode
from .kernel import ExactMatrix, FieldSpec, Q
from .vcat import CoalgebraGraph, SemiHopfCategory, TruncatedFreeCat, VCategory, free_semihopf_truncated
from .vgraph import VGraph, VGraphMorphism

__all__ = [
    "FinGraph",
    "Letter",
    "ReducedWord",
    "free_category_paths",
    "free_groupoid_words",
    "reduce_word",
    "is_reduced",
    "FinCategory",
    "check_fincategory",
    "inverse_of",
    "core_groupoid",
    "linearize",
    "linearized_inverse",
    "linearize_functor",
    "random_groupoid",
    "random_groupoid_functor",
    "free_category_linearization",
    "OracleReport",
    "oracle_compare",
    "pair_groupoid",
    "cyclic_group",
    "discrete_category",
    "monoid_category",
    "groupoid_from_groups",
]


@dataclass(frozen=True)
class FinGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (id, src, tgt)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        ids = [e[0] for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("edge ids must be distinct")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertices must be distinct")
        vs = set(self.vertices)
        for eid, s, t in self.edges:
            if s not in vs or t not in vs:
                raise ValueError(f"edge {eid} has an endpoint outside the vertex set")

    def src(self, eid: str) -> str:
        return self._ends[eid][0]

    def tgt(self, eid: str) -> str:
        return self._ends[eid][1]

    @property
    def _ends(self) -> dict[str, tuple[str, str]]:
        return {e: (s, t) for e, s, t in self.edges}

    def to_vgraph(self) -> VGraph:
        dims: dict = {}
        for _, s, t in self.edges:
            dims[(s, t)] = dims.get((s, t), 0) + 1
        return VGraph(self.vertices, dims)

    def parallel_edges(self, s: str, t: str) -> list[str]:
        return [e for e, a, b in self.edges if (a, b) == (s, t)]


def free_category_paths(G: FinGraph, L: int) -> dict[tuple[str, str, int], list[tuple[str, ...]]]:
    """All directed paths of length at most L, as tuples of edge ids."""
    if L < 0:
        raise ValueError("L must be non-negative")
    out = {(x, y, l): [] for x in G.vertices for y in G.vertices for l in range(L + 1)}
    ends = G._ends
    layer = {x: [()] for x in G.vertices}  # paths starting at x, of current length
    for l in range(L + 1):
        for x, paths in layer.items():
            for p in paths:
                y = ends[p[-1]][1] if p else x
                out[(x, y, l)].append(p)
        nxt = {}
        for x, paths in layer.items():
            ext = []
            for p in paths:
                y = ends[p[-1]][1] if p else x
                ext.extend(p + (e,) for e, s, _ in G.edges if s == y)
            nxt[x] = ext
        layer = nxt
    for k in out:
        out[k].sort()
    return out


# -- reduced words -----------------------------------------------------------

Letter = tuple[str, int]  # (edge id, +1 or -1)


def _letter_ends(G: FinGraph, a: Letter) -> tuple[str, str]:
    s, t = G._ends[a[0]]
    return (s, t) if a[1] > 0 else (t, s)


def is_reduced(word: Sequence[Letter]) -> bool:
    return all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(word, word[1:]))


def reduce_word(word: Sequence[Letter], rng: random.Random | None = None) -> tuple[Letter, ...]:
    """Free reduction.  With ``rng``, cancellations are applied in random order."""
    w = list(word)
    if rng is None:
        stack: list[Letter] = []
        for a in w:
            if stack and stack[-1][0] == a[0] and stack[-1][1] == -a[1]:
                stack.pop()
            else:
                stack.append(a)
        return tuple(stack)
    while True:
        spots = [i for i in range(len(w) - 1) if w[i][0] == w[i + 1][0] and w[i][1] == -w[i + 1][1]]
        if not spots:
            return tuple(w)
        i = rng.choice(spots)
        del w[i : i + 2]


def _sign_key(a: Letter):
    return (a[0], 0 if a[1] > 0 else 1)


@dataclass(frozen=True, order=False)
class ReducedWord:
    letters: tuple[Letter, ...]
    src: str
    tgt: str

    def __post_init__(self):
        if not is_reduced(self.letters):
            raise ValueError(f"word {self.letters} is not reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "ReducedWord":
        return ReducedWord(tuple((e, -s) for e, s in reversed(self.letters)), self.tgt, self.src)

    def sort_key(self):
        return (len(self.letters), tuple(_sign_key(a) for a in self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return f"id_{self.src}"
        return " ".join(e if s > 0 else f"{e}^-1" for e, s in self.letters)


def free_groupoid_words(G: FinGraph, L: int) -> dict[tuple[str, str, int], list[ReducedWord]]:
    """Reduced words of length at most L between every pair of vertices."""
    if L < 0:
        raise ValueError("L must be non-negative")
    letters = sorted([(e, 1) for e, _, _ in G.edges] + [(e, -1) for e, _, _ in G.edges], key=_sign_key)
    ends = {a: _letter_ends(G, a) for a in letters}
    out = {(x, y, l): [] for x in G.vertices for y in G.vertices for l in range(L + 1)}
    layer = [((), x, x) for x in G.vertices]
    for l in range(L + 1):
        for w, s, t in layer:
            out[(s, t, l)].append(ReducedWord(w, s, t))
        nxt = []
        for w, s, t in layer:
            for a in letters:
                if ends[a][0] != t:
                    continue
                if w and w[-1][0] == a[0] and w[-1][1] == -a[1]:
                    continue
                nxt.append((w + (a,), s, ends[a][1]))
        layer = nxt
    for k in out:
        out[k].sort(key=ReducedWord.sort_key)
    return out


# -- finite categories -------------------------------------------------------


@dataclass(frozen=True)
class FinCategory:
    """A finite category given by its composition table.

    ``comp[(f, g)]`` is "f then g" for ``f: x -> y`` and ``g: y -> z``,
    matching the path order used for V-categories.
    """

    objects: tuple[str, ...]
    arrows: Mapping[str, tuple[str, str]]
    comp: Mapping[tuple[str, str], str]
    ids: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", dict(self.arrows))
        object.__setattr__(self, "comp", dict(self.comp))
        object.__setattr__(self, "ids", dict(self.ids))

    def hom(self, x: str, y: str) -> list[str]:
        return [a for a, (s, t) in self.arrows.items() if (s, t) == (x, y)]

    def __hash__(self):
        return hash((self.objects, tuple(sorted(self.arrows.items()))))


def check_fincategory(C: FinCategory) -> list[str]:
    """Well-formedness, identity and associativity laws on the full table."""
    out = []
    objs = set(C.objects)
    for a, (s, t) in C.arrows.items():
        if s not in objs or t not in objs:
            out.append(f"arrow {a} has endpoints outside the objects")
    for x in C.objects:
        i = C.ids.get(x)
        if i is None or C.arrows.get(i) != (x, x):
            out.append(f"missing or ill-typed identity at {x}")
    if out:
        return out
    for f, (s, t) in C.arrows.items():
        for g, (s2, t2) in C.arrows.items():
            if t != s2:
                continue
            h = C.comp.get((f, g))
            if h is None:
                out.append(f"composite of {f} then {g} undefined")
            elif C.arrows.get(h) != (s, t2):
                out.append(f"composite of {f} then {g} has the wrong type")
    if out:
        return out
    for f, (s, t) in C.arrows.items():
        if C.comp[(C.ids[s], f)] != f or C.comp[(f, C.ids[t])] != f:
            out.append(f"identity law fails at {f}")
    for f, g, h in product(C.arrows, repeat=3):
        if C.arrows[f][1] != C.arrows[g][0] or C.arrows[g][1] != C.arrows[h][0]:
            continue
        if C.comp[(C.comp[(f, g)], h)] != C.comp[(f, C.comp[(g, h)])]:
            out.append(f"associativity fails at ({f}, {g}, {h})")
    return out


def inverse_of(C: FinCategory, f: str) -> str | None:
    s, t = C.arrows[f]
    for g in C.hom(t, s):
        if C.comp[(f, g)] == C.ids[s] and C.comp[(g, f)] == C.ids[t]:
            return g
    return None


def core_groupoid(C: FinCategory) -> FinCategory:
    """The subcategory of all invertible arrows."""
    keep = [a for a in C.arrows if inverse_of(C, a) is not None]
    ks = set(keep)
    return FinCategory(
        C.objects,
        {a: C.arrows[a] for a in keep},
        {(f, g): h for (f, g), h in C.comp.items() if f in ks and g in ks},
        C.ids,
    )


def linearize(C: FinCategory, field: FieldSpec = Q) -> SemiHopfCategory:
    """Free vector spaces on hom-sets, arrows grouplike, composition from the table.

    The basis of ``A_xy`` lists the arrows ``x -> y`` in the order they
    appear in ``C.arrows``.
    """
    objs = C.objects
    homs = {(x, y): C.hom(x, y) for x in objs for y in objs}
    pos = {a: i for hs in homs.values() for i, a in enumerate(hs)}
    graph = VGraph(objs, {p: len(h) for p, h in homs.items()})
    m = {}
    for x, y, z in product(objs, repeat=3):
        a, b, c = len(homs[(x, y)]), len(homs[(y, z)]), len(homs[(x, z)])
        cols = []
        for f in homs[(x, y)]:
            for g in homs[(y, z)]:
                col = [0] * c
                col[pos[C.comp[(f, g)]]] = 1
                cols.append(col)
        m[(x, y, z)] = ExactMatrix.from_columns(field, cols, c) if cols else ExactMatrix.zeros(field, c, a * b)
    j = {x: ExactMatrix.unit_vector(field, len(homs[(x, x)]), pos[C.ids[x]]) for x in objs}
    co: dict[tuple[str, str], Coalgebra] = {p: grouplike_coalgebra(field, len(h)) for p, h in homs.items()}
    return SemiHopfCategory(VCategory(field, graph, m, j), co)


def linearized_inverse(C: FinCategory, field: FieldSpec = Q) -> Antipode:
    """Inversion of a groupoid as permutation matrices ``A_xy -> A_yx``."""
    objs = C.objects
    comps = {}
    for x, y in product(objs, repeat=2):
        src, tgt = C.hom(x, y), C.hom(y, x)
        pos = {a: i for i, a in enumerate(tgt)}
        cols = []
        for f in src:
            g = inverse_of(C, f)
            if g is None:
                raise ValueError(f"arrow {f} is not invertible")
            col = [0] * len(tgt)
            col[pos[g]] = 1
            cols.append(col)
        comps[(x, y)] = ExactMatrix.from_columns(field, cols, len(tgt)) if cols else ExactMatrix.zeros(field, len(tgt), 0)
    return Antipode(comps)


def linearize_functor(
    C: FinCategory, D: FinCategory, f0: Mapping[str, str], f1: Mapping[str, str], field: FieldSpec = Q
) -> VGraphMorphism:
    """The semi-Hopf morphism ``kC -> kD`` of a functor, checked on the tables."""
    for a, (s, t) in C.arrows.items():
        if D.arrows[f1[a]] != (f0[s], f0[t]):
            raise ValueError(f"arrow {a} is sent to an arrow with the wrong ends")
    for x in C.objects:
        if f1[C.ids[x]] != D.ids[f0[x]]:
            raise ValueError(f"identity of {x} is not preserved")
    for (f, g), h in C.comp.items():
        if D.comp[(f1[f], f1[g])] != f1[h]:
            raise ValueError(f"composite of {f} then {g} is not preserved")
    A, B = linearize(C, field), linearize(D, field)
    comps = {}
    for x, y in product(C.objects, repeat=2):
        src, tgt = C.hom(x, y), D.hom(f0[x], f0[y])
        pos = {a: i for i, a in enumerate(tgt)}
        cols = []
        for a in src:
            col = [0] * len(tgt)
            col[pos[f1[a]]] = 1
            cols.append(col)
        comps[(x, y)] = ExactMatrix.from_columns(field, cols, len(tgt)) if cols else ExactMatrix.zeros(field, len(tgt), 0)
    return VGraphMorphism(A.graph, B.graph, dict(f0), comps, field)


def free_category_linearization(G: FinGraph, L: int, field: FieldSpec = Q) -> TruncatedFreeCat:
    """The free category on G linearized with grouplike paths, up to length L."""
    V = G.to_vgraph()
    co = {p: grouplike_coalgebra(field, V.dim(*p)) for p in V.pairs() if V.dim(*p)}
    return free_semihopf_truncated(CoalgebraGraph(V, co, field), L)


@dataclass(frozen=True)
class OracleReport:
    """Per-bucket comparison; rows are ``(x, y, l, free Hopf dim, reduced words)``."""

    L: int
    I_max: int
    rows: tuple[tuple[str, str, int, int, int], ...]

    @property
    def equal(self) -> bool:
        return all(h == w for *_, h, w in self.rows)

    def mismatches(self) -> list[tuple[str, str, int, int, int]]:
        return [r for r in self.rows if r[3] != r[4]]


def oracle_compare(G: FinGraph, L: int, I_max: int = 1, field: FieldSpec = Q) -> OracleReport:
    """Truncated free Hopf bucket dimensions of the free category on G against reduced-word counts."""
    H = free_hopf_truncated(free_category_linearization(G, L, field), L, I_max)
    words = free_groupoid_words(G, L)
    rows = tuple(
        (x, y, l, H.bucket_dims.get((x, y, l), 0), len(words[(x, y, l)]))
        for x in G.vertices
        for y in G.vertices
        for l in range(L + 1)
    )
    return OracleReport(L, I_max, rows)


# -- standard small categories -----------------------------------------------


def pair_groupoid(objects: Sequence[str]) -> FinCategory:
    """Exactly one arrow ``x>y`` between any two objects."""
    objs = tuple(objects)
    arrows = {f"{x}>{y}": (x, y) for x in objs for y in objs}
    comp = {(f"{x}>{y}", f"{y}>{z}"): f"{x}>{z}" for x in objs for y in objs for z in objs}
    return FinCategory(objs, arrows, comp, {x: f"{x}>{x}" for x in objs})


def cyclic_group(n: int, obj: str = "*") -> FinCategory:
    arrows = {f"g{i}": (obj, obj) for i in range(n)}
    comp = {(f"g{i}", f"g{k}"): f"g{(i + k) % n}" for i in range(n) for k in range(n)}
    return FinCategory((obj,), arrows, comp, {obj: "g0"})


def discrete_category(objects: Sequence[str]) -> FinCategory:
    objs = tuple(objects)
    return FinCategory(objs, {f"id_{x}": (x, x) for x in objs}, {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objs}, {x: f"id_{x}" for x in objs})


def monoid_category(elements: Sequence[str], table: Mapping[tuple[str, str], str], unit: str, obj: str = "*") -> FinCategory:
    return FinCategory((obj,), {e: (obj, obj) for e in elements}, dict(table), {obj: unit})


def groupoid_from_groups(blocks: Sequence[tuple[Sequence[str], int]]) -> FinCategory:
    """Disjoint union of connected groupoids ``pair groupoid x cyclic group``.

    Each block is ``(objects, n)``; arrows are ``x>y#k`` with composition
    adding k modulo n.
    """
    objs, arrows, comp, ids = [], {}, {}, {}
    for names, n in blocks:
        names = list(names)
        objs.extend(names)
        for x in names:
            ids[x] = f"{x}>{x}#0"
            for y in names:
                for k in range(n):
                    arrows[f"{x}>{y}#{k}"] = (x, y)
        for x, y, z in product(names, repeat=3):
            for k in range(n):
                for l in range(n):
                    comp[(f"{x}>{y}#{k}", f"{y}>{z}#{l}")] = f"{x}>{z}#{(k + l) % n}"
    return FinCategory(tuple(objs), arrows, comp, ids)


def random_groupoid(rng: random.Random, max_objects: int = 4, max_arrows: int = 12) -> FinCategory:
    """A random disjoint union of connected groupoids within the size bounds."""
    while True:
        names = [f"o{i}" for i in range(rng.randint(1, max_objects))]
        rng.shuffle(names)
        blocks, i = [], 0
        while i < len(names):
            k = rng.randint(1, len(names) - i)
            blocks.append((sorted(names[i : i + k]), rng.randint(1, 3)))
            i += k
        if sum(len(o) ** 2 * n for o, n in blocks) <= max_arrows:
            return groupoid_from_groups(blocks)


def _blocks(C: FinCategory) -> list[tuple[list[str], int]]:
    seen, out = set(), []
    for x in C.objects:
        if x in seen:
            continue
        comp = sorted(y for y in C.objects if C.hom(x, y))
        seen.update(comp)
        out.append((comp, len(C.hom(x, x))))
    return out


def random_groupoid_functor(
    rng: random.Random, C: FinCategory, D: FinCategory
) -> tuple[dict[str, str], dict[str, str]]:
    """A random functor between two outputs of :func:`groupoid_from_groups`.

    A block ``(O, n)`` goes to a block ``(O', m)`` through an object map,
    a group map ``k -> a k`` with ``m | a n`` and a per-object shift ``t``:
    ``x>y#k -> fx>fy#(a k + t_y - t_x)``.
    """
    f0, f1 = {}, {}
    targets = _blocks(D)
    for objs, n in _blocks(C):
        tobjs, m = rng.choice(targets)
        a = rng.choice([a for a in range(m) if (a * n) % m == 0])
        t = {x: rng.randrange(m) for x in objs}
        for x in objs:
            f0[x] = rng.choice(tobjs)
        for x in objs:
            for y in objs:
                for k in range(n):
                    f1[f"{x}>{y}#{k}"] = f"{f0[x]}>{f0[y]}#{(a * k + t[y] - t[x]) % m}"
    return f0, f1
