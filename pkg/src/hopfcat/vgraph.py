"""Finite V-graphs over finite-dimensional vector spaces.

A V-graph is an ordered list of object names together with a dimension
for every ordered pair of objects.  Morphisms carry an object map and one
matrix per source pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .kernel import ExactMatrix, FieldSpec, Q, Subspace, hstack, kernel_basis, vstack

__all__ = [
    "VGraph",
    "VGraphMorphism",
    "MorphismClass",
    "classify_morphism",
    "compose",
    "identity_morphism",
    "limit_finite_diagram",
    "opposite_graph",
    "Diagram",
    "jointly_monic_graph_family",
]


@dataclass(frozen=True)
class VGraph:
    objects: tuple[str, ...]
    hom_dim: Mapping[tuple[str, str], int]

    def __post_init__(self):
        objs = tuple(self.objects)
        object.__setattr__(self, "objects", objs)
        if len(set(objs)) != len(objs):
            raise ValueError("object identifiers must be distinct")
        dims = {}
        for x in objs:
            for y in objs:
                d = int(self.hom_dim.get((x, y), 0))
                if d < 0:
                    raise ValueError(f"negative dimension at {(x, y)}")
                dims[(x, y)] = d
        extra = set(self.hom_dim) - set(dims)
        if extra:
            raise ValueError(f"hom dimensions given for unknown pairs {sorted(extra)}")
        object.__setattr__(self, "hom_dim", dims)

    def __hash__(self):
        return hash((self.objects, tuple(sorted(self.hom_dim.items()))))

    def dim(self, x: str, y: str) -> int:
        return self.hom_dim[(x, y)]

    def pairs(self):
        return [(x, y) for x in self.objects for y in self.objects]

    @property
    def total_dim(self) -> int:
        return sum(self.hom_dim.values())


def opposite_graph(A: VGraph) -> VGraph:
    return VGraph(A.objects, {(x, y): A.dim(y, x) for x, y in A.pairs()})


@dataclass(frozen=True, eq=False)
class VGraphMorphism:
    source: VGraph
    target: VGraph
    f0: Mapping[str, str]
    components: Mapping[tuple[str, str], ExactMatrix]
    field: FieldSpec = Q

    def __post_init__(self):
        missing = [x for x in self.source.objects if x not in self.f0]
        if missing:
            raise ValueError(f"object map undefined on {missing}")
        comps = dict(self.components)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "f0", dict(self.f0))
        for x, y in self.source.pairs():
            fx, fy = self.f0[x], self.f0[y]
            if fx not in self.target.objects or fy not in self.target.objects:
                raise ValueError(f"object map sends {x} or {y} outside the target")
            shape = (self.target.dim(fx, fy), self.source.dim(x, y))
            M = comps.get((x, y))
            if M is None:
                if 0 in shape:
                    M = comps[(x, y)] = ExactMatrix.zeros(self.field, *shape)
                else:
                    raise ValueError(f"missing component at {(x, y)}")
            if M.shape != shape:
                raise ValueError(f"component {(x, y)} has shape {M.shape}, expected {shape}")
            if M.field != self.field:
                raise ValueError(f"component {(x, y)} is over {M.field}, expected {self.field}")

    def __eq__(self, other):
        if not isinstance(other, VGraphMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.f0) == dict(other.f0)
            and all(self.components[p] == other.components[p] for p in self.source.pairs())
        )

    def __hash__(self):
        return hash((self.source, tuple(sorted(self.f0.items()))))


def identity_morphism(A: VGraph, field: FieldSpec = Q) -> VGraphMorphism:
    return VGraphMorphism(
        A, A, {x: x for x in A.objects}, {p: ExactMatrix.identity(field, A.dim(*p)) for p in A.pairs()}, field
    )


def compose(g: VGraphMorphism, f: VGraphMorphism) -> VGraphMorphism:
    """``g o f``."""
    if f.target != g.source:
        raise ValueError("morphisms do not compose")
    comps = {(x, y): g.components[(f.f0[x], f.f0[y])] @ f.components[(x, y)] for x, y in f.source.pairs()}
    return VGraphMorphism(f.source, g.target, {x: g.f0[f.f0[x]] for x in f.source.objects}, comps, f.field)


@dataclass
class MorphismClass:
    mono: bool
    epi: bool
    witnesses: list = field(default_factory=list)


def classify_morphism(f: VGraphMorphism) -> MorphismClass:
    """Monomorphism / epimorphism test, object-wise and hom-wise.

    Witnesses are tuples: ``("objects-collide", x, x')``,
    ``("kernel", (x, y), vector)``, ``("object-missed", y)`` and
    ``("cokernel", (x, y), functional)`` where the functional vanishes on
    every component landing in ``(x, y)``.
    """
    A, B = f.source, f.target
    wit = []
    seen: dict[str, str] = {}
    injective = True
    for x in A.objects:
        fx = f.f0[x]
        if fx in seen:
            injective = False
            wit.append(("objects-collide", seen[fx], x))
        else:
            seen[fx] = x
    mono = injective
    for p in A.pairs():
        K = kernel_basis(f.components[p])
        if K:
            mono = False
            wit.append(("kernel", p, K[0]))

    image = set(f.f0.values())
    epi = True
    for y in B.objects:
        if y not in image:
            epi = False
            wit.append(("object-missed", y))
    for x, y in B.pairs():
        landing = [f.components[(a, b)] for a, b in A.pairs() if (f.f0[a], f.f0[b]) == (x, y)]
        stacked = hstack(f.field, landing, rows=B.dim(x, y))
        left = kernel_basis(stacked.T)
        if left:
            epi = False
            wit.append(("cokernel", (x, y), left[0]))
    return MorphismClass(mono, epi, wit)


@dataclass(frozen=True)
class Diagram:
    """A finite diagram: named nodes and arrows ``(source_node, target_node, morphism)``."""

    nodes: Mapping[str, VGraph]
    arrows: Sequence[tuple[str, str, VGraphMorphism]] = ()
    field: FieldSpec = Q


def limit_finite_diagram(D: Diagram) -> tuple[VGraph, dict[str, VGraphMorphism]]:
    """Limit of a finite diagram of V-graphs.

    Objects are the limit in sets (compatible tuples); each hom is the
    subspace of the direct sum of component homs cut out by the arrows.
    """
    names = list(D.nodes)
    if not names:
        raise ValueError("empty diagram: use the terminal graph explicitly")
    fld = D.field
    for s, t, m in D.arrows:
        if D.nodes[s] != m.source or D.nodes[t] != m.target:
            raise ValueError(f"arrow {s}->{t} does not match its nodes")
    tuples = []
    for combo in product(*[D.nodes[n].objects for n in names]):
        pick = dict(zip(names, combo))
        if all(m.f0[pick[s]] == pick[t] for s, t, m in D.arrows):
            tuples.append(pick)

    def label(pick):
        if len(names) == 1:
            return pick[names[0]]
        return "(" + ",".join(pick[n] for n in names) + ")"

    objects = [label(p) for p in tuples]
    dims, proj_blocks = {}, {}
    for px, py in product(tuples, repeat=2):
        sizes = [D.nodes[n].dim(px[n], py[n]) for n in names]
        offsets = [sum(sizes[:i]) for i in range(len(sizes))]
        total = sum(sizes)
        rows = []
        for s, t, m in D.arrows:
            i, j = names.index(s), names.index(t)
            comp = m.components[(px[s], py[s])]
            # constraint: comp v_s - v_t = 0
            for r in range(sizes[j]):
                row = [fld.zero] * total
                for c in range(sizes[i]):
                    row[offsets[i] + c] += comp[r, c]
                row[offsets[j] + r] -= fld.one
                rows.append(row)
        C = ExactMatrix.from_rows(fld, rows, total) if rows else ExactMatrix.zeros(fld, 0, total)
        basis = Subspace.kernel_of(C) if rows else Subspace.whole(fld, total)
        key = (label(px), label(py))
        dims[key] = basis.dim
        Bm = basis.matrix()
        proj_blocks[key] = [Bm.block(offsets[k], offsets[k] + sizes[k], 0, basis.dim) for k in range(len(names))]
    L = VGraph(objects, dims)
    projections = {}
    for k, n in enumerate(names):
        comps = {key: blocks[k] for key, blocks in proj_blocks.items()}
        f0 = {label(p): p[n] for p in tuples}
        projections[n] = VGraphMorphism(L, D.nodes[n], f0, comps, fld)
    return L, projections


def jointly_monic_graph_family(maps: Sequence[VGraphMorphism]) -> bool:
    """Joint monicity of morphisms out of a common V-graph.

    The object maps must be jointly injective and, for each source pair, the
    stacked components must have zero kernel.
    """
    if not maps:
        return False
    A = maps[0].source
    keys = {}
    for x in A.objects:
        k = tuple(m.f0[x] for m in maps)
        if k in keys:
            return False
        keys[k] = x
    for p in A.pairs():
        stacked = vstack(maps[0].field, [m.components[p] for m in maps], cols=A.dim(*p))
        if kernel_basis(stacked):
            return False
    return True

