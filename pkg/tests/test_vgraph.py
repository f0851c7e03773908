import random

import pytest

from hopfcat.kernel import GF, ExactMatrix, Q, solve
from hopfcat.vgraph import (
    Diagram,
    VGraph,
    VGraphMorphism,
    classify_morphism,
    compose,
    identity_morphism,
    jointly_monic_graph_family,
    limit_finite_diagram,
    opposite_graph,
)


def M(rows, field=Q, cols=None):
    return ExactMatrix.from_rows(field, rows, cols)


def random_matrix(rng, field, r, c):
    if r == 0 or c == 0:
        return ExactMatrix.zeros(field, r, c)
    return M([[rng.randrange(field.p or 3) for _ in range(c)] for _ in range(r)], field)


def random_morphism(rng, A, B, field):
    f0 = {x: rng.choice(B.objects) for x in A.objects}
    comps = {(x, y): random_matrix(rng, field, B.dim(f0[x], f0[y]), A.dim(x, y)) for x, y in A.pairs()}
    return VGraphMorphism(A, B, f0, comps, field)


def test_vgraph_validation():
    with pytest.raises(ValueError):
        VGraph(("x", "x"), {})
    with pytest.raises(ValueError):
        VGraph(("x",), {("x", "y"): 1})
    with pytest.raises(ValueError):
        VGraph(("x",), {("x", "x"): -1})
    assert VGraph(("x", "y"), {}).dim("x", "y") == 0


def test_opposite_examples():
    G = VGraph(("x", "y"), {("x", "y"): 2, ("x", "x"): 1})
    op = opposite_graph(G)
    assert op.dim("y", "x") == 2 and op.dim("x", "y") == 0
    assert opposite_graph(op) == G
    sym = VGraph(("x", "y"), {("x", "y"): 1, ("y", "x"): 1})
    assert opposite_graph(sym) == sym


def test_classify_identity():
    G = VGraph(("x", "y"), {("x", "y"): 2, ("y", "y"): 1})
    c = classify_morphism(identity_morphism(G))
    assert c.mono and c.epi and not c.witnesses


def test_classify_inclusion_not_epi():
    A = VGraph(("x", "y"), {})
    B = VGraph(("x", "y"), {("x", "y"): 1})
    f = VGraphMorphism(A, B, {"x": "x", "y": "y"}, {})
    c = classify_morphism(f)
    assert c.mono and not c.epi
    assert any(w[0] == "cokernel" for w in c.witnesses)


def test_classify_collapse_epi():
    A = VGraph(("a", "b"), {("a", "a"): 1, ("b", "b"): 1})
    B = VGraph(("x",), {("x", "x"): 2})
    f = VGraphMorphism(A, B, {"a": "x", "b": "x"}, {("a", "a"): M([[1], [0]]), ("b", "b"): M([[0], [1]])})
    c = classify_morphism(f)
    assert c.epi and not c.mono
    assert ("objects-collide", "a", "b") in c.witnesses


def test_classify_kernel_witness():
    A = VGraph(("x",), {("x", "x"): 2})
    f = VGraphMorphism(A, A, {"x": "x"}, {("x", "x"): M([[1, 1], [1, 1]])})
    c = classify_morphism(f)
    assert not c.mono and not c.epi
    kind, pair, vec = next(w for w in c.witnesses if w[0] == "kernel")
    assert (f.components[pair] @ ExactMatrix.column(Q, vec)).is_zero()


def test_morphism_shape_errors():
    A = VGraph(("x",), {("x", "x"): 1})
    with pytest.raises(ValueError):
        VGraphMorphism(A, A, {"x": "x"}, {("x", "x"): M([[1, 0]])})
    with pytest.raises(ValueError):
        VGraphMorphism(A, A, {}, {})


def test_product_limit():
    A = VGraph(("x", "y"), {("x", "y"): 1, ("x", "x"): 2})
    B = VGraph(("u",), {("u", "u"): 1})
    L, proj = limit_finite_diagram(Diagram({"A": A, "B": B}))
    assert set(L.objects) == {"(x,u)", "(y,u)"}
    assert L.dim("(x,u)", "(y,u)") == 2
    assert L.dim("(x,u)", "(x,u)") == 3
    assert L.dim("(y,u)", "(x,u)") == 1
    assert jointly_monic_graph_family(list(proj.values()))


def test_product_universal_property():
    rng = random.Random(3)
    A = VGraph(("x", "y"), {("x", "y"): 1, ("y", "y"): 1})
    B = VGraph(("u",), {("u", "u"): 2})
    L, proj = limit_finite_diagram(Diagram({"A": A, "B": B}))
    T = VGraph(("t",), {("t", "t"): 2})
    for _ in range(10):
        g, h = random_morphism(rng, T, A, Q), random_morphism(rng, T, B, Q)
        # the mediating map: pair up objects and stack the components
        t = "t"
        obj = f"({g.f0[t]},{h.f0[t]})"
        stacked = ExactMatrix.from_rows(
            Q, g.components[(t, t)].tolist() + h.components[(t, t)].tolist(), 2
        )
        # express in the limit's basis: the projections' stacked matrix is invertible on the direct sum
        P = ExactMatrix.from_rows(
            Q,
            proj["A"].components[(obj, obj)].tolist() + proj["B"].components[(obj, obj)].tolist(),
            L.dim(obj, obj),
        )
        sol = solve(P, stacked)
        assert sol is not None and not sol.kernel
        u = VGraphMorphism(T, L, {t: obj}, {(t, t): sol.particular})
        assert compose(proj["A"], u) == g and compose(proj["B"], u) == h


def test_single_node_limit():
    A = VGraph(("x", "y"), {("x", "y"): 2})
    L, proj = limit_finite_diagram(Diagram({"A": A}))
    assert L == A
    assert proj["A"] == identity_morphism(A)


def test_equalizer_limit():
    A = VGraph(("x", "y"), {("x", "x"): 2})
    B = VGraph(("u", "v"), {("u", "u"): 1})
    f = VGraphMorphism(A, B, {"x": "u", "y": "v"}, {("x", "x"): M([[1, 0]])})
    g = VGraphMorphism(A, B, {"x": "u", "y": "u"}, {("x", "x"): M([[0, 1]]), ("y", "y"): M([[]], cols=0)})
    L, proj = limit_finite_diagram(Diagram({"A": A, "B": B}, [("A", "B", f), ("A", "B", g)]))
    assert L.objects == ("(x,u)",)
    assert L.dim("(x,u)", "(x,u)") == 1
    P = proj["A"].components[("(x,u)", "(x,u)")]
    assert (f.components[("x", "x")] @ P) == (g.components[("x", "x")] @ P)


def test_empty_diagram():
    with pytest.raises(ValueError):
        limit_finite_diagram(Diagram({}))


def test_mono_composition_random():
    rng = random.Random(11)
    F = GF(3)
    shapes = [
        VGraph(("a",), {("a", "a"): 1}),
        VGraph(("a", "b"), {("a", "b"): 1, ("b", "b"): 1}),
        VGraph(("a", "b", "c"), {("a", "a"): 2, ("b", "c"): 1}),
    ]
    for _ in range(60):
        A, B, C = rng.choice(shapes), rng.choice(shapes), rng.choice(shapes)
        f, g = random_morphism(rng, A, B, F), random_morphism(rng, B, C, F)
        cf, cg, cgf = classify_morphism(f), classify_morphism(g), classify_morphism(compose(g, f))
        if cf.mono and cg.mono:
            assert cgf.mono
        if cf.epi and cg.epi:
            assert cgf.epi
