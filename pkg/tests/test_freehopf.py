import pytest

from hopfcat.coalg import check_coalgebra, cop
from hopfcat.fixtures import hopf_fixtures, kz2, monoid_t, pair, sweedler
from hopfcat.freehopf import build_letter_graph, cofree_hopf_component, free_hopf_truncated, universal_map_free
from hopfcat.groupoid import FinGraph, cyclic_group, free_category_linearization, linearize, pair_groupoid
from hopfcat.hopf import solve_antipode
from hopfcat.kernel import GF, ExactMatrix, Q, kron
from hopfcat.vgraph import VGraphMorphism

LOOP = FinGraph(("x",), (("a", "x", "x"),))
THETA = FinGraph(("x", "y"), (("a", "x", "y"), ("b", "x", "y"), ("c", "y", "x")))


def identity_morphism_of(A):
    comps = {p: ExactMatrix.identity(A.field, A.dim(*p)) for p in A.graph.pairs()}
    return VGraphMorphism(A.graph, A.graph, {x: x for x in A.objects}, comps, A.field)


# -- letter graph ---------------------------------------------------------------------


def test_letter_graph_examples():
    A = pair(2)
    G0 = build_letter_graph(A, 0)
    assert all(G0.dim(*p) == A.dim(*p) for p in A.graph.pairs())
    with pytest.raises(ValueError):
        G0.shift(0, "x0", "x1")
    W = hopf_fixtures(Q)["groupoid_mixed"]
    G1 = build_letter_graph(W, 1)
    for x, y in W.graph.pairs():
        assert G1.dim(x, y) == W.dim(x, y) + W.dim(y, x)
        assert G1.shift(0, x, y) == ExactMatrix.identity(Q, W.dim(x, y))
    with pytest.raises(ValueError):
        build_letter_graph(A, -1)


def test_letter_graph_summands():
    S = sweedler()
    G = build_letter_graph(S, 3)
    assert G.summand_coalgebra(1, "*", "*") == cop(S.coalgebras[("*", "*")])
    assert G.summand_coalgebra(2, "*", "*") == S.coalgebras[("*", "*")]
    assert check_coalgebra(G.coalgebra("*", "*")) == []
    # the injection of copy 1 followed by nothing else picks out columns 4..7
    inj = G.injection(1, "*", "*")
    assert inj.shape == (16, 4) and inj[4, 0] == 1 and inj[7, 3] == 1


# -- truncated free Hopf ----------------------------------------------------------------


def test_loop_bucket_dims():
    T = free_hopf_truncated(free_category_linearization(LOOP, 2), 2, 1)
    assert [T.bucket_dims[("x", "x", l)] for l in range(3)] == [1, 2, 2]
    assert T.dim("x", "x") == 5
    assert T.label == "truncated upper bounds"


def test_zero_homs_units_only():
    G = FinGraph(("x", "y"), ())
    T = free_hopf_truncated(free_category_linearization(G, 2), 2)
    assert T.dim("x", "x") == 1 and T.dim("x", "y") == 0


def test_argument_errors():
    A = kz2()
    with pytest.raises(ValueError):
        free_hopf_truncated(A, 0)
    with pytest.raises(ValueError):
        free_hopf_truncated(A, 2, 0)
    with pytest.raises(TypeError):
        free_hopf_truncated("A", 2)
    with pytest.raises(ValueError):
        free_hopf_truncated(free_category_linearization(LOOP, 1), 2)


@pytest.mark.parametrize(
    "name,A,L,I",
    [
        ("kZ2", kz2(), 2, 2),
        ("pair2", pair(2), 2, 1),
        ("sweedler", sweedler(), 2, 1),
        ("monoid_t", monoid_t(), 2, 2),
        ("loop", free_category_linearization(LOOP, 3), 3, 2),
        ("theta", free_category_linearization(THETA, 2), 2, 2),
    ],
)
def test_quotient_validates(name, A, L, I):
    T = free_hopf_truncated(A, L, I)
    assert T.validate() == [], name


def test_delta_preserves_length():
    T = free_hopf_truncated(free_category_linearization(THETA, 3), 3, 2)
    for words in T.standard.values():
        for w in words:
            for l, r in T.delta_word(w):
                assert T.weight(l) == T.weight(r) == T.weight(w)


def test_kz2_free_hopf_is_kz2():
    """A Hopf input is its own free Hopf category: the truncation collapses back to A."""
    A = kz2()
    # at L = 2 the copy-1 letter is still separate: identifying it needs g' = g' g g = g
    assert free_hopf_truncated(A, 2, 1).dim("*", "*") == 3
    T = free_hopf_truncated(A, 3, 1)
    assert T.dim("*", "*") == 2
    S = solve_antipode(A).antipode
    U = universal_map_free(A, A, S, identity_morphism_of(A), T)
    assert U.well_defined and U.unit_triangle
    assert U.components[("*", "*")] == ExactMatrix.identity(Q, 2)


def test_monoid_gets_inverted():
    # t = t (t t') = (t t) t' = t t' = 1 uses words of weight 3
    T = free_hopf_truncated(monoid_t(), 3, 1)
    assert T.dim("*", "*") == 1


# -- universal maps ---------------------------------------------------------------------


def test_universal_map_letters_and_groupoid_relation():
    C = pair_groupoid(["x", "y"])
    A = linearize(C)
    S = solve_antipode(A).antipode
    T = free_hopf_truncated(A, 2, 1)
    U = universal_map_free(A, A, S, identity_morphism_of(A), T)
    assert U.well_defined and U.unit_triangle
    f = Q
    for k, a in enumerate(T.letters):
        x, y = a.hom
        got = U.word_image((a.src, a.tgt), {(k,): f.one})
        e = ExactMatrix.unit_vector(f, A.dim(x, y), a.basis)
        want = e if a.index == 0 else S[(x, y)] @ e
        assert got == want
    # a followed by its formal inverse maps to the unit
    a = next(k for k, l in enumerate(T.letters) if l.index == 0 and l.hom == ("x", "y"))
    b = next(k for k, l in enumerate(T.letters) if l.index == 1 and l.hom == ("x", "y"))
    assert U.word_image(("x", "x"), {(a, b): f.one}) == A.j("x")


@pytest.mark.parametrize("name", ["kS3", "groupoid_mixed", "sweedler"])
def test_universal_map_respects_structure(name):
    H = hopf_fixtures(Q)[name]
    S = solve_antipode(H).antipode
    T = free_hopf_truncated(H, 2, 1)
    U = universal_map_free(H, H, S, identity_morphism_of(H), T)
    assert U.well_defined and U.unit_triangle
    f = Q
    for (x, y), wu in T.standard.items():
        for z in T.objects:
            for u in wu:
                for v in T.standard[(y, z)]:
                    if T.weight(u) + T.weight(v) > T.L:
                        continue
                    lhs = U.word_image((x, z), {u + v: f.one})
                    rhs = H.m(x, y, z) @ kron(U.word_image((x, y), {u: f.one}), U.word_image((y, z), {v: f.one}))
                    assert lhs == rhs
        for w in wu:
            img = U.word_image((x, y), {w: f.one})
            rhs = ExactMatrix.zeros(f, H.dim(x, y) ** 2, 1)
            for (l, r), c in T.delta_word(w).items():
                rhs = rhs + kron(U.word_image((x, y), {l: f.one}), U.word_image((x, y), {r: f.one})).scale(c)
            assert H.delta(x, y) @ img == rhs


def test_universal_map_rejects_bad_input():
    A = kz2()
    T = free_hopf_truncated(A, 2, 1)
    S = solve_antipode(A).antipode
    bad = VGraphMorphism(A.graph, A.graph, {"*": "*"}, {("*", "*"): ExactMatrix.zeros(Q, 2, 2)})
    with pytest.raises(ValueError):
        universal_map_free(A, A, S, bad, T)
    with pytest.raises(ValueError):
        universal_map_free(pair(2), A, S, identity_morphism_of(A), T)


# -- cofree components ------------------------------------------------------------------


def test_cofree_components():
    H = hopf_fixtures(Q)["groupoid_mixed"]
    S = solve_antipode(H).antipode
    f = identity_morphism_of(H)
    c0 = cofree_hopf_component(H, S, f, 0, [0])
    c1 = cofree_hopf_component(H, S, f, 0, [1])
    for x, y in H.graph.pairs():
        assert c0[(x, y)][0] == f.components[(x, y)]
        assert c1[(x, y)][0] == S[(x, y)]
        assert c1[(x, y)][1] == [(y, x)]
    c = cofree_hopf_component(H, S, f, 1, [0, 0])
    for x, y in H.graph.pairs():
        for b in range(H.dim(x, y)):
            e = ExactMatrix.unit_vector(Q, H.dim(x, y), b)
            assert c[(x, y)][0] @ e == kron(e, e)
    with pytest.raises(ValueError):
        cofree_hopf_component(H, S, f, 1, [0])


# -- truncation monotonicity ------------------------------------------------------------


@pytest.mark.parametrize("I_max", [1, 2])
def test_monotone_in_L_at_fixed_I(I_max):
    for G in (LOOP, THETA):
        dims = {}
        for L in range(1, 5):
            T = free_hopf_truncated(free_category_linearization(G, L), L, I_max)
            dims[L] = T.bucket_dims
        for L in range(1, 4):
            for key, d in dims[L].items():
                assert dims[L + 1][key] <= d, (G, I_max, key)


def test_grouplike_letters_field_independent():
    for field in (Q, GF(2), GF(5)):
        A = linearize(cyclic_group(2), field)
        assert free_hopf_truncated(A, 3, 1).dim("*", "*") == 2
