import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.groupoid import (
    FinCategory,
    FinGraph,
    ReducedWord,
    check_fincategory,
    core_groupoid,
    cyclic_group,
    discrete_category,
    free_category_paths,
    free_groupoid_words,
    groupoid_from_groups,
    is_reduced,
    linearize,
    linearized_inverse,
    monoid_category,
    oracle_compare,
    pair_groupoid,
    random_groupoid,
    reduce_word,
)
from hopfcat.hopf import solve_antipode
from hopfcat.kernel import ExactMatrix, Q

LOOP = FinGraph(("x",), (("a", "x", "x"),))
EDGE = FinGraph(("x", "y"), (("a", "x", "y"),))
EMPTY = FinGraph(("x", "y"), ())


# -- graphs and paths ---------------------------------------------------------------


def test_fingraph_validation():
    with pytest.raises(ValueError):
        FinGraph(("x",), (("a", "x", "x"), ("a", "x", "x")))
    with pytest.raises(ValueError):
        FinGraph(("x",), (("a", "x", "y"),))
    with pytest.raises(ValueError):
        FinGraph(("x", "x"), ())


def test_paths_examples():
    P = free_category_paths(EMPTY, 3)
    assert P[("x", "x", 0)] == [()] and all(not P[("x", "y", l)] for l in range(4))
    P = free_category_paths(LOOP, 3)
    assert [P[("x", "x", l)] for l in range(4)] == [[()], [("a",)], [("a", "a")], [("a", "a", "a")]]
    P = free_category_paths(EDGE, 3)
    assert P[("x", "y", 1)] == [("a",)]
    assert sum(len(P[("x", "y", l)]) for l in range(4)) == 1
    assert sum(len(P[("y", "y", l)]) for l in range(4)) == 1
    with pytest.raises(ValueError):
        free_category_paths(LOOP, -1)


# -- reduced words ------------------------------------------------------------------


def test_words_examples():
    W = free_groupoid_words(LOOP, 2)
    got = [str(w) for l in range(3) for w in W[("x", "x", l)]]
    assert got == ["id_x", "a", "a^-1", "a a", "a^-1 a^-1"]
    W = free_groupoid_words(EDGE, 3)
    assert [str(w) for l in range(4) for w in W[("x", "y", l)]] == ["a"]
    assert [str(w) for l in range(4) for w in W[("y", "x", l)]] == ["a^-1"]
    W = free_groupoid_words(EMPTY, 2)
    assert sum(len(W[("x", "x", l)]) for l in range(3)) == 1
    with pytest.raises(ValueError):
        ReducedWord((("a", 1), ("a", -1)), "x", "x")


def test_words_closed_under_inverse():
    G = FinGraph(("x", "y"), (("a", "x", "y"), ("b", "x", "y"), ("c", "y", "y")))
    W = free_groupoid_words(G, 3)
    for (x, y, l), ws in W.items():
        inv = {w.inverse().letters for w in ws}
        assert inv == {w.letters for w in W[(y, x, l)]}
        for w in ws:
            assert w.inverse().inverse() == w
            assert (w.inverse().src, w.inverse().tgt) == (y, x)


letters = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=14)


@settings(max_examples=200, deadline=None)
@given(letters, st.integers(0, 10**6))
def test_reduction_confluent(word, seed):
    rng = random.Random(seed)
    a = reduce_word(word)
    assert is_reduced(a)
    assert reduce_word(word, rng) == a
    assert reduce_word(word, random.Random(seed + 1)) == a


@settings(max_examples=100, deadline=None)
@given(letters, letters)
def test_reduction_of_products(u, v):
    assert reduce_word(reduce_word(u) + reduce_word(v)) == reduce_word(tuple(u) + tuple(v))


# -- finite categories ---------------------------------------------------------------


def retract_category():
    """x -f-> y -g-> x with g f = id_y and e = f g idempotent at x."""
    arrows = {"ix": ("x", "x"), "iy": ("y", "y"), "f": ("x", "y"), "g": ("y", "x"), "e": ("x", "x")}
    comp = {
        ("ix", "ix"): "ix", ("iy", "iy"): "iy", ("ix", "f"): "f", ("f", "iy"): "f", ("iy", "g"): "g",
        ("g", "ix"): "g", ("ix", "e"): "e", ("e", "ix"): "e", ("e", "e"): "e", ("f", "g"): "e",
        ("g", "f"): "iy", ("e", "f"): "f", ("g", "e"): "g",
    }
    return FinCategory(("x", "y"), arrows, comp, {"x": "ix", "y": "iy"})


def test_check_fincategory():
    assert check_fincategory(retract_category()) == []
    bad = FinCategory(("*",), {"1": ("*", "*"), "t": ("*", "*")}, {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t"}, {"*": "1"})
    assert any("undefined" in s for s in check_fincategory(bad))


def test_core_examples():
    G = groupoid_from_groups([(["a", "b"], 2)])
    assert core_groupoid(G) == G
    t = {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "t"}
    M = monoid_category(["1", "t"], t, "1")
    assert set(core_groupoid(M).arrows) == {"1"}
    R = retract_category()
    assert set(core_groupoid(R).arrows) == {"ix", "iy"}
    G3 = groupoid_from_groups([(["p", "q"], 1)])
    # p and q stay isomorphic, the idempotent t at the extra object r is dropped
    arrows = dict(G3.arrows) | {"r1": ("r", "r"), "t": ("r", "r")}
    comp = dict(G3.comp) | {("r1", "r1"): "r1", ("r1", "t"): "t", ("t", "r1"): "t", ("t", "t"): "t"}
    C = FinCategory(G3.objects + ("r",), arrows, comp, G3.ids | {"r": "r1"})
    assert check_fincategory(C) == []
    assert set(core_groupoid(C).arrows) == {"p>p#0", "p>q#0", "q>p#0", "q>q#0", "r1"}


def small_monoids(n):
    """Every unital associative table on {0..n-1} with unit 0."""
    els = range(n)
    free = [(a, b) for a in range(1, n) for b in range(1, n)]
    for vals in product(els, repeat=len(free)):
        tab = {(0, a): a for a in els} | {(a, 0): a for a in els} | dict(zip(free, vals))
        if all(tab[(tab[(a, b)], c)] == tab[(a, tab[(b, c)])] for a in els for b in els for c in els):
            yield tab


def as_category(tab, n):
    names = [f"m{i}" for i in range(n)]
    return monoid_category(names, {(names[a], names[b]): names[c] for (a, b), c in tab.items()}, "m0")


def subcategories(C):
    others = [a for a in C.arrows if a not in C.ids.values()]
    for k in range(len(others) + 1):
        for keep in combinations(others, k):
            ks = set(keep) | set(C.ids.values())
            if all(C.comp[(f, g)] in ks for f in ks for g in ks if (f, g) in C.comp):
                yield FinCategory(C.objects, {a: C.arrows[a] for a in ks}, {k2: v for k2, v in C.comp.items() if set(k2) <= ks}, C.ids)


def is_groupoid(D):
    def inv(f):
        x, y = D.arrows[f]
        return any(D.comp.get((f, g)) == D.ids[x] and D.comp.get((g, f)) == D.ids[y] for g in D.arrows)

    return all(inv(f) for f in D.arrows)


def test_core_is_largest_hopf_subcategory():
    """A subcategory has an antipode after linearizing exactly when it is a groupoid, so it lies in the core."""
    cats = [as_category(t, n) for n in (1, 2, 3) for t in small_monoids(n)]
    cats += [retract_category(), pair_groupoid(["x", "y"]), discrete_category(["x", "y"])]
    assert len(cats) > 10
    for C in cats:
        core = core_groupoid(C)
        assert core_groupoid(core) == core
        assert solve_antipode(linearize(core)).exists
        for D in subcategories(C):
            exists = solve_antipode(linearize(D)).exists
            assert exists == is_groupoid(D)
            if exists:
                assert set(D.arrows) <= set(core.arrows)


# -- linearization ---------------------------------------------------------------------


def test_linearize_examples():
    A = linearize(cyclic_group(2))
    assert solve_antipode(A).antipode[("*", "*")] == ExactMatrix.identity(Q, 2)
    P = linearize(pair_groupoid(["x", "y"]))
    assert sum(P.dim(*p) for p in P.graph.pairs()) == 4
    D = linearize(discrete_category(["x", "y", "z"]))
    assert [D.dim(x, y) for x in "xyz" for y in "xyz"] == [1, 0, 0, 0, 1, 0, 0, 0, 1]
    assert solve_antipode(D).antipode[("x", "x")] == ExactMatrix.identity(Q, 1)


def test_linearized_inverse_matches_solver():
    rng = random.Random(4)
    for _ in range(15):
        C = random_groupoid(rng)
        assert check_fincategory(C) == []
        assert solve_antipode(linearize(C)).antipode == linearized_inverse(C)
    with pytest.raises(ValueError):
        linearized_inverse(monoid_category(["1", "t"], {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "t"}, "1"))


# -- oracle ----------------------------------------------------------------------------


def test_oracle_small_graphs():
    for G in (LOOP, EDGE, EMPTY, FinGraph(("x",), (("a", "x", "x"), ("b", "x", "x")))):
        rep = oracle_compare(G, 3)
        assert rep.equal, rep.mismatches()


def test_oracle_report_shape():
    rep = oracle_compare(LOOP, 2)
    assert rep.rows == (("x", "x", 0, 1, 1), ("x", "x", 1, 2, 2), ("x", "x", 2, 2, 2))
    assert rep.mismatches() == []
