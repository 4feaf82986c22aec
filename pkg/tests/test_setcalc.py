import itertools

import pytest
from hypothesis import given, settings, strategies as st

from freecat.errors import SizeGuardError
from freecat.fincat import (discrete, parallel_pair_shape, span_shape,
                            walking_arrow)
from freecat.setcalc import (SetDiagram, UnionFind, colimit_of_sets,
                             limit_of_sets)


def test_union_find_basic():
    uf = UnionFind(5)
    uf.union(0, 1)
    uf.union(3, 4)
    assert uf.find(0) == uf.find(1)
    assert uf.find(3) == uf.find(4)
    assert uf.find(0) != uf.find(3)
    assert uf.find(2) == 2


def test_colimit_of_discrete_diagram_is_disjoint_union():
    d = SetDiagram(discrete(3), [["a", "b"], ["c"], ["d", "e"]], {})
    col = colimit_of_sets(d)
    assert col.n_classes() == 5
    # canonical reps come in lexicographic (node, element-index) order
    assert col.canonical_rep == [(0, "a"), (0, "b"), (1, "c"), (2, "d"), (2, "e")]


def test_colimit_merges_along_edges():
    # coequalizer of u, v: {x,y} -> {p,q,r} with u=(p,q), v=(q,r)
    shape = parallel_pair_shape()
    edge = {m: maps for m, maps in zip(
        [m for m in range(shape.n_morphisms()) if not shape.is_identity(m)],
        [{"x": "p", "y": "q"}, {"x": "q", "y": "r"}])}
    d = SetDiagram(shape, [["x", "y"], ["p", "q", "r"]], edge)
    col = colimit_of_sets(d)
    # p~q~r all identified through the zig-zag with x and y
    assert col.inject(1, "p") == col.inject(1, "q") == col.inject(1, "r")


def test_colimit_canonical_rep_is_least_pair():
    d = SetDiagram(walking_arrow(), [["s"], ["t"]],
                   {2 if walking_arrow().is_identity(0) else
                    next(m for m in range(3) if not walking_arrow().is_identity(m)):
                    {"s": "t"}})
    col = colimit_of_sets(d)
    assert col.n_classes() == 1
    assert col.canonical_rep[0] == (0, "s")


def test_limit_of_discrete_diagram_is_product():
    d = SetDiagram(discrete(2), [[0, 1], ["a", "b", "c"]], {})
    lim = limit_of_sets(d)
    assert lim == [(x, y) for x in (0, 1) for y in ("a", "b", "c")]


def test_limit_respects_edge_constraints():
    shape = walking_arrow()
    m = next(i for i in range(3) if not shape.is_identity(i))
    d = SetDiagram(shape, [[0, 1, 2], ["even", "odd"]],
                   {m: {0: "even", 1: "odd", 2: "even"}})
    lim = limit_of_sets(d)
    assert lim == [(0, "even"), (1, "odd"), (2, "even")]


def test_limit_over_span_shape():
    # span m <- l, m -> r wired as the pairs whose images agree is not the
    # reading here: span legs go out of node 0, constraining both others
    shape = span_shape()
    edges = {}
    for m in range(shape.n_morphisms()):
        if shape.is_identity(m):
            continue
        edges[m] = {"x": 0, "y": 1} if shape.cod(m) == 1 else {"x": 1, "y": 1}
    d = SetDiagram(shape, [["x", "y"], [0, 1], [0, 1]], edges)
    lim = limit_of_sets(d)
    assert lim == [("x", 0, 1), ("y", 1, 1)]


def test_functoriality_check_catches_bad_diagrams():
    shape = walking_arrow()
    m = next(i for i in range(3) if not shape.is_identity(i))
    good = SetDiagram(shape, [[0], [1]], {m: {0: 1}})
    assert good.check_functorial() == []
    bad = SetDiagram(shape, [[0], [1]], {m: {0: 99}})
    assert bad.check_functorial() != []


def test_size_guard_on_limits():
    d = SetDiagram(discrete(8), [list(range(10))] * 8, {})
    with pytest.raises(SizeGuardError):
        limit_of_sets(d, guard=10 ** 6)


def test_size_guard_on_colimits():
    d = SetDiagram(discrete(2), [list(range(600000)), list(range(600001))], {})
    with pytest.raises(SizeGuardError):
        colimit_of_sets(d, guard=10 ** 6)


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(0, 5), min_size=0, max_size=4,
                          unique=True), min_size=1, max_size=4))
def test_discrete_colimit_class_count_is_total_size(node_sets):
    d = SetDiagram(discrete(len(node_sets)), node_sets, {})
    col = colimit_of_sets(d)
    assert col.n_classes() == sum(len(s) for s in node_sets)


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(0, 3), min_size=1, max_size=3,
                          unique=True), min_size=1, max_size=3))
def test_discrete_limit_is_cartesian_product(node_sets):
    d = SetDiagram(discrete(len(node_sets)), node_sets, {})
    lim = limit_of_sets(d)
    assert lim == list(itertools.product(*node_sets))
