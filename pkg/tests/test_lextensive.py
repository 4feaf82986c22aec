import itertools

import pytest

from freecat.core import Diagram, TableCategory
from freecat.fam import FamCategory, FamObject
from freecat.fincat import (ShapeClass, chain_lattice, cospan_shape, discrete,
                            initial_category, pairs_of_sets_category,
                            terminal_category, walking_arrow)
from freecat.lextensive import (STAR, check_distributive,
                                check_exp_preserves_coproducts,
                                check_extensive, check_flatten_preserves,
                                check_reflection, curry, exp_of_generator,
                                exponential, verify_exponential)
from freecat.limcomp import LimCategory
from freecat.oracle import iso_search


def famlim(base=None, index_bound=2, max_objects=2):
    L = LimCategory(base if base is not None else walking_arrow(),
                    ShapeClass(max_objects=max_objects, max_morphisms=8))
    return FamCategory(L, index_bound=index_bound)


@pytest.fixture(scope="module")
def finset():
    # families over the formal-limit completion of the empty category are
    # finite sets: every fiber is the empty diagram (the terminal object)
    L = LimCategory(initial_category(), ShapeClass(max_objects=2,
                                                   max_morphisms=8))
    return FamCategory(L, index_bound=6)


@pytest.fixture(scope="module")
def hat():
    return famlim()


def nset(fam, n):
    one = fam.base.terminal_obj()
    return FamObject((one,) * n)


# -- exponentials in the finite-set model -----------------------------------

def test_finset_exponential_cardinalities(finset):
    for m, n in itertools.product(range(4), repeat=2):
        w = exponential(finset, nset(finset, m), nset(finset, n))
        assert len(w.omega) == n ** m
        assert w.obj.size() == n ** m


def test_finset_two_to_three_has_nine_points(finset):
    w = exponential(finset, nset(finset, 2), nset(finset, 3))
    assert len(w.omega) == 9
    pt = nset(finset, 1)
    assert len(finset.hom(pt, w.obj)) == 9
    report = verify_exponential(w, [nset(finset, k) for k in range(4)])
    assert report["status"] == "pass", report["witness"]


def test_finset_evaluation_is_function_application(finset):
    two, three = nset(finset, 2), nset(finset, 3)
    w = exponential(finset, two, three)
    ev = w.eval_mor()
    assert ev.src.size() == 9 * 2 and ev.dst.size() == 3
    # each point of (2=>3)x2 is a (function, argument) pair; evaluation's
    # reindexing must hit every element of 3 the right number of times
    counts = [ev.reindex.count(k) for k in range(3)]
    assert sorted(counts) == [6, 6, 6]


def test_finset_curry_uncurry_round_trip(finset):
    two, three = nset(finset, 2), nset(finset, 3)
    w = exponential(finset, two, three)
    a = nset(finset, 2)
    cone = w.product_with_e(a)
    homs = finset.hom(cone.apex, three)
    assert len(homs) == 3 ** 4
    seen = set()
    for h in homs:
        t = curry(w, a, h)
        assert w.uncurry(t) == h
        seen.add(t)
    assert len(seen) == len(homs) == len(finset.hom(a, w.obj))


# -- exponentials over the walking arrow ------------------------------------

def test_generator_exponential_formula(hat):
    L = hat.base
    for d_obj, x_obj in itertools.product(range(2), repeat=2):
        d = FamObject((L.unit(d_obj),))
        x = FamObject((L.unit(x_obj),))
        predicted = exp_of_generator(hat, d, x)
        w = exponential(hat, d, x)
        assert w.obj.size() == predicted.size()
        assert iso_search(hat, w.obj, predicted) is not None


def test_generator_exponential_fibers(hat):
    # y(a) => y(b) over the walking arrow a -> b: one section lands in the
    # codomain fiber, one collapses to the terminal (the hom element f)
    L = hat.base
    ya, yb = FamObject((L.unit(0),)), FamObject((L.unit(1),))
    w = exponential(hat, ya, yb)
    assert len(w.omega) == 2
    kinds = sorted("unit" if tags[0] == STAR else "hom"
                   for section in w.omega for _, tags in section)
    assert kinds == ["hom", "unit"]


def test_verify_certificate_agrees_with_direct_check(hat):
    tb = hat.skeleton()[:8]
    pairs = [(tb[2], tb[3]), (tb[3], tb[2]), (tb[5], tb[6])]
    for e, x in pairs:
        w = exponential(hat, e, x)
        cert = verify_exponential(w, tb, naturality=True)
        direct = verify_exponential(w, tb, naturality="direct")
        assert cert["status"] == direct["status"] == "pass", (cert, direct)


def test_verify_reports_non_bijective_witness(hat):
    # grafting the wrong exponential object onto a witness must be caught
    e, x = hat.skeleton()[2], hat.skeleton()[3]
    w = exponential(hat, e, x)
    bigger = hat.coproduct([w.obj, hat.copower_terminal(1)]).nadir
    w.obj = bigger
    w._prod_cache.clear()
    w._curry_cache.clear()
    w._uncurry_cache.clear()
    report = verify_exponential(w, [FamObject(())] + hat.skeleton()[1:3])
    assert report["status"] == "fail"
    assert report["witness"]["kind"] == "not-bijective"


def test_exponential_with_empty_exponent_is_terminal_like(hat):
    empty = FamObject(())
    for x in hat.skeleton()[:6]:
        w = exponential(hat, empty, x)
        assert w.obj.size() == 1
        for a in hat.skeleton()[:6]:
            assert len(hat.hom(a, w.obj)) == 1


# -- structural checkers -----------------------------------------------------

def lattice():
    # the three-element chain 0 < a < 1
    return TableCategory(chain_lattice(2))


def test_lattice_fails_extensivity_with_axiom_a_witness():
    cat = lattice()
    report = check_extensive(cat, cat.objects(), morphism_cap=2)
    assert report["status"] == "fail"
    assert report["witness"]["axiom"] == "a"
    assert report["axioms"]["a"]["status"] == "fail"


def test_pairs_of_sets_fails_extensivity_with_witness():
    cat = TableCategory(pairs_of_sets_category(1))
    report = check_extensive(cat, cat.objects(), morphism_cap=2)
    assert report["status"] == "fail"
    assert report["witness"] is not None


def test_famlim_is_extensive(hat):
    tb = hat.skeleton()[:6]
    report = check_extensive(hat, tb, morphism_cap=2)
    assert report["status"] == "pass", report["witness"]


def test_lattice_is_distributive():
    cat = lattice()
    shape = discrete(2)
    fam = FamCategory(cat)
    objs = cat.objects()
    combos = itertools.product(
        [FamObject((a, b)) for a, b in itertools.combinations(objs, 2)],
        repeat=2)
    for combo in itertools.islice(combos, 4):
        d = Diagram.build(shape, fam, combo)
        report = check_distributive(cat, shape, d)
        assert report["status"] == "pass", report["witness"]


def test_flatten_preserves_limits(hat):
    L = hat.base
    inner = FamCategory(L)
    outer = FamCategory(inner)
    x = FamObject((FamObject((L.unit(0),)), FamObject((L.unit(1),))))
    y = FamObject((FamObject((L.unit(1),)),))
    f = outer.hom(x, y)[0]
    shape = walking_arrow()
    d = Diagram.build(shape, outer, (x, y), {
        m: f for m in range(shape.n_morphisms()) if not shape.is_identity(m)})
    report = check_flatten_preserves(L, d)
    assert report["status"] == "pass", report["witness"]


def test_connected_exponent_preserves_coproducts(hat):
    L = hat.base
    parts = [FamObject((L.unit(0),)), FamObject((L.unit(1),))]
    for e in (FamObject((L.unit(0),)), FamObject((L.unit(1),))):
        report = check_exp_preserves_coproducts(hat, e, parts)
        assert report["status"] == "pass", report["witness"]
        assert hat.is_connected(e)[0]


def test_disconnected_exponent_breaks_coproducts(hat):
    L = hat.base
    parts = [FamObject((L.unit(0),)), FamObject((L.unit(1),))]
    for e in (FamObject(()), FamObject((L.unit(0), L.unit(1)))):
        report = check_exp_preserves_coproducts(hat, e, parts)
        assert report["status"] == "fail"
        assert not hat.is_connected(e)[0]


def test_reflection_across_bound_regimes():
    table = walking_arrow()
    small = ShapeClass(max_objects=2, max_morphisms=8)
    large = ShapeClass(max_objects=3, max_morphisms=12)
    gens = tuple(LimCategory(table, small).unit(g) for g in range(2))
    report = check_reflection(table, gens, gens, small, large)
    assert report["status"] == "pass", report["witness"]
    assert report["witness"]["bookkeeping_agrees"]
