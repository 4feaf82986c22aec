"""Finite categories given by explicit composition tables, and functors.

A :class:`FinCategory` stores objects and morphisms as dense integer ids in
insertion order; morphism equality is id equality, so everything downstream
gets decidable hom-sets for free.  Values are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CyclicGraphError, NotAPosetError


class FinCategory:
    """A finite category: objects, morphisms and a full composition table.

    Parameters
    ----------
    objects:
        object names, in id order.
    morphisms:
        ``(name, dom, cod)`` triples, in id order.  Must include identities.
    identity:
        per-object morphism id of its identity, aligned with ``objects``.
    compose:
        mapping ``(g, f) -> g∘f`` on morphism ids, defined exactly on
        composable pairs (``cod(f) == dom(g)``).
    """

    __slots__ = (
        "name", "objects", "morphisms", "identity", "compose_table", "_hash",
        "_hom_cache", "_key_cache",
    )

    def __init__(self, objects, morphisms, identity, compose, name=""):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple((str(n), int(d), int(c)) for n, d, c in morphisms)
        self.identity = tuple(identity)
        self.compose_table = dict(compose)
        # identity composites are implicit in builder/file input
        for m, (_, d, c) in enumerate(self.morphisms):
            if c < len(self.identity):
                self.compose_table.setdefault((self.identity[c], m), m)
            if d < len(self.identity):
                self.compose_table.setdefault((m, self.identity[d]), m)
        self._hash = None
        self._hom_cache = {}
        self._key_cache = None

    # -- structure accessors -------------------------------------------------

    def n_objects(self):
        return len(self.objects)

    def n_morphisms(self):
        return len(self.morphisms)

    def dom(self, m):
        return self.morphisms[m][1]

    def cod(self, m):
        return self.morphisms[m][2]

    def id_of(self, obj):
        return self.identity[obj]

    def compose(self, g, f):
        """Return ``g ∘ f``; KeyError when the pair is not composable."""
        return self.compose_table[(g, f)]

    def hom(self, a, b):
        """Morphism ids from object ``a`` to object ``b``, in id order."""
        key = (a, b)
        got = self._hom_cache.get(key)
        if got is None:
            got = tuple(m for m in range(len(self.morphisms))
                        if self.morphisms[m][1] == a and self.morphisms[m][2] == b)
            self._hom_cache[key] = got
        return got

    def is_identity(self, m):
        return m in self.identity

    # -- value semantics -----------------------------------------------------

    def _key(self):
        if self._key_cache is None:
            self._key_cache = (self.objects, self.morphisms, self.identity,
                               tuple(sorted(self.compose_table.items())))
        return self._key_cache

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        label = self.name or "FinCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


@dataclass(frozen=True)
class Functor:
    """A functor between finite categories, as explicit id maps."""

    dom: FinCategory
    cod: FinCategory
    obj_map: tuple
    mor_map: tuple

    def on_obj(self, o):
        return self.obj_map[o]

    def on_mor(self, m):
        return self.mor_map[m]


@dataclass(frozen=True)
class ShapeClass:
    """Bounds delimiting which shape categories a computation may range over."""

    tag: str = "finite"  # finite-discrete | finite | bounded-small
    max_objects: int = 3
    max_morphisms: int = 16
    max_index: int = 6

    def __post_init__(self):
        if min(self.max_objects, self.max_morphisms, self.max_index) < 1:
            raise ValueError("ShapeClass bounds must be strictly positive")

    def admits(self, cat: FinCategory) -> bool:
        if cat.n_objects() > self.max_objects or cat.n_morphisms() > self.max_morphisms:
            return False
        if self.tag == "finite-discrete":
            return cat.n_morphisms() == cat.n_objects()
        return True


# ---------------------------------------------------------------------------
# Validation

def check_category_axioms(c: FinCategory):
    """Validate the category axioms; returns ``(ok, violations)``.

    Violations are data, not exceptions: each entry names the offending
    morphism, pair, or triple.
    """
    violations = []
    n_m = c.n_morphisms()
    n_o = c.n_objects()

    if len(c.identity) != n_o:
        violations.append(("identity-arity", len(c.identity), n_o))
        return False, violations

    for o in range(n_o):
        i = c.identity[o]
        if not (0 <= i < n_m) or c.dom(i) != o or c.cod(i) != o:
            violations.append(("bad-identity", o, i))

    for m in range(n_m):
        if not (0 <= c.dom(m) < n_o and 0 <= c.cod(m) < n_o):
            violations.append(("dangling-morphism", m))

    for (g, f), gf in c.compose_table.items():
        if c.cod(f) != c.dom(g):
            violations.append(("ill-typed composite", g, f))
            continue
        if c.dom(gf) != c.dom(f) or c.cod(gf) != c.cod(g):
            violations.append(("composite-endpoints", g, f, gf))
    for g in range(n_m):
        for f in range(n_m):
            if c.cod(f) == c.dom(g) and (g, f) not in c.compose_table:
                violations.append(("missing-composite", g, f))

    if not violations:
        for f in range(n_m):
            if c.compose(c.identity[c.cod(f)], f) != f:
                violations.append(("left-unit", f))
            if c.compose(f, c.identity[c.dom(f)]) != f:
                violations.append(("right-unit", f))
        for h in range(n_m):
            for g in range(n_m):
                if c.cod(g) != c.dom(h):
                    continue
                hg = c.compose(h, g)
                for f in range(n_m):
                    if c.cod(f) != c.dom(g):
                        continue
                    if c.compose(hg, f) != c.compose(h, c.compose(g, f)):
                        violations.append(("associativity", h, g, f))

    return not violations, violations


def check_functor(F: Functor):
    """Validate functoriality of ``F``; returns ``(ok, violations)``."""
    violations = []
    J, C = F.dom, F.cod
    if len(F.obj_map) != J.n_objects():
        violations.append(("obj-map-arity",))
    if len(F.mor_map) != J.n_morphisms():
        violations.append(("mor-map-arity",))
    if violations:
        return False, violations

    for m in range(J.n_morphisms()):
        fm = F.mor_map[m]
        if C.dom(fm) != F.obj_map[J.dom(m)] or C.cod(fm) != F.obj_map[J.cod(m)]:
            violations.append(("endpoint-mismatch", m))
    for o in range(J.n_objects()):
        if F.mor_map[J.id_of(o)] != C.id_of(F.obj_map[o]):
            violations.append(("identity-not-preserved", o))
    for (g, f), gf in J.compose_table.items():
        if C.cod(F.mor_map[f]) != C.dom(F.mor_map[g]):
            continue  # already reported as endpoint mismatch
        if C.compose(F.mor_map[g], F.mor_map[f]) != F.mor_map[gf]:
            violations.append(("composition-not-preserved", g, f))
    return not violations, violations


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, tuple(range(c.n_objects())), tuple(range(c.n_morphisms())))


def constant_functor(dom: FinCategory, cod: FinCategory, obj: int) -> Functor:
    return Functor(dom, cod,
                   tuple(obj for _ in range(dom.n_objects())),
                   tuple(cod.id_of(obj) for _ in range(dom.n_morphisms())))


def all_functors(J: FinCategory, C: FinCategory):
    """Enumerate every functor ``J -> C`` (brute force, deterministic order)."""
    non_id = [m for m in range(J.n_morphisms()) if not J.is_identity(m)]
    out = []
    for objs in itertools.product(range(C.n_objects()), repeat=J.n_objects()):
        pools = [C.hom(objs[J.dom(m)], objs[J.cod(m)]) for m in non_id]
        for choice in itertools.product(*pools):
            mor_map = [None] * J.n_morphisms()
            for o in range(J.n_objects()):
                mor_map[J.id_of(o)] = C.id_of(objs[o])
            for m, fm in zip(non_id, choice):
                mor_map[m] = fm
            F = Functor(J, C, objs, tuple(mor_map))
            ok, _ = check_functor(F)
            if ok:
                out.append(F)
    return out


# ---------------------------------------------------------------------------
# Builders

def _close_free(objects, edges, name):
    """Free category on a finite acyclic multigraph.

    ``edges`` is a list of ``(name, src, dst)``.  Morphisms are directed
    paths; a cycle would make the category infinite, so reject them.
    """
    n = len(objects)
    adj = [[] for _ in range(n)]
    for e, (ename, s, d) in enumerate(edges):
        adj[s].append((e, d))

    # cycle detection via DFS colouring
    colour = [0] * n

    def dfs(u):
        colour[u] = 1
        for _, v in adj[u]:
            if colour[v] == 1:
                raise CyclicGraphError(f"directed cycle through {objects[v]!r}")
            if colour[v] == 0:
                dfs(v)
        colour[u] = 2

    for u in range(n):
        if colour[u] == 0:
            dfs(u)

    # enumerate all paths (tuples of edge ids), shortest first
    paths = [((), u, u) for u in range(n)]
    frontier = list(paths)
    while frontier:
        new = []
        for p, s, d in frontier:
            for e, v in adj[d]:
                new.append((p + (e,), s, v))
        paths.extend(new)
        frontier = new

    morphisms = []
    index = {}
    for p, s, d in paths:
        if p == ():
            mname = f"id_{objects[s]}"
        else:
            mname = "*".join(edges[e][0] for e in reversed(p))
        index[(p, s)] = len(morphisms)
        morphisms.append((mname, s, d))
    identity = [index[((), u)] for u in range(n)]
    compose = {}
    for pf, sf, df in paths:
        f = index[(pf, sf)]
        for pg, sg, dg in paths:
            if sg != df:
                continue
            g = index[(pg, sg)]
            compose[(g, f)] = index[(pf + pg, sf)]
    return FinCategory(objects, morphisms, identity, compose, name=name)


def _poset_category(objects, leq, name):
    """Thin category of a finite partial order; ``leq`` is a set of pairs.

    Pairs may name objects or give their indices.
    """
    n = len(objects)
    idx = {o: i for i, o in enumerate(objects)}
    pairs = {tuple(idx.get(x, x) for x in p) for p in leq}
    rel = {(i, i) for i in range(n)} | pairs
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise NotAPosetError(f"not antisymmetric: {objects[a]!r}, {objects[b]!r}")
    for a, b in list(rel):
        for c, d in list(rel):
            if b == c and (a, d) not in rel:
                raise NotAPosetError(
                    f"not transitive: missing {objects[a]!r} <= {objects[d]!r}")
    morphisms = []
    index = {}
    for a in range(n):
        for b in range(n):
            if (a, b) in rel:
                index[(a, b)] = len(morphisms)
                nm = f"id_{objects[a]}" if a == b else f"{objects[a]}<={objects[b]}"
                morphisms.append((nm, a, b))
    identity = [index[(a, a)] for a in range(n)]
    compose = {}
    for (a, b), f in index.items():
        for (c, d), g in index.items():
            if c == b:
                compose[(g, f)] = index[(a, d)]
    return FinCategory(objects, morphisms, identity, compose, name=name)


def discrete(n: int, name=None) -> FinCategory:
    objs = [str(i) for i in range(n)]
    return FinCategory(objs, [(f"id_{o}", i, i) for i, o in enumerate(objs)],
                       list(range(n)), {}, name=name or f"discrete({n})")


def terminal_category() -> FinCategory:
    return FinCategory(["pt"], [("id_pt", 0, 0)], [0], {}, name="terminal")


def initial_category() -> FinCategory:
    return discrete(0, name="initial")


def walking_arrow() -> FinCategory:
    return _close_free(["a", "b"], [("f", 0, 1)], "walking-arrow")


def cospan_shape() -> FinCategory:
    return _close_free(["l", "m", "r"], [("u", 0, 1), ("v", 2, 1)], "cospan")


def span_shape() -> FinCategory:
    return _close_free(["m", "l", "r"], [("u", 0, 1), ("v", 0, 2)], "span")


def parallel_pair_shape() -> FinCategory:
    return _close_free(["a", "b"], [("u", 0, 1), ("v", 0, 1)], "parallel-pair")


def free_category(objects, edges, name="free") -> FinCategory:
    return _close_free(list(objects), [tuple(e) for e in edges], name)


def poset_category(objects, leq, name="poset") -> FinCategory:
    return _poset_category(list(objects), leq, name)


def chain_lattice(n: int) -> FinCategory:
    """The linear order with ``n + 1`` elements as a thin category.

    ``chain_lattice(2)`` is the three-element chain 0 < a < 1.
    """
    if n == 2:
        objs = ["0", "a", "1"]
    else:
        objs = [str(i) for i in range(n + 1)]
    leq = [(i, j) for i in range(n + 1) for j in range(n + 1) if i < j]
    return _poset_category(objs, leq, f"chain({n})")


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    objs = [f"({a},{b})" for a in c.objects for b in d.objects]
    oindex = {(a, b): a * d.n_objects() + b
              for a in range(c.n_objects()) for b in range(d.n_objects())}
    morphisms = []
    mindex = {}
    for m1 in range(c.n_morphisms()):
        for m2 in range(d.n_morphisms()):
            mindex[(m1, m2)] = len(morphisms)
            morphisms.append((f"({c.morphisms[m1][0]},{d.morphisms[m2][0]})",
                              oindex[(c.dom(m1), d.dom(m2))],
                              oindex[(c.cod(m1), d.cod(m2))]))
    identity = [mindex[(c.id_of(a), d.id_of(b))]
                for a in range(c.n_objects()) for b in range(d.n_objects())]
    compose = {}
    for (g1, g2), g in mindex.items():
        for (f1, f2), f in mindex.items():
            if c.cod(f1) == c.dom(g1) and d.cod(f2) == d.dom(g2):
                compose[(g, f)] = mindex[(c.compose(g1, f1), d.compose(g2, f2))]
    return FinCategory(objs, morphisms, identity, compose,
                       name=f"{c.name}x{d.name}")


def pairs_of_sets_category(n: int) -> FinCategory:
    """Skeleton of the pairs-of-finite-sets category, bounded at size ``n``.

    Objects are pairs of cardinalities ``(a, b)`` with ``a, b <= n``, both
    zero or both nonzero; morphisms are pairs of functions.
    """
    sizes = [(0, 0)] + [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    objs = [f"({a},{b})" for a, b in sizes]
    oindex = {s: i for i, s in enumerate(sizes)}
    morphisms = []
    mindex = {}

    def functions(src, dst):
        if src == 0:
            return [()]
        if dst == 0:
            return []
        return list(itertools.product(range(dst), repeat=src))

    for (a, b) in sizes:
        for (a2, b2) in sizes:
            for p in functions(a, a2):
                for q in functions(b, b2):
                    key = ((a, b), (a2, b2), p, q)
                    mindex[key] = len(morphisms)
                    morphisms.append(
                        (f"({a},{b})->({a2},{b2}):{p}|{q}",
                         oindex[(a, b)], oindex[(a2, b2)]))
    identity = []
    for (a, b) in sizes:
        identity.append(mindex[((a, b), (a, b), tuple(range(a)), tuple(range(b)))])
    compose = {}
    for (sf, tf, pf, qf), f in mindex.items():
        for (sg, tg, pg, qg), g in mindex.items():
            if sg != tf:
                continue
            p = tuple(pg[x] for x in pf)
            q = tuple(qg[x] for x in qf)
            compose[(g, f)] = mindex[(sf, tg, p, q)]
    return FinCategory(objs, morphisms, identity, compose, name=f"pairs-of-sets({n})")


def opposite_category(c: FinCategory) -> FinCategory:
    """Reverse all morphisms; the composition table is transposed."""
    morphisms = [(n, cod, dom) for (n, dom, cod) in c.morphisms]
    compose = {(f, g): gf for (g, f), gf in c.compose_table.items()}
    return FinCategory(c.objects, morphisms, c.identity, compose,
                       name=f"{c.name}^op" if c.name else "op")


_DISJOINT_UNION_CACHE = {}


def disjoint_union(cats) -> FinCategory:
    """Coproduct of finite categories: side-by-side, no cross morphisms.

    Results are interned so equal unions are the same object, which keeps
    equality checks on the (heavily shared) product shapes cheap.
    """
    cats = list(cats)
    cache_key = tuple(c._key() for c in cats)
    got = _DISJOINT_UNION_CACHE.get(cache_key)
    if got is not None:
        return got
    objects, morphisms, identity, compose = [], [], [], {}
    for c in cats:
        o_off, m_off = len(objects), len(morphisms)
        objects.extend(c.objects)
        morphisms.extend((n, d + o_off, cd + o_off) for n, d, cd in c.morphisms)
        identity.extend(i + m_off for i in c.identity)
        compose.update({(g + m_off, f + m_off): gf + m_off
                        for (g, f), gf in c.compose_table.items()})
    out = FinCategory(objects, morphisms, identity, compose, name="disjoint-union")
    _DISJOINT_UNION_CACHE[cache_key] = out
    return out


BUILDERS = {
    "discrete": lambda params: discrete(int(params["n"])),
    "terminal": lambda params: terminal_category(),
    "initial": lambda params: initial_category(),
    "walking-arrow": lambda params: walking_arrow(),
    "poset": lambda params: poset_category(params["objects"], [tuple(p) for p in params["leq"]]),
    "free": lambda params: free_category(params["objects"], params["edges"]),
    "chain": lambda params: chain_lattice(int(params["n"])),
    "product": lambda params: product_category(build(params["left"]), build(params["right"])),
    "pairs-of-sets": lambda params: pairs_of_sets_category(int(params["n"])),
}


def build(spec) -> FinCategory:
    """Build a gallery category from a spec ``{"builder": kind, "params": {...}}``."""
    kind = spec["builder"]
    if kind not in BUILDERS:
        raise ValueError(f"unknown builder {kind!r}")
    return BUILDERS[kind](spec.get("params", {}))


def gallery():
    """The named example categories used throughout the test suites."""
    return {
        "terminal": terminal_category(),
        "initial": initial_category(),
        "walking-arrow": walking_arrow(),
        "discrete2": discrete(2),
        "discrete3": discrete(3),
        "cospan": cospan_shape(),
        "span": span_shape(),
        "parallel-pair": parallel_pair_shape(),
        "chain": chain_lattice(2),
        "pairs-of-sets": pairs_of_sets_category(2),
    }
