"""The uniform category interface the completions stack over.

Any implemented category exposes enumeration of objects and hom-sets plus
composition; limits and coproducts are optional capabilities, reported via
:class:`~freecat.errors.BaseLimitMissingError` when unavailable.  This is
what lets ``Fam`` sit over a composition table, a formal-limit category, or
another ``Fam``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BaseLimitMissingError, SizeGuardError
from .fincat import FinCategory

DEFAULT_GUARD = 10 ** 6


@dataclass(frozen=True)
class Diagram:
    """A functor from a finite shape into an arbitrary implemented category."""

    shape: FinCategory
    node_objs: tuple
    edge_mors: tuple  # per shape morphism id, a morphism of the target category

    def obj(self, n):
        return self.node_objs[n]

    def mor(self, m):
        return self.edge_mors[m]

    @staticmethod
    def build(shape, cat, node_objs, edges=None):
        """Assemble a diagram, filling identity edges automatically.

        ``edges`` maps non-identity shape morphism ids to morphisms of
        ``cat``; required for every non-identity morphism of the shape.
        """
        edges = dict(edges or {})
        mors = []
        for m in range(shape.n_morphisms()):
            if shape.is_identity(m):
                mors.append(cat.identity(node_objs[shape.dom(m)]))
            else:
                mors.append(edges[m])
        return Diagram(shape, tuple(node_objs), tuple(mors))

    def check_functorial(self, cat):
        bad = []
        for m in range(self.shape.n_morphisms()):
            f = self.edge_mors[m]
            if cat.source(f) != self.node_objs[self.shape.dom(m)] \
                    or cat.target(f) != self.node_objs[self.shape.cod(m)]:
                bad.append(("endpoint", m))
        for (g, f), gf in self.shape.compose_table.items():
            if cat.compose(self.edge_mors[g], self.edge_mors[f]) != self.edge_mors[gf]:
                bad.append(("composition", g, f))
        return bad


@dataclass
class Cone:
    """An apex with one leg per diagram node; ``factor`` mediates cones.

    When the cone is limiting, ``factor(src, legs)`` returns the unique
    morphism ``src -> apex`` commuting with the legs.  Constructions that
    know their own structure install a constructive factorization; the
    default searches the hom-set.
    """

    apex: object
    legs: tuple
    _factor: object = field(default=None, repr=False)
    diagram: Diagram = None
    cat: object = field(default=None, repr=False)

    def factor(self, src, legs):
        if self._factor is not None:
            return self._factor(src, legs)
        found = [h for h in self.cat.hom(src, self.apex)
                 if all(self.cat.compose(l, h) == cl for l, cl in zip(self.legs, legs))]
        if len(found) != 1:
            raise ValueError(f"cone factoring not unique: {len(found)} candidates")
        return found[0]


@dataclass
class Cocone:
    """Dual of :class:`Cone`: a nadir with legs out of the diagram."""

    nadir: object
    legs: tuple
    _cofactor: object = field(default=None, repr=False)
    diagram: Diagram = None
    cat: object = field(default=None, repr=False)

    def cofactor(self, dst, legs):
        if self._cofactor is not None:
            return self._cofactor(dst, legs)
        found = [h for h in self.cat.hom(self.nadir, dst)
                 if all(self.cat.compose(h, l) == cl for l, cl in zip(self.legs, legs))]
        if len(found) != 1:
            raise ValueError(f"cocone factoring not unique: {len(found)} candidates")
        return found[0]


class Category:
    """Capability interface shared by all implemented categories."""

    def objects(self):
        raise NotImplementedError

    def hom(self, a, b):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def source(self, m):
        raise NotImplementedError

    def target(self, m):
        raise NotImplementedError

    # optional capabilities ------------------------------------------------

    def limit(self, diagram: Diagram) -> Cone:
        raise BaseLimitMissingError(f"{type(self).__name__} does not form limits")

    def coproduct(self, parts) -> Cocone:
        raise BaseLimitMissingError(f"{type(self).__name__} does not form coproducts")

    def terminal(self):
        from .fincat import initial_category
        empty = Diagram(initial_category(), (), ())
        return self.limit(empty)

    def is_initial(self, obj, testbed=None):
        testbed = self.objects() if testbed is None else testbed
        return all(len(self.hom(obj, t)) == 1 for t in testbed)


class TableCategory(Category):
    """A finite base category; morphisms are the table's morphism ids.

    Limits and coproducts are found by brute-force universal-property
    search over all objects, so they exist exactly when the table has them.
    """

    def __init__(self, table: FinCategory, guard=DEFAULT_GUARD):
        self.table = table
        self.guard = guard
        self._limit_cache = {}
        self._coprod_cache = {}

    def objects(self):
        return list(range(self.table.n_objects()))

    def hom(self, a, b):
        return list(self.table.hom(a, b))

    def identity(self, a):
        return self.table.id_of(a)

    def compose(self, g, f):
        return self.table.compose(g, f)

    def source(self, m):
        return self.table.dom(m)

    def target(self, m):
        return self.table.cod(m)

    def __eq__(self, other):
        return isinstance(other, TableCategory) and self.table == other.table

    def __hash__(self):
        return hash(("TableCategory", self.table))

    def __repr__(self):
        return f"TableCategory({self.table!r})"

    # -- brute-force (co)limits -------------------------------------------

    def limit(self, diagram: Diagram) -> Cone:
        key = diagram
        if key in self._limit_cache:
            got = self._limit_cache[key]
            if got is None:
                raise BaseLimitMissingError("no limiting cone exists in the table")
            return got
        from .oracle import enumerate_cones, is_limiting
        for apex in self.objects():
            for legs in enumerate_cones(self, diagram, apex):
                ok, _ = is_limiting(self, diagram, apex, legs, self.objects())
                if ok:
                    cone = Cone(apex, legs, None, diagram, self)
                    self._limit_cache[key] = cone
                    return cone
        self._limit_cache[key] = None
        raise BaseLimitMissingError("no limiting cone exists in the table")

    def coproduct(self, parts) -> Cocone:
        key = tuple(parts)
        if key in self._coprod_cache:
            got = self._coprod_cache[key]
            if got is None:
                raise BaseLimitMissingError("no coproduct exists in the table")
            return got
        from .oracle import enumerate_cocones, is_colimiting
        from .fincat import discrete
        diagram = Diagram.build(discrete(len(parts)), self, tuple(parts))
        for nadir in self.objects():
            for legs in enumerate_cocones(self, diagram, nadir):
                ok, _ = is_colimiting(self, diagram, nadir, legs, self.objects())
                if ok:
                    cocone = Cocone(nadir, legs, None, diagram, self)
                    self._coprod_cache[key] = cocone
                    return cocone
        self._coprod_cache[key] = None
        raise BaseLimitMissingError("no coproduct exists in the table")


def pair_mor(cat, f, g, src_cone: Cone, dst_cone: Cone):
    """``f × g`` between binary products given as limiting cones."""
    legs = (cat.compose(f, src_cone.legs[0]), cat.compose(g, src_cone.legs[1]))
    return dst_cone.factor(src_cone.apex, legs)


def guarded_product(sizes, what, guard):
    total = 1
    for s in sizes:
        total *= s
    if total > guard:
        raise SizeGuardError(what, total, guard)
    return total
