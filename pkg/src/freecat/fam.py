"""The free coproduct completion over any implemented base category.

Objects are finite indexed families of base objects; a morphism is a
reindexing function together with one base morphism per index.  The
hom-set is the product-of-coproducts of base hom-sets, enumerated
directly.  Because the base is anything satisfying the capability
interface, this stacks over a composition table, a formal-limit
completion, or another family category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Category, Cocone, Cone, Diagram, guarded_product
from .errors import PreconditionViolatedError, SizeGuardError
from .fincat import discrete, initial_category
from .setcalc import SetDiagram, limit_of_sets

DEFAULT_GUARD = 10 ** 6
DEFAULT_INDEX_BOUND = 6

# caches flush (rather than evict) past these sizes: long sweeps over many
# objects would otherwise retain every enumerated hom-set
HOM_CACHE_CAP = 512
COMPOSE_CACHE_CAP = 1 << 19


@dataclass(frozen=True)
class FamObject:
    """A finite family of base objects; the index set is ``range(len(fibers))``."""

    fibers: tuple

    def index(self):
        return range(len(self.fibers))

    def size(self):
        return len(self.fibers)

    def __repr__(self):
        return f"Fam{list(self.fibers)!r}"

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("FamObject", self.fibers)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FamObject):
            return NotImplemented
        return self._hash == other._hash and self.fibers == other.fibers


@dataclass(frozen=True)
class FamMorphism:
    """Reindexing plus fibrewise base morphisms."""

    src: FamObject
    dst: FamObject
    reindex: tuple
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "_hash",
                           hash((self.src, self.dst, self.reindex,
                                 self.components)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FamMorphism):
            return NotImplemented
        return (self._hash == other._hash and self.reindex == other.reindex
                and self.components == other.components
                and self.src == other.src and self.dst == other.dst)


class FamCategory(Category):
    """``Fam`` of a base satisfying the capability interface."""

    def __init__(self, base: Category, index_bound=DEFAULT_INDEX_BOUND,
                 guard=DEFAULT_GUARD):
        self.base = base
        self.index_bound = index_bound
        self.guard = guard
        self._hom_cache = {}
        self._compose_cache = {}
        self._product_cache = {}

    def __eq__(self, other):
        return isinstance(other, FamCategory) and self.base == other.base

    def __hash__(self):
        return hash(("FamCategory", self.base))

    # -- basic structure ---------------------------------------------------

    def unit(self, base_obj) -> FamObject:
        return FamObject((base_obj,))

    def unit_mor(self, base_mor) -> FamMorphism:
        return FamMorphism(self.unit(self.base.source(base_mor)),
                           self.unit(self.base.target(base_mor)),
                           (0,), (base_mor,))

    def check_object(self, x: FamObject):
        if x.size() > self.index_bound:
            raise SizeGuardError("family index", x.size(), self.index_bound)

    def hom(self, x: FamObject, y: FamObject):
        """Enumerate the product over ``i`` of coproducts over ``j`` of base homs."""
        key = (x, y)
        got = self._hom_cache.get(key)
        if got is not None:
            return got
        pools = []
        for xi in x.fibers:
            choices = [(j, m) for j, yj in enumerate(y.fibers)
                       for m in self.base.hom(xi, yj)]
            pools.append(choices)
        guarded_product([len(p) for p in pools], "hom_fam", self.guard)
        out = []
        for pick in itertools.product(*pools):
            out.append(FamMorphism(x, y,
                                   tuple(j for j, _ in pick),
                                   tuple(m for _, m in pick)))
        if len(self._hom_cache) >= HOM_CACHE_CAP:
            self._hom_cache.clear()
        self._hom_cache[key] = out
        return out

    def identity(self, x: FamObject) -> FamMorphism:
        return FamMorphism(x, x, tuple(x.index()),
                           tuple(self.base.identity(f) for f in x.fibers))

    def compose(self, g: FamMorphism, f: FamMorphism) -> FamMorphism:
        key = (g, f)
        got = self._compose_cache.get(key)
        if got is not None:
            return got
        if f.dst != g.src:
            raise ValueError("morphisms not composable")
        reindex = tuple(g.reindex[f.reindex[i]] for i in f.src.index())
        components = tuple(
            self.base.compose(g.components[f.reindex[i]], f.components[i])
            for i in f.src.index())
        out = FamMorphism(f.src, g.dst, reindex, components)
        if len(self._compose_cache) >= COMPOSE_CACHE_CAP:
            self._compose_cache.clear()
        self._compose_cache[key] = out
        return out

    def source(self, m):
        return m.src

    def target(self, m):
        return m.dst

    # -- enumeration -------------------------------------------------------

    def objects(self, max_index=None):
        bound = self.index_bound if max_index is None else max_index
        base_objs = self.base.objects()
        out = []
        for n in range(bound + 1):
            guarded_product([len(base_objs)] * n, "family enumeration", self.guard)
            for fibers in itertools.product(base_objs, repeat=n):
                out.append(FamObject(fibers))
        return out

    def skeleton(self, base_objs=None, max_index=None):
        """Families as multisets over a base skeleton (permutations deduped)."""
        bound = self.index_bound if max_index is None else max_index
        if base_objs is None:
            base_objs = self.base.skeleton() if hasattr(self.base, "skeleton") \
                else self.base.objects()
        out = []
        for n in range(bound + 1):
            for combo in itertools.combinations_with_replacement(
                    range(len(base_objs)), n):
                out.append(FamObject(tuple(base_objs[i] for i in combo)))
        return out

    # -- coproducts --------------------------------------------------------

    def coproduct(self, parts) -> Cocone:
        """Concatenate families; injections are inclusion reindexings."""
        parts = list(parts)
        fibers = tuple(f for p in parts for f in p.fibers)
        nadir = FamObject(fibers)
        legs = []
        offsets = []
        off = 0
        for p in parts:
            offsets.append(off)
            legs.append(FamMorphism(
                p, nadir, tuple(off + i for i in p.index()),
                tuple(self.base.identity(f) for f in p.fibers)))
            off += p.size()

        def cofactor(dst, leg_mors):
            reindex, components = [], []
            for p, lm in zip(parts, leg_mors):
                reindex.extend(lm.reindex)
                components.extend(lm.components)
            return FamMorphism(nadir, dst, tuple(reindex), tuple(components))

        diagram = Diagram.build(discrete(len(parts)), self, tuple(parts))
        return Cocone(nadir, tuple(legs), cofactor, diagram, self)

    def copower_terminal(self, n: int) -> FamObject:
        """The ``n``-fold copower of the terminal object."""
        t = self.base.limit(Diagram(initial_category(), (), ())).apex
        return FamObject((t,) * n)

    # -- limits ------------------------------------------------------------

    def limit(self, d: Diagram) -> Cone:
        """Fibrewise limit over the limit of index sets.

        The index of the apex is the set of compatible index tuples; each
        tuple's fiber is the base limit of the corresponding fiber diagram.
        """
        shape = d.shape
        n = shape.n_objects()
        node_sets = [list(d.obj(i).index()) for i in range(n)]
        edge_maps = {}
        for m in range(shape.n_morphisms()):
            if shape.is_identity(m):
                continue
            dm = d.mor(m)
            edge_maps[m] = {i: dm.reindex[i] for i in node_sets[shape.dom(m)]}
        tuples = limit_of_sets(SetDiagram(shape, node_sets, edge_maps), self.guard)
        tuple_pos = {t: p for p, t in enumerate(tuples)}

        fiber_cones = []
        for x in tuples:
            fiber_diagram = Diagram.build(
                shape, self.base,
                tuple(d.obj(i).fibers[x[i]] for i in range(n)),
                {m: d.mor(m).components[x[shape.dom(m)]]
                 for m in range(shape.n_morphisms())
                 if not shape.is_identity(m)})
            fiber_cones.append(self.base.limit(fiber_diagram))
        apex = FamObject(tuple(c.apex for c in fiber_cones))

        legs = []
        for node in range(n):
            legs.append(FamMorphism(
                apex, d.obj(node),
                tuple(x[node] for x in tuples),
                tuple(c.legs[node] for c in fiber_cones)))

        def factor(src, cone_legs):
            reindex, components = [], []
            for t in src.index():
                x = tuple(cone_legs[node].reindex[t] for node in range(n))
                pos = tuple_pos.get(x)
                if pos is None:
                    raise ValueError("cone legs are not index-compatible")
                reindex.append(pos)
                components.append(fiber_cones[pos].factor(
                    src.fibers[t],
                    tuple(cone_legs[node].components[t] for node in range(n))))
            return FamMorphism(src, apex, tuple(reindex), tuple(components))

        return Cone(apex, tuple(legs), factor, d, self)

    def product(self, x: FamObject, y: FamObject) -> Cone:
        """Binary product as a limiting cone (apex plus two projections)."""
        key = (x, y)
        got = self._product_cache.get(key)
        if got is None:
            d = Diagram.build(discrete(2), self, (x, y))
            got = self.limit(d)
            if len(self._product_cache) >= HOM_CACHE_CAP:
                self._product_cache.clear()
            self._product_cache[key] = got
        return got

    # -- connectivity ------------------------------------------------------

    def is_connected(self, x: FamObject, evidence=False, testbed=None):
        """Singleton index; with evidence, hom out of ``x`` splits coproducts.

        Returns ``(flag, report)`` where the report carries the hom-count
        bookkeeping for each tested coproduct (evidence mode only).
        """
        flag = x.size() == 1
        if not evidence:
            return flag, None
        if testbed is None:
            raise ValueError("evidence mode needs a testbed of families")
        checks = []
        for y1, y2 in itertools.combinations_with_replacement(testbed, 2):
            cop = self.coproduct([y1, y2])
            whole = self.hom(x, cop.nadir)
            glued = [self.compose(cop.legs[p], h)
                     for p, y in enumerate((y1, y2)) for h in self.hom(x, y)]
            split = len(set(glued)) == len(glued) == len(whole)
            checks.append({"parts": (y1, y2), "whole": len(whole),
                           "sum_of_parts": len(glued), "splits": split})
        preserved = all(c["splits"] for c in checks)
        return flag, {"preserves_coproducts": preserved, "checks": checks,
                      "agrees": preserved == flag}


# ---------------------------------------------------------------------------
# Flattening (the coproduct functor evaluated inside Fam)

def flatten(outer: FamCategory, nested: FamObject) -> FamObject:
    """Collapse a family of families into one family over the inner base."""
    if not isinstance(outer.base, FamCategory):
        raise PreconditionViolatedError("flatten needs a Fam-over-Fam object")
    return FamObject(tuple(f for inner in nested.fibers for f in inner.fibers))


def flatten_mor(outer: FamCategory, m: FamMorphism) -> FamMorphism:
    """Action of flattening on morphisms (sigma-reindexing)."""
    src = flatten(outer, m.src)
    dst = flatten(outer, m.dst)
    dst_offsets = []
    off = 0
    for inner in m.dst.fibers:
        dst_offsets.append(off)
        off += inner.size()
    reindex, components = [], []
    for i, inner in enumerate(m.src.fibers):
        comp = m.components[i]  # a FamMorphism between inner families
        tgt = m.reindex[i]
        for a in inner.index():
            reindex.append(dst_offsets[tgt] + comp.reindex[a])
            components.append(comp.components[a])
    return FamMorphism(src, dst, tuple(reindex), tuple(components))
