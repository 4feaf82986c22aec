"""The free finite-limit completion of a finite base category.

Objects are formal limits: finite diagrams in the base.  Hom-sets follow
the limit-of-colimits formula: for ``F`` and ``G``, take, per node ``k`` of
``G``'s shape, the zig-zag colimit over ``F``'s shape (contravariantly, by
precomposition) of the base hom-sets ``C(Fj, Gk)``, then the compatible
families over ``G``'s shape (postcomposition).  Morphisms store one
canonical representative ``(source node, base morphism)`` per codomain
node, so equality is structural.

Terminal object, products, equalizers and general finite limits are built
by shape surgery; each construction is validated downstream by the
brute-force cone oracle, never trusted on its own.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Category, Cone, Diagram, guarded_product
from .errors import BaseLimitMissingError, SizeGuardError
from .fincat import (FinCategory, Functor, ShapeClass, all_functors,
                     disjoint_union, discrete, initial_category,
                     opposite_category, terminal_category, walking_arrow)
from .setcalc import SetDiagram, colimit_of_sets, limit_of_sets

DEFAULT_GUARD = 10 ** 6

# caches flush past these sizes so that sweeps over many formal limits do
# not retain every enumerated hom-set or composite
HOM_CACHE_CAP = 4096
COMPOSE_CACHE_CAP = 1 << 20


@dataclass(frozen=True)
class FormalLimit:
    """An object of the completion: a finite diagram in the base category."""

    shape: FinCategory
    diagram: Functor

    def __post_init__(self):
        # hot path: precomputed, since shape/diagram hashing is not free
        object.__setattr__(self, "_hash", hash((self.shape, self.diagram)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FormalLimit):
            return NotImplemented
        return (self._hash == other._hash and self.shape == other.shape
                and self.diagram == other.diagram)

    def n_nodes(self):
        return self.shape.n_objects()

    def node_obj(self, n):
        return self.diagram.obj_map[n]

    def edge_mor(self, m):
        return self.diagram.mor_map[m]

    def __repr__(self):
        return f"FormalLimit(shape={self.shape.name or self.shape.n_objects()}, " \
               f"objs={self.diagram.obj_map})"


@dataclass(frozen=True)
class LimMorphism:
    """A morphism of formal limits, one canonical class per codomain node.

    ``reps[k] = (j, phi)`` with ``phi: Fj -> Gk`` in the base, the least
    member of its zig-zag class.
    """

    src: FormalLimit
    dst: FormalLimit
    reps: tuple

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.src, self.dst, self.reps)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, LimMorphism):
            return NotImplemented
        return (self._hash == other._hash and self.reps == other.reps
                and self.src == other.src and self.dst == other.dst)


class LimCategory(Category):
    """The formal-limit completion over a finite composition table."""

    def __init__(self, base: FinCategory, shape_class: ShapeClass = None,
                 guard=DEFAULT_GUARD):
        self.base = base
        self.shape_class = shape_class or ShapeClass()
        self.guard = guard
        self._colim_cache = {}
        self._hom_cache = {}
        self._units = {}
        self._compose_cache = {}
        self._product_cache = {}
        self._mor_intern = {}
        self._terminal = FormalLimit(
            initial_category(), Functor(initial_category(), base, (), ()))
        self._point = terminal_category()

    # -- embedding ---------------------------------------------------------

    def unit(self, obj) -> FormalLimit:
        """The generator at a base object: the one-node diagram."""
        got = self._units.get(obj)
        if got is None:
            got = FormalLimit(self._point,
                              Functor(self._point, self.base, (obj,),
                                      (self.base.id_of(obj),)))
            self._units[obj] = got
        return got

    def unit_mor(self, m) -> LimMorphism:
        """Image of a base morphism under the unit embedding."""
        src = self.unit(self.base.dom(m))
        dst = self.unit(self.base.cod(m))
        return self._canonical(src, dst, ((0, m),))

    def is_generator(self, x: FormalLimit) -> bool:
        return x.shape == self._point

    # -- hom formula -------------------------------------------------------

    def _inner_colim(self, F: FormalLimit, target_obj):
        """Zig-zag colimit over ``F``'s shape (op) of ``C(F-, target_obj)``."""
        key = (F, target_obj)
        got = self._colim_cache.get(key)
        if got is not None:
            return got
        shape = F.shape
        node_sets = [list(self.base.hom(F.node_obj(j), target_obj))
                     for j in range(shape.n_objects())]
        edge_maps = {}
        op = opposite_category(shape)
        for m in range(shape.n_morphisms()):
            if shape.is_identity(m):
                continue
            fu = F.edge_mor(m)  # F(u): F(dom u) -> F(cod u) in base
            # in the opposite shape, m runs cod(u) -> dom(u); its edge map
            # precomposes with F(u)
            edge_maps[m] = {phi: self.base.compose(phi, fu)
                            for phi in node_sets[shape.cod(m)]}
        d = SetDiagram(op, node_sets, edge_maps)
        result = colimit_of_sets(d, self.guard)
        if len(self._colim_cache) >= COMPOSE_CACHE_CAP:
            self._colim_cache.clear()
        self._colim_cache[key] = result
        return result

    def _intern(self, m: LimMorphism) -> LimMorphism:
        """Share one instance per morphism value; keeps equality checks cheap."""
        if len(self._mor_intern) >= COMPOSE_CACHE_CAP:
            self._mor_intern.clear()
        return self._mor_intern.setdefault(m, m)

    def _canonical(self, src, dst, reps):
        """Normalize each per-node pair to its class's canonical representative."""
        out = []
        for k, (j, phi) in enumerate(reps):
            col = self._inner_colim(src, dst.node_obj(k))
            out.append(col.canonical_rep[col.inject(j, phi)])
        return self._intern(LimMorphism(src, dst, tuple(out)))

    def hom(self, F: FormalLimit, G: FormalLimit):
        key = (F, G)
        got = self._hom_cache.get(key)
        if got is not None:
            return got
        K = G.shape
        colims = [self._inner_colim(F, G.node_obj(k)) for k in range(K.n_objects())]
        node_sets = [list(range(c.n_classes())) for c in colims]
        edge_maps = {}
        for m in range(K.n_morphisms()):
            if K.is_identity(m):
                continue
            s, t = K.dom(m), K.cod(m)
            gv = G.edge_mor(m)
            mapping = {}
            for cid in node_sets[s]:
                j, phi = colims[s].canonical_rep[cid]
                mapping[cid] = colims[t].inject(j, self.base.compose(gv, phi))
            edge_maps[m] = mapping
        families = limit_of_sets(SetDiagram(K, node_sets, edge_maps), self.guard)
        out = [self._intern(LimMorphism(F, G, tuple(colims[k].canonical_rep[cid]
                                                    for k, cid in enumerate(fam))))
               for fam in families]
        if len(self._hom_cache) >= HOM_CACHE_CAP:
            self._hom_cache.clear()
        self._hom_cache[key] = out
        return out

    def identity(self, F: FormalLimit) -> LimMorphism:
        return self._canonical(
            F, F, tuple((k, self.base.id_of(F.node_obj(k)))
                        for k in range(F.shape.n_objects())))

    def compose(self, g: LimMorphism, f: LimMorphism) -> LimMorphism:
        key = (g, f)
        got = self._compose_cache.get(key)
        if got is not None:
            return got
        if f.dst != g.src:
            raise ValueError("morphisms not composable")
        reps = []
        for k, psi in g.reps:
            j, phi = f.reps[k]
            reps.append((j, self.base.compose(psi, phi)))
        out = self._canonical(f.src, g.dst, tuple(reps))
        if len(self._compose_cache) >= COMPOSE_CACHE_CAP:
            self._compose_cache.clear()
        self._compose_cache[key] = out
        return out

    def source(self, m: LimMorphism):
        return m.src

    def target(self, m: LimMorphism):
        return m.dst

    # -- object enumeration ------------------------------------------------

    def shape_gallery(self):
        """The shapes object enumeration ranges over, within the shape class."""
        from .fincat import cospan_shape, span_shape, parallel_pair_shape
        shapes = [initial_category(), self._point, discrete(2), walking_arrow(),
                  discrete(3), cospan_shape(), span_shape(), parallel_pair_shape()]
        return [s for s in shapes if self.shape_class.admits(s)]

    def objects(self):
        """Every diagram on a gallery shape (deterministic order)."""
        out = []
        for shape in self.shape_gallery():
            for func in all_functors(shape, self.base):
                out.append(FormalLimit(shape, func))
        return out

    def skeleton(self, objs=None):
        """Iso-deduplicated object list (first representative kept)."""
        from .oracle import iso_search
        objs = self.objects() if objs is None else objs
        reps = []
        for x in objs:
            if not any(iso_search(self, r, x) for r in reps):
                reps.append(x)
        return reps

    # -- limit constructions ----------------------------------------------

    def terminal_obj(self) -> FormalLimit:
        """The empty diagram; every hom into it is a singleton."""
        return self._terminal

    def bang(self, F: FormalLimit) -> LimMorphism:
        """The unique morphism into the terminal object."""
        return self._intern(LimMorphism(F, self._terminal, ()))

    def product_many(self, factors):
        """N-ary product by disjoint-union shape; returns (object, projections)."""
        factors = list(factors)
        key = tuple(factors)
        got = self._product_cache.get(key)
        if got is not None:
            return got
        shape = disjoint_union([f.shape for f in factors])
        obj_map, mor_map = [], []
        for f in factors:
            obj_map.extend(f.diagram.obj_map)
            mor_map.extend(f.diagram.mor_map)
        prod = FormalLimit(shape, Functor(shape, self.base,
                                          tuple(obj_map), tuple(mor_map)))
        projections = []
        node_off = 0
        for f in factors:
            reps = tuple((node_off + k, self.base.id_of(f.node_obj(k)))
                         for k in range(f.shape.n_objects()))
            projections.append(self._canonical(prod, f, reps))
            node_off += f.shape.n_objects()
        if len(self._product_cache) >= HOM_CACHE_CAP:
            self._product_cache.clear()
        self._product_cache[key] = (prod, projections)
        return prod, projections

    def product(self, F, G):
        prod, (p, q) = self.product_many([F, G])
        return prod, p, q

    def tuple_mor(self, target_product, components):
        """Pair morphisms into a product built by :meth:`product_many`.

        Valid because the product shape's colimits restrict to each
        factor's: representative families simply concatenate.
        """
        src = components[0].src
        reps = tuple(r for c in components for r in c.reps)
        return self._intern(LimMorphism(src, target_product, reps))

    def product_mor(self, prod_src, prod_dst, fs, src_projections):
        """The product of morphisms ``fs`` between given products."""
        comps = [self.compose(f, p) for f, p in zip(fs, src_projections)]
        return self.tuple_mor(prod_dst, comps)

    def equalizer(self, f: LimMorphism, g: LimMorphism):
        """Equalizer by collage: glue the parallel pair's canonical labels.

        The new shape is the domain shape next to the codomain shape plus,
        per codomain node, one connecting edge for each of ``f`` and ``g``
        (closed under composition with both sides).  Returns
        ``(object, inclusion)``.
        """
        if f.src != g.src or f.dst != g.dst:
            raise ValueError("not a parallel pair")
        F, G = f.src, f.dst
        nF, nG = F.shape.n_objects(), G.shape.n_objects()
        mF, mG = F.shape.n_morphisms(), G.shape.n_morphisms()

        objects = [f"F:{o}" for o in F.shape.objects] + \
                  [f"G:{o}" for o in G.shape.objects]
        morphisms = [(f"F:{n}", d, c) for n, d, c in F.shape.morphisms] + \
                    [(f"G:{n}", d + nF, c + nF) for n, d, c in G.shape.morphisms]
        base_img = list(F.diagram.mor_map) + list(G.diagram.mor_map)

        conn_index = {}
        labels = (f.reps, g.reps)
        for tag in (0, 1):
            for k in range(nG):
                jt, phi = labels[tag][k]
                for u in range(mF):
                    if F.shape.cod(u) != jt:
                        continue
                    for v in range(mG):
                        if G.shape.dom(v) != k:
                            continue
                        conn_index[(tag, k, u, v)] = len(morphisms)
                        morphisms.append((f"conn{tag}:{k}:{u}:{v}",
                                          F.shape.dom(u), nF + G.shape.cod(v)))
                        img = self.base.compose(phi, F.edge_mor(u))
                        img = self.base.compose(G.edge_mor(v), img)
                        base_img.append(img)

        identity = list(F.shape.identity) + [i + mF for i in G.shape.identity]
        compose = {}
        compose.update(F.shape.compose_table)
        compose.update({(gm + mF, fm + mF): gf + mF
                        for (gm, fm), gf in G.shape.compose_table.items()})
        for (tag, k, u, v), cid in conn_index.items():
            for w in range(mF):  # conn ∘ F-morphism
                if F.shape.cod(w) == F.shape.dom(u):
                    compose[(cid, w)] = conn_index[(tag, k, F.shape.compose(u, w), v)]
            for w in range(mG):  # G-morphism ∘ conn
                if G.shape.dom(w) == G.shape.cod(v):
                    compose[(w + mF, cid)] = conn_index[(tag, k, u, G.shape.compose(w, v))]

        shape = FinCategory(objects, morphisms, identity, compose, name="collage")
        eq = FormalLimit(shape, Functor(
            shape, self.base,
            tuple(F.diagram.obj_map) + tuple(G.diagram.obj_map),
            tuple(base_img)))
        incl_reps = tuple((j, self.base.id_of(F.node_obj(j))) for j in range(nF))
        incl = self._canonical(eq, F, incl_reps)
        return eq, incl

    def equalizer_factor(self, eq, incl, f, h):
        """Factor ``h`` (with ``f∘h == g∘h``) through the equalizer inclusion.

        Constructive: the collage's hom classes restrict to the domain- and
        codomain-part classes, so representatives concatenate.
        """
        fh = self.compose(f, h)
        return self._intern(LimMorphism(h.src, eq, h.reps + fh.reps))

    # -- general finite limits --------------------------------------------

    def finite_limit(self, d: Diagram) -> Cone:
        """Limit of a diagram of formal limits via products and an equalizer."""
        n = d.shape.n_objects()
        factors = [d.obj(i) for i in range(n)]
        P1, projs1 = self.product_many(factors)
        edges = [m for m in range(d.shape.n_morphisms())
                 if not d.shape.is_identity(m)]
        if not edges:
            return Cone(P1, tuple(projs1),
                        lambda src, legs: (self.tuple_mor(P1, list(legs))
                                           if legs else self.bang(src)),
                        d, self)
        P2, projs2 = self.product_many([d.obj(d.shape.cod(m)) for m in edges])
        s = self.tuple_mor(P2, [projs1[d.shape.cod(m)] for m in edges])
        t = self.tuple_mor(P2, [self.compose(d.mor(m), projs1[d.shape.dom(m)])
                                for m in edges])
        eq, incl = self.equalizer(s, t)
        legs = tuple(self.compose(p, incl) for p in projs1)

        def factor(src, cone_legs):
            h = self.tuple_mor(P1, list(cone_legs))
            return self.equalizer_factor(eq, incl, s, h)

        return Cone(eq, legs, factor, d, self)

    def limit(self, diagram: Diagram) -> Cone:
        return self.finite_limit(diagram)

    def pullback(self, f: LimMorphism, g: LimMorphism):
        """Pullback of a cospan; returns ``(object, p, q)`` with the legs."""
        from .fincat import cospan_shape
        shape = cospan_shape()
        d = Diagram.build(shape, self, (f.src, f.dst, g.src), {
            m: (f if shape.morphisms[m][0] == "u" else g)
            for m in range(shape.n_morphisms()) if not shape.is_identity(m)
        })
        cone = self.finite_limit(d)
        return cone.apex, cone.legs[0], cone.legs[2]
