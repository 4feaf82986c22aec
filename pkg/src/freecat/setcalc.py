"""Finite-set limit and colimit calculus.

This is the engine behind every hom-set formula: limits of finite sets are
enumerated as compatible families, colimits as zig-zag quotients computed
with union-find.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SizeGuardError
from .fincat import FinCategory

DEFAULT_GUARD = 10 ** 6


class UnionFind:
    """Disjoint-set forest with path compression and union by size."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra


class SetDiagram:
    """A functor from a finite shape category into finite sets.

    ``node_sets`` lists each node's elements (order matters: it fixes
    canonical representatives).  ``edge_maps[m]`` maps elements of the
    domain node's set to elements of the codomain node's set.
    """

    def __init__(self, shape: FinCategory, node_sets, edge_maps):
        self.shape = shape
        self.node_sets = [list(s) for s in node_sets]
        self._elem_index = [
            {x: i for i, x in enumerate(s)} for s in self.node_sets
        ]
        self.edge_maps = dict(edge_maps)

    def apply(self, m, x):
        if self.shape.is_identity(m):
            return x
        return self.edge_maps[m](x) if callable(self.edge_maps[m]) else self.edge_maps[m][x]

    def elem_index(self, node, x):
        return self._elem_index[node][x]

    def check_functorial(self):
        """Return list of violations of functoriality (empty when valid)."""
        bad = []
        for m in range(self.shape.n_morphisms()):
            d, c = self.shape.dom(m), self.shape.cod(m)
            for x in self.node_sets[d]:
                y = self.apply(m, x)
                if y not in self._elem_index[c]:
                    bad.append(("off-target", m, x))
        for (g, f), gf in self.shape.compose_table.items():
            for x in self.node_sets[self.shape.dom(f)]:
                if self.apply(g, self.apply(f, x)) != self.apply(gf, x):
                    bad.append(("not-functorial", g, f, x))
        return bad


@dataclass
class ColimitResult:
    """Partition of the disjoint union of the node sets into zig-zag classes.

    Class ids are dense and ordered by the class's canonical representative,
    the lexicographically least ``(node id, element index)`` pair.
    """

    classes: list          # class id -> sorted list of (node, elem) pairs
    canonical_rep: list    # class id -> least (node, elem) pair
    _inject: dict          # (node, elem) -> class id

    def inject(self, node, elem):
        return self._inject[(node, elem)]

    def n_classes(self):
        return len(self.classes)


def colimit_of_sets(d: SetDiagram, guard=DEFAULT_GUARD) -> ColimitResult:
    """Quotient the disjoint union of ``d``'s node sets by the zig-zag relation.

    Two pairs are identified exactly when connected by a chain of edge-map
    images; the partition is independent of node insertion order.
    """
    total = sum(len(s) for s in d.node_sets)
    if total > guard:
        raise SizeGuardError("colimit_of_sets disjoint union", total, guard)

    offsets = []
    acc = 0
    for s in d.node_sets:
        offsets.append(acc)
        acc += len(s)
    uf = UnionFind(total)

    def flat(node, x):
        return offsets[node] + d.elem_index(node, x)

    for m in range(d.shape.n_morphisms()):
        if d.shape.is_identity(m):
            continue
        src, dst = d.shape.dom(m), d.shape.cod(m)
        for x in d.node_sets[src]:
            uf.union(flat(src, x), flat(dst, d.apply(m, x)))

    groups = {}
    for node in range(len(d.node_sets)):
        for i, x in enumerate(d.node_sets[node]):
            groups.setdefault(uf.find(offsets[node] + i), []).append((node, x, i))

    # order classes by canonical representative (least (node, element index))
    raw = []
    for members in groups.values():
        members.sort(key=lambda t: (t[0], t[2]))
        raw.append(members)
    raw.sort(key=lambda ms: (ms[0][0], ms[0][2]))

    classes, reps, inject = [], [], {}
    for cid, members in enumerate(raw):
        classes.append([(n, x) for n, x, _ in members])
        reps.append((members[0][0], members[0][1]))
        for n, x, _ in members:
            inject[(n, x)] = cid
    return ColimitResult(classes, reps, inject)


def limit_of_sets(d: SetDiagram, guard=DEFAULT_GUARD):
    """Enumerate the compatible families of ``d``, one element per node.

    A family ``(x_j)`` qualifies when every edge ``u: j -> j'`` satisfies
    ``edge(u)(x_j) == x_{j'}``.  Families come out in lexicographic
    node/element order; the empty shape yields the singleton empty tuple.
    """
    sizes = [len(s) for s in d.node_sets]
    product = 1
    for s in sizes:
        product *= s
    if product > guard:
        raise SizeGuardError("limit_of_sets candidate tuples", product, guard)

    constraints = [
        (d.shape.dom(m), d.shape.cod(m), m)
        for m in range(d.shape.n_morphisms())
        if not d.shape.is_identity(m)
    ]
    out = []
    for tup in itertools.product(*d.node_sets):
        if all(d.apply(m, tup[s]) == tup[t] for s, t, m in constraints):
            out.append(tup)
    return out
