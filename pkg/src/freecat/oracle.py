"""Brute-force universal-property verification.

Nothing here trusts the constructions: a limit claim is checked by
enumerating every competing cone from every testbed object and counting
factorizations.  These checkers are the independent side of every
dual-route verification in the package.
"""

from __future__ import annotations

import itertools

from .core import Category, Diagram
from .errors import SizeGuardError

DEFAULT_GUARD = 10 ** 6


def enumerate_cones(cat: Category, diagram: Diagram, apex, guard=DEFAULT_GUARD):
    """All cones from ``apex`` over ``diagram``, as leg tuples."""
    pools = [cat.hom(apex, diagram.obj(n)) for n in range(diagram.shape.n_objects())]
    total = 1
    for p in pools:
        total *= len(p)
    if total > guard:
        raise SizeGuardError("cone candidates", total, guard)
    constraints = [
        (diagram.shape.dom(m), diagram.shape.cod(m), diagram.mor(m))
        for m in range(diagram.shape.n_morphisms())
        if not diagram.shape.is_identity(m)
    ]
    out = []
    for legs in itertools.product(*pools):
        if all(cat.compose(dm, legs[s]) == legs[t] for s, t, dm in constraints):
            out.append(legs)
    return out


def enumerate_cocones(cat: Category, diagram: Diagram, nadir, guard=DEFAULT_GUARD):
    """All cocones into ``nadir`` under ``diagram``, as leg tuples."""
    pools = [cat.hom(diagram.obj(n), nadir) for n in range(diagram.shape.n_objects())]
    total = 1
    for p in pools:
        total *= len(p)
    if total > guard:
        raise SizeGuardError("cocone candidates", total, guard)
    constraints = [
        (diagram.shape.dom(m), diagram.shape.cod(m), diagram.mor(m))
        for m in range(diagram.shape.n_morphisms())
        if not diagram.shape.is_identity(m)
    ]
    out = []
    for legs in itertools.product(*pools):
        if all(cat.compose(legs[t], dm) == legs[s] for s, t, dm in constraints):
            out.append(legs)
    return out


def is_limiting(cat, diagram, apex, legs, testbed, guard=DEFAULT_GUARD):
    """Does every cone from every testbed object factor uniquely through ``legs``?

    Returns ``(ok, witness)``; the witness names the object and cone for
    which factorization fails (count != 1).
    """
    for a in testbed:
        tally = {}
        for h in cat.hom(a, apex):
            image = tuple(cat.compose(l, h) for l in legs)
            tally[image] = tally.get(image, 0) + 1
        for cone in enumerate_cones(cat, diagram, a, guard):
            count = tally.get(tuple(cone), 0)
            if count != 1:
                return False, {"object": a, "cone": cone, "factorizations": count}
        # surjectivity of cone-composition is implied: every composed image
        # is itself a cone, so a stray image would already be in the list
    return True, None


def is_colimiting(cat, diagram, nadir, legs, testbed, guard=DEFAULT_GUARD):
    """Dual of :func:`is_limiting`: every cocone factors uniquely."""
    for a in testbed:
        tally = {}
        for h in cat.hom(nadir, a):
            image = tuple(cat.compose(h, l) for l in legs)
            tally[image] = tally.get(image, 0) + 1
        for cocone in enumerate_cocones(cat, diagram, a, guard):
            count = tally.get(tuple(cocone), 0)
            if count != 1:
                return False, {"object": a, "cocone": cocone, "factorizations": count}
    return True, None


def inverse_of(cat, m):
    """Return an inverse of ``m`` if one exists, else ``None``."""
    a, b = cat.source(m), cat.target(m)
    for g in cat.hom(b, a):
        if cat.compose(g, m) == cat.identity(a) and cat.compose(m, g) == cat.identity(b):
            return g
    return None


def iso_search(cat, a, b, guard=DEFAULT_GUARD):
    """Search for a pair of mutually inverse morphisms between ``a`` and ``b``.

    Returns ``(f, g)`` or ``None``.  Exhaustive over ``hom(a, b)``.
    """
    fwd = cat.hom(a, b)
    if len(fwd) > guard:
        raise SizeGuardError("iso search", len(fwd), guard)
    for f in fwd:
        g = inverse_of(cat, f)
        if g is not None:
            return f, g
    return None
