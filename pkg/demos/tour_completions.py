"""A walking tour of the three completions over the walking arrow.

Run as ``python3 demos/tour_completions.py``.  Prints hom-set counts in the
family completion, the finite-limit completion, and their composite, then
exhibits a product and a pullback certified by the brute-force cone oracle.
"""

import itertools

from freecat.core import Diagram
from freecat.fam import FamCategory, FamObject
from freecat.fincat import ShapeClass, cospan_shape, discrete, walking_arrow
from freecat.limcomp import LimCategory
from freecat.oracle import is_limiting


def main():
    base = walking_arrow()
    print("base: the walking arrow, objects", base.objects)

    L = LimCategory(base, ShapeClass(max_objects=2, max_morphisms=8))
    lsk = L.skeleton()
    print("\nfinite-limit completion: %d skeletal objects" % len(lsk))
    ya, yb = L.unit(0), L.unit(1)
    for F, G in itertools.product((ya, yb), repeat=2):
        print("  |hom(%s, %s)| = %d" % (F, G, len(L.hom(F, G))))

    hat = FamCategory(L, index_bound=2)
    sk = hat.skeleton()
    print("\nfamilies over the completion: %d skeletal objects" % len(sk))

    x, y = hat.unit(ya), hat.unit(yb)
    cone = hat.product(x, y)
    ok, _ = is_limiting(hat, cone.diagram, cone.apex, cone.legs, sk[:10])
    print("\nproduct of the two generators: apex has %d components; "
          "oracle says limiting=%s" % (cone.apex.size(), ok))

    f = hat.hom(x, y)[0]
    g = hat.hom(y, y)[0]
    cs = cospan_shape()
    d = Diagram.build(cs, hat, (x, y, y), {
        m: (f if cs.morphisms[m][0] == "u" else g)
        for m in range(cs.n_morphisms()) if not cs.is_identity(m)})
    pb = hat.limit(d)
    ok, _ = is_limiting(hat, d, pb.apex, pb.legs, sk[:10])
    print("pullback along the first maps: apex has %d components; "
          "oracle says limiting=%s" % (pb.apex.size(), ok))

    two = FamObject((L.terminal_obj(),) * 2)
    d2 = Diagram.build(discrete(2), hat, (hat.unit(ya), two))
    print("\ncoproducts are free: [y a] + [1,1] has %d components"
          % hat.coproduct([hat.unit(ya), two]).nadir.size())


if __name__ == "__main__":
    main()
