"""Command-line front end.

Subcommands: ``check`` (category axioms of a file), ``hom`` (hom-set
cardinality and enumeration in a chosen completion), ``limit`` (finite
limit of a named-shape diagram), ``exp`` (exponential objects),
``verify`` (checker suites), ``gallery`` (built-in example categories).

Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input,
3 a size guard aborted a required computation.
"""

from __future__ import annotations

import argparse
import itertools
import re
import sys

from . import catio
from .core import Diagram, TableCategory
from .errors import (FreecatError, ParseError, SizeGuardError,
                     UnknownObjectError)
from .fam import FamCategory, FamObject
from .fincat import (ShapeClass, check_category_axioms, gallery)
from .limcomp import FormalLimit, LimCategory
from .oracle import is_limiting
from .report import FAIL, PASS, SKIPPED, Report, RunConfig

COMPLETIONS = ("base", "fam", "lim", "famlim")


# ---------------------------------------------------------------------------
# Object expression grammar

_TOKEN = re.compile(r"\s*([\[\](),;=]|[^\s\[\](),;=]+)")


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"cannot tokenize object expression at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive-descent parser for object expressions.

    Grammar: ``y <obj>`` (unit embed), ``fam[e;…;e]``,
    ``limshape(<shape file>, node=obj, …, edge=mor, …)``,
    ``prod(e,e)``, ``coprod(e;…;e)``, ``exp(e,e)``; a bare name is the
    unit embed of that base object.
    """

    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def eat(self, expected=None):
        t = self.peek()
        if t is None or (expected is not None and t != expected):
            raise ParseError(f"expected {expected or 'a token'}, got {t!r}")
        self.pos += 1
        return t

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.toks[self.pos:]!r}")
        return node

    def expr(self):
        t = self.eat()
        if t == "y":
            return ("y", self.eat())
        if t == "fam":
            self.eat("[")
            items = []
            if self.peek() != "]":
                items.append(self.expr())
                while self.peek() == ";":
                    self.eat(";")
                    items.append(self.expr())
            self.eat("]")
            return ("fam", items)
        if t in ("prod", "exp"):
            self.eat("(")
            a = self.expr()
            self.eat(",")
            b = self.expr()
            self.eat(")")
            return (t, a, b)
        if t == "coprod":
            self.eat("(")
            items = [self.expr()]
            while self.peek() == ";":
                self.eat(";")
                items.append(self.expr())
            self.eat(")")
            return ("coprod", items)
        if t == "limshape":
            self.eat("(")
            path = self.eat()
            assigns = []
            while self.peek() == ",":
                self.eat(",")
                key = self.eat()
                self.eat("=")
                assigns.append((key, self.eat()))
            self.eat(")")
            return ("limshape", path, assigns)
        if t in "[](),;=":
            raise ParseError(f"unexpected {t!r} in object expression")
        return ("name", t)


class World:
    """A base table together with the requested completion."""

    def __init__(self, table, completion, cfg: RunConfig):
        if completion not in COMPLETIONS:
            raise ParseError(f"unknown completion {completion!r}")
        self.table = table
        self.completion = completion
        self.cfg = cfg
        self.shape_class = ShapeClass(max_objects=cfg.shape_bound,
                                      max_morphisms=4 * cfg.shape_bound,
                                      max_index=cfg.index_bound)
        self.base_cat = TableCategory(table, cfg.guard)
        self.lim = LimCategory(table, self.shape_class, cfg.guard)
        if completion == "base":
            self.cat = self.base_cat
        elif completion == "lim":
            self.cat = self.lim
        elif completion == "fam":
            self.cat = FamCategory(self.base_cat, cfg.index_bound, cfg.guard)
        else:
            self.cat = FamCategory(self.lim, cfg.index_bound, cfg.guard)

    # -- name lookup --------------------------------------------------------

    def base_obj(self, name):
        if name not in self.table.objects:
            raise UnknownObjectError(f"no base object named {name!r}")
        return self.table.objects.index(name)

    def base_mor(self, name):
        for m, (n, _, _) in enumerate(self.table.morphisms):
            if n == name:
                return m
        raise UnknownObjectError(f"no base morphism named {name!r}")

    # -- evaluation ---------------------------------------------------------

    def obj(self, text):
        return self._eval(_ExprParser(text).parse(), self.completion)

    def _eval(self, node, level):
        kind = node[0]
        if level == "base":
            if kind in ("name", "y"):
                return self.base_obj(node[1])
            raise ParseError(f"{kind!r} expressions need a completion")
        if level == "lim":
            if kind in ("name", "y"):
                return self.lim.unit(self.base_obj(node[1]))
            if kind == "limshape":
                return self._limshape(node)
            if kind == "prod":
                p, _, _ = self.lim.product(self._eval(node[1], "lim"),
                                           self._eval(node[2], "lim"))
                return p
            raise ParseError(f"{kind!r} is not a formal-limit expression")
        # family levels
        inner = "lim" if level == "famlim" else "basefib"
        if kind in ("name", "y"):
            return self.cat.unit(self._fiber(node, inner))
        if kind == "fam":
            return FamObject(tuple(self._fiber(item, inner)
                                   for item in node[1]))
        if kind == "prod":
            return self.cat.product(self._eval(node[1], level),
                                    self._eval(node[2], level)).apex
        if kind == "coprod":
            return self.cat.coproduct([self._eval(item, level)
                                       for item in node[1]]).nadir
        if kind == "exp":
            if level != "famlim":
                raise ParseError("exp(…) needs the famlim completion")
            from .lextensive import exponential
            return exponential(self.cat, self._eval(node[1], level),
                               self._eval(node[2], level), self.cfg.guard).obj
        raise ParseError(f"{kind!r} is not a family expression")

    def _fiber(self, node, inner):
        if inner == "basefib":
            if node[0] in ("name", "y"):
                return self.base_obj(node[1])
            raise ParseError("family fibers over the base are object names")
        return self._eval(node, "lim")

    def _limshape(self, node):
        _, path, assigns = node
        shape = catio.load(path)
        if not self.shape_class.admits(shape):
            raise SizeGuardError("limshape shape", shape.n_objects(),
                                 self.shape_class.max_objects)
        node_map = [None] * shape.n_objects()
        mor_map = [None] * shape.n_morphisms()
        for key, val in assigns:
            if key in shape.objects:
                node_map[shape.objects.index(key)] = self.base_obj(val)
            else:
                idx = next((m for m, (n, _, _) in enumerate(shape.morphisms)
                            if n == key), None)
                if idx is None:
                    raise UnknownObjectError(f"shape has no node or edge {key!r}")
                mor_map[idx] = self.base_mor(val)
        if any(o is None for o in node_map):
            raise ParseError("limshape: every shape node needs an assignment")
        for m in range(shape.n_morphisms()):
            if shape.is_identity(m):
                mor_map[m] = self.table.id_of(node_map[shape.dom(m)])
            elif mor_map[m] is None:
                raise ParseError(
                    f"limshape: edge {shape.morphisms[m][0]!r} needs an assignment")
            else:
                bm = mor_map[m]
                if (self.table.dom(bm) != node_map[shape.dom(m)]
                        or self.table.cod(bm) != node_map[shape.cod(m)]):
                    raise ParseError(
                        f"limshape: edge {shape.morphisms[m][0]!r} assignment "
                        "is ill-typed")
        from .fincat import Functor
        return FormalLimit(shape, Functor(shape, self.table,
                                          tuple(node_map), tuple(mor_map)))

    # -- testbeds -----------------------------------------------------------

    def testbed(self):
        cfg = self.cfg
        if self.completion == "base":
            return list(self.base_cat.objects())
        if self.completion == "lim":
            return self.lim.skeleton()[:cfg.testbed]
        if self.completion == "fam":
            return self.cat.skeleton(max_index=cfg.index_bound)[:cfg.testbed]
        return self.cat.skeleton(self.lim.skeleton(),
                                 max_index=cfg.index_bound)[:cfg.testbed]


# ---------------------------------------------------------------------------
# Subcommands

def cmd_check(world: World, args, rep: Report):
    ok, violations = check_category_axioms(world.table)
    rep.add("category-axioms", PASS if ok else FAIL,
            witness=None if ok else {"kind": "axiom-violations",
                                     "detail": violations[:10]},
            cardinalities={"objects": world.table.n_objects(),
                           "morphisms": world.table.n_morphisms()})


def cmd_gallery(world, args, rep: Report):
    for name, cat in sorted(gallery().items()):
        ok, violations = check_category_axioms(cat)
        rep.add(f"gallery/{name}", PASS if ok else FAIL,
                witness=None if ok else {"kind": "axiom-violations",
                                         "detail": violations[:10]},
                cardinalities={"objects": cat.n_objects(),
                               "morphisms": cat.n_morphisms()})


def cmd_hom(world: World, args, rep: Report):
    src = world.obj(args.src)
    dst = world.obj(args.dst)
    homs = world.cat.hom(src, dst)
    card = {"src": repr(src), "dst": repr(dst), "cardinality": len(homs)}
    if len(homs) <= 64:
        card["morphisms"] = [repr(h) for h in homs]
    rep.add("hom", PASS, cardinalities=card)


def cmd_limit(world: World, args, rep: Report):
    shapes = gallery()
    if args.shape not in shapes:
        raise ParseError(f"unknown shape {args.shape!r}; "
                         f"known: {', '.join(sorted(shapes))}")
    shape = shapes[args.shape]
    objs = [world.obj(e) for e in args.objects]
    if len(objs) != shape.n_objects():
        raise ParseError(f"shape {args.shape!r} needs {shape.n_objects()} "
                         f"objects, got {len(objs)}")
    picks = list(args.mor or [])
    edges = {}
    for m in range(shape.n_morphisms()):
        if shape.is_identity(m):
            continue
        pool = world.cat.hom(objs[shape.dom(m)], objs[shape.cod(m)])
        pick = picks.pop(0) if picks else 0
        if not 0 <= pick < len(pool):
            raise ParseError(f"--mor index {pick} out of range "
                             f"(hom has {len(pool)} elements)")
        edges[m] = pool[pick]
    d = Diagram.build(shape, world.cat, tuple(objs), edges)
    cone = world.cat.limit(d)
    card = {"apex": repr(cone.apex),
            "legs": [repr(l) for l in cone.legs]}
    if args.verify:
        ok, witness = is_limiting(world.cat, d, cone.apex, cone.legs,
                                  world.testbed(), world.cfg.guard)
        rep.add("limit", PASS if ok else FAIL,
                witness=None if ok else {"kind": "not-limiting", "detail": witness},
                cardinalities=card)
    else:
        rep.add("limit", PASS, cardinalities=card)


def cmd_exp(world: World, args, rep: Report):
    if world.completion != "famlim":
        raise ParseError("exp needs --completion famlim")
    from .lextensive import exponential, verify_exponential
    e = world.obj(args.exponent)
    x = world.obj(args.codomain)
    w = exponential(world.cat, e, x, world.cfg.guard)
    fibers = []
    for pos, section in enumerate(w.omega):
        pres = [{"component": k,
                 "tags": ["unit" if t == ("unit",) else f"hom:{t[1]!r}"
                          for t in tags]}
                for k, tags in section]
        fibers.append({"index": pos, "section": pres,
                       "fiber": repr(w.obj.fibers[pos])})
    card = {"exponent": repr(e), "codomain": repr(x),
            "index_cardinality": len(w.omega), "fibers": fibers}
    if args.verify:
        out = verify_exponential(w, world.testbed(), guard=world.cfg.guard)
        rep.add("exp", out["status"], witness=out.get("witness"),
                cardinalities=card)
    else:
        rep.add("exp", PASS, cardinalities=card)


def _suite_category(world: World, rep: Report):
    ok, violations = check_category_axioms(world.table)
    rep.add("axioms/base", PASS if ok else FAIL,
            witness=None if ok else {"kind": "axiom-violations",
                                     "detail": violations[:10]})
    cat = world.cat
    tb = world.testbed()

    def laws():
        for a, b in itertools.product(tb, repeat=2):
            for f in cat.hom(a, b):
                if cat.compose(cat.identity(b), f) != f or \
                        cat.compose(f, cat.identity(a)) != f:
                    return {"status": FAIL,
                            "witness": {"kind": "unit-law", "morphism": repr(f)}}
        for a, b, c, d in itertools.product(tb[:4], repeat=4):
            for f in cat.hom(a, b)[:3]:
                for g in cat.hom(b, c)[:3]:
                    for h in cat.hom(c, d)[:3]:
                        if cat.compose(cat.compose(h, g), f) != \
                                cat.compose(h, cat.compose(g, f)):
                            return {"status": FAIL,
                                    "witness": {"kind": "associativity",
                                                "morphisms": (repr(f), repr(g), repr(h))}}
        return {"status": PASS}

    rep.run(f"laws/{world.completion}", laws)


def run_suite(world: World, suite, rep: Report):
    from . import lextensive as lx
    cfg = world.cfg
    if suite == "category":
        _suite_category(world, rep)
    elif suite == "extensive":
        tb = world.testbed()
        rep.run("extensive", lambda: lx.check_extensive(
            world.cat, tb, morphism_cap=2, guard=cfg.guard))
    elif suite == "distributive":
        from .fincat import cospan_shape, discrete
        fam = FamCategory(world.cat, cfg.index_bound, cfg.guard)
        base_objs = world.testbed()
        fams = [FamObject(tuple(c))
                for n in (1, 2)
                for c in itertools.combinations(base_objs, n)][:cfg.testbed]
        count = 0
        for shape in (discrete(2), cospan_shape()):
            for combo in itertools.product(fams, repeat=shape.n_objects()):
                edges = {}
                skip = False
                for m in range(shape.n_morphisms()):
                    if shape.is_identity(m):
                        continue
                    pool = fam.hom(combo[shape.dom(m)], combo[shape.cod(m)])
                    if not pool:
                        skip = True
                        break
                    edges[m] = pool[0]
                if skip:
                    continue
                d = Diagram.build(shape, fam, combo, edges)
                count += 1
                rep.run(f"distributive/{shape.name or 'shape'}#{count}",
                        lambda d=d, s=shape: lx.check_distributive(
                            world.cat, s, d, cfg.guard))
    elif suite == "cartesian-closed":
        if world.completion != "famlim":
            raise ParseError("cartesian-closed runs over --completion famlim")
        tb = world.testbed()
        for e, x in itertools.product(tb, repeat=2):
            def one(e=e, x=x):
                w = lx.exponential(world.cat, e, x, cfg.guard)
                return lx.verify_exponential(w, tb, guard=cfg.guard)
            rep.run(f"exp({e!r},{x!r})", one)
    elif suite == "connected":
        if world.completion != "famlim":
            raise ParseError("connected runs over --completion famlim")
        tb = world.testbed()
        units = [world.cat.unit(f) for f in world.lim.skeleton()[:2]]
        if len(units) < 2:
            units = units * 2
        for e in tb:
            def one(e=e):
                conn, _ = world.cat.is_connected(e)
                out = lx.check_exp_preserves_coproducts(
                    world.cat, e, units, cfg.guard)
                agree = conn == (out["status"] == PASS)
                return {"status": PASS if agree else FAIL,
                        "witness": None if agree else {
                            "kind": "equivalence-broken", "object": repr(e),
                            "connected": conn, "preserves": out["witness"]}}
            rep.run(f"connected({e!r})", one)
    elif suite == "reflection":
        small = ShapeClass(max_objects=1, max_morphisms=4,
                           max_index=cfg.index_bound)
        large = ShapeClass(max_objects=cfg.shape_bound,
                           max_morphisms=4 * cfg.shape_bound,
                           max_index=cfg.index_bound)
        gens = list(range(min(2, world.table.n_objects())))
        e_fibs = tuple(LimCategory(world.table, small).unit(g) for g in gens)
        x_fibs = e_fibs
        rep.run("reflection", lambda: lx.check_reflection(
            world.table, e_fibs, x_fibs, small, large, cfg.guard))
    else:
        raise ParseError(f"unknown suite {suite!r}")


def cmd_verify(world: World, args, rep: Report):
    run_suite(world, args.suite, rep)


# ---------------------------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(prog="freecat")
    p.add_argument("--bound-index", type=int, default=3)
    p.add_argument("--bound-shape", type=int, default=2)
    p.add_argument("--guard", type=int, default=10 ** 6)
    p.add_argument("--testbed", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check the category axioms of a file")
    c.add_argument("file")

    sub.add_parser("gallery", help="axiom-check the built-in examples")

    h = sub.add_parser("hom", help="enumerate a hom-set in a completion")
    h.add_argument("file")
    h.add_argument("src")
    h.add_argument("dst")
    h.add_argument("--completion", choices=COMPLETIONS, default="famlim")

    l = sub.add_parser("limit", help="finite limit of a named-shape diagram")
    l.add_argument("file")
    l.add_argument("objects", nargs="+")
    l.add_argument("--shape", default="cospan")
    l.add_argument("--completion", choices=COMPLETIONS, default="famlim")
    l.add_argument("--mor", type=int, action="append",
                   help="index into the enumerated hom-set per non-identity edge")
    l.add_argument("--verify", action="store_true")

    e = sub.add_parser("exp", help="exponential object in Fam of formal limits")
    e.add_argument("file")
    e.add_argument("exponent")
    e.add_argument("codomain")
    e.add_argument("--completion", choices=("famlim",), default="famlim")
    e.add_argument("--verify", action="store_true")

    v = sub.add_parser("verify", help="run a checker suite")
    v.add_argument("file")
    v.add_argument("--suite", required=True,
                   choices=("category", "extensive", "distributive",
                            "cartesian-closed", "connected", "reflection"))
    v.add_argument("--completion", choices=COMPLETIONS, default=None)
    return p


_SUITE_DEFAULT_COMPLETION = {
    "category": "famlim", "extensive": "base", "distributive": "base",
    "cartesian-closed": "famlim", "connected": "famlim", "reflection": "famlim",
}

_DISPATCH = {"check": cmd_check, "gallery": cmd_gallery, "hom": cmd_hom,
             "limit": cmd_limit, "exp": cmd_exp, "verify": cmd_verify}


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        cfg = RunConfig(index_bound=args.bound_index, shape_bound=args.bound_shape,
                        guard=args.guard, testbed=args.testbed, seed=args.seed,
                        fmt=args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rep = Report(args.command, cfg)
    try:
        if args.command == "gallery":
            world = None
            cmd_gallery(world, args, rep)
        else:
            table = catio.load(args.file)
            completion = getattr(args, "completion", None)
            if completion is None:
                completion = _SUITE_DEFAULT_COMPLETION.get(
                    getattr(args, "suite", ""), "famlim")
            world = World(table, completion, cfg)
            _DISPATCH[args.command](world, args, rep)
    except (ParseError, UnknownObjectError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FreecatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.render())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
