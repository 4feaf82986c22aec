"""Reading and writing finite categories as versioned JSON documents.

A category file is either an explicit presentation::

    {"format": "freecat-category", "version": 1, "name": "...",
     "objects": ["a", "b"],
     "morphisms": [{"name": "f", "dom": "a", "cod": "b"}],
     "compose": [["g", "f", "gf"]]}

or a builder reference ``{"format": ..., "builder": "chain-lattice",
"params": {"n": 2}}``.  Identities are implicit and named ``id_<obj>``;
``compose`` lists only the entries where neither factor is an identity.
``load`` after ``save`` is the identity on canonical documents.
"""

from __future__ import annotations

import json

from .errors import ParseError, UnknownObjectError
from .fincat import BUILDERS, FinCategory

FORMAT = "freecat-category"
VERSION = 1


def _id_name(obj):
    return f"id_{obj}"


def from_document(doc) -> FinCategory:
    """Build a :class:`FinCategory` from a parsed category document."""
    if not isinstance(doc, dict):
        raise ParseError("category document must be a JSON object")
    if doc.get("format") != FORMAT:
        raise ParseError(f"unknown document format {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        raise ParseError(f"unsupported document version {doc.get('version')!r}")

    if "builder" in doc:
        kind = doc["builder"]
        if kind not in BUILDERS:
            raise ParseError(f"unknown builder {kind!r}; "
                             f"known: {', '.join(sorted(BUILDERS))}")
        try:
            return BUILDERS[kind](doc.get("params", {}))
        except (TypeError, KeyError, ValueError) as exc:
            raise ParseError(f"bad params for builder {kind!r}: {exc!r}")

    try:
        objects = list(doc["objects"])
        mor_docs = list(doc["morphisms"])
        compose_docs = list(doc.get("compose", []))
    except KeyError as exc:
        raise ParseError(f"category document missing field {exc}")
    if len(set(objects)) != len(objects):
        raise ParseError("duplicate object names")

    obj_id = {o: i for i, o in enumerate(objects)}
    # identities first, aligned with the object order
    morphisms = [(_id_name(o), i, i) for i, o in enumerate(objects)]
    mor_id = {n: i for i, (n, _, _) in enumerate(morphisms)}
    for m in mor_docs:
        try:
            name, dom, cod = m["name"], m["dom"], m["cod"]
        except (TypeError, KeyError):
            raise ParseError(f"bad morphism entry {m!r}")
        if name in mor_id:
            raise ParseError(f"duplicate morphism name {name!r}")
        if dom not in obj_id or cod not in obj_id:
            raise UnknownObjectError(f"morphism {name!r} references unknown "
                                     f"object {dom!r} or {cod!r}")
        mor_id[name] = len(morphisms)
        morphisms.append((name, obj_id[dom], obj_id[cod]))

    compose = {}
    for entry in compose_docs:
        try:
            g, f, gf = entry
        except (TypeError, ValueError):
            raise ParseError(f"bad compose entry {entry!r}")
        for n in (g, f, gf):
            if n not in mor_id:
                raise ParseError(f"compose entry references unknown morphism {n!r}")
        compose[(mor_id[g], mor_id[f])] = mor_id[gf]

    identity = tuple(range(len(objects)))
    cat = FinCategory(objects, morphisms, identity, compose,
                      name=doc.get("name", ""))
    # every composable non-identity pair must be covered
    for g in range(cat.n_morphisms()):
        for f in range(cat.n_morphisms()):
            if cat.is_identity(g) or cat.is_identity(f):
                continue
            if cat.cod(f) == cat.dom(g) and (g, f) not in cat.compose_table:
                raise ParseError(
                    f"missing composite {cat.morphisms[g][0]} ∘ {cat.morphisms[f][0]}")
    return cat


def to_document(cat: FinCategory) -> dict:
    """Serialize to the canonical explicit document (no builder shorthand)."""
    names = {}
    seen = set()
    for m, (n, d, c) in enumerate(cat.morphisms):
        name = _id_name(cat.objects[d]) if cat.is_identity(m) else n
        if name in seen:
            raise ParseError(f"cannot serialize: duplicate morphism name {name!r}")
        seen.add(name)
        names[m] = name
    morphisms = [{"name": names[m], "dom": cat.objects[cat.dom(m)],
                  "cod": cat.objects[cat.cod(m)]}
                 for m in range(cat.n_morphisms()) if not cat.is_identity(m)]
    compose = sorted(
        [names[g], names[f], names[gf]]
        for (g, f), gf in cat.compose_table.items()
        if not (cat.is_identity(g) or cat.is_identity(f)))
    return {"format": FORMAT, "version": VERSION, "name": cat.name,
            "objects": list(cat.objects), "morphisms": morphisms,
            "compose": compose}


def load(path) -> FinCategory:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}")
    return from_document(doc)


def save(cat: FinCategory, path):
    with open(path, "w") as fh:
        json.dump(to_document(cat), fh, indent=2, sort_keys=True)
        fh.write("\n")


def loads(text: str) -> FinCategory:
    try:
        return from_document(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}")


def dumps(cat: FinCategory) -> str:
    return json.dumps(to_document(cat), indent=2, sort_keys=True) + "\n"
