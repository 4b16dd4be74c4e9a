"""Command line front end.

Instances live in JSON files.  A file fixes one ambient and declares named
structures that may reference each other by name:

    {
      "ambient": "finset",                      # or "fingrp", "fingset:<group>"
      "groups":  {"G": {"order": 2, "mul": [[0, 1], [1, 0]]}},
      "objects": {"A": {"size": 3}, "B": {"size": 2}},
      "maps":    {"f": {"dom": "A", "cod": "B", "table": [0, 0, 1]}},
      "categories": {
        "X": {"obj": "A", "arr": "B", "s": "f", "t": "f",
              "e": {"dom": "B", "cod": "A", "table": [0, 1]},
              "m": {"pairs": [[0, 0, 0], [1, 1, 1]]}}
      },
      "functors": {"F": {"dom": "X", "cod": "Y", "f0": "g", "f1": "h"}},
      "transformations": {"t": {"src": "F", "tgt": "G", "comp": "k"}},
      "anafunctors": {"P": {"src": "X", "tgt": "Y", "cover": "u",
                            "f0": "g", "f1": [0, 1, 2]}},
      "anatransformations": {"a": {"src": "P", "tgt": "Q", "comp": [0, 1]}}
    }

Objects are {"size": n} over finset, {"order": n, "mul": [[..]]} over fingrp
and {"size": n, "action": [[..]]} over fingset.  A map position accepts a
declared name, an inline {"dom", "cod", "table"} object, or a bare table when
the endpoints are forced by context (functor components, covers, transformation
components).  Composition is extensional: "m" lists every composable pair
[g, f, m(g, f)] exactly once and the loader cross-checks the list against the
pullback of source against target.  Groups may also name a built-in: z2, z3,
z4, z2xz2, s3.

Every declaration is validated on load and errors carry the offending path.
Exit codes: 0 all checks passed, 1 a check failed and a witness was printed,
2 the input could not be parsed or used.  The default search bound is 4,
overridable through the ANACAT_SIZE_BOUND environment variable.  Commands that
output structures (compose-ana, vcomp, pseudoinverse) emit instance files that
can be fed back to `validate`.
"""

import argparse
import json
import os
import sys

from .ambient import FINSET, AmbientError, Arrow, FinSetObj, identity
from .ana import (
    AnaTransformation,
    Anafunctor,
    from_functor,
    compose_ana,
    pseudoinverse,
    validate_ana_transformation,
    validate_anafunctor,
    vcomp_trans,
)
from .instances import (
    FINGRP,
    FinGSetAmbient,
    FiniteGroup,
    S3,
    V4,
    Z2,
    Z3,
    Z4,
    validate_group,
)
from .internal import (
    InternalCategory,
    InternalFunctor,
    NaturalTransformation,
    base_change,
    ff_comparison,
    find_local_splitting,
    is_fully_faithful,
    validate_category,
    validate_functor,
    validate_transformation,
)
from .laws import SUITE_NAMES, run_laws
from .report import VerificationReport
from .sites import (
    Pretopology,
    coproduct_pretopology,
    jointly_surjective_families,
    split_pretopology,
    surjective_pretopology,
    trivial_pretopology,
)

_BUILTIN_GROUPS = {"z2": Z2, "z3": Z3, "z4": Z4, "z2xz2": V4, "v4": V4, "s3": S3}

_SUBSCRIPTS = {"₀": "0", "₁": "1", "₂": "2", "₃": "3",
               "₄": "4", "×": "x"}


class InstanceError(Exception):
    """A problem in an instance file, located by declaration path."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


def _builtin_group(name):
    key = name.strip().lower()
    for sub, plain in _SUBSCRIPTS.items():
        key = key.replace(sub, plain)
    return _BUILTIN_GROUPS.get(key)


def default_bound():
    raw = os.environ.get("ANACAT_SIZE_BOUND")
    if raw is None:
        return 4
    try:
        bound = int(raw)
    except ValueError:
        raise InstanceError("ANACAT_SIZE_BOUND", f"not an integer: {raw!r}")
    if bound < 1:
        raise InstanceError("ANACAT_SIZE_BOUND", "bound must be positive")
    return bound


# instance files


class InstanceFile:
    """A loaded instance file: one ambient plus named declarations."""

    def __init__(self, path):
        self.path = path
        self.ambient = None
        self.groups = {}
        self.objects = {}
        self.maps = {}
        self.categories = {}
        self.functors = {}
        self.transformations = {}
        self.anafunctors = {}
        self.anatransformations = {}
        self.report = VerificationReport(f"validate {path}")


def _expect(cond, path, message):
    if not cond:
        raise InstanceError(path, message)


def _int_list(node, path):
    _expect(isinstance(node, list) and all(isinstance(v, int) for v in node),
            path, "expected a list of integers")
    return tuple(node)


def _parse_group(node, path, groups):
    if isinstance(node, str):
        if node in groups:
            return groups[node]
        g = _builtin_group(node)
        _expect(g is not None, path, f"unknown group {node!r}")
        return g
    _expect(isinstance(node, dict), path, "expected a group table or name")
    _expect("order" in node and "mul" in node, path,
            'a group needs "order" and "mul"')
    mul = node["mul"]
    _expect(isinstance(mul, list) and len(mul) == node["order"], path,
            '"mul" must be an order x order table')
    g = FiniteGroup(tuple(_int_list(row, f"{path}.mul") for row in mul))
    try:
        validate_group(g)
    except AmbientError as err:
        raise InstanceError(path, str(err))
    return g


def _parse_object(ambient, node, path, groups):
    if ambient is FINGRP:
        return _parse_group(node, path, groups)
    _expect(isinstance(node, dict), path, "expected an object declaration")
    if ambient is FINSET:
        _expect(isinstance(node.get("size"), int) and node["size"] >= 0,
                path, 'a finite set needs a non-negative "size"')
        return FinSetObj(node["size"])
    # fingset
    _expect("action" in node, path, 'a G-set needs an "action" table')
    action = node["action"]
    _expect(isinstance(action, list) and len(action) == ambient.group.size,
            path, '"action" needs one row per group element')
    try:
        obj = ambient.obj(tuple(_int_list(row, f"{path}.action") for row in action))
    except AmbientError as err:
        raise InstanceError(path, str(err))
    if "size" in node:
        _expect(node["size"] == obj.size, path,
                f'"size" says {node["size"]} but the action is on {obj.size} elements')
    return obj


def _build_arrow(inst, dom, cod, table, path):
    arrow = Arrow(dom, cod, table)
    try:
        inst.ambient.validate_arrow(arrow)
    except AmbientError as err:
        raise InstanceError(path, str(err))
    return arrow


def _arrow_ref(inst, node, path, dom=None, cod=None):
    """Resolve a map position: name, inline declaration, or bare table."""
    if isinstance(node, str):
        _expect(node in inst.maps, path, f"unknown map {node!r}")
        arrow = inst.maps[node]
    elif isinstance(node, list):
        _expect(dom is not None and cod is not None, path,
                "a bare table is only allowed where the endpoints are forced")
        arrow = _build_arrow(inst, dom, cod, _int_list(node, path), path)
    elif isinstance(node, dict):
        _expect("table" in node, path, 'a map needs a "table"')
        d = inst.objects.get(node["dom"]) if "dom" in node else dom
        c = inst.objects.get(node["cod"]) if "cod" in node else cod
        if "dom" in node:
            _expect(d is not None, path, f'unknown object {node["dom"]!r}')
        if "cod" in node:
            _expect(c is not None, path, f'unknown object {node["cod"]!r}')
        _expect(d is not None and c is not None, path,
                'this map needs explicit "dom" and "cod"')
        arrow = _build_arrow(inst, d, c, _int_list(node["table"], f"{path}.table"), path)
    else:
        raise InstanceError(path, "expected a map name, declaration or table")
    if dom is not None:
        _expect(arrow.dom == dom, path, "map has the wrong domain")
    if cod is not None:
        _expect(arrow.cod == cod, path, "map has the wrong codomain")
    return arrow


def _parse_category(inst, node, path):
    _expect(isinstance(node, dict), path, "expected a category declaration")
    for key in ("obj", "arr", "s", "t", "e", "m"):
        _expect(key in node, path, f'a category needs "{key}"')
    _expect(node["obj"] in inst.objects, path, f'unknown object {node["obj"]!r}')
    _expect(node["arr"] in inst.objects, path, f'unknown object {node["arr"]!r}')
    obj = inst.objects[node["obj"]]
    arr = inst.objects[node["arr"]]
    s = _arrow_ref(inst, node["s"], f"{path}.s", dom=arr, cod=obj)
    t = _arrow_ref(inst, node["t"], f"{path}.t", dom=arr, cod=obj)
    e = _arrow_ref(inst, node["e"], f"{path}.e", dom=obj, cod=arr)

    m = node["m"]
    _expect(isinstance(m, dict) and isinstance(m.get("pairs"), list),
            path, '"m" must be {"pairs": [[g, f, m(g, f)], ...]}')
    seen = {}
    for k, entry in enumerate(m["pairs"]):
        where = f"{path}.m.pairs[{k}]"
        triple = _int_list(entry, where)
        _expect(len(triple) == 3, where, "expected [g, f, result]")
        g, f, r = triple
        _expect(all(0 <= v < arr.size for v in triple), where,
                "arrow element out of range")
        _expect((g, f) not in seen, where, f"duplicate pair ({g}, {f})")
        seen[(g, f)] = r
    comp = inst.ambient.pullback(s, t)
    want = list(comp.pairs())
    for g, f in want:
        _expect((g, f) in seen, f"{path}.m",
                f"missing composable pair ({g}, {f})")
    for g, f in seen:
        _expect(s.table[g] == t.table[f], f"{path}.m",
                f"pair ({g}, {f}) is not composable")
    mul = Arrow(comp.apex, arr, tuple(seen[p] for p in want))

    inv = None
    if "i" in node:
        inv = _arrow_ref(inst, node["i"], f"{path}.i", dom=arr, cod=arr)
    try:
        return InternalCategory(inst.ambient, obj, arr, s, t, e, mul, inv)
    except AmbientError as err:
        raise InstanceError(path, str(err))


def _named(inst, table, node, path, what):
    _expect(isinstance(node, str), path, f"expected a {what} name")
    _expect(node in table, path, f"unknown {what} {node!r}")
    return table[node]


def _fold_validation(inst, law, sub):
    if sub.passed():
        inst.report.ok(law, instances=len(sub.rows))
    else:
        first = sub.failures()[0]
        inst.report.fail(law, f"{first.law}: {first.witness}",
                         instances=len(sub.rows))


def load_instance_file(path):
    """Parse and validate one instance file."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as err:
        raise InstanceError(path, str(err))
    except json.JSONDecodeError as err:
        raise InstanceError(path, f"invalid JSON: {err}")
    _expect(isinstance(doc, dict), path, "top level must be an object")

    inst = InstanceFile(path)
    for name, node in doc.get("groups", {}).items():
        inst.groups[name] = _parse_group(node, f"groups.{name}", inst.groups)

    tag = doc.get("ambient", "finset")
    if tag == "finset":
        inst.ambient = FINSET
    elif tag == "fingrp":
        inst.ambient = FINGRP
    elif isinstance(tag, str) and tag.startswith("fingset:"):
        gname = tag.split(":", 1)[1]
        group = inst.groups.get(gname) or _builtin_group(gname)
        _expect(group is not None, "ambient", f"unknown group {gname!r}")
        inst.ambient = FinGSetAmbient(group)
    else:
        raise InstanceError("ambient", f"unknown ambient {tag!r}")

    for name, node in doc.get("objects", {}).items():
        inst.objects[name] = _parse_object(inst.ambient, node,
                                           f"objects.{name}", inst.groups)
    for name, node in doc.get("maps", {}).items():
        path_ = f"maps.{name}"
        _expect(isinstance(node, dict) and "dom" in node and "cod" in node,
                path_, 'a named map needs "dom" and "cod"')
        _expect(node["dom"] in inst.objects, path_,
                f'unknown object {node["dom"]!r}')
        _expect(node["cod"] in inst.objects, path_,
                f'unknown object {node["cod"]!r}')
        inst.maps[name] = _build_arrow(
            inst, inst.objects[node["dom"]], inst.objects[node["cod"]],
            _int_list(node.get("table"), f"{path_}.table"), path_)

    for name, node in doc.get("categories", {}).items():
        cat = _parse_category(inst, node, f"categories.{name}")
        inst.categories[name] = cat
        _fold_validation(inst, f"categories.{name}", validate_category(cat))

    for name, node in doc.get("functors", {}).items():
        path_ = f"functors.{name}"
        _expect(isinstance(node, dict), path_, "expected a functor declaration")
        dom = _named(inst, inst.categories, node.get("dom"), f"{path_}.dom", "category")
        cod = _named(inst, inst.categories, node.get("cod"), f"{path_}.cod", "category")
        f0 = _arrow_ref(inst, node.get("f0"), f"{path_}.f0", dom=dom.obj, cod=cod.obj)
        f1 = _arrow_ref(inst, node.get("f1"), f"{path_}.f1", dom=dom.arr, cod=cod.arr)
        try:
            fun = InternalFunctor(dom, cod, f0, f1)
        except AmbientError as err:
            raise InstanceError(path_, str(err))
        inst.functors[name] = fun
        _fold_validation(inst, path_, validate_functor(fun))

    for name, node in doc.get("transformations", {}).items():
        path_ = f"transformations.{name}"
        _expect(isinstance(node, dict), path_, "expected a transformation")
        src = _named(inst, inst.functors, node.get("src"), f"{path_}.src", "functor")
        tgt = _named(inst, inst.functors, node.get("tgt"), f"{path_}.tgt", "functor")
        comp = _arrow_ref(inst, node.get("comp"), f"{path_}.comp",
                          dom=src.dom.obj, cod=src.cod.arr)
        try:
            nat = NaturalTransformation(src, tgt, comp)
        except AmbientError as err:
            raise InstanceError(path_, str(err))
        inst.transformations[name] = nat
        _fold_validation(inst, path_, validate_transformation(nat))

    for name, node in doc.get("anafunctors", {}).items():
        path_ = f"anafunctors.{name}"
        _expect(isinstance(node, dict), path_, "expected an anafunctor")
        if "functor" in node and "cover" not in node:
            fun = _named(inst, inst.functors, node["functor"],
                         f"{path_}.functor", "functor")
            ana = from_functor(fun)
        else:
            src = _named(inst, inst.categories, node.get("src"), f"{path_}.src", "category")
            tgt = _named(inst, inst.categories, node.get("tgt"), f"{path_}.tgt", "category")
            cover = _arrow_ref(inst, node.get("cover"), f"{path_}.cover", cod=src.obj)
            bc = base_change(src, cover)
            f0 = _arrow_ref(inst, node.get("f0"), f"{path_}.f0",
                            dom=cover.dom, cod=tgt.obj)
            f1 = _arrow_ref(inst, node.get("f1"), f"{path_}.f1",
                            dom=bc.arr, cod=tgt.arr)
            try:
                ana = Anafunctor(src, tgt, cover, InternalFunctor(bc, tgt, f0, f1))
            except AmbientError as err:
                raise InstanceError(path_, str(err))
        inst.anafunctors[name] = ana
        _fold_validation(inst, path_, validate_anafunctor(ana))

    for name, node in doc.get("anatransformations", {}).items():
        path_ = f"anatransformations.{name}"
        _expect(isinstance(node, dict), path_, "expected an ana-transformation")
        src = _named(inst, inst.anafunctors, node.get("src"), f"{path_}.src", "anafunctor")
        tgt = _named(inst, inst.anafunctors, node.get("tgt"), f"{path_}.tgt", "anafunctor")
        uv = inst.ambient.pullback(src.cover, tgt.cover)
        comp = _arrow_ref(inst, node.get("comp"), f"{path_}.comp",
                          dom=uv.apex, cod=src.tgt.arr)
        try:
            t = AnaTransformation(src, tgt, comp)
        except AmbientError as err:
            raise InstanceError(path_, str(err))
        inst.anatransformations[name] = t
        _fold_validation(inst, path_, validate_ana_transformation(t))

    total = sum(len(d) for d in (inst.objects, inst.maps, inst.categories,
                                 inst.functors, inst.transformations,
                                 inst.anafunctors, inst.anatransformations))
    inst.report.ok("declarations.loaded", instances=total)
    return inst


# pretopology names


def resolve_pretopology(name, ambient):
    """triv | surj | split | epi-grp | coprod-of:<family> | custom:<file>."""
    if name == "triv":
        return trivial_pretopology(ambient)
    if name == "surj":
        return surjective_pretopology(ambient)
    if name == "split":
        return split_pretopology(ambient)
    if name == "epi-grp":
        if ambient is not FINGRP:
            raise InstanceError("pretopology", "epi-grp needs the fingrp ambient")
        return surjective_pretopology(FINGRP)
    if name.startswith("coprod-of:"):
        fam = name.split(":", 1)[1]
        if fam != "jsurj":
            raise InstanceError("pretopology", f"unknown family pretopology {fam!r}")
        if ambient is not FINSET:
            raise InstanceError("pretopology", "jsurj lives on the finset ambient")
        return coproduct_pretopology(jointly_surjective_families(ambient))
    if name.startswith("custom:"):
        return _custom_pretopology(name.split(":", 1)[1], ambient)
    raise InstanceError("pretopology", f"unknown pretopology {name!r}")


def _custom_pretopology(path, ambient):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as err:
        raise InstanceError(path, str(err))
    except json.JSONDecodeError as err:
        raise InstanceError(path, f"invalid JSON: {err}")
    _expect(doc.get("kind", "singleton") == "singleton", path,
            "custom pretopologies are singleton kind")
    covers = []
    for k, node in enumerate(doc.get("covers", [])):
        where = f"{path}.covers[{k}]"
        _expect(isinstance(node, dict) and "table" in node, where,
                'a cover needs "dom", "cod" and "table"')
        dom = _parse_object(ambient, node.get("dom"), f"{where}.dom", {})
        cod = _parse_object(ambient, node.get("cod"), f"{where}.cod", {})
        arrow = Arrow(dom, cod, _int_list(node["table"], f"{where}.table"))
        try:
            ambient.validate_arrow(arrow)
        except AmbientError as err:
            raise InstanceError(where, str(err))
        covers.append(arrow)

    def contains(arrow):
        return any(arrow == c for c in covers) or ambient.is_iso(arrow)

    def generators(y, bound):
        for c in covers:
            if c.cod == y:
                yield c
        yield identity(y)

    return Pretopology(doc.get("name", "custom"), ambient, "singleton",
                       contains, generators)


# serialization back out


def _object_json(obj):
    if isinstance(obj, FinSetObj):
        return {"size": obj.size}
    if isinstance(obj, FiniteGroup):
        return {"order": obj.size, "mul": [list(row) for row in obj.mul]}
    return {"size": obj.size, "action": [list(row) for row in obj.action]}


class _DocBuilder:
    """Builds an instance-file document, interning objects by value."""

    def __init__(self, ambient):
        self.ambient = ambient
        self._objects = []
        self.doc = {}

    def obj_name(self, obj):
        for name, seen in self._objects:
            if seen == obj:
                return name
        name = f"o{len(self._objects)}"
        self._objects.append((name, obj))
        return name

    def map_json(self, arrow):
        return {"dom": self.obj_name(arrow.dom), "cod": self.obj_name(arrow.cod),
                "table": list(arrow.table)}

    def category(self, name, cat):
        node = {"obj": self.obj_name(cat.obj), "arr": self.obj_name(cat.arr),
                "s": self.map_json(cat.src), "t": self.map_json(cat.tgt),
                "e": self.map_json(cat.unit),
                "m": {"pairs": [[g, f, r] for (g, f), r in
                                zip(cat.comp.pairs(), cat.mul.table)]}}
        if cat.inv is not None:
            node["i"] = self.map_json(cat.inv)
        self.doc.setdefault("categories", {})[name] = node
        return name

    def anafunctor(self, name, ana, src_name, tgt_name):
        node = {"src": src_name, "tgt": tgt_name,
                "cover": self.map_json(ana.cover),
                "f0": self.map_json(ana.functor.f0),
                "f1": list(ana.functor.f1.table)}
        self.doc.setdefault("anafunctors", {})[name] = node
        return name

    def anatransformation(self, name, t, src_name, tgt_name):
        node = {"src": src_name, "tgt": tgt_name, "comp": list(t.comp.table)}
        self.doc.setdefault("anatransformations", {})[name] = node
        return name

    def finish(self):
        if self.ambient is FINSET:
            tag = "finset"
        elif self.ambient is FINGRP:
            tag = "fingrp"
        else:
            tag = "fingset:G"
            self.doc["groups"] = {"G": _object_json(self.ambient.group)}
        out = {"ambient": tag,
               "objects": {name: _object_json(obj) for name, obj in self._objects}}
        out.update(self.doc)
        return out


def _dump(payload):
    return json.dumps(payload, sort_keys=True, indent=2)


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _report_text(rep, fmt):
    if fmt == "structured":
        return _dump(rep.to_dict())
    return rep.text()


# commands


def _cmd_validate(args):
    inst = load_instance_file(args.file)
    _emit(_report_text(inst.report, args.format), args.out)
    return 0 if inst.report.passed() else 1


def _require_valid(inst):
    bad = inst.report.failures()
    if bad:
        print(f"error: {inst.path} fails validation: {bad[0].law}: "
              f"{bad[0].witness}", file=sys.stderr)
        return False
    return True


def _pick(table, name, path, what):
    if name is not None:
        if name not in table:
            raise InstanceError(path, f"unknown {what} {name!r}")
        return table[name]
    if len(table) == 1:
        return next(iter(table.values()))
    raise InstanceError(path, f"file declares {len(table)} {what}s; pass --name")


def _pick_ana(inst, name, path):
    """An anafunctor by name; plain functors are embedded via their graph."""
    if name is not None:
        if name in inst.anafunctors:
            return inst.anafunctors[name]
        if name in inst.functors:
            return from_functor(inst.functors[name])
        raise InstanceError(path, f"unknown anafunctor {name!r}")
    if len(inst.anafunctors) == 1:
        return next(iter(inst.anafunctors.values()))
    if not inst.anafunctors and len(inst.functors) == 1:
        return from_functor(next(iter(inst.functors.values())))
    raise InstanceError(path, "ambiguous anafunctor; pass --name")


def _cmd_is_ff(args):
    inst = load_instance_file(args.file)
    if not _require_valid(inst):
        return 1
    fun = _pick(inst.functors, args.name, args.file, "functor")
    _, _, cmp_arrow = ff_comparison(fun)
    ok = is_fully_faithful(fun)
    print("true" if ok else "false")
    print(_dump({"fully-faithful": ok,
                 "comparison": {"dom": _object_json(cmp_arrow.dom),
                                "cod": _object_json(cmp_arrow.cod),
                                "table": list(cmp_arrow.table)}}))
    return 0 if ok else 1


def _cmd_is_weq(args):
    inst = load_instance_file(args.file)
    if not _require_valid(inst):
        return 1
    fun = _pick(inst.functors, args.name, args.file, "functor")
    j = resolve_pretopology(args.pretopology, inst.ambient)
    ff = is_fully_faithful(fun)
    ls = find_local_splitting(fun, j, args.bound) if ff else None
    ok = ff and ls is not None
    print("true" if ok else "false")
    witness = {"fully-faithful": ff, "pretopology": args.pretopology,
               "bound": args.bound, "splitting": None}
    if ls is not None:
        witness["splitting"] = {
            "cover": {"dom": _object_json(ls.cover.dom),
                      "cod": _object_json(ls.cover.cod),
                      "table": list(ls.cover.table)},
            "lift": list(ls.lift.table),
            "iso": list(ls.iso.comp.table)}
    print(_dump(witness))
    return 0 if ok else 1


def _ana_doc(builder, name, ana):
    src = builder.category(f"{name}-src", ana.src)
    tgt = builder.category(f"{name}-tgt", ana.tgt)
    return builder.anafunctor(name, ana, src, tgt)


def _cmd_compose_ana(args):
    f_inst = load_instance_file(args.f)
    g_inst = load_instance_file(args.g)
    if not (_require_valid(f_inst) and _require_valid(g_inst)):
        return 1
    f = _pick_ana(f_inst, args.name_f, args.f)
    g = _pick_ana(g_inst, args.name_g, args.g)
    composite = compose_ana(g, f)  # f first, then g
    builder = _DocBuilder(f_inst.ambient)
    _ana_doc(builder, "composite", composite)
    _emit(_dump(builder.finish()), args.out)
    return 0


def _cmd_vcomp(args):
    a_inst = load_instance_file(args.a)
    b_inst = load_instance_file(args.b)
    if not (_require_valid(a_inst) and _require_valid(b_inst)):
        return 1
    a = _pick(a_inst.anatransformations, args.name_a, args.a, "ana-transformation")
    b = _pick(b_inst.anatransformations, args.name_b, args.b, "ana-transformation")
    if a.tgt != b.src:
        raise InstanceError("vcomp", "middle anafunctors do not match")
    c = vcomp_trans(a, b)  # a first, then b
    builder = _DocBuilder(a_inst.ambient)
    src = _ana_doc(builder, "src", c.src)
    tgt = _ana_doc(builder, "tgt", c.tgt)
    builder.anatransformation("composite", c, src, tgt)
    _emit(_dump(builder.finish()), args.out)
    return 0


def _cmd_pseudoinverse(args):
    inst = load_instance_file(args.file)
    if not _require_valid(inst):
        return 1
    fun = _pick(inst.functors, args.name, args.file, "functor")
    j = resolve_pretopology(args.pretopology, inst.ambient)
    if not is_fully_faithful(fun):
        print("error: functor is not fully faithful", file=sys.stderr)
        return 1
    try:
        inverse, unit, counit = pseudoinverse(fun, j, args.bound)
    except AmbientError as err:
        print(f"error: {err} (pretopology {args.pretopology}, "
              f"bound {args.bound})", file=sys.stderr)
        return 1
    builder = _DocBuilder(inst.ambient)
    _ana_doc(builder, "inverse", inverse)
    for name, t in (("unit", unit), ("counit", counit)):
        src = _ana_doc(builder, f"{name}-src", t.src)
        tgt = _ana_doc(builder, f"{name}-tgt", t.tgt)
        builder.anatransformation(name, t, src, tgt)
    _emit(_dump(builder.finish()), args.out)
    return 0


def _cmd_laws(args):
    rep = run_laws((args.suite,), seed=args.seed, bound=args.bound,
                   fault=args.fault_inject)
    _emit(_report_text(rep, args.format), args.out)
    return 0 if rep.passed() else 1


def _cmd_report(args):
    try:
        with open(args.file) as fh:
            doc = json.load(fh)
    except OSError as err:
        raise InstanceError(args.file, str(err))
    except json.JSONDecodeError as err:
        raise InstanceError(args.file, f"invalid JSON: {err}")
    _expect(isinstance(doc, dict) and isinstance(doc.get("rows"), list),
            args.file, 'a report needs a "rows" list')
    rep = VerificationReport(doc.get("title", ""))
    for k, row in enumerate(doc["rows"]):
        _expect(isinstance(row, dict) and "law" in row and "status" in row,
                f"{args.file}.rows[{k}]", 'a row needs "law" and "status"')
        rep.add(row["law"], row["status"], row.get("instances", 0),
                row.get("bound"), row.get("witness"), row.get("reason"))
    _emit(_report_text(rep, args.format), args.out)
    return 0 if rep.passed() else 1


def _parser():
    p = argparse.ArgumentParser(
        prog="anacat",
        description="verify internal category theory over finite ambients")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt_args(q):
        q.add_argument("--format", choices=("text", "structured"),
                       default="text")
        q.add_argument("--out", help="write output to a file instead of stdout")

    q = sub.add_parser("validate", help="validate every declaration in a file")
    q.add_argument("file")
    fmt_args(q)
    q.set_defaults(fn=_cmd_validate)

    q = sub.add_parser("is-ff", help="test a functor for full faithfulness")
    q.add_argument("file")
    q.add_argument("--name", help="functor name if the file declares several")
    q.set_defaults(fn=_cmd_is_ff)

    q = sub.add_parser("is-weq", help="test a functor for weak equivalence")
    q.add_argument("file")
    q.add_argument("--name")
    q.add_argument("--pretopology", required=True,
                   help="triv | surj | split | epi-grp | coprod-of:jsurj | custom:<file>")
    q.add_argument("--bound", type=int, default=None)
    q.set_defaults(fn=_cmd_is_weq)

    q = sub.add_parser("compose-ana", help="compose two anafunctors (first, then second)")
    q.add_argument("f")
    q.add_argument("g")
    q.add_argument("--name-f")
    q.add_argument("--name-g")
    q.add_argument("--out")
    q.set_defaults(fn=_cmd_compose_ana)

    q = sub.add_parser("vcomp", help="vertically compose two ana-transformations")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--name-a")
    q.add_argument("--name-b")
    q.add_argument("--out")
    q.set_defaults(fn=_cmd_vcomp)

    q = sub.add_parser("pseudoinverse",
                       help="quasi-inverse anafunctor with unit and counit")
    q.add_argument("file")
    q.add_argument("--name")
    q.add_argument("--pretopology", required=True)
    q.add_argument("--bound", type=int, default=None)
    q.add_argument("--out")
    q.set_defaults(fn=_cmd_pseudoinverse)

    q = sub.add_parser("laws", help="run a law suite over the generated corpus")
    q.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--bound", type=int, default=None)
    q.add_argument("--fault-inject", action="store_true",
                   help="also corrupt structures and require detection")
    fmt_args(q)
    q.set_defaults(fn=_cmd_laws)

    q = sub.add_parser("report", help="re-render a structured report file")
    q.add_argument("file")
    fmt_args(q)
    q.set_defaults(fn=_cmd_report)

    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if getattr(args, "bound", None) is None and hasattr(args, "bound"):
            args.bound = default_bound()
        return args.fn(args)
    except InstanceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except AmbientError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
