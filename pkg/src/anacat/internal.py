"""Internal categories, functors and transformations in a finite ambient.

An internal category is a pair of ambient objects (obj, arr) with source,
target, unit and multiplication arrows.  Multiplication is defined on the
chosen pullback of (src, tgt): element pairs (g, f) with src(g) == tgt(f),
composed as "g after f".
"""

from .ambient import (
    Ambient,
    AmbientError,
    Arrow,
    compose,
    identity,
)
from .report import VerificationReport


class InternalCategory:
    """An internal category; equality is structural on all tables."""

    def __init__(self, ambient, obj, arr, src, tgt, unit, mul, inv=None):
        if src.dom != arr or src.cod != obj:
            raise AmbientError("src must map arrows to objects")
        if tgt.dom != arr or tgt.cod != obj:
            raise AmbientError("tgt must map arrows to objects")
        if unit.dom != obj or unit.cod != arr:
            raise AmbientError("unit must map objects to arrows")
        self.ambient = ambient
        self.obj = obj
        self.arr = arr
        self.src = src
        self.tgt = tgt
        self.unit = unit
        self.comp = ambient.pullback(src, tgt)
        if mul.dom != self.comp.apex or mul.cod != arr:
            raise AmbientError("mul must map composable pairs to arrows")
        self.mul = mul
        if inv is not None and (inv.dom != arr or inv.cod != arr):
            raise AmbientError("inv must be an endo of the arrow object")
        self.inv = inv
        self._iso = None
        self._iso_inv = None

    @classmethod
    def build(cls, ambient, obj, arr, src, tgt, unit, mul_el, inv_el=None):
        """Construct structure tables from elementwise callables."""
        comp = ambient.pullback(src, tgt)
        table = tuple(mul_el(g, f) for (g, f) in comp.pairs())
        mul = Arrow(comp.apex, arr, table)
        inv = None
        if inv_el is not None:
            inv = Arrow(arr, arr, tuple(inv_el(a) for a in range(arr.size)))
        return cls(ambient, obj, arr, src, tgt, unit, mul, inv)

    def _parts(self):
        return (self.ambient, self.obj, self.arr, self.src, self.tgt,
                self.unit, self.mul, self.inv)

    def __eq__(self, other):
        if not isinstance(other, InternalCategory):
            return NotImplemented
        return self._parts() == other._parts()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        tag = "groupoid" if self.inv is not None else "category"
        return (f"<internal {tag} in {self.ambient.name}: "
                f"{self.obj.size} objects, {self.arr.size} arrows>")

    def src_el(self, a):
        return self.src.table[a]

    def tgt_el(self, a):
        return self.tgt.table[a]

    def unit_el(self, x):
        return self.unit.table[x]

    def mul_el(self, g, f):
        return self.mul.table[self.comp.index_of(g, f)]

    def composable_pairs(self):
        return list(self.comp.pairs())

    def iso_elements(self):
        if self._iso is None:
            isos = []
            inv_of = {}
            for a in range(self.arr.size):
                if self.inv is not None:
                    b = self.inv.table[a]
                    isos.append(a)
                    inv_of[a] = b
                    continue
                sa, ta = self.src.table[a], self.tgt.table[a]
                for b in range(self.arr.size):
                    if self.src.table[b] != ta or self.tgt.table[b] != sa:
                        continue
                    if (self.mul_el(b, a) == self.unit.table[sa]
                            and self.mul_el(a, b) == self.unit.table[ta]):
                        isos.append(a)
                        inv_of[a] = b
                        break
            self._iso = tuple(isos)
            self._iso_inv = inv_of
        return self._iso

    def is_iso_el(self, a):
        return a in set(self.iso_elements())

    def iso_inverse_el(self, a):
        self.iso_elements()
        if a not in self._iso_inv:
            raise AmbientError(f"arrow element {a} is not invertible")
        return self._iso_inv[a]

    def hom_elements(self, x, y):
        return [a for a in range(self.arr.size)
                if self.src.table[a] == x and self.tgt.table[a] == y]


def validate_category(cat):
    rep = VerificationReport("internal category")
    amb = cat.ambient
    try:
        amb.validate_arrow(cat.src)
        amb.validate_arrow(cat.tgt)
        amb.validate_arrow(cat.unit)
        amb.validate_arrow(cat.mul)
        if cat.inv is not None:
            amb.validate_arrow(cat.inv)
        rep.ok("category.structure-arrows", 4 + (cat.inv is not None))
    except AmbientError as err:
        rep.fail("category.structure-arrows", err)
        return rep

    if compose(cat.src, cat.unit).table == identity(cat.obj).table:
        rep.ok("category.unit-source", cat.obj.size)
    else:
        rep.fail("category.unit-source", compose(cat.src, cat.unit).table)
    if compose(cat.tgt, cat.unit).table == identity(cat.obj).table:
        rep.ok("category.unit-target", cat.obj.size)
    else:
        rep.fail("category.unit-target", compose(cat.tgt, cat.unit).table)

    bad = None
    for idx, (g, f) in enumerate(cat.comp.pairs()):
        m = cat.mul.table[idx]
        if cat.src.table[m] != cat.src.table[f] or cat.tgt.table[m] != cat.tgt.table[g]:
            bad = (g, f)
            break
    if bad:
        rep.fail("category.mul-endpoints", bad)
    else:
        rep.ok("category.mul-endpoints", len(cat.composable_pairs()))
    if rep.failures():
        # unit and associativity checks assume well-typed composition
        return rep

    bad = None
    for a in range(cat.arr.size):
        sa, ta = cat.src.table[a], cat.tgt.table[a]
        if cat.mul_el(cat.unit.table[ta], a) != a:
            bad = ("left-unit", a)
            break
        if cat.mul_el(a, cat.unit.table[sa]) != a:
            bad = ("right-unit", a)
            break
    if bad:
        rep.fail("category.unit-laws", bad)
    else:
        rep.ok("category.unit-laws", cat.arr.size)

    bad = None
    count = 0
    for (g, f) in cat.composable_pairs():
        for h in range(cat.arr.size):
            if cat.src.table[h] != cat.tgt.table[g]:
                continue
            count += 1
            if cat.mul_el(h, cat.mul_el(g, f)) != cat.mul_el(cat.mul_el(h, g), f):
                bad = (h, g, f)
                break
        if bad:
            break
    if bad:
        rep.fail("category.associativity", bad)
    else:
        rep.ok("category.associativity", count)
    return rep


def validate_groupoid(cat):
    rep = validate_category(cat)
    if cat.inv is None:
        rep.fail("groupoid.inverse", "no inverse arrow given")
        return rep
    if compose(cat.src, cat.inv).table != cat.tgt.table:
        rep.fail("groupoid.inverse-source", cat.inv.table)
        return rep
    if compose(cat.tgt, cat.inv).table != cat.src.table:
        rep.fail("groupoid.inverse-target", cat.inv.table)
        return rep
    rep.ok("groupoid.inverse-endpoints", cat.arr.size)
    bad = None
    for a in range(cat.arr.size):
        b = cat.inv.table[a]
        if cat.mul_el(b, a) != cat.unit.table[cat.src.table[a]]:
            bad = ("left-inverse", a)
            break
        if cat.mul_el(a, b) != cat.unit.table[cat.tgt.table[a]]:
            bad = ("right-inverse", a)
            break
    if bad:
        rep.fail("groupoid.inverse-laws", bad)
    else:
        rep.ok("groupoid.inverse-laws", cat.arr.size)
    return rep


class InternalFunctor:
    """A functor between internal categories, as object and arrow tables."""

    def __init__(self, dom, cod, f0, f1):
        if f0.dom != dom.obj or f0.cod != cod.obj:
            raise AmbientError("f0 must map objects to objects")
        if f1.dom != dom.arr or f1.cod != cod.arr:
            raise AmbientError("f1 must map arrows to arrows")
        self.dom = dom
        self.cod = cod
        self.f0 = f0
        self.f1 = f1

    def __eq__(self, other):
        if not isinstance(other, InternalFunctor):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.f0 == other.f0 and self.f1 == other.f1)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        return f"<internal functor {self.dom!r} -> {self.cod!r}>"

    def is_identity(self):
        return self.dom == self.cod and self.f0.is_identity() and self.f1.is_identity()


def identity_functor(cat):
    return InternalFunctor(cat, cat, identity(cat.obj), identity(cat.arr))


def compose_functors(g, f):
    if f.cod != g.dom:
        raise AmbientError("functors are not composable")
    return InternalFunctor(f.dom, g.cod, compose(g.f0, f.f0), compose(g.f1, f.f1))


def validate_functor(fun):
    rep = VerificationReport("internal functor")
    amb = fun.dom.ambient
    if fun.cod.ambient != amb:
        rep.fail("functor.ambient", "domain and codomain live in different ambients")
        return rep
    try:
        amb.validate_arrow(fun.f0)
        amb.validate_arrow(fun.f1)
        rep.ok("functor.structure-arrows", 2)
    except AmbientError as err:
        rep.fail("functor.structure-arrows", err)
        return rep
    X, Y = fun.dom, fun.cod
    if compose(Y.src, fun.f1).table == compose(fun.f0, X.src).table:
        rep.ok("functor.source-square", X.arr.size)
    else:
        rep.fail("functor.source-square", compose(Y.src, fun.f1).table)
    if compose(Y.tgt, fun.f1).table == compose(fun.f0, X.tgt).table:
        rep.ok("functor.target-square", X.arr.size)
    else:
        rep.fail("functor.target-square", compose(Y.tgt, fun.f1).table)
    if compose(fun.f1, X.unit).table == compose(Y.unit, fun.f0).table:
        rep.ok("functor.units", X.obj.size)
    else:
        rep.fail("functor.units", compose(fun.f1, X.unit).table)
    if rep.failures():
        # the composition check assumes the endpoint squares commute
        return rep
    bad = None
    pairs = X.composable_pairs()
    for idx, (g, f) in enumerate(pairs):
        lhs = fun.f1.table[X.mul.table[idx]]
        rhs = Y.mul_el(fun.f1.table[g], fun.f1.table[f])
        if lhs != rhs:
            bad = (g, f)
            break
    if bad:
        rep.fail("functor.composition", bad)
    else:
        rep.ok("functor.composition", len(pairs))
    return rep


class NaturalTransformation:
    """A transformation between parallel internal functors, one component
    arrow element per object element."""

    def __init__(self, src, tgt, comp):
        if src.dom != tgt.dom or src.cod != tgt.cod:
            raise AmbientError("transformations need parallel functors")
        if comp.dom != src.dom.obj or comp.cod != src.cod.arr:
            raise AmbientError("components must map objects to arrows")
        self.src = src
        self.tgt = tgt
        self.comp = comp

    def __eq__(self, other):
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return (self.src == other.src and self.tgt == other.tgt
                and self.comp == other.comp)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        return f"<transformation {self.comp.table}>"


def identity_nat(fun):
    return NaturalTransformation(fun, fun, compose(fun.cod.unit, fun.f0))


def validate_transformation(nat):
    rep = VerificationReport("internal transformation")
    X = nat.src.dom
    Y = nat.src.cod
    amb = X.ambient
    try:
        amb.validate_arrow(nat.comp)
        rep.ok("nat.component-arrow", 1)
    except AmbientError as err:
        rep.fail("nat.component-arrow", err)
        return rep
    if compose(Y.src, nat.comp).table == nat.src.f0.table:
        rep.ok("nat.source-endpoints", X.obj.size)
    else:
        rep.fail("nat.source-endpoints", compose(Y.src, nat.comp).table)
    if compose(Y.tgt, nat.comp).table == nat.tgt.f0.table:
        rep.ok("nat.target-endpoints", X.obj.size)
    else:
        rep.fail("nat.target-endpoints", compose(Y.tgt, nat.comp).table)
    if rep.failures():
        return rep
    bad = None
    for a in range(X.arr.size):
        sx, tx = X.src.table[a], X.tgt.table[a]
        lhs = Y.mul_el(nat.comp.table[tx], nat.src.f1.table[a])
        rhs = Y.mul_el(nat.tgt.f1.table[a], nat.comp.table[sx])
        if lhs != rhs:
            bad = a
            break
    if bad is not None:
        rep.fail("nat.naturality", bad)
    else:
        rep.ok("nat.naturality", X.arr.size)
    return rep


def vcomp_nat(a, b):
    """Vertical composite b after a for transformations f => g => h."""
    if a.tgt != b.src:
        raise AmbientError("transformations are not vertically composable")
    Y = a.src.cod
    table = tuple(
        Y.mul_el(b.comp.table[x], a.comp.table[x]) for x in range(a.comp.dom.size)
    )
    return NaturalTransformation(a.src, b.tgt, Arrow(a.comp.dom, Y.arr, table))


def whisker_functor_nat(h, a):
    """Left whisker h . a for a: f => g and h out of their codomain."""
    return NaturalTransformation(
        compose_functors(h, a.src),
        compose_functors(h, a.tgt),
        compose(h.f1, a.comp),
    )


def whisker_nat_functor(a, e):
    """Right whisker a . e for a: f => g and e into their domain."""
    return NaturalTransformation(
        compose_functors(a.src, e),
        compose_functors(a.tgt, e),
        compose(a.comp, e.f0),
    )


def is_nat_iso(nat):
    Y = nat.src.cod
    isos = set(Y.iso_elements())
    return all(v in isos for v in nat.comp.table)


def invert_nat_iso(nat):
    Y = nat.src.cod
    table = tuple(Y.iso_inverse_el(v) for v in nat.comp.table)
    return NaturalTransformation(nat.tgt, nat.src, Arrow(nat.comp.dom, Y.arr, table))


def disc(ambient, obj):
    """The discrete internal groupoid on an ambient object."""
    i = identity(obj)
    return InternalCategory.build(
        ambient, obj, obj, i, i, i, mul_el=lambda g, f: g, inv_el=lambda a: a
    )


def codisc(ambient, obj):
    """The codiscrete (pair) internal groupoid on an ambient object."""
    prod = ambient.product(obj, obj)
    i = identity(obj)
    unit = ambient.mediate(prod, i, i)

    def mul_el(g, f):
        return prod.index_of(prod.proj1.table[f], prod.proj2.table[g])

    def inv_el(a):
        return prod.index_of(prod.proj2.table[a], prod.proj1.table[a])

    return InternalCategory.build(
        ambient, obj, prod.apex, prod.proj1, prod.proj2, unit, mul_el, inv_el
    )


def cech_groupoid(ambient, f):
    """The kernel-pair groupoid of an ambient arrow."""
    kp = ambient.pullback(f, f)
    unit = ambient.mediate(kp, identity(f.dom), identity(f.dom))

    def mul_el(g, ff):
        return kp.index_of(kp.proj1.table[ff], kp.proj2.table[g])

    def inv_el(a):
        return kp.index_of(kp.proj2.table[a], kp.proj1.table[a])

    return InternalCategory.build(
        ambient, f.dom, kp.apex, kp.proj1, kp.proj2, unit, mul_el, inv_el
    )


def disc_inclusion(cat):
    """The identity-on-objects functor disc(obj) -> cat."""
    return InternalFunctor(disc(cat.ambient, cat.obj), cat, identity(cat.obj), cat.unit)


def codisc_projection(cat):
    """The canonical functor cat -> codisc(obj)."""
    target = codisc(cat.ambient, cat.obj)
    prod = cat.ambient.product(cat.obj, cat.obj)
    f1 = cat.ambient.mediate(prod, cat.src, cat.tgt)
    return InternalFunctor(cat, target, identity(cat.obj), f1)


def _base_change_parts(cat, p):
    amb = cat.ambient
    prod_m = amb.product(p.dom, p.dom)
    prod_0 = amb.product(cat.obj, cat.obj)
    pp = amb.product_map(prod_m, prod_0, p, p)
    st = amb.mediate(prod_0, cat.src, cat.tgt)
    pb = amb.pullback(pp, st)
    return prod_m, pb


def base_change(cat, p):
    """Restrict an internal category along p into its object of objects.

    Arrows over (m1, m2) are the arrows p(m1) -> p(m2); the pullback
    normalisation makes base_change(cat, identity) literally cat.
    """
    if p.cod != cat.obj:
        raise AmbientError("base change needs an arrow into the object of objects")
    amb = cat.ambient
    prod_m, pb = _base_change_parts(cat, p)
    m_obj = p.dom
    src = compose(prod_m.proj1, pb.proj1)
    tgt = compose(prod_m.proj2, pb.proj1)
    diag = amb.mediate(prod_m, identity(m_obj), identity(m_obj))
    unit = amb.mediate(pb, diag, compose(cat.unit, p))

    def decode(el):
        mm = pb.proj1.table[el]
        x = pb.proj2.table[el]
        return prod_m.proj1.table[mm], prod_m.proj2.table[mm], x

    def mul_el(g_el, f_el):
        a, _, x = decode(f_el)
        _, c, y = decode(g_el)
        return pb.index_of(prod_m.index_of(a, c), cat.mul_el(y, x))

    inv_el = None
    if cat.inv is not None:
        def inv_el(el):
            a, b, x = decode(el)
            return pb.index_of(prod_m.index_of(b, a), cat.inv.table[x])

    return InternalCategory.build(amb, m_obj, pb.apex, src, tgt, unit, mul_el, inv_el)


def base_change_projection(cat, p):
    """The canonical functor base_change(cat, p) -> cat."""
    _, pb = _base_change_parts(cat, p)
    return InternalFunctor(base_change(cat, p), cat, p, pb.proj2)


def base_change_coherence(cat, p, q):
    """The identity-on-objects iso base_change(base_change(cat,p),q) ->
    base_change(cat, p after q)."""
    restricted = base_change(cat, p)
    lhs = base_change(restricted, q)
    rhs = base_change(cat, compose(p, q))
    _, pb_m = _base_change_parts(cat, p)
    prod_n, pb_mn = _base_change_parts(restricted, q)
    prod_n2, pb_n = _base_change_parts(cat, compose(p, q))
    if prod_n.apex != prod_n2.apex:
        raise AmbientError("base change coherence: product mismatch")
    table = []
    for el in range(lhs.arr.size):
        nn = pb_mn.proj1.table[el]
        xi = pb_mn.proj2.table[el]
        x = pb_m.proj2.table[xi]
        table.append(pb_n.index_of(nn, x))
    return InternalFunctor(
        lhs, rhs, identity(q.dom), Arrow(lhs.arr, rhs.arr, tuple(table))
    )


def strict_pullback(f, g):
    """The strict pullback of internal functors, with its projections."""
    if f.cod != g.cod:
        raise AmbientError("strict pullback needs a common codomain")
    amb = f.dom.ambient
    X, Y = f.dom, g.dom
    ob = amb.pullback(f.f0, g.f0)
    ar = amb.pullback(f.f1, g.f1)
    src = amb.mediate(ob, compose(X.src, ar.proj1), compose(Y.src, ar.proj2))
    tgt = amb.mediate(ob, compose(X.tgt, ar.proj1), compose(Y.tgt, ar.proj2))
    unit = amb.mediate(ar, compose(X.unit, ob.proj1), compose(Y.unit, ob.proj2))

    def mul_el(g_el, f_el):
        xg, yg = ar.proj1.table[g_el], ar.proj2.table[g_el]
        xf, yf = ar.proj1.table[f_el], ar.proj2.table[f_el]
        return ar.index_of(X.mul_el(xg, xf), Y.mul_el(yg, yf))

    inv_el = None
    if X.inv is not None and Y.inv is not None:
        def inv_el(el):
            return ar.index_of(
                X.inv.table[ar.proj1.table[el]], Y.inv.table[ar.proj2.table[el]]
            )

    cat = InternalCategory.build(
        amb, ob.apex, ar.apex, src, tgt, unit, mul_el, inv_el
    )
    pr1 = InternalFunctor(cat, X, ob.proj1, ar.proj1)
    pr2 = InternalFunctor(cat, Y, ob.proj2, ar.proj2)
    return cat, pr1, pr2


def iso_arrows(cat):
    """The subobject of invertible arrow elements with its inclusion."""
    return cat.ambient.subobject(cat.arr, cat.iso_elements())


def ff_comparison(fun):
    """The comparison of the arrow object with the pullback of endpoints."""
    amb = fun.dom.ambient
    X, Y = fun.dom, fun.cod
    prod_x = amb.product(X.obj, X.obj)
    prod_y = amb.product(Y.obj, Y.obj)
    f00 = amb.product_map(prod_x, prod_y, fun.f0, fun.f0)
    st_y = amb.mediate(prod_y, Y.src, Y.tgt)
    q = amb.pullback(f00, st_y)
    st_x = amb.mediate(prod_x, X.src, X.tgt)
    c = amb.mediate(q, st_x, fun.f1)
    return prod_x, q, c


def is_fully_faithful(fun):
    _, _, c = ff_comparison(fun)
    return fun.dom.ambient.is_iso(c)


def ff_preimage(fun):
    """For a fully faithful functor, the elementwise inverse
    (x_src, x_tgt, y_arrow) -> x_arrow."""
    prod_x, q, c = ff_comparison(fun)
    if not fun.dom.ambient.is_iso(c):
        raise AmbientError("functor is not fully faithful")
    back = {v: i for i, v in enumerate(c.table)}

    def pre(x_src, x_tgt, y_el):
        return back[q.index_of(prod_x.index_of(x_src, x_tgt), y_el)]

    return pre


def essential_image_cover(fun):
    """The object of pairs (x, iso: f0(x) -> y) with its evaluation arrow."""
    amb = fun.dom.ambient
    Y = fun.cod
    _, incl = iso_arrows(Y)
    s_iso = compose(Y.src, incl)
    u = amb.pullback(fun.f0, s_iso)
    star = compose(Y.tgt, compose(incl, u.proj2))
    return u, incl, star


def is_essentially_surjective(fun, j):
    _, _, star = essential_image_cover(fun)
    return j.contains(star)


class LocalSplitting:
    """A cover of the codomain with a section-up-to-iso of the functor."""

    def __init__(self, cover, lift, functor, iso):
        self.cover = cover
        self.lift = lift
        self.functor = functor
        self.iso = iso


def splitting_from_lift(fun, cover, lift):
    """Build the local splitting determined by a lift through the
    essential-image evaluation arrow."""
    amb = fun.dom.ambient
    X, Y = fun.dom, fun.cod
    u, incl, star = essential_image_cover(fun)
    if compose(star, lift).table != cover.table:
        raise AmbientError("lift does not factor the cover")
    s0 = compose(u.proj1, lift)
    iota = compose(incl, compose(u.proj2, lift))
    restricted = base_change(Y, cover)
    prod_v, pb_v = _base_change_parts(Y, cover)
    pre = ff_preimage(fun)
    table = []
    for el in range(restricted.arr.size):
        vv = pb_v.proj1.table[el]
        y = pb_v.proj2.table[el]
        v1 = prod_v.proj1.table[vv]
        v2 = prod_v.proj2.table[vv]
        w = Y.mul_el(
            Y.iso_inverse_el(iota.table[v2]), Y.mul_el(y, iota.table[v1])
        )
        table.append(pre(s0.table[v1], s0.table[v2], w))
    functor = InternalFunctor(
        restricted, X, s0, Arrow(restricted.arr, X.arr, tuple(table))
    )
    projection = InternalFunctor(restricted, Y, cover, pb_v.proj2)
    iso = NaturalTransformation(
        compose_functors(fun, functor),
        projection,
        Arrow(cover.dom, Y.arr, iota.table),
    )
    return LocalSplitting(cover, lift, functor, iso)


def find_local_splitting(fun, j, bound):
    """Search for a local splitting along generator covers within a bound."""
    if j.kind != "singleton":
        raise AmbientError("local splittings need a singleton pretopology")
    amb = fun.dom.ambient
    u, _, star = essential_image_cover(fun)
    if j.contains(star):
        return splitting_from_lift(fun, star, identity(u.apex))
    for cover in j.generators(fun.cod.obj, bound):
        lift = amb.lift(star, cover)
        if lift is not None:
            return splitting_from_lift(fun, cover, lift)
    return None


def is_essential_equivalence(fun, j):
    """Fully faithful and essentially surjective for the pretopology."""
    return is_fully_faithful(fun) and is_essentially_surjective(fun, j)


def is_weak_equivalence(fun, j, bound):
    """Fully faithful and locally split along some cover within the bound."""
    return is_fully_faithful(fun) and find_local_splitting(fun, j, bound) is not None


def functors_between(x, y, cap=None):
    """All internal functors x -> y, by backtracking over arrow tables."""
    amb = x.ambient
    out = []
    unit_of = {}
    for x0 in range(x.obj.size):
        unit_of[x.unit.table[x0]] = x0
    triples = []
    for idx, (g, f) in enumerate(x.composable_pairs()):
        triples.append((g, f, x.mul.table[idx]))
    by_max = {}
    for t in triples:
        by_max.setdefault(max(t), []).append(t)

    for f0 in amb.arrows(x.obj, y.obj):
        cands = []
        feasible = True
        for a in range(x.arr.size):
            if a in unit_of:
                opts = [y.unit.table[f0.table[unit_of[a]]]]
            else:
                sa = f0.table[x.src.table[a]]
                ta = f0.table[x.tgt.table[a]]
                opts = [b for b in range(y.arr.size)
                        if y.src.table[b] == sa and y.tgt.table[b] == ta]
            if not opts:
                feasible = False
                break
            cands.append(opts)
        if not feasible:
            continue

        assign = [None] * x.arr.size

        def consistent(i):
            for (g, f, m) in by_max.get(i, ()):
                if y.mul_el(assign[g], assign[f]) != assign[m]:
                    return False
            return True

        def dfs(i):
            if cap is not None and len(out) >= cap:
                return
            if i == x.arr.size:
                out.append(InternalFunctor(
                    x, y, f0, Arrow(x.arr, y.arr, tuple(assign))
                ))
                return
            for b in cands[i]:
                assign[i] = b
                if consistent(i):
                    dfs(i + 1)
                assign[i] = None

        dfs(0)
        if cap is not None and len(out) >= cap:
            break
    return out


def transformations_between(f, g, cap=None):
    """All transformations f => g, by backtracking over component tables."""
    if f.dom != g.dom or f.cod != g.cod:
        raise AmbientError("transformations need parallel functors")
    x, y = f.dom, f.cod
    cands = []
    for x0 in range(x.obj.size):
        opts = [b for b in range(y.arr.size)
                if y.src.table[b] == f.f0.table[x0]
                and y.tgt.table[b] == g.f0.table[x0]]
        if not opts:
            return []
        cands.append(opts)
    arrows_by_max = {}
    for a in range(x.arr.size):
        endpoint = max(x.src.table[a], x.tgt.table[a])
        arrows_by_max.setdefault(endpoint, []).append(a)

    out = []
    assign = [None] * x.obj.size

    def consistent(i):
        for a in arrows_by_max.get(i, ()):
            sx, tx = x.src.table[a], x.tgt.table[a]
            lhs = y.mul_el(assign[tx], f.f1.table[a])
            rhs = y.mul_el(g.f1.table[a], assign[sx])
            if lhs != rhs:
                return False
        return True

    def dfs(i):
        if cap is not None and len(out) >= cap:
            return
        if i == x.obj.size:
            out.append(NaturalTransformation(
                f, g, Arrow(x.obj, y.arr, tuple(assign))
            ))
            return
        for b in cands[i]:
            assign[i] = b
            if consistent(i):
                dfs(i + 1)
            assign[i] = None

    dfs(0)
    return out
