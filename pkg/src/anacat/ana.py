"""Anafunctors: spans (cover, functor on the restricted category) with a
descent-based transformation calculus.

An anafunctor X -/-> Y is a cover u: U -> X0 together with an internal
functor base_change(X, u) -> Y.  Composition pulls the middle cover back;
identity covers collapse strictly through the pullback normalisation, so
plain functors embed strictly and unit laws hold on the nose.
"""

from .ambient import AmbientError, Arrow, compose, identity
from .internal import (
    InternalFunctor,
    NaturalTransformation,
    _base_change_parts,
    base_change,
    compose_functors,
    ff_preimage,
    find_local_splitting,
    identity_functor,
    transformations_between,
    validate_functor,
    validate_transformation,
)


class Anafunctor:
    """A cover of the source object of objects and a functor off it."""

    def __init__(self, src, tgt, cover, functor):
        if cover.cod != src.obj:
            raise AmbientError("cover must land in the source objects")
        if functor.cod != tgt:
            raise AmbientError("functor must land in the target category")
        if functor.dom != base_change(src, cover):
            raise AmbientError("functor must start on the restricted category")
        self.src = src
        self.tgt = tgt
        self.cover = cover
        self.functor = functor

    def __eq__(self, other):
        if not isinstance(other, Anafunctor):
            return NotImplemented
        return (self.src == other.src and self.tgt == other.tgt
                and self.cover == other.cover and self.functor == other.functor)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        return (f"<anafunctor over cover {self.cover.dom.size}"
                f" -> {self.cover.cod.size}>")


def from_functor(fun):
    """A plain functor as an anafunctor over the identity cover."""
    u = identity(fun.dom.obj)
    restricted = base_change(fun.dom, u)
    lifted = InternalFunctor(restricted, fun.cod, fun.f0, fun.f1)
    return Anafunctor(fun.dom, fun.cod, u, lifted)


def identity_ana(cat):
    return from_functor(identity_functor(cat))


def from_transformation(nat):
    """A natural transformation as a 2-arrow between embedded functors."""
    return AnaTransformation(
        from_functor(nat.src), from_functor(nat.tgt), nat.comp
    )


def validate_anafunctor(ana, j=None):
    """Check the span shape; with a pretopology, also cover membership."""
    rep = validate_functor(ana.functor)
    if j is not None:
        if j.contains(ana.cover):
            rep.ok("ana.cover-membership", 1)
        else:
            rep.fail("ana.cover-membership", ana.cover.table)
    return rep


def refinement_functor(cat, u, k):
    """The functor base_change(cat, u . k) -> base_change(cat, u)."""
    v = compose(u, k)
    dom = base_change(cat, v)
    cod = base_change(cat, u)
    prod_v, pb_v = _base_change_parts(cat, v)
    prod_u, pb_u = _base_change_parts(cat, u)
    table = []
    for el in range(dom.arr.size):
        nn = pb_v.proj1.table[el]
        x = pb_v.proj2.table[el]
        v1 = prod_v.proj1.table[nn]
        v2 = prod_v.proj2.table[nn]
        table.append(
            pb_u.index_of(prod_u.index_of(k.table[v1], k.table[v2]), x)
        )
    return InternalFunctor(dom, cod, k, Arrow(dom.arr, cod.arr, tuple(table)))


def rename_cover(ana, k):
    """Precompose the cover of an anafunctor with a refinement arrow."""
    return Anafunctor(
        ana.src,
        ana.tgt,
        compose(ana.cover, k),
        compose_functors(ana.functor, refinement_functor(ana.src, ana.cover, k)),
    )


def compose_ana(g, f):
    """The composite anafunctor g after f, over the pulled-back cover."""
    if f.tgt != g.src:
        raise AmbientError("anafunctors are not composable")
    X, Y, Z = f.src, f.tgt, g.tgt
    amb = X.ambient
    w = amb.pullback(f.functor.f0, g.cover)
    cover = compose(f.cover, w.proj1)
    dom_cat = base_change(X, cover)
    mid_cat = base_change(Y, g.cover)
    prod_w, pb_w = _base_change_parts(X, cover)
    prod_u, pb_u = _base_change_parts(X, f.cover)
    prod_v, pb_v = _base_change_parts(Y, g.cover)
    table = []
    for el in range(dom_cat.arr.size):
        nn = pb_w.proj1.table[el]
        x = pb_w.proj2.table[el]
        w1 = prod_w.proj1.table[nn]
        w2 = prod_w.proj2.table[nn]
        u1, v1 = w.proj1.table[w1], w.proj2.table[w1]
        u2, v2 = w.proj1.table[w2], w.proj2.table[w2]
        eta = f.functor.f1.table[
            pb_u.index_of(prod_u.index_of(u1, u2), x)
        ]
        table.append(pb_v.index_of(prod_v.index_of(v1, v2), eta))
    pulled = InternalFunctor(
        dom_cat, mid_cat, w.proj2, Arrow(dom_cat.arr, mid_cat.arr, tuple(table))
    )
    return Anafunctor(X, Z, cover, compose_functors(g.functor, pulled))


class AnaTransformation:
    """A transformation between parallel anafunctors; components live on
    the pullback of the two covers."""

    def __init__(self, src, tgt, comp):
        if src.src != tgt.src or src.tgt != tgt.tgt:
            raise AmbientError("transformations need parallel anafunctors")
        amb = src.src.ambient
        uv = amb.pullback(src.cover, tgt.cover)
        if comp.dom != uv.apex or comp.cod != src.tgt.arr:
            raise AmbientError("components must live on the cover pullback")
        self.src = src
        self.tgt = tgt
        self.comp = comp

    def __eq__(self, other):
        if not isinstance(other, AnaTransformation):
            return NotImplemented
        return (self.src == other.src and self.tgt == other.tgt
                and self.comp == other.comp)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        return f"<ana transformation {self.comp.table}>"


def _restricted_parallel_pair(s_ana, t_ana):
    """The two functors off the common refinement X[U x_X0 V]."""
    X = s_ana.src
    amb = X.ambient
    uv = amb.pullback(s_ana.cover, t_ana.cover)
    fr = compose_functors(
        s_ana.functor, refinement_functor(X, s_ana.cover, uv.proj1)
    )
    gr = compose_functors(
        t_ana.functor, refinement_functor(X, t_ana.cover, uv.proj2)
    )
    if fr.dom != gr.dom:
        raise AmbientError("refined domains disagree")
    return uv, fr, gr


def as_restricted_nat(t):
    """View an ana transformation as an internal one on the refinement."""
    uv, fr, gr = _restricted_parallel_pair(t.src, t.tgt)
    return NaturalTransformation(fr, gr, t.comp)


def validate_ana_transformation(t):
    return validate_transformation(as_restricted_nat(t))


def ana_transformations_between(f_ana, g_ana, cap=None):
    """All transformations between two parallel anafunctors."""
    uv, fr, gr = _restricted_parallel_pair(f_ana, g_ana)
    out = []
    for nat in transformations_between(fr, gr, cap=cap):
        out.append(AnaTransformation(f_ana, g_ana, nat.comp))
    return out


def is_iso_ana_transformation(t):
    isos = set(t.src.tgt.iso_elements())
    return all(v in isos for v in t.comp.table)


def invert_ana_transformation(t):
    # the inverse lives on the transposed cover pullback, so reindex
    y = t.src.tgt
    amb = t.src.src.ambient
    uv = amb.pullback(t.src.cover, t.tgt.cover)
    vu = amb.pullback(t.tgt.cover, t.src.cover)
    table = []
    for el in range(vu.apex.size):
        v1 = vu.proj1.table[el]
        u1 = vu.proj2.table[el]
        table.append(y.iso_inverse_el(t.comp.table[uv.index_of(u1, v1)]))
    return AnaTransformation(t.tgt, t.src, Arrow(vu.apex, y.arr, tuple(table)))


def identity_transformation(ana):
    """The identity transformation of an anafunctor."""
    X, Y = ana.src, ana.tgt
    amb = X.ambient
    u = ana.cover
    uu = amb.pullback(u, u)
    prod_u, pb_u = _base_change_parts(X, u)
    table = []
    for el in range(uu.apex.size):
        u1 = uu.proj1.table[el]
        u2 = uu.proj2.table[el]
        unit_arrow = X.unit.table[u.table[u1]]
        table.append(
            ana.functor.f1.table[
                pb_u.index_of(prod_u.index_of(u1, u2), unit_arrow)
            ]
        )
    return AnaTransformation(ana, ana, Arrow(uu.apex, Y.arr, tuple(table)))


def renaming_transformation(ana, k):
    """The canonical iso rename_cover(ana, k) => ana."""
    X, Y = ana.src, ana.tgt
    amb = X.ambient
    renamed = rename_cover(ana, k)
    u = ana.cover
    vu = amb.pullback(renamed.cover, u)
    prod_u, pb_u = _base_change_parts(X, u)
    table = []
    for el in range(vu.apex.size):
        v1 = vu.proj1.table[el]
        u1 = vu.proj2.table[el]
        unit_arrow = X.unit.table[u.table[u1]]
        table.append(
            ana.functor.f1.table[
                pb_u.index_of(prod_u.index_of(k.table[v1], u1), unit_arrow)
            ]
        )
    return AnaTransformation(renamed, ana, Arrow(vu.apex, Y.arr, tuple(table)))


def is_isomorphic_to_functor(ana):
    """A plain functor isomorphic to the anafunctor, or None.

    Succeeds exactly when the cover splits: a section renames the cover to
    the literal identity and the renaming 2-arrow is the witness iso."""
    section = ana.src.ambient.lift(ana.cover, identity(ana.src.obj))
    if section is None:
        return None
    renamed = rename_cover(ana, section)
    return renamed.functor, renaming_transformation(ana, section)


def vcomp_trans(a, b):
    """Vertical composite of a: F => G and b: G => H by descent."""
    if a.tgt != b.src:
        raise AmbientError("transformations are not vertically composable")
    F, H = a.src, b.tgt
    X, Y = F.src, F.tgt
    amb = X.ambient
    u, v, w = F.cover, a.tgt.cover, H.cover
    uv = amb.pullback(u, v)
    vw = amb.pullback(v, w)
    uw = amb.pullback(u, w)
    uv_cover = compose(u, uv.proj1)
    uvw = amb.pullback(uv_cover, w)
    values = []
    q_table = []
    for el in range(uvw.apex.size):
        z = uvw.proj1.table[el]
        w1 = uvw.proj2.table[el]
        u1 = uv.proj1.table[z]
        v1 = uv.proj2.table[z]
        values.append(Y.mul_el(
            b.comp.table[vw.index_of(v1, w1)],
            a.comp.table[uv.index_of(u1, v1)],
        ))
        q_table.append(uw.index_of(u1, w1))
    q = Arrow(uvw.apex, uw.apex, tuple(q_table))
    descended = amb.descend(q, Arrow(uvw.apex, Y.arr, tuple(values)))
    return AnaTransformation(F, H, descended)


def hcomp_trans(a, b):
    """Horizontal composite of a: F => F2 (X -/-> Y) and b: G => G2
    (Y -/-> Z), from G.F to G2.F2, by descent along the middle cover."""
    F, F2 = a.src, a.tgt
    G, G2 = b.src, b.tgt
    if F.tgt != G.src:
        raise AmbientError("transformations are not horizontally composable")
    X, Y, Z = F.src, F.tgt, G.tgt
    amb = X.ambient
    gf = compose_ana(G, F)
    g2f2 = compose_ana(G2, F2)
    w1 = amb.pullback(F.functor.f0, G.cover)
    w2 = amb.pullback(F2.functor.f0, G2.cover)
    q = amb.pullback(gf.cover, g2f2.cover)
    uu2 = amb.pullback(F.cover, F2.cover)
    vv2 = amb.pullback(G.cover, G2.cover)
    prod_v, pb_v = _base_change_parts(Y, G.cover)
    q2 = compose(G2.cover, compose(w2.proj2, q.proj2))
    r = amb.pullback(q2, G.cover)
    values = []
    for el in range(r.apex.size):
        qi = r.proj1.table[el]
        vs = r.proj2.table[el]
        wa = q.proj1.table[qi]
        wb = q.proj2.table[qi]
        ua, va = w1.proj1.table[wa], w1.proj2.table[wa]
        ub, vb = w2.proj1.table[wb], w2.proj2.table[wb]
        ya = a.comp.table[uu2.index_of(ua, ub)]
        mid = G.functor.f1.table[
            pb_v.index_of(prod_v.index_of(va, vs), ya)
        ]
        values.append(Z.mul_el(b.comp.table[vv2.index_of(vs, vb)], mid))
    chi = Arrow(r.apex, Z.arr, tuple(values))
    descended = amb.descend(r.proj1, chi)
    return AnaTransformation(gf, g2f2, descended)


def whisker_left(g_ana, a):
    """g . a for a transformation a between anafunctors into the domain of
    the anafunctor g."""
    return hcomp_trans(a, identity_transformation(g_ana))


def whisker_right(b, f_ana):
    """b . f for a transformation b between anafunctors out of the codomain
    of the anafunctor f."""
    return hcomp_trans(identity_transformation(f_ana), b)


def associator(h, g, f):
    """The canonical iso h.(g.f) => (h.g).f, a cover renaming."""
    amb = f.src.ambient
    left = compose_ana(compose_ana(h, g), f)
    right = compose_ana(h, compose_ana(g, f))
    # right cover apex: pairs ((a, b), c); left cover apex: pairs (a, (b, c))
    w_gf = amb.pullback(f.functor.f0, g.cover)
    gf = compose_ana(g, f)
    w_right = amb.pullback(gf.functor.f0, h.cover)
    w_hg = amb.pullback(g.functor.f0, h.cover)
    w_left = amb.pullback(f.functor.f0, compose(g.cover, w_hg.proj1))
    table = []
    for el in range(w_right.apex.size):
        ab = w_right.proj1.table[el]
        c = w_right.proj2.table[el]
        a_el = w_gf.proj1.table[ab]
        b_el = w_gf.proj2.table[ab]
        table.append(w_left.index_of(a_el, w_hg.index_of(b_el, c)))
    kappa = Arrow(w_right.apex, w_left.apex, tuple(table))
    renamed = rename_cover(left, kappa)
    if renamed != right:
        raise AmbientError("associator renaming failed to match")
    return renaming_transformation(left, kappa)


def pseudoinverse(fun, j, bound):
    """A quasi-inverse anafunctor for a weak equivalence, with unit and
    counit transformations."""
    ls = find_local_splitting(fun, j, bound)
    if ls is None:
        raise AmbientError("functor admits no local splitting within bound")
    X, Y = fun.dom, fun.cod
    amb = X.ambient
    inverse = Anafunctor(Y, X, ls.cover, ls.functor)
    fana = from_functor(fun)

    # counit: (functor as anafunctor) . inverse => identity of Y
    round_trip = compose_ana(fana, inverse)
    counit = AnaTransformation(round_trip, identity_ana(Y), ls.iso.comp)

    # unit: identity of X => inverse . (functor as anafunctor)
    other = compose_ana(inverse, fana)
    w = amb.pullback(fun.f0, ls.cover)
    pre = ff_preimage(fun)
    table = []
    for el in range(w.apex.size):
        x0 = w.proj1.table[el]
        v0 = w.proj2.table[el]
        back = Y.iso_inverse_el(ls.iso.comp.table[v0])
        table.append(pre(x0, ls.functor.f0.table[v0], back))
    unit = AnaTransformation(
        identity_ana(X), other, Arrow(w.apex, X.arr, tuple(table))
    )
    return inverse, unit, counit
