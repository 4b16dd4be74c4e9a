"""Anafunctors: composition by descent, 2-arrows, coherence cells."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from anacat.ambient import FINSET, AmbientError, Arrow, FinSetObj, compose, identity
from anacat.ana import (
    AnaTransformation,
    Anafunctor,
    ana_transformations_between,
    associator,
    compose_ana,
    from_functor,
    from_transformation,
    hcomp_trans,
    identity_ana,
    identity_transformation,
    invert_ana_transformation,
    is_iso_ana_transformation,
    is_isomorphic_to_functor,
    pseudoinverse,
    refinement_functor,
    rename_cover,
    renaming_transformation,
    validate_ana_transformation,
    validate_anafunctor,
    vcomp_trans,
    whisker_left,
    whisker_right,
)
from anacat.internal import (
    InternalFunctor,
    base_change,
    cech_groupoid,
    codisc,
    disc,
    identity_functor,
    is_weak_equivalence,
    validate_functor,
)
from anacat.sites import surjective_pretopology, trivial_pretopology

fs = FinSetObj
SURJ = surjective_pretopology(FINSET)


def point_into_codisc2():
    one = disc(FINSET, fs(1))
    c2 = codisc(FINSET, fs(2))
    fun = InternalFunctor(one, c2, Arrow(fs(1), fs(2), (0,)), Arrow(fs(1), fs(4), (0,)))
    return one, c2, fun


def cech_splitting():
    # the fold (0, 0, 1) and the splitting of its cech functor
    f = Arrow(fs(3), fs(2), (0, 0, 1))
    g = cech_groupoid(FINSET, f)
    d2 = disc(FINSET, fs(2))
    fun = InternalFunctor(g, d2, f, compose(f, g.src))
    inv, unit, counit = pseudoinverse(fun, SURJ, 4)
    return g, d2, fun, inv, unit, counit


class TestUnitLaws:
    def test_identity_ana_is_strict_left_unit(self):
        one, c2, fun = point_into_codisc2()
        fa = from_functor(fun)
        assert compose_ana(identity_ana(c2), fa) == fa

    def test_identity_ana_is_strict_right_unit(self):
        one, c2, fun = point_into_codisc2()
        fa = from_functor(fun)
        assert compose_ana(fa, identity_ana(one)) == fa

    def test_units_strict_on_nonidentity_cover(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        assert compose_ana(identity_ana(g), inv) == inv
        assert compose_ana(inv, identity_ana(d2)) == inv


class TestPseudoinverse:
    def test_splitting_validates(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        assert validate_anafunctor(inv).passed()
        assert validate_ana_transformation(unit).passed()
        assert validate_ana_transformation(counit).passed()

    def test_unit_and_counit_are_isos(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        assert is_iso_ana_transformation(unit)
        assert is_iso_ana_transformation(counit)

    def test_cover_is_the_fold(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        assert inv.cover.table == (0, 0, 1)

    def test_endpoints(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        assert unit.src == identity_ana(g)
        assert unit.tgt == compose_ana(inv, from_functor(fun))
        assert counit.src == compose_ana(from_functor(fun), inv)
        assert counit.tgt == identity_ana(d2)


class TestSpanDecomposition:
    def test_anafunctor_splits_as_functor_after_cover_span(self):
        # the cover leg as a span with identity functor part
        g, d2, fun, inv, unit, counit = cech_splitting()
        span = Anafunctor(d2, inv.functor.dom, inv.cover,
                          identity_functor(inv.functor.dom))
        assert compose_ana(from_functor(inv.functor), span) == inv

    def test_span_decomposition_for_embedded_functor(self):
        one, c2, fun = point_into_codisc2()
        fa = from_functor(fun)
        span = Anafunctor(one, fa.functor.dom, fa.cover,
                          identity_functor(fa.functor.dom))
        assert compose_ana(from_functor(fa.functor), span) == fa


class TestVerticalComposition:
    def test_identity_transformation_is_strict_unit(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        idt = identity_transformation(inv)
        assert validate_ana_transformation(idt).passed()
        assert vcomp_trans(idt, idt) == idt

    def test_vcomp_agrees_with_descent_oracle(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        rho = renaming_transformation(inv, Arrow(fs(4), fs(3), (0, 1, 1, 2)))
        got = vcomp_trans(rho, invert_ana_transformation(rho))
        solutions = brute_force_vcomp(rho, invert_ana_transformation(rho))
        assert solutions == [got.comp.table]

    def test_vcomp_of_inverse_pair_is_identity(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        rho = renaming_transformation(inv, Arrow(fs(4), fs(3), (0, 1, 1, 2)))
        assert vcomp_trans(rho, invert_ana_transformation(rho)) == \
            identity_transformation(rho.src)


def brute_force_vcomp(a, b):
    """All tables on the outer cover pullback satisfying the descent equation.

    A candidate c must satisfy c(u, w) = b(v, w) . a(u, v) for every triple
    compatible over the base; the middle cover reaches every base point, so
    there is exactly one solution when a and b glue.
    """
    y = a.src.tgt
    amb = a.src.src.ambient
    u_cov, v_cov, w_cov = a.src.cover, a.tgt.cover, b.tgt.cover
    uw = amb.pullback(u_cov, w_cov)
    uv = amb.pullback(u_cov, v_cov)
    vw = amb.pullback(v_cov, w_cov)
    cells = []
    for el in range(uw.apex.size):
        u, w = uw.proj1.table[el], uw.proj2.table[el]
        need = []
        for v in range(v_cov.dom.size):
            if v_cov.table[v] == u_cov.table[u]:
                pair = y.comp.index_of(b.comp.table[vw.index_of(v, w)],
                                       a.comp.table[uv.index_of(u, v)])
                need.append(y.mul.table[pair])
        cells.append(need)
    out = []
    for table in itertools.product(range(y.arr.size), repeat=uw.apex.size):
        if all(all(table[i] == r for r in need)
               for i, need in enumerate(cells)):
            out.append(table)
    return out


class TestInversion:
    def test_inverse_lives_on_transposed_pullback(self):
        # regression: the inverse must be reindexed over pullback(tgt, src)
        g, d2, fun, inv, unit, counit = cech_splitting()
        rho = renaming_transformation(inv, Arrow(fs(4), fs(3), (0, 1, 1, 2)))
        back = invert_ana_transformation(rho)
        y = rho.src.tgt
        vu = FINSET.pullback(rho.tgt.cover, rho.src.cover)
        uv = FINSET.pullback(rho.src.cover, rho.tgt.cover)
        assert back.comp.dom == vu.apex
        for el in range(vu.apex.size):
            v, u = vu.proj1.table[el], vu.proj2.table[el]
            mirror = rho.comp.table[uv.index_of(u, v)]
            assert back.comp.table[el] == y.iso_inverse_el(mirror)

    def test_double_inversion_is_identity(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        rho = renaming_transformation(inv, Arrow(fs(4), fs(3), (0, 1, 1, 2)))
        assert invert_ana_transformation(invert_ana_transformation(rho)) == rho


class TestRenaming:
    def test_rename_cover_validates(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        k = Arrow(fs(4), inv.cover.dom, (0, 0, 1, 2))
        renamed = rename_cover(inv, k)
        assert validate_anafunctor(renamed).passed()
        assert renamed.cover == compose(inv.cover, k)

    def test_renaming_transformation_is_iso(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        k = Arrow(fs(4), inv.cover.dom, (0, 0, 1, 2))
        rho = renaming_transformation(inv, k)
        assert rho.src == rename_cover(inv, k)
        assert rho.tgt == inv
        assert validate_ana_transformation(rho).passed()
        assert is_iso_ana_transformation(rho)

    def test_refinement_functor_commutes_with_projections(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        k = Arrow(fs(4), inv.cover.dom, (0, 0, 1, 2))
        r = refinement_functor(d2, inv.cover, k)
        assert validate_functor(r).passed()
        assert r.f0 == k


class TestCoherenceCells:
    def test_associator_validates_and_is_iso(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        fa = from_functor(fun)
        al = associator(inv, fa, inv)
        assert validate_ana_transformation(al).passed()
        assert is_iso_ana_transformation(al)
        assert al.src == compose_ana(inv, compose_ana(fa, inv))
        assert al.tgt == compose_ana(compose_ana(inv, fa), inv)

    def test_hcomp_validates(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        fa = from_functor(fun)
        h = hcomp_trans(identity_transformation(inv),
                        identity_transformation(fa))
        assert validate_ana_transformation(h).passed()
        assert h.src == compose_ana(fa, inv)

    def test_whiskers_decompose_hcomp(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        fa = from_functor(fun)
        a = identity_transformation(inv)
        b = identity_transformation(fa)
        wl = whisker_left(b.src, a)
        wr = whisker_right(b, a.tgt)
        assert hcomp_trans(a, b) == vcomp_trans(wl, wr)

    def test_whiskers_validate(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        fa = from_functor(fun)
        assert validate_ana_transformation(
            whisker_left(fa, identity_transformation(inv))).passed()
        assert validate_ana_transformation(
            whisker_right(identity_transformation(fa), inv)).passed()


class TestStraightening:
    def test_embedded_functor_straightens_to_itself(self):
        one, c2, fun = point_into_codisc2()
        res = is_isomorphic_to_functor(from_functor(fun))
        assert res is not None
        assert res[0] == fun

    def test_split_cover_straightens_with_iso_witness(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        res = is_isomorphic_to_functor(inv)
        assert res is not None
        plain, iso = res
        assert iso.src == from_functor(plain)
        assert iso.tgt == inv
        assert validate_ana_transformation(iso).passed()
        assert is_iso_ana_transformation(iso)

    def test_unsectioned_cover_does_not_straighten(self):
        # a genuine descent obstruction: the quotient Z4 -> Z2 has no
        # group-homomorphism section
        from anacat.instances import FINGRP, Z2, Z4, epi_pretopology_grp
        q = [h for h in FINGRP.arrows(Z4, Z2) if set(h.table) == {0, 1}][0]
        g = cech_groupoid(FINGRP, q)
        d = disc(FINGRP, Z2)
        fun = InternalFunctor(g, d, q, compose(q, g.src))
        inv, unit, counit = pseudoinverse(fun, epi_pretopology_grp(), 4)
        assert is_isomorphic_to_functor(inv) is None

    def test_from_transformation_keeps_component(self):
        one, c2, fun = point_into_codisc2()
        from anacat.internal import identity_nat
        t = from_transformation(identity_nat(fun))
        assert t.src == from_functor(fun)
        assert t.comp == identity_nat(fun).comp
        assert validate_ana_transformation(t).passed()


class TestSearch:
    def test_identity_found_among_endotransformations(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        ts = ana_transformations_between(inv, inv)
        assert identity_transformation(inv) in ts
        for t in ts:
            assert validate_ana_transformation(t).passed()

    def test_no_transformation_between_distinct_points(self):
        one = disc(FINSET, fs(1))
        two = disc(FINSET, fs(2))
        p0 = from_functor(InternalFunctor(
            one, two, Arrow(fs(1), fs(2), (0,)), Arrow(fs(1), fs(2), (0,))))
        p1 = from_functor(InternalFunctor(
            one, two, Arrow(fs(1), fs(2), (1,)), Arrow(fs(1), fs(2), (1,))))
        assert ana_transformations_between(p0, p1) == []


class TestShapeErrors:
    def test_anafunctor_rejects_wrong_cover_codomain(self):
        one, c2, fun = point_into_codisc2()
        with pytest.raises(AmbientError):
            Anafunctor(c2, one, Arrow(fs(1), fs(1), (0,)),
                       identity_functor(one))

    def test_transformation_rejects_wrong_component_shape(self):
        g, d2, fun, inv, unit, counit = cech_splitting()
        bad = Arrow(fs(1), d2.arr, (0,))
        with pytest.raises(AmbientError):
            AnaTransformation(inv, inv, bad)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=4),
       st.data())
def test_renaming_roundtrip_property(table, data):
    # rename a splitting along a random refinement; the renaming 2-arrow
    # composed with its inverse is the identity
    cod_size = max(table) + 1
    f = Arrow(fs(len(table)), fs(cod_size), tuple(table))
    if set(f.table) != set(range(cod_size)):
        return
    g = cech_groupoid(FINSET, f)
    d = disc(FINSET, fs(cod_size))
    fun = InternalFunctor(g, d, f, compose(f, g.src))
    inv, unit, counit = pseudoinverse(fun, SURJ, 5)
    n = inv.cover.dom.size
    k_table = tuple(data.draw(st.integers(min_value=0, max_value=n - 1))
                    for _ in range(n + 1))
    if set(k_table) != set(range(n)):
        return
    k = Arrow(fs(n + 1), inv.cover.dom, k_table)
    rho = renaming_transformation(inv, k)
    assert vcomp_trans(rho, invert_ana_transformation(rho)) == \
        identity_transformation(rho.src)
    assert vcomp_trans(invert_ana_transformation(rho), rho) == \
        identity_transformation(rho.tgt)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.data())
def test_unit_laws_property(n, data):
    # embedded functors into a codiscrete target absorb identity anas
    c = codisc(FINSET, fs(2))
    d = disc(FINSET, fs(n))
    f0 = Arrow(fs(n), fs(2),
               tuple(data.draw(st.integers(min_value=0, max_value=1))
                     for _ in range(n)))
    prod = FINSET.product(fs(2), fs(2))
    f1 = Arrow(d.arr, c.arr,
               tuple(prod.index_of(f0.table[a], f0.table[a]) for a in range(n)))
    fa = from_functor(InternalFunctor(d, c, f0, f1))
    assert compose_ana(identity_ana(c), fa) == fa
    assert compose_ana(fa, identity_ana(d)) == fa
