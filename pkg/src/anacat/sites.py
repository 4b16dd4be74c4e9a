"""Grothendieck pretopologies on finite ambients.

A pretopology is a decidable cover-membership predicate together with a
finite, deterministic list of generator covers per object; every bounded
search quantifies over the generators and reports the bound it used.
"""

from .ambient import Arrow, compose, identity
from .report import VerificationReport

DEFAULT_BOUND = 4


class Pretopology:
    """A singleton or family pretopology on one ambient."""

    def __init__(self, name, ambient, kind, contains, generators):
        if kind not in ("singleton", "family"):
            raise ValueError("kind must be 'singleton' or 'family'")
        self.name = name
        self.ambient = ambient
        self.kind = kind
        self._contains = contains
        self._generators = generators
        self._gen_cache = {}

    def contains(self, cover):
        """Membership; cover is an arrow or, for family kind, a tuple of arrows."""
        return self._contains(cover)

    def generators(self, obj, bound=DEFAULT_BOUND):
        key = (obj, bound)
        if key not in self._gen_cache:
            self._gen_cache[key] = tuple(self._generators(obj, bound))
        return self._gen_cache[key]


def _surjective(arr):
    return set(arr.table) == set(range(arr.cod.size))


def trivial_pretopology(ambient):
    def gens(obj, bound):
        return [identity(obj)]

    return Pretopology("triv", ambient, "singleton", ambient.is_iso, gens)


def _epi_generators(ambient, membership):
    def gens(obj, bound):
        out = [identity(obj)]
        for probe in ambient.probe_objects(bound):
            for arr in ambient.arrows(probe, obj):
                if membership(arr) and not arr.is_identity():
                    out.append(arr)
        return out

    return gens


def surjective_pretopology(ambient, name="surj"):
    """Covers are the surjections the instance has (regular epis)."""
    return Pretopology(
        name, ambient, "singleton", _surjective, _epi_generators(ambient, _surjective)
    )


def split_pretopology(ambient):
    def has_section(arr):
        return ambient.section(arr) is not None

    return Pretopology(
        "split", ambient, "singleton", has_section, _epi_generators(ambient, has_section)
    )


def jointly_surjective_families(ambient):
    """Family pretopology on finite sets: finite jointly surjective families."""

    def contains(fam):
        fam = tuple(fam)
        if not fam:
            return False
        cod = fam[0].cod
        if any(m.cod != cod for m in fam):
            return False
        hit = set()
        for m in fam:
            hit.update(m.table)
        return hit == set(range(cod.size))

    def gens(obj, bound):
        out = [(identity(obj),)]
        if obj.size > 0:
            one = ambient.obj(1)
            points = tuple(Arrow(one, obj, (x,)) for x in range(obj.size))
            out.append(points)
            if obj.size >= 2:
                # one two-block split, to exercise non-singleton members
                lo = tuple(range(obj.size - 1))
                first = Arrow(ambient.obj(len(lo)), obj, lo)
                second = Arrow(one, obj, (obj.size - 1,))
                out.append((first, second))
        return out

    return Pretopology("jsurj", ambient, "family", contains, gens)


def coproduct_pretopology(fam_pretopology):
    """The singleton pretopology whose covers are coproducts of J-families.

    Membership decomposes an arrow into its singleton-element restrictions;
    that is exact for families whose membership depends only on images,
    which covers the shipped jointly-surjective instance.
    """
    ambient = fam_pretopology.ambient
    if fam_pretopology.kind != "family":
        raise ValueError("coproduct_pretopology expects a family pretopology")

    def contains(arr):
        one = ambient.obj(1)
        fam = tuple(Arrow(one, arr.cod, (arr.table[u],)) for u in range(arr.dom.size))
        if not fam:
            return arr.cod.size == 0
        return fam_pretopology.contains(fam)

    def gens(obj, bound):
        out = []
        for fam in fam_pretopology.generators(obj, bound):
            total, injections = ambient.coproduct_many([m.dom for m in fam])
            table = []
            for m in fam:
                table.extend(m.table)
            out.append(Arrow(total, obj, tuple(table)))
        return out

    return Pretopology(
        f"coprod-of:{fam_pretopology.name}", ambient, "singleton", contains, gens
    )


def _family_of(cover):
    return (cover,) if isinstance(cover, Arrow) else tuple(cover)


def pullback_cover(ambient, J, cover, g):
    """Pull a cover of cod(g)'s codomain back along g."""
    if J.kind == "singleton":
        return ambient.pullback(cover, g).proj2
    return tuple(ambient.pullback(m, g).proj2 for m in cover)


def check_pretopology_axioms(J, bound=DEFAULT_BOUND):
    """Isos cover, covers pull back, covers compose."""
    ambient = J.ambient
    rep = VerificationReport(f"pretopology axioms: {J.name}")
    probes = ambient.probe_objects(bound)

    n = 0
    bad = None
    for a in probes:
        for b in probes:
            if a.size != b.size:
                continue
            for f in ambient.arrows(a, b):
                if not ambient.is_iso(f):
                    continue
                n += 1
                member = J.contains(f) if J.kind == "singleton" else J.contains((f,))
                if not member:
                    bad = f
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        rep.fail("axiom.isos-cover", f"iso not a cover: {bad.table}", n, bound)
    else:
        rep.ok("axiom.isos-cover", n, bound)

    n = 0
    bad = None
    for a in probes:
        for cover in J.generators(a, bound):
            for b in probes:
                for g in ambient.arrows(b, a):
                    pulled = pullback_cover(ambient, J, cover, g)
                    n += 1
                    if not J.contains(pulled):
                        bad = (cover, g)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        rep.fail("axiom.pullback-stable", f"cover fails to pull back along {bad[1].table}", n, bound)
    else:
        rep.ok("axiom.pullback-stable", n, bound)

    n = 0
    bad = None
    for a in probes:
        for cover in J.generators(a, bound):
            if J.kind == "singleton":
                for refin in J.generators(cover.dom, bound):
                    n += 1
                    if not J.contains(compose(cover, refin)):
                        bad = (cover, refin)
                        break
                if bad:
                    break
            else:
                refined = []
                ok = True
                for member in cover:
                    fams = J.generators(member.dom, bound)
                    if not fams:
                        ok = False
                        break
                    refined.extend(compose(member, piece) for piece in fams[0])
                n += 1
                if ok and not J.contains(tuple(refined)):
                    bad = cover
                    break
        if bad:
            break
    if bad:
        rep.fail("axiom.composition-closed", "composite of covers is not a cover", n, bound)
    else:
        rep.ok("axiom.composition-closed", n, bound)
    return rep


def is_J_epi(f, J, bound=DEFAULT_BOUND):
    """Whether some generator cover of cod(f) lifts through f."""
    ambient = J.ambient
    for cover in J.generators(f.cod, bound):
        members = _family_of(cover)
        lifts = [ambient.lift(f, m) for m in members]
        if all(h is not None for h in lifts):
            return True
    return False


def is_universal_J_epi(f, J, bound=DEFAULT_BOUND):
    """J-epi after pulling back along every arrow from probe objects."""
    ambient = J.ambient
    if not is_J_epi(f, J, bound):
        return False
    for t in ambient.probe_objects(bound):
        for g in ambient.arrows(t, f.cod):
            pulled = ambient.pullback(f, g).proj2
            if not is_J_epi(pulled, J, bound):
                return False
    return True


def is_saturated(J, bound=DEFAULT_BOUND):
    """g.h a cover forces g to be a cover, for all pairs within bound."""
    if J.kind != "singleton":
        raise ValueError("saturation is defined for singleton pretopologies")
    ambient = J.ambient
    probes = ambient.probe_objects(bound)
    for b in probes:
        for c in probes:
            for g in ambient.arrows(b, c):
                if J.contains(g):
                    continue
                for a in probes:
                    for h in ambient.arrows(a, b):
                        if J.contains(compose(g, h)):
                            return False, (g, h)
    return True, None


def is_subcanonical(J, bound=DEFAULT_BOUND):
    """All generator covers within bound are effective."""
    ambient = J.ambient
    for a in ambient.probe_objects(bound):
        for cover in J.generators(a, bound):
            if J.kind == "singleton":
                if not ambient.is_effective(cover, bound):
                    return False, cover
            else:
                if not family_is_effective(cover, ambient, bound):
                    return False, cover
    return True, None


def family_is_effective(fam, ambient, bound=DEFAULT_BOUND):
    """The family is jointly the coequalizer of its pairwise pullbacks."""
    fam = tuple(fam)
    if not fam:
        # the empty family covers only a strict initial object
        return True
    cod = fam[0].cod
    probes = list(ambient.probe_objects(bound))
    if cod not in probes:
        probes.append(cod)
    kernel = {}
    for i, mi in enumerate(fam):
        for j, mj in enumerate(fam):
            kernel[(i, j)] = ambient.pullback(mi, mj)
    for y in probes:
        legs = [list(ambient.arrows(m.dom, y)) for m in fam]
        for cocone in _family_cocones(legs, kernel):
            count = 0
            for g in ambient.arrows(cod, y):
                if all(compose(g, m) == h for m, h in zip(fam, cocone)):
                    count += 1
                    if count > 1:
                        break
            if count != 1:
                return False
    return True


def _family_cocones(legs, kernel):
    def compatible(partial):
        i = len(partial) - 1
        for j in range(len(partial)):
            pb = kernel[(i, j)]
            hi, hj = partial[i], partial[j]
            if compose(hi, pb.proj1) != compose(hj, pb.proj2):
                return False
        return True

    def rec(partial):
        if len(partial) == len(legs):
            yield tuple(partial)
            return
        for h in legs[len(partial)]:
            partial.append(h)
            if compatible(partial):
                yield from rec(partial)
            partial.pop()

    yield from rec([])


def is_cofinal(J, K, bound=DEFAULT_BOUND):
    """J inside K inside the universal J-epis, on arrows within bound."""
    if J.ambient != K.ambient:
        raise ValueError("pretopologies live on different ambients")
    ambient = J.ambient
    probes = ambient.probe_objects(bound)
    for a in probes:
        for b in probes:
            for f in ambient.arrows(a, b):
                if J.contains(f) and not K.contains(f):
                    return False, ("J-cover outside K", f)
                if K.contains(f) and not is_universal_J_epi(f, J, bound):
                    return False, ("K-cover not universally J-epi", f)
    return True, None


def wisc_witness(J, obj, bound=DEFAULT_BOUND):
    """Greedy minimal weakly initial set among the generator covers."""
    ambient = J.ambient
    gens = list(J.generators(obj, bound))
    if J.kind != "singleton":
        raise ValueError("wisc_witness handles singleton pretopologies")
    reach = []
    for w in gens:
        reach.append(
            set(
                i
                for i, c in enumerate(gens)
                if ambient.lift(c, w) is not None
            )
        )
    chosen = []
    uncovered = set(range(len(gens)))
    while uncovered:
        best = None
        for i, r in enumerate(reach):
            gain = len(r & uncovered)
            if best is None or gain > best[0]:
                best = (gain, i)
        if best[0] == 0:
            raise AssertionError("generator covers itself; unreachable")
        chosen.append(gens[best[1]])
        uncovered -= reach[best[1]]
    return tuple(chosen)


def check_extensivity(ambient, bound=3):
    """Coproduct squares are pullbacks iff the decomposition is a coproduct."""
    rep = VerificationReport("extensivity")
    probes = ambient.probe_objects(bound)

    n = 0
    bad = None
    empty = ambient.obj(0)
    for a in probes:
        if any(True for _ in ambient.arrows(a, empty)) and a.size != 0:
            bad = a
            break
        n += 1
    if bad:
        rep.fail("appendix.strict-initial", f"object of size {bad.size} maps to 0", n, bound)
    else:
        rep.ok("appendix.strict-initial", n, bound)

    n = 0
    bad = None
    for a1 in probes:
        for a2 in probes:
            total, i1, i2 = ambient.coproduct(a1, a2)
            for z in probes:
                for h in ambient.arrows(z, total):
                    # pullbacks along the injections must decompose z
                    pb1 = ambient.pullback(i1, h)
                    pb2 = ambient.pullback(i2, h)
                    n += 1
                    glued, j1, j2 = ambient.coproduct(pb1.apex, pb2.apex)
                    comparison = [0] * glued.size
                    for p in range(pb1.apex.size):
                        comparison[j1.table[p]] = pb1.proj2.table[p]
                    for p in range(pb2.apex.size):
                        comparison[j2.table[p]] = pb2.proj2.table[p]
                    comp = Arrow(glued, z, tuple(comparison))
                    if not ambient.is_iso(comp):
                        bad = (a1, a2, h)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        rep.fail("appendix.pullbacks-decompose", f"comparison not iso for {bad[2].table}", n, bound)
    else:
        rep.ok("appendix.pullbacks-decompose", n, bound)

    n = 0
    bad = None
    for a1 in probes:
        for a2 in probes:
            if a1.size + a2.size > bound + 1:
                continue
            total, i1, i2 = ambient.coproduct(a1, a2)
            for z1 in probes[: bound]:
                for z2 in probes[: bound]:
                    zt, k1, k2 = ambient.coproduct(z1, z2)
                    for f1 in ambient.arrows(z1, a1):
                        for f2 in ambient.arrows(z2, a2):
                            h = [0] * zt.size
                            for p in range(z1.size):
                                h[k1.table[p]] = i1.table[f1.table[p]]
                            for p in range(z2.size):
                                h[k2.table[p]] = i2.table[f2.table[p]]
                            h = Arrow(zt, total, tuple(h))
                            pb1 = ambient.pullback(i1, h)
                            pb2 = ambient.pullback(i2, h)
                            n += 1
                            if sorted(pb1.proj2.table) != sorted(k1.table) or sorted(
                                pb2.proj2.table
                            ) != sorted(k2.table):
                                bad = (f1, f2)
                                break
                        if bad:
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        rep.fail("appendix.coproducts-pull-back", f"square not a pullback for {bad}", n, bound)
    else:
        rep.ok("appendix.coproducts-pull-back", n, bound)
    return rep


def check_Jun_equals_coprodJun(fam, bound=DEFAULT_BOUND, universal_bound=3):
    """J-epis of a family pretopology agree with those of its coproduct."""
    ambient = fam.ambient
    coprod = coproduct_pretopology(fam)
    rep = VerificationReport("Jun = coprod-Jun")
    probes = ambient.probe_objects(bound)
    n = 0
    bad = None
    for a in probes:
        for b in probes:
            for f in ambient.arrows(a, b):
                n += 1
                if is_J_epi(f, fam, bound) != is_J_epi(f, coprod, bound):
                    bad = f
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        rep.fail("appendix.jepi-agreement", f"classes disagree on {bad.table}", n, bound)
    else:
        rep.ok("appendix.jepi-agreement", n, bound)

    n = 0
    bad = None
    small = ambient.probe_objects(universal_bound)
    for a in small:
        for b in small:
            for f in ambient.arrows(a, b):
                n += 1
                if is_universal_J_epi(f, fam, universal_bound) != is_universal_J_epi(
                    f, coprod, universal_bound
                ):
                    bad = f
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        rep.fail("appendix.universal-jepi-agreement", f"universal classes disagree on {bad.table}", n, universal_bound)
    else:
        rep.ok("appendix.universal-jepi-agreement", n, universal_bound)
    return rep
