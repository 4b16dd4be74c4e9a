"""Ambient instances beyond finite sets: groups, G-sets, crossed modules."""

from dataclasses import dataclass
from itertools import combinations_with_replacement, product as cartesian

from .ambient import Ambient, AmbientError, Arrow, compose, identity
from .report import VerificationReport
from .sites import surjective_pretopology


@dataclass(frozen=True)
class FiniteGroup:
    """A group as its multiplication table on elements 0..n-1."""

    mul: tuple

    @property
    def size(self):
        return len(self.mul)

    def op(self, a, b):
        return self.mul[a][b]

    def identity_el(self):
        for e in range(self.size):
            if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(self.size)):
                return e
        raise AmbientError("table has no identity element")

    def inverse_el(self, a):
        e = self.identity_el()
        for b in range(self.size):
            if self.mul[a][b] == e:
                return b
        raise AmbientError("element has no inverse")


def validate_group(g):
    n = g.size
    if any(len(row) != n for row in g.mul):
        raise AmbientError("multiplication table is not square")
    if any(not 0 <= v < n for row in g.mul for v in row):
        raise AmbientError("table value out of range")
    g.identity_el()
    for a in range(n):
        g.inverse_el(a)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if g.op(g.op(a, b), c) != g.op(a, g.op(b, c)):
                    raise AmbientError(f"associativity fails at {(a, b, c)}")
    return g


def cyclic_group(n):
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def direct_product_group(g, h):
    pairs = [(a, b) for a in range(g.size) for b in range(h.size)]
    index = {p: i for i, p in enumerate(pairs)}
    mul = tuple(
        tuple(index[(g.op(a1, a2), h.op(b1, b2))] for (a2, b2) in pairs)
        for (a1, b1) in pairs
    )
    return FiniteGroup(mul)


def permutation_group(perms):
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(
        tuple(index[tuple(p[q[i]] for i in range(len(q)))] for q in perms)
        for p in perms
    )
    return FiniteGroup(mul)


def symmetric_group(n):
    from itertools import permutations

    return permutation_group(sorted(permutations(range(n))))


def dihedral_group(n):
    # (r, s) with s in {0,1}; (r1,s1)(r2,s2) = (r1 + (-1)^s1 r2, s1+s2)
    pairs = [(r, s) for r in range(n) for s in range(2)]
    index = {p: i for i, p in enumerate(pairs)}
    mul = tuple(
        tuple(
            index[((r1 + (r2 if s1 == 0 else -r2)) % n, (s1 + s2) % 2)]
            for (r2, s2) in pairs
        )
        for (r1, s1) in pairs
    )
    return FiniteGroup(mul)


def quaternion_group():
    # elements 1,-1,i,-i,j,-j,k,-k encoded 0..7 as (axis, sign)
    names = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1)]
    index = {p: i for i, p in enumerate(names)}
    table_axis = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    mul = []
    for a, sa in names:
        row = []
        for b, sb in names:
            axis, extra = table_axis[(a, b)]
            row.append(index[(axis, (sa + sb + extra) % 2)])
        mul.append(tuple(row))
    return FiniteGroup(tuple(mul))


Z1 = cyclic_group(1)
Z2 = cyclic_group(2)
Z3 = cyclic_group(3)
Z4 = cyclic_group(4)
V4 = direct_product_group(Z2, Z2)
Z5 = cyclic_group(5)
Z6 = cyclic_group(6)
S3 = symmetric_group(3)
Z8 = cyclic_group(8)
Z2xZ4 = direct_product_group(Z2, Z4)
E8 = direct_product_group(Z2, V4)
D4 = dihedral_group(4)
Q8 = quaternion_group()

BUILTIN_GROUPS = {
    "Z1": Z1, "Z2": Z2, "Z3": Z3, "Z4": Z4, "V4": V4,
    "Z5": Z5, "Z6": Z6, "S3": S3, "Z8": Z8, "Z2xZ4": Z2xZ4,
    "E8": E8, "D4": D4, "Q8": Q8,
}

_PROBE_ORDER = ["Z1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3", "Z8", "Z2xZ4", "E8", "D4", "Q8"]


def group_generators(g):
    """A small generating set, greedily extended in element order."""
    e = g.identity_el()
    gens = []
    closure = {e}
    for x in range(g.size):
        if x in closure:
            continue
        gens.append(x)
        frontier = [e]
        closure = {e}
        while frontier:
            a = frontier.pop()
            for s in gens:
                b = g.op(a, s)
                if b not in closure:
                    closure.add(b)
                    frontier.append(b)
        # close under products of reached elements
        changed = True
        while changed:
            changed = False
            for a in list(closure):
                for b in list(closure):
                    c = g.op(a, b)
                    if c not in closure:
                        closure.add(c)
                        changed = True
        if len(closure) == g.size:
            break
    return gens


class FinGrpAmbient(Ambient):
    """Finite groups and homomorphisms; products yes, coproducts no."""

    name = "fingrp"

    def __init__(self):
        self._hom_cache = {}

    def _validate_structure(self, arr):
        g, h = arr.dom, arr.cod
        for a in range(g.size):
            for b in range(g.size):
                if arr.table[g.op(a, b)] != h.op(arr.table[a], arr.table[b]):
                    raise AmbientError("table is not a homomorphism")

    def _pair_apex(self, a, b, pairs):
        index = {p: i for i, p in enumerate(pairs)}
        mul = []
        for (a1, b1) in pairs:
            row = []
            for (a2, b2) in pairs:
                key = (a.op(a1, a2), b.op(b1, b2))
                if key not in index:
                    raise AmbientError("pair set is not closed under multiplication")
                row.append(index[key])
            mul.append(tuple(row))
        return FiniteGroup(tuple(mul))

    def terminal(self):
        return Z1

    def arrows(self, a, b):
        key = (a, b)
        if key not in self._hom_cache:
            self._hom_cache[key] = tuple(self._homs(a, b))
        return iter(self._hom_cache[key])

    def _homs(self, a, b):
        gens = group_generators(a)
        e_a, e_b = a.identity_el(), b.identity_el()
        if not gens:
            yield Arrow(a, b, (e_b,) * a.size)
            return
        for images in cartesian(range(b.size), repeat=len(gens)):
            table = {e_a: e_b}
            frontier = [e_a]
            ok = True
            while frontier and ok:
                x = frontier.pop()
                for gen, img in zip(gens, images):
                    y = a.op(x, gen)
                    v = b.op(table[x], img)
                    if y in table:
                        if table[y] != v:
                            ok = False
                            break
                    else:
                        table[y] = v
                        frontier.append(y)
            if not ok or len(table) != a.size:
                continue
            tab = tuple(table[x] for x in range(a.size))
            hom = True
            for x in range(a.size):
                for y in range(a.size):
                    if tab[a.op(x, y)] != b.op(tab[x], tab[y]):
                        hom = False
                        break
                if not hom:
                    break
            if hom:
                yield Arrow(a, b, tab)

    def probe_objects(self, bound):
        return [BUILTIN_GROUPS[n] for n in _PROBE_ORDER if BUILTIN_GROUPS[n].size <= bound]

    def subobject(self, obj, elems):
        elems = tuple(elems)
        if list(elems) != sorted(set(elems)):
            raise AmbientError("subobject elements must be sorted")
        index = {x: i for i, x in enumerate(elems)}
        e = obj.identity_el()
        if e not in index:
            raise AmbientError("subgroup must contain the identity")
        mul = []
        for x in elems:
            row = []
            for y in elems:
                z = obj.op(x, y)
                if z not in index:
                    raise AmbientError("subset is not closed under multiplication")
                row.append(index[z])
            mul.append(tuple(row))
        sub = FiniteGroup(tuple(mul))
        return sub, Arrow(sub, obj, elems)

    def normal_subgroups(self, g):
        """All normal subgroups as sorted element tuples."""
        subs = []
        elems = list(range(g.size))
        e = g.identity_el()
        # enumerate subgroups by closing each seed of at most two elements
        seen = set()
        seeds = [()]
        seeds += [(x,) for x in elems]
        seeds += [(x, y) for x in elems for y in elems if x < y]
        for seed in seeds:
            closure = {e, *seed}
            changed = True
            while changed:
                changed = False
                for a in list(closure):
                    for b in list(closure):
                        c = g.op(a, b)
                        if c not in closure:
                            closure.add(c)
                            changed = True
                    c = g.inverse_el(a)
                    if c not in closure:
                        closure.add(c)
                        changed = True
            cand = tuple(sorted(closure))
            if cand in seen:
                continue
            seen.add(cand)
            normal = all(
                g.op(g.op(h, n), g.inverse_el(h)) in closure
                for h in elems
                for n in closure
            )
            if normal:
                subs.append(cand)
        return sorted(subs, key=lambda s: (len(s), s))

    def quotient_map(self, g, normal):
        """The projection onto the quotient by a normal subgroup."""
        normal = set(normal)
        cosets = []
        belong = {}
        for x in range(g.size):
            if x in belong:
                continue
            coset = sorted(g.op(x, n) for n in normal)
            for y in coset:
                belong[y] = len(cosets)
            cosets.append(coset)
        index = {}
        mul = []
        for c1 in cosets:
            row = []
            for c2 in cosets:
                row.append(belong[g.op(c1[0], c2[0])])
            mul.append(tuple(row))
        q = FiniteGroup(tuple(mul))
        return Arrow(g, q, tuple(belong[x] for x in range(g.size)))


FINGRP = FinGrpAmbient()


def epi_pretopology_grp():
    """Surjective homomorphisms; generators are quotient presentations."""
    return surjective_pretopology(FINGRP, name="epi-grp")


@dataclass(frozen=True)
class GSetObj:
    """A finite G-set as one permutation table per group element."""

    group: FiniteGroup
    action: tuple

    @property
    def size(self):
        return len(self.action[0])

    def act(self, g, x):
        return self.action[g][x]


class FinGSetAmbient(Ambient):
    """Finite G-sets and equivariant maps for one fixed finite group."""

    name = "fingset"

    def __init__(self, group):
        validate_group(group)
        self.group = group
        self._subgroups = None

    def _key(self):
        return (type(self), self.group)

    def obj(self, action):
        action = tuple(tuple(row) for row in action)
        o = GSetObj(self.group, action)
        self.validate_object(o)
        return o

    def validate_object(self, o):
        g = self.group
        if len(o.action) != g.size:
            raise AmbientError("action table needs one row per group element")
        n = o.size
        for row in o.action:
            if len(row) != n or sorted(row) != list(range(n)):
                raise AmbientError("each group element must act by a permutation")
        e = g.identity_el()
        if o.action[e] != tuple(range(n)):
            raise AmbientError("identity must act trivially")
        for a in range(g.size):
            for b in range(g.size):
                for x in range(n):
                    if o.act(a, o.act(b, x)) != o.act(g.op(a, b), x):
                        raise AmbientError("action law fails")

    def trivial_gset(self, n):
        return GSetObj(self.group, tuple(tuple(range(n)) for _ in range(self.group.size)))

    def left_translation_gset(self):
        g = self.group
        return GSetObj(g, tuple(tuple(g.op(a, x) for x in range(g.size)) for a in range(g.size)))

    def _validate_structure(self, arr):
        g = self.group
        for a in range(g.size):
            for x in range(arr.dom.size):
                if arr.table[arr.dom.act(a, x)] != arr.cod.act(a, arr.table[x]):
                    raise AmbientError("table is not equivariant")

    def _pair_apex(self, a, b, pairs):
        index = {p: i for i, p in enumerate(pairs)}
        action = []
        for g in range(self.group.size):
            row = []
            for (x, y) in pairs:
                key = (a.act(g, x), b.act(g, y))
                if key not in index:
                    raise AmbientError("pair set is not closed under the action")
                row.append(index[key])
            action.append(tuple(row))
        return GSetObj(self.group, tuple(action))

    def terminal(self):
        return self.trivial_gset(1)

    def orbits(self, o):
        seen = set()
        out = []
        for x in range(o.size):
            if x in seen:
                continue
            orbit = sorted({o.act(g, x) for g in range(self.group.size)})
            seen.update(orbit)
            out.append(orbit)
        return out

    def stabilizer(self, o, x):
        return frozenset(g for g in range(self.group.size) if o.act(g, x) == x)

    def arrows(self, a, b):
        reps = [orbit[0] for orbit in self.orbits(a)]
        candidates = []
        for r in reps:
            stab = self.stabilizer(a, r)
            candidates.append(
                [x for x in range(b.size) if stab <= self.stabilizer(b, x)]
            )
        for choice in cartesian(*candidates):
            table = [None] * a.size
            for r, x in zip(reps, choice):
                for g in range(self.group.size):
                    table[a.act(g, r)] = b.act(g, x)
            yield Arrow(a, b, tuple(table))

    def subgroups(self):
        if self._subgroups is None:
            g = self.group
            e = g.identity_el()
            seen = set()
            seeds = [()] + [(x,) for x in range(g.size)]
            seeds += [(x, y) for x in range(g.size) for y in range(g.size) if x < y]
            for seed in seeds:
                closure = {e, *seed}
                changed = True
                while changed:
                    changed = False
                    for x in list(closure):
                        for y in list(closure):
                            z = g.op(x, y)
                            if z not in closure:
                                closure.add(z)
                                changed = True
                        z = g.inverse_el(x)
                        if z not in closure:
                            closure.add(z)
                            changed = True
                seen.add(tuple(sorted(closure)))
            self._subgroups = sorted(seen, key=lambda s: (len(s), s))
        return self._subgroups

    def coset_gset(self, subgroup):
        g = self.group
        sub = set(subgroup)
        cosets = []
        belong = {}
        for x in range(g.size):
            if x in belong:
                continue
            coset = sorted(g.op(x, h) for h in sub)
            for y in coset:
                belong[y] = len(cosets)
            cosets.append(coset)
        action = tuple(
            tuple(belong[g.op(a, c[0])] for c in cosets) for a in range(g.size)
        )
        return GSetObj(g, action)

    def disjoint_union(self, parts):
        n = sum(p.size for p in parts)
        action = []
        for g in range(self.group.size):
            row = []
            offset = 0
            for p in parts:
                row.extend(offset + v for v in p.action[g])
                offset += p.size
            action.append(tuple(row))
        return GSetObj(self.group, tuple(action))

    def coproduct_many(self, objs):
        total = self.disjoint_union(objs)
        injections = []
        offset = 0
        for o in objs:
            injections.append(
                Arrow(o, total, tuple(range(offset, offset + o.size)))
            )
            offset += o.size
        return total, injections

    def probe_objects(self, bound, cap=24):
        orbit_types = [self.coset_gset(s) for s in self.subgroups()]
        orbit_types = [o for o in orbit_types if o.size <= bound]
        orbit_types.sort(key=lambda o: (o.size, o.action))
        probes = [self.trivial_gset(0)]
        for k in range(1, bound + 1):
            for combo in combinations_with_replacement(orbit_types, k):
                if sum(o.size for o in combo) <= bound:
                    probes.append(self.disjoint_union(list(combo)))
                if len(probes) >= cap:
                    return probes[:cap]
        return probes

    def subobject(self, obj, elems):
        elems = tuple(elems)
        if list(elems) != sorted(set(elems)):
            raise AmbientError("subobject elements must be sorted")
        index = {x: i for i, x in enumerate(elems)}
        action = []
        for g in range(self.group.size):
            row = []
            for x in elems:
                y = obj.act(g, x)
                if y not in index:
                    raise AmbientError("subset is not closed under the action")
                row.append(index[y])
            action.append(tuple(row))
        sub = GSetObj(self.group, tuple(action))
        return sub, Arrow(sub, obj, elems)


@dataclass(frozen=True)
class CrossedModule:
    """A homomorphism t: G -> H with an H-action on G by automorphisms."""

    t: Arrow
    action: tuple  # action[h][g]

    @property
    def source(self):
        return self.t.dom

    @property
    def base(self):
        return self.t.cod


def validate_crossed_module(xm):
    rep = VerificationReport("crossed module")
    g, h = xm.source, xm.base
    try:
        FINGRP.validate_arrow(xm.t)
        rep.ok("xmod.t-homomorphism", 1)
    except AmbientError as err:
        rep.fail("xmod.t-homomorphism", err)
        return rep

    bad = None
    if len(xm.action) != h.size:
        bad = "action table needs one row per base element"
    else:
        for hh in range(h.size):
            row = xm.action[hh]
            if len(row) != g.size or sorted(row) != list(range(g.size)):
                bad = f"action of {hh} is not a bijection"
                break
            for a in range(g.size):
                for b in range(g.size):
                    if row[g.op(a, b)] != g.op(row[a], row[b]):
                        bad = f"action of {hh} is not an automorphism"
                        break
                if bad:
                    break
            if bad:
                break
    if bad:
        rep.fail("xmod.action-by-automorphisms", bad)
        return rep
    rep.ok("xmod.action-by-automorphisms", h.size)

    e_h = h.identity_el()
    bad = None
    if xm.action[e_h] != tuple(range(g.size)):
        bad = "identity must act trivially"
    else:
        for h1 in range(h.size):
            for h2 in range(h.size):
                for a in range(g.size):
                    if xm.action[h.op(h1, h2)][a] != xm.action[h1][xm.action[h2][a]]:
                        bad = f"action law fails at {(h1, h2, a)}"
                        break
                if bad:
                    break
            if bad:
                break
    if bad:
        rep.fail("xmod.action-law", bad)
    else:
        rep.ok("xmod.action-law", h.size * h.size)

    bad = None
    for hh in range(h.size):
        for a in range(g.size):
            lhs = xm.t.table[xm.action[hh][a]]
            rhs = h.op(h.op(hh, xm.t.table[a]), h.inverse_el(hh))
            if lhs != rhs:
                bad = f"equivariance fails at {(hh, a)}"
                break
        if bad:
            break
    if bad:
        rep.fail("xmod.equivariance", bad)
    else:
        rep.ok("xmod.equivariance", h.size * g.size)

    bad = None
    for a in range(g.size):
        for b in range(g.size):
            lhs = xm.action[xm.t.table[a]][b]
            rhs = g.op(g.op(a, b), g.inverse_el(a))
            if lhs != rhs:
                bad = f"peiffer identity fails at {(a, b)}"
                break
        if bad:
            break
    if bad:
        rep.fail("xmod.peiffer", bad)
    else:
        rep.ok("xmod.peiffer", g.size * g.size)
    return rep


def semidirect_product(g, h, action):
    """G semidirect H for an H-action on G; pairs (g, h) in lex order."""
    pairs = [(a, b) for a in range(g.size) for b in range(h.size)]
    index = {p: i for i, p in enumerate(pairs)}
    mul = tuple(
        tuple(
            index[(g.op(a1, action[b1][a2]), h.op(b1, b2))] for (a2, b2) in pairs
        )
        for (a1, b1) in pairs
    )
    return FiniteGroup(mul), pairs, index


def xmod_to_groupoid(xm):
    """The internal groupoid in finite groups built from a crossed module."""
    from .internal import InternalCategory

    g, h = xm.source, xm.base
    arr_group, pairs, index = semidirect_product(g, h, xm.action)
    e_g = g.identity_el()
    src = Arrow(arr_group, h, tuple(b for (_, b) in pairs))
    tgt = Arrow(arr_group, h, tuple(h.op(xm.t.table[a], b) for (a, b) in pairs))
    unit = Arrow(h, arr_group, tuple(index[(e_g, b)] for b in range(h.size)))
    cat = InternalCategory.build(
        FINGRP,
        h,
        arr_group,
        src,
        tgt,
        unit,
        mul_el=lambda x2, x1: index[
            (g.op(pairs[x2][0], pairs[x1][0]), pairs[x1][1])
        ],
        inv_el=lambda x: index[
            (g.inverse_el(pairs[x][0]), h.op(xm.t.table[pairs[x][0]], pairs[x][1]))
        ],
    )
    return cat


def groupoid_to_xmod(cat):
    """Extract the crossed module of an internal groupoid in finite groups."""
    if cat.ambient != FINGRP:
        raise AmbientError("crossed modules come from groupoids in finite groups")
    if cat.inv is None:
        raise AmbientError("need a groupoid")
    h = cat.obj
    e_h = h.identity_el()
    kernel = tuple(x for x in range(cat.arr.size) if cat.src.table[x] == e_h)
    sub, incl = FINGRP.subobject(cat.arr, kernel)
    t = compose(cat.tgt, incl)
    pos = {x: i for i, x in enumerate(kernel)}
    action = []
    for hh in range(h.size):
        u = cat.unit.table[hh]
        u_inv = cat.arr.inverse_el(u)
        row = []
        for x in kernel:
            row.append(pos[cat.arr.op(cat.arr.op(u, x), u_inv)])
        action.append(tuple(row))
    return CrossedModule(t, tuple(action))


def one_object_groupoid(group):
    """The one-object groupoid in finite sets of a finite group."""
    from .ambient import FINSET, FinSetObj
    from .internal import InternalCategory

    one = FinSetObj(1)
    carrier = FinSetObj(group.size)
    e = group.identity_el()
    return InternalCategory.build(
        FINSET,
        one,
        carrier,
        Arrow(carrier, one, (0,) * group.size),
        Arrow(carrier, one, (0,) * group.size),
        Arrow(one, carrier, (e,)),
        mul_el=group.op,
        inv_el=group.inverse_el,
    )


def action_groupoid(group, action_table):
    """The groupoid in finite sets of a group action on a finite set."""
    from .ambient import FINSET, FinSetObj
    from .internal import InternalCategory

    n = len(action_table[0])
    obj = FinSetObj(n)
    pairs = [(g, x) for g in range(group.size) for x in range(n)]
    index = {p: i for i, p in enumerate(pairs)}
    arr = FinSetObj(len(pairs))
    src = Arrow(arr, obj, tuple(x for (_, x) in pairs))
    tgt = Arrow(arr, obj, tuple(action_table[g][x] for (g, x) in pairs))
    e = group.identity_el()
    unit = Arrow(obj, arr, tuple(index[(e, x)] for x in range(n)))
    return InternalCategory.build(
        FINSET,
        obj,
        arr,
        src,
        tgt,
        unit,
        mul_el=lambda a2, a1: index[(group.op(pairs[a2][0], pairs[a1][0]), pairs[a1][1])],
        inv_el=lambda a: index[
            (group.inverse_el(pairs[a][0]), action_table[pairs[a][0]][pairs[a][1]])
        ],
    )
