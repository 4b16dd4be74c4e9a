"""Finite concrete ambient categories with chosen finite limits.

Every object carries a canonical element enumeration 0..size-1 and every
arrow is a total lookup table, so equality of objects, arrows and all
derived structure is plain equality of tables.
"""

from dataclasses import dataclass
from itertools import product as cartesian


class AmbientError(Exception):
    pass


class CompositionError(AmbientError):
    pass


class ConeError(AmbientError):
    pass


class DescentError(AmbientError):
    pass


class ColimitUnsupportedError(AmbientError):
    pass


class NotInvertibleError(AmbientError):
    pass


@dataclass(frozen=True)
class Arrow:
    """A map dom -> cod given by its value table."""

    dom: object
    cod: object
    table: tuple

    def __call__(self, x):
        return self.table[x]

    def is_identity(self):
        return self.dom == self.cod and self.table == tuple(range(self.dom.size))


def compose(g, f):
    """g after f."""
    if f.cod != g.dom:
        raise CompositionError("domain of g is not the codomain of f")
    return Arrow(f.dom, g.cod, tuple(g.table[x] for x in f.table))


def identity(obj):
    return Arrow(obj, obj, tuple(range(obj.size)))


_GENERAL, _LEFT_ID, _RIGHT_ID = 0, 1, 2


class PullbackResult:
    """Chosen pullback of a cospan f: A -> C <- B : g.

    Apex elements are the lexicographic pairs (a, b) with f(a) = g(b),
    except that pulling back along a literal identity arrow gives back
    the other leg's domain itself, so M x_N N = M on the nose.
    """

    __slots__ = ("f", "g", "apex", "proj1", "proj2", "_mode", "_index")

    def __init__(self, f, g, apex, proj1, proj2, mode, index=None):
        self.f = f
        self.g = g
        self.apex = apex
        self.proj1 = proj1
        self.proj2 = proj2
        self._mode = mode
        self._index = index

    def index_of(self, a, b):
        """Apex element representing the pair (a, b)."""
        if self._mode == _LEFT_ID:
            if self.g.table[b] != a:
                raise ConeError("pair does not satisfy the cospan equation")
            return b
        if self._mode == _RIGHT_ID:
            if self.f.table[a] != b:
                raise ConeError("pair does not satisfy the cospan equation")
            return a
        try:
            return self._index[(a, b)]
        except KeyError:
            raise ConeError("pair does not satisfy the cospan equation") from None

    def pair_of(self, p):
        return (self.proj1.table[p], self.proj2.table[p])

    def pairs(self):
        return [(self.proj1.table[p], self.proj2.table[p]) for p in range(self.apex.size)]


class Ambient:
    """Interface of a finite concrete ambient category.

    Subclasses fix the object type and supply structure validation, apex
    construction, arrow enumeration and the probe objects used by
    bounded colimit checks.
    """

    name = "?"

    def _key(self):
        return (type(self),)

    def __eq__(self, other):
        return isinstance(other, Ambient) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # arrows

    def arrow(self, dom, cod, table):
        arr = Arrow(dom, cod, tuple(table))
        self.validate_arrow(arr)
        return arr

    def validate_arrow(self, arr):
        if len(arr.table) != arr.dom.size:
            raise AmbientError("table length does not match the domain size")
        for y in arr.table:
            if not isinstance(y, int) or not 0 <= y < arr.cod.size:
                raise AmbientError("table value outside the codomain")
        self._validate_structure(arr)

    def _validate_structure(self, arr):
        """Instance-specific arrow condition (hom, equivariance)."""

    def elements(self, obj):
        return list(range(obj.size))

    def evaluate(self, arr, x):
        if not 0 <= x < arr.dom.size:
            raise AmbientError("element outside the domain")
        return arr.table[x]

    def is_iso(self, f):
        return f.dom.size == f.cod.size and len(set(f.table)) == f.dom.size

    def inverse(self, f):
        if not self.is_iso(f):
            raise NotInvertibleError("arrow is not invertible")
        table = [0] * f.cod.size
        for x, y in enumerate(f.table):
            table[y] = x
        return Arrow(f.cod, f.dom, tuple(table))

    # chosen limits

    def pullback(self, f, g):
        if f.cod != g.cod:
            raise ConeError("not a cospan")
        if f.is_identity():
            return PullbackResult(f, g, g.dom, g, identity(g.dom), _LEFT_ID)
        if g.is_identity():
            return PullbackResult(f, g, f.dom, identity(f.dom), f, _RIGHT_ID)
        pairs = [
            (a, b)
            for a in range(f.dom.size)
            for b in range(g.dom.size)
            if f.table[a] == g.table[b]
        ]
        apex = self._pair_apex(f.dom, g.dom, pairs)
        proj1 = Arrow(apex, f.dom, tuple(a for a, _ in pairs))
        proj2 = Arrow(apex, g.dom, tuple(b for _, b in pairs))
        index = {ab: i for i, ab in enumerate(pairs)}
        return PullbackResult(f, g, apex, proj1, proj2, _GENERAL, index)

    def _pair_apex(self, a, b, pairs):
        raise NotImplementedError

    def mediate(self, pb, p, q):
        """The unique arrow into pb.apex projecting to p and q."""
        if p.dom != q.dom:
            raise ConeError("cone legs have different domains")
        if compose(pb.f, p) != compose(pb.g, q):
            raise ConeError("legs do not form a cone over the cospan")
        table = tuple(pb.index_of(p.table[x], q.table[x]) for x in range(p.dom.size))
        return Arrow(p.dom, pb.apex, table)

    def terminal(self):
        raise NotImplementedError

    def bang(self, obj):
        return Arrow(obj, self.terminal(), (0,) * obj.size)

    def product(self, a, b):
        return self.pullback(self.bang(a), self.bang(b))

    def product_map(self, prod_dom, prod_cod, p, q):
        """The arrow p x q between chosen products."""
        table = tuple(
            prod_cod.index_of(p.table[a], q.table[b]) for (a, b) in prod_dom.pairs()
        )
        return Arrow(prod_dom.apex, prod_cod.apex, table)

    def coproduct_many(self, objs):
        raise ColimitUnsupportedError(f"coproducts unsupported in {self.name}")

    def coproduct(self, a, b):
        obj, injections = self.coproduct_many([a, b])
        return obj, injections[0], injections[1]

    # enumeration

    def arrows(self, a, b):
        raise NotImplementedError

    def probe_objects(self, bound):
        raise NotImplementedError

    def lift(self, f, c):
        """First h with f . h = c, or None."""
        for h in self.arrows(c.dom, f.dom):
            if compose(f, h) == c:
                return h
        return None

    def section(self, q):
        return self.lift(q, identity(q.cod))

    def subobject(self, obj, elems):
        """Subobject on the given (sorted) elements with its inclusion."""
        raise NotImplementedError

    # effectivity and descent

    def kernel_pair(self, f):
        return self.pullback(f, f)

    def cocones(self, f, target):
        """Arrows h from dom(f) coequalizing the kernel pair of f."""
        kp = self.kernel_pair(f)
        for h in self.arrows(f.dom, target):
            if compose(h, kp.proj1) == compose(h, kp.proj2):
                yield h

    def count_factorizations(self, f, h, limit=2):
        n = 0
        for g in self.arrows(f.cod, h.cod):
            if compose(g, f) == h:
                n += 1
                if n >= limit:
                    return n
        return n

    def is_effective(self, f, bound=4):
        """Whether f is the coequalizer of its kernel pair.

        The universal property is checked by enumerating all cocones
        into the probe objects within the bound plus cod(f) itself.
        """
        probes = list(self.probe_objects(bound))
        if f.cod not in probes:
            probes.append(f.cod)
        for y in probes:
            for h in self.cocones(f, y):
                if self.count_factorizations(f, h, limit=2) != 1:
                    return False
        return True

    def descend(self, q, h):
        """Factor h through the cover q, section first, then verify."""
        kp = self.kernel_pair(q)
        if compose(h, kp.proj1) != compose(h, kp.proj2):
            raise DescentError("cocycle condition fails on the kernel pair")
        section = [None] * q.cod.size
        for u in range(q.dom.size):
            if section[q.table[u]] is None:
                section[q.table[u]] = u
        if any(s is None for s in section):
            raise DescentError("cover misses elements of the base; not effective")
        g = Arrow(q.cod, h.cod, tuple(h.table[s] for s in section))
        self._validate_structure(g)
        if compose(g, q) != h:
            raise DescentError("candidate factorization does not reproduce the data")
        return g


@dataclass(frozen=True)
class FinSetObj:
    size: int


class FinSetAmbient(Ambient):
    """Finite sets and all maps."""

    name = "finset"

    def _pair_apex(self, a, b, pairs):
        return FinSetObj(len(pairs))

    def terminal(self):
        return FinSetObj(1)

    def obj(self, size):
        if size < 0:
            raise AmbientError("negative size")
        return FinSetObj(size)

    def arrows(self, a, b):
        for table in cartesian(range(b.size), repeat=a.size):
            yield Arrow(a, b, table)

    def probe_objects(self, bound):
        return [FinSetObj(k) for k in range(bound + 1)]

    def coproduct_many(self, objs):
        total = sum(o.size for o in objs)
        out = FinSetObj(total)
        injections = []
        offset = 0
        for o in objs:
            injections.append(Arrow(o, out, tuple(range(offset, offset + o.size))))
            offset += o.size
        return out, injections

    def subobject(self, obj, elems):
        elems = tuple(elems)
        if list(elems) != sorted(set(elems)) or any(
            not 0 <= e < obj.size for e in elems
        ):
            raise AmbientError("subobject elements must be sorted and in range")
        return FinSetObj(len(elems)), Arrow(FinSetObj(len(elems)), obj, elems)

    def cocones(self, f, target):
        # h coequalizes the kernel pair of f iff h is constant on fibers
        fibers = {}
        for x in range(f.dom.size):
            fibers.setdefault(f.table[x], []).append(x)
        blocks = [fibers[v] for v in sorted(fibers)]
        for values in cartesian(range(target.size), repeat=len(blocks)):
            table = [0] * f.dom.size
            for block, val in zip(blocks, values):
                for x in block:
                    table[x] = val
            yield Arrow(f.dom, target, tuple(table))

    def count_factorizations(self, f, h, limit=2):
        # g on the image of f is forced; elements off the image are free
        target = h.cod
        forced = {}
        for x in range(f.dom.size):
            v = f.table[x]
            if v in forced and forced[v] != h.table[x]:
                return 0
            forced[v] = h.table[x]
        free = f.cod.size - len(forced)
        n = target.size**free if target.size > 0 or free == 0 else 0
        return min(n, limit)

    def lift(self, f, c):
        # elementwise choice of preimages
        preim = {}
        for x in range(f.dom.size):
            preim.setdefault(f.table[x], x)
        table = []
        for u in range(c.dom.size):
            if c.table[u] not in preim:
                return None
            table.append(preim[c.table[u]])
        return Arrow(c.dom, f.dom, tuple(table))


FINSET = FinSetAmbient()
