"""Finite categories presented by complete composition tables.

Objects and morphisms are opaque strings.  A category is valid only if its
table passes full enumeration of the unit and associativity laws, so every
FinCategory in circulation is a genuine category, not a promise.

>>> C = standard_category("interval")
>>> sorted(C.objects)
['0', '1']
>>> C.compose(C.identity["1"], "u")
'u'
"""

import itertools
from dataclasses import dataclass, field

from .errors import (
    InvalidParameter,
    MissingComposite,
    NonAssociative,
    SearchBoundExceeded,
    UnitLawViolation,
)
from .report import Report

ISO_SEARCH_BOUND = 8


@dataclass(eq=True)
class FinCategory:
    """A finite category: objects, morphisms, identities, total composition.

    comp maps each composable pair (g, f) with dst(f) == src(g) to the
    composite g.f.  Treat instances as immutable once built.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: dict[str, str]
    dst: dict[str, str]
    identity: dict[str, str]
    comp: dict[tuple[str, str], str]
    _homs: dict[tuple[str, str], tuple[str, ...]] = field(
        default=None, repr=False, compare=False)

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        if self._homs is None:
            table: dict[tuple[str, str], list[str]] = {
                (a, b): [] for a in self.objects for b in self.objects}
            for m in self.morphisms:
                table[(self.src[m], self.dst[m])].append(m)
            self._homs = {k: tuple(sorted(v)) for k, v in table.items()}
        return self._homs[(x, y)]

    def compose(self, g: str, f: str) -> str:
        """The composite g.f (first f, then g)."""
        return self.comp[(g, f)]

    def id_of(self, x: str) -> str:
        return self.identity[x]

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self.src[m]) == m

    def composable_pairs(self):
        for f in self.morphisms:
            for g in self.morphisms:
                if self.dst[f] == self.src[g]:
                    yield g, f

    def __repr__(self):
        return (f"FinCategory({len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


def build_category(objects, morphisms, src, dst, identity, comp) -> FinCategory:
    """Assemble and fully validate a finite category.

    morphisms may be any iterable of ids; src/dst/identity/comp as in
    FinCategory.  Raises InvalidParameter for structural malformation,
    MissingComposite / UnitLawViolation / NonAssociative for law failures.
    """
    # canonical sorted storage, so equal tables compare equal
    objects = tuple(sorted(objects))
    morphisms = tuple(sorted(morphisms))
    if len(set(objects)) != len(objects):
        raise InvalidParameter("duplicate object ids")
    if len(set(morphisms)) != len(morphisms):
        raise InvalidParameter("duplicate morphism ids")
    obset, morset = set(objects), set(morphisms)
    for m in morphisms:
        if m not in src or m not in dst:
            raise InvalidParameter(f"morphism {m!r} lacks src or dst")
        if src[m] not in obset or dst[m] not in obset:
            raise InvalidParameter(f"morphism {m!r} has unknown endpoint")
    if set(src) != morset or set(dst) != morset:
        raise InvalidParameter("src/dst defined on unknown morphisms")
    for x in objects:
        if x not in identity:
            raise UnitLawViolation(f"object {x!r} has no identity")
        i = identity[x]
        if i not in morset:
            raise InvalidParameter(f"identity of {x!r} is unknown morphism {i!r}")
        if src[i] != x or dst[i] != x:
            raise UnitLawViolation(f"identity {i!r} of {x!r} is not an endomorphism")
    if set(identity) != obset:
        raise InvalidParameter("identity map defined on unknown objects")

    cat = FinCategory(objects, morphisms, dict(src), dict(dst),
                      dict(identity), dict(comp))

    # composition table is total on composable pairs and nothing else
    for key in cat.comp:
        g, f = key
        if f not in morset or g not in morset:
            raise MissingComposite(f"composition entry {key!r} uses unknown morphism")
        if dst[f] != src[g]:
            raise MissingComposite(f"composition entry {key!r} is not composable")
    for g, f in cat.composable_pairs():
        if (g, f) not in cat.comp:
            raise MissingComposite(f"no composite for ({g!r}, {f!r})")
        gf = cat.comp[(g, f)]
        if gf not in morset:
            raise MissingComposite(f"composite of ({g!r}, {f!r}) is unknown: {gf!r}")
        if src[gf] != src[f] or dst[gf] != dst[g]:
            raise MissingComposite(
                f"composite {gf!r} of ({g!r}, {f!r}) has wrong endpoints")

    # unit laws, by enumeration
    for m in morphisms:
        if cat.comp[(m, identity[src[m]])] != m:
            raise UnitLawViolation(f"{m!r} . id != {m!r}")
        if cat.comp[(identity[dst[m]], m)] != m:
            raise UnitLawViolation(f"id . {m!r} != {m!r}")

    # associativity, by enumeration of composable triples
    for f in morphisms:
        for g in morphisms:
            if dst[f] != src[g]:
                continue
            gf = cat.comp[(g, f)]
            for h in morphisms:
                if dst[g] != src[h]:
                    continue
                if cat.comp[(h, gf)] != cat.comp[(cat.comp[(h, g)], f)]:
                    raise NonAssociative(
                        f"h(gf) != (hg)f for ({h!r}, {g!r}, {f!r})")
    return cat


# -- standard categories ------------------------------------------------------

def from_poset(elements, relation) -> FinCategory:
    """The category of a finite poset.

    relation is an iterable of (x, y) pairs meaning x <= y; its
    reflexive-transitive closure must be antisymmetric.  Morphism ids are
    'x<=y'.
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise InvalidParameter("duplicate poset elements")
    below = {x: {x} for x in elements}
    for x, y in relation:
        if x not in below or y not in below:
            raise InvalidParameter(f"relation pair ({x!r}, {y!r}) off the carrier")
        below[x].add(y)
    # transitive closure
    changed = True
    while changed:
        changed = False
        for x in elements:
            extra = set()
            for y in below[x]:
                extra |= below[y]
            if not extra <= below[x]:
                below[x] |= extra
                changed = True
    for x in elements:
        for y in below[x]:
            if x != y and x in below[y]:
                raise InvalidParameter(f"relation is not antisymmetric at ({x!r}, {y!r})")

    morphisms = []
    src, dst = {}, {}
    for x in elements:
        for y in sorted(below[x]):
            m = f"{x}<={y}"
            morphisms.append(m)
            src[m], dst[m] = x, y
    identity = {x: f"{x}<={x}" for x in elements}
    comp = {}
    for f in morphisms:
        for g in morphisms:
            if dst[f] == src[g]:
                comp[(g, f)] = f"{src[f]}<={dst[g]}"
    return build_category(elements, sorted(morphisms), src, dst, identity, comp)


def standard_category(kind: str, *args) -> FinCategory:
    """Stock categories: discrete n, interval, poset, simplex n.

    >>> standard_category("discrete", 3).morphisms
    ('id_0', 'id_1', 'id_2')
    >>> len(standard_category("simplex", 2).morphisms)
    6
    """
    if kind == "discrete":
        if len(args) != 1 or not isinstance(args[0], int) or args[0] < 0:
            raise InvalidParameter("discrete expects a nonnegative object count")
        n = args[0]
        objects = tuple(str(i) for i in range(n))
        morphisms = tuple(f"id_{i}" for i in range(n))
        src = {f"id_{i}": str(i) for i in range(n)}
        identity = {str(i): f"id_{i}" for i in range(n)}
        comp = {(m, m): m for m in morphisms}
        return build_category(objects, morphisms, src, dict(src), identity, comp)
    if kind == "interval":
        if args:
            raise InvalidParameter("interval takes no arguments")
        src = {"id_0": "0", "id_1": "1", "u": "0"}
        dst = {"id_0": "0", "id_1": "1", "u": "1"}
        comp = {("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
                ("u", "id_0"): "u", ("id_1", "u"): "u"}
        return build_category(("0", "1"), ("id_0", "id_1", "u"), src, dst,
                              {"0": "id_0", "1": "id_1"}, comp)
    if kind == "poset":
        if len(args) != 2:
            raise InvalidParameter("poset expects (elements, relation)")
        return from_poset(args[0], args[1])
    if kind == "simplex":
        if len(args) != 1 or not isinstance(args[0], int) or args[0] < 0:
            raise InvalidParameter("simplex expects a nonnegative dimension")
        n = args[0]
        elems = [str(i) for i in range(n + 1)]
        rel = [(str(i), str(j)) for i in range(n + 1) for j in range(i, n + 1)]
        return from_poset(elems, rel)
    raise InvalidParameter(f"unknown standard category kind {kind!r}")


def product(C: FinCategory, D: FinCategory) -> FinCategory:
    """Product category; objects '(x,y)', morphisms '(f,g)' componentwise."""
    objects = tuple(f"({x},{y})" for x in C.objects for y in D.objects)
    morphisms = []
    src, dst = {}, {}
    for f in C.morphisms:
        for g in D.morphisms:
            m = f"({f},{g})"
            morphisms.append(m)
            src[m] = f"({C.src[f]},{D.src[g]})"
            dst[m] = f"({C.dst[f]},{D.dst[g]})"
    identity = {f"({x},{y})": f"({C.identity[x]},{D.identity[y]})"
                for x in C.objects for y in D.objects}
    comp = {}
    for (f1, g1) in itertools.product(C.morphisms, D.morphisms):
        for (f2, g2) in itertools.product(C.morphisms, D.morphisms):
            if C.dst[f2] == C.src[f1] and D.dst[g2] == D.src[g1]:
                comp[(f"({f1},{g1})", f"({f2},{g2})")] = (
                    f"({C.comp[(f1, f2)]},{D.comp[(g1, g2)]})")
    return build_category(objects, tuple(morphisms), src, dst, identity, comp)


def opposite(C: FinCategory) -> FinCategory:
    """Reverse all arrows, keeping every id string; an involution on the nose."""
    comp = {(f, g): h for (g, f), h in C.comp.items()}
    return build_category(C.objects, C.morphisms, dict(C.dst), dict(C.src),
                          dict(C.identity), comp)


# -- functors -----------------------------------------------------------------

@dataclass(eq=True)
class CatFunctor:
    source: FinCategory
    target: FinCategory
    obmap: dict[str, str]
    mormap: dict[str, str]

    def on_ob(self, x: str) -> str:
        return self.obmap[x]

    def on_mor(self, m: str) -> str:
        return self.mormap[m]

    def __repr__(self):
        return f"CatFunctor({self.source!r} -> {self.target!r})"


def identity_functor(C: FinCategory) -> CatFunctor:
    return CatFunctor(C, C, {x: x for x in C.objects},
                      {m: m for m in C.morphisms})


def compose_functors(G: CatFunctor, F: CatFunctor) -> CatFunctor:
    """G after F."""
    if F.target != G.source:
        raise InvalidParameter("functor composition endpoints do not match")
    return CatFunctor(F.source, G.target,
                      {x: G.obmap[F.obmap[x]] for x in F.source.objects},
                      {m: G.mormap[F.mormap[m]] for m in F.source.morphisms})


def validate_functor(F: CatFunctor) -> Report:
    """Every violated preservation equation, one failure line each."""
    rep = Report()
    C, D = F.source, F.target
    for x in C.objects:
        if F.obmap.get(x) not in set(D.objects):
            rep.fail(f"object {x!r} maps outside the target")
    for m in C.morphisms:
        fm = F.mormap.get(m)
        if fm not in set(D.morphisms):
            rep.fail(f"morphism {m!r} maps outside the target")
            continue
        if D.src[fm] != F.obmap.get(C.src[m]) or D.dst[fm] != F.obmap.get(C.dst[m]):
            rep.fail(f"morphism {m!r}: image endpoints disagree with object map")
    if rep.ok:
        for x in C.objects:
            if F.mormap[C.identity[x]] != D.identity[F.obmap[x]]:
                rep.fail(f"identity of {x!r} not preserved")
        for g, f in C.composable_pairs():
            if F.mormap[C.comp[(g, f)]] != D.comp[(F.mormap[g], F.mormap[f])]:
                rep.fail(f"composition not preserved on ({g!r}, {f!r})")
    return rep


def functor_is_valid(F: CatFunctor) -> bool:
    return validate_functor(F).ok


def enumerate_functors(C: FinCategory, D: FinCategory, limit: int = 100000):
    """Yield every functor C -> D in a deterministic order.

    Backtracking over object assignments, then over morphism images hom-set
    by hom-set, pruning on composition as soon as both factors are placed.
    Desk-scale categories only.
    """
    nonid = [m for m in sorted(C.morphisms) if not C.is_identity(m)]
    count = 0

    def extend(obmap):
        nonlocal count
        mormap = {C.identity[x]: D.identity[obmap[x]] for x in C.objects}

        def assign(i):
            nonlocal count
            if count >= limit:
                return
            if i == len(nonid):
                count += 1
                yield CatFunctor(C, D, dict(obmap), dict(mormap))
                return
            m = nonid[i]
            for image in D.hom(obmap[C.src[m]], obmap[C.dst[m]]):
                mormap[m] = image
                ok = True
                for g, f in C.composable_pairs():
                    if g in mormap and f in mormap and C.comp[(g, f)] in mormap:
                        if mormap[C.comp[(g, f)]] != D.comp[(mormap[g], mormap[f])]:
                            ok = False
                            break
                if ok:
                    yield from assign(i + 1)
                del mormap[m]

        yield from assign(0)

    if not C.objects:
        yield CatFunctor(C, D, {}, {})
        return
    if not D.objects:
        return
    for images in itertools.product(sorted(D.objects), repeat=len(C.objects)):
        obmap = dict(zip(sorted(C.objects), images))
        yield from extend(obmap)


def find_isomorphism(C: FinCategory, D: FinCategory,
                     bound: int = ISO_SEARCH_BOUND):
    """Search for an isomorphism of categories; None if there is none.

    Exhaustive over object bijections, then hom-set bijections with
    composition pruning.  Raises SearchBoundExceeded past the object bound.
    """
    if len(C.objects) > bound or len(D.objects) > bound:
        raise SearchBoundExceeded(
            f"isomorphism search bound {bound} exceeded "
            f"({len(C.objects)} vs {len(D.objects)} objects)")
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None

    cobs = sorted(C.objects)

    def hom_profile(cat, x, obs):
        return sorted((len(cat.hom(x, y)), len(cat.hom(y, x))) for y in obs)

    for perm in itertools.permutations(sorted(D.objects)):
        obmap = dict(zip(cobs, perm))
        if any(len(C.hom(x, y)) != len(D.hom(obmap[x], obmap[y]))
               for x in cobs for y in cobs):
            continue
        # hom-set by hom-set bijections with composition pruning
        hom_keys = [(x, y) for x in cobs for y in sorted(C.objects)
                    if C.hom(x, y)]
        mormap: dict[str, str] = {}

        def place(i):
            if i == len(hom_keys):
                F = CatFunctor(C, D, dict(obmap), dict(mormap))
                if validate_functor(F).ok and len(set(mormap.values())) == len(mormap):
                    return F
                return None
            x, y = hom_keys[i]
            source_hom = C.hom(x, y)
            for image in itertools.permutations(D.hom(obmap[x], obmap[y])):
                for m, fm in zip(source_hom, image):
                    mormap[m] = fm
                ok = all(
                    mormap[C.comp[(g, f)]] == D.comp[(mormap[g], mormap[f])]
                    for g, f in C.composable_pairs()
                    if g in mormap and f in mormap and C.comp[(g, f)] in mormap)
                if ok:
                    found = place(i + 1)
                    if found is not None:
                        return found
                for m in source_hom:
                    del mormap[m]
            return None

        F = place(0)
        if F is not None:
            return F
    return None
