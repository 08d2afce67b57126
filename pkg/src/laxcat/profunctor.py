"""Set-valued profunctors between finite categories.

A Profunctor P from C to D assigns a finite set of elements to every pair
(d, c) of a D-object and a C-object, covariantly acted on by D (left
action, pushforward along gamma: d -> d') and contravariantly by C (right
action, pullback along sigma: c -> c').  The hom profunctor of C has
elements(d, c) = Hom_C(c, d), so elements are heteromorphisms from source
objects to target objects.

Composition is the coend formula: (N . M)(e, c) is the disjoint union over
middle objects d of N(e, d) x M(d, c), glued by moving middle morphisms
across the pair in both variances.  Gluing is computed by union-find and
each class is named after its lexicographically least member, so composites
are canonical and reproducible.
"""

import itertools
from dataclasses import dataclass, field

from .errors import CompositionMismatch, InvalidParameter, ShapeMismatch
from .fincat import CatFunctor, FinCategory, opposite
from .report import Report
from .unionfind import UnionFind


@dataclass(eq=True)
class Profunctor:
    source: FinCategory
    target: FinCategory
    elements: dict[tuple[str, str], tuple[str, ...]]
    lact: dict[str, dict[str, str]]
    ract: dict[str, dict[str, str]]
    pair_of: dict[str, tuple[str, str]] = field(
        default=None, repr=False, compare=False)

    def elems(self, d: str, c: str) -> tuple[str, ...]:
        return self.elements[(d, c)]

    def cell_of(self, e: str) -> tuple[str, str]:
        if self.pair_of is None:
            self.pair_of = {e: pair for pair, es in self.elements.items()
                            for e in es}
        return self.pair_of[e]

    def total_size(self) -> int:
        return sum(len(v) for v in self.elements.values())

    def __repr__(self):
        return (f"Profunctor({len(self.source.objects)}-object source, "
                f"{len(self.target.objects)}-object target, "
                f"{self.total_size()} elements)")


def build_profunctor(source: FinCategory, target: FinCategory,
                     elements, lact, ract) -> Profunctor:
    """Normalize, then validate functoriality of both actions in full.

    Missing cells become empty; missing identity-action tables are filled
    in.  Element ids must be globally unique across the whole profunctor so
    the flat action tables are unambiguous.
    """
    cells = {(d, c): tuple(sorted(elements.get((d, c), ())))
             for d in target.objects for c in source.objects}
    for key in elements:
        if key not in cells:
            raise InvalidParameter(f"element cell {key!r} is not a (target, source) pair")

    seen: dict[str, tuple[str, str]] = {}
    for pair, es in cells.items():
        if len(set(es)) != len(es):
            raise InvalidParameter(f"duplicate element id in cell {pair!r}")
        for e in es:
            if e in seen:
                raise InvalidParameter(
                    f"element id {e!r} appears in cells {seen[e]!r} and {pair!r}")
            seen[e] = pair

    lact = {m: dict(t) for m, t in lact.items()}
    ract = {m: dict(t) for m, t in ract.items()}
    for x in target.objects:
        lact.setdefault(target.identity[x], {})
    for x in source.objects:
        ract.setdefault(source.identity[x], {})
    for gamma in target.morphisms:
        table = lact.setdefault(gamma, {})
        if target.is_identity(gamma):
            for c in source.objects:
                for e in cells[(target.src[gamma], c)]:
                    table.setdefault(e, e)
    for sigma in source.morphisms:
        table = ract.setdefault(sigma, {})
        if source.is_identity(sigma):
            for d in target.objects:
                for e in cells[(d, source.dst[sigma])]:
                    table.setdefault(e, e)

    P = Profunctor(source, target, cells, lact, ract)
    _validate_profunctor(P)
    return P


def _validate_profunctor(P: Profunctor) -> None:
    C, D = P.source, P.target
    if set(P.lact) != set(D.morphisms):
        raise InvalidParameter("left action keyed off the target morphisms")
    if set(P.ract) != set(C.morphisms):
        raise InvalidParameter("right action keyed off the source morphisms")

    for gamma in D.morphisms:
        d, d2 = D.src[gamma], D.dst[gamma]
        table = P.lact[gamma]
        domain = {e for c in C.objects for e in P.elements[(d, c)]}
        if set(table) != domain:
            raise InvalidParameter(f"left action of {gamma!r} has wrong domain")
        for c in C.objects:
            for e in P.elements[(d, c)]:
                if table[e] not in P.elements[(d2, c)]:
                    raise InvalidParameter(
                        f"left action of {gamma!r} sends {e!r} outside cell "
                        f"({d2!r}, {c!r})")
    for sigma in C.morphisms:
        c, c2 = C.src[sigma], C.dst[sigma]
        table = P.ract[sigma]
        domain = {e for d in D.objects for e in P.elements[(d, c2)]}
        if set(table) != domain:
            raise InvalidParameter(f"right action of {sigma!r} has wrong domain")
        for d in D.objects:
            for e in P.elements[(d, c2)]:
                if table[e] not in P.elements[(d, c)]:
                    raise InvalidParameter(
                        f"right action of {sigma!r} sends {e!r} outside cell "
                        f"({d!r}, {c!r})")

    # identities act trivially
    for x in D.objects:
        for e, img in P.lact[D.identity[x]].items():
            if img != e:
                raise InvalidParameter(f"identity left action moves {e!r}")
    for x in C.objects:
        for e, img in P.ract[C.identity[x]].items():
            if img != e:
                raise InvalidParameter(f"identity right action moves {e!r}")

    # actions are functorial: composite morphisms act as composites
    for g, f in D.composable_pairs():
        gf = D.comp[(g, f)]
        for e in P.lact[f]:
            if P.lact[gf][e] != P.lact[g][P.lact[f][e]]:
                raise InvalidParameter(
                    f"left action not functorial on ({g!r}, {f!r}) at {e!r}")
    for g, f in C.composable_pairs():
        gf = C.comp[(g, f)]
        for e in P.ract[gf]:
            if P.ract[gf][e] != P.ract[f][P.ract[g][e]]:
                raise InvalidParameter(
                    f"right action not functorial on ({g!r}, {f!r}) at {e!r}")

    # the two actions commute
    for gamma in D.morphisms:
        for sigma in C.morphisms:
            c2 = C.dst[sigma]
            for e in P.elements[(D.src[gamma], c2)]:
                if P.ract[sigma][P.lact[gamma][e]] != P.lact[gamma][P.ract[sigma][e]]:
                    raise InvalidParameter(
                        f"actions of {gamma!r} and {sigma!r} do not commute at {e!r}")


def empty_profunctor(source: FinCategory, target: FinCategory) -> Profunctor:
    return build_profunctor(source, target, {}, {}, {})


def hom_profunctor(C: FinCategory) -> Profunctor:
    """Hom as a profunctor from C to C: elements(d, c) = Hom_C(c, d).

    Left action is postcomposition, right action is precomposition; element
    ids are the morphism ids themselves.
    """
    elements = {(d, c): C.hom(c, d) for d in C.objects for c in C.objects}
    lact = {g: {f: C.comp[(g, f)] for f in C.morphisms
                if C.dst[f] == C.src[g]}
            for g in C.morphisms}
    ract = {s: {f: C.comp[(f, s)] for f in C.morphisms
                if C.src[f] == C.dst[s]}
            for s in C.morphisms}
    return build_profunctor(C, C, elements, lact, ract)


def from_functor(F: CatFunctor) -> Profunctor:
    """The representable profunctor of a functor F: C -> D.

    elements(d, c) = Hom_D(F c, d); ids are tagged 'h@c' because the same
    D-morphism can represent against several C-objects.
    """
    C, D = F.source, F.target
    elements = {}
    for d in D.objects:
        for c in C.objects:
            elements[(d, c)] = tuple(f"{h}@{c}" for h in D.hom(F.obmap[c], d))
    lact = {}
    for g in D.morphisms:
        table = {}
        for c in C.objects:
            for h in D.hom(F.obmap[c], D.src[g]):
                table[f"{h}@{c}"] = f"{D.comp[(g, h)]}@{c}"
        lact[g] = table
    ract = {}
    for s in C.morphisms:
        table = {}
        c, c2 = C.src[s], C.dst[s]
        for d in D.objects:
            for h in D.hom(F.obmap[c2], d):
                table[f"{h}@{c2}"] = f"{D.comp[(h, F.mormap[s])]}@{c}"
        ract[s] = table
    return build_profunctor(C, D, elements, lact, ract)


def opposite_profunctor(P: Profunctor) -> Profunctor:
    """Swap the two legs: a profunctor from D^op to C^op with the actions
    exchanged.  Applying it twice gives back P on the nose; together with
    opposite() on categories it converts between the lax and oplax
    orientations of every gluing construction."""
    Cop, Dop = opposite(P.source), opposite(P.target)
    elements = {(c, d): P.elements[(d, c)]
                for (d, c) in P.elements}
    return build_profunctor(Dop, Cop, elements,
                            {m: dict(t) for m, t in P.ract.items()},
                            {m: dict(t) for m, t in P.lact.items()})


# -- transformations ----------------------------------------------------------

@dataclass(eq=True)
class ProTransformation:
    source: Profunctor
    target: Profunctor
    components: dict[tuple[str, str], dict[str, str]]

    def apply(self, e: str) -> str:
        return self.components[self.source.cell_of(e)][e]


def build_protransformation(source: Profunctor, target: Profunctor,
                            components) -> ProTransformation:
    """Validate totality, typing, and naturality against both actions."""
    if source.source != target.source or source.target != target.target:
        raise ShapeMismatch("transformation endpoints do not match")
    comps = {pair: dict(components.get(pair, {})) for pair in source.elements}
    for pair in components:
        if pair not in comps:
            raise InvalidParameter(f"component at unknown cell {pair!r}")
    for pair, es in source.elements.items():
        table = comps[pair]
        if set(table) != set(es):
            raise InvalidParameter(f"component at {pair!r} has wrong domain")
        for e in es:
            if table[e] not in target.elements[pair]:
                raise InvalidParameter(
                    f"component at {pair!r} sends {e!r} outside the target cell")
    t = ProTransformation(source, target, comps)
    rep = naturality_report(t)
    if not rep.ok:
        raise InvalidParameter("; ".join(rep.failures))
    return t


def naturality_report(t: ProTransformation) -> Report:
    rep = Report()
    M, M2 = t.source, t.target
    C, D = M.source, M.target
    for gamma in D.morphisms:
        d, d2 = D.src[gamma], D.dst[gamma]
        for c in C.objects:
            for e in M.elements[(d, c)]:
                lhs = t.components[(d2, c)][M.lact[gamma][e]]
                rhs = M2.lact[gamma][t.components[(d, c)][e]]
                if lhs != rhs:
                    rep.fail(f"naturality fails against {gamma!r} at {e!r}")
    for sigma in C.morphisms:
        c, c2 = C.src[sigma], C.dst[sigma]
        for d in D.objects:
            for e in M.elements[(d, c2)]:
                lhs = t.components[(d, c)][M.ract[sigma][e]]
                rhs = M2.ract[sigma][t.components[(d, c2)][e]]
                if lhs != rhs:
                    rep.fail(f"naturality fails against {sigma!r} at {e!r}")
    return rep


def is_natural_iso(t: ProTransformation) -> Report:
    """Naturality plus bijectivity of every component."""
    rep = naturality_report(t)
    for pair, table in t.components.items():
        image = set(table.values())
        if len(image) != len(table):
            rep.fail(f"component at {pair!r} is not injective")
        if image != set(t.target.elements[pair]):
            rep.fail(f"component at {pair!r} is not surjective")
    return rep


def identity_transformation(M: Profunctor) -> ProTransformation:
    return build_protransformation(
        M, M, {pair: {e: e for e in es} for pair, es in M.elements.items()})


def compose_transformations(b: ProTransformation, a: ProTransformation) -> ProTransformation:
    if a.target != b.source:
        raise ShapeMismatch("transformation composition endpoints do not match")
    return build_protransformation(
        a.source, b.target,
        {pair: {e: b.components[pair][a.components[pair][e]]
                for e in a.components[pair]}
         for pair in a.components})


# -- coend composition --------------------------------------------------------

def _composite_id(d: str, n: str, m: str) -> str:
    return f"({n}*{m}@{d})"


@dataclass
class CoendComposite:
    """A composite profunctor together with its gluing data.

    class_of maps each generator triple (middle object, left element,
    right element) to the id of its class; rep_of recovers the least
    generator of each class.
    """
    profunctor: Profunctor
    class_of: dict[tuple[str, str, str], str]
    rep_of: dict[str, tuple[str, str, str]]


def compose_with_pairing(N: Profunctor, M: Profunctor) -> CoendComposite:
    """Coend composite of N after M, with the generator-to-class maps.

    Generators at (e, c) are triples (d, n, m) with n in N(e, d) and
    m in M(d, c); for every middle morphism gamma: d -> d', pulling n back
    and pushing m forward land in the same class:

        (d, N.ract[gamma](n'), m)  ~  (d', n', M.lact[gamma](m))

    for n' in N(e, d') and m in M(d, c).
    """
    if M.target != N.source:
        raise CompositionMismatch(
            "middle categories differ: target of the right factor must "
            "equal source of the left factor")
    C, D, E = M.source, M.target, N.target

    moving = [g for g in D.morphisms if not D.is_identity(g)]
    class_of: dict[tuple[str, str, str], str] = {}
    rep_of: dict[str, tuple[str, str, str]] = {}
    elements: dict[tuple[str, str], tuple[str, ...]] = {}

    for e in E.objects:
        for c in C.objects:
            gens = [(d, n, m) for d in D.objects
                    for n in N.elements[(e, d)]
                    for m in M.elements[(d, c)]]
            uf = UnionFind(gens)
            for gamma in moving:
                d, d2 = D.src[gamma], D.dst[gamma]
                for n2 in N.elements[(e, d2)]:
                    for m in M.elements[(d, c)]:
                        uf.union((d, N.ract[gamma][n2], m),
                                 (d2, n2, M.lact[gamma][m]))
            ids = []
            for rep, members in sorted(uf.classes().items()):
                cid = _composite_id(*rep)
                ids.append(cid)
                rep_of[cid] = rep
                for g in members:
                    class_of[g] = cid
            elements[(e, c)] = tuple(sorted(ids))

    lact = {}
    for eps in E.morphisms:
        e, e2 = E.src[eps], E.dst[eps]
        table = {}
        for c in C.objects:
            for cid in elements[(e, c)]:
                d, n, m = rep_of[cid]
                table[cid] = class_of[(d, N.lact[eps][n], m)]
        lact[eps] = table
    ract = {}
    for sigma in C.morphisms:
        c, c2 = C.src[sigma], C.dst[sigma]
        table = {}
        for e in E.objects:
            for cid in elements[(e, c2)]:
                d, n, m = rep_of[cid]
                table[cid] = class_of[(d, n, M.ract[sigma][m])]
        ract[sigma] = table

    # full validation doubles as a well-definedness check for the actions
    P = build_profunctor(C, E, elements, lact, ract)
    _check_action_well_defined(P, N, M, class_of)
    return CoendComposite(P, class_of, rep_of)


def _check_action_well_defined(P, N, M, class_of) -> None:
    """Outer actions computed from any generator must agree classwise."""
    E, C, D = N.target, M.source, M.target
    for (d, n, m), cid in class_of.items():
        e = N.cell_of(n)[0]
        c = M.cell_of(m)[1]
        for eps in E.morphisms:
            if E.src[eps] != e:
                continue
            if class_of[(d, N.lact[eps][n], m)] != P.lact[eps][cid]:
                raise CompositionMismatch(
                    f"outer left action ill-defined at generator ({d!r}, {n!r}, {m!r})")
        for sigma in C.morphisms:
            if C.dst[sigma] != c:
                continue
            if class_of[(d, n, M.ract[sigma][m])] != P.ract[sigma][cid]:
                raise CompositionMismatch(
                    f"outer right action ill-defined at generator ({d!r}, {n!r}, {m!r})")


def compose_profunctors(N: Profunctor, M: Profunctor) -> Profunctor:
    """Coend composite of N after M."""
    return compose_with_pairing(N, M).profunctor


def left_unitor(M: Profunctor) -> ProTransformation:
    """Canonical map hom(target) . M -> M; a natural bijection."""
    comp = compose_with_pairing(hom_profunctor(M.target), M)
    components = {}
    for pair, ids in comp.profunctor.elements.items():
        table = {}
        for cid in ids:
            _, g, m = comp.rep_of[cid]
            table[cid] = M.lact[g][m]
        components[pair] = table
    return build_protransformation(comp.profunctor, M, components)


def right_unitor(M: Profunctor) -> ProTransformation:
    """Canonical map M . hom(source) -> M; a natural bijection."""
    comp = compose_with_pairing(M, hom_profunctor(M.source))
    components = {}
    for pair, ids in comp.profunctor.elements.items():
        table = {}
        for cid in ids:
            _, m, h = comp.rep_of[cid]
            table[cid] = M.ract[h][m]
        components[pair] = table
    return build_protransformation(comp.profunctor, M, components)


def associator(P: Profunctor, N: Profunctor, M: Profunctor) -> ProTransformation:
    """Canonical map (P . N) . M -> P . (N . M), built on representatives."""
    pn = compose_with_pairing(P, N)
    left = compose_with_pairing(pn.profunctor, M)
    nm = compose_with_pairing(N, M)
    right = compose_with_pairing(P, nm.profunctor)

    components = {}
    for pair, ids in left.profunctor.elements.items():
        table = {}
        for cid in ids:
            d, pn_elem, m = left.rep_of[cid]
            e, p, n = pn.rep_of[pn_elem]
            table[cid] = right.class_of[(e, p, nm.class_of[(d, n, m)])]
        components[pair] = table
    return build_protransformation(left.profunctor, right.profunctor, components)


# -- colimits of profunctors --------------------------------------------------

def coproduct(M1: Profunctor, M2: Profunctor) -> Profunctor:
    """Cellwise disjoint union, elements tagged inl:/inr:."""
    if M1.source != M2.source or M1.target != M2.target:
        raise ShapeMismatch("coproduct operands have different endpoints")

    def tag(prefix, table):
        return {f"{prefix}{k}": f"{prefix}{v}" for k, v in table.items()}

    elements = {pair: tuple(sorted(
        [f"inl:{e}" for e in M1.elements[pair]] +
        [f"inr:{e}" for e in M2.elements[pair]]))
        for pair in M1.elements}
    lact = {g: {**tag("inl:", M1.lact[g]), **tag("inr:", M2.lact[g])}
            for g in M1.lact}
    ract = {s: {**tag("inl:", M1.ract[s]), **tag("inr:", M2.ract[s])}
            for s in M1.ract}
    return build_profunctor(M1.source, M1.target, elements, lact, ract)


def coproduct_injections(M1: Profunctor, M2: Profunctor):
    """(coproduct, inl, inr)."""
    S = coproduct(M1, M2)
    inl = build_protransformation(
        M1, S, {pair: {e: f"inl:{e}" for e in es}
                for pair, es in M1.elements.items()})
    inr = build_protransformation(
        M2, S, {pair: {e: f"inr:{e}" for e in es}
                for pair, es in M2.elements.items()})
    return S, inl, inr


def quotient_by_relation(P: Profunctor, pairs):
    """Quotient P by the action-congruence generated by the given pairs.

    pairs is an iterable of (e, e') with both elements in the same cell.
    Returns (quotient, projection).  Classes are named by their least
    member, so quotient ids remain globally unique.
    """
    uf = UnionFind(e for es in P.elements.values() for e in es)
    actions = list(P.lact.values()) + list(P.ract.values())
    queue = []
    for a, b in pairs:
        if P.cell_of(a) != P.cell_of(b):
            raise ShapeMismatch(
                f"cannot relate {a!r} and {b!r}: different cells")
        queue.append((a, b))
    while queue:
        a, b = queue.pop()
        if uf.union(a, b):
            for table in actions:
                if a in table:
                    queue.append((table[a], table[b]))
    least = uf.class_map()

    elements = {pair: tuple(sorted({least[e] for e in es}))
                for pair, es in P.elements.items()}
    lact = {g: {least[e]: least[img] for e, img in table.items()}
            for g, table in P.lact.items()}
    ract = {s: {least[e]: least[img] for e, img in table.items()}
            for s, table in P.ract.items()}
    # well-definedness on every member, not just representatives
    for g, table in P.lact.items():
        for e, img in table.items():
            if lact[g][least[e]] != least[img]:
                raise ShapeMismatch(f"quotient left action ill-defined at {e!r}")
    for s, table in P.ract.items():
        for e, img in table.items():
            if ract[s][least[e]] != least[img]:
                raise ShapeMismatch(f"quotient right action ill-defined at {e!r}")
    Q = build_profunctor(P.source, P.target, elements, lact, ract)
    proj = build_protransformation(
        P, Q, {pair: {e: least[e] for e in es}
               for pair, es in P.elements.items()})
    return Q, proj


def coequalizer(alpha: ProTransformation, beta: ProTransformation):
    """Coequalizer of a parallel pair, with the projection."""
    if alpha.source != beta.source or alpha.target != beta.target:
        raise ShapeMismatch("coequalizer needs a parallel pair")
    M2 = alpha.target
    pairs = [(alpha.components[pair][e], beta.components[pair][e])
             for pair, es in alpha.source.elements.items() for e in es]
    return quotient_by_relation(M2, pairs)


# -- whiskering ---------------------------------------------------------------

def whisker_left(N: Profunctor, a: ProTransformation) -> ProTransformation:
    """N . a : N . M -> N . M' for a: M -> M'."""
    left = compose_with_pairing(N, a.source)
    right = compose_with_pairing(N, a.target)
    components = {}
    for pair, ids in left.profunctor.elements.items():
        table = {}
        for cid in ids:
            d, n, m = left.rep_of[cid]
            table[cid] = right.class_of[(d, n, a.apply(m))]
        components[pair] = table
    return build_protransformation(left.profunctor, right.profunctor, components)


def whisker_right(a: ProTransformation, M: Profunctor) -> ProTransformation:
    """a . M : N . M -> N' . M for a: N -> N'."""
    left = compose_with_pairing(a.source, M)
    right = compose_with_pairing(a.target, M)
    components = {}
    for pair, ids in left.profunctor.elements.items():
        table = {}
        for cid in ids:
            d, n, m = left.rep_of[cid]
            table[cid] = right.class_of[(d, a.apply(n), m)]
        components[pair] = table
    return build_protransformation(left.profunctor, right.profunctor, components)


# -- cocontinuity of composition ----------------------------------------------

def _compare(rep: Report, label: str, t: ProTransformation) -> None:
    sub = is_natural_iso(t)
    rep.merge(sub, prefix=f"{label}: ")


def check_cocontinuity_coproduct(N: Profunctor, M1: Profunctor,
                                 M2: Profunctor, variable: str = "right") -> Report:
    """Canonical map (N.M1) + (N.M2) -> N.(M1+M2) is a natural bijection.

    variable="left" checks the mirror statement (N1+N2).M instead, reading
    the arguments as (M, N1, N2).
    """
    rep = Report()
    try:
        if variable == "right":
            left1 = compose_with_pairing(N, M1)
            left2 = compose_with_pairing(N, M2)
            S, _, _ = coproduct_injections(M1, M2)
            right = compose_with_pairing(N, S)
            L = coproduct(left1.profunctor, left2.profunctor)
            components = {}
            for pair, ids in L.elements.items():
                table = {}
                for cid in ids:
                    tagname, inner = cid.split(":", 1)
                    part = left1 if tagname == "inl" else left2
                    d, n, m = part.rep_of[inner]
                    table[cid] = right.class_of[(d, n, f"{tagname}:{m}")]
                components[pair] = table
            t = build_protransformation(L, right.profunctor, components)
        elif variable == "left":
            M, N1, N2 = N, M1, M2
            left1 = compose_with_pairing(N1, M)
            left2 = compose_with_pairing(N2, M)
            S, _, _ = coproduct_injections(N1, N2)
            right = compose_with_pairing(S, M)
            L = coproduct(left1.profunctor, left2.profunctor)
            components = {}
            for pair, ids in L.elements.items():
                table = {}
                for cid in ids:
                    tagname, inner = cid.split(":", 1)
                    part = left1 if tagname == "inl" else left2
                    d, n, m = part.rep_of[inner]
                    table[cid] = right.class_of[(d, f"{tagname}:{n}", m)]
                components[pair] = table
            t = build_protransformation(L, right.profunctor, components)
        else:
            raise InvalidParameter(f"unknown variable {variable!r}")
        _compare(rep, f"coproduct/{variable}", t)
    except (CompositionMismatch, ShapeMismatch, InvalidParameter) as exc:
        rep.fail(f"coproduct/{variable}: {exc}")
    return rep


def check_cocontinuity_coequalizer(N: Profunctor, alpha: ProTransformation,
                                   beta: ProTransformation,
                                   variable: str = "right") -> Report:
    """Canonical map coeq(N.a, N.b) -> N.coeq(a, b) is a natural bijection.

    For variable="left" the pair lives on the other side and N is the right
    factor.
    """
    rep = Report()
    try:
        Q, q = coequalizer(alpha, beta)
        if variable == "right":
            wa, wb = whisker_left(N, alpha), whisker_left(N, beta)
            CQ, _ = coequalizer(wa, wb)
            target = compose_with_pairing(N, Q)
            src_pairing = compose_with_pairing(N, alpha.target)
            lift = lambda d, n, m: target.class_of[(d, n, q.apply(m))]
        elif variable == "left":
            wa, wb = whisker_right(alpha, N), whisker_right(beta, N)
            CQ, _ = coequalizer(wa, wb)
            target = compose_with_pairing(Q, N)
            src_pairing = compose_with_pairing(alpha.target, N)
            lift = lambda d, n, m: target.class_of[(d, q.apply(n), m)]
        else:
            raise InvalidParameter(f"unknown variable {variable!r}")
        components = {}
        for pair, ids in CQ.elements.items():
            table = {}
            for cid in ids:
                # cid is the least composite element of its quotient class
                d, n, m = src_pairing.rep_of[cid]
                table[cid] = lift(d, n, m)
            components[pair] = table
        t = build_protransformation(CQ, target.profunctor, components)
        _compare(rep, f"coequalizer/{variable}", t)
    except (CompositionMismatch, ShapeMismatch, InvalidParameter) as exc:
        rep.fail(f"coequalizer/{variable}: {exc}")
    return rep


def check_cocontinuity(N: Profunctor, M1: Profunctor, M2: Profunctor) -> Report:
    """Composition preserves coproducts and coequalizers in each variable.

    Coproducts use the given operands directly; the coequalizer instance is
    the canonical fold pair inl, inr: M1 => M1 + M1 (and its mirror), which
    genuinely glues.  A failure here indicates an implementation bug, so
    this doubles as a self-test of the coend machinery.
    """
    rep = Report()
    rep.merge(check_cocontinuity_coproduct(N, M1, M2, "right"))
    rep.merge(check_cocontinuity_coproduct(M1, N, N, "left"))
    _, inl, inr = coproduct_injections(M1, M1)
    rep.merge(check_cocontinuity_coequalizer(N, inl, inr, "right"))
    _, jnl, jnr = coproduct_injections(N, N)
    rep.merge(check_cocontinuity_coequalizer(M1, jnl, jnr, "left"))
    return rep
