"""Command line front end.

Inputs are JSON files: either paths ending in .json or bare names looked
up as NAME.json inside --workspace.  Every command writes a single JSON
document (stdout by default, --out FILE otherwise) produced with sorted
keys and fixed indentation, so equal inputs give byte-equal outputs.

Exit codes: 0 success, 1 a checked property failed, 2 invalid input or
usage, 3 an input breached the size caps.
"""

import argparse
import json
import sys
from pathlib import Path

from .collage import (Diagram, block_multiply, check_absoluteness,
                      check_bilimit_roundtrip, check_semiorthogonal,
                      collage_of_profunctor, grothendieck,
                      identity_block_decomposition, restrict_matrix)
from .decat import (check_discrete_multiplication, check_lax_multiplicativity,
                    check_multiplicativity)
from .errors import CapExceeded, LaxcatError, SchemaError
from .fincat import FinCategory, standard_category
from .jsonio import (LOADERS, chainmap_to_json, collage_to_json,
                     complex_to_json, dumps_canonical, homology_to_json,
                     profunctor_to_json, sniff_kind, snf_to_json)
from .k0chain import (ChainComplex, ChainMap, cone, hom_complex, homology_all,
                      is_acyclic, is_quasi_iso, smith_normal_form, tot)
from .profunctor import (Profunctor, associator, check_cocontinuity,
                         compose_profunctors, hom_profunctor, is_natural_iso,
                         left_unitor, right_unitor)
from .rand import (rand_category, rand_diagram, rand_profunctor,
                   rng_from_seed)
from .report import Report

RANK_CAP = 32
DEGREE_CAP = 16


# -- caps -----------------------------------------------------------------------

def _cap_category(C: FinCategory, caps, label: str):
    if len(C.objects) > caps["objects"]:
        raise CapExceeded(f"{label}: {len(C.objects)} objects exceed "
                          f"the cap of {caps['objects']}")


def enforce_caps(obj, caps, label: str):
    if isinstance(obj, FinCategory):
        _cap_category(obj, caps, label)
    elif isinstance(obj, Profunctor):
        _cap_category(obj.source, caps, f"{label}: source")
        _cap_category(obj.target, caps, f"{label}: target")
        for (d, c), es in obj.elements.items():
            if len(es) > caps["elements"]:
                raise CapExceeded(f"{label}: cell ({d}, {c}) holds {len(es)} "
                                  f"elements, cap is {caps['elements']}")
    elif isinstance(obj, Diagram):
        _cap_category(obj.shape, caps, f"{label}: shape")
        for s, F in obj.fiber.items():
            _cap_category(F, caps, f"{label}: fiber over {s}")
    elif isinstance(obj, ChainComplex):
        if obj.ranks:
            lo, hi = obj.window
            if hi - lo + 1 > DEGREE_CAP:
                raise CapExceeded(f"{label}: window spans {hi - lo + 1} "
                                  f"degrees, cap is {DEGREE_CAP}")
        for n, r in obj.ranks.items():
            if r > RANK_CAP:
                raise CapExceeded(f"{label}: rank {r} in degree {n} "
                                  f"exceeds the cap of {RANK_CAP}")
    elif isinstance(obj, ChainMap):
        enforce_caps(obj.source, caps, f"{label}: source")
        enforce_caps(obj.target, caps, f"{label}: target")
    elif isinstance(obj, tuple) and len(obj) == 2:
        complexes, maps = obj
        for i, cx in enumerate(complexes):
            enforce_caps(cx, caps, f"{label}: complex {i}")


# -- workspace -------------------------------------------------------------------

class Workspace:
    """Resolves names and paths against a directory of JSON files."""

    def __init__(self, root, caps):
        self.root = Path(root) if root else None
        self.caps = caps
        self._cache = {}

    def resolve(self, ref, kind):
        if isinstance(ref, (dict, list)):
            obj = LOADERS[kind](ref, self.resolve)
            enforce_caps(obj, self.caps, f"inline {kind}")
            return obj
        if not isinstance(ref, str):
            raise SchemaError(f"expected a name or inline {kind}, got {ref!r}")
        key = (ref, kind)
        if key in self._cache:
            return self._cache[key]
        if ref.endswith(".json"):
            path = Path(ref)
        elif self.root is not None:
            path = self.root / f"{ref}.json"
        else:
            raise SchemaError(f"name {ref!r} needs --workspace to resolve")
        if not path.is_file():
            raise SchemaError(f"no such input: {path}")
        data = json.loads(path.read_text())
        actual = sniff_kind(data)
        if actual != kind:
            raise SchemaError(f"{ref!r} holds a {actual}, expected a {kind}")
        obj = LOADERS[kind](data, self.resolve)
        enforce_caps(obj, self.caps, ref)
        self._cache[key] = obj
        return obj


# -- commands ---------------------------------------------------------------------

def cmd_compose(args, ws):
    N = ws.resolve(args.outer, "profunctor")
    M = ws.resolve(args.inner, "profunctor")
    return profunctor_to_json(compose_profunctors(N, M)), 0


def cmd_collage(args, ws):
    P = ws.resolve(args.profunctor, "profunctor")
    return collage_to_json(collage_of_profunctor(P)), 0


def cmd_grothendieck(args, ws):
    X = ws.resolve(args.diagram, "diagram")
    return collage_to_json(grothendieck(X)), 0


def cmd_blockmul(args, ws):
    X = ws.resolve(args.middle, "diagram")
    N = ws.resolve(args.outer, "profunctor")
    M = ws.resolve(args.inner, "profunctor")
    G = grothendieck(X)
    Ndata = restrict_matrix(N, G, "source")
    Mdata = restrict_matrix(M, G, "target")
    return profunctor_to_json(block_multiply(Ndata, Mdata).profunctor), 0


def cmd_cone(args, ws):
    f = ws.resolve(args.chainmap, "chainmap")
    mc = cone(f)
    return {"complex": complex_to_json(mc.complex),
            "inclusion": chainmap_to_json(mc.inclusion),
            "projection": chainmap_to_json(mc.projection)}, 0


def cmd_hom_complex(args, ws):
    A = ws.resolve(args.source, "complex")
    B = ws.resolve(args.target, "complex")
    return complex_to_json(hom_complex(A, B)), 0


def cmd_tot(args, ws):
    complexes, maps = ws.resolve(args.tower, "tower")
    return complex_to_json(tot(complexes, maps)), 0


def cmd_homology(args, ws):
    C = ws.resolve(args.complex, "complex")
    return homology_to_json(homology_all(C)), 0


def cmd_quasi_iso(args, ws):
    f = ws.resolve(args.chainmap, "chainmap")
    direct = is_quasi_iso(f)
    via_cone = is_acyclic(cone(f).complex)
    assert direct == via_cone, "the two quasi-isomorphism routes disagree"
    return {"quasi_iso": direct, "cone_acyclic": via_cone}, 0


def cmd_snf(args, ws):
    m = ws.resolve(args.matrix, "matrix")
    dec = smith_normal_form(m)
    rep = dec.verify()
    assert rep.ok, f"decomposition failed self-verification: {rep.failures}"
    return snf_to_json(dec), 0


# -- property checks ---------------------------------------------------------------

CHECK_REF_KINDS = {
    "bilimit-roundtrip": ("diagram", "category", "profunctor"),
    "absoluteness": ("diagram", "category"),
    "cocontinuity": ("profunctor", "profunctor", "profunctor"),
    "semiorthogonal": ("profunctor",),
    "discrete-multiplication": ("profunctor", "profunctor"),
    "multiplicativity": ("profunctor", "profunctor"),
    "lax-multiplicativity": ("profunctor", "profunctor"),
    "monoid-laws": ("category",),
}


def _check_monoid_laws(C: FinCategory) -> Report:
    H = hom_profunctor(C)
    rep = Report()
    rep.merge(is_natural_iso(left_unitor(H)), "left unitor")
    rep.merge(is_natural_iso(right_unitor(H)), "right unitor")
    rep.merge(is_natural_iso(associator(H, H, H)), "associator")
    return rep


def _check_semiorthogonal(P: Profunctor) -> Report:
    G = collage_of_profunctor(P)
    rep = check_semiorthogonal(G)
    rep.merge(identity_block_decomposition(G)[0], "blocks")
    return rep


def _run_check_refs(prop: str, refs, ws) -> Report:
    kinds = CHECK_REF_KINDS[prop]
    loaded = [ws.resolve(ref, kind) for ref, kind in zip(refs, kinds)]
    if prop == "bilimit-roundtrip":
        X, T, M = loaded
        return check_bilimit_roundtrip(X, T, M)
    if prop == "absoluteness":
        return check_absoluteness(*loaded)
    if prop == "cocontinuity":
        return check_cocontinuity(*loaded)
    if prop == "semiorthogonal":
        return _check_semiorthogonal(loaded[0])
    if prop == "discrete-multiplication":
        return check_discrete_multiplication(*loaded)
    if prop == "multiplicativity":
        return check_multiplicativity(*loaded)
    if prop == "lax-multiplicativity":
        return check_lax_multiplicativity(*loaded)
    return _check_monoid_laws(loaded[0])


def _run_check_random(prop: str, rng, caps) -> Report:
    obs = min(caps["objects"], 4)
    cell = caps["elements"]
    if prop == "bilimit-roundtrip":
        X = rand_diagram(rng, max_fiber_objects=2)
        G = grothendieck(X)
        T = rand_category(rng, min(obs, 2))
        if rng.random() < 0.5:
            M = rand_profunctor(rng, G.total, T, cell)
        else:
            M = rand_profunctor(rng, T, G.total, cell)
        return check_bilimit_roundtrip(X, T, M)
    if prop == "absoluteness":
        return check_absoluteness(rand_diagram(rng, max_fiber_objects=2),
                                  rand_category(rng, min(obs, 3)))
    if prop == "cocontinuity":
        C, D, E = (rand_category(rng, 3) for _ in range(3))
        N = rand_profunctor(rng, D, E, cell)
        M1 = rand_profunctor(rng, C, D, cell)
        M2 = rand_profunctor(rng, C, D, cell)
        return check_cocontinuity(N, M1, M2)
    if prop == "semiorthogonal":
        C, D = rand_category(rng, obs), rand_category(rng, obs)
        return _check_semiorthogonal(rand_profunctor(rng, C, D, cell))
    if prop in ("discrete-multiplication", "multiplicativity"):
        sizes = [rng.randint(1, 3) for _ in range(3)]
        C, D, E = (standard_category("discrete", s) for s in sizes)
        N = rand_profunctor(rng, D, E, cell)
        M = rand_profunctor(rng, C, D, cell)
        if prop == "discrete-multiplication":
            return check_discrete_multiplication(N, M)
        return check_multiplicativity(N, M)
    if prop == "lax-multiplicativity":
        C, D, E = (rand_category(rng, 3) for _ in range(3))
        N = rand_profunctor(rng, D, E, cell)
        M = rand_profunctor(rng, C, D, cell)
        return check_lax_multiplicativity(N, M)
    return _check_monoid_laws(rand_category(rng, obs))


def cmd_check(args, ws):
    prop = args.property
    failures = []
    if args.randomized:
        rng = rng_from_seed(args.seed)
        trials = args.count
        for i in range(trials):
            rep = _run_check_random(prop, rng, ws.caps)
            failures.extend(f"trial {i}: {msg}" for msg in rep.failures)
    else:
        kinds = CHECK_REF_KINDS[prop]
        if len(args.refs) != len(kinds):
            raise SchemaError(
                f"check {prop} expects {len(kinds)} inputs "
                f"({', '.join(kinds)}), got {len(args.refs)}")
        trials = 1
        failures = _run_check_refs(prop, args.refs, ws).failures
    doc = {"property": prop, "trials": trials,
           "ok": not failures, "failures": failures}
    return doc, (0 if not failures else 1)


# -- wiring -----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="laxcat",
        description="finite categories, set profunctors, collages, and "
                    "integer chain complexes, over JSON files")
    p.add_argument("--workspace", metavar="DIR",
                   help="directory holding NAME.json inputs")
    p.add_argument("--out", metavar="FILE",
                   help="write the result here instead of stdout")
    p.add_argument("--max-objects", type=int, default=6,
                   help="cap on objects per input category")
    p.add_argument("--max-elements", type=int, default=8,
                   help="cap on elements per profunctor cell")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compose", help="coend composite, outer after inner")
    s.add_argument("outer")
    s.add_argument("inner")

    s = sub.add_parser("collage", help="collage category of a profunctor")
    s.add_argument("profunctor")

    s = sub.add_parser("grothendieck", help="total category of a diagram")
    s.add_argument("diagram")

    s = sub.add_parser("blockmul",
                       help="composite via blockwise gluing over a collage")
    s.add_argument("outer")
    s.add_argument("inner")
    s.add_argument("--middle", required=True, metavar="DIAGRAM",
                   help="diagram whose total category is the middle leg")

    s = sub.add_parser("cone", help="mapping cone of a chain map")
    s.add_argument("chainmap")

    s = sub.add_parser("hom-complex", help="complex of graded maps")
    s.add_argument("source")
    s.add_argument("target")

    s = sub.add_parser("tot", help="total complex of a tower")
    s.add_argument("tower")

    s = sub.add_parser("homology", help="homology groups of a complex")
    s.add_argument("complex")

    s = sub.add_parser("quasi-iso",
                       help="decide quasi-isomorphism, both routes")
    s.add_argument("chainmap")

    s = sub.add_parser("snf", help="Smith normal form with transforms")
    s.add_argument("matrix")

    s = sub.add_parser("check", help="verify a structural property")
    s.add_argument("property", choices=sorted(CHECK_REF_KINDS))
    s.add_argument("refs", nargs="*")
    s.add_argument("--randomized", action="store_true",
                   help="generate seeded instances instead of reading refs")
    s.add_argument("--count", type=int, default=5,
                   help="trials in randomized mode")
    s.add_argument("--seed", type=int, default=0,
                   help="seed for randomized mode")
    return p


COMMANDS = {
    "compose": cmd_compose,
    "collage": cmd_collage,
    "grothendieck": cmd_grothendieck,
    "blockmul": cmd_blockmul,
    "cone": cmd_cone,
    "hom-complex": cmd_hom_complex,
    "tot": cmd_tot,
    "homology": cmd_homology,
    "quasi-iso": cmd_quasi_iso,
    "snf": cmd_snf,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    caps = {"objects": args.max_objects, "elements": args.max_elements}
    ws = Workspace(args.workspace, caps)
    try:
        doc, code = COMMANDS[args.command](args, ws)
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 3
    except (SchemaError, json.JSONDecodeError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"missing input: {e}", file=sys.stderr)
        return 2
    except LaxcatError as e:
        print(f"validation failed: {e}", file=sys.stderr)
        return 2
    text = dumps_canonical(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code
