"""Bounded chain complexes of finitely generated free abelian groups.

Homological indexing throughout: the differential lowers degree by one.
All matrices are numpy object arrays holding Python ints, so nothing ever
overflows or rounds; vectors are columns and composition is matrix product.

Conventions fixed here and relied on everywhere else:

  * cone(f: A -> B) has Cone_n = A_{n-1} (+) B_n and differential
    [[-d_A, 0], [-f, d_B]].
  * hom_complex(A, B) has degree-n part the graded maps raising degree by
    n, with differential (dg)_k = d_B g_k + (-1)^n g_{k-1} d_A.  Chain maps
    correspond to degree-0 cycles through the sign reindexing
    g_k |-> (-1)^k g_k.
  * tot places X_p in horizontal degree -p with vertical sign (-1)^p, so
    the total complex of a two-term tower equals shift(cone, -1) on the
    nose.
  * null homotopies are oriented dH + Hd = g (not its negative).
  * Smith normal form returns U d V = S with |det U| = |det V| = 1,
    nonnegative diagonal, and each entry dividing the next.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (BlockMismatch, CompositeNonzero,
                     DifferentialSquareNonzero, DimensionMismatch,
                     InvalidParameter, NotANullHomotopy, UnboundedComplex)
from .report import Report

# -- exact integer matrices ---------------------------------------------------

def as_matrix(data, rows=None, cols=None) -> np.ndarray:
    """Coerce nested lists (or an array) to an object array of ints."""
    if isinstance(data, np.ndarray):
        arr = data.astype(object)
    else:
        data = [list(r) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        arr = np.empty((rows, cols), dtype=object)
        if rows and len(data) != rows:
            raise DimensionMismatch(f"expected {rows} rows, got {len(data)}")
        for i, r in enumerate(data):
            if len(r) != cols:
                raise DimensionMismatch(
                    f"row {i} has {len(r)} entries, expected {cols}")
            for j, v in enumerate(r):
                if not isinstance(v, int) or isinstance(v, bool):
                    raise DimensionMismatch(f"entry ({i},{j}) is not an int: {v!r}")
                arr[i, j] = v
        return arr
    out = np.empty(arr.shape, dtype=object)
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            out[i, j] = int(arr[i, j])
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    m = np.empty((rows, cols), dtype=object)
    m[:] = 0
    return m


def eye(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def mat_eq(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and (a.size == 0 or bool((a == b).all()))


def is_zero_matrix(a: np.ndarray) -> bool:
    return a.size == 0 or not any(v != 0 for v in a.flat)


def det_exact(a: np.ndarray) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch("determinant needs a square matrix")
    if n == 0:
        return 1
    m = a.copy()
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k, k] == 0:
            for i in range(k + 1, n):
                if m[i, k] != 0:
                    m[[k, i], :] = m[[i, k], :]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i, j] = (m[i, j] * m[k, k] - m[i, k] * m[k, j]) // prev
        prev = m[k, k]
    return sign * m[n - 1, n - 1]


# -- chain complexes ----------------------------------------------------------

class ChainComplex:
    """ranks[n] > 0 for the supported degrees; diff(n): C_n -> C_{n-1}.

    Stored data is normalized (no zero ranks, differentials exactly where
    both endpoint ranks are positive), so == is meaningful equality.
    """

    def __init__(self, ranks: dict[int, int], diffs: dict[int, np.ndarray]):
        self.ranks = dict(ranks)
        self.diffs = dict(diffs)

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def diff(self, n: int) -> np.ndarray:
        if n in self.diffs:
            return self.diffs[n]
        return zeros(self.rank(n - 1), self.rank(n))

    @property
    def window(self):
        if not self.ranks:
            return None
        return min(self.ranks), max(self.ranks)

    def degrees(self):
        if not self.ranks:
            return range(0)
        lo, hi = self.window
        return range(lo, hi + 1)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self.ranks != other.ranks:
            return False
        return all(mat_eq(self.diffs[n], other.diffs[n]) for n in self.diffs)

    def __repr__(self):
        if not self.ranks:
            return "ChainComplex(0)"
        lo, hi = self.window
        return ("ChainComplex(" +
                " -> ".join(f"Z^{self.rank(n)}" for n in range(hi, lo - 1, -1))
                + f" in degrees [{lo},{hi}])")


def build_complex(ranks: dict[int, int], diffs: dict[int, object]) -> ChainComplex:
    """Validate ranks, shapes, and d.d = 0; normalize the stored data."""
    clean_ranks = {}
    for n, r in ranks.items():
        if not isinstance(n, int) or not isinstance(r, int) or r < 0:
            raise InvalidParameter(f"bad rank entry {n!r}: {r!r}")
        if r > 0:
            clean_ranks[n] = r
    clean_diffs = {}
    for n, mat in diffs.items():
        rows = clean_ranks.get(n - 1, 0)
        cols = clean_ranks.get(n, 0)
        m = as_matrix(mat, rows, cols)
        if m.shape != (rows, cols):
            raise DimensionMismatch(
                f"differential at {n} has shape {m.shape}, expected {(rows, cols)}")
        if rows and cols:
            clean_diffs[n] = m
        elif not is_zero_matrix(m):
            raise DimensionMismatch(f"differential at {n} off the support")
    for n in clean_ranks:
        if clean_ranks.get(n - 1, 0) and n not in clean_diffs:
            clean_diffs[n] = zeros(clean_ranks[n - 1], clean_ranks[n])
    C = ChainComplex(clean_ranks, clean_diffs)
    for n in list(clean_diffs):
        square = C.diff(n - 1) @ C.diff(n)
        if not is_zero_matrix(square):
            raise DifferentialSquareNonzero(f"d.d != 0 from degree {n}")
    return C


def validate_complex(C: ChainComplex) -> Report:
    rep = Report()
    for n in C.diffs:
        if C.diffs[n].shape != (C.rank(n - 1), C.rank(n)):
            rep.fail(f"differential at {n} has the wrong shape")
        elif not is_zero_matrix(C.diff(n - 1) @ C.diff(n)):
            rep.fail(f"d.d != 0 from degree {n}")
    return rep


def zero_complex() -> ChainComplex:
    return ChainComplex({}, {})


def shift(C: ChainComplex, k: int) -> ChainComplex:
    """Degree translation by k; the differential picks up the sign (-1)^k."""
    sign = -1 if k % 2 else 1
    return ChainComplex({n + k: r for n, r in C.ranks.items()},
                        {n + k: sign * C.diffs[n] for n in C.diffs})


def direct_sum(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    ranks = {n: A.rank(n) + B.rank(n)
             for n in set(A.ranks) | set(B.ranks)}
    diffs = {}
    for n in ranks:
        rows, cols = ranks.get(n - 1, 0), ranks[n]
        if rows and cols:
            m = zeros(rows, cols)
            ar, ac = A.rank(n - 1), A.rank(n)
            m[:ar, :ac] = A.diff(n)
            m[ar:, ac:] = B.diff(n)
            diffs[n] = m
    return ChainComplex({n: r for n, r in ranks.items() if r}, diffs)


def euler_char(C: ChainComplex) -> int:
    return sum((-1) ** (n % 2) * r for n, r in C.ranks.items())


# -- chain maps and homotopies --------------------------------------------------

class ChainMap:
    """Degreewise matrices f_n: A_n -> B_n commuting with the differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 matrices: dict[int, np.ndarray]):
        self.source = source
        self.target = target
        self.matrices = dict(matrices)

    def mat(self, n: int) -> np.ndarray:
        if n in self.matrices:
            return self.matrices[n]
        return zeros(self.target.rank(n), self.source.rank(n))

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and set(self.matrices) == set(other.matrices)
                and all(mat_eq(self.matrices[n], other.matrices[n])
                        for n in self.matrices))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def build_chain_map(source: ChainComplex, target: ChainComplex,
                    matrices: dict[int, object]) -> ChainMap:
    clean = {}
    for n in set(source.ranks) & set(target.ranks):
        rows, cols = target.rank(n), source.rank(n)
        m = as_matrix(matrices.get(n, zeros(rows, cols)), rows, cols)
        if m.shape != (rows, cols):
            raise DimensionMismatch(
                f"component at {n} has shape {m.shape}, expected {(rows, cols)}")
        clean[n] = m
    for n, m in matrices.items():
        if n not in clean and not is_zero_matrix(as_matrix(m)):
            raise DimensionMismatch(f"component at {n} off the support")
    f = ChainMap(source, target, clean)
    degrees = set(source.ranks) | set(target.ranks)
    for n in degrees:
        lhs = target.diff(n) @ f.mat(n)
        rhs = f.mat(n - 1) @ source.diff(n)
        if not mat_eq(lhs, rhs):
            raise InvalidParameter(f"not a chain map: square at degree {n}")
    return f


def zero_chain_map(A: ChainComplex, B: ChainComplex) -> ChainMap:
    return ChainMap(A, B, {})


def identity_chain_map(A: ChainComplex) -> ChainMap:
    return ChainMap(A, A, {n: eye(r) for n, r in A.ranks.items()})


def compose_chain_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    if f.target != g.source:
        raise DimensionMismatch("chain map composition endpoints do not match")
    mats = {}
    for n in set(f.source.ranks) & set(g.target.ranks):
        mats[n] = g.mat(n) @ f.mat(n)
    return ChainMap(f.source, g.target,
                    {n: m for n, m in mats.items() if m.size})


def add_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    if f.source != g.source or f.target != g.target:
        raise DimensionMismatch("chain map sum endpoints do not match")
    degrees = set(f.matrices) | set(g.matrices)
    return ChainMap(f.source, f.target, {n: f.mat(n) + g.mat(n) for n in degrees})


def graded_map_image(A: ChainComplex, B: ChainComplex,
                     h: dict[int, object]) -> ChainMap:
    """The chain map d_B h + h d_A of a degree +1 graded map h.

    Any graded h works; the result commutes with the differentials by
    construction, which makes this the workhorse for producing chain maps
    in bulk.
    """
    hm = {n: as_matrix(m, B.rank(n + 1), A.rank(n)) for n, m in h.items()}

    def hmat(n):
        return hm.get(n, zeros(B.rank(n + 1), A.rank(n)))

    mats = {}
    for n in set(A.ranks) & set(B.ranks):
        mats[n] = B.diff(n + 1) @ hmat(n) + hmat(n - 1) @ A.diff(n)
    return build_chain_map(A, B, mats)


class Homotopy:
    """H_n: A_n -> B_{n+1} with dH + Hd = target_map - source_map."""

    def __init__(self, source_map: ChainMap, target_map: ChainMap,
                 matrices: dict[int, np.ndarray]):
        self.source_map = source_map
        self.target_map = target_map
        self.matrices = dict(matrices)

    def mat(self, n: int) -> np.ndarray:
        if n in self.matrices:
            return self.matrices[n]
        A, B = self.source_map.source, self.source_map.target
        return zeros(B.rank(n + 1), A.rank(n))

    def __eq__(self, other):
        if not isinstance(other, Homotopy):
            return NotImplemented
        if self.source_map != other.source_map or self.target_map != other.target_map:
            return False
        degrees = set(self.matrices) | set(other.matrices)
        return all(mat_eq(self.mat(n), other.mat(n)) for n in degrees)


def build_homotopy(source_map: ChainMap, target_map: ChainMap,
                   matrices: dict[int, object]) -> Homotopy:
    if (source_map.source != target_map.source
            or source_map.target != target_map.target):
        raise DimensionMismatch("homotopy endpoints do not match")
    A, B = source_map.source, source_map.target
    clean = {}
    for n, m in matrices.items():
        mm = as_matrix(m, B.rank(n + 1), A.rank(n))
        if mm.size:
            clean[n] = mm
    H = Homotopy(source_map, target_map, clean)
    for n in set(A.ranks) | set(B.ranks):
        lhs = B.diff(n + 1) @ H.mat(n) + H.mat(n - 1) @ A.diff(n)
        rhs = target_map.mat(n) - source_map.mat(n)
        if not mat_eq(lhs, rhs):
            raise NotANullHomotopy(f"dH + Hd misses the difference at degree {n}")
    return H


# -- cone ----------------------------------------------------------------------

@dataclass
class MappingCone:
    complex: ChainComplex
    inclusion: ChainMap
    projection: ChainMap


def cone(f: ChainMap) -> MappingCone:
    """Cone(f)_n = A_{n-1} (+) B_n with differential [[-d_A, 0], [-f, d_B]].

    inclusion: B -> Cone(f) and projection: Cone(f) -> shift(A, 1) are the
    canonical chain maps; the un-negated f block would break d.d = 0, the
    signs here are what the alternating block calculus expects.
    """
    A, B = f.source, f.target
    ranks = {}
    for n in set(k + 1 for k in A.ranks) | set(B.ranks):
        r = A.rank(n - 1) + B.rank(n)
        if r:
            ranks[n] = r
    diffs = {}
    for n in ranks:
        rows, cols = ranks.get(n - 1, 0), ranks[n]
        if not (rows and cols):
            continue
        m = zeros(rows, cols)
        ar_top, ac = A.rank(n - 2), A.rank(n - 1)
        m[:ar_top, :ac] = -A.diff(n - 1)
        m[ar_top:, :ac] = -f.mat(n - 1)
        m[ar_top:, ac:] = B.diff(n)
        diffs[n] = m
    cx = build_complex(ranks, diffs)
    incl = build_chain_map(B, cx, {
        n: np.vstack([zeros(A.rank(n - 1), B.rank(n)), eye(B.rank(n))])
        for n in B.ranks if cx.rank(n)})
    proj = build_chain_map(cx, shift(A, 1), {
        n: np.hstack([eye(A.rank(n - 1)), zeros(A.rank(n - 1), B.rank(n))])
        for n in cx.ranks if A.rank(n - 1)})
    return MappingCone(cx, incl, proj)


def cone_to_data(f: ChainMap, phi: ChainMap):
    """Split a chain map off the cone into (g, H).

    g = phi restricted to the B summand; H_n = -phi_{n+1} on the A summand,
    a null homotopy of g.f oriented dH + Hd = g.f.
    """
    A, B = f.source, f.target
    cx = cone(f).complex
    if phi.source != cx:
        raise DimensionMismatch("map does not start at the cone")
    C = phi.target
    g = build_chain_map(B, C, {
        n: phi.mat(n)[:, A.rank(n - 1):] for n in B.ranks if C.rank(n)})
    gf = compose_chain_maps(g, f)
    H = build_homotopy(zero_chain_map(A, C), gf, {
        n: -phi.mat(n + 1)[:, :A.rank(n)] for n in A.ranks if C.rank(n + 1)})
    return g, H


def cone_from_data(f: ChainMap, g: ChainMap, H: Homotopy) -> ChainMap:
    """Inverse of cone_to_data; validates the null homotopy orientation."""
    A, B = f.source, f.target
    if g.source != B:
        raise DimensionMismatch("g must start at the target of f")
    C = g.target
    gf = compose_chain_maps(g, f)
    if H.source_map != zero_chain_map(A, C) or H.target_map != gf:
        raise NotANullHomotopy("H must run from the zero map to g.f")
    cx = cone(f).complex
    mats = {}
    for n in cx.ranks:
        if not C.rank(n):
            continue
        mats[n] = np.hstack([-H.mat(n - 1), g.mat(n)])
    return build_chain_map(cx, C, mats)


# -- hom complex -----------------------------------------------------------------

def hom_basis(A: ChainComplex, B: ChainComplex, n: int):
    """Ordered basis of degree-n graded maps: (k, i, j) means the matrix
    unit A_k -> B_{k+n} with a single 1 in row i, column j."""
    basis = []
    for k in sorted(A.ranks):
        if B.rank(k + n):
            for i in range(B.rank(k + n)):
                for j in range(A.rank(k)):
                    basis.append((k, i, j))
    return basis


def hom_complex_with_basis(A: ChainComplex, B: ChainComplex):
    """(hom complex, basis per degree); differential dg + (-1)^|g| gd."""
    if not A.ranks or not B.ranks:
        return zero_complex(), {}
    alo, ahi = A.window
    blo, bhi = B.window
    degrees = range(blo - ahi, bhi - alo + 1)
    bases = {n: hom_basis(A, B, n) for n in degrees}
    ranks = {n: len(bases[n]) for n in degrees if bases[n]}
    index = {n: {key: pos for pos, key in enumerate(bases[n])} for n in degrees}
    sign = {n: (-1 if n % 2 else 1) for n in degrees}
    diffs = {}
    for n in degrees:
        rows = ranks.get(n - 1, 0)
        cols = ranks.get(n, 0)
        if not (rows and cols):
            continue
        m = zeros(rows, cols)
        for pos, (k, i, j) in enumerate(bases[n]):
            # d_B . E, landing in graded degree k
            dB = B.diff(k + n)
            for i2 in range(dB.shape[0]):
                if dB[i2, i] != 0:
                    m[index[n - 1][(k, i2, j)], pos] += dB[i2, i]
            # (-1)^n E . d_A, landing in graded degree k + 1
            dA = A.diff(k + 1)
            for j2 in range(dA.shape[1]):
                if dA[j, j2] != 0:
                    m[index[n - 1][(k + 1, i, j2)], pos] += sign[n] * dA[j, j2]
        diffs[n] = m
    return build_complex(ranks, diffs), bases


def hom_complex(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    return hom_complex_with_basis(A, B)[0]


def graded_sign_reindex(gmap: dict[int, np.ndarray]) -> dict[int, np.ndarray]:
    """g_k |-> (-1)^k g_k; matches chain maps with degree-0 cycles."""
    return {k: (m if k % 2 == 0 else -m) for k, m in gmap.items()}


def graded_to_vector(A: ChainComplex, B: ChainComplex, n: int,
                     gmap: dict[int, np.ndarray]) -> np.ndarray:
    basis = hom_basis(A, B, n)
    vec = zeros(len(basis), 1)
    for pos, (k, i, j) in enumerate(basis):
        if k in gmap:
            vec[pos, 0] = int(gmap[k][i, j])
    return vec


# -- total complex ----------------------------------------------------------------

def tot(complexes: list[ChainComplex], maps: list[ChainMap]) -> ChainComplex:
    """Total complex of a tower X_0 -> X_1 -> ... with zero composites.

    X_p sits in horizontal degree -p: Tot_n = (+)_p (X_p)_{n+p}, with
    vertical differential (-1)^p d and horizontal component the given maps.
    """
    if len(maps) != max(len(complexes) - 1, 0):
        raise DimensionMismatch("need exactly one map per consecutive pair")
    for p, m in enumerate(maps):
        if m.source != complexes[p] or m.target != complexes[p + 1]:
            raise DimensionMismatch(f"map {p} does not join X_{p} to X_{p+1}")
    for p in range(len(maps) - 1):
        comp = compose_chain_maps(maps[p + 1], maps[p])
        if any(not is_zero_matrix(m) for m in comp.matrices.values()):
            raise CompositeNonzero(f"maps {p} and {p+1} do not compose to zero")

    P = len(complexes)
    ranks = {}
    for n in set(n - p for p, X in enumerate(complexes) for n in X.ranks):
        r = sum(complexes[p].rank(n + p) for p in range(P))
        if r:
            ranks[n] = r

    def offsets(n):
        out, acc = [], 0
        for p in range(P):
            out.append(acc)
            acc += complexes[p].rank(n + p)
        return out

    diffs = {}
    for n in ranks:
        rows, cols = ranks.get(n - 1, 0), ranks[n]
        if not (rows and cols):
            continue
        m = zeros(rows, cols)
        roff, coff = offsets(n - 1), offsets(n)
        for p in range(P):
            X = complexes[p]
            if not X.rank(n + p):
                continue
            if X.rank(n + p - 1):
                block = X.diff(n + p) if p % 2 == 0 else -X.diff(n + p)
                m[roff[p]:roff[p] + X.rank(n + p - 1),
                  coff[p]:coff[p] + X.rank(n + p)] = block
            if p + 1 < P and complexes[p + 1].rank(n + p):
                fm = maps[p].mat(n + p)
                m[roff[p + 1]:roff[p + 1] + complexes[p + 1].rank(n + p),
                  coff[p]:coff[p] + X.rank(n + p)] = fm
        diffs[n] = m
    return build_complex(ranks, diffs)


# -- graded block matrices and the star product -----------------------------------

@dataclass(frozen=True)
class GradedIndex:
    name: str
    grade: int
    size: int


@dataclass
class BlockGradedMatrix:
    """Integer matrix split into blocks along graded index sets.

    Missing blocks are zero.  The star product inserts (-1)^grade on the
    summation index; conjugating by the diagonal sign matrix turns it back
    into the plain block product.
    """
    rows: tuple[GradedIndex, ...]
    cols: tuple[GradedIndex, ...]
    blocks: dict[tuple[str, str], np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        rnames = {r.name: r for r in self.rows}
        cnames = {c.name: c for c in self.cols}
        if len(rnames) != len(self.rows) or len(cnames) != len(self.cols):
            raise BlockMismatch("duplicate block labels")
        for (rn, cn), m in self.blocks.items():
            if rn not in rnames or cn not in cnames:
                raise BlockMismatch(f"block ({rn!r}, {cn!r}) off the index sets")
            want = (rnames[rn].size, cnames[cn].size)
            if m.shape != want:
                raise DimensionMismatch(
                    f"block ({rn!r}, {cn!r}) has shape {m.shape}, expected {want}")

    def block(self, rn: str, cn: str) -> np.ndarray:
        if (rn, cn) in self.blocks:
            return self.blocks[(rn, cn)]
        rsize = next(r.size for r in self.rows if r.name == rn)
        csize = next(c.size for c in self.cols if c.name == cn)
        return zeros(rsize, csize)

    def is_zero(self) -> bool:
        return all(is_zero_matrix(m) for m in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, BlockGradedMatrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(mat_eq(self.block(r.name, c.name), other.block(r.name, c.name))
                   for r in self.rows for c in self.cols)


def block_identity(indices: tuple[GradedIndex, ...]) -> BlockGradedMatrix:
    return BlockGradedMatrix(indices, indices,
                             {(i.name, i.name): eye(i.size) for i in indices})


def block_plain_multiply(N: BlockGradedMatrix, M: BlockGradedMatrix) -> BlockGradedMatrix:
    if N.cols != M.rows:
        raise BlockMismatch("inner index sets differ")
    blocks = {}
    for u in N.rows:
        for s in M.cols:
            acc = zeros(u.size, s.size)
            for t in N.cols:
                acc = acc + N.block(u.name, t.name) @ M.block(t.name, s.name)
            if not is_zero_matrix(acc):
                blocks[(u.name, s.name)] = acc
    return BlockGradedMatrix(N.rows, M.cols, blocks)


def star_multiply(N: BlockGradedMatrix, M: BlockGradedMatrix) -> BlockGradedMatrix:
    """Alternating block product: entry (u,s) = sum_t (-1)^grade(t) N[u,t] M[t,s]."""
    if N.cols != M.rows:
        raise BlockMismatch("inner index sets differ")
    blocks = {}
    for u in N.rows:
        for s in M.cols:
            acc = zeros(u.size, s.size)
            for t in N.cols:
                term = N.block(u.name, t.name) @ M.block(t.name, s.name)
                acc = acc + (term if t.grade % 2 == 0 else -term)
            if not is_zero_matrix(acc):
                blocks[(u.name, s.name)] = acc
    return BlockGradedMatrix(N.rows, M.cols, blocks)


def sign_scale_rows(M: BlockGradedMatrix) -> BlockGradedMatrix:
    """Multiply each block row by (-1)^grade; star equals plain after this."""
    blocks = {}
    for (rn, cn), m in M.blocks.items():
        grade = next(r.grade for r in M.rows if r.name == rn)
        blocks[(rn, cn)] = m if grade % 2 == 0 else -m
    return BlockGradedMatrix(M.rows, M.cols, blocks)


def cone_star_matrix(f: ChainMap) -> BlockGradedMatrix:
    """The unsigned cone block matrix [[d, 0], [f, d]] over the index set
    of all degrees of A and B, each graded by its homological degree.
    Star-squaring it is zero precisely because f is a chain map."""
    A, B = f.source, f.target
    indices = tuple(
        [GradedIndex(f"A{n}", n, A.rank(n)) for n in sorted(A.ranks)] +
        [GradedIndex(f"B{n}", n, B.rank(n)) for n in sorted(B.ranks)])
    blocks = {}
    for n in A.ranks:
        if A.rank(n - 1):
            blocks[(f"A{n-1}", f"A{n}")] = A.diff(n)
        if B.rank(n):
            blocks[(f"B{n}", f"A{n}")] = f.mat(n)
    for n in B.ranks:
        if B.rank(n - 1):
            blocks[(f"B{n-1}", f"B{n}")] = B.diff(n)
    return BlockGradedMatrix(indices, indices, blocks)


# -- Smith normal form -------------------------------------------------------------

@dataclass
class SmithDecomposition:
    matrix: np.ndarray
    U: np.ndarray
    S: np.ndarray
    V: np.ndarray

    def diagonal(self) -> list[int]:
        return [int(self.S[i, i]) for i in range(min(self.S.shape))]

    def rank(self) -> int:
        return sum(1 for v in self.diagonal() if v != 0)

    def verify(self) -> Report:
        rep = Report()
        if not mat_eq(self.U @ self.matrix @ self.V, self.S):
            rep.fail("U d V != S")
        if abs(det_exact(self.U)) != 1:
            rep.fail("U is not unimodular")
        if abs(det_exact(self.V)) != 1:
            rep.fail("V is not unimodular")
        diag = self.diagonal()
        for i, v in enumerate(diag):
            if v < 0:
                rep.fail(f"diagonal entry {i} is negative")
            if i + 1 < len(diag) and v != 0 and diag[i + 1] % v != 0:
                rep.fail(f"diagonal entry {i} does not divide its successor")
            if v == 0 and any(w != 0 for w in diag[i:]):
                rep.fail("zero diagonal entry before a nonzero one")
                break
        for i in range(self.S.shape[0]):
            for j in range(self.S.shape[1]):
                if i != j and self.S[i, j] != 0:
                    rep.fail(f"off-diagonal entry at ({i},{j})")
        return rep


def smith_normal_form(matrix) -> SmithDecomposition:
    """U d V = S with unimodular U, V; pivots chosen by smallest nonzero
    absolute value, which keeps intermediate entries tame."""
    A = as_matrix(matrix)
    m, n = A.shape
    D = A.copy()
    U, V = eye(m), eye(n)
    k = 0
    while k < min(m, n):
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if D[i, j] != 0 and (pivot is None
                                     or abs(D[i, j]) < abs(D[pivot[0], pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != k:
                D[[k, i], :] = D[[i, k], :]
                U[[k, i], :] = U[[i, k], :]
            if j != k:
                D[:, [k, j]] = D[:, [j, k]]
                V[:, [k, j]] = V[:, [j, k]]
            if D[k, k] < 0:
                D[k, :] = -D[k, :]
                U[k, :] = -U[k, :]
            p = D[k, k]
            for i in range(k + 1, m):
                q = D[i, k] // p
                if q:
                    D[i, :] = D[i, :] - q * D[k, :]
                    U[i, :] = U[i, :] - q * U[k, :]
            for j in range(k + 1, n):
                q = D[k, j] // p
                if q:
                    D[:, j] = D[:, j] - q * D[:, k]
                    V[:, j] = V[:, j] - q * V[:, k]
            col_clear = all(D[i, k] == 0 for i in range(k + 1, m))
            row_clear = all(D[k, j] == 0 for j in range(k + 1, n))
            if col_clear and row_clear:
                bad = None
                for i in range(k + 1, m):
                    for j in range(k + 1, n):
                        if D[i, j] % p != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                D[k, :] = D[k, :] + D[bad, :]
                U[k, :] = U[k, :] + U[bad, :]
            pivot = None
            for i in range(k, m):
                for j in range(k, n):
                    if D[i, j] != 0 and (pivot is None
                                         or abs(D[i, j]) < abs(D[pivot[0], pivot[1]])):
                        pivot = (i, j)
        k += 1
    return SmithDecomposition(A, U, D, V)


def snf_diagonal_naive(matrix) -> list[int]:
    """Strategy-free diagonalization used only as an independent oracle.

    Always works at the leading position, clearing by repeated remainder
    steps, then fixes the divisibility chain with gcd/lcm folding.  No
    transform matrices, no pivot selection.
    """
    import math

    A = as_matrix(matrix)
    m, n = A.shape

    def reduce_block(D):
        m2, n2 = D.shape
        if m2 == 0 or n2 == 0:
            return []
        if all(D[i, j] == 0 for i in range(m2) for j in range(n2)):
            return [0] * min(m2, n2)
        # bring some nonzero entry to (0,0)
        found = next((i, j) for i in range(m2) for j in range(n2) if D[i, j] != 0)
        D[[0, found[0]], :] = D[[found[0], 0], :]
        D[:, [0, found[1]]] = D[:, [found[1], 0]]
        while True:
            if D[0, 0] < 0:
                D[0, :] = -D[0, :]
            moved = False
            for i in range(1, m2):
                if D[i, 0] != 0:
                    q = D[i, 0] // D[0, 0]
                    D[i, :] = D[i, :] - q * D[0, :]
                    if D[i, 0] != 0:
                        D[[0, i], :] = D[[i, 0], :]
                        moved = True
            for j in range(1, n2):
                if D[0, j] != 0:
                    q = D[0, j] // D[0, 0]
                    D[:, j] = D[:, j] - q * D[:, 0]
                    if D[0, j] != 0:
                        D[:, [0, j]] = D[:, [j, 0]]
                        moved = True
            if not moved:
                break
        return [int(D[0, 0])] + reduce_block(D[1:, 1:])

    diag = reduce_block(A.copy())
    diag = [abs(v) for v in diag]
    # gcd/lcm folding gives the divisibility chain without touching rank
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = math.gcd(a, b)
            l = 0 if g == 0 else a * b // g
            diag[i], diag[j] = g, l
    nonzero = sorted(v for v in diag if v)
    return nonzero + [0] * (len(diag) - len(nonzero))


# -- homology ------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    free: int
    torsion: tuple[int, ...]

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    def __repr__(self):
        parts = []
        if self.free:
            parts.append(f"Z^{self.free}" if self.free > 1 else "Z")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def homology(C: ChainComplex, n: int) -> HomologyGroup:
    """H_n = ker d_n / im d_{n+1}, as free rank plus invariant factors > 1."""
    out_rank = smith_normal_form(C.diff(n)).rank()
    snf_in = smith_normal_form(C.diff(n + 1))
    free = C.rank(n) - out_rank - snf_in.rank()
    torsion = tuple(v for v in snf_in.diagonal() if v > 1)
    return HomologyGroup(free, torsion)


def homology_all(C: ChainComplex) -> dict[int, HomologyGroup]:
    out = {}
    for n in C.degrees():
        h = homology(C, n)
        if not h.is_zero():
            out[n] = h
    return out


def is_acyclic(C: ChainComplex) -> bool:
    return not homology_all(C)


def kernel_basis(A: np.ndarray) -> np.ndarray:
    """Columns form a basis of ker(A) as a direct summand of the domain."""
    snf = smith_normal_form(A)
    return snf.V[:, snf.rank():]


def _left_inverse(K: np.ndarray) -> np.ndarray:
    """Left inverse of a primitive full-column-rank matrix."""
    snf = smith_normal_form(K)
    k = K.shape[1]
    assert snf.rank() == k and all(v == 1 for v in snf.diagonal()), \
        "kernel basis must be primitive"
    splus = zeros(k, K.shape[0])
    for i in range(k):
        splus[i, i] = 1
    return snf.V @ splus @ snf.U


def _homology_map_surjective(f: ChainMap, n: int) -> bool:
    A, B = f.source, f.target
    KB = kernel_basis(B.diff(n))
    if KB.shape[1] == 0:
        return True
    KA = kernel_basis(A.diff(n))
    LB = _left_inverse(KB)
    Y = LB @ (f.mat(n) @ KA)
    assert mat_eq(KB @ Y, f.mat(n) @ KA), "chain map must preserve kernels"
    X = LB @ B.diff(n + 1)
    assert mat_eq(KB @ X, B.diff(n + 1)), "boundaries must lie in the kernel"
    stacked = np.hstack([Y, X])
    snf = smith_normal_form(stacked)
    diag = snf.diagonal()
    return snf.rank() == KB.shape[1] and all(v == 1 for v in diag if v != 0)


def is_quasi_iso(f: ChainMap) -> bool:
    """H_n(f) an isomorphism in every degree.

    Checked as: equal homology descriptors plus surjectivity of the induced
    map; finitely generated abelian groups admit no surjective
    non-invertible endomorphisms, so this is equivalent to invertibility.
    This route never looks at the cone, so it can be played off against
    cone acyclicity as an independent computation.
    """
    degrees = set(f.source.ranks) | set(f.target.ranks)
    degrees = degrees | {n + 1 for n in degrees} | {n - 1 for n in degrees}
    for n in sorted(degrees):
        if homology(f.source, n) != homology(f.target, n):
            return False
        if not _homology_map_surjective(f, n):
            return False
    return True
