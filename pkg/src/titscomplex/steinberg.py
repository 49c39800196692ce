"""Steinberg module analysis: the rank recursion, apartment classes, chamber
pairings, the non-spanning witness, apartment span ranks, and the rank-one
pair orbit/commutant counts for n = 2.

Sign convention: an apartment class for a basis (v_1 | ... | v_n) is

    (-1)^(n(n-1)/2) * sum over permutations s of sgn(s) * [flag of s-prefixes]

The global factor is pinned by requiring the class of the identity basis to
have coefficient +1 on its reverse upper-triangular flag (the chain of
trailing coordinate spans); the class itself is only canonical up to the
orientation of the underlying sphere.
"""

from __future__ import annotations

import itertools
import random

from .rings import DEFAULT_BUDGET, Ring, RingSpec, check_budget, make_ring
from .linalg import Mat, span_if_free
from .grassmann import enumerate_grassmannian, grassmannian_size_formula, gl_order
from .complexes import TitsComplex, gl_generators
from .homology import ChainComplex, IntEchelon


_rank_memo: dict[RingSpec, list[int]] = {}


def steinberg_rank(spec: RingSpec, n: int) -> int:
    """Rank of the top reduced homology of the degree-n flag complex,
    via the alternating Grassmannian recursion (exact big integers)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    d = _rank_memo.setdefault(spec, [1])
    while len(d) <= n:
        m = len(d)
        total = 0
        for i in range(1, m + 1):
            term = grassmannian_size_formula(spec, m, m - i) * d[m - i]
            total += term if i % 2 == 1 else -term
        d.append(total)
    return d[n]


def steinberg_rank_field(q: int, n: int) -> int:
    """q^(n choose 2): the classical dimension over a field with q elements."""
    if q < 2:
        raise ValueError("q must be >= 2")
    return q ** (n * (n - 1) // 2)


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


class SteinbergChain:
    """An integer combination of facets (top-dimensional flags) of a complex.

    Coefficients are keyed by facet position in the complex's facet list.
    """

    __slots__ = ("cx", "coeffs")

    def __init__(self, cx: TitsComplex, coeffs: dict):
        self.cx = cx
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    def __add__(self, other: "SteinbergChain") -> "SteinbergChain":
        if other.cx is not self.cx:
            raise ValueError("chains live on different complexes")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return SteinbergChain(self.cx, out)

    def __neg__(self) -> "SteinbergChain":
        return SteinbergChain(self.cx, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other) -> "SteinbergChain":
        return self + (-other)

    def scale(self, a: int) -> "SteinbergChain":
        return SteinbergChain(self.cx, {k: a * v for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def boundary_is_zero(self, cc: ChainComplex) -> bool:
        top = self.cx.dim
        acc: dict[int, int] = {}
        for k, v in self.coeffs.items():
            for r, w in cc.boundaries[top].cols[k].items():
                nv = acc.get(r, 0) + v * w
                if nv:
                    acc[r] = nv
                else:
                    acc.pop(r, None)
        return not acc

    def __eq__(self, other):
        return isinstance(other, SteinbergChain) and self.cx is other.cx and self.coeffs == other.coeffs

    def support_facets(self):
        facets = self.cx.facets()
        return {facets[k]: v for k, v in self.coeffs.items()}

    def __repr__(self):
        return f"SteinbergChain({len(self.coeffs)} facets)"


def apartment_class(cx: TitsComplex, basis: Mat) -> SteinbergChain:
    """Signed sum over all complete flags refining the basis (a top cycle)."""
    ring, n = cx.ring, cx.n
    if basis.nrows != n or basis.ncols != n:
        raise ValueError("basis matrix has wrong shape")
    if not basis.is_invertible():
        raise ValueError("apartment basis matrix is not invertible")
    cols = basis.columns()
    # span members for every nonempty proper subset of columns
    span_of: dict[frozenset, frozenset] = {}
    for size in range(1, n):
        for subset in itertools.combinations(range(n), size):
            fs = frozenset(subset)
            sub = span_if_free(ring, [cols[j] for j in subset])
            if sub is None:
                raise ValueError("columns of an invertible matrix failed to span freely")
            span_of[fs] = sub
    global_sign = -1 if (n * (n - 1) // 2) % 2 else 1
    top_pos = cx.simplex_pos[n - 2]
    coeffs: dict[int, int] = {}
    for perm in itertools.permutations(range(n)):
        verts = []
        for size in range(1, n):
            members = span_of[frozenset(perm[:size])]
            idx = cx.vindex.get(members)
            if idx is None:
                raise RuntimeError("apartment flag misses a vertex (complex incomplete?)")
            verts.append(idx)
        facet = tuple(verts)
        pos = top_pos.get(facet)
        if pos is None:
            raise RuntimeError("apartment flag is not a facet (complex incomplete?)")
        c = global_sign * _perm_sign(perm)
        nv = coeffs.get(pos, 0) + c
        if nv:
            coeffs[pos] = nv
        else:
            coeffs.pop(pos, None)
    return SteinbergChain(cx, coeffs)


def chamber_map(chain: SteinbergChain, facet) -> int:
    """Coefficient of the chain on one canonically oriented facet."""
    cx = chain.cx
    facet = tuple(facet)
    pos = cx.simplex_pos[cx.dim].get(facet)
    if pos is None:
        raise ValueError(f"facet {facet} not present in the complex")
    return chain.coeffs.get(pos, 0)


def reverse_ut_facet(cx: TitsComplex, basis: Mat) -> tuple:
    """The flag of trailing spans <v_n> < <v_{n-1}, v_n> < ... as a facet tuple."""
    ring, n = cx.ring, cx.n
    cols = basis.columns()
    verts = []
    for size in range(1, n):
        members = span_if_free(ring, cols[n - size :])
        if members is None:
            raise ValueError("trailing columns do not span freely")
        verts.append(cx.vindex[members])
    return tuple(verts)


def ut_bases(ring: Ring, n: int, budget: int | None = DEFAULT_BUDGET) -> list[Mat]:
    """All strictly upper-triangular bases (unit diagonal), canonical order."""
    npar = n * (n - 1) // 2
    check_budget(ring.card**npar, budget, "upper-triangular bases")
    slots = [(i, j) for j in range(1, n) for i in range(j)]
    out = []
    for values in itertools.product(range(ring.card), repeat=npar):
        rows = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        for (i, j), v in zip(slots, values):
            rows[i][j] = v
        out.append(Mat(ring, rows))
    return out


def ut_apartment_pairing(cx: TitsComplex, budget: int | None = DEFAULT_BUDGET) -> list[list[int]]:
    """Matrix [c_A(B)] over all upper-triangular apartment classes.

    c_A is the chamber map of A's reverse upper-triangular flag; with the
    sign convention above the expected value is the identity matrix.
    """
    bases = ut_bases(cx.ring, cx.n, budget)
    chains = [apartment_class(cx, b) for b in bases]
    rev = [reverse_ut_facet(cx, b) for b in bases]
    return [[chamber_map(chain, f) for chain in chains] for f in rev]


def eta_class(cx: TitsComplex, m_payload) -> SteinbergChain:
    """The non-spanning witness: the sum of the identity apartment class and
    the class of (e_2 | e_1 + m e_2 | e_3 | ... | e_n) for a nonzero
    non-unit m.  Verified nonzero and killed by every upper-triangular
    chamber map before being returned."""
    ring, n = cx.ring, cx.n
    if n < 2:
        raise ValueError("eta needs n >= 2")
    m = ring.el(m_payload)
    if m == ring.zero:
        raise ValueError("eta needs a nonzero element")
    if m in ring.units:
        raise ValueError("eta needs a non-unit")
    z, o = ring.zero, ring.one
    cols = []
    e = lambda i: tuple(o if r == i else z for r in range(n))
    cols.append(e(1))
    second = list(e(0))
    second[1] = m
    cols.append(tuple(second))
    for i in range(2, n):
        cols.append(e(i))
    eta = apartment_class(cx, Mat.from_columns(ring, cols)) + apartment_class(
        cx, Mat.identity(ring, n)
    )
    if eta.is_zero():
        raise RuntimeError("eta collapsed to zero (unexpected for a non-unit)")
    for b in ut_bases(ring, n):
        if chamber_map(eta, reverse_ut_facet(cx, b)) != 0:
            raise RuntimeError("eta is not annihilated by an upper-triangular chamber map")
    return eta


# ---------------------------------------------------------------------------
# apartment span


class SpanRankResult:
    def __init__(self, rank, mode, saturated, apartments_used):
        self.rank = rank
        self.mode = mode
        self.saturated = saturated
        self.apartments_used = apartments_used

    def __repr__(self):
        return (
            f"SpanRankResult(rank={self.rank}, mode={self.mode!r}, "
            f"saturated={self.saturated}, apartments={self.apartments_used})"
        )


def _line_block(cx: TitsComplex):
    lines = [i for i, s in enumerate(cx.vertices) if s.rank == 1]
    if lines != list(range(len(lines))):
        raise RuntimeError("rank-1 vertices are not the leading block")
    return lines


def _frame_matrix(cx: TitsComplex, frame) -> Mat | None:
    """Basis matrix of a set of lines when their canonical generators span."""
    gens = [cx.vertices[i].preferred_basis[0] for i in sorted(frame)]
    mat = Mat.from_columns(cx.ring, gens)
    return mat if mat.is_invertible() else None


EXHAUSTIVE_GL_LIMIT = 10**5


def apartment_span_rank(
    cx: TitsComplex,
    mode: str = "auto",
    seed: int = 0,
    budget: int | None = DEFAULT_BUDGET,
) -> SpanRankResult:
    """Rank of the lattice spanned by apartment classes inside top chains.

    Apartments are indexed by frames: unordered sets of n rank-1 vertices
    whose canonical generators form an invertible matrix (column scalings
    and reorderings change the class by at most a sign, so frames exhaust
    all apartment classes up to sign).

    exhaustive mode scans every frame; sampled mode grows an orbit closure
    from the identity frame plus seeded random frames and declares
    saturation when a full sweep of the group generators adds no rank.
    """
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        mode = (
            "exhaustive"
            if gl_order(cx.ring.spec, cx.n) <= EXHAUSTIVE_GL_LIMIT
            else "sampled"
        )
    lines = _line_block(cx)
    ech = IntEchelon()
    used = 0
    if mode == "exhaustive":
        from math import comb

        check_budget(comb(len(lines), cx.n), budget, "apartment frames")
        for frame in itertools.combinations(lines, cx.n):
            mat = _frame_matrix(cx, frame)
            if mat is None:
                continue
            used += 1
            ech.add(apartment_class(cx, mat).coeffs)
        return SpanRankResult(ech.rank, "exhaustive", True, used)

    # sampled: orbit closure with a rank-saturation stopping rule
    rng = random.Random(seed)
    gens = gl_generators(cx.ring, cx.n)
    perms = [cx.vertex_permutation(g) for g in gens]
    ident = Mat.identity(cx.ring, cx.n)
    id_frame = frozenset(
        cx.vindex[span_if_free(cx.ring, [ident.column(j)])] for j in range(cx.n)
    )
    frames = {id_frame}
    for _ in range(cx.n * 4):
        cand = frozenset(rng.sample(lines, cx.n))
        if _frame_matrix(cx, cand) is not None:
            frames.add(cand)
    for f in frames:
        mat = _frame_matrix(cx, f)
        if mat is not None:
            used += 1
            ech.add(apartment_class(cx, mat).coeffs)
    saturated = False
    while not saturated:
        if budget is not None and used > budget:
            return SpanRankResult(ech.rank, "sampled", False, used)
        before = ech.rank
        new_frames = set()
        for f in frames:
            for p in perms:
                g = frozenset(p[i] for i in f)
                if g not in frames:
                    new_frames.add(g)
        for g in sorted(new_frames, key=sorted):
            mat = _frame_matrix(cx, g)
            if mat is not None:
                used += 1
                ech.add(apartment_class(cx, mat).coeffs)
        frames |= new_frames
        if ech.rank == before:
            saturated = True
    return SpanRankResult(ech.rank, "sampled", True, used)


# ---------------------------------------------------------------------------
# orbit and commutant counts on pairs of lines (n = 2)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def count(self) -> int:
        return sum(1 for i, p in enumerate(self.parent) if self.find(i) == i)


def p1_orbit_and_commutant(
    spec_or_ring, budget: int | None = DEFAULT_BUDGET
) -> tuple[int, int]:
    """(orbit count of the diagonal action on pairs of lines in R^2,
    dimension of the commutant of the line permutation action).

    The two numbers are computed by genuinely different routes (union-find
    closure vs. the nullity of the commutation linear system) and agree by
    the double-coset description of the endomorphism algebra.
    """
    ring = spec_or_ring if isinstance(spec_or_ring, Ring) else make_ring(spec_or_ring)
    lines = enumerate_grassmannian(ring, 2, 1, budget)
    nl = len(lines)
    check_budget(nl * nl, budget, "pairs of lines")
    index = {s.members: i for i, s in enumerate(lines)}
    perms = []
    for g in gl_generators(ring, 2):
        perm = [index[frozenset(g.apply(v) for v in s.members)] for s in lines]
        perms.append(perm)
    # orbit count by union-find closure
    uf = _UnionFind(nl * nl)
    for perm in perms:
        for i in range(nl):
            for j in range(nl):
                uf.union(i * nl + j, perm[i] * nl + perm[j])
    orbits = uf.count()
    # commutant dimension: solve X P_g = P_g X, i.e. X[i][j] = X[g i][g j]
    ech = IntEchelon()
    for perm in perms:
        for i in range(nl):
            for j in range(nl):
                a = i * nl + j
                b = perm[i] * nl + perm[j]
                if a != b:
                    ech.add({min(a, b): 1, max(a, b): -1})
    commutant = nl * nl - ech.rank
    return orbits, commutant


# ---------------------------------------------------------------------------
# rank tables


class RankTable:
    """Steinberg ranks for a family of rings, rows n = 1..n_max."""

    def __init__(self, labels, n_max: int, columns):
        self.labels = list(labels)
        self.n_max = n_max
        self.columns = {k: list(v) for k, v in columns.items()}

    def value(self, label: str, n: int) -> int:
        return self.columns[label][n - 1]

    def to_csv(self) -> str:
        lines = ["n," + ",".join(self.labels)]
        for n in range(1, self.n_max + 1):
            lines.append(
                str(n) + "," + ",".join(str(self.columns[l][n - 1]) for l in self.labels)
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "n_max": self.n_max,
            "rings": self.labels,
            "rows": [
                {
                    "n": n,
                    "ranks": {l: self.columns[l][n - 1] for l in self.labels},
                }
                for n in range(1, self.n_max + 1)
            ],
        }

    def to_text(self) -> str:
        widths = [max(len(l), max(len(str(self.columns[l][n - 1])) for n in range(1, self.n_max + 1))) for l in self.labels]
        head = "n  " + "  ".join(l.rjust(w) for l, w in zip(self.labels, widths))
        lines = [head]
        for n in range(1, self.n_max + 1):
            lines.append(
                f"{n}  "
                + "  ".join(str(self.columns[l][n - 1]).rjust(w) for l, w in zip(self.labels, widths))
            )
        return "\n".join(lines) + "\n"


def table_generate(specs, n_max: int) -> RankTable:
    labels = [s.label for s in specs]
    columns = {s.label: [steinberg_rank(s, n) for n in range(1, n_max + 1)] for s in specs}
    return RankTable(labels, n_max, columns)
