"""Exact integral homology of the flag complexes.

Everything here is exact: boundary matrices carry Python integers, ranks
and elementary divisors come from a sparse fraction-free Smith reduction
with Markowitz-style pivoting, and cycle-space bases are integer kernel
bases extracted from unimodular column reduction.  No floating point, no
modular shortcuts.
"""

from __future__ import annotations

import math
from fractions import Fraction


class SparseCols:
    """An integer matrix stored as a list of sparse columns (dict row -> value)."""

    __slots__ = ("nrows", "cols")

    def __init__(self, nrows: int, cols):
        self.nrows = nrows
        self.cols = [dict(c) for c in cols]

    @property
    def ncols(self) -> int:
        return len(self.cols)

    def entry(self, r: int, c: int) -> int:
        return self.cols[c].get(r, 0)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def compose(self, other: "SparseCols") -> "SparseCols":
        """self @ other (apply other first)."""
        out = []
        for col in other.cols:
            acc: dict[int, int] = {}
            for k, v in col.items():
                for r, w in self.cols[k].items():
                    nv = acc.get(r, 0) + v * w
                    if nv:
                        acc[r] = nv
                    else:
                        acc.pop(r, None)
            out.append(acc)
        return SparseCols(self.nrows, out)

    def apply(self, vec: dict) -> dict:
        acc: dict[int, int] = {}
        for k, v in vec.items():
            for r, w in self.cols[k].items():
                nv = acc.get(r, 0) + v * w
                if nv:
                    acc[r] = nv
                else:
                    acc.pop(r, None)
        return acc

    def copy(self) -> "SparseCols":
        return SparseCols(self.nrows, [dict(c) for c in self.cols])

    def to_triplet_text(self) -> str:
        """Plain triplet export: a header line "nrows ncols nnz" followed by
        one "row col value" line per nonzero, sorted by (col, row)."""
        triplets = []
        for c, col in enumerate(self.cols):
            for r in sorted(col):
                triplets.append((r, c, col[r]))
        triplets.sort(key=lambda t: (t[1], t[0]))
        lines = [f"{self.nrows} {self.ncols} {len(triplets)}"]
        lines.extend(f"{r} {c} {v}" for r, c, v in triplets)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_triplet_text(text: str) -> "SparseCols":
        lines = [ln for ln in text.strip().split("\n") if ln]
        nrows, ncols, nnz = map(int, lines[0].split())
        cols = [dict() for _ in range(ncols)]
        for ln in lines[1 : nnz + 1]:
            r, c, v = ln.split()
            cols[int(c)][int(r)] = int(v)
        return SparseCols(nrows, cols)


class ChainComplex:
    """Augmented simplicial chain complex with integer boundary matrices.

    boundaries[d] is the map C_d -> C_{d-1} for d = 0..dim, where C_{-1} is
    the rank-one augmentation target (so boundaries[0] is the all-ones row).
    """

    def __init__(self, f_vector, boundaries):
        self.f = list(f_vector)
        self.boundaries = boundaries

    @property
    def dim(self) -> int:
        return len(self.f) - 1

    def dd_is_zero(self) -> bool:
        for d in range(1, len(self.boundaries)):
            if not self.boundaries[d - 1].compose(self.boundaries[d]).is_zero():
                return False
        return True


def chain_complex(cx) -> ChainComplex:
    """Boundary matrices of a TitsComplex in its canonical orientation.

    The boundary of a d-simplex is the alternating sum of its faces in the
    rank-increasing vertex order; the augmentation sends every vertex to 1.
    """
    if cx.dim < 0:
        return ChainComplex([], [])
    boundaries = [SparseCols(1, [{0: 1}] * len(cx.simplices[0]))]
    for d in range(1, cx.dim + 1):
        pos = cx.simplex_pos[d - 1]
        cols = []
        for t in cx.simplices[d]:
            col = {}
            for i in range(len(t)):
                face = t[:i] + t[i + 1 :]
                col[pos[face]] = 1 if i % 2 == 0 else -1
            cols.append(col)
        boundaries.append(SparseCols(len(cx.simplices[d - 1]), cols))
    return ChainComplex(cx.f_vector, boundaries)


# ---------------------------------------------------------------------------
# Smith reduction


def smith_rank_and_divisors(mat: SparseCols) -> tuple[int, list[int]]:
    """Exact rank and invariant factors (SNF diagonal) of an integer matrix.

    Sparse elimination: pick a pivot of least absolute value (Markowitz
    fill-count as tiebreak), clear its row and column with unimodular
    operations, repeat.  The collected pivots diagonalise the matrix, and a
    gcd/lcm sweep turns the diagonal into the divisibility chain.
    """
    rows: dict[int, dict[int, int]] = {}
    col_index: dict[int, set[int]] = {}
    for c, col in enumerate(mat.cols):
        for r, v in col.items():
            rows.setdefault(r, {})[c] = v
            col_index.setdefault(c, set()).add(r)
    pivots: list[int] = []

    def axpy_row(dst: int, src: int, factor: int):
        """row dst += factor * row src."""
        if factor == 0:
            return
        drow = rows.setdefault(dst, {})
        for c, v in rows[src].items():
            nv = drow.get(c, 0) + factor * v
            if nv:
                drow[c] = nv
                col_index.setdefault(c, set()).add(dst)
            else:
                drow.pop(c, None)
                col_index[c].discard(dst)

    def combine_rows(r0: int, r1: int, c: int):
        """Unimodular 2x2 transform making (r0, c) = gcd and (r1, c) = 0."""
        a = rows[r0][c]
        b = rows[r1][c]
        if b % a == 0:
            axpy_row(r1, r0, -(b // a))
            return
        g, x, y = _ext_gcd(a, b)
        # new r0 = x*r0 + y*r1 ; new r1 = -(b//g)*r0 + (a//g)*r1  (det = 1)
        old0 = dict(rows[r0])
        old1 = dict(rows[r1])
        _set_row(rows, col_index, r0, _lincomb(old0, x, old1, y))
        _set_row(rows, col_index, r1, _lincomb(old0, -(b // g), old1, a // g))

    def axpy_col(dst: int, src: int, factor: int):
        if factor == 0:
            return
        for r in list(col_index.get(src, ())):
            v = rows[r][src]
            nv = rows[r].get(dst, 0) + factor * v
            if nv:
                rows[r][dst] = nv
                col_index.setdefault(dst, set()).add(r)
            else:
                rows[r].pop(dst, None)
                col_index[dst].discard(r)

    def combine_cols(c0: int, c1: int, r: int):
        a = rows[r][c0]
        b = rows[r][c1]
        if b % a == 0:
            axpy_col(c1, c0, -(b // a))
            return
        g, x, y = _ext_gcd(a, b)
        rows_c0 = {rr: rows[rr][c0] for rr in col_index.get(c0, ())}
        rows_c1 = {rr: rows[rr][c1] for rr in col_index.get(c1, ())}
        _set_col(rows, col_index, c0, _lincomb(rows_c0, x, rows_c1, y))
        _set_col(rows, col_index, c1, _lincomb(rows_c0, -(b // g), rows_c1, a // g))

    while True:
        pivot = None
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                score = (abs(v), (len(row) - 1) * (len(col_index[c]) - 1), r, c)
                if best is None or score < best:
                    best = score
                    pivot = (r, c)
                    if score[0] == 1 and score[1] == 0:
                        break
            else:
                continue
            break
        if pivot is None:
            break
        r0, c0 = pivot
        while True:
            for r in list(col_index.get(c0, ())):
                if r != r0:
                    combine_rows(r0, r, c0)
            others = [c for c in rows.get(r0, {}) if c != c0]
            for c in others:
                combine_cols(c0, c, r0)
            col_clean = col_index.get(c0, set()) <= {r0}
            row_clean = set(rows.get(r0, {})) <= {c0}
            if col_clean and row_clean:
                break
        pivots.append(abs(rows[r0][c0]))
        for c in list(rows.get(r0, {})):
            col_index[c].discard(r0)
        rows.pop(r0, None)
    return len(pivots), normalize_divisors(pivots)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) = x*a + y*b."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _lincomb(d0: dict, a: int, d1: dict, b: int) -> dict:
    out = {}
    for k, v in d0.items():
        nv = a * v
        if nv:
            out[k] = nv
    for k, v in d1.items():
        nv = out.get(k, 0) + b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _set_row(rows, col_index, r, new_row):
    for c in rows.get(r, {}):
        col_index[c].discard(r)
    if new_row:
        rows[r] = new_row
        for c in new_row:
            col_index.setdefault(c, set()).add(r)
    else:
        rows.pop(r, None)


def _set_col(rows, col_index, c, new_col):
    for r in list(col_index.get(c, ())):
        rows[r].pop(c, None)
    col_index[c] = set()
    for r, v in new_col.items():
        rows.setdefault(r, {})[c] = v
        col_index[c].add(r)


def normalize_divisors(pivots) -> list[int]:
    """Invariant factors of diag(pivots): gcd/lcm sweep until divisibility holds."""
    divs = sorted(abs(p) for p in pivots)
    nontrivial = [d for d in divs if d != 1]
    ones = len(divs) - len(nontrivial)
    changed = True
    while changed:
        changed = False
        for i in range(len(nontrivial)):
            for j in range(i + 1, len(nontrivial)):
                a, b = nontrivial[i], nontrivial[j]
                if b % a != 0:
                    g = math.gcd(a, b)
                    nontrivial[i], nontrivial[j] = g, a * b // g
                    changed = True
        nontrivial.sort()
    new_ones = sum(1 for d in nontrivial if d == 1)
    return [1] * (ones + new_ones) + [d for d in nontrivial if d != 1]


def kernel_basis(mat: SparseCols) -> list[dict]:
    """Integer basis of ker(mat) as sparse column vectors.

    Unimodular column reduction: the recorded column operations are tracked
    on an identity block, and the tracker columns sitting under zero columns
    of the reduced matrix form a lattice basis of the kernel (kernels of
    integer matrices are saturated, so this basis spans every integer
    kernel vector over Z).
    """
    ncols = mat.ncols
    work = [dict(c) for c in mat.cols]
    track = [{j: 1} for j in range(ncols)]
    # smallest remaining row of each active column drives the sweep
    active = set(range(ncols))
    row_order: dict[int, set[int]] = {}
    for j in active:
        for r in work[j]:
            row_order.setdefault(r, set()).add(j)

    def col_update(j, newcol):
        for r in work[j]:
            row_order[r].discard(j)
        work[j] = newcol
        for r in newcol:
            row_order.setdefault(r, set()).add(j)

    for r in sorted(row_order):
        js = [j for j in row_order.get(r, ()) if j in active]
        if not js:
            continue
        j0 = min(js, key=lambda j: (abs(work[j][r]), j))
        for j in js:
            if j == j0:
                continue
            a = work[j0][r]
            b = work[j][r]
            if b % a == 0:
                q = b // a
                col_update(j, _lincomb(work[j], 1, work[j0], -q))
                track[j] = _lincomb(track[j], 1, track[j0], -q)
            else:
                g, x, y = _ext_gcd(a, b)
                c0, c1 = dict(work[j0]), dict(work[j])
                t0, t1 = dict(track[j0]), dict(track[j])
                col_update(j0, _lincomb(c0, x, c1, y))
                col_update(j, _lincomb(c0, -(b // g), c1, a // g))
                track[j0] = _lincomb(t0, x, t1, y)
                track[j] = _lincomb(t0, -(b // g), t1, a // g)
        active.discard(j0)
    out = []
    for j in sorted(active):
        if not work[j]:
            vec = track[j]
            g = 0
            for v in vec.values():
                g = math.gcd(g, v)
            if g > 1:
                vec = {k: v // g for k, v in vec.items()}
            out.append(vec)
    return out


class IntEchelon:
    """Incremental exact rank of a growing family of sparse integer vectors."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            piv = self.pivots.get(lead)
            if piv is None:
                return vec
            a = vec[lead]
            b = piv[lead]
            if a % b == 0:
                vec = _lincomb(vec, 1, piv, -(a // b))
            else:
                g = math.gcd(a, b)
                vec = _lincomb(vec, b // g, piv, -(a // g))
        return vec

    def add(self, vec: dict) -> bool:
        """Insert a vector; True when it increased the rank."""
        red = self.reduce(vec)
        if not red:
            return False
        g = 0
        for v in red.values():
            g = math.gcd(g, v)
        if g > 1:
            red = {k: v // g for k, v in red.items()}
        self.pivots[min(red)] = red
        return True


def sparse_rank(vectors) -> int:
    ech = IntEchelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


class HomologyResult:
    """Reduced Betti numbers and torsion divisors per degree."""

    def __init__(self, betti, torsion, f_vector):
        self.betti = list(betti)
        self.torsion = [list(t) for t in torsion]
        self.f_vector = list(f_vector)

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "f_vector": self.f_vector,
            "homology": [
                {"degree": d, "betti": self.betti[d], "torsion": self.torsion[d]}
                for d in range(len(self.betti))
            ],
        }

    def __eq__(self, other):
        return (
            isinstance(other, HomologyResult)
            and self.betti == other.betti
            and self.torsion == other.torsion
        )

    def __repr__(self):
        return f"HomologyResult(betti={self.betti}, torsion={self.torsion})"


def reduced_homology(cc: ChainComplex) -> HomologyResult:
    """Reduced integral homology from exact Smith data of the boundaries."""
    top = cc.dim
    if top < 0:
        return HomologyResult([], [], [])
    ranks = []
    divisors = []
    for d in range(top + 1):
        r, dv = smith_rank_and_divisors(cc.boundaries[d])
        ranks.append(r)
        divisors.append(dv)
    betti = []
    torsion = []
    for d in range(top + 1):
        null_d = cc.f[d] - ranks[d]
        r_above = ranks[d + 1] if d + 1 <= top else 0
        betti.append(null_d - r_above)
        tors = [x for x in (divisors[d + 1] if d + 1 <= top else []) if x != 1]
        torsion.append(tors)
    return HomologyResult(betti, torsion, cc.f)


def euler_characteristic_checks(cc: ChainComplex, hom: HomologyResult) -> bool:
    """Reduced Euler characteristic computed two ways."""
    from_f = sum((-1) ** d * f for d, f in enumerate(cc.f)) - 1
    from_b = sum((-1) ** d * b for d, b in enumerate(hom.betti))
    return from_f == from_b


# ---------------------------------------------------------------------------
# induced maps and fixed subspaces


class InducedTopMap:
    def __init__(self, matrix, rank, src_cycle_rank, dst_cycle_rank):
        self.matrix = matrix  # rows: dst cycle coords, cols: src cycle basis images
        self.rank = rank
        self.src_cycle_rank = src_cycle_rank
        self.dst_cycle_rank = dst_cycle_rank

    @property
    def kernel_rank(self) -> int:
        return self.src_cycle_rank - self.rank

    def __repr__(self):
        return f"InducedTopMap(rank={self.rank}, src={self.src_cycle_rank}, dst={self.dst_cycle_rank})"


def induced_top_map(simplicial_map, src_cc: ChainComplex, dst_cc: ChainComplex) -> InducedTopMap:
    """Matrix of the induced map on top cycle lattices for a rank-preserving
    simplicial map (top homology is the full cycle lattice there)."""
    src, dst = simplicial_map.src, simplicial_map.dst
    top = src.dim
    if dst.dim != top:
        raise ValueError("map is not dimension-preserving on facets")
    dst_pos = dst.simplex_pos[top]
    images = []
    for t in src.simplices[top]:
        img = simplicial_map.simplex_image(t)
        if len(set(img)) != len(img):
            images.append(None)  # degenerate facet contributes 0
            continue
        j = dst_pos.get(img)
        if j is None:
            raise ValueError("image of a facet is not a facet; map is not simplicial")
        images.append(j)
    z_src = kernel_basis(src_cc.boundaries[top])
    z_dst = kernel_basis(dst_cc.boundaries[top])
    pushed = []
    for z in z_src:
        acc: dict[int, int] = {}
        for i, v in z.items():
            j = images[i]
            if j is None:
                continue
            nv = acc.get(j, 0) + v
            if nv:
                acc[j] = nv
            else:
                acc.pop(j, None)
        pushed.append(acc)
    rank = sparse_rank(pushed)
    matrix = _coords_in_basis(z_dst, pushed, len(dst.simplices[top]))
    return InducedTopMap(matrix, rank, len(z_src), len(z_dst))


def _coords_in_basis(basis_cols, vec_cols, nrows) -> list[list[int]]:
    """Solve basis * X = vecs exactly; returns X as a dense row list.

    The basis columns are an integer lattice basis of a saturated sublattice
    containing every vec, so the solution is integral.
    """
    if not basis_cols:
        if any(vec_cols[i] for i in range(len(vec_cols))):
            raise ValueError("vectors outside the span of an empty basis")
        return []
    aug_rows = sorted({r for c in basis_cols for r in c} | {r for c in vec_cols for r in c})
    row_of = {r: i for i, r in enumerate(aug_rows)}
    m = len(aug_rows)
    nb = len(basis_cols)
    nv = len(vec_cols)
    A = [[Fraction(0)] * (nb + nv) for _ in range(m)]
    for j, col in enumerate(basis_cols):
        for r, v in col.items():
            A[row_of[r]][j] = Fraction(v)
    for j, col in enumerate(vec_cols):
        for r, v in col.items():
            A[row_of[r]][nb + j] = Fraction(v)
    # forward elimination on the basis block
    piv_rows = []
    r = 0
    for j in range(nb):
        pr = next((i for i in range(r, m) if A[i][j] != 0), None)
        if pr is None:
            raise ValueError("basis columns are dependent")
        A[r], A[pr] = A[pr], A[r]
        pv = A[r][j]
        A[r] = [x / pv for x in A[r]]
        for i in range(m):
            if i != r and A[i][j] != 0:
                f = A[i][j]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_rows.append(r)
        r += 1
    # consistency: rows below the pivots must be zero on the vec block
    for i in range(r, m):
        if any(A[i][nb + j] != 0 for j in range(nv)):
            raise ValueError("vector outside the span of the basis")
    X = [[A[i][nb + j] for j in range(nv)] for i in range(nb)]
    out = []
    for row in X:
        introw = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("non-integral coordinates against a lattice basis")
            introw.append(int(x))
        out.append(introw)
    return out


def fixed_subspace_dim(cc: ChainComplex, degree: int, simplex_perms) -> int:
    """Dimension over Q of the simultaneous fixed space of the generators on
    reduced homology in the given degree.

    The action permutes the d-simplices (ranks along a flag are distinct, so
    no orientation signs appear).  With Z the cycle lattice and B the
    boundary image, the fixed space is {z : (g-1)z in B for all g} / B and
    its dimension is computed by exact rank arithmetic.
    """
    if not (0 <= degree <= cc.dim):
        raise ValueError(f"degree {degree} out of range")
    z_basis = kernel_basis(cc.boundaries[degree])
    zdim = len(z_basis)
    if zdim == 0:
        return 0
    b_cols = cc.boundaries[degree + 1].cols if degree + 1 <= cc.dim else []
    rank_b, _ = (
        smith_rank_and_divisors(cc.boundaries[degree + 1]) if degree + 1 <= cc.dim else (0, [])
    )
    f_d = cc.f[degree]
    stacked = []
    nperms = len(simplex_perms)
    for gi, perm in enumerate(simplex_perms):
        offset = gi * f_d
        for z in z_basis:
            moved: dict[int, int] = {}
            for r, v in z.items():
                pr = perm[r] + offset
                moved[pr] = moved.get(pr, 0) + v
            for r, v in z.items():
                rr = r + offset
                nv = moved.get(rr, 0) - v
                if nv:
                    moved[rr] = nv
                else:
                    moved.pop(rr, None)
            stacked.append(moved)
    # columns of the big system: [(g-1)Z blocks] then blockdiag(B)
    ncols_z = zdim
    big = []
    for j in range(ncols_z):
        col: dict[int, int] = {}
        for gi in range(nperms):
            vec = stacked[gi * ncols_z + j]
            col.update(vec)
        big.append(col)
    # note: each stacked vector already lives in its own row block, so the
    # union above is disjoint
    for gi in range(nperms):
        offset = gi * f_d
        for bc in b_cols:
            big.append({r + offset: v for r, v in bc.items()})
    rank_big = sparse_rank(big)
    dim_w = zdim - (rank_big - nperms * rank_b)
    return dim_w - rank_b
