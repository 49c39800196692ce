"""Vectors, matrices and submodules of R^n over a finite commutative ring.

Vectors are tuples of element indices (see rings.Ring).  A Summand is a
free direct summand of R^n whose quotient is also free; its identity is the
full member set, which doubles as a canonical fingerprint.  Freeness of a
finite module is decided by cardinality plus generator count: a surjection
R^r -> M between finite sets of equal size is a bijection.
"""

from __future__ import annotations

import itertools
import math

from .rings import DEFAULT_BUDGET, Ring, check_budget


def vadd(ring: Ring, u, v):
    add = ring.add
    return tuple(add[a][b] for a, b in zip(u, v))


def vscale(ring: Ring, a: int, v):
    row = ring.mul[a]
    return tuple(row[x] for x in v)


def zero_vector(ring: Ring, n: int):
    return (ring.zero,) * n


def all_vectors(ring: Ring, n: int, budget: int | None = DEFAULT_BUDGET):
    """All vectors of R^n in canonical (lexicographic index) order."""
    check_budget(ring.card**n, budget, f"vectors of {ring.spec.label}^{n}")
    return [tuple(t) for t in itertools.product(range(ring.card), repeat=n)]


class Mat:
    """A rows x cols matrix of element indices over a fixed ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged matrix rows")

    @staticmethod
    def identity(ring: Ring, n: int) -> "Mat":
        z, o = ring.zero, ring.one
        return Mat(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(ring: Ring, cols) -> "Mat":
        cols = [tuple(c) for c in cols]
        n = len(cols[0])
        return Mat(ring, [[c[i] for c in cols] for i in range(n)])

    @staticmethod
    def from_payload_rows(ring: Ring, rows) -> "Mat":
        return Mat(ring, [[ring.el(x) for x in r] for r in rows])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def column(self, j: int):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def apply(self, v):
        """Matrix times column vector."""
        ring = self.ring
        add, mul = ring.add, ring.mul
        out = []
        for row in self.rows:
            acc = ring.zero
            for a, x in zip(row, v):
                acc = add[acc][mul[a][x]]
            out.append(acc)
        return tuple(out)

    def mul_mat(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        ring = self.ring
        add, mul = ring.add, ring.mul
        ocols = list(zip(*other.rows))
        rows = []
        for row in self.rows:
            out = []
            for col in ocols:
                acc = ring.zero
                for a, x in zip(row, col):
                    acc = add[acc][mul[a][x]]
                out.append(acc)
            rows.append(out)
        return Mat(ring, rows)

    def det(self) -> int:
        """Determinant as an element index (expansion with subset memo, n <= 8)."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n > 8:
            raise ValueError("determinant supported for n <= 8")
        ring = self.ring
        if n == 0:
            return ring.one
        add, mul, neg = ring.add, ring.mul, ring.neg
        rows = self.rows
        # memo[colmask] = det of submatrix on rows 0..popcount-1 and columns in mask
        memo = {0: ring.one}

        def rec(mask: int) -> int:
            val = memo.get(mask)
            if val is not None:
                return val
            i = bin(mask).count("1") - 1
            row = rows[i]
            acc = ring.zero
            sign_pos = i % 2 == 0  # cofactor sign (-1)^(i+pos)
            m = mask
            while m:
                low = m & -m
                j = low.bit_length() - 1
                sub = rec(mask ^ low)
                term = mul[row[j]][sub]
                if not sign_pos:
                    term = neg[term]
                acc = add[acc][term]
                sign_pos = not sign_pos
                m ^= low
            memo[mask] = acc
            return acc

        return rec((1 << n) - 1)

    def is_invertible(self) -> bool:
        return self.det() in self.ring.units

    def payload_rows(self):
        return [tuple(self.ring.payload(x) for x in r) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.ring.spec == other.ring.spec and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring.spec, self.rows))

    def __repr__(self):
        return f"Mat({self.ring.spec.label}, {self.payload_rows()})"


def determinant(M: Mat) -> int:
    return M.det()


def is_unimodular(ring: Ring, v) -> bool:
    """True when the entries of v generate the unit ideal."""
    if ring.spec.kind in ("modular", "prime_field"):
        m = ring.spec.params[0]
        g = m
        for x in v:
            g = math.gcd(g, x)  # payload == index for modular rings
        return g == 1
    from .rings import ideal_closure

    return ring.one in ideal_closure(ring, v)


def span_if_free(ring: Ring, vectors, budget: int | None = DEFAULT_BUDGET):
    """Member set of the span when the given vectors are a free basis, else None.

    Grows the span one generator at a time; any collision proves the
    coefficient map R^k -> span is not injective, which kills freeness of
    the span on this basis.
    """
    k = len(vectors)
    q = ring.card
    check_budget(q**k, budget, "span enumeration")
    members = {zero_vector(ring, len(vectors[0]))}
    for v in vectors:
        members = _extend_span(ring, members, v)
        if members is None:
            return None
    return frozenset(members)


def _extend_span(ring: Ring, members, v):
    """members + R*v, or None if the sum is not direct (size check fails)."""
    add = ring.add
    multiples = []
    for a in range(ring.card):
        row = ring.mul[a]
        multiples.append(tuple(row[x] for x in v))
    out = set()
    target = len(members) * ring.card
    for w in members:
        for m in multiples:
            out.add(tuple(add[a][b] for a, b in zip(w, m)))
    if len(out) != target:
        return None
    return out


class Summand:
    """A free-and-cofree direct summand of R^n.

    Identity is the member set; `key` (the sorted member tuple) is the
    canonical fingerprint used for deduplication and deterministic ordering.
    """

    __slots__ = ("ring", "ambient", "rank", "members", "key", "basis", "_preferred")

    def __init__(self, ring: Ring, ambient: int, rank: int, members: frozenset, basis):
        self.ring = ring
        self.ambient = ambient
        self.rank = rank
        self.members = members
        self.key = tuple(sorted(members))
        self.basis = tuple(basis)
        self._preferred = None

    @property
    def preferred_basis(self):
        """Lexicographically least member tuple that is a basis (canonical)."""
        if self._preferred is None:
            if self.rank == 0:
                self._preferred = ()
            else:
                found = None
                nonzero = [m for m in self.key if m != zero_vector(self.ring, self.ambient)]
                for combo in itertools.combinations(nonzero, self.rank):
                    if span_if_free(self.ring, combo) == self.members:
                        found = combo
                        break
                if found is None:
                    raise RuntimeError("summand has no basis among its members")
                self._preferred = found
        return self._preferred

    def contains(self, other: "Summand") -> bool:
        return other.members <= self.members

    def payload_basis(self):
        return [self.ring.vec_payloads(v) for v in self.preferred_basis]

    def __eq__(self, other):
        return (
            isinstance(other, Summand)
            and self.ring.spec == other.ring.spec
            and self.ambient == other.ambient
            and self.members == other.members
        )

    def __hash__(self):
        return hash((self.ring.spec, self.ambient, self.members))

    def __lt__(self, other):
        return (self.rank, self.key) < (other.rank, other.key)

    def __repr__(self):
        return f"Summand(rank {self.rank} of {self.ring.spec.label}^{self.ambient})"


def canonical_fingerprint(s: Summand):
    return s.key


def zero_summand(ring: Ring, n: int) -> Summand:
    return Summand(ring, n, 0, frozenset({zero_vector(ring, n)}), ())


def span_summand(ring: Ring, vectors, budget: int | None = DEFAULT_BUDGET) -> Summand | None:
    """Summand spanned by the vectors when they are a basis of a free,
    cofree submodule of R^n; None otherwise."""
    if not vectors:
        raise ValueError("span_summand needs at least one vector")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise ValueError("vectors of mixed length")
    members = span_if_free(ring, vectors, budget)
    if members is None:
        return None
    k = len(vectors)
    if k > n:
        return None
    if quotient_free_rank_members(ring, n, None, members, budget) != n - k:
        return None
    return Summand(ring, n, k, members, vectors)


# ---------------------------------------------------------------------------
# quotient modules


class _FiniteModule:
    """A finite quotient module presented by canonical coset representatives.

    reps are vectors of the ambient R^n; repmap sends every element of the
    underlying submodule W to its coset representative.  Addition and
    scaling act through the ambient operations followed by repmap.
    """

    __slots__ = ("ring", "reps", "repmap")

    def __init__(self, ring: Ring, reps, repmap):
        self.ring = ring
        self.reps = reps
        self.repmap = repmap

    @staticmethod
    def quotient(ring: Ring, w_members, v_members) -> "_FiniteModule":
        order = sorted(w_members)
        vlist = sorted(v_members)
        repmap = {}
        reps = []
        for w in order:
            if w in repmap:
                continue
            coset = [vadd(ring, w, v) for v in vlist]
            rep = min(coset)
            reps.append(rep)
            for c in coset:
                repmap[c] = rep
        return _FiniteModule(ring, reps, repmap)

    def scale_orbit(self, x):
        return {self.repmap[vscale(self.ring, a, x)] for a in range(self.ring.card)}

    def quotient_by_cyclic(self, x) -> "_FiniteModule":
        orbit = sorted(self.scale_orbit(x))
        repmap = {}
        reps = []
        for r in self.reps:
            if r in repmap:
                continue
            coset = [self.repmap[vadd(self.ring, r, u)] for u in orbit]
            rep = min(coset)
            reps.append(rep)
            for c in set(coset):
                repmap[c] = rep
        # compose with the existing quotient map so repmap keeps full domain
        full = {w: repmap[r] for w, r in self.repmap.items()}
        return _FiniteModule(self.ring, reps, full)

    def free_rank(self) -> int | None:
        """Rank if this module is free, else None.

        Peels off one free cyclic summand at a time: an element whose scalar
        orbit has full size |R| has zero annihilator, and over the supported
        rings (finite products of chain rings) such an element is a basis
        vector, so the quotient by it stays free exactly when the module
        was free.  If no such element exists the module cannot be free,
        since any basis vector has zero annihilator.
        """
        mod = self
        rank = 0
        card = self.ring.card
        while len(mod.reps) > 1:
            pick = None
            for r in sorted(mod.reps):
                if all(x == self.ring.zero for x in r):
                    continue
                if len(mod.scale_orbit(r)) == card:
                    pick = r
                    break
            if pick is None:
                return None
            mod = mod.quotient_by_cyclic(pick)
            rank += 1
        return rank


def quotient_free_rank_members(
    ring: Ring, n: int, w_members, v_members, budget: int | None = DEFAULT_BUDGET
) -> int | None:
    """Free rank of W/V, or None when the quotient is not free.

    w_members None means W = R^n.  V must be contained in W.
    """
    if w_members is None:
        check_budget(ring.card**n, budget, f"cosets in {ring.spec.label}^{n}")
        w_members = all_vectors(ring, n, budget)
        wset = None
    else:
        wset = w_members
    if wset is not None and not (set(v_members) <= set(wset)):
        raise ValueError("V is not contained in W")
    mod = _FiniteModule.quotient(ring, w_members, v_members)
    size = len(mod.reps)
    # size must be a power of |R| for freeness
    r = 0
    s = size
    while s > 1:
        if s % ring.card != 0:
            return None
        s //= ring.card
        r += 1
    rank = mod.free_rank()
    if rank is None:
        return None
    assert rank == r
    return rank


def quotient_free_rank(W, V, budget: int | None = DEFAULT_BUDGET) -> int | None:
    """Spec-level wrapper: W is a Summand or None (meaning R^n), V a Summand."""
    ring, n = V.ring, V.ambient
    if W is None:
        return quotient_free_rank_members(ring, n, None, V.members, budget)
    if not (V.members <= W.members):
        raise ValueError("V is not contained in W")
    return quotient_free_rank_members(ring, n, W.key, V.members, budget)


def complete_to_basis(ring: Ring, vectors, budget: int | None = DEFAULT_BUDGET) -> Mat | None:
    """Extend a partial basis to a basis of R^n, greedily and deterministically.

    Returns the n x n invertible matrix whose first k columns are the given
    vectors; the next column is always the first candidate, in canonical
    vector order, whose extension still spans a free and cofree summand.
    Returns None when the input itself fails span_summand.
    """
    if not vectors:
        raise ValueError("complete_to_basis needs at least one vector")
    n = len(vectors[0])
    if span_summand(ring, vectors, budget) is None:
        return None
    cols = list(vectors)
    members = span_if_free(ring, cols, budget)
    while len(cols) < n:
        k = len(cols)
        found = False
        for v in all_vectors(ring, n, budget):
            ext = _extend_span(ring, members, v)
            if ext is None:
                continue
            if len(cols) + 1 < n:
                if quotient_free_rank_members(ring, n, None, frozenset(ext), budget) != n - k - 1:
                    continue
            else:
                if len(ext) != ring.card**n:
                    continue
            cols.append(v)
            members = ext
            found = True
            break
        if not found:
            # unreachable for the supported rings (they satisfy the stable
            # range condition that guarantees completability)
            return None
    mat = Mat.from_columns(ring, cols)
    assert mat.is_invertible()
    return mat
