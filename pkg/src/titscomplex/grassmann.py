"""Grassmannians of free-and-cofree summands, good flags, and their counts.

Two independent routes are kept side by side on purpose: closed counting
formulas (Gaussian binomials, the radical factorisation of |Gr_k^n|) and
honest enumeration by basis extension.  Tests and the verify suite hold the
two against each other.
"""

from __future__ import annotations

from .rings import DEFAULT_BUDGET, Ring, RingSpec, check_budget, make_ring
from .linalg import (
    Summand,
    all_vectors,
    is_unimodular,
    quotient_free_rank_members,
    span_if_free,
    _extend_span,
    zero_summand,
)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, as an exact integer.

    Accepts any integer q >= 2; whether q is a prime power is the caller's
    concern (the counting identities are polynomial in q).
    """
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def gl_order_field(n: int, q: int) -> int:
    """|GL_n(F_q)| by the standard product formula."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def gl_order(spec: RingSpec, n: int) -> int:
    """|GL_n(R)| for a supported finite ring, via the radical factorisation."""
    ring = make_ring(spec)
    rad = ring.radical
    out = rad.size ** (n * n)
    for q in rad.residue_field_orders:
        out *= gl_order_field(n, q)
    return out


def grassmannian_size_formula(spec: RingSpec, n: int, k: int) -> int:
    """|Gr_k^n(R)| = |J|^(k(n-k)) * prod |Gr_k^n(F_i)| over the residue fields."""
    ring = make_ring(spec)
    rad = ring.radical
    out = rad.size ** (k * (n - k))
    for q in rad.residue_field_orders:
        out *= gaussian_binomial(n, k, q)
    return out


def flag_type(parts, n: int) -> tuple:
    """Validated composition (lambda_1, ..., lambda_{k+1}) of n, all parts >= 1."""
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"flag type parts must be >= 1: {parts}")
    if sum(parts) != n:
        raise ValueError(f"flag type {parts} does not sum to n={n}")
    return parts


def proper_ranks(lam) -> tuple:
    """Ranks of the proper summands in a flag of the given type."""
    ranks = []
    total = 0
    for p in lam[:-1]:
        total += p
        ranks.append(total)
    return tuple(ranks)


class Flag:
    """A good flag: a chain of summands, strictly increasing in the cofree order."""

    __slots__ = ("summands",)

    def __init__(self, summands):
        self.summands = tuple(summands)

    @property
    def ranks(self) -> tuple:
        return tuple(s.rank for s in self.summands)

    def type(self, n: int) -> tuple:
        ranks = self.ranks
        parts = []
        prev = 0
        for r in ranks:
            parts.append(r - prev)
            prev = r
        parts.append(n - prev)
        return tuple(parts)

    @property
    def key(self):
        return tuple(s.key for s in self.summands)

    def verify(self, budget: int | None = DEFAULT_BUDGET) -> bool:
        """Re-check every step of the chain for cofreeness (independent of
        how the flag was built)."""
        if not self.summands:
            return True
        ring = self.summands[0].ring
        n = self.summands[0].ambient
        prev = None
        for s in self.summands:
            if prev is not None:
                if not prev.members <= s.members:
                    return False
                gap = quotient_free_rank_members(ring, n, s.key, prev.members, budget)
                if gap != s.rank - prev.rank:
                    return False
            prev = s
        top = self.summands[-1]
        return quotient_free_rank_members(ring, n, None, top.members, budget) == n - top.rank

    def __eq__(self, other):
        return isinstance(other, Flag) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __len__(self):
        return len(self.summands)

    def __repr__(self):
        return f"Flag(ranks {self.ranks})"


class SummandCatalog:
    """Per-(ring, n) cache of Grassmannians and cofree extension data.

    Enumeration is bottom-up: rank-1 summands come from the unimodular
    vector sweep (a basis vector is always unimodular, so nothing is lost),
    rank k from extending rank k-1 bases by one column.  Deduplication is by
    member-set fingerprint and every accepted summand passes the honest
    cofreeness test against the ambient module.
    """

    def __init__(self, ring: Ring, n: int, budget: int | None = DEFAULT_BUDGET):
        self.ring = ring
        self.n = n
        self.budget = budget
        self._gr: dict[int, list[Summand]] = {}
        self._by_members: dict[frozenset, Summand] = {}
        self._cofree_in_ambient: dict[frozenset, bool] = {}
        self._over: dict[tuple, list[Summand]] = {}

    def canonical(self, members: frozenset, rank: int, basis) -> Summand:
        s = self._by_members.get(members)
        if s is None:
            s = Summand(self.ring, self.n, rank, members, basis)
            self._by_members[members] = s
        return s

    def _ambient_cofree(self, members: frozenset, rank: int) -> bool:
        ok = self._cofree_in_ambient.get(members)
        if ok is None:
            r = quotient_free_rank_members(self.ring, self.n, None, members, self.budget)
            ok = r == self.n - rank
            self._cofree_in_ambient[members] = ok
        return ok

    def grassmannian(self, k: int) -> list[Summand]:
        if not (0 <= k <= self.n):
            raise ValueError(f"need 0 <= k <= n, got k={k}, n={self.n}")
        got = self._gr.get(k)
        if got is not None:
            return got
        ring, n = self.ring, self.n
        if 1 <= k < n:
            check_budget(ring.card ** (n * k), self.budget, f"Gr_{k}^{n}({ring.spec.label})")
        if k == 0:
            out = [zero_summand(ring, n)]
        elif k == n:
            members = frozenset(all_vectors(ring, n, self.budget))
            ident = [tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)]
            out = [self.canonical(members, n, ident)]
        elif k == 1:
            out = []
            seen = set()
            for v in all_vectors(ring, n, self.budget):
                if not is_unimodular(ring, v):
                    continue
                members = span_if_free(ring, [v], self.budget)
                if members is None or members in seen:
                    continue
                seen.add(members)
                if self._ambient_cofree(members, 1):
                    out.append(self.canonical(members, 1, (v,)))
        else:
            out = []
            seen = set()
            for s in self.grassmannian(k - 1):
                for v in all_vectors(ring, n, self.budget):
                    if v in s.members:
                        continue
                    ext = _extend_span(ring, s.members, v)
                    if ext is None:
                        continue
                    members = frozenset(ext)
                    if members in seen:
                        continue
                    seen.add(members)
                    if self._ambient_cofree(members, k):
                        out.append(self.canonical(members, k, s.basis + (v,)))
        out.sort()
        self._gr[k] = out
        return out

    def oversummands(self, s: Summand, target_rank: int) -> list[Summand]:
        """Summands of the target rank containing s as a cofree summand.

        Built by extending a basis of s one column at a time; each single
        step keeps s cofree by construction, and multi-step reachability is
        exactly cofree containment because a flag basis can be built through
        any intermediate rank.
        """
        if target_rank <= s.rank or target_rank > self.n:
            raise ValueError("target rank out of range")
        key = (s.members, target_rank)
        got = self._over.get(key)
        if got is not None:
            return got
        ring, n = self.ring, self.n
        current = {s.members: s}
        for rank in range(s.rank + 1, target_rank + 1):
            nxt: dict[frozenset, Summand] = {}
            for base in current.values():
                for v in all_vectors(ring, n, self.budget):
                    if v in base.members:
                        continue
                    ext = _extend_span(ring, base.members, v)
                    if ext is None:
                        continue
                    members = frozenset(ext)
                    if members in nxt:
                        continue
                    if self._ambient_cofree(members, rank):
                        nxt[members] = self.canonical(members, rank, base.basis + (v,))
            current = nxt
        out = sorted(current.values())
        self._over[key] = out
        return out


def enumerate_grassmannian(
    spec_or_ring, n: int, k: int, budget: int | None = DEFAULT_BUDGET, catalog: SummandCatalog | None = None
) -> list[Summand]:
    """Complete, duplicate-free, deterministically ordered list of Gr_k^n(R)."""
    ring = spec_or_ring if isinstance(spec_or_ring, Ring) else make_ring(spec_or_ring)
    if catalog is None:
        catalog = SummandCatalog(ring, n, budget)
    return catalog.grassmannian(k)


def enumerate_good_flags(
    spec_or_ring, n: int, lam, budget: int | None = DEFAULT_BUDGET, catalog: SummandCatalog | None = None
) -> list[Flag]:
    """All good flags of the given type, by iterated cofree extension."""
    ring = spec_or_ring if isinstance(spec_or_ring, Ring) else make_ring(spec_or_ring)
    lam = flag_type(lam, n)
    ranks = proper_ranks(lam)
    if catalog is None:
        catalog = SummandCatalog(ring, n, budget)
    if not ranks:
        return [Flag(())]
    chains = [(s,) for s in catalog.grassmannian(ranks[0])]
    for r in ranks[1:]:
        chains = [c + (w,) for c in chains for w in catalog.oversummands(c[-1], r)]
    flags = sorted(Flag(c) for c in chains)
    return flags
