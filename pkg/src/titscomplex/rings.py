"""Exact arithmetic for the finite commutative rings this library supports.

Four kinds of rings are available: Z/m, prime fields F_p, truncated
polynomial rings F_p[x]/(x^k), and finite products of these.  Every ring is
small enough to precompute full addition/multiplication tables, so all
downstream code works with element *indices* into a fixed canonical
enumeration; this keeps the hot enumeration loops at table-lookup speed and
makes every canonical form reproducible across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured object budget."""

    def __init__(self, estimate, budget, what=""):
        self.estimate = estimate
        self.budget = budget
        self.what = what
        msg = f"enumeration of {what or 'objects'} needs ~{estimate} objects, budget is {budget}"
        super().__init__(msg)


def check_budget(estimate, budget, what=""):
    if budget is not None and estimate > budget:
        raise BudgetExceeded(estimate, budget, what)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending (trial division; n is desk-scale)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class RingSpec:
    """Structural description of a supported finite commutative ring.

    kind is one of "modular", "prime_field", "trunc_poly", "product";
    params are (m,), (p,), (p, k) and a tuple of non-product factor specs
    respectively.  Specs are immutable, hashable, and render to the text
    syntax understood by parse_ring_spec (Z/12, F7, F2[e]^3, Z/2xZ/9).
    """

    __slots__ = ("kind", "params")

    def __init__(self, kind, params):
        self.kind = kind
        self.params = params

    @staticmethod
    def modular(m: int) -> "RingSpec":
        if m < 2:
            raise ValueError(f"modular ring needs modulus >= 2, got {m}")
        return RingSpec("modular", (m,))

    @staticmethod
    def prime_field(p: int) -> "RingSpec":
        if not is_prime(p):
            raise ValueError(f"prime field needs a prime, got {p}")
        return RingSpec("prime_field", (p,))

    @staticmethod
    def truncated_poly(p: int, k: int) -> "RingSpec":
        if not is_prime(p):
            raise ValueError(f"truncated polynomial ring needs a prime base, got {p}")
        if k < 1:
            raise ValueError(f"truncation order must be >= 1, got {k}")
        return RingSpec("trunc_poly", (p, k))

    @staticmethod
    def product(factors) -> "RingSpec":
        flat = []
        for f in factors:
            if f.kind == "product":
                flat.extend(f.params)
            else:
                flat.append(f)
        if not flat:
            raise ValueError("product ring needs at least one factor")
        if len(flat) == 1:
            return flat[0]
        return RingSpec("product", tuple(flat))

    @property
    def cardinality(self) -> int:
        if self.kind in ("modular", "prime_field"):
            return self.params[0]
        if self.kind == "trunc_poly":
            p, k = self.params
            return p**k
        return _prod(f.cardinality for f in self.params)

    @property
    def label(self) -> str:
        if self.kind == "modular":
            return f"Z/{self.params[0]}"
        if self.kind == "prime_field":
            return f"F{self.params[0]}"
        if self.kind == "trunc_poly":
            p, k = self.params
            return f"F{p}[e]^{k}"
        return "x".join(f.label for f in self.params)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self.kind == other.kind and self.params == other.params

    def __hash__(self):
        return hash((self.kind, self.params))

    def __repr__(self):
        return f"RingSpec({self.label!r})"


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def parse_ring_spec(text: str) -> RingSpec:
    """Parse the CLI ring syntax.

    Grammar (round-trips through RingSpec.label):
        spec    := atom ("x" atom)*
        atom    := "Z/" int | "F" prime | "F" prime "[e]" ("^" int)?
    F2[e] with no exponent means F2[e]^2, the dual numbers.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty ring spec")
    parts = text.split("x")
    atoms = [_parse_atom(p.strip(), text) for p in parts]
    return RingSpec.product(atoms)


def _parse_atom(atom: str, full: str) -> RingSpec:
    err = ValueError(f"cannot parse ring spec {full!r} (bad component {atom!r})")
    if atom.startswith("Z/"):
        try:
            m = int(atom[2:])
        except ValueError:
            raise err from None
        return RingSpec.modular(m)
    if atom.startswith("F"):
        rest = atom[1:]
        k = None
        if "[e]" in rest:
            base, _, exp = rest.partition("[e]")
            if exp == "":
                k = 2
            elif exp.startswith("^"):
                try:
                    k = int(exp[1:])
                except ValueError:
                    raise err from None
            else:
                raise err
            rest = base
        try:
            p = int(rest)
        except ValueError:
            raise err from None
        if not is_prime(p):
            raise ValueError(f"cannot parse ring spec {full!r}: {p} is not prime")
        if k is None:
            return RingSpec.prime_field(p)
        return RingSpec.truncated_poly(p, k)
    raise err


# ---------------------------------------------------------------------------
# payload-level arithmetic, used once to build the tables


def _payloads(spec: RingSpec) -> list:
    if spec.kind in ("modular", "prime_field"):
        return list(range(spec.params[0]))
    if spec.kind == "trunc_poly":
        p, k = spec.params
        out = []
        for v in range(p**k):
            digits = []
            for _ in range(k):
                digits.append(v % p)
                v //= p
            out.append(tuple(digits))
        return out
    factor_lists = [_payloads(f) for f in spec.params]
    return [tuple(t) for t in itertools.product(*factor_lists)]


def _pay_add(spec, a, b):
    if spec.kind in ("modular", "prime_field"):
        return (a + b) % spec.params[0]
    if spec.kind == "trunc_poly":
        p = spec.params[0]
        return tuple((x + y) % p for x, y in zip(a, b))
    return tuple(_pay_add(f, x, y) for f, x, y in zip(spec.params, a, b))


def _pay_neg(spec, a):
    if spec.kind in ("modular", "prime_field"):
        return (-a) % spec.params[0]
    if spec.kind == "trunc_poly":
        p = spec.params[0]
        return tuple((-x) % p for x in a)
    return tuple(_pay_neg(f, x) for f, x in zip(spec.params, a))


def _pay_mul(spec, a, b):
    if spec.kind in ("modular", "prime_field"):
        return (a * b) % spec.params[0]
    if spec.kind == "trunc_poly":
        p, k = spec.params
        out = [0] * k
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if i + j < k:
                    out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)
    return tuple(_pay_mul(f, x, y) for f, x, y in zip(spec.params, a, b))


@dataclass(frozen=True)
class RadicalData:
    """Jacobson radical of a ring plus the residue field orders of R/J."""

    generators: tuple  # payloads
    elements: frozenset  # element indices
    residue_field_orders: tuple

    @property
    def size(self) -> int:
        return len(self.elements)


class Ring:
    """A finite commutative ring with fully tabulated arithmetic.

    Elements are referred to by index into `payloads`, the canonical
    enumeration (numeric order for Z/m and F_p[x]/(x^k), lexicographic
    component order for products).  All state is immutable after
    construction.
    """

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self.payloads = _payloads(spec)
        self.card = len(self.payloads)
        self.index = {p: i for i, p in enumerate(self.payloads)}
        q = self.card
        self.add = [[0] * q for _ in range(q)]
        self.mul = [[0] * q for _ in range(q)]
        self.neg = [0] * q
        for i, a in enumerate(self.payloads):
            self.neg[i] = self.index[_pay_neg(spec, a)]
            row_a, row_m = self.add[i], self.mul[i]
            for j, b in enumerate(self.payloads):
                row_a[j] = self.index[_pay_add(spec, a, b)]
                row_m[j] = self.index[_pay_mul(spec, a, b)]
        self.zero = self.index[_payloads_zero(spec)]
        self.one = self.index[_payloads_one(spec)]
        self.inv: list[int | None] = [None] * q
        for i in range(q):
            for j in range(q):
                if self.mul[i][j] == self.one:
                    self.inv[i] = j
                    break
        self.units = frozenset(i for i in range(q) if self.inv[i] is not None)
        self._radical = None

    # -- conversions -------------------------------------------------------
    def el(self, payload) -> int:
        """Index of the element with the given canonical payload."""
        return self.index[payload]

    def payload(self, i: int):
        return self.payloads[i]

    def element(self, payload) -> "RingElement":
        return RingElement(self, self.index[payload])

    def elements(self) -> list["RingElement"]:
        return [RingElement(self, i) for i in range(self.card)]

    def vec(self, payloads) -> tuple:
        """Vector of element indices from a sequence of payloads."""
        return tuple(self.index[p] for p in payloads)

    def vec_payloads(self, v) -> tuple:
        return tuple(self.payloads[i] for i in v)

    # -- structure ---------------------------------------------------------
    def additive_generators(self) -> list[int]:
        """Indices of a generating set of (R, +); used for elementary matrices."""
        return [self.index[p] for p in _additive_generator_payloads(self.spec)]

    @property
    def radical(self) -> RadicalData:
        if self._radical is None:
            gens, payset, orders = _radical_payloads(self.spec)
            self._radical = RadicalData(
                generators=tuple(gens),
                elements=frozenset(self.index[p] for p in payset),
                residue_field_orders=tuple(orders),
            )
        return self._radical

    def __repr__(self):
        return f"Ring({self.spec.label!r})"


def _payloads_zero(spec):
    if spec.kind in ("modular", "prime_field"):
        return 0
    if spec.kind == "trunc_poly":
        return (0,) * spec.params[1]
    return tuple(_payloads_zero(f) for f in spec.params)


def _payloads_one(spec):
    if spec.kind in ("modular", "prime_field"):
        return 1
    if spec.kind == "trunc_poly":
        return (1,) + (0,) * (spec.params[1] - 1)
    return tuple(_payloads_one(f) for f in spec.params)


def _additive_generator_payloads(spec):
    if spec.kind in ("modular", "prime_field"):
        return [1]
    if spec.kind == "trunc_poly":
        p, k = spec.params
        gens = []
        for j in range(k):
            mono = [0] * k
            mono[j] = 1
            gens.append(tuple(mono))
        return gens
    gens = []
    for pos, f in enumerate(spec.params):
        zero = tuple(_payloads_zero(g) for g in spec.params)
        for g in _additive_generator_payloads(f):
            emb = list(zero)
            emb[pos] = g
            gens.append(tuple(emb))
    return gens


def _radical_payloads(spec):
    """(generator payloads, payload set of J, residue field orders)."""
    if spec.kind == "prime_field":
        return [], {0}, [spec.params[0]]
    if spec.kind == "modular":
        m = spec.params[0]
        primes = prime_factors(m)
        rad = _prod(primes)  # J = (rad), so J = 0 exactly when m is squarefree
        if rad == m:
            return [], {0}, primes
        return [rad], set(range(0, m, rad)), primes
    if spec.kind == "trunc_poly":
        p, k = spec.params
        if k == 1:
            return [], {(0,)}, [p]
        x = tuple([0, 1] + [0] * (k - 2))
        payset = {t for t in _payloads(spec) if t[0] == 0}
        return [x], payset, [p]
    # product: componentwise combination
    gens = []
    paysets = []
    orders = []
    zero = tuple(_payloads_zero(f) for f in spec.params)
    for pos, f in enumerate(spec.params):
        g, s, o = _radical_payloads(f)
        paysets.append(sorted(s))
        orders.extend(o)
        for gen in g:
            emb = list(zero)
            emb[pos] = gen
            gens.append(tuple(emb))
    payset = {tuple(t) for t in itertools.product(*paysets)}
    return gens, payset, orders


class RingElement:
    """An element of a Ring; thin immutable wrapper over an element index."""

    __slots__ = ("ring", "i")

    def __init__(self, ring: Ring, i: int):
        self.ring = ring
        self.i = i

    @property
    def payload(self):
        return self.ring.payloads[self.i]

    def _coerce(self, other) -> int:
        if not isinstance(other, RingElement):
            raise TypeError(f"cannot combine RingElement with {type(other).__name__}")
        if other.ring.spec != self.ring.spec:
            raise ValueError(
                f"ring mismatch: {self.ring.spec.label} vs {other.ring.spec.label}"
            )
        return other.i

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add[self.i][self._coerce(other)])

    def __sub__(self, other):
        j = self._coerce(other)
        return RingElement(self.ring, self.ring.add[self.i][self.ring.neg[j]])

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul[self.i][self._coerce(other)])

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg[self.i])

    def inverse(self) -> "RingElement | None":
        """Multiplicative inverse if this element is a unit, else None."""
        j = self.ring.inv[self.i]
        return None if j is None else RingElement(self.ring, j)

    def is_unit(self) -> bool:
        return self.i in self.ring.units

    def is_zero(self) -> bool:
        return self.i == self.ring.zero

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.ring.spec == other.ring.spec
            and self.i == other.i
        )

    def __hash__(self):
        return hash((self.ring.spec, self.i))

    def __repr__(self):
        return f"<{self.payload!r} in {self.ring.spec.label}>"


_ring_cache: dict[RingSpec, Ring] = {}


def make_ring(spec: RingSpec) -> Ring:
    """Ring for a spec, cached so tables are built once per process."""
    ring = _ring_cache.get(spec)
    if ring is None:
        ring = Ring(spec)
        _ring_cache[spec] = ring
    return ring


def enumerate_elements(spec: RingSpec, budget: int | None = DEFAULT_BUDGET) -> list[RingElement]:
    """All elements of the ring, once each, in the canonical order."""
    check_budget(spec.cardinality, budget, f"elements of {spec.label}")
    ring = make_ring(spec)
    return ring.elements()


def ideal_closure(ring: Ring, element_indices) -> frozenset:
    """The ideal generated by the given elements, as a set of indices.

    Computed as the additive closure of all multiples r*a; exhaustive and
    exact, intended for desk-scale rings.
    """
    mul = ring.mul
    add = ring.add
    multiples = {mul[r][a] for a in element_indices for r in range(ring.card)}
    closure = {ring.zero}
    frontier = list(multiples)
    closure.update(frontier)
    while frontier:
        new = []
        for x in frontier:
            row = add[x]
            for y in multiples:
                z = row[y]
                if z not in closure:
                    closure.add(z)
                    new.append(z)
        frontier = new
    return frozenset(closure)


def quotient_spec(spec: RingSpec, ring: Ring, ideal_gen_indices):
    """Quotient R/I as a supported spec, with the payload reduction map.

    Returns (target_spec, reduce) where reduce maps a source payload to the
    corresponding target payload.  Raises ValueError when R/I is the zero
    ring or otherwise not expressible in a supported kind.
    """
    gens = [ring.payloads[i] for i in ideal_gen_indices]
    return _quotient_spec_payload(spec, gens)


def _quotient_spec_payload(spec, gen_payloads):
    import math

    if spec.kind in ("modular", "prime_field"):
        m = spec.params[0]
        d = m
        for g in gen_payloads:
            d = math.gcd(d, g)
        if d == 1:
            raise ValueError(f"quotient of {spec.label} by a unit ideal is the zero ring")
        if d == m:
            return spec, lambda a: a
        return RingSpec.modular(d), lambda a, d=d: a % d
    if spec.kind == "trunc_poly":
        p, k = spec.params
        j = k
        for g in gen_payloads:
            val = next((t for t, c in enumerate(g) if c != 0), k)
            j = min(j, val)
        if j == 0:
            raise ValueError(f"quotient of {spec.label} by a unit ideal is the zero ring")
        if j == k:
            return spec, lambda a: a
        return RingSpec.truncated_poly(p, j), lambda a, j=j: a[:j]
    # product: reduce componentwise, dropping factors that die
    factors = spec.params
    sub = []
    for pos, f in enumerate(factors):
        comp_gens = [g[pos] for g in gen_payloads]
        try:
            tspec, red = _quotient_spec_payload(f, comp_gens)
            sub.append((pos, tspec, red))
        except ValueError:
            continue
    if not sub:
        raise ValueError(f"quotient of {spec.label} by a unit ideal is the zero ring")
    if len(sub) == 1:
        pos, tspec, red = sub[0]
        return tspec, lambda a, pos=pos, red=red: red(a[pos])
    tspec = RingSpec.product([t for _, t, _ in sub])

    def reduce(a, sub=tuple(sub)):
        return tuple(red(a[pos]) for pos, _, red in sub)

    return tspec, reduce
