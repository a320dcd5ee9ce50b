"""Exact coefficients, polynomial rings over named variables, and term orders.

Monomials are plain tuples of nonnegative exponents, one entry per ring
variable.  Polynomials are immutable and keep their terms in a dict; the
canonical listing order (``Polynomial.terms``) is grevlex on the ring's own
variable enumeration, whatever term order is active elsewhere.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import BadIndex, FieldMismatch, InvalidOrder, ParseError, ZeroPolynomial

Monomial = tuple


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------


class Field:
    """A coefficient field; elements are ``Fraction`` (QQ) or ``int`` (GF(p))."""

    characteristic: int = 0

    def __call__(self, value):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == 0


class RationalField(Field):
    characteristic = 0
    name = "QQ"

    def __call__(self, value) -> Fraction:
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """GF(p) for an odd prime p < 2**31."""

    def __init__(self, p: int):
        if p < 3 or p >= 2**31 or p % 2 == 0 or not _is_prime(p):
            raise ValueError(f"GF(p) needs an odd prime below 2^31, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value) -> int:
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def signed(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2], used for printing."""
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


QQ = RationalField()
DEFAULT_PRIME = 32003


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return _gf_cached(p)


@lru_cache(maxsize=None)
def _gf_cached(p):
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """``q``/``QQ`` for the rationals, ``p=PRIME`` or ``GF(PRIME)`` for a prime field."""
    t = text.strip()
    if t.lower() in ("q", "qq"):
        return QQ
    m = re.fullmatch(r"(?:p=|GF\()(\d+)\)?", t)
    if not m:
        raise ValueError(f"unknown field {text!r}")
    return GF(int(m.group(1)))


# ---------------------------------------------------------------------------
# monomial helpers
# ---------------------------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def is_squarefree(a: Monomial) -> bool:
    return all(x <= 1 for x in a)


def support(a: Monomial) -> frozenset:
    return frozenset(i for i, x in enumerate(a) if x)


def canonical_key(a: Monomial):
    """Grevlex on the ring's enumeration (variable 0 largest); bigger key = bigger monomial."""
    return (sum(a), tuple(-x for x in reversed(a)))


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


class PolyRing:
    """Polynomial ring over ``field`` in the named variables, in enumeration order."""

    def __init__(self, names: Sequence[str], field: Field = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.field = field if field is not None else GF()
        self.nvars = len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({self.nvars} vars over {self.field!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def one_mono(self) -> Monomial:
        return (0,) * self.nvars

    def var_mono(self, i: int) -> Monomial:
        e = [0] * self.nvars
        e[i] = 1
        return tuple(e)

    def gen(self, i: int) -> "Polynomial":
        return Polynomial(self, {self.var_mono(i): self.field(1)})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.index(name))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.one_mono(): c} if c != 0 else {})

    def monomial(self, mono: Monomial, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(mono): c} if c != 0 else {})

    def from_terms(self, terms: Iterable) -> "Polynomial":
        """Build from ``(coeff, monomial)`` pairs, summing repeats."""
        out: dict = {}
        F = self.field
        for c, m in terms:
            m = tuple(m)
            out[m] = F.add(out.get(m, F(0)), F(c))
        return Polynomial(self, {m: c for m, c in out.items() if c != 0})

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.names, field)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def mono_str(self, mono: Monomial) -> str:
        parts = []
        for i, e in enumerate(mono):
            if e == 1:
                parts.append(self.names[i])
            elif e > 1:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"


class VariableGrid:
    """The m x n grid of variables x[i,j] (1-based), enumerated row-major."""

    def __init__(self, m: int, n: int, symbol: str = "x"):
        if m < 1 or n < 1:
            raise ValueError("grid dimensions must be positive")
        self.m, self.n, self.symbol = m, n, symbol

    def __repr__(self):
        return f"VariableGrid({self.m}x{self.n})"

    def __eq__(self, other):
        return isinstance(other, VariableGrid) and (self.m, self.n, self.symbol) == (other.m, other.n, other.symbol)

    def __hash__(self):
        return hash((self.m, self.n, self.symbol))

    @property
    def size(self) -> int:
        return self.m * self.n

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise BadIndex(f"position ({i},{j}) outside {self.m}x{self.n} grid")
        return (i - 1) * self.n + (j - 1)

    def position(self, k: int) -> tuple:
        if not 0 <= k < self.size:
            raise BadIndex(f"variable index {k} outside grid")
        return divmod(k, self.n)[0] + 1, k % self.n + 1

    def positions(self) -> list:
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    def names(self) -> list:
        return [f"{self.symbol}[{i},{j}]" for i, j in self.positions()]

    def ring(self, field: Field = None) -> PolyRing:
        return PolyRing(self.names(), field)

    def monomial(self, positions: Iterable) -> Monomial:
        """Exponent vector of the product of the given grid positions (repeats allowed)."""
        e = [0] * self.size
        for i, j in positions:
            e[self.index(i, j)] += 1
        return tuple(e)

    def transpose_index(self) -> list:
        """Index map sending x[i,j] of this grid to x[j,i] of the transposed grid."""
        t = VariableGrid(self.n, self.m, self.symbol)
        return [t.index(j, i) for i, j in self.positions()]


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable polynomial: a dict {monomial: nonzero coefficient} over a ring."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping):
        self.ring = ring
        self._terms = dict(terms)
        self._hash = None

    # -- views ------------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def terms(self) -> list:
        """(coeff, monomial) pairs, largest first in the canonical grevlex order."""
        return [(self._terms[m], m) for m in sorted(self._terms, key=canonical_key, reverse=True)]

    def as_dict(self) -> dict:
        return dict(self._terms)

    def monomials(self) -> list:
        return [m for _, m in self.terms]

    def coefficient(self, mono: Monomial):
        return self._terms.get(tuple(mono), self.field(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring.field != self.ring.field:
            raise FieldMismatch(f"{self.ring.field!r} vs {other.ring.field!r}")
        if other.ring.names != self.ring.names:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = F.add(out.get(m, 0), c)
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        F = self.field
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = F.add(out.get(m, 0), F.mul(c1, c2))
        return Polynomial(self.ring, {m: c for m, c in out.items() if c != 0})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Polynomial":
        F = self.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(v, c) for m, v in self._terms.items()})

    def mul_term(self, coeff, mono: Monomial) -> "Polynomial":
        F = self.field
        coeff = F(coeff)
        if coeff == 0:
            return self.ring.zero()
        return Polynomial(
            self.ring, {mono_mul(m, mono): F.mul(c, coeff) for m, c in self._terms.items()}
        )

    def div_term(self, coeff, mono: Monomial) -> "Polynomial":
        """Exact division by the term ``coeff * mono``; every monomial must be divisible."""
        F = self.field
        inv = F.inv(F(coeff))
        out = {}
        for m, c in self._terms.items():
            if not mono_divides(mono, m):
                raise ValueError("term does not divide polynomial")
            out[mono_div(m, mono)] = F.mul(c, inv)
        return Polynomial(self.ring, out)

    def monic(self, order: "TermOrder") -> "Polynomial":
        c, _ = leading_term(order, self)
        return self.scale(self.field.inv(c))

    def change_field(self, field: Field) -> "Polynomial":
        """Reinterpret coefficients in another field (QQ -> GF(p) reduction, or integer lift)."""
        ring = self.ring.with_field(field)
        if isinstance(field, RationalField) and isinstance(self.field, PrimeField):
            conv = lambda c: Fraction(self.field.signed(c))
        else:
            conv = field
        return Polynomial(ring, {m: v for m, v in ((m, conv(c)) for m, c in self._terms.items()) if v != 0})

    def rename(self, ring: PolyRing, index_map: Sequence[int]) -> "Polynomial":
        """Send variable k of this ring to variable ``index_map[k]`` of ``ring``."""
        if ring.field != self.field:
            raise FieldMismatch("rename across fields")
        out = {}
        for m, c in self._terms.items():
            e = [0] * ring.nvars
            for k, x in enumerate(m):
                if x:
                    e[index_map[k]] += x
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map sending variable k to ``images[k]`` (all in one target ring)."""
        target = images[0].ring
        out = target.zero()
        for m, c in self._terms.items():
            t = target.constant(c) if not isinstance(self.field, PrimeField) else target.constant(c)
            for k, x in enumerate(m):
                if x:
                    t = t * images[k] ** x
            out = out + t
        return out

    def evaluate(self, point: Sequence):
        F = self.field
        total = F(0)
        pt = [F(v) for v in point]
        for m, c in self._terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = F.mul(v, F(x**e) if isinstance(F, RationalField) else pow(x, e, F.p))
            total = F.add(total, v)
        return total

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------


def _coeff_str(field: Field, c) -> str:
    if isinstance(field, PrimeField):
        c = field.signed(c)
    return str(c)


def format_polynomial(f: Polynomial) -> str:
    if not f._terms:
        return "0"
    out = []
    for c, m in f.terms:
        cs = _coeff_str(f.field, c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        ms = f.ring.mono_str(m)
        if ms == "1":
            body = cs
        elif cs == "1":
            body = ms
        else:
            body = f"{cs}*{ms}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z_0-9]*(?:\[[\d,\s]+\])?)|(?P<op>[-+*^()]))"
)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``x[i,j]``-style text with ``^ * + -``, parentheses and rational literals."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "var":
            val = re.sub(r"\s+", "", val)
        tokens.append((kind, val))
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term()
        if sign < 0:
            acc = -acc
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == ("op", "*"):
            take()
            acc = acc * factor()
        return acc

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return ring.constant(Fraction(val))
        if kind == "var":
            if val not in ring._index:
                raise ParseError(f"unknown variable {val}")
            return ring.var(val)
        if (kind, val) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ParseError("missing )")
            return e
        if (kind, val) == ("op", "-"):
            return -factor()
        raise ParseError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ParseError(f"trailing input near token {peek()[1]!r}")
    return result


# ---------------------------------------------------------------------------
# term orders
# ---------------------------------------------------------------------------


class TermOrder:
    """A term order given by an integer matrix: compare ``M a`` lexicographically.

    Every order is normalized to nonnegative rows (adding multiples of
    earlier rows, which leaves the order unchanged) so that keys are
    nonnegative and additive; the Groebner engine packs them into integers.
    """

    kind = "matrix"

    def __init__(self, rows: Sequence[Sequence[int]], nvars: int = None):
        rows = [tuple(int(x) for x in r) for r in rows]
        if not rows:
            raise InvalidOrder("empty order matrix")
        nvars = len(rows[0]) if nvars is None else nvars
        if any(len(r) != nvars for r in rows):
            raise InvalidOrder("order matrix rows have wrong length")
        self.nvars = nvars
        self.raw_rows = tuple(rows)
        self.rows = _nonneg_rows(rows, nvars)

    def key(self, a: Monomial) -> tuple:
        return tuple(sum(w * x for w, x in zip(r, a)) for r in self.rows)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def describe(self) -> str:
        return f"matrix:{[list(r) for r in self.raw_rows]}"

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"


def _rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _nonneg_rows(rows, nvars):
    if _rank(rows) < nvars:
        raise InvalidOrder("order matrix does not have full column rank")
    for col in range(nvars):
        first = next((r[col] for r in rows if r[col] != 0), 0)
        if first < 0:
            raise InvalidOrder(f"variable {col} is smaller than 1 under this matrix")
    out = []
    acc = [0] * nvars
    for r in rows:
        lam = 0
        for c, x in enumerate(r):
            if x < 0:
                lam = max(lam, -(-x // acc[c]))
        r2 = tuple(x + lam * a for x, a in zip(r, acc))
        out.append(r2)
        acc = [a + x for a, x in zip(acc, r2)]
    return tuple(out)


def _check_perm(perm, nvars):
    perm = list(range(nvars)) if perm is None else [int(p) for p in perm]
    if sorted(perm) != list(range(nvars)):
        raise InvalidOrder("variable ranking must be a permutation")
    return tuple(perm)


class Lex(TermOrder):
    """Lexicographic order; ``perm`` lists variable indices from largest to smallest."""

    kind = "lex"

    def __init__(self, nvars: int, perm: Sequence[int] = None):
        self.perm = _check_perm(perm, nvars)
        rows = []
        for v in self.perm:
            r = [0] * nvars
            r[v] = 1
            rows.append(r)
        super().__init__(rows, nvars)

    def key(self, a):
        return tuple(a[v] for v in self.perm)

    def describe(self):
        return f"lex:{','.join(map(str, self.perm))}"


class GrevLex(TermOrder):
    """Graded reverse lexicographic order with variables ranked by ``perm`` (largest first)."""

    kind = "grevlex"

    def __init__(self, nvars: int, perm: Sequence[int] = None):
        self.perm = _check_perm(perm, nvars)
        rows = []
        for k in range(nvars):
            r = [0] * nvars
            for v in self.perm[: nvars - k]:
                r[v] = 1
            rows.append(r)
        super().__init__(rows, nvars)

    def key(self, a):
        return (sum(a),) + tuple(-a[v] for v in reversed(self.perm[1:]))

    def describe(self):
        return f"grevlex:{','.join(map(str, self.perm))}"


class Weight(TermOrder):
    """Order by a nonnegative integer weight vector, ties broken by ``tiebreak``."""

    kind = "weight"

    def __init__(self, weights: Sequence[int], tiebreak: TermOrder = None):
        weights = tuple(int(w) for w in weights)
        nvars = len(weights)
        if any(w < 0 for w in weights):
            raise InvalidOrder("weights must be nonnegative")
        self.weights = weights
        self.tiebreak = tiebreak if tiebreak is not None else GrevLex(nvars)
        if self.tiebreak.nvars != nvars:
            raise InvalidOrder("tie-break order has wrong number of variables")
        super().__init__([weights] + list(self.tiebreak.rows), nvars)

    def describe(self):
        return f"weight:{','.join(map(str, self.weights))}|{self.tiebreak.describe()}"


class MatrixOrder(TermOrder):
    kind = "matrix"


def block_order(nvars: int, first_block: Sequence[int]) -> TermOrder:
    """Elimination order: grevlex on ``first_block`` dominates, then grevlex on the rest."""
    first = sorted(set(first_block))
    rest = [v for v in range(nvars) if v not in set(first)]
    rows = []
    for block in (first, rest):
        for k in range(len(block)):
            r = [0] * nvars
            for v in block[: len(block) - k]:
                r[v] = 1
            rows.append(r)
    order = MatrixOrder(rows, nvars)
    order.block = tuple(first)
    return order


def compare(order: TermOrder, a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to, or larger than ``b``."""
    return order.compare(a, b)


def leading_term(order: TermOrder, f: Polynomial) -> tuple:
    """(coefficient, monomial) of the order-largest term of ``f``."""
    if not f._terms:
        raise ZeroPolynomial("zero polynomial has no leading term")
    m = max(f._terms, key=order.key)
    return f._terms[m], m


def leading_monomial(order: TermOrder, f: Polynomial) -> Monomial:
    return leading_term(order, f)[1]


# ---------------------------------------------------------------------------
# diagonal / antidiagonal detection
# ---------------------------------------------------------------------------


def _minor_leaders(order: TermOrder, grid: VariableGrid):
    """Yield (rows, cols, leading monomial) for every minor of every size."""
    key = order.key
    for t in range(1, min(grid.m, grid.n) + 1):
        for rows in itertools.combinations(range(1, grid.m + 1), t):
            for cols in itertools.combinations(range(1, grid.n + 1), t):
                best = max(
                    (grid.monomial(zip(rows, p)) for p in itertools.permutations(cols)),
                    key=key,
                )
                yield rows, cols, best


def is_diagonal_order(order: TermOrder, grid: VariableGrid) -> bool:
    """Exhaustive over all minors; cost grows like sum_t C(m,t)C(n,t)t!, keep grids <= 5x5."""
    return all(
        lead == grid.monomial(zip(rows, cols)) for rows, cols, lead in _minor_leaders(order, grid)
    )


def is_antidiagonal_order(order: TermOrder, grid: VariableGrid) -> bool:
    return all(
        lead == grid.monomial(zip(rows, reversed(cols)))
        for rows, cols, lead in _minor_leaders(order, grid)
    )


def binomial(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0
