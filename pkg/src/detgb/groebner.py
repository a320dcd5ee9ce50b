"""Reduction, Buchberger's algorithm, reduced bases, initial ideals and elimination.

The engine packs each monomial into one Python int: the order key ``M a``
(nonnegative, additive) occupies the high bits and the exponent vector,
with a guard bit per variable, the low bits.  Integer addition multiplies
monomials, integer comparison compares them in the term order, and a
guarded subtraction tests divisibility.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .errors import NotReduced
from .monideal import HilbertData, MonomialIdeal, hilbert_function
from .poly import (
    Monomial,
    Polynomial,
    PolyRing,
    PrimeField,
    TermOrder,
    block_order,
    leading_term,
)

EXP_BITS = 8  # per-variable field width, top bit is the guard; exponents < 128


class GBTimeout(Exception):
    """Raised when a Groebner computation passes its deadline."""


@dataclass
class GroebnerBasis:
    order: TermOrder
    elements: list
    reduced: bool = False
    ring: PolyRing = None
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self) -> list:
        return [leading_term(self.order, g)[1] for g in self.elements]


# ---------------------------------------------------------------------------
# packed-monomial engine
# ---------------------------------------------------------------------------


class _Packer:
    def __init__(self, nvars: int, order: TermOrder):
        self.nvars = nvars
        rows = order.rows
        maxdeg = (1 << (EXP_BITS - 1)) - 1
        kw = (max(max(sum(r) for r in rows), 1) * maxdeg).bit_length() + 1
        self.shift = EXP_BITS * nvars
        nrows = len(rows)
        self.var = []
        for i in range(nvars):
            key = 0
            for k, r in enumerate(rows):
                key |= r[i] << (kw * (nrows - 1 - k))
            self.var.append((key << self.shift) | (1 << (EXP_BITS * i)))
        self.emask = (1 << self.shift) - 1
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(nvars))
        self.fmask = (1 << EXP_BITS) - 1

    def pack(self, exps: Monomial) -> int:
        v = 0
        for i, e in enumerate(exps):
            if e:
                if e > 127:
                    raise OverflowError("exponent too large for packed engine")
                v += e * self.var[i]
        return v

    def unpack(self, mono: int) -> Monomial:
        e = mono & self.emask
        fm = self.fmask
        out = []
        for _ in range(self.nvars):
            out.append(e & fm)
            e >>= EXP_BITS
        return tuple(out)


class _Engine:
    """Buchberger machinery over one ring and one term order."""

    def __init__(self, ring: PolyRing, order: TermOrder, deadline: float = None, trace: list = None):
        if order.nvars != ring.nvars:
            raise ValueError("order and ring disagree on the number of variables")
        self.ring = ring
        self.order = order
        self.pk = _Packer(ring.nvars, order)
        fld = ring.field
        self.p = fld.p if isinstance(fld, PrimeField) else None
        self.deadline = deadline
        self.trace = trace
        self.polys: list = []  # each: list of (mono, coeff), descending, monic
        self.lms: list = []
        self.lmE: list = []
        self.lmx: list = []  # unpacked leading exponents
        self.active: list = []
        self.reducers: list = []  # indices of active elements, in insertion order
        self._cache: dict = {}

    # -- conversions --------------------------------------------------------
    def to_dict(self, f: Polynomial) -> dict:
        pack = self.pk.pack
        if self.p is None:
            return {pack(m): gmpy2.mpq(c.numerator, c.denominator) for m, c in f._terms.items()}
        return {pack(m): c for m, c in f._terms.items()}

    def to_poly(self, terms) -> Polynomial:
        unpack = self.pk.unpack
        if self.p is None:
            return Polynomial(
                self.ring, {unpack(m): Fraction(int(c.numerator), int(c.denominator)) for m, c in terms}
            )
        return Polynomial(self.ring, {unpack(m): c for m, c in terms})

    def monic_terms(self, d: dict) -> list:
        items = sorted(d.items(), reverse=True)
        lc = items[0][1]
        if self.p is None:
            if lc != 1:
                items = [(m, c / lc) for m, c in items]
        elif lc != 1:
            inv = pow(lc, -1, self.p)
            p = self.p
            items = [(m, c * inv % p) for m, c in items]
        return items

    # -- reduction ----------------------------------------------------------
    def find_reducer(self, mono: int):
        e = mono & self.pk.emask
        hit = self._cache.get(e, -2)
        if hit != -2:
            return hit
        t = e | self.pk.guard
        G = self.pk.guard
        lmE = self.lmE
        found = -1
        for i in self.reducers:
            if (t - lmE[i]) & G == G:
                found = i
                break
        self._cache[e] = found
        return found

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of f (in place consumption) modulo the current reducers."""
        p = self.p
        polys, lms = self.polys, self.lms
        rem = {}
        steps = 0
        while f:
            lm = max(f)
            c = f[lm]
            i = self.find_reducer(lm)
            if i < 0:
                if not full:
                    rem.update(f)
                    return rem
                rem[lm] = c
                del f[lm]
                continue
            steps += 1
            if self.deadline is not None and steps % 256 == 0 and time.monotonic() > self.deadline:
                raise GBTimeout()
            shift = lm - lms[i]
            del f[lm]
            get = f.get
            if p is not None:
                for m, gc in polys[i][1:]:
                    k = m + shift
                    v = (get(k, 0) - c * gc) % p
                    if v:
                        f[k] = v
                    else:
                        f.pop(k, None)
            else:
                for m, gc in polys[i][1:]:
                    k = m + shift
                    v = get(k, 0) - c * gc
                    if v:
                        f[k] = v
                    else:
                        f.pop(k, None)
        return rem

    def add_element(self, terms: list) -> int:
        idx = len(self.polys)
        lm = terms[0][0]
        if lm & self.pk.guard:
            raise OverflowError("exponent overflow in packed engine")
        self.polys.append(terms)
        self.lms.append(lm)
        self.lmE.append(lm & self.pk.emask)
        self.lmx.append(self.pk.unpack(lm))
        self.active.append(True)
        self.reducers.append(idx)
        self._cache = {k: v for k, v in self._cache.items() if v >= 0}
        return idx

    def spoly(self, i: int, j: int, lcm: int) -> dict:
        si = lcm - self.lms[i]
        sj = lcm - self.lms[j]
        d = {m + si: c for m, c in self.polys[i][1:]}
        p = self.p
        get = d.get
        for m, c in self.polys[j][1:]:
            k = m + sj
            v = get(k, 0) - c
            if p is not None:
                v %= p
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return d

    def lcm_of(self, a: Monomial, b: Monomial):
        e = tuple(x if x > y else y for x, y in zip(a, b))
        return e, self.pk.pack(e)

    def log(self, line: str):
        if self.trace is not None:
            self.trace.append(line)


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Buchberger(_Engine):
    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        self.pairs: list = []  # heap of (lcm degree, seq, i, j, lcm exps, lcm packed)
        self.seq = 0
        self.stats = {"pairs": 0, "coprime": 0, "chain": 0, "zero": 0, "new": 0}

    def update(self, h: int):
        """Gebauer-Moeller pair update after adding element h."""
        H = self.lmx[h]
        cand = []
        for g in range(h):
            if not self.active[g]:
                continue
            e, packed = self.lcm_of(H, self.lmx[g])
            cand.append((g, e, packed, _coprime(H, self.lmx[g])))
        # M: drop (h,g) if some other (h,g') has lcm properly dividing it
        kept = []
        for k, (g, e, packed, cop) in enumerate(cand):
            dominated = False
            for k2, (g2, e2, _, cop2) in enumerate(cand):
                if k2 == k:
                    continue
                if e2 != e and _divides(e2, e):
                    dominated = True
                    break
            if dominated:
                self.stats["chain"] += 1
                self.log(f"CHAIN {g} {h}")
            else:
                kept.append((g, e, packed, cop))
        # F: among equal lcms keep one, preferring a coprime one (which then drops all)
        by_lcm: dict = {}
        for item in kept:
            by_lcm.setdefault(item[1], []).append(item)
        newpairs = []
        for e, items in by_lcm.items():
            if any(it[3] for it in items):
                for it in items:
                    self.stats["coprime"] += 1
                    self.log(f"COPRIME {it[0]} {h}")
                continue
            first = items[0]
            for it in items[1:]:
                self.stats["chain"] += 1
                self.log(f"CHAIN {it[0]} {h}")
            newpairs.append(first)
        # B: drop old pairs (i,j) with H | lcm(i,j), lcm(i,h) != lcm(i,j) != lcm(j,h)
        old = []
        for item in self.pairs:
            deg, seq, i, j, e, packed = item
            if _divides(H, e):
                eih = tuple(max(x, y) for x, y in zip(self.lmx[i], H))
                ejh = tuple(max(x, y) for x, y in zip(self.lmx[j], H))
                if eih != e and ejh != e:
                    self.stats["chain"] += 1
                    self.log(f"CHAIN {i} {j}")
                    continue
            old.append(item)
        for g, e, packed, _ in newpairs:
            self.seq += 1
            old.append((sum(e), self.seq, g, h, e, packed))
        heapq.heapify(old)
        self.pairs = old
        for g in range(h):
            if self.active[g] and _divides(H, self.lmx[g]):
                self.active[g] = False
        self.reducers = [g for g in range(len(self.polys)) if self.active[g]]
        self._cache = {}

    def insert(self, d: dict):
        h = self.reduce(d)
        if h:
            idx = self.add_element(self.monic_terms(h))
            self.stats["new"] += 1
            self.update(idx)
            return idx
        return None

    def run(self, gens: Iterable[dict]):
        for d in gens:
            self.insert(d)
        while self.pairs:
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise GBTimeout()
            deg, seq, i, j, e, packed = heapq.heappop(self.pairs)
            self.stats["pairs"] += 1
            s = self.spoly(i, j, packed)
            h = self.reduce(s)
            if h:
                idx = self.add_element(self.monic_terms(h))
                self.stats["new"] += 1
                self.log(f"PAIR {i} {j} deg={deg} -> NEW {idx}")
                self.update(idx)
            else:
                self.stats["zero"] += 1
                self.log(f"PAIR {i} {j} deg={deg} -> ZERO")

    def reduced_elements(self) -> list:
        """Minimal, tail-reduced, monic elements sorted by leading monomial (ascending)."""
        idx = [g for g in range(len(self.polys)) if self.active[g]]
        # minimalize leading monomials
        idx.sort(key=lambda g: self.lms[g])
        minimal = []
        for g in idx:
            if not any(_divides(self.lmx[h], self.lmx[g]) for h in minimal):
                minimal.append(g)
        self.reducers = minimal
        self._cache = {}
        out = []
        for g in minimal:
            terms = self.polys[g]
            tail = dict(terms[1:])
            rest = self.reduce(tail)
            new = [terms[0]] + sorted(rest.items(), reverse=True)
            out.append(new)
        for g, terms in zip(minimal, out):
            self.polys[g] = terms
        return out


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


def _ring_of(polys: Sequence[Polynomial]) -> PolyRing:
    rings = {f.ring for f in polys}
    if len(rings) != 1:
        fields = {r.field for r in rings}
        if len(fields) > 1:
            from .errors import FieldMismatch

            raise FieldMismatch("generators over different fields")
        raise ValueError("generators live in different rings")
    return rings.pop()


def buchberger(
    gens: Sequence[Polynomial],
    order: TermOrder,
    trace: list = None,
    deadline: float = None,
    timeout: float = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy (smallest lcm degree, FIFO among ties) with
    the Gebauer-Moeller form of the coprime and chain criteria.  ``trace``,
    if given, collects one line per considered or discarded S-pair.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = _ring_of(gens)
    if timeout is not None:
        deadline = time.monotonic() + timeout
    eng = _Buchberger(ring, order, deadline=deadline, trace=trace)
    # smallest generators first keeps early reducers cheap
    dicts = [eng.to_dict(g) for g in gens]
    dicts.sort(key=lambda d: max(d))
    eng.run(dicts)
    elems = [eng.to_poly(t) for t in eng.reduced_elements()]
    return GroebnerBasis(order, elems, reduced=True, ring=ring, stats=dict(eng.stats))


def _sorted_by_lead(G: Sequence[Polynomial], order: TermOrder) -> list:
    return sorted(G, key=lambda g: order.key(leading_term(order, g)[1]))


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Fully reduced remainder of f modulo G.

    The reducer for a term is the first element of G, sorted by leading
    monomial (ascending, stable), whose leading monomial divides it.
    """
    if not f:
        return f
    G = [g for g in G if g]
    if not G:
        return f
    eng = _Engine(f.ring, order)
    for g in _sorted_by_lead(G, order):
        eng.add_element(eng.monic_terms(eng.to_dict(g)))
    return eng.to_poly(eng.reduce(eng.to_dict(f)).items())


def reduce_basis(G: GroebnerBasis) -> GroebnerBasis:
    """The unique reduced Groebner basis from any Groebner basis (idempotent)."""
    elems = [g for g in G.elements if g]
    if not elems:
        return GroebnerBasis(G.order, [], reduced=True, ring=G.ring)
    ring = _ring_of(elems)
    eng = _Buchberger(ring, G.order)
    for g in elems:
        eng.add_element(eng.monic_terms(eng.to_dict(g)))
    out = [eng.to_poly(t) for t in eng.reduced_elements()]
    return GroebnerBasis(G.order, out, reduced=True, ring=ring)


def is_reduced(G: GroebnerBasis) -> bool:
    order = G.order
    leads = [leading_term(order, g) for g in G.elements]
    if any(c != 1 for c, _ in leads):
        return False
    lms = [m for _, m in leads]
    for k, g in enumerate(G.elements):
        for m in g._terms:
            for j, lm in enumerate(lms):
                if j != k and _divides(lm, m):
                    return False
    keys = [order.key(m) for m in lms]
    return keys == sorted(keys)


def initial_ideal(G: GroebnerBasis) -> MonomialIdeal:
    """Minimal generators of in(I) read off a reduced Groebner basis."""
    if not G.reduced or not is_reduced(G):
        raise NotReduced("initial_ideal needs a reduced Groebner basis")
    ring = G.ring or (G.elements[0].ring if G.elements else None)
    nvars = ring.nvars if ring else G.order.nvars
    return MonomialIdeal(nvars, G.leading_monomials(), ring.names if ring else None)


def is_groebner_basis(G: Sequence[Polynomial], order: TermOrder, witness: list = None) -> bool:
    """True iff every S-polynomial of G top-reduces to zero modulo G.

    Coprime pairs are skipped, and so are pairs (i,j) having some k whose
    leading monomial divides lcm(i,j) with lcm(i,k), lcm(j,k) both proper
    divisors of lcm(i,j); the strictness keeps the skip relation well founded.
    """
    G = [g for g in G if g]
    if len(G) <= 1:
        return True
    ring = _ring_of(G)
    eng = _Engine(ring, order)
    for g in G:
        eng.add_element(eng.monic_terms(eng.to_dict(g)))
    lmx = eng.lmx
    n = len(G)
    for j in range(n):
        for i in range(j):
            a, b = lmx[i], lmx[j]
            if _coprime(a, b):
                continue
            e = tuple(x if x > y else y for x, y in zip(a, b))
            skip = False
            for k in range(n):
                if k == i or k == j or not _divides(lmx[k], e):
                    continue
                eik = tuple(x if x > y else y for x, y in zip(a, lmx[k]))
                ejk = tuple(x if x > y else y for x, y in zip(b, lmx[k]))
                if eik != e and ejk != e:
                    skip = True
                    break
            if skip:
                continue
            s = eng.spoly(i, j, eng.pk.pack(e))
            if eng.reduce(s, full=False):
                if witness is not None:
                    witness.append((i, j))
                return False
    return True


def eliminate(gens: Sequence[Polynomial], kill: Iterable[int], timeout: float = None) -> list:
    """Generators of I intersected with the subring free of the ``kill`` variables.

    Always uses a two-block order: grevlex on the killed block dominating
    grevlex on the kept block.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = _ring_of(gens)
    kill = sorted(set(kill))
    order = block_order(ring.nvars, kill)
    if not kill:
        from .poly import GrevLex

        order = GrevLex(ring.nvars)
    G = buchberger(gens, order, timeout=timeout)
    killed = set(kill)
    return [g for g in G.elements if not any(m[v] for m in g._terms for v in killed)]


def hilbert_data(G: GroebnerBasis, d_max: int = 8) -> HilbertData:
    return hilbert_function(initial_ideal(G), d_max)


def ideal_contains(G: GroebnerBasis, f: Polynomial) -> bool:
    return not normal_form(f, G.elements, G.order)
