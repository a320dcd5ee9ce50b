"""Monomial ideals and their Hilbert series (pivot recursion)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .poly import Monomial, canonical_key, mono_divides, is_squarefree


def minimalize(gens: Iterable[Monomial]) -> list:
    """Drop every generator divisible by another; result sorted canonically."""
    uniq = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), canonical_key(g)))
    out: list = []
    for g in uniq:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return sorted(out, key=canonical_key)


class MonomialIdeal:
    """Ideal generated by monomials, stored as its minimal generators."""

    def __init__(self, nvars: int, gens: Iterable[Monomial] = (), names: Sequence[str] = None):
        self.nvars = nvars
        gens = [tuple(g) for g in gens]
        if any(len(g) != nvars for g in gens):
            raise ValueError("generator length does not match number of variables")
        self.gens = tuple(minimalize(gens))
        self.names = tuple(names) if names is not None else None

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.nvars == other.nvars and self.gens == other.gens

    def __hash__(self):
        return hash((self.nvars, self.gens))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return f"MonomialIdeal({len(self.gens)} generators in {self.nvars} vars)"

    def __contains__(self, mono) -> bool:
        mono = tuple(mono)
        return any(mono_divides(g, mono) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def is_squarefree(self) -> bool:
        return all(is_squarefree(g) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(g in self for g in other.gens)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.nvars, self.gens + other.gens, self.names)

    def degrees(self) -> list:
        return sorted(sum(g) for g in self.gens)

    def monomials_of_degree(self, d: int) -> set:
        """All degree-d monomials in the ideal (enumerative; small cases only)."""
        return {u for u in all_monomials(self.nvars, d) if u in self}

    def to_strings(self) -> list:
        names = self.names or [f"v{i}" for i in range(self.nvars)]
        out = []
        for g in self.gens:
            parts = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(g) if e]
            out.append("*".join(parts) if parts else "1")
        return out

    def hilbert(self, d_max: int = 8) -> "HilbertData":
        return hilbert_function(self, d_max)


def all_monomials(nvars: int, d: int):
    """Every exponent vector of total degree d in nvars variables."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in all_monomials(nvars - 1, d - e):
            yield (e,) + rest


# ---------------------------------------------------------------------------
# Hilbert series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple  # K(t) with HS(S/M) = K(t) / (1-t)^nvars
    nvars: int
    values: tuple  # HF(S/M, d) for d = 0..d_max
    dimension: int  # Krull dimension, -1 for the unit ideal
    degree: int
    h_vector: tuple  # reduced numerator: HS = h(t) / (1-t)^dimension

    def value(self, d: int) -> int:
        return hf_value(self.numerator, self.nvars, d)


def _poly_add(a: list, b: list) -> list:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _kpoly(gens: tuple, cache: dict) -> list:
    if not gens:
        return [1]
    hit = cache.get(gens)
    if hit is not None:
        return hit
    counts: dict = {}
    coprime = True
    for g in gens:
        for v, e in enumerate(g):
            if e:
                counts[v] = counts.get(v, 0) + 1
                if counts[v] > 1:
                    coprime = False
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            factor = [1] + [0] * (d - 1) + [-1] if d else [0]
            out = _poly_mul(out, factor)
    else:
        # pivot on the variable occurring in the most minimal generators
        x = max(counts, key=lambda v: (counts[v], -v))
        xm = tuple(1 if v == x else 0 for v in range(len(gens[0])))
        left = tuple(minimalize([g for g in gens if g[x] == 0] + [xm]))
        right = tuple(minimalize(tuple(e - 1 if v == x and e else e for v, e in enumerate(g)) for g in gens))
        out = _poly_add(_kpoly(left, cache), [0] + _kpoly(right, cache))
    cache[gens] = out
    return out


def hilbert_numerator(M: MonomialIdeal) -> list:
    """Coefficients of K(t), where HS(S/M) = K(t) / (1-t)^nvars."""
    return _kpoly(tuple(M.gens), {})


def hf_value(numerator: Sequence[int], nvars: int, d: int) -> int:
    if nvars == 0:
        return numerator[d] if d < len(numerator) else 0
    return sum(c * comb(nvars - 1 + d - i, nvars - 1) for i, c in enumerate(numerator) if i <= d)


def _divide_one_minus_t(p: list) -> list:
    # synthetic division of p by (1 - t); caller guarantees p(1) == 0
    q = []
    acc = 0
    for c in p[:-1]:
        acc += c
        q.append(acc)
    return q or [0]


def hilbert_function(M: MonomialIdeal, d_max: int = 8) -> HilbertData:
    """HF(S/M, d) for d <= d_max, with Krull dimension and degree from the Hilbert series."""
    num = hilbert_numerator(M)
    n = M.nvars
    values = tuple(hf_value(num, n, d) for d in range(d_max + 1))
    if all(c == 0 for c in num):
        return HilbertData(tuple(num), n, values, -1, 0, (0,))
    h = list(num)
    dim = n
    while sum(h) == 0:
        h = _divide_one_minus_t(h)
        dim -= 1
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return HilbertData(tuple(num), n, values, dim, sum(h), tuple(h))


def hilbert_polynomial_leading(data: HilbertData) -> Fraction:
    """Leading coefficient e/(d-1)! of the Hilbert polynomial."""
    from math import factorial

    if data.dimension <= 0:
        return Fraction(0)
    return Fraction(data.degree, factorial(data.dimension - 1))
