"""Standard bitableaux and the RSK bijection between monomials and standard monomials.

Convention.  A monomial is read as its two-line array (grid positions sorted
row-major).  Classical Knuth row insertion of the column indices, recording
the row indices, gives a pair (P, Q) of semistandard tableaux of one shape.
The k-th factor of the bitableau is [column k of Q | column k of P], so
factor sizes are the column lengths and the first factor has the length of
the longest strictly decreasing subsequence, i.e. the largest antidiagonal.

For the diagonal convention (the default) the column indices are first
reflected, j -> n+1-j, which swaps diagonals and antidiagonals; the first
factor then measures the largest main diagonal (a set of positions strictly
increasing in both coordinates).  The insertion tableau, now written in the
reflected alphabet, is brought back to the original one by Schuetzenberger
evacuation, which keeps the shape and sends letter j to n+1-j.  Evacuation is
an involution, so the inverse map applies it again.  Both conventions are
bijective, degree preserving and send x_ij to [i|j]; which one matches J_t is
fixed by the ``convention`` argument.
"""

from __future__ import annotations

import bisect
import itertools
import re
import time
from math import comb
from typing import Sequence

from .determinantal import MinorIndex, all_minor_indices, diagonal_ideal, minor_poly
from .errors import NotStandard, ParseError
from .linalg import rank_mod_p
from .monideal import all_monomials
from .poly import DEFAULT_PRIME, GF, Monomial, VariableGrid

DIAGONAL = "diagonal"
ANTIDIAGONAL = "antidiagonal"


def minor_leq(a: MinorIndex, b: MinorIndex) -> bool:
    """a <= b iff size(a) >= size(b) and a's rows/cols are entrywise <= b's on b's length."""
    if a.size < b.size:
        return False
    return all(a.rows[i] <= b.rows[i] and a.cols[i] <= b.cols[i] for i in range(b.size))


class Bitableau:
    """A product of minors delta_1 ... delta_v, stored as its factor list."""

    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[MinorIndex] = ()):
        self.factors = tuple(factors)

    @property
    def degree(self) -> int:
        return sum(f.size for f in self.factors)

    @property
    def shape(self) -> tuple:
        return tuple(f.size for f in self.factors)

    def is_standard(self) -> bool:
        return all(minor_leq(a, b) for a, b in zip(self.factors, self.factors[1:]))

    def polynomial(self, grid: VariableGrid, ring=None, memo: dict = None):
        ring = ring or grid.ring()
        out = ring.one()
        for f in self.factors:
            out = out * minor_poly(f, grid, ring, memo)
        return out

    def __eq__(self, other):
        return isinstance(other, Bitableau) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __str__(self):
        return "".join(str(f) for f in self.factors)

    def __repr__(self):
        return f"Bitableau({str(self) or '[]'})"

    @classmethod
    def parse(cls, text: str) -> "Bitableau":
        text = text.strip()
        if text in ("", "1", "[]"):
            return cls()
        factors = []
        pos = 0
        for m in re.finditer(r"\[([\d,\s]+)\|([\d,\s]+)\]", text):
            if text[pos : m.start()].strip():
                raise ParseError(f"unexpected text {text[pos:m.start()]!r}")
            rows = tuple(int(x) for x in m.group(1).split(","))
            cols = tuple(int(x) for x in m.group(2).split(","))
            factors.append(MinorIndex(rows, cols))
            pos = m.end()
        if text[pos:].strip():
            raise ParseError(f"unexpected text {text[pos:]!r}")
        return cls(factors)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def enumerate_standard(grid: VariableGrid, d: int) -> list:
    """All standard bitableaux of total degree d on the grid."""
    minors = [idx for t in range(1, min(grid.m, grid.n) + 1) for idx in all_minor_indices(grid, t)]
    above = {a: [b for b in minors if minor_leq(a, b)] for a in minors}
    out = []

    def extend(prefix, remaining, candidates):
        if remaining == 0:
            out.append(Bitableau(prefix))
            return
        for b in candidates:
            if b.size <= remaining:
                prefix.append(b)
                extend(prefix, remaining - b.size, above[b])
                prefix.pop()

    extend([], d, minors)
    return out


# ---------------------------------------------------------------------------
# RSK
# ---------------------------------------------------------------------------


def two_line_array(mono: Monomial, grid: VariableGrid) -> list:
    """Grid positions of the monomial with multiplicity, sorted row-major."""
    out = []
    for k, e in enumerate(mono):
        if e:
            out.extend([grid.position(k)] * e)
    return out


def _reflect(pairs, n):
    return [(i, n + 1 - j) for i, j in pairs]


def _insert(P: list, Q: list, i: int, j: int):
    x = j
    for r, row in enumerate(P):
        k = bisect.bisect_right(row, x)  # leftmost entry strictly greater
        if k == len(row):
            row.append(x)
            Q[r].append(i)
            return
        row[k], x = x, row[k]
    P.append([x])
    Q.append([i])


def evacuate(T: list, n: int) -> list:
    """Schuetzenberger evacuation of a semistandard tableau on the letters 1..n.

    Computed as the insertion tableau of the reversed, complemented reading
    word (rows read bottom to top).  Same shape, letter j becomes n+1-j in
    the content, and evacuate(evacuate(T)) == T.
    """
    word = [x for row in reversed(T) for x in row]
    P: list = []
    Q: list = []
    for x in reversed(word):
        _insert(P, Q, 0, n + 1 - x)
    return P


def rsk_tableaux(mono: Monomial, grid: VariableGrid, convention: str = DIAGONAL) -> tuple:
    """The insertion and recording tableaux (P, Q) as lists of rows."""
    pairs = two_line_array(mono, grid)
    if convention == DIAGONAL:
        pairs = sorted(_reflect(pairs, grid.n))
    elif convention != ANTIDIAGONAL:
        raise ValueError(f"unknown convention {convention!r}")
    P: list = []
    Q: list = []
    for i, j in pairs:
        _insert(P, Q, i, j)
    if convention == DIAGONAL:
        P = evacuate(P, grid.n)
    return P, Q


def _columns(T: list) -> list:
    if not T:
        return []
    return [tuple(row[c] for row in T if c < len(row)) for c in range(len(T[0]))]


def rsk_forward(mono: Monomial, grid: VariableGrid, convention: str = DIAGONAL) -> Bitableau:
    """Monomial -> standard bitableau (factor k = k-th columns of Q and P)."""
    P, Q = rsk_tableaux(mono, grid, convention)
    return Bitableau(MinorIndex(q, p) for q, p in zip(_columns(Q), _columns(P)))


def rsk_backward(bt: Bitableau, grid: VariableGrid, convention: str = DIAGONAL) -> Monomial:
    """Inverse of rsk_forward; raises NotStandard on a non-standard bitableau."""
    if not bt.is_standard():
        raise NotStandard(f"{bt} is not standard")
    for f in bt.factors:
        f.check(grid)
    if convention not in (DIAGONAL, ANTIDIAGONAL):
        raise ValueError(f"unknown convention {convention!r}")
    nrows = bt.factors[0].size if bt.factors else 0
    P = [[f.cols[r] for f in bt.factors if r < f.size] for r in range(nrows)]
    Q = [[f.rows[r] for f in bt.factors if r < f.size] for r in range(nrows)]
    if convention == DIAGONAL:
        P = evacuate(P, grid.n)
    pairs = []
    total = bt.degree
    for _ in range(total):
        # largest recording entry, rightmost among ties (the topmost row holding it)
        top = max(row[-1] for row in Q if row)
        best = min(r for r, row in enumerate(Q) if row and row[-1] == top)
        i = Q[best].pop()
        x = P[best].pop()
        for r in range(best - 1, -1, -1):
            row = P[r]
            k = bisect.bisect_left(row, x) - 1  # rightmost entry strictly smaller
            row[k], x = x, row[k]
        pairs.append((i, x))
        while Q and not Q[-1]:
            Q.pop()
            P.pop()
    if convention == DIAGONAL:
        pairs = _reflect(pairs, grid.n)
    return grid.monomial(pairs)


def schensted_width(mono: Monomial, grid: VariableGrid, convention: str = DIAGONAL) -> int:
    """Size of the largest factor of rsk_forward(mono)."""
    bt = rsk_forward(mono, grid, convention)
    return bt.factors[0].size if bt.factors else 0


def longest_diagonal(mono: Monomial, grid: VariableGrid, convention: str = DIAGONAL) -> int:
    """Longest subsequence of the two-line array strictly increasing in both coordinates
    (strictly increasing rows, strictly decreasing columns for the antidiagonal convention)."""
    pts = sorted(set(two_line_array(mono, grid)))
    if convention == ANTIDIAGONAL:
        better = lambda a, b: a[0] < b[0] and a[1] > b[1]
    else:
        better = lambda a, b: a[0] < b[0] and a[1] < b[1]
    best = [1] * len(pts)
    for k, b in enumerate(pts):
        for h in range(k):
            if better(pts[h], b) and best[h] + 1 > best[k]:
                best[k] = best[h] + 1
    return max(best, default=0)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_schen3(grid: VariableGrid, t: int, d: int, convention: str = DIAGONAL) -> dict:
    """RSK image of the standard monomials with first factor >= t equals (J_t)_d."""
    start = time.perf_counter()
    lhs = set()
    for bt in enumerate_standard(grid, d):
        if bt.factors and bt.factors[0].size >= t:
            lhs.add(rsk_backward(bt, grid, convention))
    J = diagonal_ideal(t, grid, antidiagonal=(convention == ANTIDIAGONAL))
    rhs = J.monomials_of_degree(d)
    return {
        "claim": "rsk-image-equals-initial",
        "parameters": {"m": grid.m, "n": grid.n, "t": t, "d": d, "convention": convention},
        "rsk_count": len(lhs),
        "J_count": len(rhs),
        "outcome": lhs == rhs,
        "timings": {"seconds": round(time.perf_counter() - start, 3)},
    }


def verify_bijection(grid: VariableGrid, d: int, convention: str = DIAGONAL) -> dict:
    """Round trip, standardness, degree preservation and count matching in degree d."""
    monos = list(all_monomials(grid.size, d))
    images = set()
    ok_round = ok_std = ok_deg = ok_width = True
    for u in monos:
        bt = rsk_forward(u, grid, convention)
        images.add(bt)
        ok_std &= bt.is_standard()
        ok_deg &= bt.degree == d
        ok_round &= rsk_backward(bt, grid, convention) == u
        ok_width &= schensted_width(u, grid, convention) == longest_diagonal(u, grid, convention)
    standard = enumerate_standard(grid, d)
    return {
        "d": d,
        "monomials": len(monos),
        "standard_bitableaux": len(standard),
        "round_trip": ok_round,
        "standard": ok_std,
        "degree_preserved": ok_deg,
        "width_matches_subsequence": ok_width,
        "image_is_all_standard": images == set(standard),
        "outcome": ok_round and ok_std and ok_deg and ok_width and images == set(standard),
    }


def standard_basis_rank_check(grid: VariableGrid, d: int, p: int = DEFAULT_PRIME) -> dict:
    """Products of minors over standard bitableaux of degree d are a basis of S_d."""
    ring = grid.ring(GF(p))
    memo: dict = {}
    polys = [bt.polynomial(grid, ring, memo) for bt in enumerate_standard(grid, d)]
    monos = sorted({m for f in polys for m in f.as_dict()})
    col = {m: k for k, m in enumerate(monos)}
    rows = []
    for f in polys:
        row = [0] * len(monos)
        for m, c in f.as_dict().items():
            row[col[m]] = c
        rows.append(row)
    rank = rank_mod_p(rows, p) if rows else 0
    dim = comb(grid.size + d - 1, d)
    return {
        "d": d,
        "standard_count": len(polys),
        "rank": rank,
        "monomial_count": dim,
        "outcome": rank == len(polys) == dim,
    }
