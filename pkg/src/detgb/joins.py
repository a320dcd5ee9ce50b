"""Joins and secants by elimination, kernels of ring maps, and toric configurations
(circuits, unimodularity, degree-bounded Graver bases)."""

from __future__ import annotations

import itertools
import json
import time
from typing import Sequence

from .groebner import GroebnerBasis, buchberger, eliminate, initial_ideal, normal_form
from .linalg import integer_kernel, rank_exact
from .monideal import MonomialIdeal, all_monomials
from .poly import QQ, Field, GrevLex, Polynomial, PolyRing, TermOrder, VariableGrid, canonical_key
from .stanley_reisner import complex_of, ideal_of, sr_secant


def _ring_of(gens):
    return gens[0].ring


def _to_subring(polys, big: PolyRing, small: PolyRing, offset: int = 0) -> list:
    """Restrict polynomials using only variables offset..offset+small.nvars-1 of ``big``."""
    out = []
    for f in polys:
        d = {}
        for m, c in f.as_dict().items():
            d[m[offset : offset + small.nvars]] = c
        out.append(Polynomial(small, d))
    return out


def reduced_gb(gens: Sequence[Polynomial], order: TermOrder = None) -> GroebnerBasis:
    gens = [g for g in gens if g]
    if not gens:
        return GroebnerBasis(order, [], reduced=True)
    order = order or GrevLex(gens[0].ring.nvars)
    return buchberger(gens, order)


def same_ideal(F: Sequence[Polynomial], G: Sequence[Polynomial], order: TermOrder = None) -> bool:
    """Equality of ideals via reduced Groebner bases under one order."""
    F = [f for f in F if f]
    G = [g for g in G if g]
    if not F or not G:
        return not F and not G
    order = order or GrevLex(F[0].ring.nvars)
    a = reduced_gb(F, order).elements
    b = reduced_gb(G, order).elements
    return set(a) == set(b)


def ideal_subset(F: Sequence[Polynomial], G: Sequence[Polynomial], order: TermOrder = None) -> bool:
    """(F) contained in (G)."""
    F = [f for f in F if f]
    G = [g for g in G if g]
    if not F:
        return True
    if not G:
        return False
    order = order or GrevLex(F[0].ring.nvars)
    basis = reduced_gb(G, order).elements
    return all(not normal_form(f, basis, order) for f in F)


# ---------------------------------------------------------------------------
# joins and secants
# ---------------------------------------------------------------------------


def join_ideal(I: Sequence[Polynomial], J: Sequence[Polynomial], ring: PolyRing = None, timeout: float = None) -> list:
    """Reduced Groebner basis (grevlex) of the join I*J.

    Eliminates the y and z blocks from I(y) + J(z) + (x_i - y_i - z_i).
    """
    I = [f for f in I if f]
    J = [f for f in J if f]
    ring = ring or (I[0].ring if I else J[0].ring)
    n = ring.nvars
    if not I or not J:
        return []
    big = PolyRing([f"_y{k}" for k in range(n)] + [f"_z{k}" for k in range(n)] + list(ring.names), ring.field)
    ys = [big.gen(k) for k in range(n)]
    zs = [big.gen(n + k) for k in range(n)]
    xs = [big.gen(2 * n + k) for k in range(n)]
    gens = [f.substitute(ys) for f in I] + [g.substitute(zs) for g in J]
    gens += [x - y - z for x, y, z in zip(xs, ys, zs)]
    elim = eliminate(gens, range(2 * n), timeout=timeout)
    out = _to_subring(elim, big, ring, offset=2 * n)
    return reduced_gb(out).elements if out else []


def secant_ideal(I: Sequence[Polynomial], r: int, timeout: float = None) -> list:
    """r-th secant ideal: the r-fold join of I with itself (reduced grevlex basis)."""
    if r < 1:
        raise ValueError("r must be positive")
    cur = reduced_gb(I).elements
    for _ in range(r - 1):
        if not cur:
            break
        cur = join_ideal(cur, I, timeout=timeout)
    return cur


def monomial_ideal_from_gb(G: GroebnerBasis) -> MonomialIdeal:
    return initial_ideal(G)


def check_sec_in_monotone(I: Sequence[Polynomial], r: int, order: TermOrder, timeout: float = None) -> dict:
    """in(I^{r}) inside in(I)^{r}, the right side via the secant complex when in(I) is squarefree."""
    start = time.perf_counter()
    ring = I[0].ring
    sec = secant_ideal(I, r, timeout=timeout)
    lhs = initial_ideal(buchberger(sec, order)) if sec else MonomialIdeal(ring.nvars, [])
    inI = initial_ideal(buchberger(I, order))
    rep = {
        "claim": "sec-in-monotone",
        "parameters": {"r": r, "order": order.describe(), "nvars": ring.nvars},
        "field": repr(ring.field),
        "lhs_generators": len(lhs.gens),
        "in_I_squarefree": inI.is_squarefree(),
    }
    if not inI.is_squarefree():
        rep.update(route="unavailable: in(I) is not squarefree", outcome=None)
        return rep
    D = complex_of(inI)
    rhs = ideal_of(sr_secant(D, r))
    contained = all(g in rhs for g in lhs.gens)
    degrees = sorted({sum(g) for g in lhs.gens} | {sum(g) for g in rhs.gens})
    by_degree = {}
    for d in degrees:
        a = lhs.monomials_of_degree(d) if ring.nvars <= 12 else None
        b = rhs.monomials_of_degree(d) if ring.nvars <= 12 else None
        if a is not None:
            by_degree[d] = {"lhs": len(a), "rhs": len(b), "subset": a <= b}
    rep.update(
        route="secant complex",
        rhs_generators=len(rhs.gens),
        contained=contained,
        equal=contained and all(g in lhs for g in rhs.gens),
        by_degree=by_degree,
        outcome=contained,
        timings={"seconds": round(time.perf_counter() - start, 3)},
    )
    return rep


def kernel_of_map(targets: Sequence[Polynomial], names: Sequence[str] = None, timeout: float = None) -> list:
    """Reduced grevlex basis of ker(x_i -> targets[i]), by eliminating the source of the targets."""
    src = targets[0].ring
    n = len(targets)
    names = list(names) if names is not None else [f"x{k}" for k in range(n)]
    xring = PolyRing(names, src.field)
    big = PolyRing(list(src.names) + names, src.field)
    lift = list(range(src.nvars))
    gens = [big.gen(src.nvars + k) - g.rename(big, lift) for k, g in enumerate(targets)]
    elim = eliminate(gens, range(src.nvars), timeout=timeout)
    out = _to_subring(elim, big, xring, offset=src.nvars)
    return reduced_gb(out).elements if out else []


def segre_map(grid: VariableGrid, field: Field = QQ) -> list:
    """Targets y_i z_j for x_ij."""
    ring = PolyRing([f"y[{i}]" for i in range(1, grid.m + 1)] + [f"z[{j}]" for j in range(1, grid.n + 1)], field)
    return [ring.gen(i - 1) * ring.gen(grid.m + j - 1) for i, j in grid.positions()]


def product_map(grid: VariableGrid, k: int, field: Field = QQ) -> list:
    """Targets (YZ)_ij with Y generic m x k and Z generic k x n."""
    ynames = [f"y[{i},{a}]" for i in range(1, grid.m + 1) for a in range(1, k + 1)]
    znames = [f"z[{a},{j}]" for a in range(1, k + 1) for j in range(1, grid.n + 1)]
    ring = PolyRing(ynames + znames, field)
    Y = lambda i, a: ring.gen((i - 1) * k + (a - 1))
    Z = lambda a, j: ring.gen(grid.m * k + (a - 1) * grid.n + (j - 1))
    out = []
    for i, j in grid.positions():
        s = ring.zero()
        for a in range(1, k + 1):
            s = s + Y(i, a) * Z(a, j)
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# toric configurations
# ---------------------------------------------------------------------------


class PointConfiguration:
    """Integer points a_1..a_N in Z^d, one per variable."""

    def __init__(self, points: Sequence[Sequence[int]], labels: Sequence[str] = None):
        self.points = [tuple(int(x) for x in p) for p in points]
        if not self.points:
            raise ValueError("empty configuration")
        self.dim = len(self.points[0])
        if any(len(p) != self.dim for p in self.points):
            raise ValueError("points of different dimensions")
        self.labels = list(labels) if labels is not None else [f"x{k}" for k in range(len(self.points))]

    def __len__(self):
        return len(self.points)

    def matrix(self) -> list:
        """d x N matrix whose columns are the points."""
        return [[p[r] for p in self.points] for r in range(self.dim)]

    def ring(self, field: Field = QQ) -> PolyRing:
        return PolyRing(self.labels, field)

    def degree(self, mono) -> tuple:
        return tuple(sum(e * p[r] for e, p in zip(mono, self.points)) for r in range(self.dim))

    def to_json(self) -> str:
        return json.dumps({"matrix": self.matrix(), "labels": self.labels})

    @classmethod
    def from_json(cls, text: str) -> "PointConfiguration":
        data = json.loads(text)
        mat = data["matrix"] if isinstance(data, dict) else data
        labels = data.get("labels") if isinstance(data, dict) else None
        cols = list(zip(*mat))
        return cls(cols, labels)


def segre_configuration(grid: VariableGrid) -> PointConfiguration:
    """{e_i + f_j} in Z^(m+n), ordered like the grid variables."""
    pts = []
    for i, j in grid.positions():
        v = [0] * (grid.m + grid.n)
        v[i - 1] = 1
        v[grid.m + j - 1] = 1
        pts.append(v)
    return PointConfiguration(pts, grid.names())


def toric_ideal(A: PointConfiguration, field: Field = QQ, timeout: float = None) -> list:
    """Kernel of x_i -> t^{a_i} as a reduced grevlex basis.

    Negative coordinates are cleared by writing x_i t^{a_i^-} - t^{a_i^+};
    an extra variable s with s t_1...t_d - 1 saturates by the t's.
    """
    N, d = len(A), A.dim
    tnames = [f"_t{k}" for k in range(d)]
    big = PolyRing(tnames + ["_s"] + A.labels, field)
    gens = []
    for k, a in enumerate(A.points):
        plus = tuple(max(x, 0) for x in a) + (0,) + (0,) * N
        minus_x = [0] * N
        minus_x[k] = 1
        minus = tuple(max(-x, 0) for x in a) + (0,) + tuple(minus_x)
        gens.append(big.from_terms([(1, minus), (-1, plus)]))
    negative = any(x < 0 for a in A.points for x in a)
    if negative:
        gens.append(big.from_terms([(1, (1,) * d + (1,) + (0,) * N), (-1, (0,) * (d + 1 + N))]))
    elim = eliminate(gens, range(d + 1), timeout=timeout)
    out = _to_subring(elim, big, A.ring(field), offset=d + 1)
    return reduced_gb(out).elements if out else []


def _binomial(ring: PolyRing, plus, minus) -> Polynomial:
    """x^plus - x^minus with the canonically larger monomial carrying the + sign."""
    plus, minus = tuple(plus), tuple(minus)
    if canonical_key(plus) < canonical_key(minus):
        plus, minus = minus, plus
    return ring.from_terms([(1, plus), (-1, minus)])


def _vector_binomial(ring, u) -> Polynomial:
    return _binomial(ring, [max(x, 0) for x in u], [max(-x, 0) for x in u])


def circuits(A: PointConfiguration, field: Field = QQ) -> list:
    """Binomials of the support-minimal kernel vectors, primitive and sign-normalized."""
    mat = A.matrix()
    N = len(A)
    r = rank_exact(mat)
    ring = A.ring(field)
    out = []
    found_supports: list = []
    for size in range(2, r + 2):
        for S in itertools.combinations(range(N), size):
            Sset = set(S)
            if any(T <= Sset for T in found_supports):
                continue
            sub = [[row[k] for k in S] for row in mat]
            ker = integer_kernel(sub)
            if len(ker) != 1 or any(x == 0 for x in ker[0]):
                continue
            u = [0] * N
            for k, x in zip(S, ker[0]):
                u[k] = x
            found_supports.append(Sset)
            out.append(_vector_binomial(ring, u))
    return out


def is_unimodular(A: PointConfiguration) -> bool:
    """All nonzero maximal minors (on a row basis) share one absolute value."""
    mat = A.matrix()
    r = rank_exact(mat)
    basis = []
    for row in mat:
        if rank_exact(basis + [row]) > len(basis):
            basis.append(row)
        if len(basis) == r:
            break
    from .linalg import det_exact

    values = set()
    for S in itertools.combinations(range(len(A)), r):
        v = abs(det_exact([[row[k] for k in S] for row in basis]))
        if v:
            values.add(v)
    return len(values) <= 1


def graver_bounded(A: PointConfiguration, degree_bound: int, field: Field = QQ) -> list:
    """Primitive binomials x^a - x^b of the toric ideal with max(|a|, |b|) <= bound."""
    N = len(A)
    fibers: dict = {}
    for d in range(1, degree_bound + 1):
        for mono in all_monomials(N, d):
            fibers.setdefault(A.degree(mono), []).append(mono)
    cands = []
    for monos in fibers.values():
        for a, b in itertools.combinations(monos, 2):
            if all(not (x and y) for x, y in zip(a, b)):
                cands.append((a, b))
    # primitive: no other kernel pair (c, d) with c | a and d | b (either orientation)
    def divides(c, a):
        return all(x <= y for x, y in zip(c, a))

    oriented = cands + [(b, a) for a, b in cands]
    ring = A.ring(field)
    out = []
    for a, b in cands:
        if any((c, d) != (a, b) and divides(c, a) and divides(d, b) for c, d in oriented):
            continue
        out.append(_binomial(ring, a, b))
    return out


def up_to_sign(polys) -> set:
    """Hashable set of polynomials identified with their negatives."""
    out = set()
    for f in polys:
        key = frozenset(f.as_dict().items())
        neg = frozenset((-f).as_dict().items())
        out.add(min(key, neg, key=lambda s: sorted((m, str(c)) for m, c in s)))
    return out
