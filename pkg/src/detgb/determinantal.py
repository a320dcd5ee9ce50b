"""Generic matrices: minors, I_t(X), the diagonal ideals J_t, Segre circuits F_{I,J},
and verification drivers for the Groebner-basis theorems on minors."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import BadIndex, OrderNotDiagonal
from .groebner import buchberger, initial_ideal, is_groebner_basis
from .monideal import MonomialIdeal, hilbert_function
from .poly import (
    GF,
    Field,
    GrevLex,
    Lex,
    Polynomial,
    PolyRing,
    TermOrder,
    VariableGrid,
    Weight,
    is_antidiagonal_order,
    is_diagonal_order,
)


@dataclass(frozen=True)
class MinorIndex:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        if len(self.rows) != len(self.cols) or not self.rows:
            raise BadIndex("minor needs equally many (>=1) rows and columns")
        if any(a >= b for a, b in zip(self.rows, self.rows[1:])) or any(
            a >= b for a, b in zip(self.cols, self.cols[1:])
        ):
            raise BadIndex("minor indices must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.rows)

    def check(self, grid: VariableGrid):
        if self.rows[0] < 1 or self.cols[0] < 1 or self.rows[-1] > grid.m or self.cols[-1] > grid.n:
            raise BadIndex(f"{self} does not fit a {grid.m}x{grid.n} grid")

    def diagonal(self) -> list:
        return list(zip(self.rows, self.cols))

    def antidiagonal(self) -> list:
        return list(zip(self.rows, reversed(self.cols)))

    def __str__(self):
        return f"[{','.join(map(str, self.rows))}|{','.join(map(str, self.cols))}]"


def all_minor_indices(grid: VariableGrid, t: int) -> list:
    return [
        MinorIndex(r, c)
        for r in itertools.combinations(range(1, grid.m + 1), t)
        for c in itertools.combinations(range(1, grid.n + 1), t)
    ]


def _laplace(rows: tuple, cols: tuple, grid: VariableGrid, memo: dict) -> dict:
    """Determinant of the submatrix as {monomial: sign}, expanding along the first row."""
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        out = {grid.monomial([(rows[0], cols[0])]): 1}
    else:
        out = {}
        r = rows[0]
        for k, c in enumerate(cols):
            sub = _laplace(rows[1:], cols[:k] + cols[k + 1 :], grid, memo)
            v = grid.index(r, c)
            sign = -1 if k % 2 else 1
            for m, s in sub.items():
                e = list(m)
                e[v] += 1
                out[tuple(e)] = sign * s
    memo[key] = out
    return out


def minor_poly(idx: MinorIndex, grid: VariableGrid, ring: PolyRing = None, memo: dict = None) -> Polynomial:
    """The minor [rows|cols] of the generic matrix as a polynomial."""
    idx.check(grid)
    ring = ring or grid.ring()
    memo = {} if memo is None else memo
    F = ring.field
    return Polynomial(ring, {m: F(s) for m, s in _laplace(idx.rows, idx.cols, grid, memo).items()})


def minors_ideal(t: int, grid: VariableGrid, ring: PolyRing = None) -> list:
    """All C(m,t) C(n,t) t-minors; empty when t exceeds min(m, n)."""
    if t < 1:
        raise ValueError("t must be positive")
    ring = ring or grid.ring()
    if t > min(grid.m, grid.n):
        return []
    memo: dict = {}
    return [minor_poly(idx, grid, ring, memo) for idx in all_minor_indices(grid, t)]


def diagonal_ideal(t: int, grid: VariableGrid, antidiagonal: bool = False) -> MonomialIdeal:
    """J_t: main diagonals (or antidiagonals) of all t-minors."""
    gens = []
    if t <= min(grid.m, grid.n):
        for idx in all_minor_indices(grid, t):
            gens.append(grid.monomial(idx.antidiagonal() if antidiagonal else idx.diagonal()))
    return MonomialIdeal(grid.size, gens, grid.names())


# ---------------------------------------------------------------------------
# circuits of the Segre configuration
# ---------------------------------------------------------------------------


def circuit_binomial(I: Sequence[int], J: Sequence[int], grid: VariableGrid, ring: PolyRing = None) -> Polynomial:
    """F_{I,J} = x_{i1 j1} ... x_{is js} - x_{i1 j2} x_{i2 j3} ... x_{is j1}."""
    ring = ring or grid.ring()
    s = len(I)
    plus = grid.monomial(zip(I, J))
    minus = grid.monomial((I[k], J[(k + 1) % s]) for k in range(s))
    return ring.from_terms([(1, plus), (-1, minus)])


def canonical_circuit_indices(grid: VariableGrid) -> list:
    """Pairs (I, J) with i1 < i_k for k >= 2 and j1 < j2, sizes 2..min(m, n)."""
    out = []
    for s in range(2, min(grid.m, grid.n) + 1):
        for I in itertools.permutations(range(1, grid.m + 1), s):
            if any(I[0] > i for i in I[1:]):
                continue
            for J in itertools.permutations(range(1, grid.n + 1), s):
                if J[0] < J[1]:
                    out.append((I, J))
    return out


def circuits_segre(grid: VariableGrid, ring: PolyRing = None) -> list:
    """The minimal universal Groebner basis {F_{I,J}} of I_2 in canonical form."""
    if grid.m < 2 or grid.n < 2:
        raise ValueError("needs m, n >= 2")
    ring = ring or grid.ring()
    seen = set()
    out = []
    for I, J in canonical_circuit_indices(grid):
        f = circuit_binomial(I, J, grid, ring)
        key = frozenset(f.as_dict())
        neg = frozenset((-f).as_dict())
        if key in seen or neg in seen:
            continue
        seen.add(key)
        out.append(f)
    return out


# ---------------------------------------------------------------------------
# orders used by the drivers
# ---------------------------------------------------------------------------


def diagonal_lex(grid: VariableGrid) -> Lex:
    """Lex with x11 > x12 > ... > x1n > x21 > ... > xmn."""
    return Lex(grid.size)


def antidiagonal_grevlex(grid: VariableGrid) -> GrevLex:
    return GrevLex(grid.size)


def random_weight_order(nvars: int, rng: random.Random, tiebreak: TermOrder = None) -> Weight:
    """Integer weights uniform in [1, 10^4], grevlex tie-break."""
    return Weight([rng.randint(1, 10_000) for _ in range(nvars)], tiebreak)


def random_permutation(nvars: int, rng: random.Random) -> list:
    perm = list(range(nvars))
    rng.shuffle(perm)
    return perm


# ---------------------------------------------------------------------------
# verification drivers
# ---------------------------------------------------------------------------


def _report(claim: str, params: dict, field: Field, orders: list, mode: str, outcome: bool, start: float, **extra) -> dict:
    rep = {
        "claim": claim,
        "parameters": params,
        "field": repr(field),
        "orders_checked": orders,
        "mode": mode,
        "outcome": bool(outcome),
        "timings": {"seconds": round(time.perf_counter() - start, 3)},
    }
    rep.update(extra)
    return rep


def verify_main_theorem(m: int, n: int, t: int, order: TermOrder, field: Field = None) -> dict:
    """t-minors form a Groebner basis with in(I_t) = J_t under a (anti)diagonal order."""
    start = time.perf_counter()
    field = field or GF()
    grid = VariableGrid(m, n)
    if is_diagonal_order(order, grid):
        anti = False
    elif is_antidiagonal_order(order, grid):
        anti = True
    else:
        raise OrderNotDiagonal(f"{order.describe()} is neither diagonal nor antidiagonal on {m}x{n}")
    ring = grid.ring(field)
    gens = minors_ideal(t, grid, ring)
    J = diagonal_ideal(t, grid, antidiagonal=anti)
    if not gens:
        ok_gb, ok_init = True, J.is_zero()
    else:
        ok_gb = is_groebner_basis(gens, order)
        G = buchberger(gens, order)
        ok_init = initial_ideal(G) == J
    return _report(
        "main-theorem",
        {"m": m, "n": n, "t": t, "kind": "antidiagonal" if anti else "diagonal"},
        field,
        [order.describe()],
        "single-order",
        ok_gb and ok_init,
        start,
        is_groebner_basis=ok_gb,
        initial_equals_J=ok_init,
    )


def maximal_minors(grid: VariableGrid, ring: PolyRing = None) -> list:
    return minors_ideal(min(grid.m, grid.n), grid, ring)


def verify_max_minors_ugb(m: int, n: int, orders: Sequence[TermOrder], mode: str, field: Field = None) -> dict:
    """Maximal minors stay a Groebner basis under every supplied order."""
    start = time.perf_counter()
    field = field or GF()
    grid = VariableGrid(m, n)
    gens = maximal_minors(grid, grid.ring(field))
    outcomes = []
    failures = []
    for order in orders:
        ok = is_groebner_basis(gens, order)
        outcomes.append(ok)
        if not ok:
            failures.append(order.describe())
    return _report(
        "max-minors-ugb",
        {"m": m, "n": n, "orders": len(orders)},
        field,
        [o.describe() for o in orders] if len(orders) <= 50 else f"{len(orders)} orders",
        mode,
        all(outcomes),
        start,
        failures=failures,
        passed=sum(outcomes),
    )


# ---------------------------------------------------------------------------
# symmetry of the grid
# ---------------------------------------------------------------------------


def grid_symmetries(grid: VariableGrid, transpose: bool = None) -> list:
    """Variable permutations from S_m x S_n (and transposition when m == n).

    Each entry g maps variable index k to g[k].
    """
    if transpose is None:
        transpose = grid.m == grid.n
    out = []
    for rp in itertools.permutations(range(1, grid.m + 1)):
        for cp in itertools.permutations(range(1, grid.n + 1)):
            g = [grid.index(rp[i - 1], cp[j - 1]) for i, j in grid.positions()]
            out.append(tuple(g))
            if transpose:
                out.append(tuple(grid.index(cp[j - 1], rp[i - 1]) for i, j in grid.positions()))
    return out


def symmetry_orbit_reps(grid: VariableGrid, group: list = None):
    """Yield one variable ranking per orbit of all rankings under the grid symmetries.

    A ranking ``perm`` lists variables from largest to smallest; g acts by
    relabeling each entry.  The ideal of minors is invariant under g, so
    Groebner-basis behavior is constant on orbits.
    """
    group = group if group is not None else grid_symmetries(grid)
    seen = set()
    for perm in itertools.permutations(range(grid.size)):
        if perm in seen:
            continue
        orbit = {tuple(g[v] for v in perm) for g in group}
        seen |= orbit
        yield perm, len(orbit)


def verify_revlex_ugb_2minors(m: int, n: int, mode: str = "exhaustive", samples: int = 500, seed: int = 0, field: Field = None) -> dict:
    """2-minors form a Groebner basis for every (or each sampled) revlex order."""
    start = time.perf_counter()
    field = field or GF()
    grid = VariableGrid(m, n)
    if mode == "exhaustive" and grid.size > 9:
        raise ValueError("exhaustive mode is limited to m*n <= 9")
    gens = minors_ideal(2, grid, grid.ring(field))
    failures = []
    checked = 0
    covered = 0
    if mode == "exhaustive":
        for perm, orbit_size in symmetry_orbit_reps(grid):
            checked += 1
            covered += orbit_size
            if not is_groebner_basis(gens, GrevLex(grid.size, perm)):
                failures.append(list(perm))
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            perm = random_permutation(grid.size, rng)
            checked += 1
            covered += 1
            if not is_groebner_basis(gens, GrevLex(grid.size, perm)):
                failures.append(perm)
    return _report(
        "revlex-2minors",
        {"m": m, "n": n, "samples": samples if mode != "exhaustive" else None, "seed": seed if mode != "exhaustive" else None},
        field,
        f"{checked} grevlex orders ({covered} rankings covered)",
        mode + ("+symmetry" if mode == "exhaustive" else ""),
        not failures,
        start,
        failures=failures,
        representatives=checked,
        rankings_covered=covered,
    )


def dimension_formula(m: int, n: int, t: int) -> int:
    """Krull dimension of S/I_t(X): (m+n-t+1)(t-1), or mn once I_t is zero."""
    if t > min(m, n):
        return m * n
    if t < 1:
        raise ValueError("t must be positive")
    return (m + n - t + 1) * (t - 1)


def degree_and_dimension(t: int, grid: VariableGrid, order: TermOrder, field: Field = None) -> tuple:
    """(degree, dimension) of S/in(I_t) via Buchberger and the Hilbert series."""
    field = field or GF()
    gens = minors_ideal(t, grid, grid.ring(field))
    if not gens:
        return 1, grid.size
    hd = hilbert_function(initial_ideal(buchberger(gens, order)), 0)
    return hd.degree, hd.dimension
