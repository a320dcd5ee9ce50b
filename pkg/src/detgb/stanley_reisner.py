"""Squarefree monomial ideals as simplicial complexes.

Radicals, polarization, purity and f-vectors, reduced homology and the
Reisner Cohen-Macaulay test, secant complexes, grid-poset combinatorics and
the Gessel-Viennot degree of S/J_t.

Faces are handled internally as bitmasks over the ground set; the public
surface speaks in frozensets of vertex labels.
"""

from __future__ import annotations

import itertools
import json
import time
from math import comb
from typing import Iterable, Sequence

from .errors import NotSquarefree
from .linalg import det_exact
from .monideal import MonomialIdeal, hilbert_function
from .poly import DEFAULT_PRIME, VariableGrid


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _minimal_masks(masks: Iterable[int]) -> list:
    uniq = sorted(set(masks), key=lambda s: (bin(s).count("1"), s))
    out: list = []
    for s in uniq:
        if not any(t & s == t for t in out):
            out.append(s)
    return out


def _maximal_masks(masks: Iterable[int]) -> list:
    uniq = sorted(set(masks), key=lambda s: (-bin(s).count("1"), s))
    out: list = []
    for s in uniq:
        if not any(t & s == s for t in out):
            out.append(s)
    return out


def minimal_transversals(edges: Sequence[int]) -> list:
    """Minimal hitting sets of a family of bitmask edges (Berge's incremental method)."""
    trans = [0]
    for e in _minimal_masks(edges):
        if e == 0:
            return []
        nxt = []
        for T in trans:
            if T & e:
                nxt.append(T)
            else:
                nxt.extend(T | (1 << v) for v in _bits(e))
        trans = _minimal_masks(nxt)
    return trans


class SimplicialComplex:
    """Simplicial complex on a labeled ground set, stored by its facets.

    ``facets == ()`` is the void complex (no faces at all); ``facets ==
    (frozenset(),)`` is the complex {emptyset}.
    """

    def __init__(self, vertices: Sequence, facets: Iterable[Iterable]):
        self.vertices = tuple(vertices)
        self._pos = {v: k for k, v in enumerate(self.vertices)}
        masks = []
        for F in facets:
            m = 0
            for v in F:
                m |= 1 << self._pos[v]
            masks.append(m)
        self._facets = tuple(_maximal_masks(masks))

    @classmethod
    def _from_masks(cls, vertices, masks):
        obj = cls.__new__(cls)
        obj.vertices = tuple(vertices)
        obj._pos = {v: k for k, v in enumerate(obj.vertices)}
        obj._facets = tuple(_maximal_masks(masks))
        return obj

    def _set(self, mask: int) -> frozenset:
        return frozenset(self.vertices[k] for k in _bits(mask))

    def _mask(self, face: Iterable) -> int:
        m = 0
        for v in face:
            m |= 1 << self._pos[v]
        return m

    @property
    def facets(self) -> list:
        return sorted((self._set(F) for F in self._facets), key=lambda s: (-len(s), sorted(map(str, s))))

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and set(self._facets) == set(other._facets)
        )

    def __hash__(self):
        return hash((self.vertices, frozenset(self._facets)))

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dimension()}, facets={len(self._facets)})"

    def __contains__(self, face) -> bool:
        m = self._mask(face)
        return any(F & m == m for F in self._facets)

    def is_void(self) -> bool:
        return not self._facets

    def dimension(self) -> int:
        if not self._facets:
            return -2
        return max(bin(F).count("1") for F in self._facets) - 1

    def is_pure(self) -> bool:
        return len({bin(F).count("1") for F in self._facets}) <= 1

    def facet_count(self) -> int:
        return len(self._facets)

    def _face_masks(self) -> set:
        faces = set()
        for F in self._facets:
            if F in faces:
                continue
            verts = list(_bits(F))
            for k in range(len(verts) + 1):
                for sub in itertools.combinations(verts, k):
                    m = 0
                    for v in sub:
                        m |= 1 << v
                    faces.add(m)
        return faces

    def faces(self) -> list:
        return sorted((self._set(m) for m in self._face_masks()), key=lambda s: (len(s), sorted(map(str, s))))

    def f_vector(self) -> list:
        """[f_{-1}, f_0, f_1, ...]: number of faces of each dimension."""
        if not self._facets:
            return []
        counts = [0] * (self.dimension() + 2)
        for m in self._face_masks():
            counts[bin(m).count("1")] += 1
        return counts

    def link(self, face: Iterable) -> "SimplicialComplex":
        m = self._mask(face)
        return SimplicialComplex._from_masks(self.vertices, [F & ~m for F in self._facets if F & m == m])

    def _link_masks(self, m: int) -> list:
        return _maximal_masks([F & ~m for F in self._facets if F & m == m])

    def to_json(self) -> str:
        return json.dumps(
            {
                "vertices": [list(v) if isinstance(v, tuple) else v for v in self.vertices],
                "facets": sorted(sorted(list(v) if isinstance(v, tuple) else v for v in F) for F in self.facets),
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        data = json.loads(text)
        conv = lambda v: tuple(v) if isinstance(v, list) else v
        return cls([conv(v) for v in data["vertices"]], [[conv(v) for v in F] for F in data["facets"]])


def full_simplex(vertices: Sequence) -> SimplicialComplex:
    return SimplicialComplex(vertices, [vertices])


# ---------------------------------------------------------------------------
# Stanley-Reisner correspondence
# ---------------------------------------------------------------------------


def _support_mask(mono) -> int:
    m = 0
    for k, e in enumerate(mono):
        if e:
            m |= 1 << k
    return m


def radical(M: MonomialIdeal) -> MonomialIdeal:
    """Squarefree parts of the generators, re-minimalized."""
    return MonomialIdeal(M.nvars, [tuple(1 if e else 0 for e in g) for g in M.gens], M.names)


def is_radical(M: MonomialIdeal) -> bool:
    return M.is_squarefree()


def complex_of(M: MonomialIdeal, vertices: Sequence = None) -> SimplicialComplex:
    """Stanley-Reisner complex: faces are the supports containing no generator."""
    if not M.is_squarefree():
        raise NotSquarefree("complex_of needs a squarefree monomial ideal")
    vertices = tuple(vertices) if vertices is not None else tuple(range(M.nvars))
    full = (1 << M.nvars) - 1
    covers = minimal_transversals([_support_mask(g) for g in M.gens])
    return SimplicialComplex._from_masks(vertices, [full & ~T for T in covers])


def ideal_of(D: SimplicialComplex) -> MonomialIdeal:
    """Stanley-Reisner ideal: minimal non-faces."""
    n = len(D.vertices)
    full = (1 << n) - 1
    if not D._facets:
        return MonomialIdeal(n, [(0,) * n])
    gens = minimal_transversals([full & ~F for F in D._facets])
    return MonomialIdeal(n, [tuple((T >> k) & 1 for k in range(n)) for T in gens])


def polarize(M: MonomialIdeal) -> tuple:
    """Polarization: x_i^k -> x_i x_i' x_i'' ... (k factors).

    Returns (squarefree ideal, names) where the first M.nvars variables are
    the originals and the extra copies follow.  A squarefree M is unchanged.
    """
    n = M.nvars
    maxexp = [max((g[i] for g in M.gens), default=0) for i in range(n)]
    names = list(M.names) if M.names else [f"v{i}" for i in range(n)]
    slot = {}
    extra = []
    for i in range(n):
        for k in range(2, maxexp[i] + 1):
            slot[(i, k)] = n + len(extra)
            extra.append(f"{names[i]}'{k}")
    N = n + len(extra)
    gens = []
    for g in M.gens:
        e = [0] * N
        for i, a in enumerate(g):
            if a >= 1:
                e[i] = 1
            for k in range(2, a + 1):
                e[slot[(i, k)]] = 1
        gens.append(tuple(e))
    return MonomialIdeal(N, gens, names + extra), names + extra


# ---------------------------------------------------------------------------
# homology and Cohen-Macaulayness
# ---------------------------------------------------------------------------


def _rank_gf2(rows: list) -> int:
    basis: dict = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            if h not in basis:
                basis[h] = r
                break
            r ^= basis[h]
    return len(basis)


def _rank_sparse(rows: list, p: int) -> int:
    """Rank over GF(p) of sparse rows given as {column: value} dicts."""
    pivots: dict = {}
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = max(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                break
            f = row[c]
            for k, v in piv.items():
                w = (row.get(k, 0) - f * v) % p
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
    return len(pivots)


def _reduced_homology_masks(facets: Sequence[int], p: int, top: int = None) -> list:
    """Reduced Betti numbers over GF(p) in dimensions -1..top (default: the complex dimension)."""
    if not facets:
        return []
    dim = max(bin(F).count("1") for F in facets) - 1
    top = dim if top is None else min(top, dim)
    by_size = {k: _faces_of_size(facets, k) for k in range(min(top + 2, dim + 1) + 1)}
    index = {k: {m: i for i, m in enumerate(v)} for k, v in by_size.items()}
    # rank of boundary C_{k-1} -> C_{k-2} for faces of size k (augmented at k = 1)
    ranks: dict = {0: 0}
    for k in range(1, top + 3):
        if not by_size.get(k):
            ranks[k] = 0
            continue
        lower = index[k - 1]
        if p == 2:
            rows = []
            for m in by_size[k]:
                r = 0
                for v in _bits(m):
                    r |= 1 << lower[m & ~(1 << v)]
                rows.append(r)
            ranks[k] = _rank_gf2(rows)
        else:
            rows = []
            for m in by_size[k]:
                row = {}
                sign = 1
                for v in _bits(m):
                    row[lower[m & ~(1 << v)]] = sign
                    sign = -sign
                rows.append(row)
            ranks[k] = _rank_sparse(rows, p)
    out = []
    for d in range(-1, top + 1):
        k = d + 1
        f = len(by_size.get(k, ()))
        out.append(f - ranks.get(k, 0) - ranks.get(k + 1, 0))
    return out


def reduced_homology(D: SimplicialComplex, p: int = DEFAULT_PRIME) -> list:
    """Ranks of reduced homology over GF(p), listed for dimensions -1, 0, ..., dim D."""
    return _reduced_homology_masks(D._facets, p)


def _link_violation(facets: list, p: int):
    """Dimension where the reduced homology of this complex is nonzero below its top, else None."""
    if not facets:
        return None
    dim = max(bin(F).count("1") for F in facets) - 1
    if dim <= 0:
        return None  # nonempty, nothing to check below dimension 0
    apex = -1
    for F in facets:
        apex &= F
    if apex:
        return None  # a cone is acyclic
    h = _reduced_homology_masks(facets, p, top=dim - 1)
    for d, b in zip(range(-1, dim), h):
        if b:
            return d
    return None


def _faces_of_size(facets: Sequence[int], k: int) -> list:
    out = set()
    for F in facets:
        verts = list(_bits(F))
        if len(verts) < k:
            continue
        for sub in itertools.combinations(verts, k):
            m = 0
            for v in sub:
                m |= 1 << v
            out.add(m)
    return sorted(out)


def _is_connected(facets: list) -> bool:
    comp = facets[0]
    rest = facets[1:]
    grew = True
    while rest and grew:
        grew = False
        keep = []
        for F in rest:
            if F & comp:
                comp |= F
                grew = True
            else:
                keep.append(F)
        rest = keep
    return not rest


def _disconnected(lk: list):
    if lk and max(bin(F).count("1") for F in lk) >= 2 and not _is_connected(lk):
        return 0
    return None


def reisner_witness(D: SimplicialComplex, p: int = DEFAULT_PRIME, deadline: float = None):
    """A face whose link has homology below its dimension, or None if D is Cohen-Macaulay.

    Faces are visited one size at a time from the largest down (smallest
    links first).  Within a size, a cheap connectivity pass runs before the
    homology pass, so non-pure complexes are caught early.  Raises
    TimeoutError past deadline.
    """
    if not D._facets:
        return None
    top = max(bin(F).count("1") for F in D._facets)
    for k in range(top, -1, -1):
        faces = _faces_of_size(D._facets, k)
        for check in (_disconnected, lambda lk: _link_violation(lk, p)):
            for m in faces:
                if deadline is not None and time.monotonic() > deadline:
                    raise TimeoutError("Reisner scan exceeded its budget")
                lk = D._link_masks(m)
                d = check(lk)
                if d is not None:
                    link_dim = max(bin(F).count("1") for F in lk) - 1
                    return {"face": sorted(D._set(m), key=str), "homology_dimension": d, "link_dimension": link_dim}
    return None


def is_cm_reisner(D: SimplicialComplex, p: int = DEFAULT_PRIME) -> bool:
    """Reisner: every link (including that of the empty face) is acyclic below its dimension."""
    return reisner_witness(D, p) is None


def is_cm_monomial(M: MonomialIdeal, p: int = DEFAULT_PRIME) -> bool:
    """Cohen-Macaulayness of S/M via polarization and Reisner's criterion."""
    P, names = polarize(M)
    return is_cm_reisner(complex_of(P, names), p)


# ---------------------------------------------------------------------------
# secant complexes
# ---------------------------------------------------------------------------


def sr_secant(D: SimplicialComplex, r: int) -> SimplicialComplex:
    """Faces are unions of at most r faces of D (facet unions, re-maximalized)."""
    if r < 1:
        raise ValueError("r must be positive")
    cur = list(D._facets)
    base = list(D._facets)
    for _ in range(r - 1):
        cur = _maximal_masks(a | b for a in cur for b in base)
    return SimplicialComplex._from_masks(D.vertices, cur)


# ---------------------------------------------------------------------------
# grid poset
# ---------------------------------------------------------------------------


class GridPoset:
    """[m] x [n] with (i,j) <= (h,k) iff i <= h and j <= k.

    With ``flip_columns`` the column comparison is reversed, so chains become
    the monomial supports avoiding main diagonals instead of antidiagonals.
    """

    def __init__(self, m: int, n: int, flip_columns: bool = False):
        self.m, self.n, self.flip = m, n, flip_columns
        self.elements = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]

    def leq(self, a, b) -> bool:
        if self.flip:
            return a[0] <= b[0] and a[1] >= b[1]
        return a[0] <= b[0] and a[1] <= b[1]

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def is_chain(self, S) -> bool:
        S = list(S)
        return all(self.comparable(a, b) for a, b in itertools.combinations(S, 2))

    def is_antichain(self, S) -> bool:
        S = list(S)
        return all(not self.comparable(a, b) for a, b in itertools.combinations(S, 2))

    def max_antichain(self, S) -> list:
        """Largest antichain inside S by exhaustive search from the top size down."""
        S = sorted(S)
        for k in range(len(S), 0, -1):
            for sub in itertools.combinations(S, k):
                if self.is_antichain(sub):
                    return list(sub)
        return []

    def min_chain_cover(self, S) -> list:
        """Fewest chains partitioning S, found by exhaustive backtracking over k = 1, 2, ..."""
        S = sorted(S)
        if not S:
            return []
        for k in range(1, len(S) + 1):
            chains: list = [[] for _ in range(k)]

            def place(idx):
                if idx == len(S):
                    return True
                x = S[idx]
                seen_empty = False
                for c in chains:
                    if not c:
                        if seen_empty:
                            continue
                        seen_empty = True
                    if all(self.comparable(x, y) for y in c):
                        c.append(x)
                        if place(idx + 1):
                            return True
                        c.pop()
                return False

            if place(0):
                return [list(c) for c in chains if c]
        return [[x] for x in S]

    def chain_complex(self, t: int) -> SimplicialComplex:
        """Delta_t: subsets containing no antichain of size t."""
        J = antichain_ideal(self, t)
        return complex_of(J, self.elements)


def antichain_ideal(P: GridPoset, t: int) -> MonomialIdeal:
    """Squarefree ideal generated by the t-antichains of the grid poset."""
    grid = VariableGrid(P.m, P.n)
    gens = [grid.monomial(S) for S in itertools.combinations(P.elements, t) if P.is_antichain(S)]
    return MonomialIdeal(grid.size, gens, grid.names())


def dilworth_check(m: int, n: int, t: int, S: Iterable, flip_columns: bool = False) -> dict:
    """Largest antichain vs fewest chains on S, and the three-way face criterion for Delta_t."""
    P = GridPoset(m, n, flip_columns)
    S = sorted(set(map(tuple, S)))
    anti = P.max_antichain(S)
    cover = P.min_chain_cover(S)
    no_t_antichain = len(anti) < t
    union_of_chains = len(cover) <= t - 1
    D = P.chain_complex(t)
    in_delta = frozenset(S) in D
    return {
        "subset": [list(x) for x in S],
        "max_antichain": [list(x) for x in anti],
        "chain_cover": [[list(x) for x in c] for c in cover],
        "dilworth_equal": len(anti) == len(cover),
        "in_delta_t": in_delta,
        "no_t_antichain": no_t_antichain,
        "union_of_t_minus_1_chains": union_of_chains,
        "equivalence_holds": in_delta == no_t_antichain == union_of_chains,
    }


# ---------------------------------------------------------------------------
# degrees
# ---------------------------------------------------------------------------


def gv_degree(m: int, n: int, t: int) -> int:
    """deg S/J_t as the (t-1)x(t-1) determinant of binomials C(m-i+n-j, m-i)."""
    if not 2 <= t <= min(m, n) + 1:
        raise ValueError("need 2 <= t <= min(m, n) + 1")
    mat = [[comb(m - i + n - j, m - i) for j in range(1, t)] for i in range(1, t)]
    return det_exact(mat)


def degree_from_hilbert(M: MonomialIdeal) -> tuple:
    """(dimension, degree) of S/M from its Hilbert series."""
    hd = hilbert_function(M, 0)
    return hd.dimension, hd.degree
