"""Reproducible experiment drivers behind ``detgb experiment NAME``.

Every driver takes an ExperimentSpec and returns a report dict with a fixed
envelope (schema, spec, claim, parameters, field, orders_checked, mode,
outcome, status, details, timings).  Orders are drawn from a seeded RNG in a
fixed sequence, so a fixed spec yields the same report bytes; wall-clock
timings are only written when the run spec asks for them.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .determinantal import (
    antidiagonal_grevlex,
    circuits_segre,
    degree_and_dimension,
    diagonal_ideal,
    diagonal_lex,
    dimension_formula,
    grid_symmetries,
    maximal_minors,
    minors_ideal,
    random_permutation,
    random_weight_order,
    symmetry_orbit_reps,
    verify_main_theorem,
    verify_revlex_ugb_2minors,
)
from .errors import InvalidOrder, OrderNotDiagonal, SchemaMismatch, UsageError
from .groebner import GBTimeout, buchberger, initial_ideal, is_groebner_basis, normal_form
from .joins import (
    check_sec_in_monotone,
    circuits,
    graver_bounded,
    is_unimodular,
    kernel_of_map,
    product_map,
    reduced_gb,
    same_ideal,
    secant_ideal,
    segre_configuration,
    segre_map,
    toric_ideal,
    up_to_sign,
)
from .monideal import MonomialIdeal, hilbert_function
from .poly import QQ, GF, Field, GrevLex, Lex, TermOrder, VariableGrid, Weight, leading_monomial, mono_divides, parse_field
from .rsk import ANTIDIAGONAL, DIAGONAL, standard_basis_rank_check, verify_bijection, verify_schen3
from .stanley_reisner import (
    GridPoset,
    complex_of,
    dilworth_check,
    gv_degree,
    polarize,
    radical,
    reisner_witness,
    sr_secant,
)

SCHEMA = "detgb.report/1"

CONFIRMED = "confirmed"
REFUTED = "refuted"
INCOMPLETE = "incomplete"
EXIT_CODES = {CONFIRMED: 0, REFUTED: 1, INCOMPLETE: 2}
EXIT_USAGE = 64
EXIT_SOFTWARE = 70


@dataclass
class ExperimentSpec:
    name: str
    grid: tuple = None
    t: int = None
    field: str = None
    seed: int = 0
    samples: int = None
    budget: float = None
    degree: int = None
    order: str = None
    workers: int = 1
    gb_timeout: float = None
    timings: bool = False
    out: str = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["grid"] = f"{self.grid[0]}x{self.grid[1]}" if self.grid else None
        d.pop("out")
        d.pop("timings")
        return d


# ---------------------------------------------------------------------------
# spec parsing helpers (shared with the CLI)
# ---------------------------------------------------------------------------


def parse_grid(text: str) -> tuple:
    try:
        m, n = text.lower().split("x")
        m, n = int(m), int(n)
    except ValueError:
        raise UsageError(f"grid must look like MxN, got {text!r}") from None
    if m < 1 or n < 1:
        raise UsageError("grid sizes must be positive")
    return m, n


def _ints(text: str) -> list:
    return [int(x) for x in text.split(",") if x.strip()]


def parse_order(text: str, grid: VariableGrid) -> TermOrder:
    """Order from ``KIND[:ARGS]``.

    KIND is lex, grevlex or weight.  ARGS: ``rowmajor`` (default),
    ``colmajor``, ``seed=N``, an explicit ranking ``perm=i,j,...`` or bare
    ``i,j,...`` (0-based variable indices, largest first), or for weight
    ``w=a,b,...`` optionally followed by ``|grevlex:...``.
    """
    kind, _, args = text.strip().partition(":")
    kind = kind.lower()
    N = grid.size
    try:
        if kind in ("lex", "grevlex"):
            cls = Lex if kind == "lex" else GrevLex
            if args in ("", "rowmajor"):
                return cls(N)
            if args == "colmajor":
                return cls(N, [grid.index(i, j) for j in range(1, grid.n + 1) for i in range(1, grid.m + 1)])
            if args.startswith("seed="):
                return cls(N, random_permutation(N, random.Random(int(args[5:]))))
            if args.startswith("perm="):
                args = args[5:]
            return cls(N, _ints(args))
        if kind == "weight":
            if args.startswith("seed="):
                return random_weight_order(N, random.Random(int(args[5:])))
            w, _, tie = args.partition("|")
            if w.startswith("w="):
                w = w[2:]
            tiebreak = parse_order(tie, grid) if tie else None
            return Weight(_ints(w), tiebreak)
    except (ValueError, TypeError, InvalidOrder) as exc:
        raise UsageError(f"bad order spec {text!r}: {exc}") from None
    raise UsageError(f"unknown order kind {kind!r} (expected lex, grevlex or weight)")


def field_of(spec: ExperimentSpec, default: Field) -> Field:
    if spec.field is None:
        return default
    try:
        return parse_field(spec.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# symmetry canonicalization
# ---------------------------------------------------------------------------


def canonical_form(M: MonomialIdeal, group: Sequence[Sequence[int]]) -> tuple:
    """Lexicographically least sorted generator list over all images g(M)."""
    best = None
    for g in group:
        image = []
        for a in M.gens:
            b = [0] * len(a)
            for k, e in enumerate(a):
                b[g[k]] = e
            image.append(tuple(b))
        image.sort()
        image = tuple(image)
        if best is None or image < best:
            best = image
    return best


# ---------------------------------------------------------------------------
# deterministic worker pool
# ---------------------------------------------------------------------------


def run_tasks(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """fn over items, results in item order; serial when workers <= 1."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def search_tasks(fn: Callable, items: Sequence, workers: int, hit: Callable, start: int = 0, deadline: float = None):
    """First (index, result) at or after ``start`` with hit(result) true.

    Returns (found or None, index of the next unexamined item).  Items are
    evaluated in batches, but every item before the hit is examined and
    nothing after it is reported, so the answer does not depend on the
    worker count.  The deadline is checked between batches.
    """
    batch_size = max(1, workers) * 2
    pos = start
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while pos < len(items):
            if deadline is not None and time.monotonic() > deadline:
                break
            batch = items[pos : pos + batch_size] if pool else items[pos : pos + 1]
            results = list(pool.map(fn, batch)) if pool else [fn(batch[0])]
            for k, r in enumerate(results):
                if hit(r):
                    return (pos + k, r), pos + k + 1
            pos += len(batch)
        return None, pos
    finally:
        if pool:
            pool.shutdown()


# ---------------------------------------------------------------------------
# report envelope
# ---------------------------------------------------------------------------


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k != "timings"}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _envelope(spec: ExperimentSpec, body: dict, seconds: float) -> dict:
    status = body["status"]
    rep = {
        "schema": SCHEMA,
        "experiment": spec.name,
        "spec": spec.to_dict(),
        "claim": body["claim"],
        "parameters": body.get("parameters", {}),
        "field": body.get("field"),
        "orders_checked": body.get("orders_checked"),
        "mode": body.get("mode"),
        "outcome": {CONFIRMED: True, REFUTED: False}.get(status),
        "status": status,
        "details": body.get("details", {}),
        "timings": None,
    }
    if spec.timings:
        rep["timings"] = {"seconds": round(seconds, 3)}
    else:
        rep = _strip_timings(rep)
        rep["timings"] = None
    return rep


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _status(ok: bool) -> str:
    return CONFIRMED if ok else REFUTED


def _given(value, default):
    return default if value is None else value


def _grid_or(spec: ExperimentSpec, default: tuple) -> tuple:
    return spec.grid or default


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------


def _cases(spec: ExperimentSpec, bound=(4, 4)) -> list:
    if spec.grid:
        m, n = spec.grid
        ts = [spec.t] if spec.t else range(1, min(m, n) + 1)
        return [(m, n, t) for t in ts]
    return [(m, n, t) for m in range(1, bound[0] + 1) for n in range(1, bound[1] + 1) for t in range(1, min(m, n) + 1)]


def run_main_theorem(spec: ExperimentSpec) -> dict:
    F = field_of(spec, GF())
    rows = []
    for m, n, t in _cases(spec):
        grid = VariableGrid(m, n)
        orders = [parse_order(spec.order, grid)] if spec.order else [diagonal_lex(grid), antidiagonal_grevlex(grid)]
        for order in orders:
            try:
                r = verify_main_theorem(m, n, t, order, F)
            except OrderNotDiagonal as exc:
                raise UsageError(str(exc)) from None
            rows.append(
                {
                    "m": m,
                    "n": n,
                    "t": t,
                    "order": order.describe(),
                    "kind": r["parameters"]["kind"],
                    "is_groebner_basis": r["is_groebner_basis"],
                    "initial_equals_J": r["initial_equals_J"],
                }
            )
    ok = all(r["is_groebner_basis"] and r["initial_equals_J"] for r in rows)
    return {
        "claim": "t-minors are a Groebner basis with initial ideal J_t under diagonal and antidiagonal orders",
        "parameters": {"cases": len(rows)},
        "field": repr(F),
        "orders_checked": sorted({r["kind"] for r in rows}),
        "mode": "exhaustive over the listed (m, n, t)",
        "status": _status(ok),
        "details": {"cases": rows, "failures": [r for r in rows if not (r["is_groebner_basis"] and r["initial_equals_J"])]},
    }


def run_gv_degree(spec: ExperimentSpec) -> dict:
    F = field_of(spec, GF())
    rows = []
    if spec.grid:
        cases = [c for c in _cases(spec) if c[2] >= 2]
    else:
        cases = [(m, n, t) for m in range(1, 5) for n in range(1, 5) for t in range(2, min(m, n) + 2)]
    for m, n, t in cases:
        grid = VariableGrid(m, n)
        deg, dim = degree_and_dimension(t, grid, diagonal_lex(grid), F)
        facets = complex_of(diagonal_ideal(t, grid), grid.names()).facet_count()
        row = {
            "m": m,
            "n": n,
            "t": t,
            "degree_hilbert": deg,
            "degree_gv": gv_degree(m, n, t),
            "facets": facets,
            "dimension_hilbert": dim,
            "dimension_formula": dimension_formula(m, n, t),
        }
        row["ok"] = row["degree_hilbert"] == row["degree_gv"] == facets and dim == row["dimension_formula"]
        rows.append(row)
    ok = all(r["ok"] for r in rows)
    return {
        "claim": "degree of S/in(I_t) equals the lattice-path determinant and the facet count of Delta_t; dimension (m+n-t+1)(t-1)",
        "parameters": {"cases": len(rows)},
        "field": repr(F),
        "orders_checked": ["diagonal lex"],
        "mode": "exhaustive over the listed (m, n, t)",
        "status": _status(ok),
        "details": {"cases": rows},
    }


def run_rsk_bijection(spec: ExperimentSpec) -> dict:
    grids = [spec.grid] if spec.grid else [(3, 3), (2, 4)]
    dmax = _given(spec.degree, 4)
    rows = []
    for m, n in grids:
        grid = VariableGrid(m, n)
        for conv in (DIAGONAL, ANTIDIAGONAL):
            for d in range(1, dmax + 1):
                b = verify_bijection(grid, d, conv)
                schen = [verify_schen3(grid, t, d, conv) for t in range(1, min(m, n) + 1)]
                rows.append(
                    {
                        "grid": f"{m}x{n}",
                        "convention": conv,
                        "d": d,
                        "monomials": b["monomials"],
                        "standard_bitableaux": b["standard_bitableaux"],
                        "bijection": b["outcome"],
                        "schen3": {str(s["parameters"]["t"]): [s["rsk_count"], s["J_count"], s["outcome"]] for s in schen},
                        "ok": b["outcome"] and all(s["outcome"] for s in schen),
                    }
                )
        for d in range(1, min(dmax, 3) + 1):
            r = standard_basis_rank_check(grid, d)
            rows.append({"grid": f"{m}x{n}", "basis_rank_d": d, "rank": r["rank"], "dimension": r["monomial_count"], "ok": r["outcome"]})
    return {
        "claim": "RSK is a degree-preserving bijection onto standard bitableaux and maps the width->=t part onto J_t",
        "parameters": {"grids": [f"{m}x{n}" for m, n in grids], "max_degree": dmax},
        "field": repr(GF()),
        "orders_checked": None,
        "mode": "exhaustive in each degree",
        "status": _status(all(r["ok"] for r in rows)),
        "details": {"rows": rows},
    }


@lru_cache(maxsize=None)
def _max_minor_gens(m: int, n: int, field_name: str):
    grid = VariableGrid(m, n)
    return grid, maximal_minors(grid, grid.ring(parse_field(field_name)))


def _check_max_minor_order(task) -> bool:
    m, n, field_name, kind, data = task
    grid, gens = _max_minor_gens(m, n, field_name)
    if kind == "lex":
        order = Lex(grid.size, data)
    elif kind == "grevlex":
        order = GrevLex(grid.size, data)
    else:
        order = Weight(data)
    return is_groebner_basis(gens, order)


def run_max_minors_ugb(spec: ExperimentSpec) -> dict:
    F = field_of(spec, GF())
    fname = "q" if F == QQ else f"p={F.p}"
    samples = _given(spec.samples, 200)
    if spec.grid:
        m, n = sorted(spec.grid)
        plan = [(m, n, "exhaustive" if m * n <= 6 else "sampled")]
    else:
        plan = [(2, 3, "exhaustive"), (2, 4, "sampled"), (3, 4, "sampled")]
    rows = []
    for m, n, mode in plan:
        N = m * n
        tasks = []
        if mode == "exhaustive":
            for kind in ("lex", "grevlex"):
                tasks += [(m, n, fname, kind, list(p)) for p in itertools.permutations(range(N))]
        else:
            rng = random.Random(spec.seed)
            tasks = [(m, n, fname, "weight", [rng.randint(1, 10_000) for _ in range(N)]) for _ in range(samples)]
        results = run_tasks(_check_max_minor_order, tasks, spec.workers)
        failures = [{"kind": t[3], "data": t[4]} for t, ok in zip(tasks, results) if not ok]
        rows.append(
            {
                "m": m,
                "n": n,
                "mode": mode,
                "orders": len(tasks),
                "by_kind": {k: sum(1 for t in tasks if t[3] == k) for k in sorted({t[3] for t in tasks})},
                "passed": sum(results),
                "failures": failures,
            }
        )
    ok = all(not r["failures"] for r in rows)
    return {
        "claim": "maximal minors form a universal Groebner basis",
        "parameters": {"seed": spec.seed, "samples": samples},
        "field": repr(F),
        "orders_checked": {f"{r['m']}x{r['n']}": r["by_kind"] for r in rows},
        "mode": "; ".join(f"{r['m']}x{r['n']} {r['mode']}" for r in rows),
        "status": _status(ok),
        "details": {"rows": rows},
    }


# the six cubic circuits of the 3x3 grid, written out by hand, as (positive term, negative term)
REFERENCE_3X3_CUBICS = [
    (((1, 1), (2, 2), (3, 3)), ((1, 2), (2, 3), (3, 1))),
    (((1, 1), (2, 3), (3, 2)), ((1, 3), (2, 2), (3, 1))),
    (((1, 2), (2, 3), (3, 1)), ((1, 3), (2, 1), (3, 2))),
    (((1, 1), (3, 2), (2, 3)), ((1, 2), (3, 3), (2, 1))),
    (((1, 1), (3, 3), (2, 2)), ((1, 3), (3, 2), (2, 1))),
    (((1, 2), (3, 3), (2, 1)), ((1, 3), (3, 1), (2, 2))),
]


def _reference_3x3(grid: VariableGrid, ring) -> list:
    out = [f for f in minors_ideal(2, grid, ring)]
    for pos, neg in REFERENCE_3X3_CUBICS:
        out.append(ring.monomial(grid.monomial(pos)) - ring.monomial(grid.monomial(neg)))
    return out


def _minimality_witness(C: list, k: int, rng: random.Random, tries: int, deadline: float):
    """An order under which C minus C[k] is not a Groebner basis of (C).

    Certificate: lm(C[k]) lies in in(C) but is divisible by no leading
    monomial of the other elements.  Candidate orders cycle through random
    weights, random lex and random revlex rankings, and weights biased
    toward one term of C[k].
    """
    rest = C[:k] + C[k + 1 :]
    f = C[k]
    N = f.ring.nvars
    terms = [m for _, m in f.terms]
    for attempt in range(tries):
        if time.monotonic() > deadline:
            return None
        kind = attempt % 4
        if kind == 0:
            order = random_weight_order(N, rng)
        elif kind == 1:
            order = Lex(N, random_permutation(N, rng))
        elif kind == 2:
            order = GrevLex(N, random_permutation(N, rng))
        else:
            w = [rng.randint(1, 100) for _ in range(N)]
            for v, e in enumerate(terms[(attempt // 4) % len(terms)]):
                if e:
                    w[v] += 1000
            order = Weight(w)
        lm = leading_monomial(order, f)
        if not any(mono_divides(leading_monomial(order, g), lm) for g in rest):
            return order
    return None


def run_segre_circuits(spec: ExperimentSpec) -> dict:
    F = field_of(spec, GF())
    m, n = _grid_or(spec, (3, 3))
    grid = VariableGrid(m, n)
    ring = grid.ring(F)
    samples = _given(spec.samples, 100)
    budget = _given(spec.budget, 600)
    deadline = time.monotonic() + budget
    C = circuits_segre(grid, ring)
    details: dict = {"circuits": [str(f) for f in C], "count": len(C)}
    by_degree: dict = {}
    for f in C:
        by_degree[str(f.total_degree())] = by_degree.get(str(f.total_degree()), 0) + 1
    details["by_degree"] = by_degree
    checks = {}
    if (m, n) == (3, 3):
        checks["matches_reference"] = up_to_sign(C) == up_to_sign(_reference_3x3(grid, ring))
    checks["degree2_are_minors"] = up_to_sign([f for f in C if f.total_degree() == 2]) == up_to_sign(minors_ideal(2, grid, ring))
    G2 = buchberger(minors_ideal(2, grid, ring), GrevLex(grid.size))
    checks["all_in_I2"] = all(not normal_form(f, G2.elements, G2.order) for f in C)
    A = segre_configuration(grid)
    toric = circuits(A, F)
    checks["toric_circuits_match"] = up_to_sign(toric) == up_to_sign(C)

    rng = random.Random(spec.seed)
    sampled = []
    for _ in range(samples):
        sampled.append(random_weight_order(grid.size, rng))
        sampled.append(Lex(grid.size, random_permutation(grid.size, rng)))
    gb_fail = [o.describe() for o in sampled if not is_groebner_basis(C, o)]
    checks["sampled_orders_pass"] = not gb_fail
    revlex = {"representatives": 0, "rankings_covered": 0, "failures": []}
    if grid.size <= 9:
        for perm, size in symmetry_orbit_reps(grid):
            revlex["representatives"] += 1
            revlex["rankings_covered"] += size
            if not is_groebner_basis(C, GrevLex(grid.size, perm)):
                revlex["failures"].append(list(perm))
        checks["all_revlex_pass"] = not revlex["failures"]

    # minimality: each element is needed for some order
    mrng = random.Random(spec.seed + 1)
    witnesses = []
    for k in range(len(C)):
        o = _minimality_witness(C, k, mrng, 20_000, deadline)
        witnesses.append({"removed": str(C[k]), "order": o.describe() if o else None})
    missing = [w["removed"] for w in witnesses if w["order"] is None]

    # unimodularity, Graver and the sandwich circuits <= reduced GBs <= Graver
    toric_rows = []
    for a in range(2, min(m, 3) + 1):
        for b in range(2, min(n, 3) + 1):
            g = VariableGrid(a, b)
            cfg = segre_configuration(g)
            circ = up_to_sign(circuits(cfg, F))
            grav = up_to_sign(graver_bounded(cfg, min(a, b) + 1, F))
            T = toric_ideal(cfg, F)
            orng = random.Random(spec.seed + 2)
            union = set()
            inside = True
            for _ in range(10):
                G = reduced_gb(T, random_weight_order(g.size, orng)).elements
                got = up_to_sign(G)
                union |= got
                inside &= got <= grav
            toric_rows.append(
                {
                    "grid": f"{a}x{b}",
                    "unimodular": is_unimodular(cfg),
                    "circuits": len(circ),
                    "graver": len(grav),
                    "graver_equals_circuits": circ == grav,
                    "reduced_gbs_inside_graver": inside,
                    "circuits_inside_graver": circ <= grav,
                    "reduced_gb_union": len(union),
                }
            )
    checks["toric"] = all(
        r["unimodular"] and r["graver_equals_circuits"] and r["reduced_gbs_inside_graver"] and r["circuits_inside_graver"] for r in toric_rows
    )
    details.update(
        checks=checks,
        sampled_failures=gb_fail,
        revlex=revlex,
        minimality=witnesses,
        minimality_missing=missing,
        toric=toric_rows,
    )
    if not all(checks.values()):
        status = REFUTED
    elif missing:
        status = INCOMPLETE
    else:
        status = CONFIRMED
    return {
        "claim": "the circuits F_{I,J} form a minimal universal Groebner basis of I_2",
        "parameters": {"m": m, "n": n, "samples": samples, "seed": spec.seed, "budget": budget},
        "field": repr(F),
        "orders_checked": {
            "sampled": f"{samples} weight (grevlex tie-break) + {samples} lex",
            "revlex": f"{revlex['representatives']} symmetry classes covering {revlex['rankings_covered']} rankings",
        },
        "mode": "sampled + exhaustive revlex up to symmetry",
        "status": status,
        "details": details,
    }


def run_revlex_2minors(spec: ExperimentSpec) -> dict:
    F = field_of(spec, GF())
    m, n = _grid_or(spec, (3, 3))
    mode = "exhaustive" if m * n <= 9 else "sampled"
    r = verify_revlex_ugb_2minors(m, n, mode, _given(spec.samples, 500), spec.seed, F)
    return {
        "claim": "the 2-minors are a Groebner basis for every revlex order",
        "parameters": r["parameters"],
        "field": r["field"],
        "orders_checked": r["orders_checked"],
        "mode": r["mode"],
        "status": _status(r["outcome"]),
        "details": {k: r[k] for k in ("failures", "representatives", "rankings_covered")},
    }


@lru_cache(maxsize=None)
def _minor_gens(m: int, n: int, t: int, field_name: str):
    grid = VariableGrid(m, n)
    return grid, minors_ideal(t, grid, grid.ring(parse_field(field_name)))


def _initial_for(task):
    """Initial ideal generators of I_t under (kind, ranking); None on GB timeout."""
    m, n, t, field_name, kind, perm, timeout = task
    grid, gens = _minor_gens(m, n, t, field_name)
    order = Lex(grid.size, perm) if kind == "lex" else GrevLex(grid.size, perm)
    try:
        J = initial_ideal(buchberger(gens, order, timeout=timeout))
    except GBTimeout:
        return None
    return J.gens


def run_revlex_3minors_sample(spec: ExperimentSpec) -> dict:
    F = field_of(spec, GF())
    fname = "q" if F == QQ else f"p={F.p}"
    m, n = _grid_or(spec, (4, 4))
    t = _given(spec.t, 3)
    samples = _given(spec.samples, 300)
    grid = VariableGrid(m, n)
    rng = random.Random(spec.seed)
    perms = [random_permutation(grid.size, rng) for _ in range(samples)]
    tasks = [(m, n, t, fname, "grevlex", p, spec.gb_timeout) for p in perms]
    results = run_tasks(_initial_for, tasks, spec.workers)
    group = grid_symmetries(grid)
    raw = {}
    timeouts = 0
    non_sqfree = []
    for p, gens in zip(perms, results):
        if gens is None:
            timeouts += 1
            continue
        J = MonomialIdeal(grid.size, gens, grid.names())
        raw.setdefault(J.gens, J)
        if not J.is_squarefree():
            non_sqfree.append({"ranking": p, "order": GrevLex(grid.size, p).describe()})
    classes = {canonical_form(J, group) for J in raw.values()}
    if non_sqfree:
        status = REFUTED
    elif timeouts:
        status = INCOMPLETE
    else:
        status = CONFIRMED
    return {
        "claim": f"every sampled revlex initial ideal of I_{t} is squarefree",
        "parameters": {"m": m, "n": n, "t": t, "samples": samples, "seed": spec.seed},
        "field": repr(F),
        "orders_checked": f"{samples} grevlex orders from uniformly random variable rankings",
        "mode": "sampled",
        "status": status,
        "details": {
            "distinct_initial_ideals": len(raw),
            "distinct_up_to_symmetry": len(classes),
            "symmetry_group": "S_m x S_n" + (" x Z/2 (transpose)" if m == n else ""),
            "symmetry_group_order": len(group),
            "reference_count": 69 if (m, n, t) == (4, 4, 3) else None,
            "non_squarefree": non_sqfree,
            "gb_timeouts": timeouts,
        },
    }


def _mono_text(a, names) -> str:
    parts = []
    for v, e in enumerate(a):
        if e:
            parts.append(names[v] + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) or "1"


def _noncm_certificates(J: MonomialIdeal, grid: VariableGrid, deadline: float) -> dict:
    """Reisner witnesses for S/J (through polarization) and for S/sqrt(J)."""
    P, names = polarize(J)
    w_pol = reisner_witness(complex_of(P, names), deadline=deadline)
    if w_pol is None:
        return {"S/J": None}
    rad = radical(J)
    w_rad = reisner_witness(complex_of(rad, grid.names()), deadline=deadline)
    return {
        "S/J": {"method": "polarization + Reisner", "polarized_variables": len(names), **w_pol},
        "S/sqrt(J)": None if w_rad is None else {"method": "Reisner", **w_rad},
        "h_vector_J": list(hilbert_function(J, 0).h_vector),
        "h_vector_sqrtJ": list(hilbert_function(rad, 0).h_vector),
    }


def run_search(spec: ExperimentSpec, kind: str, default_grid: tuple, default_t: int, want_noncm: bool) -> dict:
    F = field_of(spec, GF())
    fname = "q" if F == QQ else f"p={F.p}"
    m, n = _grid_or(spec, default_grid)
    t = _given(spec.t, default_t)
    grid = VariableGrid(m, n)
    samples = _given(spec.samples, 5000)
    budget = _given(spec.budget, 1800)
    start = time.monotonic()
    deadline = start + budget
    cert_budget = 20.0
    rng = random.Random(spec.seed)
    perms = [random_permutation(grid.size, rng) for _ in range(samples)]
    tasks = [(m, n, t, fname, kind, p, spec.gb_timeout) for p in perms]
    non_radical_seen = 0
    cert_timeouts = 0
    screened = 0
    witness = None
    pos = 0
    while witness is None:
        found, pos = search_tasks(
            _initial_for,
            tasks,
            spec.workers,
            lambda gens: gens is not None and any(e > 1 for g in gens for e in g),
            pos,
            deadline,
        )
        if found is None:
            break
        idx, gens = found
        perm = perms[idx]
        non_radical_seen += 1
        J = MonomialIdeal(grid.size, gens, grid.names())
        cand = {
            "index": idx,
            "ranking": perm,
            "ranking_names": [grid.names()[v] for v in perm],
            "order": (Lex if kind == "lex" else GrevLex)(grid.size, perm).describe(),
            "non_squarefree_generators": [_mono_text(g, J.names) for g in J.gens if any(e > 1 for e in g)],
            "initial_ideal": J.to_strings(),
        }
        if not want_noncm:
            witness = cand
            break
        # Reisner scans on CM-looking radicals rarely finish; a negative h-vector
        # of S/sqrt(J) already rules out CM, so only those candidates are certified.
        if min(hilbert_function(radical(J), 0).h_vector) >= 0:
            screened += 1
            continue
        try:
            certs = _noncm_certificates(J, grid, min(deadline, time.monotonic() + cert_budget))
        except TimeoutError:
            cert_timeouts += 1
            continue
        if certs.get("S/J") and certs.get("S/sqrt(J)"):
            cand["certificates"] = certs
            witness = cand
    tried = pos
    if witness is not None:
        status = CONFIRMED
    else:
        status = INCOMPLETE
    order_word = "lexicographic" if kind == "lex" else "revlex"
    claim = f"I_{t} of the {m}x{n} matrix has a {order_word} initial ideal that is not radical"
    if want_noncm:
        claim += ", with S/J and S/sqrt(J) not Cohen-Macaulay"
    return {
        "claim": claim,
        "parameters": {"m": m, "n": n, "t": t, "order_kind": kind, "seed": spec.seed, "samples": samples, "budget": budget},
        "field": repr(F),
        "orders_checked": f"{tried} {kind} orders from seeded random variable rankings",
        "mode": "search (stops at the first witness)",
        "status": status,
        "details": {
            "witness": witness,
            "orders_tried": tried,
            "non_radical_seen": non_radical_seen,
            "certificate_timeouts": cert_timeouts,
            "screened_nonnegative_h": screened if want_noncm else None,
            "certificate_budget_seconds": cert_budget if want_noncm else None,
        },
    }


def run_secant_identity(spec: ExperimentSpec) -> dict:
    F = field_of(spec, QQ)
    if spec.grid:
        cases = [(spec.grid[0], spec.grid[1], _given(spec.t, 3))]
    else:
        cases = [(3, 3, 3), (3, 4, 3), (4, 4, 3)]
    rows = []
    for m, n, t in cases:
        grid = VariableGrid(m, n)
        ring = grid.ring(F)
        sec = secant_ideal(minors_ideal(2, grid, ring), t - 1)
        rows.append({"m": m, "n": n, "t": t, "secant_generators": len(sec), "equal": same_ideal(sec, minors_ideal(t, grid, ring))})
    sr_rows = []
    if not spec.grid:
        for m in range(3, 5):
            for n in range(3, 6):
                grid = VariableGrid(m, n)
                D2 = complex_of(diagonal_ideal(2, grid), grid.names())
                for t in range(3, min(4, m, n) + 1):
                    Dt = complex_of(diagonal_ideal(t, grid), grid.names())
                    sr_rows.append({"m": m, "n": n, "t": t, "equal": sr_secant(D2, t - 1) == Dt})
    mono = None
    if not spec.grid or spec.grid == (3, 3):
        grid = VariableGrid(3, 3)
        r = check_sec_in_monotone(minors_ideal(2, grid, grid.ring(F)), 2, diagonal_lex(grid))
        mono = {k: r[k] for k in ("route", "contained", "equal", "lhs_generators", "rhs_generators") if k in r}
    ok = all(r["equal"] for r in rows) and all(r["equal"] for r in sr_rows) and (mono is None or mono.get("contained"))
    return {
        "claim": "the (t-1)-secant of I_2 is I_t; the same holds for the Stanley-Reisner complexes; in(sec) sits inside sec(in)",
        "parameters": {"cases": [f"{m}x{n}/t{t}" for m, n, t in cases]},
        "field": repr(F),
        "orders_checked": ["elimination (block grevlex)", "diagonal lex for the initial-ideal containment"],
        "mode": "exact elimination",
        "status": _status(bool(ok)),
        "details": {"secants": rows, "sr_secants": sr_rows, "initial_containment": mono},
    }


def run_dilworth(spec: ExperimentSpec) -> dict:
    m, n = _grid_or(spec, (3, 3))
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    bad = []
    checked = 0
    for flip in (False, True):
        for t in range(1, min(m, n) + 2):
            for r in range(len(cells) + 1):
                for S in itertools.combinations(cells, r):
                    res = dilworth_check(m, n, t, S, flip_columns=flip)
                    checked += 1
                    if not (res["dilworth_equal"] and res["equivalence_holds"]):
                        bad.append({"flip_columns": flip, "t": t, "subset": res["subset"]})
    # J_t generators are exactly the t-antichains of the poset matching the convention
    ideal_rows = []
    grid = VariableGrid(m, n)
    for t in range(2, min(m, n) + 1):
        for anti, flip in ((True, False), (False, True)):
            P = GridPoset(m, n, flip)
            J = diagonal_ideal(t, grid, antidiagonal=anti)
            supports = {frozenset(grid.position(v) for v, e in enumerate(g) if e) for g in J.gens}
            antichains = {frozenset(S) for S in itertools.combinations(cells, t) if P.is_antichain(S)}
            ideal_rows.append({"t": t, "antidiagonal": anti, "equal": supports == antichains})
    ok = not bad and all(r["equal"] for r in ideal_rows)
    return {
        "claim": "largest antichain = fewest covering chains, and faces of Delta_t are the unions of t-1 chains",
        "parameters": {"m": m, "n": n},
        "field": None,
        "orders_checked": None,
        "mode": "exhaustive over all subsets",
        "status": _status(ok),
        "details": {"subsets_checked": checked, "failures": bad[:20], "ideal_vs_antichains": ideal_rows},
    }


def run_invariant_presentation(spec: ExperimentSpec) -> dict:
    F = field_of(spec, QQ)
    rows = []
    for m, n in ([spec.grid] if spec.grid else [(2, 3), (3, 3)]):
        grid = VariableGrid(m, n)
        ring = grid.ring(F)
        K = kernel_of_map(segre_map(grid, F), grid.names())
        K = [f.rename(ring, list(range(grid.size))) for f in K]
        T = toric_ideal(segre_configuration(grid), F)
        rows.append(
            {
                "map": f"segre {m}x{n}",
                "kernel_equals_I2": same_ideal(K, minors_ideal(2, grid, ring)),
                "toric_equals_I2": same_ideal(T, minors_ideal(2, grid, ring)),
            }
        )
    if not spec.grid or spec.grid == (3, 3):
        grid = VariableGrid(3, 3)
        ring = grid.ring(F)
        K = kernel_of_map(product_map(grid, 2, F), grid.names())
        K = [f.rename(ring, list(range(grid.size))) for f in K]
        rows.append({"map": "3x3 = (3x2)(2x3)", "kernel_equals_I3": same_ideal(K, minors_ideal(3, grid, ring))})
    ok = all(v for r in rows for k, v in r.items() if k != "map")
    return {
        "claim": "kernels of the Segre and matrix-product maps are the determinantal ideals",
        "parameters": {"maps": [r["map"] for r in rows]},
        "field": repr(F),
        "orders_checked": ["reduced grevlex bases compared"],
        "mode": "exact elimination",
        "status": _status(ok),
        "details": {"rows": rows},
    }


EXPERIMENTS = {
    "main-theorem": run_main_theorem,
    "max-minors-ugb": run_max_minors_ugb,
    "segre-circuits": run_segre_circuits,
    "revlex-2minors": run_revlex_2minors,
    "revlex-3minors-sample": run_revlex_3minors_sample,
    "lex-3x4x4-nonradical": lambda s: run_search(s, "lex", (4, 4), 3, False),
    "lex-3x4x5-noncm": lambda s: run_search(s, "lex", (4, 5), 3, True),
    "revlex-4x5x5-nonradical": lambda s: run_search(s, "grevlex", (5, 5), 4, False),
    "revlex-4x5x6-noncm": lambda s: run_search(s, "grevlex", (5, 6), 4, True),
    "secant-identity": run_secant_identity,
    "dilworth": run_dilworth,
    "gv-degree": run_gv_degree,
    "rsk-bijection": run_rsk_bijection,
    "invariant-presentation": run_invariant_presentation,
}


def run_experiment(spec: ExperimentSpec) -> dict:
    if spec.name not in EXPERIMENTS:
        raise UsageError(f"unknown experiment {spec.name!r}; known: {', '.join(sorted(EXPERIMENTS))}")
    start = time.perf_counter()
    body = EXPERIMENTS[spec.name](spec)
    return _envelope(spec, body, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _fmt(v, depth: int = 0) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower() if isinstance(v, bool) else "-"
    if isinstance(v, (int, float, str)):
        return str(v)
    if isinstance(v, list):
        if all(isinstance(x, (int, str, bool)) for x in v) and len(v) <= 8:
            if depth:
                return "[" + ",".join(_fmt(x) for x in v) + "]"
            return ", ".join(_fmt(x) for x in v) or "(none)"
        return f"[{len(v)} entries]"
    if isinstance(v, dict):
        if depth > 1:
            return f"{{{len(v)} keys}}"
        body = " ".join(f"{k}={_fmt(x, depth + 1)}" for k, x in v.items())
        return "{" + body + "}" if depth else body
    return str(v)


def _flatten(d: dict, prefix: str = "", depth: int = 3) -> dict:
    """Nested dicts become dotted keys, down to the given depth."""
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict) and v and depth > 0:
            out.update(_flatten(v, key + ".", depth - 1))
        else:
            out[key] = v
    return out


def render(report: dict) -> str:
    """Plain-text summary of a report."""
    if not isinstance(report, dict) or report.get("schema") != SCHEMA:
        raise SchemaMismatch(f"expected schema {SCHEMA!r}, got {report.get('schema') if isinstance(report, dict) else type(report).__name__!r}")
    for key in ("experiment", "claim", "status", "details"):
        if key not in report:
            raise SchemaMismatch(f"report is missing {key!r}")
    lines = []
    head = [
        ("experiment", report["experiment"]),
        ("status", report["status"]),
        ("claim", report["claim"]),
        ("field", report.get("field")),
        ("mode", report.get("mode")),
        ("orders", report.get("orders_checked")),
        ("parameters", report.get("parameters")),
    ]
    width = max(len(k) for k, _ in head)
    for k, v in head:
        lines.append(f"{k.ljust(width)}  {_fmt(v)}")
    lines.append("")
    details = _flatten(report["details"] or {})
    if details:
        w = max(len(k) for k in details)
        for k in sorted(details):
            v = details[k]
            if isinstance(v, list) and v and len(v) <= 64 and all(isinstance(x, str) for x in v) and len(v) > 8:
                lines.append(f"  {k}")
                lines.extend(f"    {x}" for x in v)
            elif isinstance(v, list) and v and len(v) <= 64 and all(isinstance(x, dict) for x in v):
                lines.append(f"  {k}")
                lines.extend(f"    {_fmt(x)}" for x in v)
            else:
                lines.append(f"  {k.ljust(w)}  {_fmt(v)}")
    if report.get("timings"):
        lines.append("")
        lines.append(f"time  {report['timings'].get('seconds')}s")
    return "\n".join(lines) + "\n"
