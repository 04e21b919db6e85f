"""Numerical verification suites behind `crd verify`.

Each suite replays one family of structural identities on seeded random data
and returns records {check, n, samples, max_residual, pass}; the CLI turns a
failed record into exit code 3.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from . import poisson as ps
from .continuants import (
    c_product,
    closure_residuals,
    monodromy_closed_form,
    monodromy_from_c,
)
from .dynamics import (
    alpha_related,
    bianchi_fourth,
    relation_residual,
    worst_drift,
)
from .lax import (alternating_perimeter, lax_matrix,
                  lax_normalized_trace, trace_polynomial_value)
from .polygon import Chart, CoordVector, cross_ratios, reconstruct
from .projective import loxodromic_matrix
from .sampling import (
    orbit_ready_polygon,
    random_c_vector,
    random_closed_polygon,
    random_related_pair,
    rng_from_seed,
    well_conditioned_orbit_report,
)
from .special import (
    PENTAGON_ALPHA,
    consistent_labeling,
    cube_complete,
    exceptional_hexagon,
    exceptional_pentagon,
    labeling_report,
    predicted_kernel_indices,
    regular_pentagon,
    rigidity_spectrum,
)


def _record(check: str, n, samples: int, residual: float, threshold: float) -> dict:
    return {
        "check": check,
        "n": n,
        "samples": samples,
        "max_residual": residual,
        "pass": bool(residual < threshold),
    }


def suite_conservation(seed: int, ns: Sequence[int]) -> list:
    rng = rng_from_seed(seed)
    out = []
    for n in ns:
        worst = 0.0
        samples = 0
        for field in ("real", "complex"):
            alphas = [-1.0 + 0j, 2.0 + 0j] + ([0.3 + 0.2j] if field == "complex" else [])
            for alpha in alphas:
                rep = well_conditioned_orbit_report(rng, n, field, alpha, 100)
                worst = max(worst, worst_drift(rep))
                samples += 1
        out.append(_record("orbit-conservation-100", n, samples, worst, 1e-7))
    return out


def suite_lax(seed: int, ns: Sequence[int]) -> list:
    rng = rng_from_seed(seed)
    out = []
    for n in ns:
        conj = 0.0
        tracep = 0.0
        for _ in range(5):
            alpha = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.1, 0.8))
            p, q = random_related_pair(rng, n, alpha)
            for k in range(5):
                lam = cmath.exp(2j * math.pi * (k + 0.3) / 5)
                mu = (1.0 - alpha) / (1.0 - alpha * lam)
                amu = loxodromic_matrix(p.vertices[0], q.vertices[0], mu)
                lhs = lax_matrix(q, lam)
                rhs = amu.inverse() @ lax_matrix(p, lam) @ amu
                conj = max(conj, lhs.entrywise_distance(rhs) / max(1.0, rhs.scale()))
            c = cross_ratios(p).values
            for k in range(n // 2 + 3):
                lam = cmath.exp(2j * math.pi * k / (n // 2 + 3))
                val = trace_polynomial_value(c, lam)
                got = lax_normalized_trace(p, lam)
                tracep = max(tracep, abs(got - val) / max(1.0, abs(val)))
        out.append(_record("lax-conjugacy", n, 25, conj, 1e-9))
        out.append(_record("trace-polynomial", n, 5 * (n // 2 + 3), tracep, 1e-9))
    return out


def suite_monodromy(seed: int, ns: Sequence[int]) -> list:
    rng = rng_from_seed(seed)
    out = []
    for n in ns:
        forms = dets = closure = 0.0
        for _ in range(10):
            c = random_c_vector(rng, n)
            mp = monodromy_from_c(c)
            forms = max(forms, mp.entrywise_distance(monodromy_closed_form(c)))
            dets = max(dets, abs(mp.det() - c_product(c)))
            p = random_closed_polygon(rng, n)
            cc = cross_ratios(p).values
            closure = max(closure, max(abs(r) for r in closure_residuals(cc)))
            back = cross_ratios(reconstruct(CoordVector(Chart.C, cc))).values
            closure = max(closure, max(abs(a - b) for a, b in zip(cc, back)))
        out.append(_record("monodromy-forms", n, 10, forms, 1e-10))
        out.append(_record("monodromy-det", n, 10, dets, 1e-10))
        out.append(_record("closure-roundtrip", n, 10, closure, 1e-9))
    return out


def suite_bianchi(seed: int, ns: Sequence[int]) -> list:
    rng = rng_from_seed(seed)
    out = []
    for n in ns:
        routes = relations = 0.0
        for _ in range(8):
            alpha = complex(rng.uniform(0.4, 1.6), rng.uniform(0.2, 0.8))
            beta = complex(rng.uniform(-1.6, -0.4), rng.uniform(0.2, 0.8))
            p = orbit_ready_polygon(rng, n, "complex", alpha)
            q = alpha_related(p, alpha).partners[0]
            r = alpha_related(p, beta).partners[0]
            s, route = bianchi_fourth(p, q, r, alpha, beta)
            routes = max(routes, route)
            relations = max(
                relations,
                relation_residual(q, s, beta),
                relation_residual(r, s, alpha),
            )
        out.append(_record("bianchi-routes", n, 8, routes, 1e-9))
        out.append(_record("bianchi-relations", n, 8, relations, 1e-8))
    return out


def suite_poisson(seed: int, ns: Sequence[int]) -> list:
    rng = rng_from_seed(seed)
    out = []
    for n in ns:
        pts = [np.array(random_c_vector(rng, n)) for _ in range(4)]
        jac = max(
            ps.jacobi_residual(spec, z)
            for z in pts[:2]
            for spec in (
                ps.BracketSpec("C1"),
                ps.BracketSpec("C2"),
                ps.BracketSpec("CPencil", complex(rng.uniform(0.3, 1.2), 0.2)),
                ps.BracketSpec("X"),
                ps.BracketSpec("U"),
            )
        )
        out.append(_record("jacobi", n, 10, jac, 1e-7))
        alpha = complex(rng.uniform(0.5, 1.5), rng.uniform(-0.4, 0.4))
        cas = max(
            ps.casimir_residual(ps.BracketSpec("CPencil", 1.0 / alpha),
                                ps.e_alpha_func(n, alpha), z)
            for z in pts
        )
        out.append(_record("casimir-e-alpha", n, len(pts), cas, 1e-7))
        inv = ps.involution_report(n, pts[:2])
        out.append(_record("involution", n, 2, max(inv.values()), 1e-6))
        corank = [ps.structure_corank(ps.BracketSpec("CPencil", 0.7), z) for z in pts]
        ok = all(c == (1 if n % 2 else 2) for c in corank)
        out.append(_record("pencil-corank", n, len(pts), 0.0 if ok else 1.0, 0.5))
        if n >= 5:
            u = [complex(rng.uniform(0.4, 1.3), rng.uniform(-0.3, 0.3)) for _ in range(n - 3)]
            out.append(_record("rho-poisson", n, 1, ps.rho_poisson_residual(u), 1e-6))
    return out


def suite_exceptional(seed: int, ns: Sequence[int]) -> list:
    out = []
    pent = exceptional_pentagon(PENTAGON_ALPHA)
    p5 = regular_pentagon()
    rel = alpha_related(p5, PENTAGON_ALPHA)
    out.append(_record("pentagon-infinite", 5, 1,
                       0.0 if rel.classification.value == "infinite" else 1.0, 0.5))
    out.append(_record(
        "pentagon-constant", 5, 1,
        max(abs(v - (3 - math.sqrt(5)) / 2) for v in cross_ratios(p5).values), 1e-12,
    ))
    hexa = exceptional_hexagon()
    relh = alpha_related(hexa, -1.0 + 0j)
    out.append(_record("hexagon-infinite", 6, 1,
                       0.0 if relh.classification.value == "infinite" else 1.0, 0.5))
    return out


def suite_appendix(seed: int, ns: Sequence[int]) -> list:
    rng = rng_from_seed(seed)
    worst_label = worst_cube = 0.0
    for _ in range(12):
        u = [complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)) for _ in range(4)]
        try:
            t = consistent_labeling(u, complex(rng.uniform(0.5, 2.0), rng.uniform(-1, 1)))
        except Exception:
            continue
        worst_label = max(worst_label, max(labeling_report(t).values()))
        cc = cube_complete(t, complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
        worst_cube = max(worst_cube, cc["face_residual"], cc["cross_ratio_residual"])
    return [
        _record("tetrahedron-consistency", 4, 12, worst_label, 1e-9),
        _record("cube-completion", 4, 12, worst_cube, 1e-9),
    ]


def suite_rigidity(seed: int, ns: Sequence[int]) -> list:
    bad = 0
    for n in range(5, 26):
        for k in range(2, n - 1):
            s = rigidity_spectrum(n, k)
            if sorted(s["zeros"]) != predicted_kernel_indices(n, k):
                bad += 1
            if n % 2 == 1 and len(s["zeros"]) != 3:
                bad += 1
    return [_record("rigidity-kernel-model", "5..25", 21 * 20, float(bad), 0.5)]


def suite_perimeter(seed: int, ns: Sequence[int]) -> list:
    rng = rng_from_seed(seed)
    out = []
    for n in [m for m in ns if m % 2 == 0]:
        prod = sq = 0.0
        for _ in range(10):
            alpha = complex(rng.uniform(0.4, 1.4), rng.uniform(0.2, 0.7))
            p, q = random_related_pair(rng, n, alpha)
            prod = max(prod, abs(alternating_perimeter(p) * alternating_perimeter(q) - 1.0))
            c = cross_ratios(p).values
            ratio = 1.0 + 0j
            for i in range(n):
                ratio = ratio * c[i] if (i + 1) % 2 == 0 else ratio / c[i]
            sq = max(sq, abs(alternating_perimeter(p) ** 2 - ratio))
        out.append(_record("alt-perimeter-product", n, 10, prod, 1e-9))
        out.append(_record("alt-perimeter-squared", n, 10, sq, 1e-9))
    return out


SUITES = {
    "conservation": suite_conservation,
    "lax": suite_lax,
    "monodromy": suite_monodromy,
    "bianchi": suite_bianchi,
    "poisson": suite_poisson,
    "exceptional": suite_exceptional,
    "appendix": suite_appendix,
    "rigidity": suite_rigidity,
    "perimeter": suite_perimeter,
}


def _run_one(args):
    name, seed, ns = args
    return SUITES[name](seed, ns)


def run_suites(names: Sequence[str], seed: int, ns: Sequence[int]) -> list:
    """Run the named suites (all on 'all'); worker count capped by CRD_NUM_THREADS."""
    if "all" in names:
        names = list(SUITES)
    jobs = [(name, seed + 1000 * i, list(ns)) for i, name in enumerate(names)]
    workers = int(os.environ.get("CRD_NUM_THREADS", "1") or "1")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    out = []
    for records in results:
        out.extend(records)
    return out
