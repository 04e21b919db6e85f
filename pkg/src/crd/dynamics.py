"""The 2-2 correspondence, orbits, permutability, auxiliary charts, the flow.

A partner polygon is grown from a fixed point of the Lax map at parameter
1/alpha by pushing it through the edge screw motions; everything else here is
bookkeeping around which fixed point to take.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

from .continuants import closure_residuals, parabolicity_residual
from .errors import (
    EqualAlphaBeta,
    EvenN,
    ForbiddenAlpha,
    InfiniteVertex,
    InputsNotRelated,
    NoRealFixedPoint,
    OrbitTerminated,
    RealFieldNoFixedPoints,
)
from .lax import lax_matrix
from .polygon import Chart, CoordVector, TwistedPolygon, cross_ratios
from .projective import (
    Matrix2,
    MoebiusClass,
    MoebiusKind,
    ProjectivePoint,
    chordal,
    classify,
    cross_ratio,
    loxodromic_matrix,
)
from .tolerances import DEFAULT, Tolerances


class RelationCount(Enum):
    ZERO = "zero"
    ONE = "one"
    TWO = "two"
    INFINITE = "infinite"


class BranchPolicy(Enum):
    NO_BACKTRACK = "no-backtrack"
    EIGEN_LARGEST = "eigen-largest"
    EIGEN_SMALLEST = "eigen-smallest"


def _propagate(p: TwistedPolygon, q1: ProjectivePoint, lam: complex,
               tol: Tolerances) -> TwistedPolygon:
    """Partner vertices q_{i+1} = A_lam(p_i, p_{i+1}) q_i, same monodromy."""
    qs = [q1]
    for i in range(1, p.n):
        qs.append(loxodromic_matrix(p.vertex(i), p.vertex(i + 1), lam, tol).apply(qs[-1]))
    field_tag = "real" if all(v.is_real(tol) for v in qs) and p.field == "real" else "complex"
    return TwistedPolygon(tuple(qs), p.monodromy, field_tag)


def relation_residual(p: TwistedPolygon, q: TwistedPolygon, alpha: complex,
                      tol: Tolerances = DEFAULT) -> float:
    """max_i |[p_i, p_{i+1}, q_i, q_{i+1}] - alpha| across one period and the seam."""
    worst = 0.0
    for i in range(1, p.n + 1):
        r = cross_ratio(p.vertex(i), p.vertex(i + 1), q.vertex(i), q.vertex(i + 1), tol)
        worst = max(worst, abs(r - alpha))
    return worst


@dataclass
class RelationResult:
    classification: RelationCount
    partners: list
    residual: float
    lax_class: MoebiusClass
    degenerate: list
    sampler: Optional[Callable[[ProjectivePoint], TwistedPolygon]] = None
    branch_separation: float = float("inf")


def alpha_related(p: TwistedPolygon, alpha: complex, tol: Tolerances = DEFAULT,
                  include_complex: bool = False) -> RelationResult:
    """All polygons alpha-related to p, classified by the Lax fixed points.

    Real-field polygons whose Lax fixed points leave RP^1 classify as ZERO;
    pass include_complex=True to get the complexified partners anyway.
    """
    alpha = complex(alpha)
    if alpha in (0.0 + 0j, 1.0 + 0j):
        raise ForbiddenAlpha("alpha must avoid {0, 1}")
    p.require_nondegenerate(tol)
    lam = 1.0 / alpha
    a = lax_matrix(p, lam, tol)
    # det(A) = lam^n / det(M): ad - bc cancels catastrophically on long products
    cls = classify(a, tol, det=lam ** p.n / p.monodromy.det())

    def build(q1: ProjectivePoint) -> TwistedPolygon:
        return _propagate(p, q1, lam, tol)

    if cls.kind is MoebiusKind.IDENTITY:
        return RelationResult(RelationCount.INFINITE, [], 0.0, cls, [], sampler=build)

    count = RelationCount.TWO if cls.kind is MoebiusKind.LOXODROMIC else RelationCount.ONE
    separation = chordal(*cls.fixed_points) if len(cls.fixed_points) == 2 else 0.0
    if (
        count is RelationCount.TWO
        and p.field == "real"
        and abs(alpha.imag) == 0.0
        and not all(q.is_real(tol) for q in cls.fixed_points)
    ):
        count = RelationCount.ZERO
        if not include_complex:
            return RelationResult(count, [], 0.0, cls, [], branch_separation=separation)
    partners = [build(q1) for q1 in cls.fixed_points]
    residual = 0.0
    degenerate = []
    for q in partners:
        degenerate.append(not q.is_nondegenerate(tol))
        if not degenerate[-1]:
            residual = max(residual, relation_residual(p, q, alpha, tol))
    return RelationResult(count, partners, residual, cls, degenerate,
                          branch_separation=separation)


@dataclass
class OrbitState:
    current: TwistedPolygon
    alpha: complex
    previous: Optional[TwistedPolygon] = None
    step: int = 0
    branch_policy: BranchPolicy = BranchPolicy.NO_BACKTRACK
    branch_separation: float = float("inf")  # fixed-point gap behind this state


def step(state: OrbitState, tol: Tolerances = DEFAULT,
         min_branch_separation: float = 1e-8) -> OrbitState:
    """One move of the 2-2 dynamics under the state's branch policy."""
    rel = alpha_related(state.current, state.alpha, tol)
    if rel.classification is RelationCount.ZERO:
        raise RealFieldNoFixedPoints("no real fixed points; orbit leaves RP^1")
    if rel.classification is RelationCount.ONE:
        raise OrbitTerminated("parabolic Lax map: single partner, orbit ends")
    if rel.classification is RelationCount.INFINITE:
        raise OrbitTerminated("exceptional polygon: infinitely many partners")
    if rel.branch_separation < min_branch_separation:
        raise OrbitTerminated(
            f"branch separation {rel.branch_separation:.2e} below {min_branch_separation:.0e}"
        )
    policy = state.branch_policy
    if policy is BranchPolicy.NO_BACKTRACK and state.previous is None:
        policy = BranchPolicy.EIGEN_LARGEST
    if policy is BranchPolicy.EIGEN_LARGEST:
        nxt = rel.partners[0]
    elif policy is BranchPolicy.EIGEN_SMALLEST:
        nxt = rel.partners[1]
    else:
        anchor = state.previous.vertices[0]
        nxt = max(rel.partners, key=lambda q: chordal(q.vertices[0], anchor))
    nxt.require_nondegenerate(tol)
    return OrbitState(nxt, state.alpha, previous=state.current,
                      step=state.step + 1, branch_policy=state.branch_policy,
                      branch_separation=rel.branch_separation)


def orbit(p: TwistedPolygon, alpha: complex, steps: int,
          policy: BranchPolicy = BranchPolicy.NO_BACKTRACK,
          tol: Tolerances = DEFAULT):
    """Iterate the dynamics; yields every state including the initial one."""
    state = OrbitState(p, complex(alpha), branch_policy=policy)
    yield state
    for _ in range(steps):
        state = step(state, tol)
        yield state


def _three_point_map(p1, p2, p3) -> Matrix2:
    """Matrix sending (p1, p2, p3) to (0, 1, inf)."""
    from .projective import det2

    d23 = det2(p2, p3)
    d21 = det2(p2, p1)
    return Matrix2(p1.den * d23, -p1.num * d23, p3.den * d21, -p3.num * d21)


_ANCHORS = (ProjectivePoint.of(0.0), ProjectivePoint.of(1.0), ProjectivePoint.of(-1.0))
_ANCHOR_MAP_INV = _three_point_map(*_ANCHORS).inverse()


def renormalizing_map(p: TwistedPolygon) -> Matrix2:
    """Moebius map that re-spreads a clustered polygon (to anchors 0, 1, -1).

    Tries anchor triples of roughly equally spaced vertex indices and keeps the
    result whose vertices stay farthest from infinity; real polygons get a real
    map. Deterministic.
    """
    n = p.n
    best, best_margin = None, -1.0
    for shift in range(n):
        idx = [shift, (shift + n // 3) % n, (shift + (2 * n) // 3) % n]
        if len(set(idx)) < 3:
            continue
        tri = [p.vertices[i] for i in idx]
        if min(chordal(tri[0], tri[1]), chordal(tri[0], tri[2]), chordal(tri[1], tri[2])) < 1e-8:
            continue
        g = _ANCHOR_MAP_INV @ _three_point_map(*tri)
        margin = min(abs(g.apply(v).den) for v in p.vertices)
        if margin > best_margin:
            best, best_margin = g, margin
        if margin > 0.2:
            break
    if best is None:
        raise OrbitTerminated("no renormalizing map found")
    return best


@dataclass
class RenormalizedOrbit:
    """Orbit state together with the accumulated gauge back to the start chart."""

    state: OrbitState
    gauge: Matrix2  # maps the original chart to the current chart


def run_renormalized(p: TwistedPolygon, alpha: complex, steps: int,
                     policy: BranchPolicy = BranchPolicy.NO_BACKTRACK,
                     tol: Tolerances = DEFAULT, spread_threshold: float = 0.02,
                     on_state=None) -> RenormalizedOrbit:
    """Drive the orbit, re-gauging whenever vertices cluster below the threshold.

    Re-gauging applies one Moebius map to current and previous simultaneously
    (the relation and all moduli are untouched); the accumulated map lets
    chart-dependent conserved quantities be pulled back to the start chart.
    """
    from .polygon import apply_moebius

    state = OrbitState(p, complex(alpha), branch_policy=policy)
    gauge = Matrix2.identity()
    if on_state is not None:
        on_state(state, gauge)
    for _ in range(steps):
        state = step(state, tol)
        if state.current.separation() < spread_threshold:
            g = renormalizing_map(state.current)
            closed = state.current.monodromy.entries() == Matrix2.identity().entries()
            cur = apply_moebius(g, state.current, tol)
            if closed:
                cur = TwistedPolygon(cur.vertices, Matrix2.identity(), cur.field)
            prev = apply_moebius(g, state.previous, tol) if state.previous else None
            if closed and prev is not None:
                prev = TwistedPolygon(prev.vertices, Matrix2.identity(), prev.field)
            state = OrbitState(cur, state.alpha, previous=prev, step=state.step,
                               branch_policy=state.branch_policy)
            gauge = g @ gauge
        if on_state is not None:
            on_state(state, gauge)
    return RenormalizedOrbit(state, gauge)


DRIFT_KEYS = ("F", "c_prod", "E_alpha", "G", "IJK", "IJK_step_max", "axis")


def worst_drift(report: dict) -> float:
    return max(report[k] for k in DRIFT_KEYS if k in report)


def orbit_conservation_report(p: TwistedPolygon, alpha: complex, steps: int,
                              policy: BranchPolicy = BranchPolicy.NO_BACKTRACK,
                              tol: Tolerances = DEFAULT,
                              spread_threshold: float = 0.02) -> dict:
    """Drive `steps` moves and report the relative drift of every invariant.

    Moebius-invariant quantities (F_k, c_[n], E_alpha, G_k) are compared start
    vs end. I/J/K and the axis are chart-dependent and the orbit may leave any
    fixed affine chart, so their conservation is verified step by step in the
    renormalized charts and the per-step defects are summed.
    """
    from .continuants import c_product, trace_coefficients
    from .lax import axis as axis_of
    from .lax import e_alpha, g_coefficients, ijk
    from .polygon import apply_moebius

    closed = p.is_closed(tol)

    def x0_of(q: TwistedPolygon) -> Optional[Matrix2]:
        if not closed:
            return None
        i_s, j_s, k_s, _ = ijk(q, tol, auto_gauge=False)
        return Matrix2(-j_s, k_s, -i_s, j_s)

    base_c = cross_ratios(p, tol).values
    base = {
        "F": trace_coefficients(base_c),
        "c_prod": c_product(base_c),
        "E_alpha": e_alpha(base_c, alpha),
    }
    if closed:
        p = p.normalized_closed(tol)
        base["G"] = g_coefficients(p, tol)

    state = OrbitState(p, complex(alpha), branch_policy=policy)
    x0_prev = x0_of(p)
    axis_prev = None
    if closed:
        try:
            axis_prev = axis_of(p, tol)[0]
        except Exception:
            axis_prev = None
    ijk_defect_sum = ijk_defect_max = 0.0
    axis_defect_sum = 0.0
    min_branch = float("inf")
    min_sep = p.separation()
    for _ in range(steps):
        state = step(state, tol)
        min_branch = min(min_branch, state.branch_separation)
        min_sep = min(min_sep, state.current.separation())
        if closed:
            x0_cur = x0_of(state.current)
            d = x0_prev.entrywise_distance(x0_cur) / max(1.0, x0_prev.scale())
            ijk_defect_sum += d
            ijk_defect_max = max(ijk_defect_max, d)
            try:
                axis_cur = axis_of(state.current, tol)[0]
                if axis_prev is not None:
                    axis_defect_sum += min(
                        max(chordal(axis_prev[0], axis_cur[0]), chordal(axis_prev[1], axis_cur[1])),
                        max(chordal(axis_prev[0], axis_cur[1]), chordal(axis_prev[1], axis_cur[0])),
                    )
                axis_prev = axis_cur
            except Exception:
                axis_prev = None
            x0_prev = x0_cur
        if state.current.separation() < spread_threshold:
            g = renormalizing_map(state.current)
            cur = apply_moebius(g, state.current, tol)
            prev = apply_moebius(g, state.previous, tol) if state.previous else None
            if closed:
                cur = TwistedPolygon(cur.vertices, Matrix2.identity(), cur.field)
                if prev is not None:
                    prev = TwistedPolygon(prev.vertices, Matrix2.identity(), prev.field)
                x0_prev = x0_of(cur)
                try:
                    axis_prev = axis_of(cur, tol)[0]
                except Exception:
                    axis_prev = None
            state = OrbitState(cur, state.alpha, previous=prev, step=state.step,
                               branch_policy=state.branch_policy)
    end_c = cross_ratios(state.current, tol).values
    end_f = trace_coefficients(end_c)
    report = {
        "F": max(abs(a - b) / max(1.0, abs(a)) for a, b in zip(base["F"], end_f)),
        "c_prod": abs(base["c_prod"] - c_product(end_c)) / max(1.0, abs(base["c_prod"])),
        "E_alpha": abs(base["E_alpha"] - e_alpha(end_c, alpha)) / max(1.0, abs(base["E_alpha"])),
        "steps": state.step,
        "min_branch_separation": min_branch,
        "min_separation": min_sep,
    }
    if closed:
        end_g = g_coefficients(state.current.normalized_closed(tol), tol)
        report["G"] = max(abs(a - b) / max(1.0, abs(a)) for a, b in zip(base["G"], end_g))
        report["IJK"] = ijk_defect_sum
        report["IJK_step_max"] = ijk_defect_max
        report["axis"] = axis_defect_sum
    return report


# --- Bianchi permutability -------------------------------------------------------


def bianchi_fourth(p: TwistedPolygon, q: TwistedPolygon, r: TwistedPolygon,
                   alpha: complex, beta: complex, tol: Tolerances = DEFAULT,
                   relation_tol: float = 1e-9):
    """The common fourth polygon S with Q ~beta S and R ~alpha S.

    Returns (S, route_agreement): s_1 is built along both construction routes
    (through Q and through R) and the chordal gap between them is reported.
    """
    alpha, beta = complex(alpha), complex(beta)
    if abs(alpha - beta) <= tol.deg:
        raise EqualAlphaBeta("permutability needs alpha != beta")
    if relation_residual(p, q, alpha, tol) > relation_tol:
        raise InputsNotRelated("P and Q are not alpha-related")
    if relation_residual(p, r, beta, tol) > relation_tol:
        raise InputsNotRelated("P and R are not beta-related")
    p1, q1, r1 = p.vertices[0], q.vertices[0], r.vertices[0]
    mu = (1.0 - alpha) / (1.0 - alpha / beta)
    mu_prime = (1.0 - beta) / (1.0 - beta / alpha)
    s1 = loxodromic_matrix(p1, q1, mu, tol).inverse().apply(r1)
    s1_other = loxodromic_matrix(p1, r1, mu_prime, tol).inverse().apply(q1)
    s = _propagate(q, s1, 1.0 / beta, tol)
    return s, chordal(s1, s1_other)


# --- auxiliary coordinates -------------------------------------------------------


def aux_coordinates(p: TwistedPolygon, q: TwistedPolygon, alpha: complex,
                    tol: Tolerances = DEFAULT, relation_tol: float = 1e-9):
    """x_i = [p_i, p_{i+1}, p_{i-1}, q_i] and y_i = [q_i, q_{i+1}, q_{i-1}, p_i].

    Returns (x, y, checks) where checks holds the residuals of x + y = 1,
    c_i = alpha x_i (1 - x_{i+1}) and d_i = alpha y_i (1 - y_{i+1})."""
    alpha = complex(alpha)
    if relation_residual(p, q, alpha, tol) > relation_tol:
        raise InputsNotRelated("aux coordinates need an alpha-related pair")
    n = p.n
    xs, ys = [], []
    for i in range(1, n + 1):
        xs.append(cross_ratio(p.vertex(i), p.vertex(i + 1), p.vertex(i - 1), q.vertex(i), tol))
        ys.append(cross_ratio(q.vertex(i), q.vertex(i + 1), q.vertex(i - 1), p.vertex(i), tol))
    c = cross_ratios(p, tol).values
    d = cross_ratios(q, tol).values
    checks = {
        "x_plus_y": max(abs(x + y - 1.0) for x, y in zip(xs, ys)),
        "c_from_x": max(
            abs(c[i] - alpha * xs[i] * (1.0 - xs[(i + 1) % n])) for i in range(n)
        ),
        "d_from_y": max(
            abs(d[i] - alpha * ys[i] * (1.0 - ys[(i + 1) % n])) for i in range(n)
        ),
    }
    return (CoordVector(Chart.X, tuple(xs)), CoordVector(Chart.X, tuple(ys)), checks)


def pair_from_x(x: CoordVector, alpha: complex):
    """(c, d) of the alpha-related pair encoded by the x-coordinates."""
    alpha = complex(alpha)
    xs = x.values
    n = len(xs)
    c = tuple(alpha * xs[i] * (1.0 - xs[(i + 1) % n]) for i in range(n))
    d = tuple(alpha * (1.0 - xs[i]) * xs[(i + 1) % n] for i in range(n))
    return CoordVector(Chart.C, c), CoordVector(Chart.C, d)


def moduli_map(c: CoordVector, alpha: complex, branch: int = 0,
               x_seed: Optional[complex] = None, tol: Tolerances = DEFAULT,
               require_real: bool = False):
    """The correspondence on the c-chart through the auxiliary fixed-point system.

    Solves x_i = c_i / (alpha (1 - x_{i+1})) via the fixed points of the
    monodromy of the alpha^-1-scaled coordinates, then returns (d, x).
    branch selects the fixed point (classify order); an explicit x_seed for x_1
    overrides it.
    """
    alpha = complex(alpha)
    if alpha in (0.0 + 0j, 1.0 + 0j):
        raise ForbiddenAlpha("alpha must avoid {0, 1}")
    cs = c.values
    n = len(cs)
    scaled = [v / alpha for v in cs]
    from .continuants import monodromy_from_c

    if x_seed is None:
        cls = classify(monodromy_from_c(scaled), tol)
        if cls.kind is MoebiusKind.IDENTITY:
            raise OrbitTerminated("infinite fiber: pick x_seed explicitly")
        fp = cls.fixed_points[branch % len(cls.fixed_points)]
        if require_real and not fp.is_real(tol):
            raise NoRealFixedPoint("fixed points leave the real chart")
        x1 = fp.affine()
    else:
        x1 = complex(x_seed)
    xs = [0j] * n
    xs[0] = x1
    for i in range(n - 1, 0, -1):  # x_i = c_i / (alpha (1 - x_{i+1}))
        nxt = xs[(i + 1) % n]
        xs[i] = scaled[i] / (1.0 - nxt)
    x = CoordVector(Chart.X, tuple(xs))
    _, d = pair_from_x(x, alpha)
    return d, x


@dataclass
class ExceptionalReport:
    classification: str  # "infinite" | "one" | "generic"
    closure_residual: float
    parabolic_residual: float
    u_sum_residual: Optional[float] = None
    u_prod_residual: Optional[float] = None


def exceptional_classify(c: CoordVector, alpha: complex, tol: float = 1e-8) -> ExceptionalReport:
    """Classify the fiber size over c: infinite iff the alpha^-1-scaled
    coordinates close up, one iff they are parabolic without closing."""
    alpha = complex(alpha)
    if alpha in (0.0 + 0j, 1.0 + 0j):
        raise ForbiddenAlpha("alpha must avoid {0, 1}")
    scaled = [v / alpha for v in c.values]
    closure = max(abs(r) for r in closure_residuals(scaled))
    parab = abs(parabolicity_residual(scaled))
    if closure < tol:
        kind = "infinite"
    elif parab < tol:
        kind = "one"
    else:
        kind = "generic"
    u_sum = u_prod = None
    try:
        _, x = moduli_map(c, alpha, branch=0)
        us = [1.0 / v - 1.0 for v in x.values]
        n = len(us)
        acc, term = 1.0 + 0j, 1.0 + 0j
        for i in range(n - 1):
            term *= us[i]
            acc += term
        u_sum = abs(acc)
        u_prod = abs(term * us[n - 1] - 1.0)
    except (OrbitTerminated, ZeroDivisionError):
        pass
    return ExceptionalReport(kind, closure, parab, u_sum, u_prod)


def partner_near(p: TwistedPolygon, alpha: complex, anchor: ProjectivePoint,
                 tol: Tolerances = DEFAULT) -> TwistedPolygon:
    """The partner whose first vertex is chordally nearest to the anchor.

    Used for branch-continuous finite differencing of the vertex-level map;
    raises BranchDiscontinuity when the two fixed points compete."""
    from .errors import BranchDiscontinuity

    rel = alpha_related(p, alpha, tol, include_complex=True)
    if not rel.partners:
        raise OrbitTerminated("no partner available")
    if len(rel.partners) == 1:
        return rel.partners[0]
    d = [chordal(q.vertices[0], anchor) for q in rel.partners]
    lo, hi = sorted(d)
    if hi < 10 * lo + 1e-12:
        raise BranchDiscontinuity("fixed points too close to continue the branch")
    return rel.partners[d.index(lo)]


def vertex_map_jacobian(p: TwistedPolygon, alpha: complex, branch: int = 0,
                        h: float = 1e-6, tol: Tolerances = DEFAULT):
    """(Q, J) with J[i, j] = dq_i / dp_j of the branch-continuous vertex map."""
    import numpy as np

    rel = alpha_related(p, alpha, tol, include_complex=True)
    if len(rel.partners) < 2:
        raise OrbitTerminated("two partners needed to fix a branch")
    q0 = rel.partners[branch]
    anchor = q0.vertices[0]
    z = [v.affine() for v in p.vertices]
    if any(cmath.isinf(w) for w in z):
        raise InfiniteVertex("jacobian needs finite vertices")
    n = p.n
    jac = np.zeros((n, n), dtype=complex)
    for j in range(n):
        dz = h * max(1.0, abs(z[j]))
        qs = []
        for sgn in (1.0, -1.0):
            zs = list(z)
            zs[j] += sgn * dz
            pp = TwistedPolygon(tuple(ProjectivePoint.of(w) for w in zs),
                                p.monodromy, "complex")
            qs.append(partner_near(pp, alpha, anchor, tol))
        jac[:, j] = [
            (a.affine() - b.affine()) / (2 * dz)
            for a, b in zip(qs[0].vertices, qs[1].vertices)
        ]
    return q0, jac


# --- infinitesimal flow ----------------------------------------------------------


def xi_field(p: TwistedPolygon, tol: Tolerances = DEFAULT) -> list:
    """Kernel/flow field on vertex space for odd n.

    v_i is the alternating product of consecutive differences starting at edge
    i; it satisfies v_i v_{i+1} = (p_i - p_{i+1})^2.
    """
    n = p.n
    if n % 2 == 0:
        raise EvenN("the flow field needs odd n")
    z = [v.affine() for v in p.vertices]
    if any(cmath.isinf(w) for w in z):
        raise InfiniteVertex("the flow field needs finite vertices")
    diff = [z[i] - z[(i + 1) % n] for i in range(n)]
    out = []
    for i in range(n):
        num = den = 1.0 + 0j
        for t in range(0, n, 2):  # edges i, i+2, ..., i+n-1
            num *= diff[(i + t) % n]
        for t in range(1, n - 1, 2):  # edges i+1, ..., i+n-2
            den *= diff[(i + t) % n]
        out.append(num / den)
    return out


def xi_moduli(c: Sequence[complex], sqrt_branch: Optional[complex] = None) -> list:
    """Projection of the flow to the c-chart:
    (c_i / s) (c_{i+2} c_{i+4} ... c_{i+n-1} - c_{i+1} c_{i+3} ... c_{i+n-2}),
    s = sqrt(c_[n]) (principal branch unless given)."""
    c = [complex(v) for v in c]
    n = len(c)
    if n % 2 == 0:
        raise EvenN("the moduli flow needs odd n")
    if sqrt_branch is None:
        from .continuants import c_product

        sqrt_branch = cmath.sqrt(c_product(c))
    out = []
    for i in range(n):
        even = odd = 1.0 + 0j
        for t in range(2, n, 2):  # c_{i+2} ... c_{i+n-1}
            even *= c[(i + t) % n]
        for t in range(1, n - 1, 2):  # c_{i+1} ... c_{i+n-2}
            odd *= c[(i + t) % n]
        out.append(c[i] * (even - odd) / sqrt_branch)
    return out


def flow_step(p: TwistedPolygon, t: float, substeps: int = 64,
              tol: Tolerances = DEFAULT) -> TwistedPolygon:
    """Integrate the vertex flow for time t with classical RK4."""
    z = [v.affine() for v in p.vertices]
    if any(cmath.isinf(w) for w in z):
        raise InfiniteVertex("flow integration needs finite vertices")
    h = t / substeps

    def f(zs):
        poly = TwistedPolygon.closed([complex(w) for w in zs], field="complex")
        return xi_field(poly, tol)

    for _ in range(substeps):
        k1 = f(z)
        k2 = f([z[i] + 0.5 * h * k1[i] for i in range(len(z))])
        k3 = f([z[i] + 0.5 * h * k2[i] for i in range(len(z))])
        k4 = f([z[i] + h * k3[i] for i in range(len(z))])
        z = [z[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) for i in range(len(z))]
    return TwistedPolygon.closed(z, field=p.field if all(abs(w.imag) < 1e-13 for w in z) else "complex")
