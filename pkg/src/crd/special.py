"""Small-gon theorems, exceptional families, loxogons, rigidity, and the
ideal-tetrahedron consistency system with its cube completion."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .continuants import closure_residuals
from .dynamics import (
    alpha_related,
)
from .errors import (
    DegeneratePolygon,
    DegenerateTetrahedron,
    DegenerateV0,
    ExcludedLabelValue,
    NoConvergence,
    PoleBeta,
)
from .lax import axis, ijk
from .polygon import Chart, CoordVector, TwistedPolygon, cross_ratios, reconstruct
from .projective import (
    IDENTITY,
    Matrix2,
    ProjectivePoint,
    chordal,
    classify,
    cross_ratio,
    loxodromic_matrix,
    MoebiusKind,
)
from .tolerances import DEFAULT, Tolerances

PENTAGON_ALPHA = (3.0 - math.sqrt(5.0)) / (3.0 + math.sqrt(5.0))
PENTAGRAM_ALPHA = (3.0 + math.sqrt(5.0)) / (3.0 - math.sqrt(5.0))
PENTAGON_C = (3.0 - math.sqrt(5.0)) / 2.0
PENTAGRAM_C = (3.0 + math.sqrt(5.0)) / 2.0


# --- quadrilaterals ---------------------------------------------------------------


def quad_axis(p: TwistedPolygon, tol: Tolerances = DEFAULT):
    """Common perpendicular of the diagonals p1p3, p2p4 as a pair of ideal points.

    The endpoints [u, v, z1, z3] = -1 = [u, v, z2, z4] are the fixed points of
    the Moebius involution swapping z1 <-> z3 and z2 <-> z4, which keeps the
    computation projective (the axis frequently passes through infinity).
    """
    if p.n != 4:
        raise DegeneratePolygon("quad axis is for quadrilaterals")
    from .dynamics import _three_point_map

    z1, z2, z3, z4 = p.vertices
    src = _three_point_map(z1, z3, z2)
    dst = _three_point_map(z3, z1, z4)
    invol = dst.inverse() @ src
    if chordal(invol.apply(z4), z2) > 1e-7:
        raise DegeneratePolygon("diagonal involution inconsistent")
    cls = classify(invol, tol)
    if cls.kind is not MoebiusKind.LOXODROMIC:
        raise DegeneratePolygon("diagonal involution has no fixed-point pair")
    return cls.fixed_points


def modulus_invariant(r: complex) -> complex:
    """(r^2 - r + 1)^3 / (r^2 (r - 1)^2): constant on the six-element
    cross-ratio orbit, so it separates isometry classes of ideal quadruples."""
    r = complex(r)
    return (r * r - r + 1.0) ** 3 / (r * r * (r - 1.0) ** 2)


def quad_axis_report(p: TwistedPolygon, alpha: complex, tol: Tolerances = DEFAULT) -> dict:
    """Isometry and shared-axis residuals for both partners of a quadrilateral.

    The partner realizes r -> r/(r-1) on the ordered cross-ratio, so isometry
    is checked through the permutation-orbit invariant.
    """
    rel = alpha_related(p, alpha, tol)
    base_mod = modulus_invariant(cross_ratio(*p.vertices, tol))
    base_axis = quad_axis(p, tol)
    iso = ax = 0.0
    for q in rel.partners:
        iso = max(
            iso,
            abs(modulus_invariant(cross_ratio(*q.vertices, tol)) - base_mod)
            / max(1.0, abs(base_mod)),
        )
        qa = quad_axis(q, tol)
        ax = max(
            ax,
            min(
                max(chordal(base_axis[0], qa[0]), chordal(base_axis[1], qa[1])),
                max(chordal(base_axis[0], qa[1]), chordal(base_axis[1], qa[0])),
            ),
        )
    return {"isometry": iso, "axis": ax, "count": len(rel.partners)}


# --- exceptional families ----------------------------------------------------------


def exceptional_pentagon(alpha: complex, tol: float = 1e-9) -> Optional[CoordVector]:
    """The constant c-vector of the pentagon family when alpha is one of the two
    exceptional values, else None."""
    alpha = complex(alpha)
    if abs(alpha - PENTAGON_ALPHA) < tol:
        return CoordVector(Chart.C, (PENTAGON_C,) * 5)
    if abs(alpha - PENTAGRAM_ALPHA) < tol:
        return CoordVector(Chart.C, (PENTAGRAM_C,) * 5)
    return None


def regular_pentagon() -> TwistedPolygon:
    return TwistedPolygon.closed(
        [math.tan(math.pi * j / 5.0) for j in range(1, 6)], field="real"
    )


def exceptional_hexagon() -> TwistedPolygon:
    """Vertices of the regular ideal octahedron in cyclic edge order."""
    return TwistedPolygon.closed([0.0, 1.0, 1j, "inf", -1.0, -1j], field="complex")


def octagon_residuals(c: Sequence[complex]) -> np.ndarray:
    """The 16 closure residuals of c and of -c (orthogonality alpha = -1)."""
    c = [complex(v) for v in c]
    return np.array(
        closure_residuals(c) + closure_residuals([-v for v in c]), dtype=complex
    )


def _newton_least_squares(fun, x0: np.ndarray, max_iter: int = 60,
                          target: float = 1e-11, h: float = 1e-7) -> np.ndarray:
    x = np.asarray(x0, dtype=complex)
    r = fun(x)
    for _ in range(max_iter):
        nr = np.linalg.norm(r)
        if nr < target:
            return x
        m = len(r)
        jac = np.zeros((m, len(x)), dtype=complex)
        for j in range(len(x)):
            dz = h * max(1.0, abs(x[j]))
            xp, xm = x.copy(), x.copy()
            xp[j] += dz
            xm[j] -= dz
            jac[:, j] = (fun(xp) - fun(xm)) / (2 * dz)
        stp, *_ = np.linalg.lstsq(jac, -r, rcond=1e-10)
        t = 1.0
        while t > 1e-4:
            xn = x + t * stp
            rn = fun(xn)
            if np.linalg.norm(rn) < nr:
                x, r = xn, rn
                break
            t /= 2.0
        else:
            raise NoConvergence("newton stalled")
    if np.linalg.norm(fun(x)) < target:
        return x
    raise NoConvergence("newton did not reach the residual target")


def exceptional_octagon_scan(seeds: int = 24, rng_seed: int = 1,
                             tol: float = 1e-8) -> list:
    """Newton scan for octagons orthogonal to infinitely many octagons.

    Returns a list of (c-vector, residual, nullity) for every converged seed;
    the solution manifold is expected to be (complex) two-dimensional.
    """
    rng = np.random.default_rng(rng_seed)
    found = []
    for trial in range(seeds):
        if trial % 3 == 0:
            # hexagon-flavored alternating seed
            base = rng.standard_normal() * 0.3 + 1j * (0.8 + 0.4 * rng.standard_normal())
            x0 = np.array([base if i % 2 == 0 else -base for i in range(8)])
            x0 += 0.2 * (rng.standard_normal(8) + 1j * rng.standard_normal(8))
        else:
            x0 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        try:
            c = _newton_least_squares(octagon_residuals, x0)
        except NoConvergence:
            continue
        if np.min(np.abs(c)) < 1e-3:
            continue
        res = float(np.abs(octagon_residuals(c)).max())
        if res > tol:
            continue
        jac = np.zeros((16, 8), dtype=complex)
        for j in range(8):
            dz = 1e-7 * max(1.0, abs(c[j]))
            cp, cm = c.copy(), c.copy()
            cp[j] += dz
            cm[j] -= dz
            jac[:, j] = (octagon_residuals(cp) - octagon_residuals(cm)) / (2 * dz)
        s = np.linalg.svd(jac, compute_uv=False)
        nullity = int(np.sum(s <= 1e-6 * s[0]))
        found.append((CoordVector(Chart.C, tuple(c)), res, nullity))
    return found


# --- loxogons ----------------------------------------------------------------------


@dataclass(frozen=True)
class LoxogonSpec:
    """Constant-diagonal-cross-ratio certificate of a polygon."""

    n: int
    k: int
    beta: float
    alpha: complex
    residual: float
    trivial_case: bool  # one of the rigidity cases (k=2; k=3 odd n; n=2k+1)
    projectively_regular: bool


def loxogon_spec(p: TwistedPolygon, k: int, beta: float = float("nan"),
                 tol: Tolerances = DEFAULT) -> LoxogonSpec:
    """Verify the loxogon property and flag the rigidity cases.

    In the rigidity cases a verified loxogon must be projectively regular;
    a counterexample would falsify the triviality theorem, so it raises."""
    n = p.n
    alpha, residual = verify_loxogon(p, k, tol)
    trivial = k == 2 or (k == 3 and n % 2 == 1) or n == 2 * k + 1
    regular = is_projectively_regular(p)
    if trivial and residual < 1e-9 and not regular:
        from .errors import TrivialityViolation

        raise TrivialityViolation(
            f"non-regular ({n}, {k})-loxogon found in a rigidity case"
        )
    return LoxogonSpec(n, k, beta, alpha, residual, trivial, regular)


def make_loxogon(n: int, k: int, beta: float, tol: Tolerances = DEFAULT) -> TwistedPolygon:
    """Non-regular (n, k)-loxogon for even n and odd k.

    Interleaves two regular (n/2)-gons rotated by -beta and +beta; vertices are
    (sin t, cos t) pairs so tangent poles land at infinity instead of failing.
    """
    if n % 2 != 0:
        raise DegeneratePolygon("the interleaving construction needs even n")
    if k % 2 == 0 or not 2 <= k <= n - 2:
        raise DegeneratePolygon("construction produces loxogons for odd k in [2, n-2]")
    m = n // 2
    verts = []
    for j in range(1, m + 1):
        for t in (math.pi * j / m - beta, math.pi * j / m + beta):
            verts.append(ProjectivePoint(math.sin(t), math.cos(t)))
    poly = TwistedPolygon.closed(verts, field="real")
    if not poly.is_nondegenerate(tol):
        raise PoleBeta("beta produces coincident vertices")
    return poly


def verify_loxogon(p: TwistedPolygon, k: int, tol: Tolerances = DEFAULT):
    """(alpha, residual) of the constant-diagonal-cross-ratio property at step k."""
    n = p.n
    vals = [
        cross_ratio(p.vertex(i), p.vertex(i + 1), p.vertex(i + k), p.vertex(i + k + 1), tol)
        for i in range(1, n + 1)
    ]
    mean = sum(vals) / n
    return mean, max(abs(v - mean) for v in vals)


def is_projectively_regular(p: TwistedPolygon, tol: float = 1e-9) -> bool:
    """True if a Moebius map cyclically permutes the vertices."""
    from .dynamics import _three_point_map

    n = p.n
    src = _three_point_map(p.vertices[0], p.vertices[1], p.vertices[2])
    dst = _three_point_map(p.vertices[1 % n], p.vertices[2 % n], p.vertices[3 % n])
    phi = dst.inverse() @ src
    return all(
        chordal(phi.apply(p.vertices[i]), p.vertex(i + 2)) < tol for i in range(n)
    )


def rigidity_spectrum(n: int, k: int, zero_tol: float = 1e-10) -> dict:
    """Circulant eigenvalues of the infinitesimal loxogon deformation system.

    lambda_j = mu_{k-1} - mu_{k+1} w^j + mu_{k+1} w^{jk} - mu_{k-1} w^{j(k+1)},
    mu_t = sin(pi t / n), w = exp(2 pi i / n). Returns the eigenvalues, the
    indices where they vanish, and the integer-arithmetic criterion indices
    (n = 2(j+k) and n | (j-1)(k-1)) for cross-validation.
    """
    mu = lambda t: math.sin(math.pi * t / n)
    lam = []
    zeros = []
    for j in range(n):
        w = cmath.exp(2j * math.pi * j / n)
        v = mu(k - 1) - mu(k + 1) * w + mu(k + 1) * w ** k - mu(k - 1) * w ** (k + 1)
        lam.append(v)
        if abs(v) < zero_tol:
            zeros.append(j)
    criterion = [
        j
        for j in range(2, n - 1)
        if n == 2 * (j + k) and (j - 1) * (k - 1) % n == 0
    ]
    return {"eigenvalues": lam, "zeros": zeros, "criterion": criterion,
            "trivial": [0, 1, n - 1]}


def predicted_kernel_indices(n: int, k: int) -> list:
    """Full integer-arithmetic model of the circulant kernel.

    Trivial Moebius modes {0, 1, n-1}; the interleaving-family mode n/2 for
    even n with odd k; every odd j when the diagonals are diameters (k = n/2);
    and the sporadic pairs {j, n-j} with n = 2(j+k') and n | (j-1)(k'-1) for
    k' in {k, n-k}.
    """
    zeros = {0, 1, n - 1}
    if n % 2 == 0 and k % 2 == 1:
        zeros.add(n // 2)
    if n % 2 == 0 and k == n // 2:
        zeros.update(range(1, n, 2))
    for kk in {k, n - k}:
        for j in range(2, n - 1):
            if n == 2 * (j + kk) and (j - 1) * (kk - 1) % n == 0:
                zeros.add(j)
                zeros.add(n - j)
    return sorted(zeros)


# --- tetrahedron consistency ---------------------------------------------------------


@dataclass(frozen=True)
class TetrahedronLabeling:
    """Ideal tetrahedron with consistent loxodromic edge labels c_ij = c_ji."""

    points: tuple  # u_0 .. u_3
    labels: dict  # frozenset({i, j}) -> complex

    def label(self, i: int, j: int) -> complex:
        return self.labels[frozenset((i, j))]

    def matrix(self, i: int, j: int, tol: Tolerances = DEFAULT) -> Matrix2:
        """A_{c_ij}(u_i, u_j); note A(j, i) is the inverse up to the 1/c factor."""
        return loxodromic_matrix(self.points[i], self.points[j], self.label(i, j), tol)


_EVEN_PERMS = [
    (0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2),
    (1, 0, 3, 2), (1, 2, 0, 3), (1, 3, 2, 0),
    (2, 0, 1, 3), (2, 1, 3, 0), (2, 3, 0, 1),
    (3, 0, 2, 1), (3, 1, 0, 2), (3, 2, 1, 0),
]


def consistent_labeling(points, c01: complex, tol: Tolerances = DEFAULT) -> TetrahedronLabeling:
    """Propagate one edge label to a consistent labeling of the tetrahedron.

    c_ik = (1 - chi) / (1 - chi c_ij) with chi = [u_i, u_j, u_k, u_l];
    excluded values for c01 are 0 and 1/[u_0, u_1, u_2, u_3].
    """
    pts = tuple(ProjectivePoint.of(q) for q in points)
    if len(pts) != 4:
        raise DegenerateTetrahedron("four ideal points required")
    for i in range(4):
        for j in range(i + 1, 4):
            if chordal(pts[i], pts[j]) <= tol.deg:
                raise DegenerateTetrahedron("coincident tetrahedron vertices")
    c01 = complex(c01)
    chi = cross_ratio(pts[0], pts[1], pts[2], pts[3], tol)
    if c01 == 0 or abs(c01 - 1.0 / chi) <= tol.deg:
        raise ExcludedLabelValue("label must avoid 0 and the inverse cross-ratio")

    def propagate(i, j, k, l, cij):
        x = cross_ratio(pts[i], pts[j], pts[k], pts[l], tol)
        return (1.0 - x) / (1.0 - x * cij)

    c02 = propagate(0, 1, 2, 3, c01)
    c03 = propagate(0, 2, 3, 1, c02)
    labels = {
        frozenset((0, 1)): c01, frozenset((2, 3)): c01,
        frozenset((0, 2)): c02, frozenset((1, 3)): c02,
        frozenset((0, 3)): c03, frozenset((1, 2)): c03,
    }
    return TetrahedronLabeling(pts, labels)


def labeling_report(t: TetrahedronLabeling, tol: Tolerances = DEFAULT) -> dict:
    """Residuals of every consistency statement of the labeling."""
    vertex_product = 0.0
    adjacency = 0.0
    matrix_identity = 0.0
    matrix_exchange = 0.0
    for (i, j, k, l) in _EVEN_PERMS:
        vertex_product = max(
            vertex_product, abs(t.label(i, j) * t.label(i, k) * t.label(i, l) - 1.0)
        )
        chi = cross_ratio(t.points[i], t.points[j], t.points[k], t.points[l], tol)
        chi2 = cross_ratio(t.points[i], t.points[k], t.points[j], t.points[l], tol)
        adjacency = max(
            adjacency, abs(chi * t.label(i, j) + chi2 / t.label(i, k) - 1.0)
        )
        prod = t.matrix(i, j, tol) @ t.matrix(i, k, tol) @ t.matrix(i, l, tol)
        matrix_identity = max(matrix_identity, prod.entrywise_distance(IDENTITY))
        lhs = t.matrix(i, j, tol) @ t.matrix(i, k, tol)
        rhs = t.matrix(j, l, tol) @ t.matrix(k, l, tol)
        matrix_exchange = max(matrix_exchange, lhs.entrywise_distance(rhs))
    opposite = max(
        abs(t.label(0, 1) - t.label(2, 3)),
        abs(t.label(0, 2) - t.label(1, 3)),
        abs(t.label(0, 3) - t.label(1, 2)),
    )
    return {
        "opposite_edges": opposite,
        "vertex_product": vertex_product,
        "adjacency": adjacency,
        "matrix_identity": matrix_identity,
        "matrix_exchange": matrix_exchange,
    }


def cube_complete(t: TetrahedronLabeling, v0, tol: Tolerances = DEFAULT) -> dict:
    """Second tetrahedron v_0..v_3 of the consistency cube and its face residuals.

    v_1 = L_32(v_0), v_2 = L_13(v_0), v_3 = L_21(v_0); every face satisfies
    [u_i, u_j, v_k, v_l] = c_ij and the two tetrahedra share their cross-ratio.
    """
    v0 = ProjectivePoint.of(v0)
    for i in (1, 2, 3):
        if chordal(v0, t.points[i]) <= tol.deg:
            raise DegenerateV0("v0 must avoid u_1, u_2, u_3")
    vs = [
        v0,
        t.matrix(3, 2, tol).apply(v0),
        t.matrix(1, 3, tol).apply(v0),
        t.matrix(2, 1, tol).apply(v0),
    ]
    face = 0.0
    for (i, j, k, l) in _EVEN_PERMS:
        r = cross_ratio(t.points[i], t.points[j], vs[k], vs[l], tol)
        face = max(face, abs(r - t.label(i, j)))
    cr_u = cross_ratio(*t.points, tol)
    cr_v = cross_ratio(*vs, tol)
    return {
        "points": tuple(vs),
        "face_residual": face,
        "cross_ratio_residual": abs(cr_u - cr_v),
    }


# --- pentagon area and commuting fields ------------------------------------------------


def pentagon_frieze_point(p: TwistedPolygon, tol: Tolerances = DEFAULT):
    """Diagonal frieze coordinates (x, y) of a closed pentagon."""
    from .polygon import chart_convert

    c = cross_ratios(p, tol)
    fx = chart_convert(c, Chart.FRIEZE_X, tol)
    return fx.values


def moebius_generators(p: TwistedPolygon):
    """The three infinitesimal Moebius fields u, v, w at p (finite vertices)."""
    z = [v.affine() for v in p.vertices]
    return (
        [1.0 + 0j for _ in z],
        [w for w in z],
        [w * w for w in z],
    )


def nu_field(p: TwistedPolygon, tol: Tolerances = DEFAULT):
    """nu = K u - 2 J v + I w, tangent to the I/J/K level surfaces."""
    i_s, j_s, k_s, gauge = ijk(p, tol, auto_gauge=False)
    u, v, w = moebius_generators(p)
    return [k_s * a - 2.0 * j_s * b + i_s * c for a, b, c in zip(u, v, w)]


def fd_lie_bracket(p: TwistedPolygon, field1, field2, h: float = 1e-6,
                   tol: Tolerances = DEFAULT):
    """[X, Y] at p by central differences of the two vertex fields."""
    z = [v.affine() for v in p.vertices]

    def at(zs):
        return TwistedPolygon.closed([complex(w) for w in zs], field="complex")

    def deriv(field, direction):
        zp = [a + h * b for a, b in zip(z, direction)]
        zm = [a - h * b for a, b in zip(z, direction)]
        fp = field(at(zp), tol)
        fm = field(at(zm), tol)
        return [(a - b) / (2 * h) for a, b in zip(fp, fm)]

    x = field1(p, tol)
    y = field2(p, tol)
    dy_dx = deriv(field2, x)  # D_Y along X
    dx_dy = deriv(field1, y)
    return [a - b for a, b in zip(dy_dx, dx_dy)]


def pentagon_chart_map(fx_values, alpha: complex, branch: int = 0,
                       anchor=None, tol: Tolerances = DEFAULT):
    """Diagonal-frieze image (x', y') of one branch of the correspondence on P_5.

    Returns ((x', y'), q1) where q1 anchors branch continuation."""
    from .dynamics import alpha_related, partner_near
    from .polygon import chart_convert

    fx = CoordVector(Chart.FRIEZE_X, tuple(fx_values))
    c = chart_convert(fx, Chart.C, tol)
    p = reconstruct(c, tol=tol).normalized_closed(tol)
    if anchor is None:
        rel = alpha_related(p, alpha, tol, include_complex=True)
        q = rel.partners[branch]
    else:
        q = partner_near(p, alpha, anchor, tol)
    d = cross_ratios(q, tol)
    fx2 = chart_convert(d, Chart.FRIEZE_X, tol)
    return fx2.values, q.vertices[0]


def pentagon_area_report(fx_values, alpha: complex, h: float = 1e-6,
                         tol: Tolerances = DEFAULT) -> dict:
    """Area distortion of the correspondence in the (x, y) frieze chart.

    The invariant form is dx ^ dy / (x y), so the signed distortion
    det(J) (x y) / (x' y') must be 1; the single integral sum(a_i) = G-type
    value is reported alongside.
    """
    import numpy as np

    x0 = [complex(v) for v in fx_values]
    img0, anchor = pentagon_chart_map(x0, alpha, tol=tol)
    jac = np.zeros((2, 2), dtype=complex)
    for j in range(2):
        dz = h * max(1.0, abs(x0[j]))
        xp, xm = list(x0), list(x0)
        xp[j] += dz
        xm[j] -= dz
        ip, _ = pentagon_chart_map(xp, alpha, anchor=anchor, tol=tol)
        im, _ = pentagon_chart_map(xm, alpha, anchor=anchor, tol=tol)
        jac[:, j] = [(a - b) / (2 * dz) for a, b in zip(ip, im)]
    det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
    distortion = det * (x0[0] * x0[1]) / (img0[0] * img0[1])

    def a_sum(vals):
        from .polygon import chart_convert

        fx = CoordVector(Chart.FRIEZE_X, tuple(vals))
        return sum(chart_convert(fx, Chart.A, tol).values)

    return {
        "distortion": distortion,
        "area_residual": abs(distortion - 1.0),
        "integral_drift": abs(a_sum(x0) - a_sum(img0)),
        "image": img0,
    }
