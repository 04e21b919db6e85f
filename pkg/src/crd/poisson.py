"""Poisson pencil on the c-chart, auxiliary-chart brackets, Casimirs,
involution, Poisson-map verifications, rank counts, the cluster form.

Structure matrices are dense n x n complex arrays; integrals carry exact
gradients (through the sparse-sum split c_j dF/dc_j = F - F without c_j),
finite differences are the fallback for arbitrary callables.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .continuants import _continuant_poly, c_product, trace_coefficients
from .dynamics import moduli_map
from .errors import (
    BranchDiscontinuity,
    ChartDomainViolation,
    DenominatorVanishes,
    EvenN,
)
from .polygon import Chart, CoordVector
from .tolerances import DEFAULT, Tolerances

Point = np.ndarray  # 1-d complex array of chart coordinates


# --- structure matrices ----------------------------------------------------------


def bracket1_matrix(c: Point) -> np.ndarray:
    """{c_i, c_{i+1}}_1 = c_i c_{i+1}."""
    n = len(c)
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        j = (i + 1) % n
        v = c[i] * c[j]
        m[i, j] += v
        m[j, i] -= v
    return m


def bracket2_matrix(c: Point) -> np.ndarray:
    """{c_i, c_{i+1}}_2 = c_i c_{i+1}(c_i + c_{i+1}), {c_i, c_{i+2}}_2 = c_i c_{i+1} c_{i+2}."""
    n = len(c)
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        j = (i + 1) % n
        v = c[i] * c[j] * (c[i] + c[j])
        m[i, j] += v
        m[j, i] -= v
        k = (i + 2) % n
        w = c[i] * c[(i + 1) % n] * c[k]
        m[i, k] += w
        m[k, i] -= w
    return m


def pencil_matrix(c: Point, lam: complex) -> np.ndarray:
    """CPencil(lam) = {,}_1 - lam {,}_2; lam = 1/alpha is invariant under ~alpha."""
    return bracket1_matrix(c) - complex(lam) * bracket2_matrix(c)


def c2_matrix(c: Point) -> np.ndarray:
    """The {,}_1 - {,}_2 member, under which closed polygons sit as a Poisson
    submanifold."""
    return pencil_matrix(c, 1.0)


def x_bracket_matrix(x: Point) -> np.ndarray:
    """{x_i, x_{i+1}} = x_i(1-x_i) x_{i+1}(1-x_{i+1})."""
    n = len(x)
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        j = (i + 1) % n
        v = x[i] * (1 - x[i]) * x[j] * (1 - x[j])
        m[i, j] += v
        m[j, i] -= v
    return m


def u_bracket_matrix(u: Point, cyclic: bool = True) -> np.ndarray:
    """{u_i, u_{i+1}} = u_i u_{i+1}; cyclic on the full chart, a chain on the
    (n-3)-coordinate closed-polygon chart."""
    n = len(u)
    m = np.zeros((n, n), dtype=complex)
    rng = range(n) if cyclic else range(n - 1)
    for i in rng:
        j = (i + 1) % n
        v = u[i] * u[j]
        m[i, j] += v
        m[j, i] -= v
    return m


def cluster_bracket_matrix(x: Point) -> np.ndarray:
    """{x_i, x_j} = -x_i x_j for odd i < even j (1-based), log-canonical."""
    n = len(x)
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            if (i + 1) % 2 == 1 and (j + 1) % 2 == 0:
                v = -x[i] * x[j]
                m[i, j] += v
                m[j, i] -= v
    return m


_STRUCTURES = {
    "C1": lambda z, par: bracket1_matrix(z),
    "C2": lambda z, par: bracket2_matrix(z),
    "CPencil": lambda z, par: pencil_matrix(z, par),
    "X": lambda z, par: x_bracket_matrix(z),
    "U": lambda z, par: u_bracket_matrix(z, cyclic=True),
    "UChain": lambda z, par: u_bracket_matrix(z, cyclic=False),
    "ClusterX": lambda z, par: cluster_bracket_matrix(z),
}


@dataclass(frozen=True)
class BracketSpec:
    """A Poisson structure on one coordinate chart."""

    chart: str  # key into the structure table
    parameter: complex = 0.0  # pencil parameter, where applicable

    def matrix(self, z: Point) -> np.ndarray:
        try:
            f = _STRUCTURES[self.chart]
        except KeyError:
            raise ChartDomainViolation(f"unknown bracket chart {self.chart!r}") from None
        return f(np.asarray(z, dtype=complex), self.parameter)

    def entry(self, i: int, j: int, z: Point) -> complex:
        """{z_i, z_j} at z (1-based indices)."""
        return complex(self.matrix(z)[i - 1, j - 1])


# --- differentiable functions ------------------------------------------------------


def fd_gradient(f: Callable[[Point], complex], z: Point, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient with a relative step."""
    z = np.asarray(z, dtype=complex)
    g = np.zeros_like(z)
    for i in range(len(z)):
        dz = h * max(1.0, abs(z[i]))
        zp, zm = z.copy(), z.copy()
        zp[i] += dz
        zm[i] -= dz
        g[i] = (f(zp) - f(zm)) / (2 * dz)
    return g


class Func:
    """A function of the chart point with an exact gradient."""

    def __init__(self, value: Callable[[Point], complex],
                 grad: Optional[Callable[[Point], np.ndarray]] = None,
                 name: str = ""):
        self._value = value
        self._grad = grad
        self.name = name

    def __call__(self, z: Point) -> complex:
        return self._value(np.asarray(z, dtype=complex))

    def gradient(self, z: Point) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self._grad is None:
            return fd_gradient(self._value, z)
        return self._grad(z)


def coordinate(i: int, name_prefix: str = "z") -> Func:
    """The 1-based coordinate function."""

    def grad(z):
        g = np.zeros(len(z), dtype=complex)
        g[i - 1] = 1.0
        return g

    return Func(lambda z: complex(z[i - 1]), grad, f"{name_prefix}_{i}")


def f_without(c: Sequence[complex], j: int, k: int) -> complex:
    """Sum of the cyclically sparse degree-k monomials avoiding index j (1-based)."""
    n = len(c)
    poly = _continuant_poly(list(c), j + 1, j + n - 1)
    return (-1.0) ** k * (poly[k] if k < len(poly) else 0.0)


def f_k_func(n: int, k: int) -> Func:
    """F_k with the exact gradient dF_k/dc_j = (F_k - F_k^{without j}) / c_j."""

    def value(c):
        return trace_coefficients(list(c))[k]

    def grad(c):
        fk = trace_coefficients(list(c))[k]
        return np.array(
            [(fk - f_without(c, j + 1, k)) / c[j] for j in range(n)], dtype=complex
        )

    return Func(value, grad, f"F_{k}")


def c_prod_func(n: int) -> Func:
    def value(c):
        return c_product(list(c))

    def grad(c):
        p = c_product(list(c))
        return np.array([p / c[j] for j in range(n)], dtype=complex)

    return Func(value, grad, "c_prod")


def normalized_f_square(n: int, k: int) -> Func:
    """F_k^2 / c_[n], the commuting integrals of the pencil."""
    fk = f_k_func(n, k)
    cp = c_prod_func(n)

    def value(c):
        return fk(c) ** 2 / cp(c)

    def grad(c):
        f = fk(c)
        p = cp(c)
        return (2 * f / p) * fk.gradient(c) - (f * f / p / p) * cp.gradient(c)

    return Func(value, grad, f"F_{k}^2/c_prod")


def normalized_f(n: int, k: int) -> Func:
    """E_k = F_k / sqrt(c_[n]) on the principal branch."""
    fk = f_k_func(n, k)
    cp = c_prod_func(n)

    def value(c):
        return fk(c) / cmath.sqrt(cp(c))

    def grad(c):
        s = cmath.sqrt(cp(c))
        return fk.gradient(c) / s - (fk(c) / (2 * s ** 3)) * cp.gradient(c)

    return Func(value, grad, f"E_{k}")


def e_alpha_func(n: int, alpha: complex) -> Func:
    """The Casimir of CPencil(1/alpha)."""
    alpha = complex(alpha)
    fs = [f_k_func(n, k) for k in range(n // 2 + 1)]
    cp = c_prod_func(n)

    def t_val(c):
        return sum((-1.0) ** k * fs[k](c) * alpha ** (-k) for k in range(len(fs)))

    def value(c):
        return alpha ** n * t_val(c) ** 2 / cp(c)

    def grad(c):
        t = t_val(c)
        gt = sum(
            (-1.0) ** k * alpha ** (-k) * fs[k].gradient(c) for k in range(len(fs))
        )
        p = cp(c)
        return alpha ** n * (2 * t / p * gt - (t * t / p / p) * cp.gradient(c))

    return Func(value, grad, "E_alpha")


def parity_ratio_func(n: int) -> Func:
    """c_even / c_odd for even n (the second Casimir of the pencil)."""
    if n % 2:
        raise EvenN("the parity ratio needs even n")

    def value(c):
        num = den = 1.0 + 0j
        for i in range(n):
            if (i + 1) % 2 == 0:
                num *= c[i]
            else:
                den *= c[i]
        return num / den

    def grad(c):
        v = value(c)
        return np.array(
            [v / c[j] if (j + 1) % 2 == 0 else -v / c[j] for j in range(n)],
            dtype=complex,
        )

    return Func(value, grad, "c_even/c_odd")


def u_monomial_func(n: int, indices: Sequence[int]) -> Func:
    """Product of u_i over the given 1-based indices (u_[n], u_odd, u_even)."""
    idx = [i - 1 for i in indices]

    def value(u):
        p = 1.0 + 0j
        for i in idx:
            p *= u[i]
        return p

    def grad(u):
        v = value(u)
        g = np.zeros(n, dtype=complex)
        for i in idx:
            g[i] = v / u[i]
        return g

    return Func(value, grad, "u_monomial")


# --- bracket evaluation, Jacobi, Casimirs -------------------------------------------


def bracket(spec: BracketSpec, f, g, z: Point) -> complex:
    """{f, g}(z) = grad f . Pi . grad g."""
    z = np.asarray(z, dtype=complex)
    gf = f.gradient(z) if isinstance(f, Func) else fd_gradient(f, z)
    gg = g.gradient(z) if isinstance(g, Func) else fd_gradient(g, z)
    return complex(gf @ spec.matrix(z) @ gg)


def jacobi_residual(spec: BracketSpec, z: Point, h: float = 1e-6) -> float:
    """Max cyclic-sum residual of the Jacobi identity over all coordinate triples."""
    z = np.asarray(z, dtype=complex)
    n = len(z)
    pi = spec.matrix(z)
    dpi = np.zeros((n, n, n), dtype=complex)  # dpi[l] = d Pi / d z_l
    for l in range(n):
        dz = h * max(1.0, abs(z[l]))
        zp, zm = z.copy(), z.copy()
        zp[l] += dz
        zm[l] -= dz
        dpi[l] = (spec.matrix(zp) - spec.matrix(zm)) / (2 * dz)
    # sum_l ( dPi_ij/dz_l Pi_lk + dPi_jk/dz_l Pi_li + dPi_ki/dz_l Pi_lj ) = 0
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = sum(
                    dpi[l, i, j] * pi[l, k] + dpi[l, j, k] * pi[l, i] + dpi[l, k, i] * pi[l, j]
                    for l in range(n)
                )
                worst = max(worst, abs(s))
    return worst


def casimir_residual(spec: BracketSpec, cas: Func, z: Point) -> float:
    """max_i |{cas, z_i}|."""
    z = np.asarray(z, dtype=complex)
    v = cas.gradient(z) @ spec.matrix(z)
    return float(np.max(np.abs(v)))


def casimir_report(spec: BracketSpec, z: Point, alpha: Optional[complex] = None) -> dict:
    """Residuals of every built-in Casimir that lives on the spec's chart."""
    z = np.asarray(z, dtype=complex)
    n = len(z)
    out = {}
    if spec.chart in ("C1", "C2", "CPencil"):
        if alpha is None and spec.chart == "CPencil" and spec.parameter != 0:
            alpha = 1.0 / spec.parameter
        if alpha is not None:
            out["E_alpha"] = casimir_residual(spec, e_alpha_func(n, alpha), z)
        if n % 2 == 0:
            out["c_even/c_odd"] = casimir_residual(spec, parity_ratio_func(n), z)
    elif spec.chart == "U":
        out["u_prod"] = casimir_residual(spec, u_monomial_func(n, range(1, n + 1)), z)
        out["u_odd"] = casimir_residual(spec, u_monomial_func(n, range(1, n + 1, 2)), z)
        out["u_even"] = casimir_residual(spec, u_monomial_func(n, range(2, n + 1, 2)), z)
    return out


def involution_report(n: int, points: Sequence[Point]) -> dict:
    """Pairwise brackets of the commuting integrals and the ladder relation."""
    m = n // 2
    sq = [normalized_f_square(n, k) for k in range(1, m + 1)]
    es = [normalized_f(n, k) for k in range(0, m + 1)]
    b1 = BracketSpec("C1")
    b2 = BracketSpec("C2")
    worst_pair = 0.0
    worst_ladder = 0.0
    for z in points:
        scale = max(1.0, max(abs(f(z)) for f in sq))
        for a in range(len(sq)):
            for b in range(a + 1, len(sq)):
                worst_pair = max(
                    worst_pair,
                    abs(bracket(b1, sq[a], sq[b], z)) / scale,
                    abs(bracket(b2, sq[a], sq[b], z)) / scale,
                )
        # {f, E_k}_1 = -{f, E_{k-1}}_2 for coordinate functions f
        for i in range(1, n + 1):
            f = coordinate(i, "c")
            for k in range(1, m + 1):
                worst_ladder = max(
                    worst_ladder,
                    abs(bracket(b1, f, es[k], z) + bracket(b2, f, es[k - 1], z)),
                )
    return {"pairwise": worst_pair, "ladder": worst_ladder}


def structure_corank(spec: BracketSpec, z: Point, threshold: float = 1e-8) -> int:
    m = spec.matrix(z)
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return len(z)
    return int(np.sum(s <= threshold * s[0]))


def hamiltonian_span(spec: BracketSpec, z: Point, funcs: Sequence[Func],
                     threshold: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of span{Pi grad f} (columns).

    Columns are scaled by a common factor and vanishing fields dropped before
    the SVD (the ladder endpoints are Casimirs of the extreme brackets, so a
    per-column normalization would amplify zero fields into noise).
    """
    z = np.asarray(z, dtype=complex)
    pi = spec.matrix(z)
    cols = [pi @ f.gradient(z) for f in funcs]
    common = max(np.abs(v).max() for v in cols)
    if common == 0:
        return np.zeros((len(z), 0), dtype=complex)
    cols = [v / common for v in cols if np.abs(v).max() > 1e-12 * common]
    a = np.stack(cols, axis=1)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    keep = s > threshold * s[0]
    return u[:, keep]


def subspace_containment_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Largest angle of a column of span(a) out of span(b); 0 iff a is contained in b."""
    if a.shape[1] == 0:
        return 0.0
    s = np.linalg.svd(a.conj().T @ b, compute_uv=False)
    k = min(a.shape[1], b.shape[1])
    return float(np.arccos(np.clip(s[:k].min() if a.shape[1] <= b.shape[1] else 0.0, -1.0, 1.0))) \
        if a.shape[1] <= b.shape[1] else float("inf")


def max_principal_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Largest principal angle between the column spans of two orthonormal bases."""
    if a.shape[1] != b.shape[1]:
        return float("inf")
    s = np.linalg.svd(a.conj().T @ b, compute_uv=False)
    return float(np.arccos(np.clip(s.min(), -1.0, 1.0)))


# --- invariance of the pencil bracket under the correspondence ----------------------


def map_jacobian(c: Sequence[complex], alpha: complex, h: float = 1e-7,
                 tol: Tolerances = DEFAULT) -> tuple:
    """(d, J): image of the moduli-level map and its FD Jacobian, branch-continuous.

    The branch at each perturbed point is the fixed point chordally closest to
    the base branch; a crossing (competitor at comparable distance) raises
    BranchDiscontinuity instead of guessing.
    """
    from .projective import ProjectivePoint, chordal

    c = [complex(v) for v in c]
    n = len(c)
    base_d, base_x = moduli_map(CoordVector(Chart.C, c), alpha, branch=0)
    base_pt = ProjectivePoint.of(base_x.values[0])

    def image(cv):
        from .continuants import monodromy_from_c
        from .projective import classify

        scaled = [v / alpha for v in cv]
        cls = classify(monodromy_from_c(scaled), tol)
        cands = [(chordal(ProjectivePoint.of(f.affine()), base_pt), i)
                 for i, f in enumerate(cls.fixed_points)]
        cands.sort()
        if len(cands) == 2 and cands[1][0] < 10 * cands[0][0] + 1e-12:
            raise BranchDiscontinuity("fixed points too close to continue the branch")
        d, _ = moduli_map(CoordVector(Chart.C, list(cv)), alpha, branch=0,
                          x_seed=cls.fixed_points[cands[0][1]].affine())
        return np.array(d.values, dtype=complex)

    jac = np.zeros((n, n), dtype=complex)
    for j in range(n):
        dz = h * max(1.0, abs(c[j]))
        cp, cm = list(c), list(c)
        cp[j] += dz
        cm[j] -= dz
        jac[:, j] = (image(cp) - image(cm)) / (2 * dz)
    return np.array(base_d.values, dtype=complex), jac


def invariance_residual(c: Sequence[complex], alpha: complex, h: float = 1e-7,
                        tol: Tolerances = DEFAULT) -> float:
    """Entrywise defect of Pi(d) = J Pi(c) J^T for the invariant pencil member."""
    d, jac = map_jacobian(c, alpha, h, tol)
    spec = BracketSpec("CPencil", 1.0 / complex(alpha))
    pushed = jac @ spec.matrix(np.array(c, dtype=complex)) @ jac.T
    target = spec.matrix(d)
    scale = max(1.0, float(np.abs(target).max()))
    return float(np.abs(pushed - target).max()) / scale


# --- the closed-polygon embedding rho ------------------------------------------------


def rho_embedding(u: Sequence[complex]) -> CoordVector:
    """c-coordinates of the closed polygon with u-chart data (u_2 .. u_{n-2})."""
    u = [complex(v) for v in u]
    n = len(u) + 3
    if any(v == 0 or v == -1 for v in u):
        raise ChartDomainViolation("u-chart needs u_i outside {0, -1}")
    # cumulative sums 1 + u_2 + u_2 u_3 + ... + u_2..u_{n-2}
    acc, term = 1.0 + 0j, 1.0 + 0j
    for v in u:
        term *= v
        acc += term
    if acc == 0 or term == 0:
        raise DenominatorVanishes("rho denominator vanishes")
    c = [u[0] / (1.0 + u[0])]
    for i in range(2, n - 2):  # c_i, i = 2..n-3
        c.append(u[i - 1] / ((1.0 + u[i - 2]) * (1.0 + u[i - 1])))
    c.append(1.0 / (1.0 + u[-1]))
    c.append(term / acc)
    c.append(1.0 / acc)
    return CoordVector(Chart.C, tuple(c))


def rho_head_inverse(c: Sequence[complex]) -> list:
    """Recover (u_2..u_{n-2}) from the first n-3 c-coordinates (triangular)."""
    c = [complex(v) for v in c]
    us = [c[0] / (1.0 - c[0])]
    for i in range(2, len(c) + 1):
        t = c[i - 1] * (1.0 + us[-1])
        us.append(t / (1.0 - t))
    return us


def rho_jacobian(u: Sequence[complex], h: float = 1e-7) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    n = len(u) + 3
    jac = np.zeros((n, len(u)), dtype=complex)
    for j in range(len(u)):
        dz = h * max(1.0, abs(u[j]))
        up, um = u.copy(), u.copy()
        up[j] += dz
        um[j] -= dz
        jac[:, j] = (
            np.array(rho_embedding(up).values) - np.array(rho_embedding(um).values)
        ) / (2 * dz)
    return jac


def rho_poisson_residual(u: Sequence[complex], h: float = 1e-7) -> float:
    """Defect of rho pushing the u-chain bracket to the C2 pencil member."""
    u = np.asarray(u, dtype=complex)
    jac = rho_jacobian(u, h)
    pushed = jac @ u_bracket_matrix(u, cyclic=False) @ jac.T
    target = c2_matrix(np.array(rho_embedding(u).values, dtype=complex))
    scale = max(1.0, float(np.abs(target).max()))
    return float(np.abs(pushed - target).max()) / scale


def cluster_to_u(x: Sequence[complex]) -> list:
    """u_i = x_{i-2}/x_i on the diagonal frieze chart (x_0 = x_{n-2} = 1)."""
    x = [complex(v) for v in x]
    n = len(x) + 3

    def xi(i):
        if i == 0 or i == n - 2:
            return 1.0 + 0j
        return x[i - 1]

    return [xi(i - 2) / xi(i) for i in range(2, n - 1)]


def cluster_to_u_poisson_residual(x: Sequence[complex], h: float = 1e-7) -> float:
    """Defect of the cluster chart map pushing ClusterX to the u-chain bracket."""
    x = np.asarray(x, dtype=complex)
    m = len(x)
    jac = np.zeros((m, m), dtype=complex)
    for j in range(m):
        dz = h * max(1.0, abs(x[j]))
        xp, xm = x.copy(), x.copy()
        xp[j] += dz
        xm[j] -= dz
        jac[:, j] = (np.array(cluster_to_u(xp)) - np.array(cluster_to_u(xm))) / (2 * dz)
    pushed = jac @ cluster_bracket_matrix(x) @ jac.T
    target = u_bracket_matrix(np.array(cluster_to_u(x), dtype=complex), cyclic=False)
    scale = max(1.0, float(np.abs(target).max()))
    return float(np.abs(pushed - target).max()) / scale


# --- independence ranks ---------------------------------------------------------------


def integral_gradients(c: Sequence[complex]) -> np.ndarray:
    """Rows: grad F_1, ..., grad F_{floor(n/2)}, grad c_[n]."""
    c = np.asarray(c, dtype=complex)
    n = len(c)
    funcs = [f_k_func(n, k) for k in range(1, n // 2 + 1)] + [c_prod_func(n)]
    return np.stack([f.gradient(c) for f in funcs], axis=0)


def independence_rank(c: Sequence[complex], threshold: float = 1e-8) -> int:
    """Numerical rank of the integral Jacobian (SVD, relative threshold).

    Each gradient is sup-normalized first; the integrals have wildly different
    homogeneity degrees, so at stratified points like c_i = eps^i the raw rows
    differ by many orders of magnitude without being dependent.
    """
    g = integral_gradients(c)
    norms = np.abs(g).max(axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    s = np.linalg.svd(g / norms, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > threshold * s[0]))


# --- cluster symplectic form -----------------------------------------------------------


def cluster_form_matrix(x: Sequence[complex]) -> np.ndarray:
    """omega = sum dx_i ^ dx_{i+1} / (x_i x_{i+1}) on the diagonal frieze chart."""
    x = np.asarray(x, dtype=complex)
    m = len(x)
    w = np.zeros((m, m), dtype=complex)
    for i in range(m - 1):
        v = 1.0 / (x[i] * x[i + 1])
        w[i, i + 1] += v
        w[i + 1, i] -= v
    return w


def cluster_form_vs_bracket(x: Sequence[complex]) -> float:
    """|omega^{-1} - Pi_cluster| at x (n odd makes omega invertible)."""
    x = np.asarray(x, dtype=complex)
    if (len(x) + 3) % 2 == 0:
        raise EvenN("the cluster form is symplectic for odd n only")
    w = cluster_form_matrix(x)
    inv = np.linalg.inv(w)
    target = cluster_bracket_matrix(x)
    return float(np.abs(inv - target).max()) / max(1.0, float(np.abs(target).max()))
