"""Falsification harness for the odd-n loxogon conjecture.

Perturb a regular ideal n-gon, project back onto the (n, k)-loxogon variety by
Gauss-Newton, and check whether anything non-regular survives. Persistent
convergence to regular polygons only is evidence, not proof, and is reported
as such.

Usage: python scripts/loxogon_search.py [n] [k] [trials]
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import math

import numpy as np

from crd.polygon import TwistedPolygon
from crd.projective import cross_ratio
from crd.special import is_projectively_regular, verify_loxogon


def loxogon_residual(z, k):
    n = len(z)
    p = [complex(w) for w in z]
    vals = []
    for i in range(n):
        vals.append(cross_ratio(p[i], p[(i + 1) % n], p[(i + k) % n],
                                p[(i + k + 1) % n]))
    mean = sum(vals) / n
    return np.array([v - mean for v in vals])


def project(z0, k, iters=80):
    from crd.errors import CrdError

    z = np.array(z0, dtype=complex)
    try:
        for _ in range(iters):
            r = loxogon_residual(z, k)
            if np.linalg.norm(r) < 1e-12:
                return z
            jac = np.zeros((len(r), len(z)), dtype=complex)
            for j in range(len(z)):
                dz = 1e-7 * max(1.0, abs(z[j]))
                zp, zm = z.copy(), z.copy()
                zp[j] += dz
                zm[j] -= dz
                jac[:, j] = (loxogon_residual(zp, k) - loxogon_residual(zm, k)) / (2 * dz)
            # three singular values vanish along the Moebius symmetry; truncate
            # them or the least-squares step explodes along the null cone
            step, *_ = np.linalg.lstsq(jac, -r, rcond=1e-8)
            z = z + step
        return z if np.linalg.norm(loxogon_residual(z, k)) < 1e-10 else None
    except (CrdError, ZeroDivisionError):
        return None  # projection wandered into a degenerate configuration


def run(n=7, k=3, trials=30):
    n, k, trials = int(n), int(k), int(trials)
    rng = np.random.default_rng(3)
    base = [math.tan(math.pi * j / n) for j in range(1, n + 1)]
    nontrivial = 0
    converged = 0
    for _ in range(trials):
        z0 = np.array(base) + 0.15 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        z = project(z0, k)
        if z is None:
            continue
        converged += 1
        poly = TwistedPolygon.closed([complex(w) for w in z])
        _, res = verify_loxogon(poly, k)
        if res < 1e-9 and not is_projectively_regular(poly, 1e-6):
            nontrivial += 1
            print("NON-REGULAR loxogon candidate:", [complex(w) for w in z])
    print(f"(n, k) = ({n}, {k}): {converged}/{trials} projections converged, "
          f"{nontrivial} non-regular")
    if nontrivial == 0:
        print("all converged loxogons projectively regular "
              "(supports the rigidity conjecture; not a proof)")


if __name__ == "__main__":
    run(*sys.argv[1:])
