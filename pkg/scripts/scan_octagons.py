"""Newton scan for ideal octagons orthogonal to infinitely many octagons.

The expected solution set is a (complex) two-parameter family; every converged
seed is audited against all 16 cyclic closure residuals and the local manifold
dimension is read off the Jacobian null space.

Usage: python scripts/scan_octagons.py [seeds] [out.json]
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from crd.special import exceptional_octagon_scan


def run(seeds=40, out="out/octagons.json"):
    found = exceptional_octagon_scan(seeds=int(seeds), rng_seed=11)
    rows = []
    for cv, res, nullity in found:
        rows.append({
            "c": [[v.real, v.imag] for v in cv.values],
            "max_residual": res,
            "jacobian_nullity": nullity,
        })
    path = pathlib.Path(out)
    path.parent.mkdir(exist_ok=True)
    path.write_text(json.dumps(rows, indent=2))
    nullities = sorted({r["jacobian_nullity"] for r in rows})
    print(f"{len(rows)} exceptional octagons; nullities observed: {nullities}")
    if rows:
        worst = max(r["max_residual"] for r in rows)
        print(f"worst residual {worst:.2e}; wrote {path}")


if __name__ == "__main__":
    run(*sys.argv[1:])
