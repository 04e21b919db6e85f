"""Run a few 2-2 orbits and drop CSV traces plus Poincare-disk pictures.

Usage: python scripts/orbit_gallery.py [outdir]
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from crd.cli import main as crd_main
from crd.polygon import polygon_to_json
from crd.sampling import orbit_ready_polygon, rng_from_seed


def run(outdir="out"):
    out = pathlib.Path(outdir)
    out.mkdir(exist_ok=True)
    rng = rng_from_seed(7)
    cases = [
        ("real7", orbit_ready_polygon(rng, 7, "real", -1.0 + 0j), "-1"),
        ("real9", orbit_ready_polygon(rng, 9, "real", 2.0 + 0j), "2"),
        ("complex6", orbit_ready_polygon(rng, 6, "complex", 0.3 + 0.2j), "0.3,0.2"),
    ]
    for name, poly, alpha in cases:
        src = out / f"{name}.json"
        src.write_text(json.dumps(polygon_to_json(poly)))
        crd_main(["orbit", str(src), "--alpha", alpha, "--steps", "100",
                  "--out", str(out / f"{name}.csv")])
        crd_main(["render", str(src), "--alpha", alpha, "--steps", "6",
                  "--out", str(out / f"{name}.svg")])
        print(f"{name}: wrote {name}.csv and {name}.svg")


if __name__ == "__main__":
    run(*sys.argv[1:])
