"""Tabulate the circulant deformation kernels of regular-polygon loxogons.

Usage: python scripts/rigidity_table.py [n_max]
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from crd.special import predicted_kernel_indices, rigidity_spectrum


def run(n_max=25):
    n_max = int(n_max)
    print(f"{'n':>3} {'k':>3} {'dim ker':>8}  extra (non-Moebius) modes")
    for n in range(5, n_max + 1):
        for k in range(2, n - 1):
            s = rigidity_spectrum(n, k)
            extra = sorted(set(s["zeros"]) - {0, 1, n - 1})
            model = predicted_kernel_indices(n, k)
            tag = "" if sorted(s["zeros"]) == model else "  MODEL MISMATCH"
            if extra or tag:
                print(f"{n:>3} {k:>3} {len(s['zeros']):>8}  {extra}{tag}")
    print("rows without extra modes are rigid (kernel = the 3 Moebius modes)")


if __name__ == "__main__":
    run(*sys.argv[1:])
