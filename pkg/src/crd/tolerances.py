"""Numerical tolerances used across the library.

All geometric comparisons go through the chordal metric, so the defaults are
meaningful for points normalized to max-component 1.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    deg: float = 1e-10       # point-coincidence / polygon degeneracy
    cls: float = 1e-9        # parabolic-vs-loxodromic boundary (tr^2/det - 4)
    scalar: float = 1e-9     # scalar-matrix (identity Moebius) test
    det: float = 1e-12       # singular-matrix test, relative to entry scale
    rel: float = 1e-9        # relation residual [p,p',q,q'] = alpha

    def with_(self, **kw) -> "Tolerances":
        return replace(self, **kw)


DEFAULT = Tolerances()
