"""Fourier transform on the MixedMeasure class via Poisson summation.

Convention: ``μ̂(k) = ∫ e^{-2πikx} dμ(x)``; the inverse uses ``e^{+2πikx}``.
A comb with spacing ``a`` and ``N``-periodic weights ``w`` transforms into the
comb with spacing ``1/(Na)`` and weights ``W_k = (1/(Na)) Σ_m w_m e^{-2πimk/N}``;
``c·λ ↔ c·δ_0``.
"""

import numpy as np

from .eberlein import autocorrelate
from .exceptions import NonTransformableFinitePart
from .measure import (
    FiniteComb,
    MixedMeasure,
    PeriodicComb,
    canonicalize,
    strip_finite,
)

__all__ = [
    "comb_transform",
    "fourier",
    "inverse_fourier",
    "diffraction",
    "verify_homometric",
]


def comb_transform(c: PeriodicComb, inverse: bool = False) -> PeriodicComb:
    """Transform of one periodic comb, before canonicalisation."""
    n = c.n
    scale = float(c.period)
    if inverse:
        w = np.fft.ifft(c.array) * (n / scale)
    else:
        w = np.fft.fft(c.array) / scale
    return PeriodicComb(1 / c.period, tuple(w))


def _transform(m: MixedMeasure, inverse: bool) -> MixedMeasure:
    m = canonicalize(m)
    leb = 0j
    for x, w in m.finite.atoms:
        if x != 0:
            raise NonTransformableFinitePart(
                f"finite atom at {x} has a modulated-density transform"
            )
        leb += w
    finite = FiniteComb(((0, m.lebesgue),)) if m.lebesgue else FiniteComb()
    combs = tuple(comb_transform(c, inverse) for c in m.combs)
    return canonicalize(MixedMeasure(leb, combs, finite))


def fourier(m: MixedMeasure) -> MixedMeasure:
    """Fourier transform.

    Only finite atoms at the origin are allowed (``δ_0 ↦ λ``); anything else in
    the finite part raises NonTransformableFinitePart.

    >>> from homometry.measure import comb
    >>> fourier(comb(1)) == comb(1)
    True
    """
    return _transform(m, inverse=False)


def inverse_fourier(m: MixedMeasure) -> MixedMeasure:
    return _transform(m, inverse=True)


def diffraction(m: MixedMeasure) -> MixedMeasure:
    """The diffraction measure: Fourier transform of the autocorrelation.

    Finite atoms are dropped first; they do not change the autocorrelation.
    """
    gamma = autocorrelate(strip_finite(m))
    out = fourier(gamma)
    if out.lebesgue != 0:
        raise RuntimeError(f"diffraction acquired a continuous part: {out!r}")
    return out


def verify_homometric(m1: MixedMeasure, m2: MixedMeasure) -> bool:
    return diffraction(m1) == diffraction(m2)
