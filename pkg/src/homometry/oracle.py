"""Brute-force finite-window estimators, independent of the exact algebra.

The measure is cut to the window ``[-R, R]`` (end points included) and all
sums are carried out explicitly.  Estimates approach the exact Eberlein
autocorrelation and Bragg weights at rate ``O(1/R)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .measure import MixedMeasure, canonicalize, rat, rat_gcd, window_atoms

__all__ = ["ProbeEstimate", "window_autocorrelation", "bragg_intensity"]


class ProbeEstimate(NamedTuple):
    position: Fraction
    weight: complex
    density: complex


def _dense(g: Fraction, idx: np.ndarray, w: np.ndarray, fine: Fraction):
    """Atoms placed on a dense array over the grid ``fine``; returns (offset, array)."""
    if len(idx) == 0:
        return 0, np.zeros(0, dtype=complex)
    step = int(g / fine)
    pos = idx * step
    lo = int(pos.min())
    arr = np.zeros(int(pos.max()) - lo + 1, dtype=complex)
    arr[pos - lo] = w
    return lo, arr


def window_autocorrelation(m: MixedMeasure, R, probes) -> list[ProbeEstimate]:
    """``(m|_R ∗ m̃|_R)(z) / 2R`` at each probe ``z``.

    ``weight`` is the point mass at ``z`` (pairs of atoms ``x − y = z``);
    ``density`` is the absolutely continuous part at ``z``, from the
    Lebesgue self term and the Lebesgue/atom cross terms, in closed form.
    """
    R = rat(R)
    probes = [rat(z) for z in probes]
    if R < 10:
        raise ValueError("window radius must be >= 10")
    if any(abs(z) > R / 2 for z in probes):
        raise ValueError("probes must lie in [-R/2, R/2]")
    m = canonicalize(m)
    c = m.lebesgue
    g, idx, w = window_atoms(m, -R, R)
    xs = idx * float(g)
    fine = rat_gcd(g, *probes) or g
    lo, arr = _dense(g, idx, w, fine)
    n = len(arr)
    two_r = float(2 * R)
    out = []
    for z in probes:
        r = z / fine
        weight = 0j
        if r.denominator == 1 and n:
            r = int(r)
            if 0 <= r < n:
                weight = np.vdot(arr[: n - r], arr[r:])
            elif -n < r < 0:
                weight = np.vdot(arr[-r:], arr[: n + r])
        zf = float(z)
        density = abs(c) ** 2 * max(0.0, two_r - abs(zf))
        if c and len(w):
            Rf = float(R)
            density += c * np.sum(np.conj(w)[np.abs(zf + xs) <= Rf])
            density += np.conj(c) * np.sum(w[np.abs(zf - xs) <= Rf])
        out.append(ProbeEstimate(z, complex(weight) / two_r, complex(density) / two_r))
    return out


def bragg_intensity(gamma: MixedMeasure, k, R) -> float:
    """``Re (1/2R) ∫_{-R}^{R} e^{-2πikz} dγ(z)``."""
    R = rat(R)
    if R < 10:
        raise ValueError("window radius must be >= 10")
    gamma = canonicalize(gamma)
    g, idx, w = window_atoms(gamma, -R, R)
    k = rat(k)
    # phase k·z reduced exactly modulo 1
    kg = k * g
    frac = (idx * kg.numerator) % kg.denominator
    atoms = np.sum(w * np.exp(-2j * np.pi * frac / kg.denominator))
    if k == 0:
        cont = gamma.lebesgue * float(2 * R)
    else:
        kf = float(k)
        cont = gamma.lebesgue * math.sin(2 * math.pi * float((k * R) % 1)) / (math.pi * kf)
    return float(((atoms + cont) / float(2 * R)).real)
