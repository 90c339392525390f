"""Volume-averaged (Eberlein) convolution of mixed measures.

Rules, with ``m̃(x) = conj(m(-x))``:

* ``λ ⊛ λ̃ = λ``
* ``λ ⊛ μ̃ = conj(D(μ)) λ`` and ``μ ⊛ λ̃ = D(μ) λ`` for a comb ``μ`` of mean density ``D(μ)``
* for two combs refined to a common full period ``L`` with patterns ``u, v``,
  the weight at ``r·g`` is ``(1/L) Σ_j u_j conj(v_{j-r})`` (periodised cross-correlation)
* finite parts average out and contribute nothing.
"""

import numpy as np

from .measure import MixedMeasure, PeriodicComb, canonicalize, common_grid

__all__ = ["mean_density", "eberlein", "autocorrelate"]


def _comb_density(m: MixedMeasure) -> complex:
    return sum((complex(sum(c.weights)) / float(c.period) for c in m.combs), 0j)


def mean_density(m: MixedMeasure) -> complex:
    """Average weight per unit length; finite atoms contribute zero.

    >>> from homometry.measure import comb, lebesgue
    >>> mean_density(lebesgue(2) - comb(1))
    (1+0j)
    """
    m = canonicalize(m)
    return m.lebesgue + _comb_density(m)


def _cross(p: PeriodicComb, q: PeriodicComb) -> PeriodicComb:
    g, size, (u, v) = common_grid([p, q])
    # circular cross-correlation c_r = Σ_j u_j conj(v_{j-r})
    corr = np.fft.ifft(np.fft.fft(u) * np.conj(np.fft.fft(v)))
    return PeriodicComb(g, tuple(corr / float(g * size)))


def eberlein(m1: MixedMeasure, m2: MixedMeasure) -> MixedMeasure:
    """``m1 ⊛ m̃2``; sesquilinear, conjugate-linear in ``m2``.

    Raises RefinementTooLarge if a comb pair has no common refinement within
    the guard.
    """
    m1, m2 = canonicalize(m1), canonicalize(m2)
    c1, c2 = m1.lebesgue, m2.lebesgue
    d1, d2 = _comb_density(m1), _comb_density(m2)
    leb = c1 * c2.conjugate() + c1 * d2.conjugate() + d1 * c2.conjugate()
    combs = tuple(_cross(p, q) for p in m1.combs for q in m2.combs)
    return canonicalize(MixedMeasure(leb, combs))


def autocorrelate(m: MixedMeasure) -> MixedMeasure:
    """The autocorrelation ``γ = m ⊛ m̃``."""
    return eberlein(m, m)
