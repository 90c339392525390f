"""Period-doubling derived sets and the formal Fourier series of their comb.

The left endpoints of the letter ``a`` in the period doubling sequence form

    Λ = ⋃_{n≥0} (2·4ⁿ ℤ + (4ⁿ − 1)),

and the symmetric set Δ = Λ ∪ (−Λ) splits disjointly into 2ℤ and the sets
Δ_n = (2·4ⁿℤ + (4ⁿ−1)) ∪ (2·4ⁿℤ + (1−4ⁿ)), n ≥ 1.

Poisson summation applied term by term gives the formal series

    δ̂_Δ = ½ δ_{ℤ/2} + Σ_{n≥1} 4⁻ⁿ cos(2π(4ⁿ−1)x) δ_{ℤ/(2·4ⁿ)},

which is a tempered distribution but not a measure.  Replacing 4ⁿ by (4+ε)ⁿ
in the denominators gives translation bounded measures ρ_ε.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Number

import numpy as np

from .exceptions import NonConvergent
from .measure import (
    MixedMeasure,
    PeriodicComb,
    canonicalize,
    comb,
    rat,
    to_dict,
    window_atoms,
)

__all__ = [
    "PD_DELTA",
    "pd_member",
    "pd_enumerate",
    "pd_delta_n",
    "ModulatedComb",
    "FormalCombSeries",
    "pd_formal_fourier",
    "series_partial_sum",
    "total_variation",
    "gaussian",
    "pair_measure_with_gaussian",
    "pair_with_gaussian",
]

#: identifier of the symmetric period doubling set Δ
PD_DELTA = "pd_delta"

# Gaussian window half-width in units of sigma, and the term cutoff
_WINDOW_SIGMAS = 12
_TERM_CUTOFF = 1e-15
_MAX_TERMS = 64


# ---------------------------------------------------------------------------
# the sets
# ---------------------------------------------------------------------------

def pd_member(k: int) -> bool:
    """True iff ``k`` lies in Δ.

    >>> [k for k in range(-8, 9) if pd_member(k)]
    [-8, -6, -5, -4, -3, -2, 0, 2, 3, 4, 5, 6, 8]
    """
    k = int(k)
    if k % 2 == 0:
        return True
    top = math.ceil(math.log(abs(k) + 1, 4)) + 1
    for n in range(1, top + 1):
        mod = 2 * 4**n
        if k % mod in ((4**n - 1) % mod, (1 - 4**n) % mod):
            return True
    return False


def _progression(mod: int, res: int, lo: int, hi: int) -> range:
    start = lo + ((res - lo) % mod)
    return range(start, hi + 1, mod)


def pd_delta_n(n: int, lo: int, hi: int) -> list[int]:
    """Members of Δ_n in ``[lo, hi]``, sorted."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mod = 2 * 4**n
    out = set(_progression(mod, 4**n - 1, lo, hi))
    out.update(_progression(mod, 1 - 4**n, lo, hi))
    return sorted(out)


def pd_enumerate(lo: int, hi: int) -> list[int]:
    """Members of Δ in ``[lo, hi]``, built from the arithmetic progressions."""
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    out = set(_progression(2, 0, lo, hi))
    n = 1
    while 4**n - 1 <= max(abs(lo), abs(hi)):
        out.update(pd_delta_n(n, lo, hi))
        n += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# series objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModulatedComb:
    """Atoms at ``spacing·m`` with weight ``amplitude·cos(2π·frequency·x)``."""

    spacing: Fraction
    frequency: Fraction
    amplitude: float

    def __post_init__(self):
        object.__setattr__(self, "spacing", rat(self.spacing))
        object.__setattr__(self, "frequency", rat(self.frequency))
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if not math.isfinite(self.amplitude):
            raise ValueError("amplitude must be finite")

    def to_comb(self) -> PeriodicComb:
        # cos(2π f s m) is periodic in m with period q, f s = p/q in lowest terms
        phase = self.frequency * self.spacing
        q = phase.denominator
        m = np.arange(q)
        w = self.amplitude * np.cos(2 * np.pi * ((phase.numerator * m) % q) / q)
        return PeriodicComb(self.spacing, tuple(w))


@dataclass(frozen=True)
class FormalCombSeries:
    """``head + coefficient · Σ_{n≥1} (4+damping)⁻ⁿ cos(2π(4ⁿ−1)x) δ_{ℤ/(2·4ⁿ)}``.

    With ``damping == 0`` this is a tempered distribution that is not a
    measure; for ``damping > 0`` it is a translation bounded measure.
    ``experimental`` marks objects that lie outside the backward
    transformable scheme.
    """

    head: MixedMeasure
    damping: float = 0.0
    coefficient: float = 1.0
    experimental: bool = False

    def __post_init__(self):
        if self.damping < 0:
            raise ValueError("damping must be >= 0")

    def term(self, n: int) -> ModulatedComb:
        if n < 1:
            raise ValueError("terms start at n = 1")
        return ModulatedComb(
            Fraction(1, 2 * 4**n),
            4**n - 1,
            self.coefficient / (4 + self.damping) ** n,
        )

    @property
    def is_measure(self) -> bool:
        return self.damping > 0 or self.coefficient == 0

    def __mul__(self, c):
        if not isinstance(c, Number) or isinstance(c, complex):
            return NotImplemented
        return replace(self, head=self.head * c, coefficient=self.coefficient * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __add__(self, other):
        if not isinstance(other, MixedMeasure):
            return NotImplemented
        return replace(self, head=self.head + other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MixedMeasure):
            return NotImplemented
        return replace(self, head=self.head - other)

    def describe(self) -> str:
        return (
            f"{self.coefficient:g} * sum_(n>=1) (4+{self.damping:g})^-n "
            "cos(2pi(4^n-1)x) delta_(Z/(2*4^n))"
        )

    def to_dict(self, terms: int = 0, digits: int | None = 12) -> dict:
        out = {
            "kind": "series",
            "head": to_dict(self.head, digits),
            "coefficient": self.coefficient,
            "damping": self.damping,
            "experimental": self.experimental,
            "is_measure": self.is_measure,
            "term_rule": self.describe(),
            "terms": [],
        }
        for n in range(1, terms + 1):
            t = self.term(n)
            out["terms"].append(
                {
                    "n": n,
                    "spacing": f"{t.spacing.numerator}/{t.spacing.denominator}",
                    "frequency": f"{t.frequency.numerator}/{t.frequency.denominator}",
                    "amplitude": t.amplitude,
                }
            )
        return out


def pd_formal_fourier(eps: float = 0.0) -> FormalCombSeries:
    """The formal transform of δ_Δ (``eps=0``) or its regularisation ρ_ε.

    >>> s = pd_formal_fourier()
    >>> s.term(1)
    ModulatedComb(spacing=Fraction(1, 8), frequency=Fraction(3, 1), amplitude=0.25)
    """
    if eps < 0:
        raise ValueError("eps must be >= 0")
    return FormalCombSeries(head=comb(Fraction(1, 2), (0.5,)), damping=float(eps))


def series_partial_sum(s: FormalCombSeries, n_terms: int) -> MixedMeasure:
    """Head plus terms ``1..n_terms`` as one canonical measure.

    Atoms shared by several terms are summed.  Raises RefinementTooLarge when
    the finest lattice outgrows the guard (``n_terms <= 8`` always fits the
    default guard).
    """
    if n_terms < 0:
        raise ValueError("n_terms must be >= 0")
    combs = s.head.combs + tuple(s.term(n).to_comb() for n in range(1, n_terms + 1))
    return canonicalize(MixedMeasure(s.head.lebesgue, combs, s.head.finite))


def total_variation(m: MixedMeasure, a, b) -> float:
    """``|m|([a, b])``: summed absolute atom weights plus ``|lebesgue|·(b − a)``."""
    a, b = rat(a), rat(b)
    if not a < b:
        raise ValueError("total_variation needs a < b")
    _, _, w = window_atoms(m, a, b)
    return float(np.sum(np.abs(w))) + abs(canonicalize(m).lebesgue) * float(b - a)


# ---------------------------------------------------------------------------
# pairing with Gaussian test functions
# ---------------------------------------------------------------------------

def gaussian(x, center: float = 0.0, sigma: float = 1.0):
    """``exp(-(x - center)² / (2σ²))``, the test function used for pairings."""
    return np.exp(-((np.asarray(x, dtype=float) - center) ** 2) / (2 * sigma**2))


def pair_measure_with_gaussian(m: MixedMeasure, center: float, sigma: float) -> complex:
    """``∫ g dm`` with atoms truncated to ``|x − center| <= 12σ``."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    half = _WINDOW_SIGMAS * sigma
    a = Fraction(math.floor(center - half))
    b = Fraction(math.ceil(center + half))
    g, idx, w = window_atoms(m, a, b)
    x = idx * float(g)
    total = complex(np.sum(w * gaussian(x, center, sigma)))
    return total + canonicalize(m).lebesgue * sigma * math.sqrt(2 * math.pi)


def _gaussian_hat_sum(step: float, shift: float, center: float, sigma: float):
    """``Σ_j ĝ(step·j + shift)`` for the Gaussian ``g`` and bound on its tail.

    ``ĝ(ξ) = σ√(2π) exp(−2π²σ²ξ²) exp(−2πi·center·ξ)``.
    """
    width = 1.0 / (2 * math.pi * sigma)
    reach = _WINDOW_SIGMAS * width
    j0 = math.floor((-reach - shift) / step)
    j1 = math.ceil((reach - shift) / step)
    xi = step * np.arange(j0, j1 + 1) + shift
    amp = sigma * math.sqrt(2 * math.pi) * np.exp(-2 * math.pi**2 * sigma**2 * xi**2)
    return complex(np.sum(amp * np.exp(-2j * math.pi * center * xi)))


def _term_pairing(t: ModulatedComb, center: float, sigma: float) -> complex:
    """Pairing of one modulated comb with the Gaussian, via Poisson summation.

    ``Σ_m g(mh) cos(2πF mh) = (1/2h) Σ_j [ĝ(j/h − F) + ĝ(j/h + F)]``; the
    dual sum decays like ``exp(−2π²σ²F²)`` while the direct one does not.
    """
    h = float(t.spacing)
    f = float(t.frequency)
    dual = _gaussian_hat_sum(1 / h, -f, center, sigma) + _gaussian_hat_sum(1 / h, f, center, sigma)
    return t.amplitude * dual / (2 * h)


def _term_bound(t: ModulatedComb, sigma: float) -> float:
    """Upper bound for ``|_term_pairing(t)|`` independent of the center."""
    h = float(t.spacing)
    step = 1 / h
    fmin = min(float(t.frequency) % step, -float(t.frequency) % step)
    # nearest dual frequency to zero, then a geometric tail over the rest
    a = 2 * math.pi**2 * sigma**2
    peak = math.exp(-a * fmin**2)
    tail = math.exp(-a * step**2 / 4) / (1 - math.exp(-a * step**2 / 4))
    return abs(t.amplitude) / (2 * h) * sigma * math.sqrt(2 * math.pi) * 2 * (2 * peak + 2 * tail)


def pair_with_gaussian(s: FormalCombSeries, center: float = 0.0, sigma: float = 1.0) -> complex:
    """``s(g)`` for ``g = gaussian(·, center, sigma)``.

    The head is paired atom by atom.  Each series term is evaluated through
    its Poisson dual (absolutely convergent also at ``damping == 0``), and the
    series is cut once the term bound drops below 1e-15.  Raises
    NonConvergent if that never happens within 64 terms.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    total = pair_measure_with_gaussian(s.head, center, sigma)
    if s.coefficient == 0:
        return total
    for n in range(1, _MAX_TERMS + 1):
        t = s.term(n)
        if _term_bound(t, sigma) < _TERM_CUTOFF:
            return total
        total += _term_pairing(t, center, sigma)
    raise NonConvergent(f"term bound did not reach {_TERM_CUTOFF} in {_MAX_TERMS} terms")
