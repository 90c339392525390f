"""Reverse lower path of the Wiener diagram: diffraction → amplitudes → structure.

Given a pure point diffraction ``Σ_k I(k) δ_{kb}`` on a lattice ``bℤ`` and a
phase rule, the amplitudes are ``A(k) = √I(k) · e^{2πi t(k)}``.  When the
amplitude comb is periodic apart from an exceptional atom at ``k = 0`` it is
inverse transformed term by term (``c·δ_0 ↦ c·λ``).  Assignments by the
period doubling set Δ lead to the formal series ``2·δ̂_Δ − δ_ℤ``.

Phases are given in turns; a :class:`fractions.Fraction` turn with
denominator dividing 4 yields an exact unit (``1, i, -1, -i``).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from ._config import get_tol
from .exceptions import (
    IntensityMismatch,
    NonTransformableFinitePart,
    NotADiffraction,
    NotAMeasure,
    SchemaError,
    SymmetryViolation,
    UnsupportedAssignment,
)
from .fourier import diffraction, fourier, inverse_fourier
from .limitperiodic import PD_DELTA, FormalCombSeries, pd_formal_fourier, pd_member
from .measure import (
    FiniteComb,
    MixedMeasure,
    PeriodicComb,
    canonicalize,
    comb,
    is_inversion_symmetric,
    is_positive,
    is_real,
    rat_gcd,
    weight_at,
)

__all__ = [
    "Constant",
    "ResidueClasses",
    "FiniteExceptions",
    "SetIndicator",
    "PhaseAssignment",
    "Amplitudes",
    "Solution",
    "unit",
    "validate",
    "solve",
    "recover_phases",
    "table_omega_alpha",
    "table_cells",
    "solve_experimental_delta_set",
    "phases_from_dict",
    "phases_to_dict",
    "ZeroIntensityAtOrigin",
]


class ZeroIntensityAtOrigin(UserWarning):
    """I(0) = 0: the condition A(0) = 1 is vacuous."""


def _turn(t):
    if isinstance(t, (Fraction, int)) and not isinstance(t, bool):
        return Fraction(t)
    if isinstance(t, str):
        return Fraction(t)
    return float(t)


def unit(t) -> complex:
    """``e^{2πit}``; exact for rational turns that are multiples of 1/4."""
    if isinstance(t, (Fraction, int)):
        q = Fraction(t) * 4
        if q.denominator == 1:
            return (1 + 0j, 1j, -1 + 0j, -1j)[int(q) % 4]
    return cmath.exp(2j * math.pi * float(t))


# ---------------------------------------------------------------------------
# phase assignments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constant:
    """The same unimodular amplitude ``u`` at every k (a global phase)."""

    u: complex = 1 + 0j

    def __post_init__(self):
        object.__setattr__(self, "u", complex(self.u))
        if abs(abs(self.u) - 1) > get_tol():
            raise ValueError("|u| must be 1")

    def phase(self, k: int) -> complex:
        return self.u

    def period(self) -> int:
        return 1


@dataclass(frozen=True)
class ResidueClasses:
    """Phase ``e^{2πi turns[k mod n]}`` on the class of ``k`` modulo ``n``."""

    n: int
    turns: tuple

    def __post_init__(self):
        turns = tuple(_turn(t) for t in self.turns)
        if self.n < 1 or len(turns) != self.n:
            raise ValueError("need exactly n turns, n >= 1")
        object.__setattr__(self, "turns", turns)

    @classmethod
    def hermitian(cls, n: int, half_turns) -> "ResidueClasses":
        """Build from turns of classes ``1 .. n//2`` (class 0 gets turn 0).

        Classes ``n - j`` receive ``-turn_j``; for even ``n`` the middle
        turn must be 0 or 1/2.
        """
        half_turns = [_turn(t) for t in half_turns]
        if len(half_turns) != n // 2:
            raise ValueError(f"expected {n // 2} turns")
        turns = [Fraction(0)] * n
        for j, t in enumerate(half_turns, start=1):
            turns[(-j) % n] = -t
            turns[j] = t
        return cls(n, tuple(turns))

    def phase(self, k: int) -> complex:
        return unit(self.turns[k % self.n])

    def period(self) -> int:
        return self.n


@dataclass(frozen=True)
class FiniteExceptions:
    """Phase ``default_turn`` everywhere except at finitely many ``k``.

    Exceptions given only for ``k > 0`` are mirrored to ``-k`` with the
    negated turn.
    """

    default_turn: object = 0
    exceptions: dict = field(default_factory=dict)

    def __post_init__(self):
        exc = {int(k): _turn(t) for k, t in dict(self.exceptions).items()}
        for k, t in list(exc.items()):
            if k > 0 and -k not in exc:
                exc[-k] = -t
        object.__setattr__(self, "default_turn", _turn(self.default_turn))
        object.__setattr__(self, "exceptions", exc)

    def phase(self, k: int) -> complex:
        return unit(self.exceptions.get(k, self.default_turn))

    def period(self) -> int:
        return 1


@dataclass(frozen=True)
class SetIndicator:
    """``inside_turn`` on a named integer set, ``outside_turn`` off it."""

    set_id: str = PD_DELTA
    inside_turn: object = 0
    outside_turn: object = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "inside_turn", _turn(self.inside_turn))
        object.__setattr__(self, "outside_turn", _turn(self.outside_turn))

    def phase(self, k: int) -> complex:
        if self.set_id != PD_DELTA:
            raise UnsupportedAssignment(f"unknown set {self.set_id!r}")
        return unit(self.inside_turn if pd_member(k) else self.outside_turn)


PhaseAssignment = Union[Constant, ResidueClasses, FiniteExceptions, SetIndicator]
Solution = Union[MixedMeasure, FormalCombSeries]


def _close(a: complex, b: complex) -> bool:
    return abs(a - b) <= get_tol()


def _check_symmetry(phases, intensity_at_zero: float) -> None:
    """A(0) = +√I(0) and A(-k) = conj A(k), checked on the phase rule."""
    if isinstance(phases, Constant):
        return  # global phase; the real class is u = ±1
    if isinstance(phases, ResidueClasses):
        n = phases.n
        for j in range(n):
            if not _close(phases.phase(-j), phases.phase(j).conjugate()):
                raise SymmetryViolation(f"class {j} and class {(-j) % n} are not conjugate")
    elif isinstance(phases, FiniteExceptions):
        d = unit(phases.default_turn)
        if not _close(d, d.conjugate()):
            raise SymmetryViolation("default phase must be real (±1)")
        for k in phases.exceptions:
            if not _close(phases.phase(-k), phases.phase(k).conjugate()):
                raise SymmetryViolation(f"exceptions at {k} and {-k} are not conjugate")
    elif isinstance(phases, SetIndicator):
        if phases.set_id != PD_DELTA:
            raise UnsupportedAssignment(f"unknown set {phases.set_id!r}")
        for t in (phases.inside_turn, phases.outside_turn):
            if not _close(unit(t), unit(t).conjugate()):
                raise SymmetryViolation("phases on a symmetric set must be ±1")
    else:
        raise UnsupportedAssignment(f"unsupported phase assignment {phases!r}")
    if intensity_at_zero > get_tol() and not _close(phases.phase(0), 1):
        raise SymmetryViolation("A(0) must be real and positive")


# ---------------------------------------------------------------------------
# amplitudes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Amplitudes:
    """``A(k) = √I(k)·phase(k)`` at positions ``k·spacing``."""

    spacing: Fraction
    phases: object
    intensity: MixedMeasure

    def __call__(self, k: int) -> complex:
        i = weight_at(self.intensity, self.spacing * k).real
        return math.sqrt(max(i, 0.0)) * self.phases.phase(k)

    def values(self, lo: int, hi: int) -> list:
        return [(k, self(k)) for k in range(lo, hi + 1)]

    def comb(self) -> MixedMeasure:
        """The amplitude measure ``Σ_k A(k) δ_{kb}`` as periodic comb plus exceptions."""
        if isinstance(self.phases, SetIndicator):
            raise UnsupportedAssignment("an aperiodic set indicator has no periodic amplitude comb")
        b = self.spacing
        icomb = self.intensity.combs[0] if self.intensity.combs else None
        if icomb is not None:
            q = int(icomb.spacing / b)
            ip = q * icomb.n
        else:
            q, ip = 1, 1
        period = math.lcm(ip, self.phases.period())
        base = np.zeros(period, dtype=complex)
        if icomb is not None:
            ks = np.arange(0, period, q)
            base[ks] = np.sqrt(np.maximum(icomb.array[(ks // q) % icomb.n].real, 0.0))

        def periodic(k: int) -> complex:
            if isinstance(self.phases, FiniteExceptions):
                ph = unit(self.phases.default_turn)
            else:
                ph = self.phases.phase(k)
            return base[k % period] * ph

        pattern = [periodic(k) for k in range(period)]
        special = {int(x / b) for x, _ in self.intensity.finite.atoms}
        if isinstance(self.phases, FiniteExceptions):
            special.update(self.phases.exceptions)
        atoms = []
        for k in sorted(special):
            c = self(k) - periodic(k)
            if abs(c) > get_tol():
                atoms.append((b * k, c))
        return canonicalize(
            MixedMeasure(combs=(PeriodicComb(b, tuple(pattern)),), finite=FiniteComb(tuple(atoms)))
        )


def _support_lattice(diffraction: MixedMeasure) -> Fraction:
    spans = [c.spacing for c in diffraction.combs] + [x for x, _ in diffraction.finite.atoms]
    return rat_gcd(*spans) or Fraction(1)


def validate(diffraction: MixedMeasure, phases, real_class: bool = True) -> Amplitudes:
    """Check a diffraction/phase pair and return its amplitudes.

    ``real_class=False`` admits the complex solution class and skips the
    A(0) and Hermitian conditions as well as the inversion symmetry of the
    input (the diffraction of a complex structure need not be symmetric).

    Raises NotADiffraction, IntensityMismatch, SymmetryViolation or
    UnsupportedAssignment.
    """
    if not isinstance(phases, (Constant, ResidueClasses, FiniteExceptions, SetIndicator)):
        raise UnsupportedAssignment(f"unsupported phase assignment {phases!r}")
    d = canonicalize(diffraction)
    if d.lebesgue != 0:
        raise NotADiffraction("diffraction has a continuous (Lebesgue) component")
    if not is_real(d):
        raise NotADiffraction("diffraction must be real")
    if not is_positive(d):
        raise NotADiffraction("diffraction must be positive")
    if real_class and not is_inversion_symmetric(d):
        raise NotADiffraction("diffraction must be inversion symmetric")
    b = _support_lattice(d)
    i0 = weight_at(d, 0).real
    if i0 <= get_tol():
        warnings.warn("I(0) = 0; the A(0) = 1 condition is vacuous", ZeroIntensityAtOrigin)
    if real_class:
        _check_symmetry(phases, i0)
    if isinstance(phases, SetIndicator):
        if phases.set_id != PD_DELTA:
            raise UnsupportedAssignment(f"unknown set {phases.set_id!r}")
        uniform = not d.finite.atoms and len(d.combs) == 1 and d.combs[0].n == 1
        if not uniform:
            raise IntensityMismatch("a set indicator needs a uniform intensity c·δ_bℤ")
        if b != 1:
            raise UnsupportedAssignment("set indicators are supported on the lattice ℤ only")
    amps = Amplitudes(b, phases, d)
    probe = range(-8, 9)
    for k in probe:
        a = amps(k)
        if abs(abs(a) ** 2 - weight_at(d, b * k).real) > 10 * get_tol():
            raise IntensityMismatch(f"|A({k})|² differs from I({k})")
    return amps


def solve(diffraction: MixedMeasure, phases, real_class: bool = True) -> Solution:
    """A structure with the given diffraction and phase choice.

    Returns a MixedMeasure, or a FormalCombSeries for set indicators over Δ.

    >>> from homometry.measure import delta, lebesgue
    >>> solve(delta(0), Constant(1)) == lebesgue()
    True
    """
    amps = validate(diffraction, phases, real_class)
    if isinstance(phases, SetIndicator):
        s_in, s_out = unit(phases.inside_turn).real, unit(phases.outside_turn).real
        root = math.sqrt(amps.intensity.combs[0].weights[0].real)
        if _close(s_in, s_out):
            return comb(1, (root * s_in,))
        # ω̂ = root·[(s_in − s_out)·δ_Δ + s_out·δ_ℤ]
        return root * (s_in - s_out) * pd_formal_fourier(0) + comb(1, (root * s_out,))
    try:
        return inverse_fourier(amps.comb())
    except NonTransformableFinitePart:
        raise UnsupportedAssignment(
            "exceptional amplitudes away from k = 0 leave the measure class"
        ) from None


def recover_phases(m: MixedMeasure):
    """Phase assignment read off the transform of a periodic comb ``m``.

    Returns ``(diffraction, ResidueClasses)`` such that solving with
    ``real_class=False`` reproduces the diffraction of ``m``.
    """
    m = canonicalize(m)
    if m.lebesgue != 0 or m.finite.atoms or len(m.combs) != 1:
        raise UnsupportedAssignment("phase recovery needs a single periodic comb")
    amp = fourier(m).combs[0]
    diff = diffraction(m)
    b = _support_lattice(diff)
    q = b / amp.spacing
    if q.denominator != 1:
        raise RuntimeError("diffraction lattice is finer than the amplitude lattice")
    q = int(q)
    turns = []
    for j in range(amp.n):
        w = amp.weights[(j * q) % amp.n]
        turns.append(cmath.phase(w) / (2 * math.pi) if abs(w) > get_tol() else 0.0)
    return diff, ResidueClasses(amp.n, tuple(turns))


# ---------------------------------------------------------------------------
# four-periodic table
# ---------------------------------------------------------------------------

def table_omega_alpha(t_alpha, e: int) -> MixedMeasure:
    """``¼ Σ_k (1 + 2cos(2π(t_α + k/4)) + e·cos(πk)) δ_{k/4}``, canonical.

    >>> table_omega_alpha(0, 1) == comb(1)
    True
    """
    if e not in (1, -1):
        raise ValueError("e must be +1 or -1")
    t = _turn(t_alpha)
    weights = [
        0.25 * (1 + 2 * unit(t + Fraction(k, 4)).real + e * (-1) ** k) for k in range(4)
    ]
    return comb(Fraction(1, 4), weights)


def table_cells():
    """All eight ``(t_α, e)`` cells with their measures, in table order."""
    return [
        (Fraction(j, 4), e, table_omega_alpha(Fraction(j, 4), e))
        for j in range(4)
        for e in (1, -1)
    ]


def solve_experimental_delta_set(set_id: str = PD_DELTA, as_measure: bool = False) -> Solution:
    """Treat δ_Δ itself as a diffraction and return ``ω = δ̂_Δ``.

    This lies outside the backward transformable scheme; the result is
    flagged ``experimental`` and is not a measure.
    """
    if set_id != PD_DELTA:
        raise UnsupportedAssignment(f"unknown set {set_id!r}")
    if as_measure:
        raise NotAMeasure("δ̂_Δ is a tempered distribution, not a measure")
    s = pd_formal_fourier(0)
    return FormalCombSeries(s.head, s.damping, s.coefficient, experimental=True)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _turn_to_json(t):
    if isinstance(t, Fraction):
        return f"{t.numerator}/{t.denominator}"
    return float(t)


def _turn_from_json(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float, str)):
        raise SchemaError(f"{where}: turn must be a number or 'p/q' string")
    try:
        return _turn(v)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: bad turn {v!r}") from None


def phases_to_dict(p) -> dict:
    if isinstance(p, Constant):
        return {"kind": "constant", "u": [p.u.real, p.u.imag]}
    if isinstance(p, ResidueClasses):
        return {"kind": "residue", "n": p.n, "turns": [_turn_to_json(t) for t in p.turns]}
    if isinstance(p, FiniteExceptions):
        return {
            "kind": "exceptions",
            "default_turn": _turn_to_json(p.default_turn),
            "exceptions": {str(k): _turn_to_json(t) for k, t in sorted(p.exceptions.items())},
        }
    if isinstance(p, SetIndicator):
        return {
            "kind": "indicator",
            "set": p.set_id,
            "inside_turn": _turn_to_json(p.inside_turn),
            "outside_turn": _turn_to_json(p.outside_turn),
        }
    raise UnsupportedAssignment(f"unsupported phase assignment {p!r}")


def phases_from_dict(d):
    """Parse ``{"kind": "constant|residue|exceptions|indicator", ...}``."""
    if not isinstance(d, dict) or "kind" not in d:
        raise SchemaError("phase assignment must be an object with a 'kind'")
    kind = d["kind"]
    try:
        if kind == "constant":
            u = d.get("u", [1, 0])
            if isinstance(u, (int, float)):
                u = [u, 0]
            return Constant(complex(u[0], u[1]))
        if kind == "residue":
            turns = d["turns"]
            if not isinstance(turns, list):
                raise SchemaError("turns must be a list")
            return ResidueClasses(
                int(d["n"]), tuple(_turn_from_json(t, f"turns[{i}]") for i, t in enumerate(turns))
            )
        if kind == "exceptions":
            exc = d.get("exceptions", {})
            if not isinstance(exc, dict):
                raise SchemaError("exceptions must be an object")
            return FiniteExceptions(
                _turn_from_json(d.get("default_turn", 0), "default_turn"),
                {int(k): _turn_from_json(v, f"exceptions[{k}]") for k, v in exc.items()},
            )
        if kind == "indicator":
            return SetIndicator(
                d.get("set", PD_DELTA),
                _turn_from_json(d.get("inside_turn", 0), "inside_turn"),
                _turn_from_json(d.get("outside_turn", "1/2"), "outside_turn"),
            )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"bad {kind} assignment: {exc}") from None
    raise SchemaError(f"unknown kind {kind!r}")
