"""Exact data model for mixed measures on the real line.

A :class:`MixedMeasure` is the sum of

* a multiple of Lebesgue measure ``lebesgue * λ``,
* lattice-periodic Dirac combs (:class:`PeriodicComb`), and
* a finite Dirac comb (:class:`FiniteComb`).

Atom positions are exact rationals (:class:`fractions.Fraction`); weights are
Python complex numbers compared with an absolute tolerance (default ``1e-9``,
see :func:`homometry.settings`).

Canonical form: at most one periodic comb, reduced to its minimal period and
to the coarsest lattice carrying its support; finite atoms sorted, merged and
free of negligible weights.  Two measures are equal iff their canonical forms
agree field by field within tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from numbers import Number

import numpy as np

from ._config import get_guard, get_tol
from .exceptions import RefinementTooLarge, SchemaError

__all__ = [
    "PeriodicComb",
    "FiniteComb",
    "MixedMeasure",
    "canonicalize",
    "add",
    "scale",
    "reflect",
    "reflect_conjugate",
    "restrict",
    "weight_at",
    "is_real",
    "is_positive",
    "is_inversion_symmetric",
    "lebesgue",
    "comb",
    "delta",
    "zero",
    "strip_finite",
    "rat",
    "rat_gcd",
    "rat_lcm",
    "common_grid",
    "to_dict",
    "from_dict",
    "dumps",
    "loads",
]


def rat(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not positions")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_gcd(*values: Fraction) -> Fraction:
    """Largest rational g with every value an integer multiple of g."""
    values = [abs(Fraction(v)) for v in values if v != 0]
    if not values:
        return Fraction(0)
    den = math.lcm(*(v.denominator for v in values))
    return Fraction(math.gcd(*(int(v * den) for v in values)), den)


def rat_lcm(*values: Fraction) -> Fraction:
    values = [abs(Fraction(v)) for v in values]
    den = math.lcm(*(v.denominator for v in values))
    return Fraction(math.lcm(*(int(v * den) for v in values)), den)


def _cplx(w) -> complex:
    z = complex(w)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite weight {w!r}")
    return z


def _snap(z: complex, tol: float) -> complex:
    re = 0.0 if abs(z.real) <= tol else z.real
    im = 0.0 if abs(z.imag) <= tol else z.imag
    return complex(re, im)


@dataclass(frozen=True)
class PeriodicComb:
    """Weights ``w_j`` placed at ``spacing * (j + m*N)`` for every integer ``m``."""

    spacing: Fraction
    weights: tuple

    def __post_init__(self):
        spacing = rat(self.spacing)
        if spacing <= 0:
            raise ValueError("spacing must be positive")
        weights = tuple(_cplx(w) for w in self.weights)
        if not weights:
            raise ValueError("a periodic comb needs at least one weight")
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def period(self) -> Fraction:
        return self.spacing * self.n

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.weights, dtype=complex)

    def weight_at(self, x) -> complex:
        q = rat(x) / self.spacing
        if q.denominator != 1:
            return 0j
        return self.weights[int(q) % self.n]


@dataclass(frozen=True)
class FiniteComb:
    atoms: tuple = ()

    def __post_init__(self):
        atoms = tuple((rat(x), _cplx(w)) for x, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def weight_at(self, x) -> complex:
        x = rat(x)
        return sum((w for y, w in self.atoms if y == x), 0j)


@dataclass(frozen=True, eq=False)
class MixedMeasure:
    lebesgue: complex = 0j
    combs: tuple = ()
    finite: FiniteComb = field(default_factory=FiniteComb)

    def __post_init__(self):
        object.__setattr__(self, "lebesgue", _cplx(self.lebesgue))
        object.__setattr__(self, "combs", tuple(self.combs))
        if not isinstance(self.finite, FiniteComb):
            object.__setattr__(self, "finite", FiniteComb(self.finite))

    # tolerance-based equality on canonical forms
    def isclose(self, other: "MixedMeasure", tol: float | None = None) -> bool:
        tol = get_tol() if tol is None else tol
        a, b = canonicalize(self), canonicalize(other)
        if abs(a.lebesgue - b.lebesgue) > tol:
            return False
        # compare on a common grid: canonical periods of two measures within
        # tol of each other may still differ
        if a.combs and b.combs:
            _, _, (p, q) = common_grid(a.combs + b.combs)
            if np.max(np.abs(p - q)) > tol:
                return False
        elif a.combs or b.combs:
            if np.max(np.abs((a.combs or b.combs)[0].array)) > tol:
                return False
        fa, fb = dict(a.finite.atoms), dict(b.finite.atoms)
        return all(abs(fa.get(x, 0) - fb.get(x, 0)) <= tol for x in fa.keys() | fb.keys())

    def __eq__(self, other):
        if not isinstance(other, MixedMeasure):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, MixedMeasure):
            return NotImplemented
        return add(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        if not isinstance(other, MixedMeasure):
            return NotImplemented
        return add(self, scale(other, -1))

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return scale(self, c)

    __rmul__ = __mul__

    def __repr__(self):
        return f"MixedMeasure({describe(self)})"

    @property
    def is_zero(self) -> bool:
        m = canonicalize(self)
        return m.lebesgue == 0 and not m.combs and not m.finite.atoms


def _fmt(z: complex, digits: int = 12) -> str:
    if z.imag == 0:
        return f"{z.real:.{digits}g}"
    if z.real == 0:
        return f"{z.imag:.{digits}g}i"
    return f"({z.real:.{digits}g}{z.imag:+.{digits}g}i)"


def describe(m: MixedMeasure) -> str:
    """Short human-readable form, e.g. ``2λ + comb(1, [-1])``."""
    parts = []
    if m.lebesgue:
        parts.append(f"{_fmt(m.lebesgue)}λ")
    for c in m.combs:
        ws = ", ".join(_fmt(w) for w in c.weights[:8])
        if c.n > 8:
            ws += f", ... ({c.n} weights)"
        parts.append(f"comb({c.spacing}, [{ws}])")
    for x, w in m.finite.atoms:
        parts.append(f"{_fmt(w)}δ[{x}]")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# common refinement and canonical form
# ---------------------------------------------------------------------------

def common_grid(combs, check_guard: bool = True):
    """Refine combs onto a shared lattice.

    Returns ``(g, M, arrays)``: the fine spacing ``g``, the number ``M`` of
    grid points in one common full period, and one length-``M`` weight array
    per comb.
    """
    den = math.lcm(*(c.spacing.denominator for c in combs))
    steps = [int(c.spacing * den) for c in combs]
    g_int = math.gcd(*steps)
    l_int = math.lcm(*(s * c.n for s, c in zip(steps, combs)))
    m = l_int // g_int
    if check_guard and m > get_guard():
        raise RefinementTooLarge(
            f"common refinement needs {m} atoms per period (guard {get_guard()})"
        )
    arrays = []
    for s, c in zip(steps, combs):
        step = s // g_int
        arr = np.zeros(m, dtype=complex)
        arr[::step] = np.tile(c.array, m // (step * c.n))
        arrays.append(arr)
    return Fraction(g_int, den), m, arrays


def _divisors(n: int):
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _reduce_comb(g: Fraction, w: np.ndarray, tol: float):
    """Minimal-period, coarsest-lattice comb for pattern ``w`` on spacing ``g``."""
    w = np.where(np.abs(w.real) > tol, w.real, 0.0) + 1j * np.where(
        np.abs(w.imag) > tol, w.imag, 0.0
    )
    if not np.any(np.abs(w) > tol):
        return None
    m = len(w)
    for d in _divisors(m):
        if d == m or np.max(np.abs(w - np.roll(w, -d))) <= tol:
            w = w[:d]
            break
    nz = np.flatnonzero(np.abs(w) > tol)
    h = math.gcd(len(w), *(int(i) for i in nz))
    return PeriodicComb(g * h, tuple(complex(z) for z in w[::h]))


def canonicalize(m: MixedMeasure) -> MixedMeasure:
    """Return the canonical representative of ``m``.

    >>> canonicalize(MixedMeasure(combs=[PeriodicComb(Fraction(1, 2), (1, 0))]))
    MixedMeasure(comb(1, [1]))
    """
    tol = get_tol()
    leb = _snap(m.lebesgue, tol)
    combs = [c for c in m.combs if np.max(np.abs(c.array)) > tol]
    out_combs = ()
    if combs:
        g, _, arrays = common_grid(combs, check_guard=len(combs) > 1)
        reduced = _reduce_comb(g, reduce(np.add, arrays), tol)
        if reduced is not None:
            out_combs = (reduced,)
    acc: dict[Fraction, complex] = {}
    for x, w in m.finite.atoms:
        acc[x] = acc.get(x, 0j) + w
    atoms = tuple(
        (x, _snap(acc[x], tol)) for x in sorted(acc) if abs(_snap(acc[x], tol)) > tol
    )
    return MixedMeasure(leb, out_combs, FiniteComb(atoms))


# ---------------------------------------------------------------------------
# constructors and linear operations
# ---------------------------------------------------------------------------

def zero() -> MixedMeasure:
    return MixedMeasure()


def lebesgue(c=1) -> MixedMeasure:
    return canonicalize(MixedMeasure(lebesgue=c))


def comb(spacing=1, weights=(1,)) -> MixedMeasure:
    """Periodic comb; ``comb(Fraction(1, 4), (0, 1, 0, 0))`` is δ_{1/4} ∗ δ_ℤ."""
    return canonicalize(MixedMeasure(combs=(PeriodicComb(rat(spacing), tuple(weights)),)))


def delta(x=0, w=1) -> MixedMeasure:
    return canonicalize(MixedMeasure(finite=FiniteComb(((rat(x), w),))))


def add(m1: MixedMeasure, m2: MixedMeasure) -> MixedMeasure:
    return canonicalize(
        MixedMeasure(
            m1.lebesgue + m2.lebesgue,
            m1.combs + m2.combs,
            FiniteComb(m1.finite.atoms + m2.finite.atoms),
        )
    )


def scale(m: MixedMeasure, c) -> MixedMeasure:
    c = _cplx(c)
    return canonicalize(
        MixedMeasure(
            m.lebesgue * c,
            tuple(PeriodicComb(p.spacing, tuple(w * c for w in p.weights)) for p in m.combs),
            FiniteComb(tuple((x, w * c) for x, w in m.finite.atoms)),
        )
    )


def _reflect(m: MixedMeasure, conj: bool) -> MixedMeasure:
    f = (lambda z: z.conjugate()) if conj else (lambda z: z)
    combs = tuple(
        PeriodicComb(p.spacing, tuple(f(p.weights[(-k) % p.n]) for k in range(p.n)))
        for p in m.combs
    )
    finite = FiniteComb(tuple((-x, f(w)) for x, w in m.finite.atoms))
    return canonicalize(MixedMeasure(f(m.lebesgue), combs, finite))


def reflect(m: MixedMeasure) -> MixedMeasure:
    """The measure x ↦ m(-x), without conjugation."""
    return _reflect(m, conj=False)


def reflect_conjugate(m: MixedMeasure) -> MixedMeasure:
    """The measure m̃: x ↦ conj(m(-x))."""
    return _reflect(m, conj=True)


def strip_finite(m: MixedMeasure) -> MixedMeasure:
    return canonicalize(MixedMeasure(m.lebesgue, m.combs))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def weight_at(m: MixedMeasure, x) -> complex:
    """Point mass of ``m`` at ``x`` (the Lebesgue part carries none)."""
    x = rat(x)
    return sum((c.weight_at(x) for c in m.combs), 0j) + m.finite.weight_at(x)


def _comb_window(c: PeriodicComb, a: Fraction, b: Fraction):
    lo = math.ceil(a / c.spacing)
    hi = math.floor(b / c.spacing)
    if hi < lo:
        return np.arange(0), np.zeros(0, dtype=complex)
    idx = np.arange(lo, hi + 1)
    return idx, c.array[idx % c.n]


def window_atoms(m: MixedMeasure, a, b):
    """All atoms of ``m`` in ``[a, b]`` as ``(g, idx, weights)`` with positions ``g*idx``.

    Comb and finite atoms sharing a position are summed; zero weights are kept
    out.  Vectorised; avoids building one Fraction per atom.
    """
    a, b = rat(a), rat(b)
    m = canonicalize(m)
    fin = [(x, w) for x, w in m.finite.atoms if a <= x <= b]
    g = rat_gcd(*(c.spacing for c in m.combs), *(x for x, _ in fin)) or Fraction(1)
    acc_idx, acc_w = [], []
    for c in m.combs:
        idx, w = _comb_window(c, a, b)
        step = int(c.spacing / g)
        acc_idx.append(idx * step)
        acc_w.append(w)
    if fin:
        acc_idx.append(np.array([int(x / g) for x, _ in fin]))
        acc_w.append(np.array([w for _, w in fin], dtype=complex))
    if not acc_idx:
        return g, np.arange(0), np.zeros(0, dtype=complex)
    idx = np.concatenate(acc_idx)
    w = np.concatenate(acc_w)
    uniq, inv = np.unique(idx, return_inverse=True)
    summed = np.zeros(len(uniq), dtype=complex)
    np.add.at(summed, inv, w)
    keep = np.abs(summed) > get_tol()
    return g, uniq[keep], summed[keep]


def restrict(m: MixedMeasure, a, b):
    """Atoms of ``m`` in the closed interval ``[a, b]`` and the Lebesgue mass there.

    >>> atoms, mass = restrict(comb(1), 0, Fraction(5, 2))
    >>> [(str(x), w) for x, w in atoms], mass
    ([('0', (1+0j)), ('1', (1+0j)), ('2', (1+0j))], 0j)
    """
    a, b = rat(a), rat(b)
    if not a < b:
        raise ValueError("restrict needs a < b")
    g, idx, w = window_atoms(m, a, b)
    atoms = FiniteComb(tuple((g * int(i), complex(z)) for i, z in zip(idx, w)))
    return atoms, canonicalize(m).lebesgue * float(b - a)


def _weights(m: MixedMeasure):
    m = canonicalize(m)
    ws = [m.lebesgue]
    for c in m.combs:
        ws.extend(c.weights)
    ws.extend(w for _, w in m.finite.atoms)
    return ws


def is_real(m: MixedMeasure) -> bool:
    tol = get_tol()
    return all(abs(w.imag) <= tol for w in _weights(m))


def is_positive(m: MixedMeasure) -> bool:
    """Real with every weight >= -tol.

    Comb and finite atoms that coincide are judged on their sum.
    """
    if not is_real(m):
        return False
    tol = get_tol()
    m = canonicalize(m)
    if m.lebesgue.real < -tol:
        return False
    # finite atoms cannot offset a negative comb weight on a whole coset
    if any(w.real < -tol for c in m.combs for w in c.weights):
        return False
    return all(weight_at(m, x).real >= -tol for x, _ in m.finite.atoms)


def is_inversion_symmetric(m: MixedMeasure) -> bool:
    return reflect(m) == m


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _fmt_rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _round(v: float, digits: int | None) -> float:
    if digits is None:
        return float(v)
    r = float(f"{v:.{digits}g}")
    return 0.0 if r == 0 else r


def _pair(z: complex, digits) -> list:
    return [_round(z.real, digits), _round(z.imag, digits)]


def to_dict(m: MixedMeasure, digits: int | None = 12) -> dict:
    """JSON-ready dict: ``{"lebesgue":[re,im],"combs":[...],"finite":[...]}``."""
    m = canonicalize(m)
    return {
        "lebesgue": _pair(m.lebesgue, digits),
        "combs": [
            {"spacing": _fmt_rat(c.spacing), "weights": [_pair(w, digits) for w in c.weights]}
            for c in m.combs
        ],
        "finite": [[_fmt_rat(x), _pair(w, digits)] for x, w in m.finite.atoms],
    }


def _parse_cplx(v, where: str) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if (
        isinstance(v, (list, tuple))
        and len(v) == 2
        and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v)
    ):
        try:
            return _cplx(complex(v[0], v[1]))
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    raise SchemaError(f"{where}: expected [re, im], got {v!r}")


def _parse_rat(v, where: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise SchemaError(f"{where}: expected rational string 'p/q', got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: bad rational {v!r}") from None


def from_dict(d) -> MixedMeasure:
    if not isinstance(d, dict):
        raise SchemaError("measure must be a JSON object")
    unknown = set(d) - {"lebesgue", "combs", "finite"}
    if unknown:
        raise SchemaError(f"unknown keys {sorted(unknown)}")
    leb = _parse_cplx(d.get("lebesgue", [0, 0]), "lebesgue")
    combs = []
    raw_combs = d.get("combs", [])
    if not isinstance(raw_combs, list):
        raise SchemaError("combs must be a list")
    for i, c in enumerate(raw_combs):
        if not isinstance(c, dict) or set(c) != {"spacing", "weights"}:
            raise SchemaError(f"combs[{i}]: expected keys spacing, weights")
        spacing = _parse_rat(c["spacing"], f"combs[{i}].spacing")
        if spacing <= 0:
            raise SchemaError(f"combs[{i}].spacing must be positive")
        if not isinstance(c["weights"], list) or not c["weights"]:
            raise SchemaError(f"combs[{i}].weights must be a non-empty list")
        ws = [_parse_cplx(w, f"combs[{i}].weights[{j}]") for j, w in enumerate(c["weights"])]
        combs.append(PeriodicComb(spacing, tuple(ws)))
    atoms = []
    raw_fin = d.get("finite", [])
    if not isinstance(raw_fin, list):
        raise SchemaError("finite must be a list")
    for i, a in enumerate(raw_fin):
        if not isinstance(a, list) or len(a) != 2:
            raise SchemaError(f"finite[{i}]: expected [position, [re, im]]")
        atoms.append((_parse_rat(a[0], f"finite[{i}]"), _parse_cplx(a[1], f"finite[{i}]")))
    return canonicalize(MixedMeasure(leb, tuple(combs), FiniteComb(tuple(atoms))))


def dumps(m: MixedMeasure, digits: int | None = 12, **kwargs) -> str:
    return json.dumps(to_dict(m, digits), **kwargs)


def loads(s: str) -> MixedMeasure:
    try:
        d = json.loads(s)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return from_dict(d)
