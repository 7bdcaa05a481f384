"""Complex roots of the integer polynomials, single and batched.

Batch solving goes through stacked companion-matrix eigenvalues (one LAPACK
call per degree class) followed by vectorized Newton polishing.  Multiple
roots stall Newton at the evaluation noise floor (|p| ~ 1e-14 permits an
error radius of roughly noise^(1/m)), so the single-polynomial path first
splits off repeated factors exactly: the coefficients are integers, which
makes the square-free decomposition an exact rational computation, and
every root handed to the numerics is then simple.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

import numpy as np

from . import words as _words
from .polynomials import IntPolynomial, parry_polynomial, remove_trivial_factors

_RESIDUAL_TOL = 1e-10


class RootfindingError(RuntimeError):
    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities, sorted by (|z| desc, arg asc)."""

    roots: tuple[tuple[complex, int], ...]
    residual: float

    @property
    def total_count(self) -> int:
        return sum(m for _, m in self.roots)

    def flat(self) -> list[complex]:
        out = []
        for z, m in self.roots:
            out.extend([z] * m)
        return out


def _companion_eigs(desc: np.ndarray) -> np.ndarray:
    # desc: (m, d+1) monic descending coefficient rows
    m, w = desc.shape
    d = w - 1
    a = np.zeros((m, d, d))
    a[:, 0, :] = -desc[:, 1:] / desc[:, :1]
    idx = np.arange(d - 1)
    a[:, idx + 1, idx] = 1.0
    return np.linalg.eigvals(a)


def _polish(desc: np.ndarray, roots: np.ndarray, iters: int = 6) -> np.ndarray:
    # Vectorized Newton; steps clipped so a bad derivative cannot fling an
    # iterate across the plane.  Multiple roots stall harmlessly.
    for _ in range(iters):
        val = np.zeros_like(roots) + desc[:, 0:1]
        der = np.zeros_like(roots)
        for j in range(1, desc.shape[1]):
            der = der * roots + val
            val = val * roots + desc[:, j:j + 1]
        step = np.where(np.abs(der) > 1e-30, val / np.where(der == 0, 1, der), 0)
        mag = np.abs(step)
        step = np.where(mag > 0.1, step * (0.1 / np.where(mag == 0, 1, mag)), step)
        roots = roots - step
    return roots


def batch_all_roots(polys: list[IntPolynomial]) -> list[np.ndarray]:
    """Roots of many monic polynomials, grouped by degree for stacked
    eigenvalue calls.  Returns one unsorted root array per input."""
    out: list = [None] * len(polys)
    by_degree: dict[int, list[int]] = {}
    for i, p in enumerate(polys):
        d = p.degree
        if d < 1:
            out[i] = np.zeros(0, dtype=complex)
        else:
            by_degree.setdefault(d, []).append(i)
    for d, idxs in by_degree.items():
        desc = np.array([polys[i].coeffs_descending() for i in idxs], dtype=float)
        roots = _companion_eigs(desc)
        roots = _polish(desc, roots)
        for row, i in enumerate(idxs):
            out[i] = roots[row]
    return out


def _single_roots(p: IntPolynomial) -> np.ndarray:
    return batch_all_roots([p])[0]


def _poly_scale(p: IntPolynomial, z: complex) -> float:
    return sum(abs(c) for c in p.coeffs) * max(1.0, abs(z)) ** p.degree


# -- exact rational polynomial helpers (ascending Fraction coefficients) --

def _frac_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _frac_divmod(a: list[Fraction], b: list[Fraction]):
    r = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(r) >= len(b) and _frac_trim(r):
        shift = len(r) - len(b)
        factor = r[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            r[shift + i] -= factor * c
        r.pop()
        _frac_trim(r)
    return _frac_trim(q), r


def _frac_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while _frac_trim(b):
        _, rem = _frac_divmod(a, b)
        a, b = b, rem
    lead = a[-1]
    return [c / lead for c in a]


def _frac_derivative(a: list[Fraction]) -> list[Fraction]:
    return [c * i for i, c in enumerate(a)][1:] or [Fraction(0)]


def _to_int_poly(a: list[Fraction]) -> IntPolynomial:
    denom = 1
    for c in a:
        denom = denom * c.denominator // _int_gcd(denom, c.denominator)
    ints = [int(c * denom) for c in a]
    content = 0
    for c in ints:
        content = _int_gcd(content, abs(c))
    if content > 1:
        ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPolynomial(tuple(ints))


def square_free_decomposition(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm: p (up to constant) = product of f_i^i with the f_i
    pairwise coprime and square-free.  Exact, so every returned factor has
    only simple roots."""
    if p.degree < 1:
        raise ValueError("degree must be at least 1")
    a = [Fraction(c) for c in p.coeffs]
    da = _frac_derivative(a)
    g = _frac_gcd(a, da)
    out = []
    if len(g) == 1:
        return [(_to_int_poly(a), 1)]
    b, _ = _frac_divmod(a, g)
    c, _ = _frac_divmod(da, g)
    d = [x - y for x, y in zip_longest_zero(c, _frac_derivative(b))]
    i = 1
    while len(b) > 1:
        f = _frac_gcd(b, d)
        if len(f) > 1:
            out.append((_to_int_poly(f), i))
        b, _ = _frac_divmod(b, f)
        c, _ = _frac_divmod(d, f)
        d = [x - y for x, y in zip_longest_zero(c, _frac_derivative(b))]
        i += 1
    return out


def zip_longest_zero(a, b):
    n = max(len(a), len(b))
    za = list(a) + [Fraction(0)] * (n - len(a))
    zb = list(b) + [Fraction(0)] * (n - len(b))
    return zip(za, zb)


def all_roots(p: IntPolynomial) -> RootSet:
    """Every complex root with exact multiplicity; the repeated-factor
    structure is computed in exact arithmetic first, so the numerics only
    ever chase simple roots."""
    if p.degree < 1:
        raise ValueError("degree must be at least 1")
    resolved: list[tuple[complex, int]] = []
    residual = 0.0
    for factor, mult in square_free_decomposition(p):
        scale = sum(abs(c) for c in factor.coeffs)
        for z in _single_roots(factor):
            z = complex(z)
            if abs(z.imag) < 1e-10 and abs(factor(z.real)) <= abs(factor(z)):
                z = complex(z.real, 0.0)
            resolved.append((z, mult))
            residual = max(residual, abs(factor(z)) / scale)
    if residual > _RESIDUAL_TOL:
        raise RootfindingError(
            f"root polish stalled at residual {residual:.3e}",
            best=resolved, residual=residual)
    resolved.sort(key=lambda zm: (-abs(zm[0]), cmath.phase(zm[0])))
    return RootSet(tuple(resolved), residual)


def _newton_real(p: IntPolynomial, x: float, iters: int = 40) -> float:
    dp = p.derivative()
    for _ in range(iters):
        v = p(x)
        dv = dp(x)
        if dv == 0:
            break
        step = v / dv
        if abs(step) > 0.05:
            step = 0.05 if step > 0 else -0.05
        x -= step
        if abs(step) < 1e-16:
            break
    return x


def leading_root(p: IntPolynomial) -> float:
    """Largest real root in [1 - 1e-9, 2 + 1e-9], the tent-map slope.

    The factor (z-1) is removed first; a descending sign-change scan plus
    bisection brackets the root without leaning on the general eigenvalue
    solver, which is consulted only as a cross-check.
    """
    lo, hi = 1.0 - 1e-9, 2.0 + 1e-9
    q = remove_trivial_factors(p)
    had_one = q.degree < p.degree
    if q.degree == 0:
        if had_one:
            return 1.0
        raise ValueError("no real root in [1, 2]: constant polynomial")

    best = None
    n = 1024 + 32 * q.degree
    xs = np.linspace(hi, lo, n)
    vals = np.polyval(np.array(q.coeffs_descending(), dtype=float), xs)
    sign_hi = np.sign(vals[0]) or 1.0
    flips = np.nonzero(np.sign(vals) * sign_hi < 0)[0]
    if flips.size:
        i = flips[0]
        a, b = xs[i], xs[i - 1]
        fa = q(a)
        for _ in range(80):
            mid = 0.5 * (a + b)
            fm = q(mid)
            if fm == 0:
                a = b = mid
                break
            if (fm < 0) == (fa < 0):
                a, fa = mid, fm
            else:
                b = mid
        best = _newton_real(q, 0.5 * (a + b))

    # cross-check against the eigenvalue route; prefer a larger valid root
    roots = _single_roots(q)
    real = [r.real for r in roots
            if abs(r.imag) < 1e-8 and lo <= r.real <= hi]
    if real:
        cand = _newton_real(q, max(real))
        if best is None or cand > best + 1e-9:
            best = cand
    if best is not None and lo <= best <= hi \
            and abs(q(best)) <= 1e-8 * _poly_scale(q, best):
        return float(best)
    if had_one:
        return 1.0
    raise ValueError("no real root in [1 - 1e-9, 2 + 1e-9]")


@dataclass(frozen=True)
class DriftReport:
    """Root motion under repeated concatenation.

    rows hold (n, interior_dist, leading_dist): the distance from the root
    set of the n-fold tail concatenation to the chosen interior target, and
    the distance between leading roots of the n-fold head concatenation and
    the head word alone.
    """

    z0: complex
    rows: tuple[tuple[int, float, float], ...]


def root_drift_harness(w1, w2, n_max: int, z0: complex | None = None) -> DriftReport:
    """Track how concatenation powers drag roots, for n = 0..n_max.

    Both words need positive cumulative sign so every concatenation stays
    admissible; inadmissible combinations raise from the polynomial
    constructors.
    """
    w1 = _words._as_word(w1)
    w2 = _words._as_word(w2)
    p2 = parry_polynomial(w2)
    if z0 is None:
        interior = [z for z, _ in all_roots(remove_trivial_factors(p2, True)).roots]
        if not interior:
            raise ValueError("w2 polynomial has only trivial roots")
        z0 = min(interior, key=abs)
    lead1 = leading_root(parry_polynomial(w1))
    rows = []
    for n in range(n_max + 1):
        tail = _words.Word.periodic(w1.letters + w2.letters * n)
        head = _words.Word.periodic(w1.letters * n + w2.letters) if n else w2
        tail_roots = all_roots(parry_polynomial(tail)).flat()
        interior_dist = min(abs(z - z0) for z in tail_roots)
        leading_dist = abs(leading_root(parry_polynomial(head)) - lead1)
        rows.append((n, interior_dist, leading_dist))
    return DriftReport(z0=z0, rows=tuple(rows))
