"""Certified exclusion for the pair-of-affine-maps limit set, and gap radii.

For |z| < 1 the maps f(x) = zx + 1 and g(x) = zx - 1 generate a limit set
contained in the ball of radius 1/(1-|z|) around 0.  Membership of 0 in the
limit set is probed by running the inverse maps x -> (x -+ 1)/z backwards
from 0: if every inverse orbit of a given depth leaves the ball, the point
is certifiably outside ("excluded"); if some orbit stays inside, membership
remains open at that depth ("plausible" is not a certificate).

The minimum is reported over orbits with the first branch fixed, since the
two choices at the first step are mirror images (x -> -x) and carry the
same moduli; depth counts the remaining free branchings, so an orbit has
depth + 1 steps and there are 2^depth of them.

Gap radii around algebraic points follow the two-branch formula
r(x) = min{c / ((2n^2+3n+1) |x|^n e), 1/(n+1)} with |x|^n replaced by |x|
when |x| <= 1, where c is the minimal nonzero modulus in the ring of x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dataset

_RING_KINDS = ("integer", "half")
_RING_DS = (1, 2, 3, 5)
_BOUNDARY_FUZZ = 1e-12
_SELF_TOL = 1e-9


@dataclass(frozen=True)
class IfsQuery:
    z: complex
    depth: int
    verdict: str  # excluded | plausible | undetermined
    exclusion_min: float
    ball_radius: float
    survivors: int  # full-depth orbits that never left the ball


def exclusion_test(z: complex, depth: int) -> IfsQuery:
    """Branch-and-bound minimum of |v(0)| over depth-level inverse words.

    A partial orbit that has left the ball can never return (outside the
    ball the inverse maps expand moduli), so such a branch is dropped as
    soon as no completion can undercut the best final modulus seen so far.
    The reported minimum is exact.
    """
    z = complex(z)
    az = abs(z)
    if az == 0.0 or az >= 1.0:
        raise ValueError("exclusion_test needs 0 < |z| < 1")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    radius = 1.0 / (1.0 - az)
    inv = 1.0 / z
    best = math.inf
    survivors = 0

    def final_lower_bound(t: float, m: int) -> float:
        for _ in range(m):
            t = (t - 1.0) / az
            if t <= 0.0:
                return 0.0
        return t

    def walk(x: complex, m: int, inside: bool):
        nonlocal best, survivors
        t = abs(x)
        inside = inside and t <= radius + _BOUNDARY_FUZZ
        if m == 0:
            if t < best:
                best = t
            if inside:
                survivors += 1
            return
        if not inside and final_lower_bound(t, m) > best:
            return
        walk((x - 1.0) * inv, m - 1, inside)
        walk((x + 1.0) * inv, m - 1, inside)

    walk(-inv, depth, True)  # first inverse step with its sign fixed

    if survivors > 0:
        verdict = "plausible"
    elif best > radius:
        verdict = "excluded"
    else:
        verdict = "undetermined"
    return IfsQuery(z, depth, verdict, best, radius, survivors)


# ---------------------------------------------------------------------------
# gap radii

@dataclass(frozen=True)
class GapSpec:
    ring_kind: str  # "integer": Z[sqrt(-D)]; "half": Z[(1+sqrt(-D))/2]
    d: int
    x: complex
    n: int
    c: float
    r: float


def _check_ring(ring_kind: str, d: int):
    if ring_kind not in _RING_KINDS:
        raise ValueError(f"ring_kind must be one of {_RING_KINDS}")
    if d not in _RING_DS:
        raise ValueError(f"D must be one of {_RING_DS}")


def _ring_element(ring_kind: str, d: int, a: int, b: int) -> complex:
    if ring_kind == "integer":
        return complex(a, b * math.sqrt(d))
    return complex(a + b / 2.0, b * math.sqrt(d) / 2.0)


def min_ring_modulus(ring_kind: str, d: int, search: int = 4) -> float:
    """Minimal nonzero modulus, by searching a lattice patch around 0.

    The patch is large enough because coefficients beyond it only grow
    either coordinate of the element.
    """
    _check_ring(ring_kind, d)
    best = math.inf
    for a in range(-search, search + 1):
        for b in range(-search, search + 1):
            if a == 0 and b == 0:
                continue
            best = min(best, abs(_ring_element(ring_kind, d, a, b)))
    return best


def ring_coordinates(ring_kind: str, d: int, x: complex) -> tuple[int, int]:
    """Integer coordinates of x in the ring basis, or ValueError."""
    _check_ring(ring_kind, d)
    if ring_kind == "integer":
        b = x.imag / math.sqrt(d)
        a = x.real
    else:
        b = 2.0 * x.imag / math.sqrt(d)
        a = x.real - b / 2.0
    ai, bi = round(a), round(b)
    if abs(a - ai) > 1e-9 or abs(b - bi) > 1e-9:
        raise ValueError(f"{x} is not an element of the {ring_kind} ring with D={d}")
    return int(ai), int(bi)


def gap_radius(ring_kind: str, d: int, x: complex, n: int) -> GapSpec:
    """Fill in c and r for a ring element x at postcritical length bound n."""
    x = complex(x)
    _check_ring(ring_kind, d)
    if n < 1:
        raise ValueError("n must be at least 1")
    if x == 0:
        raise ValueError("x must be nonzero")
    ring_coordinates(ring_kind, d, x)
    c = min_ring_modulus(ring_kind, d)
    ax = abs(x)
    power = ax ** n if ax >= 1.0 else ax
    r = min(c / ((2 * n * n + 3 * n + 1) * power * math.e), 1.0 / (n + 1))
    return GapSpec(ring_kind, d, x, n, c, r)


def _word_length(word_id: int) -> int:
    return int(word_id >> 6).bit_length() - 1


def verify_gap(spec: GapSpec, cloud) -> tuple[bool, list[tuple[complex, float]]]:
    """True iff no cloud point other than x itself lies strictly inside
    the gap ball B_r(x).  Offenders come back with their distances.

    The cloud must only contain words of length <= spec.n; longer words
    mean the file does not match the bound the radius was computed for.
    """
    arr = dataset._as_point_array(cloud)
    if arr.size:
        max_len = max(_word_length(int(w)) for w in arr["word_id"])
        if max_len > spec.n:
            raise ValueError(
                f"cloud contains words of length {max_len} > n = {spec.n}")
    d = np.hypot(arr["z_re"] - spec.x.real, arr["z_im"] - spec.x.imag)
    offending = (d < spec.r) & (d > _SELF_TOL)
    offenders = [(complex(arr["z_re"][i], arr["z_im"][i]), float(d[i]))
                 for i in np.flatnonzero(offending)]
    return (not offenders, offenders)
