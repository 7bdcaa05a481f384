"""Integer polynomials attached to itinerary words.

Three constructions: the monic polynomial whose leading real root is the
tent-map slope (built from the expansion of 1), its +-1-coefficient
counterpart whose reciprocal roots match, and the eventually-periodic
variant obtained by summing the expansion with a geometric tail.  Plus
exact removal of the ubiquitous (z-1)/(z+1) factors and a conservative
irreducibility certificate.  All arithmetic is exact over Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import words
from .words import Word, auxiliary_string, cumulative_signs, word_sign


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, coefficients ascending by degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def coeffs_descending(self) -> tuple[int, ...]:
        return tuple(reversed(self.coeffs))

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "IntPolynomial":
        if self.degree < 1:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(j * c for j, c in enumerate(self.coeffs) if j))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact polynomial division; RuntimeError on nonzero remainder."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        d = other.degree
        qdeg = self.degree - d
        if qdeg < 0:
            raise RuntimeError("division would truncate: degree too small")
        q = [0] * (qdeg + 1)
        for k in range(qdeg, -1, -1):
            t, r = divmod(rem[k + d], lead)
            if r:
                raise RuntimeError("nonexact division (leading coefficient)")
            q[k] = t
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= t * b
        if any(rem):
            raise RuntimeError(f"nonzero remainder {tuple(rem)}")
        return IntPolynomial(tuple(q))

    def scaled_residual(self, z) -> float:
        scale = sum(abs(c) for c in self.coeffs) or 1
        return abs(self(z)) / scale

    def __str__(self):
        return " + ".join(f"{c}z^{j}" for j, c in enumerate(self.coeffs) if c) or "0"


def parry_polynomial(w) -> IntPolynomial:
    """Monic polynomial from one period of an admissible word.

    Degree equals the word length; the coefficient of z^(p-j) is
    -s(j)*d(j) with d = 2*letter, and the constant term is minus the
    word's cumulative sign.  Its largest real root is the slope whose
    itinerary repeats the word.
    """
    w = words._as_word(w)
    if w.kind != "periodic":
        raise ValueError("periodic word required; see preperiodic_polynomial")
    if not words.is_admissible(w):
        raise ValueError(f"word {w} is not admissible")
    p = len(w.letters)
    signs = cumulative_signs(w.letters).signs
    desc = [0] * (p + 1)
    desc[0] = 1
    for j in range(1, p + 1):
        desc[j] -= signs[j - 1] * 2 * w.letters[j - 1]
    desc[p] -= signs[p]
    return IntPolynomial(tuple(reversed(desc)))


def kneading_polynomial(w, method: str = "signs") -> IntPolynomial:
    """The +-1-coefficient polynomial K with (t-1) t^(p-1) K(1/t) equal to
    the monic construction above.

    Needs an even number of 1s (positive cumulative sign); words of
    negative sign have no such K and should go through parry_polynomial.
    K has p coefficients (degree p-1) and 1/slope is its smallest positive
    real root.  Two independent construction routes are kept: "signs" reads
    the cumulative signs directly, "blocks" assembles the alternating
    block-sum formula from the aux string; they must agree and the test
    suite compares them.
    """
    w = words._as_word(w)
    if w.kind != "periodic":
        raise ValueError("periodic word required")
    if not words.is_admissible(w):
        raise ValueError(f"word {w} is not admissible")
    if word_sign(w.letters) != 1:
        raise ValueError("odd number of 1s: negative sign, use parry_polynomial")
    p = len(w.letters)
    if method == "signs":
        signs = cumulative_signs(w.letters).signs
        return IntPolynomial(tuple(signs[:p]))
    if method != "blocks":
        raise ValueError("method must be 'signs' or 'blocks'")
    blocks = auxiliary_string(w.letters, "blocks").counts
    coeffs = [0] * (p + 1)
    coeffs[0] = 1
    acc = 0
    for k, b in enumerate(blocks, start=1):
        sign = -1 if k % 2 else 1
        for j in range(acc + 1, acc + b + 1):
            coeffs[j] += sign
        acc += b
    coeffs[p] -= 1
    return IntPolynomial(tuple(coeffs))


def preperiodic_polynomial(pre, per=None) -> IntPolynomial:
    """Integer polynomial for an eventually periodic itinerary pre.per^inf.

    Sums the expansion of 1 with the periodic tail as a geometric series
    and clears denominators.  Normalized by stripping any z^m factor and
    making the leading coefficient positive; the content is kept (no
    division by shared factors of 2), so printed coefficient sets match up
    to one global sign.
    """
    if per is None:
        w = words._as_word(pre)
        if w.kind != "preperiodic":
            raise ValueError("need a preperiodic word or (pre, per) parts")
    else:
        w = Word.preperiodic(words._as_letters(pre), words._as_letters(per))
    if not words.is_admissible(w):
        raise ValueError(f"word {w} is not admissible")
    k = w.preperiod_len
    p = w.period_len
    n = k + p
    signs = cumulative_signs(w.letters).signs
    sigma_v = word_sign(w.per)
    desc = [0] * (n + 1)
    desc[0] += 1                       # beta^(k+p)
    desc[n - k] -= sigma_v             # sigma_v * beta^k
    for j in range(1, k + 1):
        sd = signs[j - 1] * 2 * w.letters[j - 1]
        desc[j] -= sd                  # beta^(k+p-j)
        desc[n - (k - j)] += sigma_v * sd
    for j in range(k + 1, n + 1):
        desc[j] -= signs[j - 1] * 2 * w.letters[j - 1]
    asc = list(reversed(desc))
    shift = 0
    while shift < len(asc) - 1 and asc[shift] == 0:
        shift += 1
    asc = asc[shift:]
    if asc[-1] < 0:
        asc = [-c for c in asc]
    return IntPolynomial(tuple(asc))


def remove_trivial_factors(p: IntPolynomial, minus_one: bool = False) -> IntPolynomial:
    """Divide out (z-1) to maximal multiplicity, and (z+1) when asked.

    Division is exact; a nonzero remainder would mean the caller's
    polynomial was not built by the constructions here.
    """
    z_minus_1 = IntPolynomial((-1, 1))
    z_plus_1 = IntPolynomial((1, 1))
    while p.degree >= 1 and p(1) == 0:
        p = p.exact_div(z_minus_1)
    if minus_one:
        while p.degree >= 1 and p(-1) == 0:
            p = p.exact_div(z_plus_1)
    return p


def _compress(p: IntPolynomial, step: int) -> IntPolynomial | None:
    # p(x) = q(x^step) ?  Return q if the support allows it.
    if any(c and j % step for j, c in enumerate(p.coeffs)):
        return None
    return IntPolynomial(tuple(p.coeffs[::step]))


def irreducibility_certificate(p: IntPolynomial) -> str:
    """Conservative check: returns "certified" or "unknown", never claims
    reducibility.

    Certifies +-1-coefficient polynomials of degree 2^n - 1 whose
    coefficient sum is 2 mod 4, and compositions q(x^(2^m)) of a certified
    q that has a negative coefficient.
    """
    d = p.degree
    if d >= 1 and all(abs(c) == 1 for c in p.coeffs):
        n = (d + 1).bit_length() - 1
        if 2 ** n - 1 == d and sum(p.coeffs) % 4 == 2:
            return "certified"
    step = 2
    while step <= d:
        q = _compress(p, step)
        if q is not None and any(c < 0 for c in q.coeffs) \
                and irreducibility_certificate(q) == "certified":
            return "certified"
        step *= 2
    return "unknown"
