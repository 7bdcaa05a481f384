"""Binary itinerary words of tent maps.

A tent map of slope beta in (1, 2] folds [0, 1] by x -> beta*x on [0, 1/beta]
and x -> -beta*x + 2 on (1/beta, 1].  The itinerary of the critical value 1
records which branch each iterate lands on (0 for the left branch, closed at
the boundary, 1 for the right).  This module holds the word combinatorics:
the twisted lexicographic order, the admissibility test for realizable
itineraries, auxiliary strings with the alternating order, dominance, period
doubling, and the constructive recipes that build new admissible words from
old ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LT, EQ, GT = -1, 0, 1

# Letter signs: a 0 keeps orientation, a 1 reverses it.
_SIGN = (1, -1)


def _as_letters(obj) -> tuple[int, ...]:
    if isinstance(obj, Word):
        return obj.letters
    if isinstance(obj, str):
        out = []
        for ch in obj:
            if ch not in "01":
                raise ValueError(f"bad letter {ch!r} in word {obj!r}")
            out.append(int(ch))
        return tuple(out)
    out = tuple(int(b) for b in obj)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"letters must be 0/1, got {obj!r}")
    return out


@dataclass(frozen=True)
class Word:
    """An eventually periodic binary word.

    letters holds preperiod then period contiguously; preperiod_len == 0
    means the word is purely periodic.  Instances denote the infinite
    stream letters[:preperiod_len] + letters[preperiod_len:] repeated.
    """

    letters: tuple[int, ...]
    preperiod_len: int = 0

    def __post_init__(self):
        if not self.letters:
            raise ValueError("empty word")
        if any(b not in (0, 1) for b in self.letters):
            raise ValueError("letters must be 0/1")
        if not 0 <= self.preperiod_len < len(self.letters):
            raise ValueError("period part must be nonempty")

    @classmethod
    def periodic(cls, letters) -> "Word":
        return cls(_as_letters(letters), 0)

    @classmethod
    def preperiodic(cls, pre, per) -> "Word":
        pre = _as_letters(pre)
        per = _as_letters(per)
        return cls(pre + per, len(pre))

    @property
    def kind(self) -> str:
        return "preperiodic" if self.preperiod_len else "periodic"

    @property
    def period_len(self) -> int:
        return len(self.letters) - self.preperiod_len

    @property
    def pre(self) -> tuple[int, ...]:
        return self.letters[: self.preperiod_len]

    @property
    def per(self) -> tuple[int, ...]:
        return self.letters[self.preperiod_len:]

    def letter(self, i: int) -> int:
        """Letter i of the infinite stream (0-based)."""
        if i < len(self.letters):
            return self.letters[i]
        k = self.preperiod_len
        return self.letters[k + (i - k) % (len(self.letters) - k)]

    def word_id(self) -> int:
        """Stable integer id: (1 << n | bits) << 6 | preperiod_len.

        The guard bit above the letters makes the packing injective across
        lengths; the low 6 bits carry the preperiod length (0 if periodic).
        Fits in a u64 for words up to 29 letters.
        """
        acc = 1
        for b in self.letters:
            acc = acc << 1 | b
        return acc << 6 | self.preperiod_len

    @property
    def flavor_code(self) -> int:
        return 1 if self.preperiod_len else 0

    def __str__(self):
        s = "".join("01"[b] for b in self.letters)
        k = self.preperiod_len
        if k:
            return s[:k] + "(" + s[k:] + ")"
        return s


def word_from_id(word_id: int) -> Word:
    """Inverse of Word.word_id."""
    k = word_id & 0x3F
    acc = word_id >> 6
    if acc <= 1:
        raise ValueError(f"bad word id {word_id}")
    bits = []
    while acc > 1:
        bits.append(acc & 1)
        acc >>= 1
    return Word(tuple(reversed(bits)), k)


def _as_word(obj) -> Word:
    if isinstance(obj, Word):
        return obj
    return Word.periodic(obj)


@dataclass(frozen=True)
class SignSeq:
    """Cumulative orientation signs along a word, one entry per prefix."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if not self.signs or self.signs[0] != 1:
            raise ValueError("sign sequence must start at +1")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1/-1")

    def __len__(self):
        return len(self.signs)

    def __getitem__(self, i):
        return self.signs[i]


def cumulative_signs(w) -> SignSeq:
    """Signs s(1..|w|+1): s(1) = +1, each 1 flips the running sign.

    The final entry is the cumulative sign of the whole word, +1 exactly
    when the number of 1s is even.
    """
    letters = _as_letters(w)
    signs = [1]
    for b in letters:
        signs.append(signs[-1] * _SIGN[b])
    return SignSeq(tuple(signs))


def word_sign(w) -> int:
    """Cumulative sign of the whole word: (-1) ** (number of 1s)."""
    return -1 if sum(_as_letters(w)) % 2 else 1


def _compare_cutoff(a: Word, b: Word) -> int:
    # Two eventually periodic streams that agree this far agree forever:
    # beyond both preperiods, agreement on a window of length p_a + p_b
    # forces agreement everywhere (standard two-period argument).
    return max(a.preperiod_len, b.preperiod_len) + a.period_len + b.period_len + 1


def twisted_lex_compare(a, b) -> int:
    """Order two streams; flip the comparison wherever the running sign is -1.

    Finite strings are compared as their periodic repetitions.  Returns
    LT/EQ/GT; EQ means the infinite streams coincide.
    """
    a = _as_word(a)
    b = _as_word(b)
    sign = 1
    for i in range(_compare_cutoff(a, b)):
        x = a.letter(i)
        y = b.letter(i)
        if x != y:
            if (x < y) == (sign == 1):
                return LT
            return GT
        sign *= _SIGN[x]
    return EQ


def shift_word(w: Word, j: int) -> Word:
    """Drop the first j letters of the stream, as a Word."""
    if j < 0:
        raise ValueError("shift must be nonnegative")
    k = w.preperiod_len
    per = w.per
    if j <= k:
        return Word(w.letters[j:], k - j)
    r = (j - k) % len(per)
    return Word(per[r:] + per[:r], 0)


def is_admissible(w) -> bool:
    """True when the stream is realizable as the itinerary of 1.

    Criterion: the stream starts 10 and no shifted copy exceeds it in the
    twisted order.  Periodic words are checked through all rotations; a
    preperiodic word needs shifts up to preperiod + period.  The degenerate
    word 10 (slope 1 boundary) passes; pipelines that need slope > 1 filter
    it by leading root.
    """
    w = _as_word(w)
    if w.letter(0) != 1 or w.letter(1) != 0:
        return False
    for j in range(1, len(w.letters)):
        if twisted_lex_compare(shift_word(w, j), w) == GT:
            return False
    return True


# ---------------------------------------------------------------------------
# auxiliary strings and the alternating order

_AUX_FLAVORS = ("zeros", "blocks")


@dataclass(frozen=True)
class AuxString:
    """Run-length view of a word: one entry per 1, counting what follows it.

    flavor "zeros" counts the 0s after each 1; flavor "blocks" counts the
    whole block (the 1 plus its 0s), i.e. zeros + 1 entrywise.
    """

    counts: tuple[int, ...]
    flavor: str = "zeros"

    def __post_init__(self):
        if self.flavor not in _AUX_FLAVORS:
            raise ValueError(f"flavor must be one of {_AUX_FLAVORS}")
        floor = 0 if self.flavor == "zeros" else 1
        if any(c < floor for c in self.counts):
            raise ValueError("count below flavor minimum")

    def __len__(self):
        return len(self.counts)

    def as_zeros(self) -> "AuxString":
        if self.flavor == "zeros":
            return self
        return AuxString(tuple(c - 1 for c in self.counts), "zeros")

    def as_blocks(self) -> "AuxString":
        if self.flavor == "blocks":
            return self
        return AuxString(tuple(c + 1 for c in self.counts), "blocks")


def auxiliary_string(w, flavor: str = "zeros") -> AuxString:
    """Aux string of a finite word starting with 1."""
    letters = _as_letters(w)
    if not letters or letters[0] != 1:
        raise ValueError("auxiliary string needs a word starting with 1")
    counts = []
    run = 0
    for b in letters[1:]:
        if b == 1:
            counts.append(run)
            run = 0
        else:
            run += 1
    counts.append(run)
    aux = AuxString(tuple(counts), "zeros")
    return aux if flavor == "zeros" else aux.as_blocks()


def word_from_aux(aux: AuxString) -> Word:
    """Rebuild the word 1 0^a1 1 0^a2 ... from its aux string."""
    letters = []
    for a in aux.as_zeros().counts:
        letters.append(1)
        letters.extend([0] * a)
    return Word.periodic(letters)


def alt_lex_compare(a, b) -> int:
    """Alternating order on integer strings, 1-indexed parity.

    At the first differing index k: for odd k the larger entry makes the
    smaller string, for even k the smaller entry does.  Equal-length inputs
    always resolve.  For unequal lengths the verdict comes from the common
    prefix alone; EQ then means neither is strictly below the other.
    """
    ca = a.counts if isinstance(a, AuxString) else tuple(a)
    cb = b.counts if isinstance(b, AuxString) else tuple(b)
    for k, (x, y) in enumerate(zip(ca, cb), start=1):
        if x != y:
            bigger_wins = k % 2 == 1
            if (x > y) == bigger_wins:
                return LT
            return GT
    return EQ


def is_extremal(aux) -> bool:
    """True when the string is alt-minimal among its rotations."""
    counts = aux.counts if isinstance(aux, AuxString) else tuple(aux)
    n = len(counts)
    for j in range(1, n):
        rotated = counts[j:] + counts[:j]
        if alt_lex_compare(counts, rotated) == GT:
            return False
    return True


def _aux_dominant(counts: tuple[int, ...]) -> bool:
    n = len(counts)
    for m in range(1, n):
        if alt_lex_compare(counts[:m], counts[n - m:]) != LT:
            return False
    return True


def is_dominant_word(w) -> bool:
    """Positive cumulative sign and every proper aux prefix strictly below
    the same-length aux suffix in the alternating order.  Total on
    arbitrary words: anything not starting 10 is not dominant."""
    letters = _as_letters(w)
    if len(letters) < 2 or letters[0] != 1 or letters[1] != 0:
        return False
    if word_sign(letters) != 1:
        return False
    return _aux_dominant(auxiliary_string(letters).counts)


# ---------------------------------------------------------------------------
# constructive recipes

def period_double(w) -> Word:
    """Length-doubling substitution whose growth rate is the square root.

    Letter k of the input becomes the pair (1, NOT letter) in the output.
    """
    w = _as_word(w)
    if w.kind != "periodic" or not is_admissible(w):
        raise ValueError("period doubling needs an admissible periodic word")
    out = []
    for b in w.letters:
        out.append(1)
        out.append(1 - b)
    return Word.periodic(out)


def dominant_extensions(w, kappa: int) -> tuple[Word, Word]:
    """Two dominant words extending w, built around a 1^kappa block.

    For odd kappa the block is preceded by an extra 10; the two outputs
    differ only in a single 01 vs 10 joint near the end, which makes their
    kneading coefficient sums differ by exactly 2.
    """
    w = _as_word(w)
    if not is_dominant_word(w):
        raise ValueError("extensions need a dominant word")
    if kappa <= len(w.letters):
        raise ValueError("kappa must exceed the word length")
    base = list(w.letters)
    if kappa % 2 == 1:
        base += [1, 0]
    base += [1] * kappa
    base += [1, 0]
    base += [1] * len(w.letters)
    tail = [1] * len(w.letters)
    first = Word.periodic(base + [0, 1] + tail)
    second = Word.periodic(base + [1, 0] + tail)
    return first, second


def _is_irreducible_word(letters: tuple[int, ...]) -> bool:
    # Irreducible here means primitive: not a repetition of a shorter block.
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters[:d] * (n // d) == letters:
            return False
    return True


def concat_admissible(w1, w2, n: int) -> Word:
    """Concatenate w1 . w2^n, guaranteed admissible under the hypotheses.

    Raises ValueError naming the failed hypothesis; raises RuntimeError if
    the guaranteed conclusion fails (that would be an implementation bug).
    """
    w1 = _as_word(w1)
    w2 = _as_word(w2)
    if n < 1:
        raise ValueError("n must be positive")
    if not is_dominant_word(w1):
        raise ValueError("hypothesis failed: w1 not dominant")
    if not is_admissible(w2):
        raise ValueError("hypothesis failed: w2 not admissible")
    if not _is_irreducible_word(w2.letters):
        raise ValueError("hypothesis failed: w2 not irreducible")
    p1, p2 = len(w1.letters), len(w2.letters)
    if not 2 * n * p2 > p1:
        raise ValueError("hypothesis failed: need 2n|w2| > |w1|")
    if not p1 > n * p2:
        raise ValueError("hypothesis failed: need |w1| > n|w2|")
    if twisted_lex_compare(w1, w2) != GT:
        raise ValueError("hypothesis failed: need w1 > w2 in twisted order")
    if (n * sum(w2.letters)) % 2 != 0:
        raise ValueError("hypothesis failed: w2^n must have positive sign")
    out = Word.periodic(w1.letters + w2.letters * n)
    if not is_admissible(out):
        raise RuntimeError(f"concatenation {out} failed admissibility")
    return out


def canonical_preperiodic(pre, per) -> Word:
    """Minimal preperiod + primitive period representation of pre.per^inf.

    Returns a periodic Word when the stream is purely periodic.
    """
    pre = list(_as_letters(pre))
    per = list(_as_letters(per))
    if not per:
        raise ValueError("empty period")
    stream_head = pre + per
    n = len(per)
    for d in range(1, n):
        if n % d == 0 and per[:d] * (n // d) == per:
            per = per[:d]
            break
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    if not pre:
        # purely periodic; keep the phase of the original stream
        return Word.periodic(stream_head[: len(per)])
    return Word.preperiodic(pre, per)


def power_tail_word(v, n: int) -> tuple[Word, bool]:
    """The eventually periodic word v^n 1^inf (canonical form) and its
    admissibility verdict, true for every dominant v."""
    v = _as_word(v)
    if not is_dominant_word(v):
        raise ValueError("power tail needs a dominant word")
    if n < 1:
        raise ValueError("n must be positive")
    word = canonical_preperiodic(v.letters * n, (1,))
    return word, is_admissible(word)


# ---------------------------------------------------------------------------
# itineraries of the critical value

_BOUNDARY_SNAP = 1e-12
_PERIOD_TOL = 1e-12
_CONFIRM_TOL = 1e-9


@dataclass(frozen=True)
class ItineraryResult:
    letters: tuple[int, ...]
    status: str  # periodic | preperiodic | truncated
    word: Word | None

    @property
    def period(self) -> int | None:
        return self.word.period_len if self.word else None

    @property
    def preperiod(self) -> int | None:
        return self.word.preperiod_len if self.word else None


def _expansion_residual(word: Word, beta: float) -> float:
    # The expansion of 1 in powers of 1/beta read off the candidate word,
    # with the periodic tail summed in closed form.
    signs = cumulative_signs(word.letters).signs
    k = word.preperiod_len
    p = word.period_len
    sigma_v = word_sign(word.per)
    head = 0.0
    for j in range(1, k + 1):
        head += signs[j - 1] * (2 * word.letters[j - 1]) * beta ** -j
    block = 0.0
    for j in range(k + 1, k + p + 1):
        block += signs[j - 1] * (2 * word.letters[j - 1]) * beta ** -j
    denom = 1.0 - sigma_v * beta ** -p
    if abs(denom) < 1e-15:
        return math.inf
    return abs(1.0 - head - block / denom)


def itinerary(beta: float, max_len: int) -> ItineraryResult:
    """Itinerary of 1 under the slope-beta tent map.

    Floating iteration with boundary snapping: orbit points within 1e-12 of
    the fold point 1/beta take the left branch (the left interval is closed).
    Exact periodicity or preperiodicity is detected by orbit revisits and
    confirmed by the expansion residual; otherwise the stream is returned
    truncated at max_len letters.
    """
    if not 1.0 < beta <= 2.0:
        raise ValueError("slope must lie in (1, 2]")
    if max_len < 1:
        raise ValueError("max_len must be positive")
    fold = 1.0 / beta
    orbit = [1.0]
    letters = []
    for _ in range(max_len):
        x = orbit[-1]
        if abs(x - fold) < _BOUNDARY_SNAP:
            letters.append(0)
            orbit.append(1.0)  # beta * (1/beta)
            continue
        if x <= fold:
            letters.append(0)
            orbit.append(beta * x)
        else:
            letters.append(1)
            orbit.append(-beta * x + 2.0)

    for t in range(1, max_len + 1):
        for m in range(t):
            if abs(orbit[t] - orbit[m]) >= _PERIOD_TOL:
                continue
            candidate = canonical_preperiodic(letters[:m], letters[m:t])
            if _expansion_residual(candidate, beta) < _CONFIRM_TOL:
                return ItineraryResult(tuple(letters), candidate.kind, candidate)
    return ItineraryResult(tuple(letters), "truncated", None)
