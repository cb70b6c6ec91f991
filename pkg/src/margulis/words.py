"""Words in the free group on g and h.

Letters are small ints, ordered g < g^-1 < h < h^-1::

    G_ = 0   # g
    GI = 1   # g^-1
    H_ = 2   # h
    HI = 3   # h^-1

so ``letter ^ 1`` is the inverse and ``letter >> 1`` the generator index.
A word is a tuple of letters read left to right; the leftmost letter is the
terminal letter (applied last under the left action).  Strings use
``g G h H`` for ``g, g^-1, h, h^-1``.
"""
import itertools

import numpy as np

from .errors import NotHyperbolic
from .isometry import (AffineIsometry, compose, invert, lorentz_inverse,
                       spectral_data)

G_, GI, H_, HI = 0, 1, 2, 3
LETTERS = (G_, GI, H_, HI)
_CHARS = "gGhH"


def inverse_letter(a):
    return a ^ 1


def generator(a):
    return a >> 1


def sign(a):
    return -1 if a & 1 else 1


def parse_word(s):
    s = s.strip()
    if s in ("", "1", "e"):
        return ()
    try:
        return tuple(_CHARS.index(c) for c in s)
    except ValueError:
        raise ValueError(f"bad word {s!r}; use letters from {_CHARS!r}") from None


def format_word(w):
    return "".join(_CHARS[a] for a in w) or "1"


def power(a, n):
    """The word a^n for a letter a (n may be negative)."""
    return (a,) * n if n >= 0 else (a ^ 1,) * (-n)


def reduce(letters):
    out = []
    for a in letters:
        if out and out[-1] == a ^ 1:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def is_reduced(w):
    return all(w[i] != w[i + 1] ^ 1 for i in range(len(w) - 1))


def is_cyclically_reduced(w):
    return is_reduced(w) and (len(w) < 2 or w[0] != w[-1] ^ 1)


def inverse(w):
    return tuple(a ^ 1 for a in reversed(w))


def cyclic_reduce(w):
    """Split a reduced w as conjugator . core . conjugator^-1."""
    w = reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == w[j] ^ 1:
        i += 1
        j -= 1
    return w[i:j + 1], w[:i]


def rotations(w):
    return [w[k:] + w[:k] for k in range(len(w))] or [()]


def canonical(w):
    """Least representative of w under cyclic rotation and inversion."""
    return min(rotations(w) + rotations(inverse(w)))


def _reduced_words(length, first=None):
    starts = LETTERS if first is None else (first,)

    def grow(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for a in LETTERS:
            if a != prefix[-1] ^ 1:
                prefix.append(a)
                yield from grow(prefix)
                prefix.pop()

    for a in starts:
        yield from grow([a])


def enumerate_cyclically_reduced(max_len, dedup=False, min_len=1, first=None):
    """Cyclically reduced words of length min_len..max_len, length then lex order.

    With ``dedup`` only canonical representatives (rotation/inversion classes)
    are emitted.  ``first`` restricts the leftmost letter, which is how sweeps
    are split across workers.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    for n in range(max(1, min_len), max_len + 1):
        for w in _reduced_words(n, first):
            if n > 1 and w[0] == w[-1] ^ 1:
                continue
            if dedup and canonical(w) != w:
                continue
            yield w


def count_reduced(length):
    return 4 * 3 ** (length - 1) if length > 0 else 1


def evaluate(w, gen1, gen2):
    """Compose the isometries assigned to g and h along w (leftmost applied last).

    The generators may be AffineIsometry values or bare 3x3 linear parts; the
    result has the same kind.
    """
    affine = isinstance(gen1, AffineIsometry)
    if affine:
        table = [gen1, invert(gen1), gen2, invert(gen2)]
        out = AffineIsometry.identity()
        for a in w:
            out = compose(out, table[a])
        return out
    table = [gen1, lorentz_inverse(gen1), gen2, lorentz_inverse(gen2)]
    out = np.eye(3)
    for a in w:
        out = out @ table[a]
    return out


def all_reduced_words(length):
    """Every reduced word of exactly ``length``, by brute force over 4^length."""
    return [w for w in itertools.product(LETTERS, repeat=length) if is_reduced(w)]


class GeneratorPair:
    """Linear parts g, h with per-word caches of matrices and spectral data."""

    def __init__(self, g, h):
        self.g = np.asarray(g, dtype=float)
        self.h = np.asarray(h, dtype=float)
        self._table = [self.g, lorentz_inverse(self.g), self.h, lorentz_inverse(self.h)]
        self._mats = {(): np.eye(3)}
        self._spec = {}

    def matrix(self, w):
        w = tuple(w)
        m = self._mats.get(w)
        if m is None:
            m = self.matrix(w[:-1]) @ self._table[w[-1]]
            self._mats[w] = m
        return m

    def spectral(self, w):
        w = tuple(w)
        s = self._spec.get(w)
        if s is None:
            s = spectral_data(self.matrix(w))
            self._spec[w] = s
        return s

    def xzero(self, w):
        return self.spectral(w).xzero

    def xplus(self, w):
        return self.spectral(w).xplus

    def xminus(self, w):
        return self.spectral(w).xminus

    def hyperbolic(self, w):
        try:
            self.spectral(w)
        except NotHyperbolic:
            return False
        return True
