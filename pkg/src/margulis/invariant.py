"""The Margulis invariant.

``alpha_direct`` evaluates <gamma(0) - 0, x0(g)> on an affine isometry.
``alpha_sum`` evaluates the same number from the cyclic-sum formula, one
term per letter of a cyclically reduced word, each term the pairing of a
generator's translational part with x0 of a rotated (and for inverse letters,
re-inverted) copy of the word.  The two routes are independent and are
checked against each other in the tests.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import NotCyclicallyReduced, PairingFailed
from .isometry import AffineIsometry, spectral_data
from .lorentz import lorentz_dot
from .words import (G_, GI, H_, HI, format_word, generator, inverse,
                    is_cyclically_reduced)


def alpha_direct(gamma: AffineIsometry, p=None):
    """alpha(gamma) = <gamma(p) - p, x0(g)>, with p the origin unless given."""
    xz = spectral_data(gamma.linear).xzero
    if p is None:
        return lorentz_dot(gamma.trans, xz)
    p = np.asarray(p, dtype=float)
    return lorentz_dot(gamma.linear @ p + gamma.trans - p, xz)


@dataclass(frozen=True)
class Term:
    gen: int           # 0 for g, 1 for h
    word: tuple        # cyclically reduced, terminal letter = that generator
    source: int        # index of the producing letter in the source word
    from_inverse: bool

    def __str__(self):
        return f"<v_{'gh'[self.gen]}, x0({format_word(self.word)})>"


@dataclass(frozen=True)
class SummandDecomposition:
    source: tuple
    terms: tuple = field(default=())


def decompose(w):
    """Rewrite alpha of a cyclically reduced word as a sum of generator terms.

    Terms come out in source-letter order.  A letter g_i at position k gives
    the rotation of w starting at k; a letter g_i^-1 gives g_i . (w')^-1 where
    w' is the rotation of w with that letter removed.
    """
    w = tuple(w)
    if not w or not is_cyclically_reduced(w):
        raise NotCyclicallyReduced(f"{format_word(w)} is not cyclically reduced")
    terms = []
    for k, a in enumerate(w):
        gen = generator(a)
        if a & 1:
            rest = w[k + 1:] + w[:k]
            tw = (2 * gen,) + inverse(rest)
            terms.append(Term(gen, tw, k, True))
        else:
            terms.append(Term(gen, w[k:] + w[:k], k, False))
    return SummandDecomposition(w, tuple(terms))


def alpha_sum(w, v1, v2, pair):
    """alpha of the affine word via the cyclic sum; ``pair`` is a GeneratorPair."""
    vs = (np.asarray(v1, dtype=float), np.asarray(v2, dtype=float))
    return sum(lorentz_dot(vs[t.gen], pair.xzero(t.word)) for t in decompose(w).terms)


def summands(w, v1, v2, pair):
    vs = (np.asarray(v1, dtype=float), np.asarray(v2, dtype=float))
    return [(t, lorentz_dot(vs[t.gen], pair.xzero(t.word))) for t in decompose(w).terms]


def conjugate_type(word):
    """Signed i if ``word`` starts g h^i g^-1 (i != 0), else 0."""
    if len(word) < 3 or word[0] != G_:
        return 0
    k = 1
    while k < len(word) and word[k] in (H_, HI):
        k += 1
    if k == 1 or k >= len(word) or word[k] != GI:
        return 0
    i = k - 1
    return i if word[1] == H_ else -i


@dataclass
class PairingReport:
    source: tuple
    pairs: list          # (plus_term, minus_term, i)

    def __len__(self):
        return len(self.pairs)


def conjugate_pairing(d: SummandDecomposition):
    """Match g-terms with prefix g h^i g^-1 to g-terms with prefix g h^-i g^-1.

    The partner of a term produced by the g of a cyclic factor g h^{+-i} g^-1 is
    the term produced by that factor's closing g^-1, and conversely.  Raises
    PairingFailed if any typed term has no partner of the opposite type.
    """
    m = len(d.source)
    by_source = {t.source: t for t in d.terms}
    typed = [(t, conjugate_type(t.word)) for t in d.terms if t.gen == 0]
    typed = [(t, i) for t, i in typed if i]
    partner = {}
    for t, i in typed:
        step = abs(i) + 1
        q = (t.source - step) % m if t.from_inverse else (t.source + step) % m
        u = by_source.get(q)
        if u is None or u.gen != 0 or u.from_inverse == t.from_inverse or conjugate_type(u.word) != -i:
            raise PairingFailed(f"term {t} of {format_word(d.source)} has no conjugate partner", t)
        partner[t] = u
    pairs = []
    for t, i in typed:
        if partner[partner[t]] is not t:
            raise PairingFailed(f"pairing of {t} is not an involution", t)
        if i > 0:
            pairs.append((t, partner[t], i))
    if 2 * len(pairs) != len(typed):
        raise PairingFailed(f"unbalanced W+/W- terms in {format_word(d.source)}")
    return PairingReport(d.source, pairs)
