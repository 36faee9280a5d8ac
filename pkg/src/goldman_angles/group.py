"""Free group words in the text form ``abAB``.

Lowercase letters are generators (``a`` is index 0), uppercase letters their
inverses. Words are plain strings; a conjugacy class is stored as its
canonical cyclic word.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import BadLetter
from .hypgeom import IDENTITY, MoebiusMap

if TYPE_CHECKING:
    from .surface import SurfaceRep


def letter_index(ch: str) -> int:
    if not ("a" <= ch.lower() <= "z") or len(ch) != 1:
        raise BadLetter(f"invalid letter {ch!r}")
    return ord(ch.lower()) - ord("a")


def letter_sign(ch: str) -> int:
    return 1 if ch.islower() else -1


def letter(index: int, sign: int = 1) -> str:
    ch = chr(ord("a") + index)
    return ch if sign > 0 else ch.upper()


def invert_letter(ch: str) -> str:
    return ch.lower() if ch.isupper() else ch.upper()


def inverse(w: str) -> str:
    return "".join(invert_letter(ch) for ch in reversed(w))


def validate(w: str, rank: int | None = None) -> str:
    for ch in w:
        i = letter_index(ch)
        if rank is not None and i >= rank:
            raise BadLetter(f"letter {ch!r} needs generator {i} but the surface has {rank}")
    return w


def free_reduce(w: str) -> str:
    out: list[str] = []
    for ch in w:
        if out and out[-1] == invert_letter(ch):
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def cyclic_reduce(w: str) -> tuple[str, str]:
    """Split w as conjugator * core * conjugator^-1 with core cyclically reduced."""
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == invert_letter(w[j - 1]):
        i += 1
        j -= 1
    return w[i:j], w[:i]


def _key(ch: str) -> int:
    # a < A < b < B < ...
    return 2 * letter_index(ch) + (0 if ch.islower() else 1)


def word_key(w: str) -> tuple[int, ...]:
    return tuple(_key(ch) for ch in w)


def least_rotation(w: str) -> str:
    if not w:
        return w
    return min((w[i:] + w[:i] for i in range(len(w))), key=word_key)


@dataclass(frozen=True)
class ConjClass:
    word: str

    def __str__(self) -> str:
        return self.word

    def sort_key(self) -> tuple:
        return (len(self.word), word_key(self.word))

    @property
    def is_trivial(self) -> bool:
        return not self.word


def conj_class(w: str) -> ConjClass:
    core, _ = cyclic_reduce(w)
    return ConjClass(least_rotation(core))


def is_conjugate(u: str, v: str) -> bool:
    return conj_class(u) == conj_class(v)


def primitive_root(w: str) -> tuple[str, int]:
    """(root, m) with w == root * m for a cyclically reduced w."""
    n = len(w)
    for k in range(1, n + 1):
        if n % k == 0 and w[:k] * (n // k) == w:
            return w[:k], n // k
    return w, 1


def power(w: str, k: int) -> str:
    return w * k if k >= 0 else inverse(w) * (-k)


def shortlex_key(w: str) -> tuple:
    return (len(w), word_key(w))


def word_to_map(rep: "SurfaceRep", w: str) -> MoebiusMap:
    """Product of generator matrices in reading order; the empty word is the identity.

    The product of the float generators is formed exactly and rounded once, so
    conjugate words get traces that agree to a few ulps of the entries.
    """
    gens = rep.generators
    validate(w, len(gens))
    if not w:
        return IDENTITY
    exact = {}
    for ch in set(w):
        g = gens[letter_index(ch)]
        if ch.isupper():
            g = g.inverse()
        exact[ch] = tuple(Fraction(v) for v in (g.a, g.b, g.c, g.d))
    a, b, c, d = exact[w[0]]
    for ch in w[1:]:
        p, q, r, t = exact[ch]
        a, b, c, d = a * p + b * r, a * q + b * t, c * p + d * r, c * q + d * t
    # scale by the exact determinant: the rounded entries' own det is noise once they grow
    k = math.sqrt(float(a * d - b * c))
    return MoebiusMap(float(a) / k, float(b) / k, float(c) / k, float(d) / k)
