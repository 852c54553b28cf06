"""Gamma-product harmonic analysis for the type-A root system.

c-functions built from rank-one factors over inversion sets, the
M-coefficients of the Whittaker functional equation with their cocycle
property, scattering matrices, the b-normalizer, and the Plancherel density.

The spectral vector lambda is a free complex vector; rank-one quantities are
functions of lambda_alpha = <lambda, alpha>/<alpha, alpha>.  The Plancherel
density alone evaluates the c-function on the unitary line (argument
i*lambda), which is what makes it Weyl invariant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .specfun import gamma, log_gamma

Root = Tuple[int, int]  # (i, j) with i < j, representing e_i - e_j (1-based)

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class RootSystemA:
    """Root data of A_{N-1} realized in the coordinate pairing on R^N."""

    N: int

    @property
    def positive_roots(self) -> List[Root]:
        return [(i, j) for i in range(1, self.N + 1) for j in range(i + 1, self.N + 1)]

    @property
    def simple_roots(self) -> List[Root]:
        return [(k, k + 1) for k in range(1, self.N)]

    @property
    def rho(self) -> np.ndarray:
        """Half-sum of positive roots (bookkeeping only)."""
        N = self.N
        return np.array([(N + 1 - 2 * i) / 2.0 for i in range(1, N + 1)])


class WeylPermutation:
    """Element of S_N acting on spectral vectors by coordinate permutation."""

    __slots__ = ("oneline",)

    def __init__(self, oneline: Sequence[int]):
        ol = tuple(oneline)
        if sorted(ol) != list(range(1, len(ol) + 1)):
            raise ValueError(f"not a permutation of 1..{len(ol)}: {ol}")
        self.oneline = ol

    # s(i) with 1-based i
    def __call__(self, i: int) -> int:
        return self.oneline[i - 1]

    @property
    def n(self) -> int:
        return len(self.oneline)

    @classmethod
    def identity(cls, n: int) -> "WeylPermutation":
        return cls(range(1, n + 1))

    @classmethod
    def simple(cls, k: int, n: int) -> "WeylPermutation":
        """Adjacent transposition s_k swapping k and k+1."""
        if not 1 <= k <= n - 1:
            raise IndexError(f"simple reflection index {k} out of range")
        ol = list(range(1, n + 1))
        ol[k - 1], ol[k] = ol[k], ol[k - 1]
        return cls(ol)

    @classmethod
    def longest(cls, n: int) -> "WeylPermutation":
        return cls(range(n, 0, -1))

    def __mul__(self, other: "WeylPermutation") -> "WeylPermutation":
        """(self * other)(i) = self(other(i))."""
        return WeylPermutation([self(other(i)) for i in range(1, self.n + 1)])

    def inverse(self) -> "WeylPermutation":
        inv = [0] * self.n
        for i in range(1, self.n + 1):
            inv[self(i) - 1] = i
        return WeylPermutation(inv)

    def is_identity(self) -> bool:
        return self.oneline == tuple(range(1, self.n + 1))

    def apply(self, lam: Sequence[complex]) -> np.ndarray:
        """(s lam)_i = lam_{s^{-1}(i)}."""
        inv = self.inverse()
        return np.array([lam[inv(i) - 1] for i in range(1, self.n + 1)])

    def length(self) -> int:
        ol = self.oneline
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n)
                   if ol[a] > ol[b])

    def reduced_word(self) -> List[int]:
        """One reduced word s = s_{k1} ... s_{kl} (right-descent peeling)."""
        w = list(self.oneline)
        word: List[int] = []
        while True:
            for k in range(self.n - 1):
                if w[k] > w[k + 1]:
                    w[k], w[k + 1] = w[k + 1], w[k]
                    word.append(k + 1)
                    break
            else:
                break
        word.reverse()
        return word

    def all_reduced_words(self) -> List[List[int]]:
        if self.is_identity():
            return [[]]
        words = []
        for k in range(1, self.n):
            sk = WeylPermutation.simple(k, self.n)
            rest = sk * self
            if rest.length() < self.length():
                for w in rest.all_reduced_words():
                    words.append([k] + w)
        return words

    def __eq__(self, other):
        return isinstance(other, WeylPermutation) and self.oneline == other.oneline

    def __hash__(self):
        return hash(self.oneline)

    def __repr__(self):
        return f"WeylPermutation{self.oneline}"


def word_to_permutation(word: Sequence[int], n: int) -> WeylPermutation:
    s = WeylPermutation.identity(n)
    for k in word:
        s = s * WeylPermutation.simple(k, n)
    return s


@dataclass(frozen=True)
class Character:
    """Unipotent character data: coefficient per simple root (1-based index)."""

    c_alpha: Dict[int, float] = field(default_factory=dict)

    @classmethod
    def unit(cls, N: int) -> "Character":
        return cls({k: 1.0 for k in range(1, N)})

    def is_nondegenerate(self) -> bool:
        return all(v != 0 for v in self.c_alpha.values())

    def __getitem__(self, k: int) -> float:
        return self.c_alpha.get(k, 1.0)


# ---------------------------------------------------------------------------


def lambda_alpha(lam: Sequence[complex], root: Root) -> complex:
    """<lambda, alpha>/<alpha, alpha> for alpha = e_i - e_j."""
    i, j = root
    return (lam[i - 1] - lam[j - 1]) / 2.0


def delta_set(s: WeylPermutation) -> set:
    """Positive roots mapped to negative ones: {(i,j): i<j, s^{-1}(i) > s^{-1}(j)}."""
    inv = s.inverse()
    return {(i, j) for i in range(1, s.n + 1) for j in range(i + 1, s.n + 1)
            if inv(i) > inv(j)}


def c_alpha_factor(lam: Sequence[complex], root: Root) -> complex:
    """Rank-one factor Gamma(l_a) Gamma(1/2) / Gamma(l_a + 1/2)."""
    la = lambda_alpha(lam, root)
    return gamma(la) * SQRT_PI / gamma(la + 0.5)


def c_s(lam: Sequence[complex], s: WeylPermutation) -> complex:
    """Product of rank-one factors over the inversion set of s."""
    out = 1.0 + 0.0j
    for root in delta_set(s):
        out *= c_alpha_factor(lam, root)
    return out


def c_function(lam: Sequence[complex]) -> complex:
    """Full product over all positive roots (s = longest element)."""
    return c_s(lam, WeylPermutation.longest(len(lam)))


def e_alpha(la: complex) -> complex:
    """2^{1 - l} sqrt(pi) Gamma(l + 1/2)."""
    return 2.0 ** (1.0 - 0.0j) * cmath.exp(-la * math.log(2.0)) * SQRT_PI * gamma(la + 0.5)


def m_elementary(lam: Sequence[complex], k: int, f: Character) -> complex:
    """M for the elementary reflection at simple root k.

    The printed exponent 2*alpha(lambda) is read as 2*lambda_alpha.
    """
    root = (k, k + 1)
    la = lambda_alpha(lam, root)
    ck = abs(f[k])
    if ck == 0:
        raise ValueError("degenerate character on this simple root")
    base = ck / (2.0 * math.sqrt(2.0 * 2.0))
    return e_alpha(la) / e_alpha(-la) * cmath.exp(2.0 * la * math.log(base))


def m_function(s: WeylPermutation, lam: Sequence[complex], f: Character,
               word: Sequence[int] | None = None) -> complex:
    """Cocycle product of elementary M factors along a reduced word of s.

    M(s1 s2, lam) = M(s2, lam) M(s1, s2 lam), applied letter by letter.
    """
    if word is None:
        word = s.reduced_word()
    if not word:
        return 1.0 + 0.0j
    k, rest_word = word[0], word[1:]
    rest = word_to_permutation(rest_word, s.n if word else len(lam))
    return (m_function(rest, lam, f, rest_word)
            * m_elementary(rest.apply(lam), k, f))


def scattering_matrices(lam: Sequence[complex], f: Character):
    """(S_w0, S0_w0): Toda and spherical scattering phases at lambda."""
    n = len(lam)
    w0 = WeylPermutation.longest(n)
    ratio = c_function(lam) / c_function(w0.apply(lam))
    return ratio * m_function(w0, lam, f), ratio


def b_denominator(lam: Sequence[complex]) -> complex:
    """prod_{alpha in Delta_+} Gamma(<alpha, lambda>/i + 1/2)."""
    n = len(lam)
    total = 0.0 + 0.0j
    for i in range(n):
        for j in range(i + 1, n):
            total += log_gamma(-1j * (lam[i] - lam[j]) + 0.5)
    return cmath.exp(total)


def plancherel_density(lam: Sequence[float]) -> float:
    """1/|c|^2 on the unitary spectrum (c evaluated at i*lambda).

    Returns 0 at coincident entries, where the c-function has a pole.
    """
    lam = np.asarray(lam, dtype=float)
    n = len(lam)
    for i in range(n):
        for j in range(i + 1, n):
            if lam[i] == lam[j]:
                return 0.0
    c = c_function(1j * lam)
    return 1.0 / abs(c) ** 2


def m_b_compatibility(N: int, k: int, lam0: Sequence[float],
                      direction: Sequence[float], ts: Sequence[float],
                      f: Character | None = None) -> List[complex]:
    """Values of M(s_k, lam) b(lam)/b(s_k lam) along lam0 + t*direction.

    The quantity depends on lambda only through lambda_alpha, so it is
    constant along directions orthogonal to alpha = e_k - e_{k+1}; the
    returned list makes that testable and reports the constant.
    """
    f = f or Character.unit(N)
    d = np.asarray(direction, dtype=float).copy()
    # project out the alpha component so the line keeps lambda_alpha fixed
    alpha = np.zeros(N)
    alpha[k - 1], alpha[k] = 1.0, -1.0
    d -= alpha * (d @ alpha) / (alpha @ alpha)
    sk = WeylPermutation.simple(k, N)
    out = []
    for t in ts:
        lam = np.asarray(lam0, dtype=float) + t * d
        out.append(m_elementary(lam, k, f) * b_denominator(lam)
                   / b_denominator(sk.apply(lam)))
    return out
