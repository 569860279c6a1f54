"""Multiplicative characters mod 2^m, parameterized by their values on -1 and 5.

For m >= 3 the odd residues mod 2^m are generated by -1 and 5, with 5 of
order 2^(m-2), so a character is the data (m, s, c): s = chi(-1) in {+1,-1}
and chi(5) = e^(2*pi*i*c/2^(m-2)) with 1 <= c <= 2^(m-2).  Characters vanish
on even arguments by convention, which is what makes them drop terms out of
the sums downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycInt, root_of_unity, zero
from .ring2adic import dlog5, v2


@dataclass(frozen=True, slots=True)
class Character:
    """Character mod 2^m with chi(-1) = s and chi(5) = e_{2^(m-2)}(c)."""

    m: int
    s: int
    c: int

    def __post_init__(self) -> None:
        if self.m < 3:
            raise ValueError(f"modulus exponent must be >= 3, got {self.m}")
        if self.s not in (1, -1):
            raise ValueError(f"sign value must be +1 or -1, got {self.s}")
        if not 1 <= self.c <= 1 << (self.m - 2):
            raise ValueError(
                f"c must lie in [1, 2^{self.m - 2}] = [1, {1 << (self.m - 2)}], got {self.c}"
            )


def principal(m: int) -> Character:
    """chi_0: identically 1 on odd residues."""
    return Character(m, 1, 1 << (m - 2))


def sign_mod4(m: int) -> Character:
    """chi_4: +1 or -1 as the argument is 1 or 3 mod 4."""
    return Character(m, -1, 1 << (m - 2))


def eval_char(chi: Character, x: int, r: int) -> CycInt:
    """chi(x) as an exact ring element; even x gives the ring zero."""
    if r < max(chi.m - 2, 3):
        raise ValueError(f"ring 2^{r} too small for characters mod 2^{chi.m}")
    x %= 1 << chi.m
    if x % 2 == 0:
        return zero(r)
    eps, gamma = dlog5(x, chi.m)
    # chi(x) = s^eps * zeta_{2^(m-2)}^(c*gamma), re-indexed into ring 2^r
    e = (chi.c * gamma) << (r - (chi.m - 2))
    if eps and chi.s == -1:
        e += 1 << (r - 1)
    return root_of_unity(r, e)


def is_primitive(chi: Character) -> bool:
    """True when chi does not factor through any smaller power of 2."""
    return chi.c % 2 == 1


def conductor(chi: Character) -> int:
    """Smallest m' with chi(x) determined by x mod 2^(m').

    m - v2(c) when that is >= 3; the two characters with chi(5) = 1 sit
    below that range: 0 for the principal character, 2 for the mod-4 sign.
    """
    mp = chi.m - v2(chi.c)
    if mp >= 3:
        return mp
    return 0 if chi.s == 1 else 2


def induced(chi: Character, m2: int) -> Character:
    """The character mod 2^(m2) inducing chi.  Needs conductor(chi) <= m2 <= m."""
    if not 3 <= m2 <= chi.m:
        raise ValueError(f"target modulus exponent {m2} out of range [3, {chi.m}]")
    drop = chi.m - m2
    if chi.c % (1 << drop):
        raise ValueError(
            f"character does not factor through 2^{m2} (conductor {conductor(chi)})"
        )
    return Character(m2, chi.s, _norm_c(chi.c >> drop, m2))


def _norm_c(c: int, m: int) -> int:
    """Reduce c into the canonical window [1, 2^(m-2)]."""
    c %= 1 << (m - 2)
    return c if c else 1 << (m - 2)


def char_conj(chi: Character) -> Character:
    return Character(chi.m, chi.s, _norm_c(-chi.c, chi.m))


def char_mul(a: Character, b: Character) -> Character:
    if a.m != b.m:
        raise ValueError(f"modulus mismatch: 2^{a.m} vs 2^{b.m}")
    return Character(a.m, a.s * b.s, _norm_c(a.c + b.c, a.m))


def char_pow(chi: Character, k: int) -> Character:
    s = chi.s if k % 2 else 1
    return Character(chi.m, s, _norm_c(k * chi.c, chi.m))
