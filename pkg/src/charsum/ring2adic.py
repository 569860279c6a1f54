"""Exact modular arithmetic in Z/2^w.

Residues are plain non-negative ints below 2^w, with the width passed
explicitly where it matters.  Provides 2-adic valuations, inverses of odd
residues, the odd cofactors that convert powers of 5 into additive 2-adic
shifts, a bit-at-a-time discrete logarithm to base 5, and the Jacobi
symbol (2/h).
"""

from __future__ import annotations


def v2(x: int) -> int:
    """2-adic valuation: the largest e with 2^e dividing x.  Requires x >= 1."""
    if x < 1:
        raise ValueError(f"v2 is undefined for x={x}; need x >= 1")
    return (x & -x).bit_length() - 1


def odd_part(x: int) -> int:
    """x divided by its largest power-of-two factor.  Requires x >= 1."""
    return x >> v2(x)


def inv_mod2w(y: int, w: int) -> int:
    """Inverse of an odd residue y modulo 2^w."""
    if w < 1:
        raise ValueError(f"width must be >= 1, got {w}")
    if y % 2 == 0:
        raise ValueError(f"{y} is even, not invertible mod 2^{w}")
    return pow(y, -1, 1 << w)


def pow_mod2w(b: int, e: int, w: int) -> int:
    """b^e mod 2^w with b^0 = 1."""
    if w < 1:
        raise ValueError(f"width must be >= 1, got {w}")
    if e < 0:
        raise ValueError(f"exponent must be >= 0, got {e}")
    return pow(b, e, 1 << w)


def five_pow_cofactor(i: int, w: int) -> int:
    """The odd cofactor R with 5^(2^(i-2)) = 1 + R * 2^i, reduced mod 2^w.

    Defined for i >= 2.  Computing 5^(2^(i-2)) mod 2^(w+i) and stripping the
    known 2^i factor gives R exactly mod 2^w.
    """
    if i < 2:
        raise ValueError(f"cofactor undefined for i={i}; need i >= 2")
    if w < 1:
        raise ValueError(f"width must be >= 1, got {w}")
    p = pow(5, 1 << (i - 2), 1 << (w + i))
    return (p - 1) >> i


def dlog5(x: int, m: int) -> tuple[int, int]:
    """Decompose odd x as (-1)^eps * 5^gamma mod 2^m.

    Returns (eps, gamma) with eps in {0, 1} and 0 <= gamma < 2^(m-2);
    eps = 0 exactly when x = 1 mod 4.  gamma is recovered one bit at a
    time: after clearing the low bits, 5^(-partial) * x differs from 1 by
    2^(j+2) exactly when bit j of gamma is set.
    """
    if m < 3:
        raise ValueError(f"modulus exponent must be >= 3, got {m}")
    if x % 2 == 0:
        raise ValueError(f"{x} is even; only odd residues decompose")
    mod = 1 << m
    x %= mod
    eps = 0 if x & 3 == 1 else 1
    y = x if eps == 0 else mod - x
    gamma = 0
    p = pow(5, -1, mod)  # 5^(-2^j), squared each round
    for j in range(m - 2):
        if (y >> (j + 2)) & 1:
            gamma |= 1 << j
            y = y * p % mod
        p = p * p % mod
    return eps, gamma


_JACOBI2 = {1: 1, 3: -1, 5: -1, 7: 1}


def jacobi2(h: int) -> int:
    """Jacobi symbol (2/h) = (-1)^((h^2-1)/8) for odd h; depends on h mod 8."""
    if h % 2 == 0:
        raise ValueError(f"(2/h) undefined for even h={h}")
    return _JACOBI2[h & 7]
