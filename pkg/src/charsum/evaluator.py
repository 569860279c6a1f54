"""Closed-form evaluation of S = sum_{x=1}^{2^m} chi1(x) chi2(A x^k + B).

The pipeline: normalize (parity vanishing, inverting the summation variable
when B is even, imprimitivity rules, modulus reduction), derive the 2-adic
shape n = v2(A), t = v2(k), classify the regime by m - n against t, then
dispatch.  Every nonzero value is a power of sqrt(2) times one or two roots
of unity, so results are carried as sparse exact term lists and expanded to
dense ring elements only on demand; the structured evaluation costs poly(m)
arithmetic plus the size of the characteristic solution set it reports
(2^(n + 2t) entries, so constant for bounded valuations).

Witness data (x0, the parity of lambda, h) follows the sparse value around
so verification runs can re-derive everything from the report alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .characters import (
    Character,
    char_conj,
    char_mul,
    char_pow,
    conductor,
    induced,
    is_primitive,
    principal,
    sign_mod4,
)
from .cyclotomic import CycInt
from .errors import MAX_M, WidthCapError
from .ring2adic import dlog5, five_pow_cofactor, jacobi2, v2

CASE_ZERO_PARITY = "ZeroParity"
CASE_ZERO_IMPRIMITIVE = "ZeroImprimitive"
CASE_ZERO_CONDITION = "ZeroCondition"
CASE_LARGE_EVEN = "LargeEven"
CASE_LARGE_ODD = "LargeOdd"
CASE_MIDRANGE = "MidRange"
CASE_EDGE_T3 = "EdgeT3"
CASE_EDGE_T2 = "EdgeT2"
CASE_TINY = "Tiny"
CASE_REDUCED = "Reduced"

REGIME_TINY = "Tiny"
REGIME_EDGE_T2 = "EdgeT2"
REGIME_EDGE_T3 = "EdgeT3"
REGIME_MIDRANGE = "MidRange"
REGIME_LARGE = "Large"


@dataclass(frozen=True, slots=True)
class SumInstance:
    """Parameters (m, A, B, k) naming one concrete sum."""

    m: int
    A: int
    B: int
    k: int

    def __post_init__(self) -> None:
        if self.m < 3:
            raise ValueError(f"modulus exponent must be >= 3, got {self.m}")
        if self.m > MAX_M:
            raise WidthCapError(f"modulus exponent {self.m} exceeds cap {MAX_M}")
        if not 0 <= self.A < 1 << self.m or not 0 <= self.B < 1 << self.m:
            raise ValueError("A and B must be residues in [0, 2^m)")
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")


@dataclass(frozen=True, slots=True)
class DerivedParams:
    """2-adic shape of a normalized instance (A even, B odd).

    n = v2(A) and A1 its odd part (A = 0 is folded into n = m, the deepest
    possible valuation mod 2^m); t = v2(k), k1 odd.  N is the cofactor index
    used inside the characteristic combination; M_exp the modulus exponent
    of the characteristic congruence.  Both are None in the Tiny regime.
    """

    n: int
    A1: int
    t: int
    k1: int
    N: int | None
    M_exp: int | None
    regime: str


@dataclass(frozen=True, slots=True)
class CharSolutionSet:
    """All odd solutions of the characteristic congruence modulo 2^w."""

    w: int
    solutions: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class NormalizedProblem:
    """Outcome of normalize(): a terminal zero, a tiny direct summation, or
    a standard-form problem (A even, B odd, chi2 primitive) plus the power
    of two the modulus reduction multiplied every term class by."""

    kind: str  # "zero" | "direct" | "standard"
    zero_case: str | None
    inst: SumInstance | None
    chi1: Character | None
    chi2: Character | None
    scale_log2: int


@dataclass(frozen=True, slots=True)
class ClosedForm:
    """Structured exact result.

    terms is the sparse value: pairs (exponent, coefficient) in the ring
    2^ring_exponent, empty exactly when the sum vanishes.  magnitude_halves
    gives |S| = 2^(magnitude_halves / 2) for nonzero values.  x0 is the
    chosen characteristic-equation witness, lambda_parity and h the data
    selecting the eighth-root factor; scale_log2 records the multiplicity
    applied by modulus reduction.  For reduced instances the witnesses refer
    to the reduced problem.
    """

    case: str
    ring_exponent: int
    terms: tuple[tuple[int, int], ...]
    magnitude_halves: int | None
    x0: int | None
    lambda_parity: int | None
    h: int | None
    scale_log2: int

    def value(self) -> CycInt:
        """Dense ring element; costs O(2^(r-1)) to materialize."""
        half = 1 << (self.ring_exponent - 1)
        c = [0] * half
        for e, x in self.terms:
            c[e] = x
        return CycInt(self.ring_exponent, tuple(c))

    def approx(self) -> tuple[float, float]:
        step = 2.0 * math.pi / (1 << self.ring_exponent)
        re = im = 0.0
        for e, x in self.terms:
            re += x * math.cos(step * e)
            im += x * math.sin(step * e)
        return re, im

    def is_zero(self) -> bool:
        return not self.terms

    def to_json_dict(self) -> dict:
        re, im = self.approx()
        return {
            "case": self.case,
            "magnitude_halves": self.magnitude_halves,
            "x0": self.x0,
            "lambda_parity": self.lambda_parity,
            "h": self.h,
            "scale_log2": self.scale_log2,
            "value": self.value().to_json_dict(),
            "approx": {"re": re, "im": im},
        }


def ring_exponent_for(m: int) -> int:
    """Ring holding both the character values and the eighth roots of unity."""
    return max(m - 2, 3)


# ---------------------------------------------------------------------------
# sparse term helpers

def _fold(acc: dict[int, int], r: int, exp: int, coeff: int) -> None:
    half = 1 << (r - 1)
    exp %= 1 << r
    if exp >= half:
        exp -= half
        coeff = -coeff
    acc[exp] = acc.get(exp, 0) + coeff


def _terms(acc: dict[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def _sparse_abs2_log2(terms: tuple[tuple[int, int], ...], r: int) -> int:
    """v with S * conj(S) = 2^v, computed sparsely.  Every nonzero value this
    evaluator produces has that shape; anything else is a bug."""
    acc: dict[int, int] = {}
    for e1, c1 in terms:
        for e2, c2 in terms:
            _fold(acc, r, e1 - e2, c1 * c2)
    flat = _terms(acc)
    if len(flat) != 1 or flat[0][0] != 0:
        raise AssertionError(f"|S|^2 not rational: {flat}")
    sq = flat[0][1]
    if sq <= 0 or sq & (sq - 1):
        raise AssertionError(f"|S|^2 not a power of two: {sq}")
    return sq.bit_length() - 1


def _char_exp(chi: Character, x: int, r: int) -> tuple[int, int]:
    """(ring exponent, sign) of chi(x) for odd x; assumes chi(x) != 0."""
    eps, gamma = dlog5(x, chi.m)
    e = (chi.c * gamma) << (r - (chi.m - 2))
    sign = chi.s if eps else 1
    return e, sign


def _closed(
    case: str,
    m: int,
    acc: dict[int, int] | None,
    *,
    x0: int | None = None,
    lam: int | None = None,
    h: int | None = None,
    scale_log2: int = 0,
) -> ClosedForm:
    r = ring_exponent_for(m)
    terms = _terms(acc) if acc else ()
    mag = _sparse_abs2_log2(terms, r) if terms else None
    return ClosedForm(case, r, terms, mag, x0, lam, h, scale_log2)


# ---------------------------------------------------------------------------
# normalization

def normalize(inst: SumInstance, chi1: Character, chi2: Character) -> NormalizedProblem:
    """Reduce to the standing shape: A even, B odd, chi2 primitive.

    Same-parity A, B kill every term.  Odd A with even B is flipped by
    summing over x^(-1) instead, which swaps A with B and replaces chi1 by
    conj(chi1 * chi2^k).  A primitive chi1 against an imprimitive chi2
    forces the sum to vanish; two imprimitive characters push the whole
    problem down to their largest conductor, each reduced term class being
    hit 2^(m - m') times.  Conductors below 3 leave a four-term sum that is
    handled directly.
    """
    if chi1.m != inst.m or chi2.m != inst.m:
        raise ValueError("characters and instance must share the modulus")
    if (inst.A & 1) == (inst.B & 1):
        return NormalizedProblem("zero", CASE_ZERO_PARITY, None, None, None, 0)
    if inst.A & 1:
        chi1 = char_conj(char_mul(chi1, char_pow(chi2, inst.k)))
        inst = SumInstance(inst.m, inst.B, inst.A, inst.k)
    scale = 0
    while True:
        if is_primitive(chi2):
            return NormalizedProblem("standard", None, inst, chi1, chi2, scale)
        if is_primitive(chi1):
            return NormalizedProblem("zero", CASE_ZERO_IMPRIMITIVE, None, None, None, 0)
        mp = max(conductor(chi1), conductor(chi2))
        if mp < 3:
            # both characters live mod 4: four-term direct summation
            return NormalizedProblem("direct", None, inst, chi1, chi2, inst.m - 2)
        scale += inst.m - mp
        chi1 = induced(chi1, mp)
        chi2 = induced(chi2, mp)
        mod = 1 << mp
        inst = SumInstance(mp, inst.A % mod, inst.B % mod, inst.k)


# ---------------------------------------------------------------------------
# parameter derivation

def derive(inst: SumInstance) -> DerivedParams:
    """2-adic shape and regime of a normalized instance (A even, B odd)."""
    if inst.A & 1 or not inst.B & 1:
        raise ValueError("derive expects even A and odd B (normalize first)")
    t = v2(inst.k)
    k1 = inst.k >> t
    if inst.A == 0:
        # A = 0 mod 2^m behaves as valuation >= m: deepest Tiny shape
        return DerivedParams(inst.m, 1, t, k1, None, None, REGIME_TINY)
    n = v2(inst.A)
    a1 = inst.A >> n
    d = inst.m - n
    m_exp = ((inst.m + n) >> 1) + t
    if d < t + 2:
        return DerivedParams(n, a1, t, k1, None, None, REGIME_TINY)
    if d == t + 2:
        return DerivedParams(n, a1, t, k1, t + 2, m_exp, REGIME_EDGE_T2)
    if d == t + 3:
        return DerivedParams(n, a1, t, k1, t + 2, m_exp, REGIME_EDGE_T3)
    if d <= 2 * t + 4:
        return DerivedParams(n, a1, t, k1, t + 2, m_exp, REGIME_MIDRANGE)
    return DerivedParams(n, a1, t, k1, (d + 1) >> 1, m_exp, REGIME_LARGE)


# ---------------------------------------------------------------------------
# characteristic combination C(x) = c1*(A x^k + B) + c2*A*k*x^k*R_N/R_{N+n}

def _c_affine(inst: SumInstance, c1: int, c2: int, N: int, n: int, w: int) -> tuple[int, int, int]:
    """C(x) mod 2^w as const + coef * x^k: returns (const, coef, 2^w)."""
    mod = 1 << w
    rn = five_pow_cofactor(N, w)
    rnn_inv = pow(five_pow_cofactor(N + n, w), -1, mod)
    coef = (c1 * inst.A + c2 * inst.A * inst.k % mod * rn * rnn_inv) % mod
    return c1 * inst.B % mod, coef, mod


def characteristic_value(x: int, inst: SumInstance, chi1: Character, chi2: Character, w: int) -> int:
    """C(x) mod 2^w.  Defined outside the Tiny regime only."""
    p = derive(inst)
    if p.N is None:
        raise ValueError("characteristic combination undefined in the Tiny regime")
    const, coef, mod = _c_affine(inst, chi1.c, chi2.c, p.N, p.n, w)
    return (const + coef * pow(x, inst.k, mod)) % mod


def solve_characteristic(inst: SumInstance, chi1: Character, chi2: Character) -> CharSolutionSet:
    """Complete set of odd x mod 2^M_exp with C(x) = 0 mod 2^M_exp.

    Breadth-first bit lifting: C(x) mod 2^j depends only on x mod 2^j (the
    x-dependence sits above valuation n + t), so solutions mod 2^(j+1) are
    found among the two lifts of each solution mod 2^j.
    """
    p = derive(inst)
    if p.regime != REGIME_LARGE:
        raise ValueError(f"characteristic solver applies to the Large regime, not {p.regime}")
    if v2(chi1.c) != p.n + p.t:
        raise ValueError("chi1 parameter lacks the required 2-power; the sum is zero")
    m_exp = p.M_exp
    const, coef, mod = _c_affine(inst, chi1.c, chi2.c, p.N, p.n, m_exp)
    k = inst.k
    cap = 1 << (p.n + 2 * p.t + 6)
    sols = [1] if (const + coef) % 2 == 0 else []
    for j in range(1, m_exp):
        step = 1 << j
        mod_next = step << 1
        nxt = []
        for x in sols:
            for cand in (x, x + step):
                if (const + coef * pow(cand, k, mod)) % mod_next == 0:
                    nxt.append(cand)
        sols = nxt
        if len(sols) > cap:
            raise RuntimeError(
                f"solution frontier {len(sols)} exceeds cap {cap}: solver invariant broken"
            )
    return CharSolutionSet(m_exp, tuple(sorted(sols)))


# ---------------------------------------------------------------------------
# regime evaluators (inputs already normalized: A even, B odd, chi2 primitive)

def evaluate_large(
    inst: SumInstance, chi1: Character, chi2: Character, x0: int | None = None
) -> ClosedForm:
    """m - n > 2t + 4: single characteristic witness carries the whole sum.

    Vanishes unless chi1's parameter is exactly 2^(n+t) times an odd c3,
    chi1(-1) = 1 when k is even, and the characteristic congruence has a
    solution.  Otherwise the value is 2^((m+n)/2 + t + min(1,t)) times
    chi1(x0) chi2(A x0^k + B), with the half-integer power of two realized
    by sqrt(2) and steered through the eighth roots by h = 2*lambda +
    (k1 - 1) + (2^n - 1) c3 when m - n is odd.
    """
    p = derive(inst)
    if p.regime != REGIME_LARGE:
        raise ValueError(f"not a Large-regime instance: {p.regime}")
    m, n, t = inst.m, p.n, p.t
    if v2(chi1.c) != n + t:
        return _closed(CASE_ZERO_CONDITION, m, None)
    if inst.k % 2 == 0 and chi1.s != 1:
        return _closed(CASE_ZERO_CONDITION, m, None)
    sols = solve_characteristic(inst, chi1, chi2)
    if not sols.solutions:
        return _closed(CASE_ZERO_CONDITION, m, None)
    if x0 is None:
        x0 = min(sols.solutions)

    m_exp = p.M_exp
    cval = characteristic_value(x0, inst, chi1, chi2, m_exp + 1)
    if cval % (1 << m_exp):
        raise AssertionError(f"x0={x0} does not satisfy the characteristic congruence")
    lam = (cval >> m_exp) & 1

    mod = 1 << m
    y0 = (inst.A * pow(x0, inst.k, mod) + inst.B) % mod
    r = ring_exponent_for(m)
    e1, s1 = _char_exp(chi1, x0, r)
    e2, s2 = _char_exp(chi2, y0, r)
    sign = s1 * s2
    e = e1 + e2
    half_pow = ((m + n) >> 1) + t + min(1, t)
    acc: dict[int, int] = {}
    if (m - n) % 2 == 0:
        _fold(acc, r, e, sign << half_pow)
        case = CASE_LARGE_EVEN
        h = None
    else:
        c3 = chi1.c >> (n + t)
        h = (2 * lam + (p.k1 - 1) + (pow(2, n, 8) - 1) * c3) & 7
        coeff = (sign * jacobi2(h)) << half_pow
        step8 = 1 << (r - 3)
        # sqrt(2) * omega^h = zeta_8^(h+1) - zeta_8^(h+3)
        _fold(acc, r, e + (h + 1) * step8, coeff)
        _fold(acc, r, e + (h + 3) * step8, -coeff)
        case = CASE_LARGE_ODD
    cf = _closed(case, m, acc, x0=x0, lam=lam, h=h)
    if cf.magnitude_halves != m + n + 2 * t + 2 * min(1, t):
        raise AssertionError("magnitude disagrees with the regime formula")
    return cf


def evaluate_small(inst: SumInstance, chi1: Character, chi2: Character) -> ClosedForm:
    """t + 2 <= m - n <= 2t + 4: the sum collapses onto A + B and -A + B.

    All branches inherit the global necessities: chi1(-1) = 1 when k is
    even, and chi1's parameter carries the exact power 2^(n+t).  At the
    m - n = t + 2 edge that means chi1 is the principal character (k even)
    or the mod-4 sign character (k odd); at m - n = t + 3 it pins the
    parameter to 2^(m-3); in between the characteristic values at +-1
    decide, and never both.
    """
    p = derive(inst)
    if p.regime not in (REGIME_EDGE_T2, REGIME_EDGE_T3, REGIME_MIDRANGE):
        raise ValueError(f"not an edge/mid-regime instance: {p.regime}")
    m = inst.m
    k_even = inst.k % 2 == 0
    if k_even and chi1.s != 1:
        return _closed(CASE_ZERO_CONDITION, m, None)
    r = ring_exponent_for(m)
    mod = 1 << m
    sum_ab = (inst.A + inst.B) % mod
    acc: dict[int, int] = {}

    if p.regime == REGIME_EDGE_T2:
        want = principal(m) if k_even else sign_mod4(m)
        if chi1 != want:
            return _closed(CASE_ZERO_CONDITION, m, None)
        e, s = _char_exp(chi2, sum_ab, r)
        _fold(acc, r, e, s << (m - 1))
        return _closed(CASE_EDGE_T2, m, acc)

    if p.regime == REGIME_EDGE_T3:
        if chi1.c != 1 << (m - 3):
            return _closed(CASE_ZERO_CONDITION, m, None)
        if k_even:
            e, s = _char_exp(chi2, sum_ab, r)
            _fold(acc, r, e, s << (m - 1))
        else:
            e, s = _char_exp(chi2, sum_ab, r)
            _fold(acc, r, e, s << (m - 2))
            e, s = _char_exp(chi2, (inst.B - inst.A) % mod, r)
            _fold(acc, r, e, chi1.s * s << (m - 2))
        return _closed(CASE_EDGE_T3, m, acc)

    # MidRange: t + 3 < m - n <= 2t + 4
    width = m - 2
    const, coef, cmod = _c_affine(inst, chi1.c, chi2.c, p.N, p.n, width)
    at_plus = (const + coef * pow(1, inst.k, cmod)) % cmod == 0
    if k_even:
        if not at_plus:
            return _closed(CASE_ZERO_CONDITION, m, None)
        e, s = _char_exp(chi2, sum_ab, r)
        _fold(acc, r, e, s << (m - 1))
        return _closed(CASE_MIDRANGE, m, acc)
    at_minus = (const + coef * pow(cmod - 1, inst.k, cmod)) % cmod == 0
    if at_plus and at_minus:
        raise AssertionError("characteristic values at +1 and -1 cannot both vanish here")
    if at_plus:
        e, s = _char_exp(chi2, sum_ab, r)
        _fold(acc, r, e, s << (m - 2))
        return _closed(CASE_MIDRANGE, m, acc)
    if at_minus:
        e, s = _char_exp(chi2, (inst.B - inst.A) % mod, r)
        _fold(acc, r, e, chi1.s * s << (m - 2))
        return _closed(CASE_MIDRANGE, m, acc)
    return _closed(CASE_ZERO_CONDITION, m, None)


def evaluate_tiny(inst: SumInstance, chi1: Character, chi2: Character) -> ClosedForm:
    """m - n < t + 2 (including A = 0): A x^k + B is constant on odd x."""
    m = inst.m
    if chi1 != principal(m):
        return _closed(CASE_ZERO_CONDITION, m, None)
    r = ring_exponent_for(m)
    e, s = _char_exp(chi2, (inst.A + inst.B) % (1 << m), r)
    acc: dict[int, int] = {}
    _fold(acc, r, e, s << (m - 1))
    return _closed(CASE_TINY, m, acc)


def _evaluate_direct4(inst: SumInstance, chi1: Character, chi2: Character) -> ClosedForm:
    """Both characters factor through mod 4: sum the four residues directly."""
    m = inst.m

    def val(chi: Character, a: int) -> int:
        if a % 2 == 0:
            return 0
        return chi.s if a & 3 == 3 else 1

    total = 0
    for x in (1, 3):
        y = (inst.A * pow(x, inst.k, 4) + inst.B) % 4
        total += val(chi1, x) * val(chi2, y)
    acc: dict[int, int] = {}
    if total:
        _fold(acc, ring_exponent_for(m), 0, total << (m - 2))
    return _closed(CASE_REDUCED, m, acc, scale_log2=m - 2)


def _rescale(inner: ClosedForm, outer_m: int, scale_log2: int) -> ClosedForm:
    """Lift a reduced-modulus result into the original ring and multiplicity."""
    r = ring_exponent_for(outer_m)
    f = 1 << (r - inner.ring_exponent)
    terms = tuple((e * f, c << scale_log2) for e, c in inner.terms)
    case = CASE_REDUCED if terms else inner.case
    mag = None if inner.magnitude_halves is None else inner.magnitude_halves + 2 * scale_log2
    return ClosedForm(
        case, r, terms, mag, inner.x0, inner.lambda_parity, inner.h, scale_log2
    )


def closed_form(inst: SumInstance, chi1: Character, chi2: Character) -> ClosedForm:
    """Structured exact evaluation of the sum, without dense ring work."""
    norm = normalize(inst, chi1, chi2)
    if norm.kind == "zero":
        return _closed(norm.zero_case, inst.m, None)
    if norm.kind == "direct":
        return _evaluate_direct4(norm.inst, norm.chi1, norm.chi2)
    params = derive(norm.inst)
    if params.regime == REGIME_TINY:
        cf = evaluate_tiny(norm.inst, norm.chi1, norm.chi2)
    elif params.regime == REGIME_LARGE:
        cf = evaluate_large(norm.inst, norm.chi1, norm.chi2)
    else:
        cf = evaluate_small(norm.inst, norm.chi1, norm.chi2)
    if norm.scale_log2:
        cf = _rescale(cf, inst.m, norm.scale_log2)
    return cf


def evaluate(inst: SumInstance, chi1: Character, chi2: Character) -> tuple[ClosedForm, CycInt]:
    """Closed form plus its dense exact ring value."""
    cf = closed_form(inst, chi1, chi2)
    return cf, cf.value()
