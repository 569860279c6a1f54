"""Verification sweeps: instance sampling, the exact compare loop, parallel runs.

A record is the flat tuple (m, A, B, k, c1, s1, c2, s2).  Checking a record
means evaluating the closed form, summing the oracle, and comparing ring
elements coefficient by coefficient; Large-regime results additionally get
their squared magnitude checked against the regime formula.  Sampling is
seeded and single-streamed, so reports are reproducible and independent of
the worker count.
"""

from __future__ import annotations

import os
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool

from .characters import Character
from .cyclotomic import conj, from_int, mul
from .evaluator import (
    CASE_LARGE_EVEN,
    CASE_LARGE_ODD,
    SumInstance,
    characteristic_value,
    closed_form,
)
from .oracle import brute_force
from .ring2adic import v2

Record = tuple[int, int, int, int, int, int, int, int]

DEFAULT_KS = (1, 2, 3, 4, 6, 8, 12)


def default_jobs() -> int:
    env = os.environ.get("CHARSUM_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class CheckReport:
    instances_checked: int
    mismatches: list[Record]
    tag_counts: Counter = field(default_factory=Counter)
    magnitude_violations: list[Record] = field(default_factory=list)
    closed_seconds: float = 0.0
    brute_seconds: float = 0.0
    seed: int | None = None
    jobs: int = 1

    def ok(self) -> bool:
        return not self.mismatches and not self.magnitude_violations

    def to_json_dict(self) -> dict:
        return {
            "instances_checked": self.instances_checked,
            "mismatches": [list(r) for r in self.mismatches],
            "magnitude_violations": [list(r) for r in self.magnitude_violations],
            "tag_counts": dict(sorted(self.tag_counts.items())),
            "wall_time": {"closed": self.closed_seconds, "brute": self.brute_seconds},
            "seed": self.seed,
            "jobs": self.jobs,
        }


def check_record(rec: Record) -> tuple[str, bool, bool]:
    """(case tag, exact match, magnitude law ok) for one record."""
    m, a, b, k, c1, s1, c2, s2 = rec
    inst = SumInstance(m, a, b, k)
    chi1 = Character(m, s1, c1)
    chi2 = Character(m, s2, c2)
    cf = closed_form(inst, chi1, chi2)
    got = cf.value()
    want = brute_force(inst, chi1, chi2)
    match = got == want
    mag_ok = True
    if match and cf.case in (CASE_LARGE_EVEN, CASE_LARGE_ODD):
        # |S|^2 against the regime formula, on the normalized parameters
        swapped = (a & 1) and not (b & 1)
        n = v2(b if swapped else a)
        t = v2(k)
        expected = m + n + 2 * t + 2 * min(1, t)
        sq = mul(want, conj(want))
        mag_ok = sq == from_int(1 << expected, want.r)
    return cf.case, match, mag_ok


def _check_chunk(recs: list[Record]) -> tuple:
    tags: Counter = Counter()
    mismatches: list[Record] = []
    mag_bad: list[Record] = []
    t_closed = t_brute = 0.0
    for rec in recs:
        m, a, b, k, c1, s1, c2, s2 = rec
        inst = SumInstance(m, a, b, k)
        chi1 = Character(m, s1, c1)
        chi2 = Character(m, s2, c2)
        t0 = time.perf_counter()
        cf = closed_form(inst, chi1, chi2)
        t1 = time.perf_counter()
        want = brute_force(inst, chi1, chi2)
        t2 = time.perf_counter()
        t_closed += t1 - t0
        t_brute += t2 - t1
        tags[cf.case] += 1
        if cf.value() != want:
            mismatches.append(rec)
            continue
        if cf.case in (CASE_LARGE_EVEN, CASE_LARGE_ODD):
            swapped = (a & 1) and not (b & 1)
            n = v2(b if swapped else a)
            t = v2(k)
            expected = m + n + 2 * t + 2 * min(1, t)
            if mul(want, conj(want)) != from_int(1 << expected, want.r):
                mag_bad.append(rec)
    return len(recs), mismatches, tags, mag_bad, t_closed, t_brute


def run_check(records: list[Record], jobs: int | None = None, seed: int | None = None) -> CheckReport:
    """Compare closed form and oracle over the records, optionally in parallel.

    Results are merged order-insensitively, so the report does not depend on
    the worker count.
    """
    jobs = jobs or default_jobs()
    report = CheckReport(0, [], seed=seed, jobs=jobs)
    if not records:
        return report
    if jobs <= 1 or len(records) < 64:
        parts = [_check_chunk(records)]
    else:
        size = max(1, (len(records) + jobs * 8 - 1) // (jobs * 8))
        chunks = [records[i : i + size] for i in range(0, len(records), size)]
        with Pool(jobs) as pool:
            parts = pool.map(_check_chunk, chunks)
    for n, mis, tags, mag, tc, tb in parts:
        report.instances_checked += n
        report.mismatches.extend(mis)
        report.tag_counts.update(tags)
        report.magnitude_violations.extend(mag)
        report.closed_seconds += tc
        report.brute_seconds += tb
    report.mismatches.sort()
    report.magnitude_violations.sort()
    return report


# ---------------------------------------------------------------------------
# record generators

def exhaustive_records(m: int, ks: tuple[int, ...] = DEFAULT_KS) -> list[Record]:
    """Full grid at modulus 2^m: all characters both slots, all A, odd B."""
    mod = 1 << m
    cmax = 1 << (m - 2)
    chars = [(c, s) for c in range(1, cmax + 1) for s in (1, -1)]
    return [
        (m, a, b, k, c1, s1, c2, s2)
        for (c1, s1) in chars
        for (c2, s2) in chars
        for a in range(mod)
        for b in range(1, mod, 2)
        for k in ks
    ]


def _rand_k(rng: random.Random, t: int) -> int:
    return (1 << t) * rng.choice((1, 3, 5, 7, 9, 11, 13, 15))


def _rand_char(rng: random.Random, m: int, parity: str = "any") -> tuple[int, int]:
    cmax = 1 << (m - 2)
    if parity == "odd":
        c = rng.randrange(1, cmax + 1, 2)
    elif parity == "even" and cmax >= 2:
        c = rng.randrange(2, cmax + 1, 2)
    else:
        c = rng.randint(1, cmax)
    return c, rng.choice((1, -1))


def _even_a(rng: random.Random, m: int, n: int) -> int:
    """Random A = 2^n * odd inside [0, 2^m)."""
    if n >= m:
        return 0
    return (1 << n) * rng.randrange(1, 1 << (m - n), 2)


def _solved_b(
    rng: random.Random, m: int, a: int, k: int, c1: int, c2: int, x0: int, width: int
) -> int:
    """Odd B making the characteristic value vanish at x0 mod 2^width."""
    n, t = v2(a), v2(k)
    probe = SumInstance(m, a, 1, k)
    cv = characteristic_value(x0, probe, Character(m, 1, c1), Character(m, 1, c2), width)
    coef_term = (cv - c1) % (1 << width)  # coefficient * x0^k
    q = coef_term >> (n + t)
    c3 = c1 >> (n + t)
    w2 = width - n - t
    if w2 < 1:
        return rng.randrange(1, 1 << m, 2)
    b = (-q * pow(c3, -1, 1 << w2)) % (1 << w2)
    b += rng.randrange(0, 1 << (m - w2)) << w2
    return b


def _aimed_record(rng: random.Random, m: int, aim: str) -> Record | None:
    """Try to build an instance likely to land on the aimed case tag."""
    mod = 1 << m
    cmax = 1 << (m - 2)

    if aim == "ZeroParity":
        a = rng.randrange(mod)
        b = rng.randrange(1, mod, 2) if a & 1 else rng.randrange(0, mod, 2)
        c1, s1 = _rand_char(rng, m)
        c2, s2 = _rand_char(rng, m)
        return (m, a, b, rng.randint(1, 24), c1, s1, c2, s2)

    if aim == "ZeroImprimitive":
        c1, s1 = _rand_char(rng, m, "odd")
        c2, s2 = _rand_char(rng, m, "even")
        if c2 % 2:
            return None
        a = _even_a(rng, m, rng.randint(1, m - 1))
        b = rng.randrange(1, mod, 2)
        return (m, a, b, rng.randint(1, 24), c1, s1, c2, s2)

    if aim == "Reduced":
        c1, s1 = _rand_char(rng, m, "even")
        c2, s2 = _rand_char(rng, m, "even")
        if c1 % 2 or c2 % 2:
            return None
        a = _even_a(rng, m, rng.randint(1, m - 1))
        b = rng.randrange(1, mod, 2)
        return (m, a, b, rng.randint(1, 24), c1, s1, c2, s2)

    if aim == "Swap":
        a = rng.randrange(1, mod, 2)
        b = rng.randrange(0, mod, 2)
        c1, s1 = _rand_char(rng, m)
        c2, s2 = _rand_char(rng, m)
        return (m, a, b, rng.randint(1, 24), c1, s1, c2, s2)

    if aim == "Uniform":
        c1, s1 = _rand_char(rng, m)
        c2, s2 = _rand_char(rng, m)
        return (m, rng.randrange(mod), rng.randrange(mod), rng.randint(1, 24), c1, s1, c2, s2)

    if aim == "Tiny":
        t = rng.randint(0, 3)
        n = rng.randint(max(m - t - 1, 1), m)
        a = _even_a(rng, m, n)
        k = _rand_k(rng, t)
        c2, s2 = _rand_char(rng, m, "odd")
        if rng.random() < 0.5:
            c1, s1 = cmax, 1  # principal: the nonzero branch
        else:
            c1, s1 = _rand_char(rng, m)
        return (m, a, rng.randrange(1, mod, 2), k, c1, s1, c2, s2)

    if aim == "ZeroCondition":
        # Large shape with a primitive chi1: the power condition must fail
        t = rng.choice((0, 0, 1))
        n_hi = m - 2 * t - 5
        if n_hi < 1:
            return None
        n = rng.randint(1, n_hi)
        a = _even_a(rng, m, n)
        c1, s1 = _rand_char(rng, m, "odd")
        c2, s2 = _rand_char(rng, m, "odd")
        return (m, a, rng.randrange(1, mod, 2), _rand_k(rng, t), c1, s1, c2, s2)

    if aim == "EdgeT2":
        t = rng.randint(0, max(0, m - 3))
        n = m - t - 2
        if n < 1:
            return None
        a = _even_a(rng, m, n)
        k = _rand_k(rng, t)
        s1 = 1 if k % 2 == 0 else -1  # principal for even k, mod-4 sign for odd
        c2, s2 = _rand_char(rng, m, "odd")
        return (m, a, rng.randrange(1, mod, 2), k, cmax, s1, c2, s2)

    if aim == "EdgeT3":
        t = rng.randint(0, max(0, m - 4))
        n = m - t - 3
        if n < 1:
            return None
        a = _even_a(rng, m, n)
        k = _rand_k(rng, t)
        s1 = 1 if k % 2 == 0 else rng.choice((1, -1))
        c2, s2 = _rand_char(rng, m, "odd")
        return (m, a, rng.randrange(1, mod, 2), k, 1 << (m - 3), s1, c2, s2)

    if aim == "MidRange":
        choices = [(t, d) for t in (0, 1, 2) for d in range(t + 4, 2 * t + 5) if m - d >= 1]
        if not choices:
            return None
        t, d = rng.choice(choices)
        n = m - d
        a = _even_a(rng, m, n)
        k = _rand_k(rng, t)
        if n + t > m - 2:
            return None
        c3 = rng.randrange(1, max(1 << (m - 2 - n - t), 2), 2)
        c1 = (1 << (n + t)) * c3
        if c1 > cmax:
            return None
        c2, s2 = _rand_char(rng, m, "odd")
        x0 = (1 << (m - 2)) - 1 if k % 2 and rng.random() < 0.5 else 1
        b = _solved_b(rng, m, a, k, c1, c2, x0, m - 2)
        s1 = 1 if k % 2 == 0 else rng.choice((1, -1))
        return (m, a, b, k, c1, s1, c2, s2)

    if aim in ("LargeEven", "LargeOdd"):
        want_odd = aim == "LargeOdd"
        lo = 5 if want_odd else 6
        ds = [d for d in range(lo, m) if d % 2 == (1 if want_odd else 0) and d > 4]
        if not ds:
            return None
        d = rng.choice(ds)
        n = m - d
        a = _even_a(rng, m, n)
        k = _rand_k(rng, 0)  # odd k: the characteristic congruence always solves
        if n > m - 2:
            return None
        c3 = rng.randrange(1, max(1 << (m - 2 - n), 2), 2)
        c1 = (1 << n) * c3
        if c1 > cmax:
            return None
        c2, s2 = _rand_char(rng, m, "odd")
        s1 = rng.choice((1, -1))
        return (m, a, rng.randrange(1, mod, 2), k, c1, s1, c2, s2)

    if aim == "LargeKeven":
        t = rng.choice((1, 2))
        ds = [d for d in range(2 * t + 5, m)]
        if not ds:
            return None
        d = rng.choice(ds)
        n = m - d
        if n < 1 or n + t > m - 2:
            return None
        a = _even_a(rng, m, n)
        k = _rand_k(rng, t)
        c3 = rng.randrange(1, max(1 << (m - 2 - n - t), 2), 2)
        c1 = (1 << (n + t)) * c3
        if c1 > cmax:
            return None
        c2, s2 = _rand_char(rng, m, "odd")
        m_exp = ((m + n) >> 1) + t
        x0 = rng.randrange(1, 1 << m_exp, 2)
        b = _solved_b(rng, m, a, k, c1, c2, x0, m_exp)
        return (m, a, b, k, c1, 1, c2, s2)

    raise ValueError(f"unknown aim {aim!r}")


SAMPLE_AIMS = (
    "LargeEven",
    "LargeOdd",
    "LargeKeven",
    "MidRange",
    "EdgeT3",
    "EdgeT2",
    "Tiny",
    "ZeroParity",
    "ZeroImprimitive",
    "ZeroCondition",
    "Reduced",
    "Swap",
    "Uniform",
)


def sample_records(seed: int, m_min: int, m_max: int, count: int) -> list[Record]:
    """Seeded stratified sample: rotates through aimed case shapes so every
    branch of the evaluator keeps getting traffic."""
    rng = random.Random(seed)
    out: list[Record] = []
    i = 0
    while len(out) < count:
        m = rng.randint(m_min, m_max)
        rec = _aimed_record(rng, m, SAMPLE_AIMS[i % len(SAMPLE_AIMS)])
        i += 1
        if rec is None:
            rec = _aimed_record(rng, m, "Uniform")
        out.append(rec)
    return out


def sample_violating(seed: int, m_min: int, m_max: int, count: int) -> list[Record]:
    """Instances breaking the standing hypotheses: even B, same parity,
    imprimitive chi2, or two imprimitive characters."""
    rng = random.Random(seed)
    aims = ("Swap", "ZeroParity", "ZeroImprimitive", "Reduced")
    out: list[Record] = []
    i = 0
    while len(out) < count:
        m = rng.randint(m_min, m_max)
        rec = _aimed_record(rng, m, aims[i % len(aims)])
        i += 1
        if rec is not None:
            out.append(rec)
    return out


def sample_large_nonzero(seed: int, m_min: int, m_max: int, count: int) -> list[Record]:
    """Large-regime records whose closed form is guaranteed nonzero (odd k)."""
    rng = random.Random(seed)
    out: list[Record] = []
    while len(out) < count:
        m = rng.randint(max(m_min, 6), m_max)
        rec = _aimed_record(rng, m, rng.choice(("LargeEven", "LargeOdd")))
        if rec is not None:
            out.append(rec)
    return out


# ---------------------------------------------------------------------------
# CSV grid rows

GRID_HEADER = "m,A,B,k,c1,s1,c2,s2,case,magnitude_halves,match,re,im"


def grid_row(rec: Record) -> str:
    m, a, b, k, c1, s1, c2, s2 = rec
    inst = SumInstance(m, a, b, k)
    cf = closed_form(inst, Character(m, s1, c1), Character(m, s2, c2))
    want = brute_force(inst, Character(m, s1, c1), Character(m, s2, c2))
    match = cf.value() == want
    re, im = cf.approx()
    mag = "" if cf.magnitude_halves is None else str(cf.magnitude_halves)
    return (
        f"{m},{a},{b},{k},{c1},{s1},{c2},{s2},{cf.case},{mag},"
        f"{'true' if match else 'false'},{re:.12g},{im:.12g}"
    )


def _grid_chunk(recs: list[Record]) -> tuple[list[str], int]:
    rows = []
    bad = 0
    for rec in recs:
        row = grid_row(rec)
        rows.append(row)
        if ",false," in row:
            bad += 1
    return rows, bad


def grid_rows(records: list[Record], jobs: int | None = None) -> tuple[list[str], int]:
    """All CSV rows (in record order) and the number of mismatching rows."""
    jobs = jobs or default_jobs()
    if jobs <= 1 or len(records) < 64:
        return _grid_chunk(records)
    size = max(1, (len(records) + jobs * 8 - 1) // (jobs * 8))
    chunks = [records[i : i + size] for i in range(0, len(records), size)]
    rows: list[str] = []
    bad = 0
    with Pool(jobs) as pool:
        for part_rows, part_bad in pool.map(_grid_chunk, chunks):
            rows.extend(part_rows)
            bad += part_bad
    return rows, bad
