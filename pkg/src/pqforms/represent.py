"""Decision procedures for primes and products of two primes of the form
x^2 + ny^2.

classify_prime finds which reduced forms of discriminant -4n represent an
odd prime; decide_pq answers whether pq = x^2 + ny^2 by looking for a
reduced form representing both primes, and builds the witness with the
product identity for forms ax^2 + 2bxy + cy^2. brute_force_pq is the
independent exhaustive oracle.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Sequence

import numpy as np

from .classgroup import genus_partition, principal_form
from .errors import (
    ConsistencyError,
    DiscriminantDivisorError,
    DividesNError,
    EvenPrimeError,
    NotDistinctError,
    NotPrimeError,
)
from .forms import QuadForm, Representation, enumerate_reduced, represent
from .numtheory import (
    F14,
    F14_DISCRIMINANT,
    INT64_SAFE,
    IntPolynomial,
    is_prime,
    isqrt_array,
    jacobi,
    poly_roots_mod_p,
    primes_up_to,
)


def lagrange_compose(a: int, b: int, c: int, x1: int, y1: int, x2: int, y2: int) -> tuple[int, int]:
    """(X, Y) with f(x1, y1) f(x2, y2) = X^2 + (ac - b^2) Y^2 for
    f = ax^2 + 2bxy + cy^2. Holds for all integers."""
    X = a * x1 * x2 + b * x1 * y2 + b * y1 * x2 + c * y1 * y2
    Y = x1 * y2 - y1 * x2
    return X, Y


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")


@lru_cache(maxsize=1 << 16)
def _is_prime_cached(m: int) -> bool:
    return is_prime(m)


def check_odd_prime(p: int, n: int) -> None:
    """Raise the matching HypothesisError unless p is an odd prime not dividing n."""
    _check_n(n)
    if not _is_prime_cached(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == 2:
        raise EvenPrimeError("p must be an odd prime, got 2")
    if n % p == 0:
        raise DividesNError(f"{p} divides n = {n}")


def check_pair(p: int, q: int, n: int) -> None:
    _check_n(n)
    for r in (p, q):
        if not _is_prime_cached(r):
            raise NotPrimeError(f"{r} is not prime")
    for r in (p, q):
        if r == 2:
            raise EvenPrimeError("primes must be odd, got 2")
    if p == q:
        raise NotDistinctError(f"primes must be distinct, got {p} twice")
    for r in (p, q):
        if n % r == 0:
            raise DividesNError(f"{r} divides n = {n}")


@dataclass(frozen=True)
class PrimeClassification:
    p: int
    n: int
    symbol: int
    forms: tuple[QuadForm, ...]
    witnesses: tuple[Representation, ...]
    residue: int

    @property
    def represented(self) -> bool:
        return bool(self.forms)


def classify_prime(p: int, n: int) -> PrimeClassification:
    """Which reduced forms of discriminant -4n represent the odd prime p.

    The forms list is nonempty exactly when (-n/p) = +1.
    """
    check_odd_prime(p, n)
    return _classify(p, n)


@lru_cache(maxsize=1 << 17)
def _classify(p: int, n: int) -> PrimeClassification:
    reps = []
    for f in enumerate_reduced(-4 * n):
        rep = represent(p, f)
        if rep is not None:
            reps.append(rep)
    return PrimeClassification(
        p=p,
        n=n,
        symbol=jacobi(-n, p),
        forms=tuple(r.form for r in reps),
        witnesses=tuple(reps),
        residue=p % (4 * n),
    )


@dataclass(frozen=True)
class PairDecision:
    p: int
    q: int
    n: int
    representable: bool
    common_form: QuadForm | None = None
    witness: tuple[int, int] | None = None
    composed_witness: tuple[int, int] | None = field(default=None, compare=False)


def decide_pq(p: int, q: int, n: int) -> PairDecision:
    """Is pq = x^2 + ny^2 solvable, for distinct odd primes p, q not dividing n?

    Solvable iff some reduced form of discriminant -4n represents both p
    and q. The least such form (by coefficients) is reported, together with
    the minimal-y witness of pq by x^2 + ny^2. The product identity applied
    to the two prime witnesses gives a second witness which must agree.
    """
    check_pair(p, q, n)
    cp, cq = _classify(p, n), _classify(q, n)
    common = sorted(set(cp.forms) & set(cq.forms))
    if not common:
        return PairDecision(p, q, n, False)
    f = common[0]
    wp = cp.witnesses[cp.forms.index(f)]
    wq = cq.witnesses[cq.forms.index(f)]
    X, Y = lagrange_compose(f.a, f.b // 2, f.c, wp.x, wp.y, wq.x, wq.y)
    X, Y = abs(X), abs(Y)
    if X * X + n * Y * Y != p * q:
        raise ConsistencyError(f"composed witness ({X}, {Y}) fails for {p}*{q}, n={n}")
    rep = represent(p * q, principal_form(n))
    if rep is None:
        raise ConsistencyError(f"{p}*{q} has a common form {f} but no witness, n={n}")
    return PairDecision(p, q, n, True, f, (rep.x, rep.y), (X, Y))


def _first_square_gap(m: int, n: int) -> tuple[int, int] | None:
    ymax = isqrt(m // n)
    if ymax > 32 and m < INT64_SAFE:
        ys = np.arange(ymax + 1, dtype=np.int64)
        rem = m - n * ys * ys
        roots = isqrt_array(rem)
        hits = np.flatnonzero(roots * roots == rem)
        if hits.size == 0:
            return None
        y = int(hits[0])
        return int(roots[y]), y
    for y in range(ymax + 1):
        r = m - n * y * y
        x = isqrt(r)
        if x * x == r:
            return x, y
    return None


def brute_force_pq(p: int, q: int, n: int) -> tuple[int, int] | None:
    """First (x, y), scanning y = 0, 1, ..., with pq = x^2 + ny^2."""
    check_pair(p, q, n)
    return _first_square_gap(p * q, n)


def representable_mask(n: int, limit: int) -> np.ndarray:
    """Boolean array over 0..limit marking every value of x^2 + ny^2."""
    _check_n(n)
    mask = np.zeros(limit + 1, dtype=bool)
    for y in range(isqrt(limit // n) + 1):
        base = n * y * y
        xs = np.arange(isqrt(limit - base) + 1, dtype=np.int64)
        mask[xs * xs + base] = True
    return mask


def principal_criterion(
    p: int,
    n: int,
    f_n: IntPolynomial | Sequence[int] = F14,
    disc_f: int | None = None,
) -> bool:
    """(-n/p) = 1 and f_n has a root mod p.

    When f_n is the minimal polynomial of a real generator of the ring
    class field of Z[sqrt(-n)], this holds iff p = x^2 + ny^2. That
    precondition is the caller's to guarantee; the defaults are the n = 14
    polynomial (x^2 + 1)^2 - 8 and its discriminant.
    """
    check_odd_prime(p, n)
    f_n = f_n if isinstance(f_n, IntPolynomial) else IntPolynomial(f_n)
    if disc_f is None:
        disc_f = F14_DISCRIMINANT if f_n == F14 else f_n.discriminant()
    if disc_f % p == 0:
        raise DiscriminantDivisorError(f"{p} divides the polynomial discriminant {disc_f}")
    return jacobi(-n, p) == 1 and bool(poly_roots_mod_p(f_n, p))


def in_s14(p: int) -> bool:
    """(x^2 + 1)^2 = 8 has a solution mod p."""
    return bool(poly_roots_mod_p(F14, p))


def mutual_exclusion_check(
    bound: int,
    n: int = 14,
    forms: tuple[QuadForm, QuadForm] = (QuadForm(1, 0, 14), QuadForm(2, 0, 7)),
) -> list[int]:
    """Odd primes p <= bound, p not dividing n, represented by both forms."""
    if bound < 3:
        raise ValueError(f"bound must be at least 3, got {bound}")
    f, g = forms
    return [
        p
        for p in primes_up_to(bound)
        if p != 2 and n % p and represent(p, f) is not None and represent(p, g) is not None
    ]


@dataclass(frozen=True)
class FormRow:
    form: QuadForm
    residues: tuple[int, ...]
    primes: int
    in_S: tuple[int, ...] | None = None
    not_in_S: tuple[int, ...] | None = None


@dataclass(frozen=True)
class PairTable:
    n: int
    bound: int
    modulus: int
    rows: tuple[FormRow, ...]
    genera: tuple[tuple[tuple[int, ...], tuple[QuadForm, ...]], ...]


def classify_pair_table(n: int, bound: int) -> PairTable:
    """For each reduced form of discriminant -4n, the residues mod 4n of the
    eligible primes <= bound it represents. For n = 14 each residue list is
    further split by membership of the prime in S."""
    _check_n(n)
    modulus = 4 * n
    forms = enumerate_reduced(-modulus)
    hits: dict[QuadForm, list[int]] = {f: [] for f in forms}
    for p in primes_up_to(bound):
        if p == 2 or n % p == 0:
            continue
        for f in _classify(p, n).forms:
            hits[f].append(p)
    rows = []
    for f in forms:
        ps = hits[f]
        row = FormRow(f, tuple(sorted({p % modulus for p in ps})), len(ps))
        if n == 14:
            row = FormRow(
                f,
                row.residues,
                row.primes,
                tuple(sorted({p % modulus for p in ps if in_s14(p)})),
                tuple(sorted({p % modulus for p in ps if not in_s14(p)})),
            )
        rows.append(row)
    genera = tuple(
        (tuple(sorted(res)), blk) for res, blk in genus_partition(-modulus).blocks
    )
    return PairTable(n, bound, modulus, tuple(rows), genera)


@dataclass
class SweepReport:
    n_max: int
    p_max: int
    pairs_tested: int = 0
    representable: int = 0
    mismatches: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _sweep_one(n: int, primes: tuple[int, ...], inject_fault: bool) -> tuple[int, int, list]:
    eligible = [p for p in primes if p != 2 and n % p]
    tested = hits = 0
    bad = []
    for i, p in enumerate(eligible):
        for q in eligible[i + 1 :]:
            got = decide_pq(p, q, n).representable
            if inject_fault and tested == 0:
                got = not got
            want = brute_force_pq(p, q, n) is not None
            tested += 1
            hits += want
            if got != want:
                bad.append((n, p, q))
    return tested, hits, bad


def sweep_theorem(n_max: int, p_max: int, jobs: int = 1, inject_fault: bool = False) -> SweepReport:
    """Compare decide_pq with brute_force_pq over all n <= n_max and
    distinct odd primes p < q <= p_max not dividing n.

    inject_fault flips the first decision (harness self-test).
    """
    if n_max < 1 or p_max < 1:
        raise ValueError("sweep bounds must be positive")
    primes = tuple(primes_up_to(p_max))
    ns = range(1, n_max + 1)
    faults = [inject_fault and n == 1 for n in ns]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_one, ns, [primes] * len(ns), faults))
    else:
        parts = [_sweep_one(n, primes, f) for n, f in zip(ns, faults)]
    report = SweepReport(n_max, p_max)
    for tested, hits, bad in parts:  # map preserves n order
        report.pairs_tested += tested
        report.representable += hits
        report.mismatches.extend(bad)
    return report
