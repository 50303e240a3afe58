"""Exact modular arithmetic: primality, Jacobi symbols, square roots and
polynomial roots modulo an odd prime."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

# Jaeschke / Sorenson-Webster: the first 13 primes as Miller-Rabin bases are
# deterministic below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981

# Above this, poly_roots_mod_p only handles polynomials solvable by square roots.
EXHAUSTIVE_ROOT_LIMIT = 1 << 20

# Largest value fed to the vectorised int64 kernels.
INT64_SAFE = 1 << 62

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(m: int) -> bool:
    """Deterministic primality test.

    Raises OverflowError for m beyond the range where the fixed witness set
    is proven.
    """
    if m < 2:
        return False
    for sp in _SMALL_PRIMES:
        if m == sp:
            return True
        if m % sp == 0:
            return False
    if m >= MR_DETERMINISTIC_LIMIT:
        raise OverflowError(f"{m} exceeds the deterministic primality range")
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound (sieve of Eratosthenes)."""
    if bound < 2:
        return []
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).tolist()


def jacobi(a: int, m: int) -> int:
    if m <= 0 or m % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {m}")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Square root of a modulo the odd prime p, or None for a non-residue.

    Of the two roots the one in [0, (p-1)/2] is returned.
    """
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi(z, p) != -1:
            z += 1
        c = pow(z, q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (s - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            s = i
    return min(r, p - r)


def isqrt_array(values: np.ndarray) -> np.ndarray:
    """Exact floor square root of a nonnegative int64 array with entries < 2**62."""
    s = np.sqrt(values.astype(np.float64)).astype(np.int64)
    # float rounding is off by at most one either way at this magnitude
    s -= (s * s > values).astype(np.int64)
    s += ((s + 1) * (s + 1) <= values).astype(np.int64)
    return s


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order."""

    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Iterable[int]):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def reduce_mod(self, p: int) -> IntPolynomial:
        return IntPolynomial(c % p for c in self.coefficients)

    def discriminant(self) -> int:
        """Polynomial discriminant, via sympy's resultant of f and f'."""
        import sympy

        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(self.coefficients)), x, domain="ZZ")
        return int(poly.discriminant())


# (x^2 + 1)^2 - 8 = x^4 + 2x^2 - 7 generates the ring class field for n = 14.
F14 = IntPolynomial((-7, 0, 2, 0, 1))
F14_DISCRIMINANT = -(2**14) * 7


def _as_poly(f: IntPolynomial | Sequence[int]) -> IntPolynomial:
    return f if isinstance(f, IntPolynomial) else IntPolynomial(f)


def _roots_exhaustive(coeffs: tuple[int, ...], p: int) -> set[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % p
    return set(np.flatnonzero(acc == 0).tolist())


def _roots_deg_le2(coeffs: tuple[int, ...], p: int) -> set[int]:
    c0, c1, c2 = (tuple(coeffs) + (0, 0, 0))[:3]
    if c2 == 0:
        if c1 == 0:
            return set() if c0 else set(range(p))
        return {-c0 * pow(c1, -1, p) % p}
    s = sqrt_mod_p(c1 * c1 - 4 * c2 * c0, p)
    if s is None:
        return set()
    inv = pow(2 * c2, -1, p)
    return {(-c1 + s) * inv % p, (-c1 - s) * inv % p}


def _roots_by_square_roots(coeffs: tuple[int, ...], p: int) -> set[int]:
    """Roots of a polynomial of degree <= 2, or an even one of degree <= 4,
    by nested square-root extraction."""
    if len(coeffs) <= 3:
        return _roots_deg_le2(coeffs, p)
    if len(coeffs) <= 5 and all(c == 0 for c in coeffs[1::2]):
        roots = set()
        for u in _roots_deg_le2(coeffs[0::2], p):
            r = sqrt_mod_p(u, p)
            if r is not None:
                roots.update({r, (p - r) % p})
        return roots
    raise ValueError(
        f"degree-{len(coeffs) - 1} polynomial is not solvable by square roots; "
        f"exhaustive search is limited to p < {EXHAUSTIVE_ROOT_LIMIT}"
    )


def poly_roots_mod_p(f: IntPolynomial | Sequence[int], p: int) -> set[int]:
    """All roots in [0, p-1] of f modulo the odd prime p."""
    reduced = _as_poly(f).reduce_mod(p)
    if reduced.is_zero():
        raise ValueError(f"polynomial vanishes identically mod {p}")
    if p < EXHAUSTIVE_ROOT_LIMIT:
        return _roots_exhaustive(reduced.coefficients, p)
    return _roots_by_square_roots(reduced.coefficients, p)
