"""Positive definite binary quadratic forms ax^2 + bxy + cy^2.

Reduction, enumeration of reduced forms, representation search with
witnesses and represented residues modulo |D|.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .numtheory import INT64_SAFE, isqrt_array

# below this many y values a plain loop beats numpy's call overhead
_VECTOR_MIN = 48


@dataclass(frozen=True)
class UnimodularMap:
    """Integer matrix [[p, q], [r, s]] of determinant +1 or -1, acting by
    (x, y) -> (px + qy, rx + sy)."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValueError(f"determinant {self.det} is not +-1")

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    @classmethod
    def identity(cls) -> UnimodularMap:
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: UnimodularMap) -> UnimodularMap:
        return UnimodularMap(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def inverse(self) -> UnimodularMap:
        d = self.det
        return UnimodularMap(d * self.s, -d * self.q, -d * self.r, d * self.p)


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.b * self.b - 4 * self.a * self.c >= 0:
            raise ValueError(f"({self.a},{self.b},{self.c}) is not positive definite")

    @classmethod
    def parse(cls, text: str) -> QuadForm:
        """Read the "a,b,c" serialisation."""
        a, b, c = (int(t) for t in text.split(","))
        return cls(a, b, c)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.c]

    def pretty(self) -> str:
        def term(coef, var, first):
            if coef == 0:
                return ""
            sign = "-" if coef < 0 else ("" if first else "+")
            mag = "" if abs(coef) == 1 else str(abs(coef))
            return f"{sign}{mag}{var}"

        out = term(self.a, "x^2", True)
        out += term(self.b, "xy", not out)
        out += term(self.c, "y^2", not out)
        return out

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(self.a, self.b, self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def substitute(self, m: UnimodularMap) -> QuadForm:
        """The form (x, y) -> self(px + qy, rx + sy)."""
        a, b, c = self.a, self.b, self.c
        p, q, r, s = m.p, m.q, m.r, m.s
        return QuadForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def opposite(self) -> QuadForm:
        """(a, -b, c): the inverse class under composition."""
        return QuadForm(self.a, -self.b, self.c)


@dataclass(frozen=True)
class Representation:
    m: int
    x: int
    y: int
    form: QuadForm

    @property
    def proper(self) -> bool:
        return gcd(self.x, self.y) == 1


def discriminant(f: QuadForm) -> int:
    return f.discriminant


def is_reduced(f: QuadForm) -> bool:
    return f.is_reduced()


def check_discriminant(D: int) -> None:
    if D >= 0:
        raise ValueError(f"discriminant must be negative, got {D}")
    if D % 4 not in (0, 1):
        raise ValueError(f"discriminant {D} is not 0 or 1 mod 4")


_SWAP = UnimodularMap(0, -1, 1, 0)


def reduce(f: QuadForm) -> tuple[QuadForm, UnimodularMap]:
    """Gauss reduction.

    Returns (g, M) with g reduced and properly equivalent to f, and M of
    determinant +1 such that g.substitute(M) == f.
    """
    if not f.is_primitive():
        raise ValueError(f"{f} is not primitive")
    a, b, c = f.a, f.b, f.c
    t = UnimodularMap.identity()  # current form == f.substitute(t)
    while True:
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            a, b, c = a, b + 2 * a * k, a * k * k + b * k + c
            t = t @ UnimodularMap(1, k, 0, 1)
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            t = t @ _SWAP
            continue
        break
    g = QuadForm(a, b, c)
    return g, t.inverse()


def reduced_form(f: QuadForm) -> QuadForm:
    return reduce(f)[0]


@lru_cache(maxsize=4096)
def _enumerate_reduced(D: int) -> tuple[QuadForm, ...]:
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or gcd(a, b, c) != 1:
                continue
            f = QuadForm(a, b, c)
            if f.is_reduced():
                out.append(f)
    if D % 4 == 0:
        assert all(f.b % 2 == 0 for f in out), "odd middle coefficient for D = -4n"
    return tuple(sorted(out))


def enumerate_reduced(D: int) -> list[QuadForm]:
    """All primitive reduced forms of discriminant D, sorted by (a, b, c).

    The list length is the class number h(D).
    """
    check_discriminant(D)
    return list(_enumerate_reduced(D))


def class_number(D: int) -> int:
    return len(enumerate_reduced(D))


def _witness_key(x: int, y: int) -> tuple:
    return (abs(y), x < 0, abs(x), y < 0)


def _x_solutions(f: QuadForm, m: int, y: int, disc: int) -> list[int]:
    """Integer x with f(x, y) = m, given the x-discriminant disc = Dy^2 + 4am."""
    s = isqrt(disc)
    if s * s != disc:
        return []
    two_a = 2 * f.a
    xs = []
    for num in (-f.b * y + s, -f.b * y - s):
        if num % two_a == 0:
            xs.append(num // two_a)
    return xs


def _first_y_loop(f: QuadForm, m: int, ymax: int) -> Representation | None:
    for ay in range(ymax + 1):
        rep = _witness_at(f, m, ay)
        if rep is not None:
            return rep
    return None


def _first_y_vector(f: QuadForm, m: int, ymax: int) -> Representation | None:
    ys = np.arange(ymax + 1, dtype=np.int64)
    disc = f.discriminant * ys * ys + 4 * f.a * m
    disc = np.maximum(disc, 0)
    roots = isqrt_array(disc)
    # a square x-discriminant is necessary; integrality of x is checked exactly
    for ay in np.flatnonzero(roots * roots == disc).tolist():
        rep = _witness_at(f, m, ay)
        if rep is not None:
            return rep
    return None


def _witness_at(f: QuadForm, m: int, ay: int) -> Representation | None:
    disc = f.discriminant * ay * ay + 4 * f.a * m
    if disc < 0:
        return None
    found = [(x, y) for y in {ay, -ay} for x in _x_solutions(f, m, y, disc)]
    if not found:
        return None
    x, y = min(found, key=lambda w: _witness_key(*w))
    return Representation(m, x, y, f)


def represent(m: int, f: QuadForm) -> Representation | None:
    """Find (x, y) with f(x, y) = m, or None if there is none.

    From 4a f(x,y) = (2ax + by)^2 + |D| y^2 every solution has
    |y| <= sqrt(4am / |D|), and each y leaves a quadratic in x. The witness
    returned minimises |y|, then prefers x >= 0 with |x| minimal, then y >= 0.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    D = f.discriminant
    ymax = isqrt(4 * f.a * m // -D)
    if ymax >= _VECTOR_MIN and 4 * f.a * m < INT64_SAFE:
        return _first_y_vector(f, m, ymax)
    return _first_y_loop(f, m, ymax)


def represents(f: QuadForm, m: int) -> bool:
    return represent(m, f) is not None


def represented_residues(f: QuadForm, modulus: int | None = None) -> frozenset[int]:
    """Units mod |D| taken as values by f, from a scan of one full period
    [0, |D|) x [0, |D|)."""
    if modulus is None:
        modulus = -f.discriminant
    return _represented_residues(f.a, f.b, f.c, modulus)


@lru_cache(maxsize=4096)
def _represented_residues(a: int, b: int, c: int, modulus: int) -> frozenset[int]:
    r = np.arange(modulus, dtype=np.int64)
    sq = r * r % modulus
    ax2 = a % modulus * sq % modulus
    cy2 = c % modulus * sq % modulus
    seen = np.zeros(modulus, dtype=bool)
    bx = b % modulus * r % modulus
    step = max(1, (1 << 22) // modulus)
    for y0 in range(0, modulus, step):
        ys = r[y0 : y0 + step, None]
        vals = (ax2 + cy2[ys] + bx * ys % modulus) % modulus
        seen |= np.bincount(vals.ravel(), minlength=modulus).astype(bool)
    units = np.gcd(r, modulus) == 1
    return frozenset(np.flatnonzero(seen & units).tolist())
