"""The form class group C(D) under Dirichlet composition, its genus
partition, and the convenient-number test."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

from .errors import ConsistencyError
from .forms import (
    QuadForm,
    UnimodularMap,
    check_discriminant,
    enumerate_reduced,
    reduced_form,
    represented_residues,
)

# radius of the proper-representation search used to make leading
# coefficients coprime before composing
_COPRIME_SEARCH_RADIUS = 10


def principal_form(n: int) -> QuadForm:
    """x^2 + ny^2."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return QuadForm(1, 0, n)


def identity_form(D: int) -> QuadForm:
    check_discriminant(D)
    if D % 4 == 0:
        return QuadForm(1, 0, -D // 4)
    return QuadForm(1, 1, (1 - D) // 4)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _move_coprime(g: QuadForm, modulus: int) -> QuadForm:
    """A form properly equivalent to g whose leading coefficient is prime
    to modulus."""
    rad = _COPRIME_SEARCH_RADIUS
    candidates = sorted(
        ((x, y) for x, y in product(range(-rad, rad + 1), repeat=2) if gcd(x, y) == 1),
        key=lambda w: (g(*w), abs(w[0]) + abs(w[1])),
    )
    for x, y in candidates:
        if gcd(g(x, y), modulus) == 1:
            _, s, r = _xgcd(x, y)  # x*s + y*r == 1
            return g.substitute(UnimodularMap(x, -r, y, s))
    raise ConsistencyError(
        f"no value of {g} prime to {modulus} within radius {rad}"
    )


def dirichlet_compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Dirichlet's composite (a1 a2, B, C) before reduction.

    Requires gcd(a1, a2, (b1 + b2)/2) = 1. B is the least nonnegative
    solution of B = b1 (2a1), B = b2 (2a2), B^2 = D (4 a1 a2).
    """
    D = f.discriminant
    a1, b1 = f.a, f.b
    a2, b2 = g.a, g.b
    h = (b1 + b2) // 2
    e1, u, v = _xgcd(a1, a2)
    e, s, w = _xgcd(e1, h)
    if e != 1:
        raise ValueError(f"{f} and {g} are not united: gcd(a1, a2, (b1+b2)/2) = {e}")
    u, v = s * u, s * v  # u a1 + v a2 + w h = 1
    mod = 2 * a1 * a2
    B = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + D) // 2) % mod
    if (B - b1) % (2 * a1) or (B - b2) % (2 * a2) or (B * B - D) % (2 * mod):
        raise ConsistencyError(f"composition congruences fail for {f}, {g}: B={B}")
    A = a1 * a2
    return QuadForm(A, B, (B * B - D) // (4 * A))


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Reduced representative of the product of the classes of f and g."""
    if f.discriminant != g.discriminant:
        raise ValueError(
            f"discriminants differ: {f.discriminant} and {g.discriminant}"
        )
    if not (f.is_primitive() and g.is_primitive()):
        raise ValueError("composition needs primitive forms")
    return _compose_cached(f, g)


@lru_cache(maxsize=1 << 16)
def _compose_cached(f: QuadForm, g: QuadForm) -> QuadForm:
    if gcd(f.a, g.a, (f.b + g.b) // 2) != 1:
        g = _move_coprime(g, f.a)
    return reduced_form(dirichlet_compose(f, g))


def _small_factor(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class FormClassGroup:
    D: int
    classes: tuple[QuadForm, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.classes)

    def index(self, f: QuadForm) -> int:
        return self.classes.index(reduced_form(f))

    @property
    def identity(self) -> QuadForm:
        return identity_form(self.D)

    def mul(self, f: QuadForm, g: QuadForm) -> QuadForm:
        return self.classes[self.table[self.index(f)][self.index(g)]]

    def inverse(self, f: QuadForm) -> QuadForm:
        return reduced_form(reduced_form(f).opposite())

    def power(self, f: QuadForm, k: int) -> QuadForm:
        out = self.identity
        for _ in range(k):
            out = self.mul(out, f)
        return out

    def element_order(self, f: QuadForm) -> int:
        i = self.index(f)
        e = self.classes.index(self.identity)
        k, cur = 1, i
        while cur != e:
            cur = self.table[cur][i]
            k += 1
        return k

    def invariants(self) -> list[int]:
        """Invariant factors d1 | d2 | ... with C(D) = Z/d1 x Z/d2 x ...,
        read off from element orders. Empty for the trivial group."""
        orders = [self.element_order(f) for f in self.classes]
        cyclic_parts: list[list[int]] = []  # per prime, exponents of p-parts
        for p, mult in _small_factor(self.order).items():
            # log_p of #{x : x^(p^k) = 1}
            logs = []
            k = 0
            while True:
                count = sum(1 for o in orders if (p**k) % o == 0)
                logs.append(_small_factor(count).get(p, 0))
                if logs[-1] == mult:
                    break
                k += 1
            # number of cyclic p-factors of order >= p^k is logs[k] - logs[k-1]
            exps = []
            for k in range(len(logs) - 1, 0, -1):
                at_least = logs[k] - logs[k - 1]
                exps.extend([k] * (at_least - len(exps)))
            cyclic_parts.append([p**x for x in exps])
        width = max((len(c) for c in cyclic_parts), default=0)
        factors = [1] * width
        for parts in cyclic_parts:
            for i, q in enumerate(parts):
                factors[width - 1 - i] *= q
        return factors

    def is_cyclic(self) -> bool:
        return len(self.invariants()) <= 1

    def check_axioms(self) -> None:
        """Raise ConsistencyError unless the table is an abelian group law
        with the principal class as identity and (a,-b,c) as inverse."""
        h = self.order
        t = self.table
        e = self.classes.index(self.identity)
        for i in range(h):
            if t[e][i] != i or t[i][e] != i:
                raise ConsistencyError(f"identity law fails at {self.classes[i]}")
            j = self.classes.index(self.inverse(self.classes[i]))
            if t[i][j] != e:
                raise ConsistencyError(f"inverse law fails at {self.classes[i]}")
            for j in range(h):
                if t[i][j] != t[j][i]:
                    raise ConsistencyError("composition is not commutative")
                for k in range(h):
                    if t[t[i][j]][k] != t[i][t[j][k]]:
                        raise ConsistencyError("composition is not associative")


def class_group(D: int) -> FormClassGroup:
    """Build C(D) with its full composition table, checking the group axioms."""
    return _class_group(D)


@lru_cache(maxsize=256)
def _class_group(D: int) -> FormClassGroup:
    classes = tuple(enumerate_reduced(D))
    pos = {f: i for i, f in enumerate(classes)}
    try:
        table = tuple(tuple(pos[compose(f, g)] for g in classes) for f in classes)
    except KeyError as exc:
        raise ConsistencyError(f"composition left the reduced forms of {D}") from exc
    group = FormClassGroup(D, classes, table)
    group.check_axioms()
    return group


@dataclass(frozen=True)
class GenusPartition:
    D: int
    blocks: tuple[tuple[frozenset[int], tuple[QuadForm, ...]], ...]

    def block_of(self, f: QuadForm) -> int:
        f = reduced_form(f)
        for i, (_, forms) in enumerate(self.blocks):
            if f in forms:
                return i
        raise KeyError(f)

    def block_of_residue(self, r: int) -> int | None:
        r %= -self.D
        for i, (residues, _) in enumerate(self.blocks):
            if r in residues:
                return i
        return None


def genus_partition(D: int) -> GenusPartition:
    """Group the reduced forms of D by the units mod |D| they represent.
    Blocks are ordered by their smallest residue."""
    groups: dict[frozenset[int], list[QuadForm]] = {}
    for f in enumerate_reduced(D):
        groups.setdefault(represented_residues(f, -D), []).append(f)
    blocks = sorted(
        ((res, tuple(forms)) for res, forms in groups.items()),
        key=lambda blk: min(blk[0]),
    )
    return GenusPartition(D, tuple(blocks))


def is_convenient(n: int) -> bool:
    """Every genus of discriminant -4n holds a single class."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return all(len(forms) == 1 for _, forms in genus_partition(-4 * n).blocks)
