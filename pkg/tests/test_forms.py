import itertools
from math import gcd

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pqforms.forms import (
    QuadForm,
    Representation,
    UnimodularMap,
    discriminant,
    enumerate_reduced,
    is_reduced,
    reduce,
    represent,
    represented_residues,
)

SMALL_SL2 = np.array(
    [m for m in itertools.product(range(-10, 11), repeat=4) if m[0] * m[3] - m[1] * m[2] == 1],
    dtype=np.int64,
)

DISCRIMINANTS = [D for D in range(-3, -4001, -1) if D % 4 in (0, 1)]


def fingerprint(f, limit=40):
    """Representation counts r_f(m) for m < limit, by grid enumeration."""
    counts = [0] * limit
    for x in range(-limit, limit + 1):
        for y in range(-limit, limit + 1):
            v = f(x, y)
            if v < limit:
                counts[v] += 1
    return tuple(counts)


def unimodular(draw_ops):
    m = UnimodularMap.identity()
    for op, k in draw_ops:
        if op == 0:
            m = m @ UnimodularMap(1, k, 0, 1)
        elif op == 1:
            m = m @ UnimodularMap(1, 0, k, 1)
        else:
            m = m @ UnimodularMap(0, -1, 1, 0)
    return m


unimodular_maps = st.lists(
    st.tuples(st.integers(0, 2), st.integers(-5, 5)), max_size=8
).map(unimodular)


@st.composite
def reduced_forms(draw, max_abs_d=2000):
    D = draw(st.sampled_from([D for D in DISCRIMINANTS if -D <= max_abs_d]))
    return draw(st.sampled_from(enumerate_reduced(D)))


@pytest.mark.parametrize("f, D", [((1, 0, 5), -20), ((2, 2, 3), -20), ((3, -2, 5), -56)])
def test_discriminant_examples(f, D):
    assert discriminant(QuadForm(*f)) == D


@pytest.mark.parametrize("f, expected", [((2, 2, 3), True), ((2, -2, 3), False), ((3, 2, 2), False)])
def test_is_reduced_examples(f, expected):
    assert is_reduced(QuadForm(*f)) is expected


def test_constructor_rejects_indefinite():
    for abc in ((1, 3, 1), (-1, 0, -5), (0, 1, 1), (1, 2, 1)):
        with pytest.raises(ValueError):
            QuadForm(*abc)


def test_serialisation_roundtrip():
    f = QuadForm(3, -2, 5)
    assert str(f) == "3,-2,5"
    assert QuadForm.parse(str(f)) == f
    assert f.pretty() == "3x^2-2xy+5y^2"


def test_unimodular_map_validation():
    with pytest.raises(ValueError):
        UnimodularMap(2, 0, 0, 1)
    m = UnimodularMap(2, 1, 1, 1)
    assert (m @ m.inverse()) == UnimodularMap.identity()
    assert UnimodularMap(0, 1, 1, 0).det == -1


def test_reduce_already_reduced():
    g, m = reduce(QuadForm(1, 0, 5))
    assert g == QuadForm(1, 0, 5) and m == UnimodularMap.identity()


@pytest.mark.parametrize("f", [(3, 2, 2), (2, -2, 3)])
def test_reduce_examples(f):
    f = QuadForm(*f)
    g, m = reduce(f)
    assert g == QuadForm(2, 2, 3)
    assert m.det == 1 and g.substitute(m) == f
    # oracle: among small forms of discriminant -20, f shares its
    # representation fingerprint with exactly one reduced form
    fp = fingerprint(f)
    matches = [h for h in enumerate_reduced(-20) if fingerprint(h) == fp]
    assert matches == [QuadForm(2, 2, 3)]


def test_reduce_rejects_imprimitive():
    with pytest.raises(ValueError):
        reduce(QuadForm(2, 0, 2))


@given(reduced_forms(), unimodular_maps)
@settings(max_examples=400)
def test_reduce_recovers_reduced_representative(f, m):
    g = f.substitute(m)
    r, back = reduce(g)
    assert r == f
    assert back.det == 1
    assert r.substitute(back) == g
    assert reduce(r)[0] == r


@pytest.mark.parametrize(
    "D, expected",
    [
        (-20, [(1, 0, 5), (2, 2, 3)]),
        (-56, [(1, 0, 14), (2, 0, 7), (3, -2, 5), (3, 2, 5)]),
        (-4, [(1, 0, 1)]),
    ],
)
def test_enumerate_reduced_examples(D, expected):
    assert enumerate_reduced(D) == [QuadForm(*abc) for abc in expected]


def test_enumerate_reduced_rejects_bad_discriminants():
    for D in (0, 5, -5, -6):
        with pytest.raises(ValueError):
            enumerate_reduced(D)


def brute_reduced(D):
    """Every (a, b, c) with |b| <= a <= c and b^2 - 4ac = D, by direct scan."""
    out = []
    for a in range(1, -D + 1):
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c >= a and gcd(a, b, c) == 1 and QuadForm(a, b, c).is_reduced():
                out.append(QuadForm(a, b, c))
    return sorted(out)


@pytest.mark.parametrize("D", [D for D in DISCRIMINANTS if -D <= 600])
def test_enumerate_reduced_matches_scan(D):
    assert enumerate_reduced(D) == brute_reduced(D)


def test_class_number_one_discriminants():
    # the thirteen imaginary quadratic orders with class number one
    ones = [D for D in DISCRIMINANTS if len(enumerate_reduced(D)) == 1]
    assert ones == [-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163]


def test_even_middle_coefficient_for_minus_4n():
    for n in range(1, 500):
        assert all(f.b % 2 == 0 for f in enumerate_reduced(-4 * n))


def test_reduced_forms_pairwise_inequivalent():
    """No SL2 matrix with entries bounded by 10 carries one reduced form of
    D to another, for every D down to -4000."""
    p, q, r, s = SMALL_SL2.T
    for D in DISCRIMINANTS:
        forms = enumerate_reduced(D)
        if len(forms) < 2:
            continue
        members = {(f.a, f.b, f.c) for f in forms}
        for f in forms:
            a, b, c = f.a, f.b, f.c
            A = a * p * p + b * p * r + c * r * r
            B = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s
            C = a * q * q + b * q * s + c * s * s
            images = set(zip(A.tolist(), B.tolist(), C.tolist()))
            assert images & members == {(a, b, c)}, (D, f)


@pytest.mark.parametrize(
    "m, f, expected",
    [(3, (2, 2, 3), (0, 1)), (21, (1, 0, 5), (4, 1)), (11, (1, 0, 5), None)],
)
def test_represent_examples(m, f, expected):
    rep = represent(m, QuadForm(*f))
    if expected is None:
        assert rep is None
    else:
        assert (rep.x, rep.y) == expected
        assert rep.form(rep.x, rep.y) == m


def test_represent_21_other_solution():
    # (1, 2) also solves it but has larger |y|
    assert QuadForm(1, 0, 5)(1, 2) == 21


def test_representation_proper_flag():
    assert Representation(3, 0, 1, QuadForm(2, 2, 3)).proper
    assert not Representation(20, 0, 2, QuadForm(1, 0, 5)).proper


def test_represent_rejects_nonpositive():
    with pytest.raises(ValueError):
        represent(0, QuadForm(1, 0, 1))


def _key(x, y):
    return (abs(y), x < 0, abs(x), y < 0)


def test_represent_matches_grid_brute_force():
    """All m <= 500, every reduced form with |D| <= 200, against a plain
    scan of |x|, |y| <= m."""
    M = 500
    grid = np.arange(-M, M + 1, dtype=np.int64)
    X, Y = np.meshgrid(grid, grid, indexing="ij")
    for D in DISCRIMINANTS:
        if -D > 200:
            break
        for f in enumerate_reduced(D):
            V = f.a * X * X + f.b * X * Y + f.c * Y * Y
            sel = V <= M
            vals, xs, ys = V[sel], X[sel], Y[sel]
            best = {}
            for v, x, y in zip(vals.tolist(), xs.tolist(), ys.tolist()):
                if v >= 1 and (v not in best or _key(x, y) < _key(*best[v])):
                    best[v] = (x, y)
            for m in range(1, M + 1):
                rep = represent(m, f)
                if m in best:
                    assert rep is not None and (rep.x, rep.y) == best[m], (f, m)
                else:
                    assert rep is None, (f, m)


def test_represent_large_values_vector_path():
    f = QuadForm(1, 0, 5)
    for m in (3 * 7 * 10007 * 10009, 10**12 + 39):
        rep = represent(m, f)
        if rep is not None:
            assert f(rep.x, rep.y) == m
    # 4am beyond int64 with few y values: pure-int path
    g = QuadForm(1, 0, 10**18)
    big = g(10**9 + 7, 2)
    assert 4 * big > 2**63
    rep = represent(big, g)
    assert (rep.x, rep.y) == (10**9 + 7, 2)


@given(reduced_forms(max_abs_d=400), unimodular_maps, st.integers(1, 300))
@settings(max_examples=500)
def test_equivalent_forms_represent_same_numbers(f, m, value):
    g = f.substitute(m)
    assert (represent(value, f) is None) == (represent(value, g) is None)
    rep = represent(value, g)
    if rep is not None:
        assert g(rep.x, rep.y) == value


@given(st.integers(-40, 40), st.integers(-40, 40), reduced_forms(max_abs_d=400))
def test_represent_finds_evaluated_values(x, y, f):
    assume(x or y)
    m = f(x, y)
    rep = represent(m, f)
    assert rep is not None and f(rep.x, rep.y) == m
    assert _key(rep.x, rep.y) <= _key(x, y)


@pytest.mark.parametrize(
    "f, modulus, expected",
    [
        ((1, 0, 5), 20, {1, 9}),
        ((2, 2, 3), 20, {3, 7}),
        ((3, 2, 5), 56, {3, 5, 13, 19, 27, 45}),
        ((3, -2, 5), 56, {3, 5, 13, 19, 27, 45}),
        ((1, 0, 14), 56, {1, 9, 15, 23, 25, 39}),
        ((2, 0, 7), 56, {1, 9, 15, 23, 25, 39}),
    ],
)
def test_represented_residues_examples(f, modulus, expected):
    assert represented_residues(QuadForm(*f), modulus) == expected


def test_represented_residues_against_loop():
    for n in (3, 6, 10, 21):
        for f in enumerate_reduced(-4 * n):
            M = 4 * n
            want = {f(x, y) % M for x in range(M) for y in range(M)}
            want = {v for v in want if gcd(v, M) == 1}
            assert represented_residues(f) == want
