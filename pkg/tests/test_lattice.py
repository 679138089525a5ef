from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kunum.errors import NonPositiveOrientation, NotPrimitive, UnitVector
from kunum.lattice import (
    LatticeVector as V,
    continued_fraction,
    cross,
    delta_sin_sq,
    is_primitive,
    norm_sq,
    pick_decompose,
    pick_oracle,
    triangle_points,
    triangle_points_oracle,
)

ints = st.integers(-10**6, 10**6)
vectors = st.builds(V, ints, ints)


def primitive_vectors(max_coord=60):
    return (
        st.tuples(st.integers(-max_coord, max_coord), st.integers(-max_coord, max_coord))
        .filter(lambda t: (t[0], t[1]) != (0, 0) and gcd(abs(t[0]), abs(t[1])) == 1)
        .filter(lambda t: t[0] * t[0] + t[1] * t[1] > 1)
        .map(lambda t: V(*t))
    )


def unimodular(st_shears=st.lists(st.tuples(st.booleans(), st.integers(-3, 3)), max_size=6)):
    """Orientation-preserving unimodular matrices as products of shears."""

    def build(shears):
        m = ((1, 0), (0, 1))
        for upper, k in shears:
            s = ((1, k), (0, 1)) if upper else ((1, 0), (k, 1))
            m = (
                (m[0][0] * s[0][0] + m[0][1] * s[1][0], m[0][0] * s[0][1] + m[0][1] * s[1][1]),
                (m[1][0] * s[0][0] + m[1][1] * s[1][0], m[1][0] * s[0][1] + m[1][1] * s[1][1]),
            )
        return m

    return st_shears.map(build)


# ------------------------------------------------------------ cross / norm


def test_cross_examples():
    assert cross(V(1, 0), V(0, 1)) == 1
    assert cross(V(2, 1), V(1, 1)) == 1
    assert cross(V(3, 2), V(3, 2)) == 0


@given(vectors, vectors)
def test_cross_antisymmetric(u, v):
    assert cross(u, v) == -cross(v, u)


@given(vectors, vectors, vectors, st.integers(-50, 50), st.integers(-50, 50))
def test_cross_bilinear(u, v, w, a, b):
    left = cross(V(a * u.a + b * v.a, a * u.b + b * v.b), w)
    assert left == a * cross(u, w) + b * cross(v, w)


def test_norm_sq_examples():
    assert norm_sq(V(0, 0)) == 0
    assert norm_sq(V(1, 0)) == 1
    assert norm_sq(V(3, 2)) == 13


def test_is_primitive():
    assert not is_primitive(V(2, 4))
    assert is_primitive(V(0, 1))
    assert is_primitive(V(5, 3))
    assert not is_primitive(V(0, 0))


def test_big_coordinates_no_overflow():
    big = 2**62
    v = V(big + 1, big)
    assert norm_sq(v) == (big + 1) ** 2 + big**2
    assert cross(v, V(big, big - 1)) == (big + 1) * (big - 1) - big * big


# ------------------------------------------------------------ pick


def test_pick_examples():
    assert pick_decompose(V(1, 1)) == (V(1, 0), V(0, 1))
    assert pick_decompose(V(2, 1)) == (V(1, 0), V(1, 1))
    assert pick_decompose(V(3, 2)) == (V(2, 1), V(1, 1))


def test_pick_rejects():
    with pytest.raises(NotPrimitive):
        pick_decompose(V(2, 4))
    with pytest.raises(UnitVector):
        pick_decompose(V(1, 0))
    with pytest.raises(UnitVector):
        pick_oracle(V(1, 0))
    with pytest.raises(NotPrimitive):
        pick_decompose(V(0, 0))


def test_pick_oracle_examples():
    assert pick_oracle(V(2, 1)) == (V(1, 0), V(1, 1))
    assert pick_oracle(V(5, 3)) == pick_decompose(V(5, 3))


@given(primitive_vectors())
@settings(max_examples=200)
def test_pick_defining_conditions(v):
    v_minus, v_plus = pick_decompose(v)
    assert v_minus + v_plus == v
    assert cross(v_minus, v) == cross(v, v_plus) == cross(v_minus, v_plus) == 1
    assert norm_sq(v_minus) < norm_sq(v)
    assert norm_sq(v_plus) < norm_sq(v)


def test_pick_matches_oracle_small():
    # exhaustive agreement on a disc; the full acceptance run goes to 10^4
    r = 20
    count = 0
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            v = V(a, b)
            if not is_primitive(v) or norm_sq(v) <= 1 or norm_sq(v) > 400:
                continue
            assert pick_decompose(v) == pick_oracle(v), v
            count += 1
    assert count == 764


@given(primitive_vectors(20), unimodular())
@settings(max_examples=150)
def test_pick_equivariance(v, g):
    mv = V(g[0][0] * v.a + g[0][1] * v.b, g[1][0] * v.a + g[1][1] * v.b)
    if norm_sq(mv) <= 1:
        return
    v_minus, v_plus = pick_decompose(v)
    gm = lambda u: V(g[0][0] * u.a + g[0][1] * u.b, g[1][0] * u.a + g[1][1] * u.b)
    assert pick_decompose(mv) == (gm(v_minus), gm(v_plus))


def test_continued_fraction_terminal_coefficient():
    assert continued_fraction(3, 2) == [1, 2]
    assert continued_fraction(5, 3) == [1, 1, 2]
    assert continued_fraction(-2, 3) == [-1, 3]
    for n, m in [(7, 5), (22, 7), (-9, 7), (1, 7)]:
        coeffs = continued_fraction(n, m)
        assert coeffs[-1] >= 2


# ------------------------------------------------------------ delta


def test_delta_examples():
    assert delta_sin_sq(V(1, 1)) == Fraction(1)
    assert delta_sin_sq(V(2, 1)) == Fraction(1, 2)
    assert delta_sin_sq(V(3, 2)) == Fraction(1, 10)


@given(primitive_vectors())
@settings(max_examples=200)
def test_delta_in_unit_interval(v):
    d = delta_sin_sq(v)
    assert 0 < d <= 1


# ------------------------------------------------------------ triangles


def test_triangle_examples():
    assert triangle_points(V(1, 0), V(0, 1)) == [V(0, 0), V(0, 1), V(1, 0)]
    assert triangle_points(V(2, 0), V(0, 1)) == [V(0, 0), V(0, 1), V(1, 0), V(2, 0)]
    assert V(0, 1) in triangle_points(V(1, 0), V(-1, 2))


def test_triangle_contains_corners():
    v, w = V(5, 2), V(-1, 3)
    pts = triangle_points(v, w)
    for corner in (V(0, 0), v, w):
        assert corner in pts


def test_triangle_rejects_orientation():
    with pytest.raises(NonPositiveOrientation):
        triangle_points(V(0, 1), V(1, 0))
    with pytest.raises(NonPositiveOrientation):
        triangle_points(V(1, 0), V(2, 0))


def test_triangle_matches_oracle_exhaustive():
    rng = range(-5, 6)
    checked = 0
    for va in rng:
        for vb in rng:
            for wa in rng:
                for wb in rng:
                    v, w = V(va, vb), V(wa, wb)
                    if not 0 < cross(v, w) <= 50:
                        continue
                    assert triangle_points(v, w) == triangle_points_oracle(v, w)
                    checked += 1
    assert checked > 1000


@given(
    st.builds(V, st.integers(-9, 9), st.integers(-9, 9)),
    st.builds(V, st.integers(-9, 9), st.integers(-9, 9)),
)
@settings(max_examples=150)
def test_triangle_matches_oracle_random(v, w):
    if not 0 < cross(v, w) <= 50:
        return
    assert triangle_points(v, w) == triangle_points_oracle(v, w)
