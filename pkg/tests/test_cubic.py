from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kunum.cubic import (
    ALPHA,
    BETA,
    GAMMA,
    KuClass,
    LiftedClass,
    chi,
    ext_locus_codim,
    fano_fiber_check,
    moduli_dim,
    moduli_info,
    parse_class,
    phase_gap_class,
    proj_ext_dim,
    quiver_canonical_degree,
    render_class,
    rotate,
    serre_act,
    sextant_index,
    sextant_normalize,
    strata,
    strata_beta,
)
from kunum.errors import (
    InvalidLift,
    OutOfSextant,
    PreconditionFailed,
    TooFewArrows,
    ZeroClass,
)

classes = st.builds(KuClass, st.integers(-20, 20), st.integers(-20, 20))
nonzero = classes.filter(lambda v: not v.is_zero())


# ------------------------------------------------------------ chi


def test_chi_table():
    assert chi(ALPHA, ALPHA) == chi(BETA, ALPHA) == chi(GAMMA, BETA) == -1
    assert chi(ALPHA, BETA) == chi(BETA, GAMMA) == chi(GAMMA, ALPHA) == 0
    assert chi(ALPHA, GAMMA) == 1


def test_chi_self_closed_form():
    for n in range(-100, 101):
        for m in range(-100, 101):
            assert chi(KuClass(n, m), KuClass(n, m)) == -(n * n + n * m + m * m)


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_chi_alpha_beta_multiples_orthogonal(n, m):
    assert chi(n * ALPHA, m * BETA) == 0


# ------------------------------------------------------------ serre / rotate


def test_serre_and_rotate_on_generators():
    assert serre_act(BETA) == ALPHA
    assert serre_act(ALPHA) == ALPHA - BETA
    assert rotate(ALPHA) == BETA
    assert rotate(BETA) == GAMMA


@given(nonzero)
@settings(max_examples=100)
def test_serre_cubed_is_negation(v):
    assert serre_act(serre_act(serre_act(v))) == -v


@given(nonzero)
@settings(max_examples=100)
def test_rotate_properties(v):
    w = v
    for _ in range(3):
        w = rotate(w)
    assert w == -v
    for _ in range(3):
        w = rotate(w)
    assert w == v
    assert serre_act(rotate(v)) == v  # serre_act is the inverse rotation


@given(nonzero, nonzero)
@settings(max_examples=100)
def test_serre_compatibility_identity(v, w):
    assert chi(v, w) == chi(w, serre_act(v))


# ------------------------------------------------------------ sextants


def test_sextant_normalize_examples():
    assert sextant_normalize(GAMMA) == (BETA, 1, 1)
    assert sextant_normalize(ALPHA) == (ALPHA, 0, 1)
    assert sextant_normalize(-BETA) == (BETA, 0, -1)


def test_sextant_normalize_rejects_zero():
    with pytest.raises(ZeroClass):
        sextant_normalize(KuClass(0, 0))


@given(nonzero)
@settings(max_examples=200)
def test_sextant_normalize_round_trip(v):
    normal, k, sign = sextant_normalize(v)
    assert normal.n >= 1 and normal.m >= 0 or (normal.n == 0 and normal.m >= 1)
    w = normal
    for _ in range(k):
        w = rotate(w)
    assert sign * w == v
    # idempotence: the normal form normalizes to itself
    assert sextant_normalize(normal) == (normal, 0, 1)


def test_sextant_index_of_generators():
    assert sextant_index(ALPHA) == 0
    assert sextant_index(BETA) == 1
    assert sextant_index(GAMMA) == 2
    assert sextant_index(-ALPHA) == 3
    assert sextant_index(-BETA) == 4
    assert sextant_index(-GAMMA) == 5


# ------------------------------------------------------------ phase gaps


def test_phase_gap_generators():
    a = LiftedClass.principal(ALPHA)
    b = LiftedClass.principal(BETA)
    g = LiftedClass.principal(GAMMA)
    gap_ab = phase_gap_class(a, b)
    assert gap_ab.exact() == Fraction(1, 3)
    assert phase_gap_class(a, g).exact() == Fraction(2, 3)


def test_phase_gap_of_serre_image():
    v = LiftedClass.principal(KuClass(3, 2))
    assert phase_gap_class(v, v.serre()).exact() == Fraction(5, 3)


def test_lift_validation():
    with pytest.raises(InvalidLift):
        LiftedClass(ALPHA, 1)
    with pytest.raises(ZeroClass):
        LiftedClass(KuClass(0, 0), 0)


@given(nonzero)
@settings(max_examples=100)
def test_lift_shift_and_rotation(v):
    lift = LiftedClass.principal(v)
    shifted = lift.shift(1)
    assert shifted.cls == -v and shifted.branch == lift.branch + 3
    rotated = lift
    for _ in range(6):
        rotated = rotated.rotate()
    assert rotated.cls == v and rotated.branch == lift.branch + 6


@given(nonzero, nonzero, st.integers(-2, 2))
@settings(max_examples=300)
def test_phase_chi_sign_law(v, w, t):
    # the sign zone read off the exact phase gap equals the sign of chi
    lv = LiftedClass.principal(v)
    lw = LiftedClass(w, sextant_index(w) + 6 * t)
    zone = phase_gap_class(lv, lw).chi_sign_zone()
    c = chi(v, w)
    assert zone == ("zero" if c == 0 else "negative" if c < 0 else "positive")


def test_phase_gap_small_exhaustive():
    # exhaustive over small classes and all branch offsets, gaps in (-1,1):
    # chi < 0 iff the gap is interior to (-2/3, 1/3); chi = 0 iff it is an
    # endpoint
    rng = [KuClass(n, m) for n in range(-4, 5) for m in range(-4, 5) if (n, m) != (0, 0)]
    for v in rng:
        lv = LiftedClass.principal(v)
        for w in rng:
            for t in range(-2, 3):
                lw = LiftedClass(w, sextant_index(w) + 6 * t)
                gap = phase_gap_class(lv, lw)
                lo, hi = gap.bounds()
                if not (-1 < lo and hi < 1) and not (
                    gap.kind == "boundary" and -1 < lo < 1
                ):
                    continue
                c = chi(v, w)
                in_window = (
                    gap.kind == "interior"
                    and Fraction(-2, 3) <= lo
                    and hi <= Fraction(1, 3)
                ) or (gap.kind == "boundary" and Fraction(-2, 3) < lo < Fraction(1, 3))
                on_edge = gap.kind == "boundary" and lo in (Fraction(-2, 3), Fraction(1, 3))
                assert (c < 0) == in_window, (v, w, t, gap)
                assert (c == 0) == on_edge, (v, w, t, gap)


# ------------------------------------------------------------ dimensions


def test_moduli_dim_anchors():
    assert moduli_dim(BETA) == 2
    assert moduli_dim(BETA + GAMMA) == 4
    assert moduli_dim(2 * BETA) == 5
    assert moduli_dim(KuClass(2, 1)) == 8


def test_moduli_dim_rejects_zero():
    with pytest.raises(ZeroClass):
        moduli_dim(KuClass(0, 0))


# ------------------------------------------------------------ strata


def test_strata_examples():
    assert strata(KuClass(1, 1)) == [
        type(strata(KuClass(1, 1))[0])(ALPHA, BETA, 0, True)
    ]
    got = strata(KuClass(2, 1))
    assert [(s.v1, s.v2, s.codim, s.dominant) for s in got] == [
        (KuClass(1, 0), KuClass(1, 1), 1, False),
        (KuClass(2, 0), KuClass(0, 1), 0, True),
    ]


def test_strata_rejects_off_quadrant():
    with pytest.raises(OutOfSextant):
        strata(KuClass(0, 3))
    with pytest.raises(OutOfSextant):
        strata(KuClass(-1, 2))


def test_strata_dominant_unique_and_minimal():
    for n in range(1, 31):
        for m in range(1, 31):
            result = strata(KuClass(n, m))
            dominant = [s for s in result if s.dominant]
            assert len(dominant) == 1
            assert dominant[0].codim == 0
            assert dominant[0].v1 == KuClass(n, 0)
            for s in result:
                if not s.dominant:
                    assert s.codim >= 1


def test_strata_beta():
    s = strata_beta(3)
    assert (s.v1, s.v2, s.codim, s.dominant) == (ALPHA, KuClass(-1, 3), 0, True)
    with pytest.raises(OutOfSextant):
        strata_beta(1)


# ------------------------------------------------------------ ext locus


def test_ext_locus_examples():
    r = ext_locus_codim(ALPHA, BETA)
    assert r.codim == 0 and r.valid
    # the dimension-count identity used for the one-step strata bound:
    # 2 - chi(n*alpha + (m-1)*beta, beta) = m + 1
    for n in range(1, 12):
        for m in range(1, 12):
            assert 2 - chi(KuClass(n, m - 1), BETA) == m + 1


def test_ext_locus_small_gap_positive_codim():
    # pairs with gap in (0, 1/3) always have positive codimension
    found = 0
    for n1 in range(1, 6):
        for m1 in range(0, 6):
            for n2 in range(1, 6):
                for m2 in range(0, 6):
                    v, w = KuClass(n1, m1), KuClass(n2, m2)
                    r = ext_locus_codim(v, w)
                    if r.small_gap:
                        assert r.codim > 0
                        found += 1
    assert found > 10


@given(nonzero, nonzero)
@settings(max_examples=300)
def test_proj_ext_dim_identity(v, w):
    if (v + w).is_zero():
        return
    d = proj_ext_dim(v, w)
    assert d == moduli_dim(v + w) + chi(v, w)


def test_proj_ext_dim_examples():
    assert proj_ext_dim(ALPHA, BETA) == 4 == moduli_dim(ALPHA + BETA)
    assert proj_ext_dim(ALPHA, 2 * BETA) == 8


# ------------------------------------------------------------ quiver


def test_quiver_degree():
    assert quiver_canonical_degree(0, 0, 1, 2) == -1
    assert quiver_canonical_degree(5, 7, 3, 3) == 0
    for t in range(0, 6):
        for r in range(2, 6):
            assert quiver_canonical_degree(0, 0, t, r) == t - r
    with pytest.raises(TooFewArrows):
        quiver_canonical_degree(0, 0, 1, 1)


# ------------------------------------------------------------ fano fiber


def test_fano_fiber_example():
    rep = fano_fiber_check(KuClass(2, 1))
    assert (rep.chi_pm, rep.chi_mp, rep.degree, rep.r) == (-2, -1, -1, 2)
    assert rep.passes
    assert fano_fiber_check(KuClass(5, 4)).passes


def test_fano_fiber_preconditions():
    with pytest.raises(PreconditionFailed):
        fano_fiber_check(KuClass(1, 1))  # chi = -3 >= -4
    with pytest.raises(PreconditionFailed):
        fano_fiber_check(KuClass(4, 2))  # not primitive
    with pytest.raises(OutOfSextant):
        fano_fiber_check(KuClass(-5, 1))


def test_fano_fiber_sweep_small():
    for n in range(0, 25):
        for m in range(0, 25):
            v = KuClass(n, m)
            if not v.is_primitive() or chi(v, v) >= -4:
                continue
            rep = fano_fiber_check(v)
            assert rep.passes, v
            assert rep.chi_pm <= -2 and rep.degree == -1


# ------------------------------------------------------------ moduli info


def test_moduli_info_small_classes():
    assert moduli_info(BETA).dim == 2
    assert any("Fano surface" in s for s in moduli_info(BETA).labels)
    info = moduli_info(2 * BETA)
    assert info.dim == 5 and any("J(Y3)" in s for s in info.labels)
    info = moduli_info(BETA + GAMMA)
    assert info.dim == 4 and any("theta divisor" in s for s in info.labels)
    # the V14 note sits on the (2,1) rotation orbit
    assert any("V14" in s for s in moduli_info(KuClass(2, 1)).labels)
    assert any("V14" in s for s in moduli_info(2 * BETA + GAMMA).labels)


def test_moduli_info_big_class():
    info = moduli_info(KuClass(1, 2))
    assert info.dim == 8
    assert info.b1 == 10 and info.b2 == 46
    assert info.aj_fiber_dim == 3
    assert info.fano_fiber is not None and info.fano_fiber.passes
    assert "Jacobian" in info.mrc_quotient


# ------------------------------------------------------------ rendering


def test_render_examples():
    assert render_class(KuClass(0, 1)) == "β"
    assert render_class(KuClass(-1, 0)) == "-α"
    assert render_class(KuClass(-1, 2)) == "β+γ"
    assert render_class(KuClass(3, -2)) == "α-2γ"
    assert render_class(KuClass(-1, -3)) == "-α-3β"
    assert render_class(KuClass(0, 0)) == "0"


def test_parse_examples():
    assert parse_class("2a+b") == KuClass(2, 1)
    assert parse_class("b+g") == KuClass(-1, 2)
    assert parse_class("-a") == KuClass(-1, 0)
    assert parse_class("3b-2g") == KuClass(2, 1)
    assert parse_class("0") == KuClass(0, 0)
    with pytest.raises(ValueError):
        parse_class("2x")
    with pytest.raises(ValueError):
        parse_class("")


@given(classes)
@settings(max_examples=200)
def test_render_parse_round_trip(v):
    assert parse_class(render_class(v)) == v
