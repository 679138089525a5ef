"""Lattice calculus for the rank-2 numerical Grothendieck group of the
Kuznetsov component of a smooth cubic threefold.

Classes are written n*alpha + m*beta where beta is the class of the ideal
sheaf of a line and alpha its image under the Serre functor (even shifts
dropped).  The Euler pairing is

    chi(v, w) = -n1*n2 - m1*n2 - m1*m2,

the Serre functor acts on classes by beta -> alpha, alpha -> alpha - beta,
and its inverse is the rotation by pi/3 of the hexagonal picture in which
alpha, beta and gamma = beta - alpha sit at phases 0, 1/3 and 2/3.

All phase bookkeeping is exact: a lifted class carries an integer sextant
branch, and phase-gap comparisons reduce to the sign of a 2x2 integer
cross product inside a sextant plus branch arithmetic.  No floating point
is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    InvalidLift,
    OutOfSextant,
    PreconditionFailed,
    TooFewArrows,
    ZeroClass,
)
from .lattice import LatticeVector, delta_sin_sq, norm_sq, pick_decompose

__all__ = [
    "KuClass",
    "ALPHA",
    "BETA",
    "GAMMA",
    "chi",
    "serre_act",
    "rotate",
    "sextant_index",
    "sextant_normalize",
    "LiftedClass",
    "PhaseGap",
    "phase_gap_class",
    "moduli_dim",
    "Stratum",
    "strata",
    "strata_beta",
    "ExtLocusReport",
    "ext_locus_codim",
    "proj_ext_dim",
    "quiver_canonical_degree",
    "FanoFiberReport",
    "fano_fiber_check",
    "ModuliInfo",
    "moduli_info",
    "render_class",
    "parse_class",
]


@dataclass(frozen=True, order=True)
class KuClass:
    """n*alpha + m*beta with integer coefficients."""

    n: int
    m: int

    def __add__(self, other: "KuClass") -> "KuClass":
        return KuClass(self.n + other.n, self.m + other.m)

    def __sub__(self, other: "KuClass") -> "KuClass":
        return KuClass(self.n - other.n, self.m - other.m)

    def __neg__(self) -> "KuClass":
        return KuClass(-self.n, -self.m)

    def __rmul__(self, k: int) -> "KuClass":
        return KuClass(k * self.n, k * self.m)

    def is_zero(self) -> bool:
        return self.n == 0 and self.m == 0

    def is_primitive(self) -> bool:
        return not self.is_zero() and gcd(abs(self.n), abs(self.m)) == 1

    def vector(self) -> LatticeVector:
        return LatticeVector(self.n, self.m)

    def __str__(self) -> str:
        return render_class(self)


ALPHA = KuClass(1, 0)
BETA = KuClass(0, 1)
GAMMA = KuClass(-1, 1)


def _require_nonzero(v: KuClass) -> None:
    if v.is_zero():
        raise ZeroClass("the zero class is not allowed here")


def chi(v: KuClass, w: KuClass) -> int:
    """Euler pairing in (alpha, beta) coordinates."""
    return -v.n * w.n - v.m * w.n - v.m * w.m


def serre_act(v: KuClass) -> KuClass:
    """Class-level Serre action: beta -> alpha, alpha -> alpha - beta."""
    return KuClass(v.n + v.m, -v.n)


def rotate(v: KuClass) -> KuClass:
    """Inverse of serre_act; rotation by pi/3: alpha -> beta -> gamma."""
    return KuClass(-v.m, v.n + v.m)


def _in_open_sextant0(v: KuClass) -> bool:
    # the half-open cone [alpha-ray, beta-ray): phases in [0, 1/3)
    return v.n >= 1 and v.m >= 0


def _in_canonical_sextant(v: KuClass) -> bool:
    # the closed wedge used for display: alpha-ray .. beta-ray inclusive
    return (v.n >= 1 and v.m >= 0) or (v.n == 0 and v.m >= 1)


def sextant_index(v: KuClass) -> int:
    """The j in 0..5 with principal phase in [j/3, (j+1)/3)."""
    _require_nonzero(v)
    u = v
    for j in range(6):
        if _in_open_sextant0(u):
            return j
        u = serre_act(u)  # serre_act = rotate^-1
    raise AssertionError(f"no sextant found for {v}")


def sextant_normalize(v: KuClass) -> tuple[KuClass, int, int]:
    """(v', k, sign) with v = sign * rotate^k(v'), v' in the closed wedge
    {n >= 1, m >= 0} or {(0, m): m >= 1}, and k in 0..5 minimal."""
    _require_nonzero(v)
    u = v
    for k in range(6):
        if _in_canonical_sextant(u):
            return u, k, 1
        if _in_canonical_sextant(-u):
            return -u, k, -1
        u = serre_act(u)
    raise AssertionError(f"no normal form found for {v}")


@dataclass(frozen=True)
class LiftedClass:
    """A nonzero class with a phase branch.

    branch k means the true phase lies in [k/3, (k+1)/3); consistency
    requires k = sextant_index(cls) mod 6.  The homological shift [1] is
    (cls, k) -> (-cls, k+3) and the lifted Serre action adds 5 to the
    branch while rotating the class backwards.
    """

    cls: KuClass
    branch: int

    def __post_init__(self):
        _require_nonzero(self.cls)
        if self.branch % 6 != sextant_index(self.cls):
            raise InvalidLift(
                f"branch {self.branch} is not a valid lift of {self.cls} "
                f"(sextant {sextant_index(self.cls)})"
            )

    @classmethod
    def principal(cls, v: KuClass) -> "LiftedClass":
        return cls(v, sextant_index(v))

    def shift(self, k: int = 1) -> "LiftedClass":
        return LiftedClass(self.cls if k % 2 == 0 else -self.cls, self.branch + 3 * k)

    def serre(self) -> "LiftedClass":
        return LiftedClass(serre_act(self.cls), self.branch + 5)

    def rotate(self) -> "LiftedClass":
        return LiftedClass(rotate(self.cls), self.branch + 1)


@dataclass(frozen=True)
class PhaseGap:
    """Exact classification of a phase difference.

    kind == "boundary": the gap is exactly q/3.
    kind == "interior": the gap lies strictly between q/3 and (q+1)/3.
    """

    kind: str
    q: int

    def exact(self) -> Fraction | None:
        return Fraction(self.q, 3) if self.kind == "boundary" else None

    def bounds(self) -> tuple[Fraction, Fraction]:
        if self.kind == "boundary":
            return Fraction(self.q, 3), Fraction(self.q, 3)
        return Fraction(self.q, 3), Fraction(self.q + 1, 3)

    def chi_sign_zone(self) -> str:
        """Sign of chi(v, w) forced by the gap: 'negative', 'zero' or
        'positive' (2-periodic in the gap; negative iff gap is in
        (-2/3, 1/3) mod 2, zero exactly on its endpoints)."""
        r = self.q % 6
        if self.kind == "boundary":
            if r in (1, 4):
                return "zero"
            return "negative" if r in (5, 0) else "positive"
        return "negative" if r in (4, 5, 0) else "positive"

    def in_unit_interval_mod2(self) -> bool:
        """Whether the gap lies in (0, 1) after shifting by even integers."""
        r = self.q % 6
        if self.kind == "boundary":
            return r in (1, 2)
        return r in (0, 1, 2)

    def is_small_gap_mod2(self) -> bool:
        """Whether the gap lies in (0, 1/3) after shifting by even integers."""
        return self.kind == "interior" and self.q % 6 == 0

    def describe(self) -> str:
        if self.kind == "boundary":
            return f"{self.q}/3"
        return f"({self.q}/3, {self.q + 1}/3)"


def _sextant0_rep(v: KuClass) -> KuClass:
    u = v
    for _ in range(sextant_index(v)):
        u = serre_act(u)
    return u


def phase_gap_class(v: LiftedClass, w: LiftedClass) -> PhaseGap:
    """Classify phase(w) - phase(v) exactly.

    Both in-sextant offsets lie in [0, 1/3), so the difference is the
    branch difference over 3 plus a correction whose sign is the sign of
    the cross product of the sextant-0 representatives.
    """
    rv = _sextant0_rep(v.cls)
    rw = _sextant0_rep(w.cls)
    c = rv.n * rw.m - rv.m * rw.n
    base = w.branch - v.branch
    if c == 0:
        return PhaseGap("boundary", base)
    if c > 0:
        return PhaseGap("interior", base)
    return PhaseGap("interior", base - 1)


def moduli_dim(v: KuClass) -> int:
    """1 - chi(v, v) = 1 + n^2 + nm + m^2."""
    _require_nonzero(v)
    return 1 - chi(v, v)


@dataclass(frozen=True)
class Stratum:
    v1: KuClass
    v2: KuClass
    codim: int
    dominant: bool


def strata(v: KuClass) -> list[Stratum]:
    """Extension strata of the moduli space of n*alpha + m*beta, n, m >= 1.

    Index pairs (i, j) with 0 <= i <= n, 0 <= j <= m and j*n < i*m (the
    cross-multiplied strict slope rule, which silently drops all i = 0
    terms); codim is -chi of the pieces, and (n, 0) is the dominant
    stratum with codim 0.
    """
    n, m = v.n, v.m
    if n < 1 or m < 1:
        raise OutOfSextant(f"{v} must have n >= 1 and m >= 1")
    out = []
    for i in range(n + 1):
        for j in range(m + 1):
            if j * n >= i * m:
                continue
            v1 = KuClass(i, j)
            v2 = KuClass(n - i, m - j)
            codim = -chi(v1, v2)
            dominant = (i, j) == (n, 0)
            if dominant and codim != 0:
                raise AssertionError("dominant stratum must have codim 0")
            out.append(Stratum(v1, v2, codim, dominant))
    out.sort(key=lambda s: (s.v1.n, s.v1.m))
    return out


def strata_beta(m: int) -> Stratum:
    """The single stratum covering the moduli space of m*beta, m >= 2:
    extensions of m*beta - alpha by alpha.  The extension map is dominant
    with positive-dimensional fibers, so the stratum has codim 0 even
    though chi(alpha, m*beta - alpha) = +1."""
    if m < 2:
        raise OutOfSextant("the beta-multiple stratification needs m >= 2")
    return Stratum(ALPHA, KuClass(-1, m), 0, True)


@dataclass(frozen=True)
class ExtLocusReport:
    codim: int
    valid: bool
    phase_gap_in_unit: bool
    small_gap: bool
    reasons: tuple[str, ...]


def ext_locus_codim(v: KuClass, w: KuClass) -> ExtLocusReport:
    """Codimension -chi(v, w) of the locus of extensions of w by v inside
    the moduli space of v + w, with lattice-level hypothesis flags.

    valid records whether some branch lift puts phase(w) - phase(v) in
    (0, 1); small_gap additionally flags the (0, 1/3) regime, where the
    codimension is automatically positive.
    """
    _require_nonzero(v)
    _require_nonzero(w)
    codim = -chi(v, w)
    gap = phase_gap_class(LiftedClass.principal(v), LiftedClass.principal(w))
    in_unit = gap.in_unit_interval_mod2()
    small = gap.is_small_gap_mod2()
    reasons = []
    if not in_unit:
        reasons.append("no branch lift has phase gap in (0,1)")
    if small:
        reasons.append("gap in (0,1/3): chi(v,w) < 0, so codim > 0 automatically")
        if codim <= 0:
            raise AssertionError("small gap must force positive codim")
    return ExtLocusReport(codim, in_unit, in_unit, small, tuple(reasons))


def proj_ext_dim(v: KuClass, w: KuClass) -> int:
    """dim of the projectivized extension bundle over the pair moduli:
    dim M(v) + dim M(w) - chi(w, v) - 1, which coincides with
    dim M(v+w) + chi(v, w) identically."""
    _require_nonzero(v)
    _require_nonzero(w)
    d = moduli_dim(v) + moduli_dim(w) - chi(w, v) - 1
    if not (v + w).is_zero():
        assert d == moduli_dim(v + w) + chi(v, w)
    return d


def quiver_canonical_degree(a11: int, a22: int, a12: int, a21: int) -> int:
    """Degree of the canonical bundle of the two-vertex quiver moduli,
    restricted to the projective space of extensions: a12 - a21.
    (The restriction locus itself is a P^(a21-1); loops do not matter.)
    Requires a21 >= 2 so that the locus contains a curve."""
    for x in (a11, a22, a12, a21):
        if x < 0:
            raise ValueError("arrow counts must be nonnegative")
    if a21 < 2:
        raise TooFewArrows(f"a21 = {a21} < 2")
    return a12 - a21


@dataclass(frozen=True)
class FanoFiberReport:
    v: KuClass
    v_plus: KuClass
    v_minus: KuClass
    chi_pm: int
    chi_mp: int
    degree: int
    r: int
    passes: bool


def fano_fiber_check(v: KuClass) -> FanoFiberReport:
    """Check the canonical-degree data that makes the general fiber of the
    second-Chern-class map a Fano variety.

    For primitive v in the canonical wedge with chi(v, v) < -4: split
    v = v_plus + v_minus in (alpha, beta) coordinates, and verify
    chi(v_plus, v_minus) <= -2 and chi(v_plus, v_minus) -
    chi(v_minus, v_plus) = -1 (the canonical degree on the extension
    curve).
    """
    if not v.is_primitive():
        raise PreconditionFailed(f"{v} is not primitive")
    if not _in_canonical_sextant(v):
        raise OutOfSextant(f"{v} is not in the canonical sextant")
    if chi(v, v) >= -4:
        raise PreconditionFailed(f"chi(v,v) = {chi(v, v)} >= -4")
    vm, vp = pick_decompose(v.vector())
    v_minus = KuClass(vm.a, vm.b)
    v_plus = KuClass(vp.a, vp.b)
    chi_pm = chi(v_plus, v_minus)
    chi_mp = chi(v_minus, v_plus)
    degree = chi_pm - chi_mp
    r = -chi_pm
    passes = chi_pm <= -2 and degree == -1
    if passes:
        assert quiver_canonical_degree(0, 0, -chi_mp, r) == degree
    return FanoFiberReport(v, v_plus, v_minus, chi_pm, chi_mp, degree, r, passes)


def _signed_rotation_orbit(v: KuClass) -> set[KuClass]:
    orbit = set()
    u = v
    for _ in range(6):
        orbit.add(u)
        orbit.add(-u)
        u = rotate(u)
    return orbit


_SMALL_LABELS = (
    (KuClass(1, 0), "Fano surface of lines F(Y3)"),
    (KuClass(1, 1), "blowup of the theta divisor at its singular point (Bl_p Theta)"),
    (KuClass(0, 2), "Bl_{F(Y3)} J(Y3); the second-Chern-class map is birational"),
    (
        KuClass(2, 1),
        "general second-Chern-class fiber is a genus-8 degree-14 Fano threefold (V14)",
    ),
)


@dataclass(frozen=True)
class ModuliInfo:
    cls: KuClass
    primitive: bool
    chi_self: int
    dim: int
    normal_form: KuClass
    rotations: int
    sign: int
    labels: tuple[str, ...] = ()
    b1: int | None = None
    b2: int | None = None
    aj_fiber_dim: int | None = None
    mrc_quotient: str | None = None
    fano_fiber: FanoFiberReport | None = None


def moduli_info(v: KuClass) -> ModuliInfo:
    """Everything the lattice knows about the moduli space of class v."""
    _require_nonzero(v)
    normal, k, sign = sextant_normalize(v)
    c = chi(v, v)
    dim = 1 - c
    orbit = _signed_rotation_orbit(v)
    labels = tuple(text for anchor, text in _SMALL_LABELS if anchor in orbit)
    b1 = b2 = aj = None
    mrc = None
    fano = None
    if v.is_primitive() and c < -4:
        b1, b2 = 10, 46
        aj = dim - 5
        mrc = "intermediate Jacobian J(Y3)"
        fano = fano_fiber_check(normal)
    return ModuliInfo(
        cls=v,
        primitive=v.is_primitive(),
        chi_self=c,
        dim=dim,
        normal_form=normal,
        rotations=k,
        sign=sign,
        labels=labels,
        b1=b1,
        b2=b2,
        aj_fiber_dim=aj,
        mrc_quotient=mrc,
        fano_fiber=fano,
    )


_SYMBOLS = ("α", "β", "γ")  # alpha, beta, gamma


def render_class(v: KuClass) -> str:
    """Shortest alpha/beta/gamma expression of n*alpha + m*beta.

    Using gamma = beta - alpha, the representations are (n+c, m-c, c) on
    (alpha, beta, gamma) for c in Z; the one with minimal total absolute
    coefficient wins, ties broken toward small |c| and then small c.
    """
    if v.is_zero():
        return "0"
    bound = abs(v.n) + abs(v.m) + 1
    best = None
    for c in sorted(range(-bound, bound + 1), key=lambda t: (abs(t), t)):
        coeffs = (v.n + c, v.m - c, c)
        cost = sum(abs(x) for x in coeffs)
        if best is None or cost < best[0]:
            best = (cost, coeffs)
    parts = []
    for coeff, sym in zip(best[1], _SYMBOLS):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else ("+" if parts else "")
        mag = abs(coeff)
        parts.append(f"{sign}{'' if mag == 1 else mag}{sym}")
    return "".join(parts)


_LETTER = {
    "a": KuClass(1, 0),
    "b": KuClass(0, 1),
    "g": KuClass(-1, 1),
    "α": KuClass(1, 0),
    "β": KuClass(0, 1),
    "γ": KuClass(-1, 1),
}


def parse_class(text: str) -> KuClass:
    """Parse a symbolic class expression.

    Grammar (whitespace ignored):
        class  ::= "0" | term (("+" | "-") term)*
        term   ::= [integer] symbol
        symbol ::= "a" | "b" | "g" | alpha | beta | gamma
    Examples: "2a+b", "-a", "b+g", "3b-2g".
    """
    s = text.replace(" ", "")
    if s in ("0", "+0", "-0"):
        return KuClass(0, 0)
    if not s:
        raise ValueError("empty class expression")
    total = KuClass(0, 0)
    i = 0
    first = True
    while i < len(s):
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' at position {i} in {text!r}")
        j = i
        while j < len(s) and s[j].isdigit():
            j += 1
        coeff = int(s[i:j]) if j > i else 1
        if j >= len(s) or s[j] not in _LETTER:
            raise ValueError(f"expected a class symbol at position {j} in {text!r}")
        total = total + (sign * coeff) * _LETTER[s[j]]
        i = j + 1
        first = False
    return total


def class_delta_sin_sq(v: KuClass) -> Fraction:
    """delta of the underlying lattice vector, as an exact sin^2 value."""
    return delta_sin_sq(v.vector())


def class_norm_sq(v: KuClass) -> int:
    return norm_sq(v.vector())
