"""Exact Chern character arithmetic on a smooth cubic threefold.

Characters are written r + c1*H + c2*L + c3*P where H is the hyperplane
class, L the class of a line and P the class of a point, with the
intersection constants H^3 = 3P, H^2 = 3L, H*L = P.  The K-theory of the
threefold keeps c2 in (1/2)Z and c3 in (1/6)Z, so both are stored as exact
Fractions with their denominators validated on construction: any
integrality bug surfaces immediately instead of drifting.

The Euler pairing is Hirzebruch-Riemann-Roch against the Todd class
1 + H + 2L + P, and the projection to the rank-2 sublattice orthogonal to
the structure sheaf and its twist is a two-step left mutation at K-theory
level.  That sublattice is spanned by

    alpha = (2, -H, -L/2, P/2)      beta = (1, 0, -L, 0)

and classes there are returned in (alpha, beta) coordinates as KuClass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cubic import KuClass
from .errors import IntegralityViolation, NotInKuSpan

__all__ = [
    "ChernCharacterY3",
    "CH_O",
    "CH_OH",
    "CH_ALPHA",
    "CH_BETA",
    "CH_GAMMA",
    "euler_pairing",
    "twist",
    "ku_project",
    "to_ku_basis",
    "from_ku_basis",
    "ideal_curve_character",
    "hilbert_character",
    "HILBERT_TABLE",
]


def _frac(x, den: int, what: str) -> Fraction:
    f = Fraction(x)
    if (f * den).denominator != 1:
        raise IntegralityViolation(f"{what} = {f} is not a multiple of 1/{den}")
    return f


@dataclass(frozen=True)
class ChernCharacterY3:
    """(r, c1, c2, c3) with ch = r + c1*H + c2*L + c3*P; 2*c2 and 6*c3 integral."""

    r: int
    c1: int
    c2: Fraction
    c3: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c2", _frac(self.c2, 2, "c2"))
        object.__setattr__(self, "c3", _frac(self.c3, 6, "c3"))

    def __add__(self, other: "ChernCharacterY3") -> "ChernCharacterY3":
        return ChernCharacterY3(
            self.r + other.r, self.c1 + other.c1, self.c2 + other.c2, self.c3 + other.c3
        )

    def __sub__(self, other: "ChernCharacterY3") -> "ChernCharacterY3":
        return ChernCharacterY3(
            self.r - other.r, self.c1 - other.c1, self.c2 - other.c2, self.c3 - other.c3
        )

    def __neg__(self) -> "ChernCharacterY3":
        return ChernCharacterY3(-self.r, -self.c1, -self.c2, -self.c3)

    def __rmul__(self, k: int) -> "ChernCharacterY3":
        return ChernCharacterY3(k * self.r, k * self.c1, k * self.c2, k * self.c3)

    def dual(self) -> "ChernCharacterY3":
        return ChernCharacterY3(self.r, -self.c1, self.c2, -self.c3)

    def __str__(self) -> str:
        return f"({self.r}, {self.c1}H, {self.c2}L, {self.c3}P)"


CH_O = ChernCharacterY3(1, 0, Fraction(0), Fraction(0))
CH_OH = ChernCharacterY3(1, 1, Fraction(3, 2), Fraction(1, 2))
CH_ALPHA = ChernCharacterY3(2, -1, Fraction(-1, 2), Fraction(1, 2))
CH_BETA = ChernCharacterY3(1, 0, Fraction(-1), Fraction(0))
CH_GAMMA = ChernCharacterY3(-1, 1, Fraction(-1, 2), Fraction(-1, 2))


def euler_pairing(e: ChernCharacterY3, f: ChernCharacterY3) -> int:
    """chi(E, F): the degree-3 part of ch(E)^dual * ch(F) * (1 + H + 2L + P).

    With g = ch(E)^dual * ch(F) = (g0, g1*H, g2*L, g3*P) the answer is
    g3 + g2 + 2*g1 + g0, and it must come out an integer for any characters
    with the fixed denominators.
    """
    ed = e.dual()
    g0 = Fraction(ed.r * f.r)
    g1 = ed.r * f.c1 + ed.c1 * f.r
    g2 = ed.r * f.c2 + f.r * ed.c2 + 3 * ed.c1 * f.c1
    g3 = ed.r * f.c3 + f.r * ed.c3 + ed.c1 * f.c2 + f.c1 * ed.c2
    chi = g3 + g2 + 2 * g1 + g0
    if chi.denominator != 1:
        raise IntegralityViolation(f"chi({e}, {f}) = {chi} is not an integer")
    return int(chi)


def twist(e: ChernCharacterY3, k: int) -> ChernCharacterY3:
    """Multiply by e^{kH} = (1, kH, (3/2)k^2 L, (1/2)k^3 P); exact."""
    return ChernCharacterY3(
        e.r,
        e.c1 + k * e.r,
        e.c2 + 3 * k * e.c1 + Fraction(3 * k * k * e.r, 2),
        e.c3 + k * e.c2 + Fraction(3 * k * k * e.c1, 2) + Fraction(k**3 * e.r, 2),
    )


def ku_project(e: ChernCharacterY3) -> ChernCharacterY3:
    """K-theoretic projection into the span of alpha and beta.

    Left mutation through the twisted structure sheaf, then through the
    structure sheaf:  E' = E - chi(O(H), E) * ch(O(H)), followed by
    E'' = E' - chi(O, E') * ch(O).  The output pairs to zero against both.
    """
    e1 = e - euler_pairing(CH_OH, e) * CH_OH
    e2 = e1 - euler_pairing(CH_O, e1) * CH_O
    if euler_pairing(CH_O, e2) != 0 or euler_pairing(CH_OH, e2) != 0:
        raise IntegralityViolation(f"projection of {e} is not orthogonal")
    return e2


def to_ku_basis(e: ChernCharacterY3) -> KuClass:
    """The unique (n, m) with E = n*ch(alpha) + m*ch(beta).

    Rank and c1 determine (n, m) by an exact 2x2 solve; the remaining two
    components are then verified, and a mismatch raises NotInKuSpan with
    the residual.
    """
    n = -e.c1
    m = e.r + 2 * e.c1
    candidate = n * CH_ALPHA + m * CH_BETA
    residual = e - candidate
    if residual != ChernCharacterY3(0, 0, Fraction(0), Fraction(0)):
        raise NotInKuSpan(f"{e} is not in the alpha/beta span; residual {residual}")
    return KuClass(n, m)


def from_ku_basis(v: KuClass) -> ChernCharacterY3:
    """Inverse embedding: (n, m) -> n*ch(alpha) + m*ch(beta)."""
    return v.n * CH_ALPHA + v.m * CH_BETA


def ideal_curve_character(d: int, g: int) -> ChernCharacterY3:
    """ch of the ideal sheaf of a smooth curve of degree d, genus g:
    (1, 0, -dL, (d+g-1)P), by Grothendieck-Riemann-Roch for the curve."""
    if d < 1:
        raise ValueError("degree must be positive")
    return ChernCharacterY3(1, 0, Fraction(-d), Fraction(d + g - 1))


def hilbert_character(d: int, g: int, m: int) -> KuClass:
    """The class of the projected, m-twisted ideal sheaf of a (d, g) curve,
    in (alpha, beta) coordinates."""
    return to_ku_basis(ku_project(twist(ideal_curve_character(d, g), m)))


# (d, g, m) -> class, in the order the rows are usually displayed.
HILBERT_TABLE: tuple[tuple[int, int, int, KuClass], ...] = (
    (1, 0, 0, KuClass(0, 1)),
    (2, 0, 1, KuClass(-1, 1)),
    (2, 0, 2, KuClass(0, -1)),
    (3, 0, 1, KuClass(-1, 2)),
    (3, 1, 2, KuClass(0, 0)),
    (4, 0, 1, KuClass(-1, 3)),
    (4, 0, 2, KuClass(-2, -1)),
    (4, 0, 3, KuClass(3, -2)),
    (4, 1, 2, KuClass(-1, 0)),
    (5, 0, 3, KuClass(1, -3)),
    (5, 1, 2, KuClass(-2, 0)),
    (5, 1, 3, KuClass(2, -2)),
    (5, 2, 2, KuClass(-1, 1)),
    (6, 1, 2, KuClass(-3, 0)),
    (6, 1, 3, KuClass(0, -3)),
    (7, 2, 3, KuClass(-1, -3)),
)
