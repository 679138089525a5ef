"""Exact geometry of the rank-2 integer lattice.

Everything here is computed with exact integer (or Fraction) arithmetic;
norms are always handled as squared values so no floating point enters any
comparison.  Python integers are arbitrary precision, so there is no
overflow for any input size.  The one routine that internally uses fixed
64-bit lanes (the exhaustive `pick_oracle` sweep) checks its bounds first
and escalates to arbitrary precision when they do not fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import (
    NonPositiveOrientation,
    NotPrimitive,
    OracleContradiction,
    UnitVector,
)

__all__ = [
    "LatticeVector",
    "cross",
    "norm_sq",
    "is_primitive",
    "pick_decompose",
    "pick_oracle",
    "delta_sin_sq",
    "triangle_points",
    "triangle_points_oracle",
    "continued_fraction",
]


@dataclass(frozen=True, order=True)
class LatticeVector:
    """A point of Z^2 with exact integer coordinates.

    Ordering is lexicographic by (a, b), which is what the deterministic
    enumeration routines below rely on.
    """

    a: int
    b: int

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.a, -self.b)

    def __rmul__(self, k: int) -> "LatticeVector":
        return LatticeVector(k * self.a, k * self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def cross(u: LatticeVector, v: LatticeVector) -> int:
    """Oriented area (a,b)x(c,d) = ad - bc; antisymmetric and bilinear."""
    return u.a * v.b - u.b * v.a


def norm_sq(v: LatticeVector) -> int:
    """Squared Euclidean norm a^2 + b^2; all length comparisons use this."""
    return v.a * v.a + v.b * v.b


def is_primitive(v: LatticeVector) -> bool:
    """True iff v is nonzero and its coordinates are coprime."""
    if v.is_zero():
        return False
    return gcd(abs(v.a), abs(v.b)) == 1


def continued_fraction(n: int, m: int) -> list[int]:
    """Continued-fraction coefficients of n/m (m >= 1) with the terminal
    coefficient normalized to be >= 2.

    floor-division Euclid; for a non-integer rational the terminal
    coefficient already comes out >= 2, but the folding guard keeps the
    normalization explicit.
    """
    if m < 1:
        raise ValueError("denominator must be >= 1")
    coeffs = []
    while m:
        q = n // m
        coeffs.append(q)
        n, m = m, n - q * m
    if len(coeffs) > 1 and coeffs[-1] == 1:
        coeffs.pop()
        coeffs[-1] += 1
    return coeffs


def _convergent(coeffs: list[int]) -> tuple[int, int]:
    """Evaluate a continued fraction to a (numerator, denominator) pair."""
    num, den = coeffs[-1], 1
    for a in reversed(coeffs[:-1]):
        num, den = a * num + den, num
    return num, den


def _require_decomposable(v: LatticeVector) -> None:
    if not is_primitive(v):
        raise NotPrimitive(f"{v} is not primitive")
    if norm_sq(v) <= 1:
        raise UnitVector(f"{v} has squared norm <= 1; the pair is undefined")


def pick_decompose(v: LatticeVector) -> tuple[LatticeVector, LatticeVector]:
    """Split a primitive v with norm_sq > 1 into the unique shorter pair
    (v_minus, v_plus) with

        cross(v_minus, v) = cross(v, v_plus) = cross(v_minus, v_plus) = 1

    and v = v_minus + v_plus.  Construction is by continued fractions on
    the slope, with explicit branches for the (n, +-1) edge families and
    the negation rule for the lower half plane.
    """
    _require_decomposable(v)
    n, m = v.a, v.b

    if m >= 2:
        coeffs = continued_fraction(n, m)
        assert len(coeffs) >= 2 and coeffs[-1] >= 2
        n1, m1 = _convergent(coeffs[:-1])
        tail = coeffs[:-1] + [coeffs[-1] - 1]
        if tail[-1] == 1 and len(tail) > 1:
            tail.pop()
            tail[-1] += 1
        n2, m2 = _convergent(tail)
        u1 = LatticeVector(n1, m1)
        u2 = LatticeVector(n2, m2)
        assert u1 + u2 == v
        if cross(u1, v) == 1:
            v_minus, v_plus = u1, u2
        else:
            v_minus, v_plus = u2, u1
    elif m == 1:
        if n > 0:
            v_minus, v_plus = LatticeVector(1, 0), LatticeVector(n - 1, 1)
        else:
            v_minus, v_plus = LatticeVector(n + 1, 1), LatticeVector(-1, 0)
    else:
        # m <= -1 (m == 0 forces v = (+-1, 0), rejected above)
        neg_minus, neg_plus = pick_decompose(-v)
        v_minus, v_plus = -neg_minus, -neg_plus

    assert cross(v_minus, v) == 1 and cross(v, v_plus) == 1
    assert cross(v_minus, v_plus) == 1
    assert v_minus + v_plus == v
    assert norm_sq(v_minus) < norm_sq(v) and norm_sq(v_plus) < norm_sq(v)
    return v_minus, v_plus


_NUMPY_MAX_RADIUS = 512
_GRID_CACHE: dict[int, tuple] = {}


def _grid(radius: int):
    import numpy as np

    cached = _GRID_CACHE.get(radius)
    if cached is None:
        rng = np.arange(-radius, radius + 1, dtype=np.int64)
        xs = np.repeat(rng, len(rng))
        ys = np.tile(rng, len(rng))
        cached = (xs, ys, xs * xs + ys * ys)
        _GRID_CACHE[radius] = cached
    return cached


def _pick_oracle_numpy(v: LatticeVector) -> list[LatticeVector]:
    nv = norm_sq(v)
    r = isqrt(nv - 1)
    # bucket the radius so the sweep reuses a handful of cached grids
    bucket = 1
    while bucket < r:
        bucket *= 2
    xs, ys, nrm = _grid(bucket)
    crs = xs * v.b - ys * v.a
    dx = v.a - xs
    dy = v.b - ys
    mask = (nrm < nv) & (dx * dx + dy * dy < nv) & (crs == 1)
    return [LatticeVector(int(x), int(y)) for x, y in zip(xs[mask], ys[mask])]


def _pick_oracle_python(v: LatticeVector) -> list[LatticeVector]:
    nv = norm_sq(v)
    r = isqrt(nv - 1)
    hits = []
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            u = LatticeVector(x, y)
            if norm_sq(u) >= nv:
                continue
            if cross(u, v) != 1:
                continue
            if norm_sq(v - u) < nv:
                hits.append(u)
    return hits


def pick_oracle(v: LatticeVector) -> tuple[LatticeVector, LatticeVector]:
    """Independent verifier for pick_decompose.

    Exhaustively scans every u with norm_sq(u) < norm_sq(v) for candidates
    v_minus = u (v_plus = v - u is then forced by the sum identity, and the
    remaining cross conditions follow from cross(u, v) = 1).  Raises
    OracleContradiction unless exactly one candidate survives.

    The scan runs on cached numpy int64 grids up to radius 512 (products
    stay far below 2^63 there) and escalates to the arbitrary-precision
    Python scan beyond.
    """
    _require_decomposable(v)
    if isqrt(norm_sq(v) - 1) <= _NUMPY_MAX_RADIUS:
        hits = _pick_oracle_numpy(v)
    else:
        hits = _pick_oracle_python(v)
    if len(hits) != 1:
        raise OracleContradiction(
            f"expected exactly one decomposition of {v}, found {len(hits)}"
        )
    v_minus = hits[0]
    return v_minus, v - v_minus


def delta_sin_sq(v: LatticeVector) -> Fraction:
    """sin^2 of the angle between the two short pieces of v, exactly.

    The angle is pi*delta(v) with delta(v) in (0, 1/2]; since
    sin(pi*delta) = 1/(|v_plus||v_minus|) the squared value
    1/(norm_sq(v_plus)*norm_sq(v_minus)) is rational, and arcsin is
    monotone on [0,1], so consumers can compare delta against thresholds
    through this value without leaving exact arithmetic.
    """
    v_minus, v_plus = pick_decompose(v)
    return Fraction(1, norm_sq(v_plus) * norm_sq(v_minus))


def triangle_points(v: LatticeVector, w: LatticeVector) -> list[LatticeVector]:
    """All lattice points in the closed triangle spanned by v and w.

    Membership u = a*v + b*w with rational a, b >= 0, a + b <= 1 is decided
    by the exact integer predicates

        cross(u, w) >= 0,  cross(v, u) >= 0,
        cross(u, w) + cross(v, u) <= cross(v, w)

    (Cramer's rule clears the common denominator cross(v, w) > 0).
    Output is sorted lexicographically by coordinates.
    """
    d = cross(v, w)
    if d <= 0:
        raise NonPositiveOrientation(f"cross({v},{w}) = {d} <= 0")
    xs = (0, v.a, w.a)
    ys = (0, v.b, w.b)
    pts = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            u = LatticeVector(x, y)
            cu_w = cross(u, w)
            cv_u = cross(v, u)
            if cu_w >= 0 and cv_u >= 0 and cu_w + cv_u <= d:
                pts.append(u)
    pts.sort()
    return pts


def triangle_points_oracle(v: LatticeVector, w: LatticeVector) -> list[LatticeVector]:
    """Naive re-derivation of triangle_points from the rational definition.

    Loops over barycentric numerators (i, j) with i + j <= cross(v, w) and
    keeps u = (i*v + j*w)/cross(v, w) whenever it is integral.  Quadratic in
    cross(v, w); used only for cross-checking.
    """
    d = cross(v, w)
    if d <= 0:
        raise NonPositiveOrientation(f"cross({v},{w}) = {d} <= 0")
    pts = set()
    for i in range(d + 1):
        for j in range(d + 1 - i):
            xa = i * v.a + j * w.a
            xb = i * v.b + j * w.b
            if xa % d == 0 and xb % d == 0:
                pts.add(LatticeVector(xa // d, xb // d))
    return sorted(pts)
