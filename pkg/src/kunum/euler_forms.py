"""Rank-2 Euler forms with a Serre isometry, and their canonical families.

A non-degenerate integer bilinear form Q on Z^2 with Q(x,x) <= 0, together
with a unimodular operator D satisfying Q(x,y) = Q(y,Dx) and having no
+-fixed vectors, is congruent to one of six canonical families

    I+- = [[-n, +-n], [0,   -n]]
    J+- = [[-n, +-n], [-+n, -n]]
    K+- = [[-n, +-n], [-+2n,-n]]

and the order of D (3, 4, or 6, read off the trace) decides the letter.
This module classifies such pairs, and computes the finite set of
primitive vectors whose short-pair pairing Q(v_plus, v_minus) fails to be
negative, together with the self-pairing threshold N below which the
failure set is empty.

One boundary case is supported beyond the strict hypotheses: a symmetric Q
forces D = Q^-1 Q^T = identity, which has fixed vectors; such forms still
admit an order-4 isometry (a square root of -identity) and are classified
into the J family, with the symmetrized canonical matrix -n*I recorded
instead of the unreachable non-symmetric J matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Degenerate, FixedVector, Incompatible, InternalError, NotNegative
from .lattice import LatticeVector, cross, is_primitive, norm_sq, pick_decompose

__all__ = [
    "EulerForm",
    "SerreIsometry",
    "CanonicalForm",
    "FAMILY_NAMES",
    "family_matrix",
    "compatible",
    "serre_from_form",
    "serre_order",
    "classify_form",
    "exceptional_vectors",
    "n_chi",
]

Mat = tuple[tuple[int, int], tuple[int, int]]


def _mat_mul(a: Mat, b: Mat) -> Mat:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _mat_t(a: Mat) -> Mat:
    return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))


def _mat_det(a: Mat) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _mat_neg(a: Mat) -> Mat:
    return ((-a[0][0], -a[0][1]), (-a[1][0], -a[1][1]))


_ID: Mat = ((1, 0), (0, 1))


@dataclass(frozen=True)
class EulerForm:
    """Bilinear form on Z^2; entry (i,j) is Q(e_i, e_j), so Q(u,v) = u^T M v."""

    q11: int
    q12: int
    q21: int
    q22: int

    @classmethod
    def from_matrix(cls, m: Mat) -> "EulerForm":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    def matrix(self) -> Mat:
        return ((self.q11, self.q12), (self.q21, self.q22))

    def det(self) -> int:
        return self.q11 * self.q22 - self.q12 * self.q21

    def pair(self, u: LatticeVector, v: LatticeVector) -> int:
        return (
            u.a * (self.q11 * v.a + self.q12 * v.b)
            + u.b * (self.q21 * v.a + self.q22 * v.b)
        )

    def self_pair(self, v: LatticeVector) -> int:
        return self.pair(v, v)

    def is_negative(self) -> bool:
        """Q(x,x) <= 0 for all x, via the symmetrization test."""
        s = self.q12 + self.q21
        return self.q11 <= 0 and self.q22 <= 0 and s * s <= 4 * self.q11 * self.q22

    def conjugate(self, g: Mat) -> "EulerForm":
        """The form in the new basis given by the columns of g: g^T M g."""
        return EulerForm.from_matrix(_mat_mul(_mat_t(g), _mat_mul(self.matrix(), g)))


@dataclass(frozen=True)
class SerreIsometry:
    """Unimodular operator on column vectors; entry (i,j) is row i, column j."""

    d11: int
    d12: int
    d21: int
    d22: int

    @classmethod
    def from_matrix(cls, m: Mat) -> "SerreIsometry":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    def matrix(self) -> Mat:
        return ((self.d11, self.d12), (self.d21, self.d22))

    def det(self) -> int:
        return self.d11 * self.d22 - self.d12 * self.d21

    def trace(self) -> int:
        return self.d11 + self.d22

    def apply(self, v: LatticeVector) -> LatticeVector:
        return LatticeVector(self.d11 * v.a + self.d12 * v.b, self.d21 * v.a + self.d22 * v.b)


FAMILY_NAMES = ("I+", "I-", "J+", "J-", "K+", "K-")

_FAMILY_SUB = {"I": 0, "J": 1, "K": 2}


def family_matrix(family: str, n: int) -> Mat:
    """The canonical matrix of one of the six families at level n >= 1."""
    if family not in FAMILY_NAMES:
        raise ValueError(f"unknown family {family!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    letter, sign = family[0], family[1]
    s = 1 if sign == "+" else -1
    lower = {"I": 0, "J": 1, "K": 2}[letter]
    return ((-n, s * n), (-s * lower * n, -n))


@dataclass(frozen=True)
class CanonicalForm:
    """Result of classifying an Euler form.

    basis_change carries the input basis to the canonical one (columns are
    the canonical basis vectors in input coordinates).  canonical is the
    form in that basis: the exact family matrix when the input pair is
    Serre-compatible, or -n*I in the symmetric J boundary case
    (symmetric_degenerate=True).
    """

    family: str
    n: int
    basis_change: Mat
    canonical: EulerForm
    symmetric_degenerate: bool = False

    def is_exact_family_matrix(self) -> bool:
        return self.canonical.matrix() == family_matrix(self.family, self.n)


def compatible(q: EulerForm, d: SerreIsometry) -> bool:
    """Whether Q(x,y) = Q(y, Dx) holds identically, i.e. M·D = M^T."""
    return _mat_mul(q.matrix(), d.matrix()) == _mat_t(q.matrix())


def serre_from_form(q: EulerForm) -> SerreIsometry:
    """The unique operator with Q(x,y) = Q(y, Dx): D = M^-1 M^T.

    Integral whenever M is (det M divides adj(M) M^T entrywise); raises
    Degenerate otherwise.  det D = 1 automatically.
    """
    m = q.matrix()
    det = q.det()
    if det == 0:
        raise Degenerate("form is degenerate")
    adj = ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))
    prod = _mat_mul(adj, _mat_t(m))
    if any(x % det for row in prod for x in row):
        raise Degenerate("form does not determine an integral Serre operator")
    return SerreIsometry.from_matrix(tuple(tuple(x // det for x in row) for row in prod))


def _is_isometry(q: EulerForm, d: SerreIsometry) -> bool:
    m = q.matrix()
    dm = d.matrix()
    return _mat_mul(_mat_t(dm), _mat_mul(m, dm)) == m


def serre_order(d: SerreIsometry) -> int:
    """Smallest k > 0 with D^k = identity; 3, 4 or 6 by the trace.

    A determinant-1 integer matrix with no +-fixed vectors has trace in
    {-1, 0, 1} and its characteristic polynomial forces order 3, 4, or 6
    respectively.
    """
    if d.det() != 1:
        raise Incompatible(f"determinant must be 1, got {d.det()}")
    t = d.trace()
    if t not in (-1, 0, 1):
        raise FixedVector(f"trace {t} admits a +-fixed vector")
    order = {-1: 3, 0: 4, 1: 6}[t]
    acc = d.matrix()
    for _ in range(order - 1):
        acc = _mat_mul(acc, d.matrix())
    if acc != _ID:
        raise InternalError(f"matrix power check failed for order {order}")
    return order


def _positive_half(v: LatticeVector) -> LatticeVector:
    """The representative of {v, -v} with a > 0, or a = 0 and b > 0."""
    if v.a > 0 or (v.a == 0 and v.b > 0):
        return v
    return -v


def _max_self_pair(q: EulerForm) -> tuple[int, LatticeVector]:
    """Certified search for the maximum of Q(x,x) over nonzero x.

    Q(x,x) equals the (negative definite) symmetrization on the diagonal,
    so the maximum is minus the minimum of the positive form P = -sym(Q).
    Lagrange-Gauss reduction finds a reduced basis (u, v) with
    P(u) <= P(v) <= P(u +- v); every minimum vector of a reduced form has
    coordinates in {-1, 0, 1} over that basis, so one tiny scan lists all
    of them.  Ties break to the lexicographically smallest positive-half
    representative.
    """
    s = q.q12 + q.q21
    if 4 * q.q11 * q.q22 - s * s <= 0:
        raise NotNegative("symmetrized form is not negative definite")

    def p(w: LatticeVector) -> int:
        return -q.self_pair(w)

    u, v = LatticeVector(1, 0), LatticeVector(0, 1)
    if p(u) > p(v):
        u, v = v, u
    while True:
        two_bil = p(u + v) - p(u) - p(v)
        t = (two_bil + p(u)) // (2 * p(u))  # nearest integer to Bil(u,v)/P(u)
        v = v - t * u
        if p(v) >= p(u):
            break
        u, v = v, u
    mu = p(u)
    best = None
    for a in range(-1, 2):
        for b in range(-1, 2):
            if a == 0 and b == 0:
                continue
            w = a * u + b * v
            if p(w) == mu:
                w = _positive_half(w)
                if best is None or w < best:
                    best = w
    return -mu, best


def classify_form(q: EulerForm, d: SerreIsometry) -> CanonicalForm:
    """Classify (Q, D) into one of the families I+-, J+-, K+-.

    D must be unimodular with trace in {-1,0,1} and must either satisfy the
    Serre compatibility M·D = M^T or at least preserve Q (the order-4
    isometry route for symmetric forms).  The letter comes from the order
    of D, the level n from the maximal self-pairing, and the sign from the
    orientation of the basis {x, +-Dx} built on a maximizer x.
    """
    if q.det() == 0:
        raise Degenerate("form is degenerate")
    if not q.is_negative():
        raise NotNegative("Q(x,x) <= 0 fails")
    order = serre_order(d)  # validates det and trace
    is_compat = compatible(q, d)
    if not is_compat:
        # symmetric boundary case: the compatibility operator would be the
        # identity, so accept an order-4 isometry (square root of -identity)
        # instead; Q(x, Dx) = 0 is then automatic and the canonical matrix
        # comes out as the symmetrization -n*I
        symmetric = q.matrix() == _mat_t(q.matrix())
        if not (symmetric and order == 4 and _is_isometry(q, d)):
            raise Incompatible("D neither satisfies Q(x,y)=Q(y,Dx) nor is an "
                               "order-4 isometry of a symmetric form")

    max_val, x = _max_self_pair(q)
    if max_val >= 0:
        raise NotNegative(f"maximal self-pairing is {max_val}; expected < 0")
    n = -max_val

    dx = d.apply(x)
    orient = cross(x, dx)
    if orient not in (1, -1):
        raise InternalError(f"{x} and D{x} do not form a basis")
    if orient == 1:
        sign, y = "-", dx
    else:
        sign, y = "+", -dx
    letter = {6: "I", 4: "J", 3: "K"}[order]
    family = letter + sign
    basis: Mat = ((x.a, y.a), (x.b, y.b))
    canonical = q.conjugate(basis)

    expected = family_matrix(family, n)
    if canonical.matrix() == expected:
        return CanonicalForm(family, n, basis, canonical)
    if canonical.matrix() == ((-n, 0), (0, -n)) and order == 4 and not is_compat:
        return CanonicalForm(family, n, basis, canonical, symmetric_degenerate=True)
    raise InternalError(
        f"canonical matrix {canonical.matrix()} does not match family {family}, n={n}"
    )


def _box_radius_for(q: EulerForm, bound: int) -> int:
    """Smallest box radius outside which -Q(v,v) > bound everywhere."""
    radius = 2
    while True:
        ok = True
        for a in range(-radius, radius + 1):
            for b in (-radius, radius):
                if -q.self_pair(LatticeVector(a, b)) <= bound:
                    ok = False
                if -q.self_pair(LatticeVector(b, a)) <= bound:
                    ok = False
        if ok:
            return radius
        radius *= 2
        if radius > 2**20:
            raise InternalError("self-pairing is not coercive; cannot bound search")


def _exceptional_in_region(q: EulerForm, bound: int) -> list[LatticeVector]:
    radius = _box_radius_for(q, bound)
    found = []
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            v = LatticeVector(a, b)
            if norm_sq(v) <= 1 or not is_primitive(v):
                continue
            if -q.self_pair(v) > bound:
                continue
            v_minus, v_plus = pick_decompose(v)
            if q.pair(v_plus, v_minus) >= 0:
                found.append(v)
    found.sort()
    return found


def exceptional_vectors(form: CanonicalForm) -> list[LatticeVector]:
    """All primitive v (norm_sq > 1, canonical basis) with Q(v_plus, v_minus) >= 0.

    Exhaustive search over -Q(v,v) <= B, doubling B from 6n until the outer
    three quarters of the searched region are exceptional-free.  The set is
    provably complete for the searched region; the wide empty margin guards
    against gaps in the -Q(v,v) values of the set (the K families do have
    such gaps).  The set is closed under negation.
    """
    q = form.canonical
    n = form.n
    bound = 6 * n
    while True:
        found = _exceptional_in_region(q, bound)
        worst = max((-q.self_pair(v) for v in found), default=0)
        if worst <= bound // 4:
            return found
        bound *= 2
        if bound > 6 * n * 2**12:
            raise InternalError("exceptional-vector search did not stabilize")


def n_chi(form: CanonicalForm) -> int:
    """Least N >= 0 so that Q(v,v) < -N forces Q(v_plus, v_minus) < 0
    for every primitive v with norm_sq(v) > 1 (canonical basis).

    Equals the largest -Q(v,v) over the exceptional set (0 if empty).  For
    the I families this is pinned to n and 3n respectively and asserted.
    """
    exc = exceptional_vectors(form)
    value = max((-form.canonical.self_pair(v) for v in exc), default=0)
    if form.family == "I+" and value != form.n:
        raise InternalError(f"I+ threshold {value} != n = {form.n}")
    if form.family == "I-" and value != 3 * form.n:
        raise InternalError(f"I- threshold {value} != 3n = {3 * form.n}")
    return value
