"""Monic polynomial families and their factorization at the base point.

A PolyCurve is a monic degree-n polynomial whose coefficients are jets
in the parameter t, stored in the signed-elementary convention (a_k is
the k-th elementary symmetric function of the root branches).

If the roots at t = 0 fall into two groups with no common value, the
family factors into two monic families supported on those groups.  The
factor coefficients satisfy, order by order in t, a linear system whose
matrix is the Sylvester-style resultant matrix of the two base factors;
it is independent of t, so it is inverted once.  The lift runs exactly
over the rationals when the base factorization snaps to rational (or
Gaussian-rational) coefficients, and in high-precision floating point
otherwise.  Splitting never consumes jet order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath as mp
import numpy as np

from .errors import ClusterAmbiguous, ClustersOverlap, InputError
from .jet import ComplexJet, Jet

DEFAULT_CLUSTER_TOL = 1e-6
DEFAULT_DPS = 64


def _is_jet_exact(x) -> bool:
    return x.is_exact


def _zero_like(x, order: int):
    if isinstance(x, ComplexJet):
        return ComplexJet.zero(order)
    return Jet.zero(order)


def _one_like(x, order: int):
    if isinstance(x, ComplexJet):
        return ComplexJet.const(1, order)
    return Jet.const(1, order)


class PolyCurve:
    """Monic polynomial family with jet coefficients.

    `a[k-1]` is the jet of the k-th elementary symmetric function of the
    root branches; the plain coefficient of x^(n-k) is (-1)^k a_k.
    """

    __slots__ = ("a", "complex_ring")

    def __init__(self, a: Sequence):
        a = tuple(a)
        if not a:
            raise InputError("a monic family needs degree >= 1")
        complex_ring = any(isinstance(x, ComplexJet) for x in a)
        if complex_ring:
            a = tuple(x if isinstance(x, ComplexJet) else ComplexJet.from_jet(x)
                      for x in a)
        order = min(x.order for x in a)
        a = tuple(x.truncate(order) for x in a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "complex_ring", complex_ring)

    def __setattr__(self, name, value):
        raise AttributeError("PolyCurve is immutable")

    def __eq__(self, other):
        return (isinstance(other, PolyCurve) and self.a == other.a
                and self.complex_ring == other.complex_ring)

    def __hash__(self):
        return hash((self.a, self.complex_ring))

    def __repr__(self):
        return f"PolyCurve(degree={self.degree}, order={self.order})"

    @property
    def degree(self) -> int:
        return len(self.a)

    @property
    def order(self) -> int:
        return self.a[0].order

    @property
    def is_exact(self) -> bool:
        return all(_is_jet_exact(x) for x in self.a)

    @classmethod
    def from_root_jets(cls, roots: Sequence) -> "PolyCurve":
        """Family whose root branches are the given jets."""
        roots = list(roots)
        order = min(r.order for r in roots)
        sigma = [_one_like(roots[0], order)]
        for r in roots:
            r = r.truncate(order) if r.order > order else r
            nxt = [sigma[0]]
            for k in range(1, len(sigma) + 1):
                prev = sigma[k] if k < len(sigma) else _zero_like(r, order)
                nxt.append(prev + r * sigma[k - 1])
            sigma = nxt
        return cls(sigma[1:])

    @classmethod
    def from_plain_jets(cls, plain: Sequence) -> "PolyCurve":
        """From descending plain coefficients [lead, c_1, ..., c_n].

        The leading jet must be the constant 1.
        """
        plain = list(plain)
        lead = plain[0]
        if isinstance(lead, ComplexJet):
            ok = (lead.re.constant_term() == 1
                  and lead.im.constant_term() == 0)
        else:
            ok = lead.constant_term() == 1
        if not ok:
            raise InputError("family must be monic")
        a = []
        for k in range(1, len(plain)):
            c = plain[k]
            a.append(c if k % 2 == 0 else -c)
        return cls(a)

    def plain_jets(self) -> list:
        """Descending plain coefficients [1, -a_1, a_2, ...] as jets."""
        one = _one_like(self.a[0], self.order)
        out = [one]
        for k, x in enumerate(self.a, start=1):
            out.append(x if k % 2 == 0 else -x)
        return out

    def plain_at_zero(self) -> list:
        """Descending plain coefficients of the base polynomial P(., 0)."""
        out = []
        for c in self.plain_jets():
            if isinstance(c, ComplexJet):
                re, im = c.re.constant_term(), c.im.constant_term()
                out.append(complex(re, im) if im else re)
            else:
                out.append(c.constant_term())
        return out

    def at(self, t: float) -> list:
        """Descending plain coefficients at a numeric parameter value."""
        out = []
        for c in self.plain_jets():
            if isinstance(c, ComplexJet):
                out.append(c.eval_complex(t))
            else:
                out.append(c.eval_float(t))
        return out

    def promote_complex(self) -> "PolyCurve":
        if self.complex_ring:
            return self
        return PolyCurve(tuple(ComplexJet.from_jet(x) for x in self.a))

    def eval_jet(self, x):
        """P(x(t), t) for a root-candidate jet x, by Horner."""
        if isinstance(x, ComplexJet) and not self.complex_ring:
            return self.promote_complex().eval_jet(x)
        if self.complex_ring and not isinstance(x, ComplexJet):
            x = ComplexJet.from_jet(x)
        plain = self.plain_jets()
        acc = plain[0]
        for c in plain[1:]:
            acc = acc * x + c
        return acc

    def derivative_plain_jets(self) -> list:
        """Descending plain coefficients of dP/dx (degree n-1, lead n)."""
        n = self.degree
        plain = self.plain_jets()
        return [plain[j].scale(n - j) for j in range(n)]

    def shift_x(self, s) -> "PolyCurve":
        """The family Q(x, t) = P(x + s(t), t)."""
        if isinstance(s, ComplexJet) and not self.complex_ring:
            return self.promote_complex().shift_x(s)
        if self.complex_ring and not isinstance(s, ComplexJet):
            s = ComplexJet.from_jet(s)
        n = self.degree
        order = min(self.order, s.order)
        zero = _zero_like(self.a[0], order)
        q = []  # ascending coefficients of the shifted polynomial
        for c in self.plain_jets():
            nxt = []
            for i in range(len(q) + 1):
                lower = q[i - 1] if i >= 1 else zero
                here = q[i] * s if i < len(q) else zero
                nxt.append(lower + here)
            nxt[0] = nxt[0] + c
            q = nxt
        return PolyCurve.from_plain_jets(list(reversed(q)))

    def mul(self, other: "PolyCurve") -> "PolyCurve":
        """Product family, truncated to the lesser jet order."""
        pa = self.plain_jets()
        pb = other.plain_jets()
        order = min(self.order, other.order)
        zero = _zero_like(pa[0] if not other.complex_ring else pb[0], order)
        if self.complex_ring or other.complex_ring:
            pa = [c if isinstance(c, ComplexJet) else ComplexJet.from_jet(c)
                  for c in pa]
            pb = [c if isinstance(c, ComplexJet) else ComplexJet.from_jet(c)
                  for c in pb]
            zero = ComplexJet.zero(order)
        out = [zero] * (len(pa) + len(pb) - 1)
        for i, ci in enumerate(pa):
            for j, cj in enumerate(pb):
                out[i + j] = out[i + j] + ci * cj
        return PolyCurve.from_plain_jets(out)

    def truncate(self, order: int) -> "PolyCurve":
        return PolyCurve(tuple(x.truncate(order) for x in self.a))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "complex": self.complex_ring,
            "a": [x.to_json() for x in self.a],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PolyCurve":
        kind = ComplexJet if obj.get("complex") else Jet
        return cls(tuple(kind.from_json(x) for x in obj["a"]))


# -- clustering of base roots ------------------------------------------------


@dataclass(frozen=True)
class Cluster:
    """A group of numerically coincident base roots."""

    center: complex
    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)


def roots_at_zero(curve: PolyCurve) -> list:
    """All base roots (with multiplicity), sorted by (re, im)."""
    plain = [complex(c) for c in curve.plain_at_zero()]
    rts = np.roots(plain)
    return sorted((complex(r) for r in rts), key=lambda z: (z.real, z.imag))


def cluster_points(points: Sequence[complex],
                   tol: float = DEFAULT_CLUSTER_TOL) -> list:
    """Single-linkage clusters at relative threshold tol.

    Pairs closer than tol*scale are linked; any pair strictly between
    tol*scale and 2*tol*scale makes the clustering ill-posed and raises
    ClusterAmbiguous.
    """
    pts = sorted((complex(p) for p in points), key=lambda z: (z.real, z.imag))
    m = len(pts)
    scale = max(1.0, max((abs(p) for p in pts), default=0.0))
    thr = tol * scale
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            d = abs(pts[i] - pts[j])
            if d <= thr:
                parent[find(i)] = find(j)
            elif d < 2 * thr:
                raise ClusterAmbiguous(
                    f"root gap {d:.3e} falls between tol and 2*tol "
                    f"({thr:.3e}, {2 * thr:.3e}); adjust tol")
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(pts[i])
    out = []
    for g in groups.values():
        center = sum(g) / len(g)
        out.append(Cluster(center=center, members=tuple(g)))
    # sort by (re, im) with coordinates quantized at the link threshold,
    # so roundoff noise cannot flip the ordering of distinct clusters
    q = thr if thr > 0 else 1.0
    out.sort(key=lambda c: (round(c.center.real / q), round(c.center.imag / q),
                            c.center.real, c.center.imag))
    return out


def cluster_roots(curve: PolyCurve,
                  tol: float = DEFAULT_CLUSTER_TOL) -> list:
    """Clusters of the base roots of the family."""
    return cluster_points(roots_at_zero(curve), tol)


# -- exact square-free decomposition ----------------------------------------
#
# Plain coefficient lists here are descending, Fractions, leading nonzero.


def _poly_trim(p: list) -> list:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _poly_monic(p: list) -> list:
    lead = p[0]
    return [c / lead for c in p]


def _poly_deriv(p: list) -> list:
    n = len(p) - 1
    if n == 0:
        return [Fraction(0)]
    return [p[j] * (n - j) for j in range(n)]


def _poly_divmod(a: list, b: list) -> tuple:
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(c != 0 for c in a):
        a = _poly_trim(a)
        if len(a) < len(b):
            break
        f = a[0] / b[0]
        k = len(a) - len(b)
        q[len(q) - 1 - k] = f
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = a[1:] if a[0] == 0 else a
    r = _poly_trim(a) if a else [Fraction(0)]
    return _poly_trim(q), r


def _poly_gcd(a: list, b: list) -> list:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    if all(c == 0 for c in a):
        return _poly_monic(b)
    if all(c == 0 for c in b):
        return _poly_monic(a)
    while True:
        if len(b) == 1 and b[0] == 0:
            break
        _, r = _poly_divmod(a, b)
        a, b = b, r
        if all(c == 0 for c in b):
            break
    return _poly_monic(_poly_trim(a))


def yun_square_free(plain: Sequence) -> list:
    """Square-free decomposition of a monic rational polynomial.

    Returns [(factor_plain, multiplicity), ...] with monic square-free
    factors, so plain = prod factor^multiplicity exactly.
    """
    p = [Fraction(c) if isinstance(c, int) else c for c in plain]
    p = _poly_monic(_poly_trim(p))
    if len(p) == 1:
        return []
    dp = _poly_deriv(p)
    g = _poly_gcd(p, dp)
    c, _ = _poly_divmod(p, g)
    d, _ = _poly_divmod(dp, g)
    cd = _poly_deriv(c)
    d = _poly_sub(d, cd)
    out = []
    i = 1
    while len(c) > 1:
        pi = _poly_gcd(c, d)
        if len(pi) > 1:
            out.append((pi, i))
        c, _ = _poly_divmod(c, pi)
        d, _ = _poly_divmod(d, pi)
        d = _poly_sub(d, _poly_deriv(c))
        i += 1
    return out


def _poly_sub(a: list, b: list) -> list:
    la, lb = len(a), len(b)
    n = max(la, lb)
    out = []
    for k in range(n):
        x = a[k - (n - la)] if k >= n - la else Fraction(0)
        y = b[k - (n - lb)] if k >= n - lb else Fraction(0)
        out.append(x - y)
    return _poly_trim(out)


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# -- exact Gaussian-rational helpers for the complex exact lift --------------


class QQi:
    """Gaussian rational a + b*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re) if not isinstance(re, Fraction) else re
        self.im = Fraction(im) if not isinstance(im, Fraction) else im

    def __add__(self, o):
        return QQi(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return QQi(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, o):
        return QQi(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        d = o.re * o.re + o.im * o.im
        return QQi((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def __eq__(self, o):
        if isinstance(o, QQi):
            return self.re == o.re and self.im == o.im
        return self.im == 0 and self.re == o

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


def _solve_exact(M: list, rhs_cols: list) -> list:
    """Gauss-Jordan solve M X = rhs for several right-hand sides.

    Elements are Fractions or QQi.  Returns the solution columns; raises
    ClustersOverlap if M is singular.
    """
    n = len(M)
    A = [list(M[i]) + [col[i] for col in rhs_cols] for i in range(n)]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if A[i][k]:
                piv = i
                break
        if piv is None:
            raise ClustersOverlap("base factors share a root (exact)")
        A[k], A[piv] = A[piv], A[k]
        d = A[k][k]
        A[k] = [x / d for x in A[k]]
        for i in range(n):
            if i != k and A[i][k]:
                f = A[i][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return [[A[i][n + j] for i in range(n)] for j in range(len(rhs_cols))]


# -- the coprime lift --------------------------------------------------------


@dataclass(frozen=True)
class FactorPair:
    """P = first * second with coprime base polynomials."""

    first: PolyCurve
    second: PolyCurve
    exact: bool

    def product(self) -> PolyCurve:
        return self.first.mul(self.second)


def _sylvester_matrix(s1_asc: list, s2_asc: list, zero):
    """Columns x^j * s2 (j < p) then x^j * s1 (j < q); rows x^0..x^(n-1)."""
    p = len(s1_asc) - 1
    q = len(s2_asc) - 1
    n = p + q
    M = [[zero for _ in range(n)] for _ in range(n)]
    for j in range(p):
        for i, c in enumerate(s2_asc):
            if j + i < n:
                M[j + i][j] = c
    for j in range(q):
        for i, c in enumerate(s1_asc):
            if j + i < n:
                M[j + i][p + j] = c
    return M


def _poly_from_roots_c(roots: Sequence[complex]) -> list:
    """Monic ascending complex coefficients with the given roots."""
    asc = [1 + 0j]
    for r in roots:
        nxt = [0j] * (len(asc) + 1)
        for i, c in enumerate(asc):
            nxt[i] -= r * c
            nxt[i + 1] += c
        asc = nxt
    return asc


def _snap_fraction(x: float, den_limit: int = 10 ** 12):
    return Fraction(x).limit_denominator(den_limit)


def _try_exact_seeds(curve: PolyCurve, r1: Sequence[complex],
                     r2: Sequence[complex]):
    """Snap base factors to (Gaussian-) rationals and verify the product.

    Returns (s1, s2, complex_flag) as ascending QQi lists, or None.
    """
    s1 = _poly_from_roots_c(r1)
    s2 = _poly_from_roots_c(r2)
    q1 = [QQi(_snap_fraction(c.real), _snap_fraction(c.imag)) for c in s1]
    q2 = [QQi(_snap_fraction(c.real), _snap_fraction(c.imag)) for c in s2]
    prod = [QQi(0)] * (len(q1) + len(q2) - 1)
    for i, x in enumerate(q1):
        for j, y in enumerate(q2):
            prod[i + j] = prod[i + j] + x * y
    base = list(reversed(curve.plain_at_zero()))  # ascending, exact values
    for got, want in zip(prod, base):
        if isinstance(want, complex):
            w = QQi(_snap_fraction(want.real), _snap_fraction(want.imag))
        else:
            w = QQi(want)
        if got != w:
            return None
    is_complex = any(c.im != 0 for c in q1 + q2)
    return q1, q2, is_complex


def _plain_t_coeff(curve: PolyCurve, k: int) -> list:
    """Ascending x-coefficients of the t^k term of P (degree < n for k>=1)."""
    plain = curve.plain_jets()  # descending, length n+1
    out = []
    for c in reversed(plain[1:]):  # ascending x^0..x^(n-1)
        if isinstance(c, ComplexJet):
            out.append(QQi(c.re.coeffs[k], c.im.coeffs[k])
                       if c.re.is_exact and c.im.is_exact
                       else complex(c.re.coeffs[k], c.im.coeffs[k]))
        else:
            out.append(c.coeffs[k])
    return out


def _curve_jets_entire(curve: PolyCurve) -> bool:
    for a in curve.a:
        if isinstance(a, ComplexJet):
            if not (a.re.entire and a.im.entire):
                return False
        elif not a.entire:
            return False
    return True


def _tables_multiply_back(f1, f2, want, n, N, zero, one) -> bool:
    """Exact check that the lifted tables, read as polynomials in t, multiply
    back to the input curve.  By uniqueness of the lift from a coprime base
    factorization, a match proves the factor series terminate at order N."""
    conv = [[zero] * (2 * N + 1) for _ in range(n + 1)]
    for d1, col1 in enumerate(f1):
        for d2, col2 in enumerate(f2):
            row = conv[d1 + d2]
            for i, c1 in enumerate(col1):
                if not c1:
                    continue
                for j, c2 in enumerate(col2):
                    if c2:
                        row[i + j] = row[i + j] + c1 * c2
    for d in range(n):
        for k in range(2 * N + 1):
            w = want[k][d] if k <= N else zero
            if conv[d][k] != w:
                return False
    if conv[n][0] != one or any(c for c in conv[n][1:]):
        return False
    return True


def _lift_exact(curve: PolyCurve, q1: list, q2: list, use_qqi: bool):
    """Order-by-order exact lift of the base factorization."""
    n = curve.degree
    N = curve.order
    p = len(q1) - 1
    q = len(q2) - 1
    if use_qqi:
        zero, one = QQi(0), QQi(1)

        def embed(x):
            return x if isinstance(x, QQi) else QQi(x)
    else:
        zero, one = Fraction(0), Fraction(1)

        def embed(x):
            return x.re if isinstance(x, QQi) else x
    s1 = [embed(c) for c in q1]
    s2 = [embed(c) for c in q2]
    M = _sylvester_matrix(s1, s2, zero)
    ident = [[one if i == j else zero for i in range(n)] for j in range(n)]
    inv_cols = _solve_exact(M, ident)  # inv_cols[j][i] = (M^-1)[i][j]

    def apply_inv(vec):
        out = []
        for i in range(n):
            acc = zero
            for j in range(n):
                if vec[j]:
                    acc = acc + inv_cols[j][i] * vec[j]
            out.append(acc)
        return out

    # coefficients of t^k in each factor, ascending in x
    f1 = [[c] for c in s1]
    f2 = [[c] for c in s2]
    for k in range(1, N + 1):
        rhs = [embed(c) for c in _plain_t_coeff(curve, k)]
        for i in range(1, k):
            # subtract conv of earlier corrections: f1^[i] * f2^[k-i]
            for d1 in range(p + 1):
                c1 = f1[d1][i] if i < len(f1[d1]) else zero
                c1 = c1 if d1 < p else zero  # t^i of lead is 0 for i >= 1
                if not c1:
                    continue
                for d2 in range(q + 1):
                    c2 = f2[d2][k - i] if k - i < len(f2[d2]) else zero
                    c2 = c2 if d2 < q else zero
                    if not c2:
                        continue
                    rhs[d1 + d2] = rhs[d1 + d2] - c1 * c2
        sol = apply_inv(rhs)
        for d1 in range(p):
            f1[d1].append(sol[d1])
        f1[p].append(zero)
        for d2 in range(q):
            f2[d2].append(sol[p + d2])
        f2[q].append(zero)
    ent = False
    if _curve_jets_entire(curve):
        want = [[embed(c) for c in _plain_t_coeff(curve, k)]
                for k in range(N + 1)]
        ent = _tables_multiply_back(f1, f2, want, n, N, zero, one)
    return _curves_from_coeff_table(f1, f2, N, use_qqi, entire=ent)


def _jet_from_col(col: list, N: int, use_qqi: bool, entire: bool = False):
    if use_qqi:
        re = Jet([c.re for c in col], entire=entire)
        im = Jet([c.im for c in col], entire=entire)
        return ComplexJet(re, im)
    return Jet(col, entire=entire)


def _curves_from_coeff_table(f1, f2, N, use_qqi, entire: bool = False):
    plain1 = [_jet_from_col(col, N, use_qqi, entire) for col in reversed(f1)]
    plain2 = [_jet_from_col(col, N, use_qqi, entire) for col in reversed(f2)]
    return PolyCurve.from_plain_jets(plain1), PolyCurve.from_plain_jets(plain2)


def _refine_seeds_mp(base_asc: list, s1: list, s2: list, dps: int):
    """Newton-refine factor coefficients so s1*s2 matches the base poly."""
    p = len(s1) - 1
    q = len(s2) - 1
    n = p + q
    target = [mp.mpc(c) for c in base_asc[:n]]  # x^0..x^(n-1); lead matches
    u = [mp.mpc(c) for c in s1]
    v = [mp.mpc(c) for c in s2]
    scale = max([abs(c) for c in target] + [mp.mpf(1)])
    for _ in range(80):
        res = [mp.mpc(0)] * n
        for i in range(p + 1):
            for j in range(q + 1):
                if i + j < n:
                    res[i + j] += u[i] * v[j]
        for i in range(n):
            res[i] -= target[i]
        err = max(abs(c) for c in res)
        if err < mp.mpf(10) ** (-(dps - 8)) * scale:
            break
        M = mp.matrix(n, n)
        for j in range(p):
            for i in range(q + 1):
                if j + i < n:
                    M[j + i, j] = v[i]
        for j in range(q):
            for i in range(p + 1):
                if j + i < n:
                    M[j + i, p + j] = u[i]
        b = mp.matrix([-res[i] for i in range(n)])
        try:
            delta = mp.lu_solve(M, b)
        except ZeroDivisionError as e:
            raise ClustersOverlap("base factors share a root") from e
        for j in range(p):
            u[j] += delta[j]
        for j in range(q):
            v[j] += delta[p + j]
    return u, v


def _lift_numeric(curve: PolyCurve, r1, r2, dps: int):
    n = curve.degree
    N = curve.order
    p, q = len(r1), len(r2)
    with mp.workdps(dps):
        base = [mp.mpc(complex(c)) for c in reversed(curve.plain_at_zero())]
        s1 = [mp.mpc(c) for c in _poly_from_roots_c(r1)]
        s2 = [mp.mpc(c) for c in _poly_from_roots_c(r2)]
        u, v = _refine_seeds_mp(base, s1, s2, dps)
        M = mp.matrix(n, n)
        for j in range(p):
            for i in range(q + 1):
                if j + i < n:
                    M[j + i, j] = v[i]
        for j in range(q):
            for i in range(p + 1):
                if j + i < n:
                    M[j + i, p + j] = u[i]
        try:
            Minv = M ** -1
        except ZeroDivisionError as e:
            raise ClustersOverlap("base factors share a root") from e
        f1 = [[u[d]] for d in range(p + 1)]
        f2 = [[v[d]] for d in range(q + 1)]
        for k in range(1, N + 1):
            rhs_raw = _plain_t_coeff(curve, k)
            rhs = []
            for c in rhs_raw:
                if isinstance(c, QQi):
                    rhs.append(mp.mpc(mp.mpf(c.re.numerator) / c.re.denominator,
                                      mp.mpf(c.im.numerator) / c.im.denominator))
                elif isinstance(c, Fraction):
                    rhs.append(mp.mpc(mp.mpf(c.numerator) / c.denominator))
                else:
                    rhs.append(mp.mpc(c))
            for i in range(1, k):
                for d1 in range(p):
                    c1 = f1[d1][i]
                    if c1 == 0:
                        continue
                    for d2 in range(q):
                        c2 = f2[d2][k - i]
                        if c2 == 0:
                            continue
                        rhs[d1 + d2] -= c1 * c2
            b = mp.matrix(rhs)
            sol = Minv * b
            for d in range(p):
                f1[d].append(sol[d])
            f1[p].append(mp.mpc(0))
            for d in range(q):
                f2[d].append(sol[p + d])
            f2[q].append(mp.mpc(0))
        # decide real vs complex output per factor
        def to_curve(table):
            deg = len(table) - 1
            im_max = max(abs(mp.im(c)) for col in table for c in col)
            sc = max([abs(mp.re(c)) for col in table for c in col] + [1.0])
            cols = []
            if im_max <= mp.mpf(10) ** (-(dps // 2)) * sc:
                for col in table:
                    cols.append(Jet([float(mp.re(c)) for c in col]))
            else:
                for col in table:
                    cols.append(ComplexJet(
                        Jet([float(mp.re(c)) for c in col]),
                        Jet([float(mp.im(c)) for c in col])))
            # lead must be the exact constant 1 for from_plain_jets
            lead = cols[deg]
            if isinstance(lead, ComplexJet):
                cols[deg] = ComplexJet.const(1, N)
            else:
                cols[deg] = Jet.const(1, N)
            return PolyCurve.from_plain_jets(list(reversed(cols)))

        return to_curve(f1), to_curve(f2)


def hensel_split(curve: PolyCurve, clusters: Sequence[Cluster] | None = None,
                 *, tol: float = DEFAULT_CLUSTER_TOL, dps: int = DEFAULT_DPS,
                 reverse: bool = False) -> FactorPair:
    """Split the family along a partition of its base-root clusters.

    The first factor carries the first cluster (the last one if
    `reverse`), the second carries everything else.  Raises
    ClustersOverlap when the base factors fail to be coprime and
    InputError when there is only one cluster.
    """
    if clusters is None:
        clusters = cluster_roots(curve, tol)
    if len(clusters) < 2:
        raise InputError("splitting needs at least two root clusters")
    chosen = clusters[-1] if reverse else clusters[0]
    r1 = list(chosen.members)
    r2 = []
    for c in clusters:
        if c is not chosen:
            r2.extend(c.members)
    if curve.is_exact:
        snapped = _try_exact_seeds(curve, r1, r2)
        if snapped is not None:
            q1, q2, is_cplx = snapped
            use_qqi = is_cplx or curve.complex_ring
            first, second = _lift_exact(curve, q1, q2, use_qqi)
            return FactorPair(first=first, second=second, exact=True)
    first, second = _lift_numeric(curve, r1, r2, dps)
    return FactorPair(first=first, second=second, exact=False)
