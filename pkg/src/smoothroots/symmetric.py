"""Power sums, the Bezoutiant form, and real-rootedness certificates.

Monic polynomials are stored in the signed-elementary convention

    P(x) = x^n - a_1 x^(n-1) + a_2 x^(n-2) - ... + (-1)^n a_n,

so that a_k is the k-th elementary symmetric function of the roots.
The Bezoutiant is the Hankel matrix of power sums s_0..s_(2n-2); its
leading principal minors decide real-rootedness: the form is positive
semidefinite exactly when all roots are real, its rank is the number of
distinct roots, and its signature the number of distinct real roots.

Everything here is exact rational arithmetic.  The recurrences are
written generically (any commutative ring with the needed scalars), so
the curve modules can run them on jets unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence


# -- generic ring versions -------------------------------------------------
#
# `from_int` embeds integers into the ring; `div_int` divides a ring
# element by a nonzero integer.  Elements must support +, -, *.


def newton_sums_generic(sigma: Sequence, upto: int, from_int: Callable):
    """Power sums s_0..s_upto from elementary symmetric functions.

    Uses the Newton recurrence for k <= n and the linear extension
    s_k = sigma_1 s_(k-1) - sigma_2 s_(k-2) + ... for k > n.
    """
    n = len(sigma)
    s = [from_int(n)]
    for k in range(1, upto + 1):
        acc = from_int(0)
        for j in range(1, min(k - 1, n) + 1):
            term = sigma[j - 1] * s[k - j]
            acc = acc + term if j % 2 == 1 else acc - term
        if k <= n:
            term = sigma[k - 1] * from_int(k)
            acc = acc + term if k % 2 == 1 else acc - term
        s.append(acc)
    return s


def elementary_from_sums_generic(s: Sequence, n: int, from_int: Callable,
                                 div_int: Callable):
    """Invert the Newton recurrence: sigma_1..sigma_n from s_1..s_n.

    `s` is indexed so that s[k] is the k-th power sum (s[0] unused or s_0).
    """
    sigma = []
    for k in range(1, n + 1):
        acc = s[k]
        for j in range(1, k):
            term = sigma[j - 1] * s[k - j]
            acc = acc - term if j % 2 == 1 else acc + term
        if k % 2 == 0:
            acc = from_int(0) - acc
        sigma.append(div_int(acc, k))
    return sigma


def hankel_generic(s: Sequence, n: int):
    """Bezoutiant: the n x n Hankel matrix B[i][j] = s_(i+j)."""
    return [[s[i + j] for j in range(n)] for i in range(n)]


def leading_minors_generic(B: Sequence[Sequence], from_int: Callable):
    """Leading principal minors det(B[:k][:k]) for k = 1..n.

    Division-free (expansion with memoized column subsets), so it works
    over rings without division, jets included.
    """
    n = len(B)
    out = []
    for k in range(1, n + 1):
        minors = {(): from_int(1)}
        for size in range(1, k + 1):
            row = size - 1
            nxt = {}
            for cols in combinations(range(k), size):
                acc = from_int(0)
                for idx, c in enumerate(cols):
                    sub = cols[:idx] + cols[idx + 1:]
                    term = B[row][c] * minors[sub]
                    acc = acc + term if (row + idx) % 2 == 0 else acc - term
                nxt[cols] = acc
            minors = nxt
        out.append(minors[tuple(range(k))])
    return out


# -- exact rational layer ---------------------------------------------------


def _frac_div_int(x: Fraction, k: int) -> Fraction:
    return x / k


@dataclass(frozen=True)
class PolyCoeffs:
    """Monic real polynomial in the signed-elementary convention."""

    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) if isinstance(x, int)
                                            else x for x in self.a))

    @property
    def degree(self) -> int:
        return len(self.a)

    @classmethod
    def from_roots(cls, roots: Sequence) -> "PolyCoeffs":
        """Exact elementary symmetric functions of the given roots."""
        sigma = [Fraction(1)]
        for r in roots:
            r = Fraction(r) if isinstance(r, int) else r
            nxt = [Fraction(1)]
            for k in range(1, len(sigma) + 1):
                prev = sigma[k] if k < len(sigma) else 0
                nxt.append(prev + r * sigma[k - 1])
            sigma = nxt
        return cls(tuple(sigma[1:]))

    @classmethod
    def from_plain(cls, coeffs: Sequence) -> "PolyCoeffs":
        """From plain coefficients [1, c_1, ..., c_n] of x^n, x^(n-1), ..."""
        coeffs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        if coeffs[0] != 1:
            raise ValueError("polynomial must be monic")
        return cls(tuple((-1) ** k * coeffs[k] for k in range(1, len(coeffs))))

    def plain(self) -> list:
        """Plain coefficients [1, -a_1, a_2, ...] of descending powers."""
        return [Fraction(1)] + [(-1) ** k * self.a[k - 1]
                                for k in range(1, self.degree + 1)]

    def eval(self, x):
        acc = Fraction(1) if isinstance(x, (int, Fraction)) else 1.0
        for c in self.plain()[1:]:
            acc = acc * x + c
        return acc

    def to_json(self) -> dict:
        return {"degree": self.degree, "a": [str(x) for x in self.a]}

    @classmethod
    def from_json(cls, obj: dict) -> "PolyCoeffs":
        return cls(tuple(Fraction(x) for x in obj["a"]))


def newton_from_elementary(p: PolyCoeffs, upto: int | None = None) -> list:
    """Power sums s_0..s_upto of the roots of p (default up to 2n-2)."""
    n = p.degree
    if upto is None:
        upto = max(2 * n - 2, 0)
    return newton_sums_generic(p.a, upto, Fraction)


def elementary_from_newton(s: Sequence, n: int) -> PolyCoeffs:
    """Recover PolyCoeffs from power sums s_1..s_n.

    `s` may start at s_1 (length n) or include s_0 (length n+1).
    """
    s = [Fraction(x) if isinstance(x, int) else x for x in s]
    if len(s) == n:
        s = [Fraction(n)] + s
    sigma = elementary_from_sums_generic(s, n, Fraction, _frac_div_int)
    return PolyCoeffs(tuple(sigma))


def bezoutiant(p: PolyCoeffs) -> list:
    """The Hankel matrix of power sums s_0..s_(2n-2), exact."""
    s = newton_from_elementary(p)
    return hankel_generic(s, p.degree)


def delta_minors(p: PolyCoeffs) -> list:
    """Leading principal minors of the Bezoutiant, exact Fractions."""
    return leading_minors_generic(bezoutiant(p), Fraction)


@dataclass(frozen=True)
class Certificate:
    """Outcome of the Bezoutiant real-rootedness test."""

    all_real: bool
    rank: int
    signature: int
    deltas: tuple

    def to_json(self) -> dict:
        return {
            "all_real": self.all_real,
            "rank": self.rank,
            "signature": self.signature,
            "deltas": [str(d) for d in self.deltas],
        }


def inertia(B: Sequence[Sequence[Fraction]]) -> tuple:
    """(positive, negative, zero) inertia of an exact symmetric matrix.

    Symmetric congruence diagonalization with pivoting; zero-diagonal
    blocks are handled by the hyperbolic-pair row/column addition, which
    keeps the congruence class.
    """
    n = len(B)
    M = [[Fraction(x) for x in row] for row in B]
    pos = neg = 0
    k = 0
    while k < n:
        piv, best = None, Fraction(0)
        for i in range(k, n):
            if M[i][i] != 0 and abs(M[i][i]) > abs(best):
                piv, best = i, M[i][i]
        if piv is None:
            off = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if M[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                break  # trailing block is zero
            i, j = off
            # fold row/col j into row/col i: diagonal becomes 2*M[i][j] != 0
            for m in range(n):
                M[i][m] += M[j][m]
            for m in range(n):
                M[m][i] += M[m][j]
            continue
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            for row in M:
                row[k], row[piv] = row[piv], row[k]
        d = M[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if M[i][k] == 0:
                continue
            f = M[i][k] / d
            for j in range(k, n):
                M[i][j] -= f * M[k][j]
        # keep symmetry for the trailing block
        for j in range(k + 1, n):
            M[k][j] = Fraction(0)
        for i in range(k + 1, n):
            M[i][k] = Fraction(0)
        for i in range(k + 1, n):
            for j in range(i + 1, n):
                M[j][i] = M[i][j]
        k += 1
    return pos, neg, n - pos - neg


def certify_real_rooted(p: PolyCoeffs) -> Certificate:
    """Sylvester-style certificate from the Bezoutiant's exact inertia.

    all_real  <=> the form is positive semidefinite,
    rank       =  number of distinct complex roots,
    signature  =  number of distinct real roots (positive minus negative
                  inertia; conjugate pairs contribute one of each sign).
    """
    B = bezoutiant(p)
    pos, neg, _ = inertia(B)
    return Certificate(
        all_real=(neg == 0),
        rank=pos + neg,
        signature=pos - neg,
        deltas=tuple(delta_minors(p)),
    )
