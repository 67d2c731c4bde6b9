"""Truncated power series ("jets") in one parameter t.

A jet stores coefficients c_0..c_N of a function's expansion at t = 0,
exactly, as `fractions.Fraction` values.  Exactness is not cosmetic: the
solving algorithms branch on "is this coefficient zero", which floating
point cannot certify.  Numeric (float / mpmath) coefficients are allowed
as a clearly second-class citizen for the stages that genuinely leave the
rationals (irrational root clusters, normalizations by irrational norms).

Exact jets additionally carry an `entire` bit: True means the jet is
*provably* the polynomial spelled by its stored coefficients, with nothing
truncated away.  The bit survives ring operations whose results still fit
the truncation order, so a cancellation such as t - t yields a certified
zero.  `exact_zero` is derived from it (entire and all coefficients zero),
which distinguishes the zero function from a jet all of whose *stored*
coefficients happen to vanish (a flat function such as exp(-1/t^2) looks
like the latter at every truncation order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    FlatJet,
    MultiplicityTooLow,
    NegativeLeading,
    OddMultiplicity,
    ZeroConstantTerm,
)

Coeff = Union[Fraction, float, complex]

DEFAULT_ORDER = 32


def _normalize(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return c  # float, complex, mpmath types pass through


def _coeff_is_exact(c) -> bool:
    return isinstance(c, Fraction)


@dataclass(frozen=True)
class Multiplicity:
    """Order of vanishing at t = 0: Finite(m) or FlatToOrder(N).

    FlatToOrder(N) means every stored coefficient up to order N is zero,
    so the true multiplicity is at least N + 1 or the function is flat.
    """

    value: int
    flat: bool = False

    @classmethod
    def finite(cls, m: int) -> "Multiplicity":
        return cls(m, False)

    @classmethod
    def flat_to(cls, order: int) -> "Multiplicity":
        return cls(order, True)

    @property
    def is_finite(self) -> bool:
        return not self.flat

    def at_least(self, k: int) -> bool:
        """True when the vanishing order is provably >= k (flat counts)."""
        return self.flat or self.value >= k

    def __repr__(self) -> str:
        if self.flat:
            return f"FlatToOrder({self.value})"
        return f"Finite({self.value})"


class Jet:
    """Coefficients c_0..c_N of a truncated expansion at t = 0."""

    __slots__ = ("coeffs", "entire")

    def __init__(self, coeffs: Sequence[Coeff], exact_zero: bool = False,
                 entire: bool = False):
        cs = tuple(_normalize(c) for c in coeffs)
        if not cs:
            raise ValueError("a jet needs at least the constant coefficient")
        if exact_zero:
            if any(not _is_zero(c) for c in cs):
                raise ValueError("exact_zero jet with a nonzero coefficient")
            cs = (Fraction(0),) * len(cs)
            entire = True
        # entire is only meaningful for exact coefficients
        ent = bool(entire) and all(_coeff_is_exact(c) for c in cs)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "entire", ent)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER, exact: bool = True) -> "Jet":
        return cls((Fraction(0),) * (order + 1), entire=exact)

    @classmethod
    def const(cls, c, order: int = DEFAULT_ORDER) -> "Jet":
        c = _normalize(c)
        if _coeff_is_exact(c) and c == 0:
            return cls.zero(order)
        return cls((c,) + (Fraction(0),) * order, entire=True)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "Jet":
        """The jet of t itself."""
        return cls.t_power(1, order)

    @classmethod
    def t_power(cls, k: int, order: int = DEFAULT_ORDER, c=1) -> "Jet":
        """c * t^k."""
        if not 0 <= k <= order:
            raise ValueError(f"power {k} outside truncation order {order}")
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[k] = _normalize(c)
        return cls(coeffs, entire=True)

    @classmethod
    def from_poly(cls, coeffs: Iterable, order: int = DEFAULT_ORDER) -> "Jet":
        """Jet of a polynomial given by coefficients c_0, c_1, ... of t^k.

        Degrees above the truncation order are dropped; the result is marked
        entire only when nothing nonzero was dropped.
        """
        cs = [_normalize(c) for c in coeffs]
        nothing_dropped = all(_is_zero(c) for c in cs[order + 1:])
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(cs, entire=nothing_dropped)

    @classmethod
    def from_function(cls, deriv_free_taylor: Callable[[int], Coeff],
                      order: int = DEFAULT_ORDER) -> "Jet":
        """Jet from a callable giving the k-th Taylor coefficient."""
        return cls([deriv_free_taylor(k) for k in range(order + 1)])

    # -- basic queries ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return all(_coeff_is_exact(c) for c in self.coeffs)

    @property
    def exact_zero(self) -> bool:
        """Provably the zero function (entire with every coefficient zero)."""
        return self.entire and not any(self.coeffs)

    def _degree(self) -> int:
        """Degree of the stored coefficient polynomial, -1 if all zero."""
        for k in range(self.order, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def constant_term(self):
        return self.coeffs[0]

    def is_zero_to_order(self, tol: float | None = None) -> bool:
        return all(_is_zero(c, tol) for c in self.coeffs)

    def multiplicity(self, tol: float | None = None) -> Multiplicity:
        """Index of the first nonzero coefficient, or FlatToOrder(N).

        For exact jets "nonzero" is exact.  For numeric jets coefficients
        with |c| <= tol * scale are treated as zero (default tol 1e-40,
        suited to the 64-digit working precision of the numeric paths).
        """
        scale = 1.0 if self.is_exact else self._scale()
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c, tol, scale=scale):
                return Multiplicity.finite(k)
        return Multiplicity.flat_to(self.order)

    def _scale(self) -> float:
        if self.is_exact:
            return 1.0
        m = 0.0
        for c in self.coeffs:
            try:
                m = max(m, abs(complex(c)))
            except (TypeError, OverflowError):
                m = max(m, float(abs(c)))
        return max(m, 1.0)

    # -- arithmetic -------------------------------------------------------

    def _sum_entire(self, other: "Jet", n: int) -> bool:
        # a sum of polynomials is the stored polynomial iff neither operand
        # had nonzero coefficients beyond the result order
        return (self.entire and other.entire
                and self._degree() <= n and other._degree() <= n)

    def __add__(self, other: "Jet") -> "Jet":
        if not isinstance(other, Jet):
            return NotImplemented
        n = min(self.order, other.order)
        coeffs = [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)]
        return Jet(coeffs, entire=self._sum_entire(other, n))

    def __sub__(self, other: "Jet") -> "Jet":
        if not isinstance(other, Jet):
            return NotImplemented
        n = min(self.order, other.order)
        coeffs = [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)]
        return Jet(coeffs, entire=self._sum_entire(other, n))

    def __neg__(self) -> "Jet":
        return Jet([-c for c in self.coeffs], entire=self.entire)

    def __mul__(self, other: "Jet") -> "Jet":
        if not isinstance(other, Jet):
            return NotImplemented
        n = min(self.order, other.order)
        if self.exact_zero or other.exact_zero:
            return Jet.zero(n)
        a, b = self.coeffs, other.coeffs
        coeffs = [
            sum(a[i] * b[k - i] for i in range(k + 1))
            for k in range(n + 1)
        ]
        ent = (self.entire and other.entire
               and self._degree() + other._degree() <= n)
        return Jet(coeffs, entire=ent)

    def scale(self, q) -> "Jet":
        """Multiply by a scalar (rational keeps exactness)."""
        q = _normalize(q)
        if _coeff_is_exact(q) and q == 0:
            return Jet.zero(self.order)
        return Jet([c * q for c in self.coeffs],
                   entire=self.entire and _coeff_is_exact(q))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Jet):
            return NotImplemented
        return self.coeffs == other.coeffs and self.exact_zero == other.exact_zero

    def __hash__(self):
        return hash((self.coeffs, self.exact_zero))

    # -- order management ---------------------------------------------------

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        ent = self.entire and all(not c for c in self.coeffs[order + 1:])
        return Jet(self.coeffs[: order + 1], entire=ent)

    def extend(self, order: int) -> "Jet":
        """Pad with zeros.  Only legal for entire jets: anything else
        would invent unknown coefficients."""
        if order <= self.order:
            return self.truncate(order)
        if not self.entire:
            raise ValueError("cannot extend a jet with unknown coefficients")
        return Jet(self.coeffs + (Fraction(0),) * (order - self.order),
                   entire=True)

    def pad_known(self, order: int) -> "Jet":
        """Pad with zeros when the jet is an exact polynomial the caller
        certifies (root jets that terminate, constants).  Use sparingly."""
        if order <= self.order:
            return self.truncate(order)
        return Jet(self.coeffs + (Fraction(0),) * (order - self.order),
                   entire=self.is_exact)

    # -- shifts -------------------------------------------------------------

    def shift_out(self, k: int, tol: float | None = None) -> "Jet":
        """Strip t^k: return f / t^k.  The first k coefficients must vanish
        (within tol * scale for numeric jets)."""
        if k == 0:
            return self
        if k < 0:
            raise ValueError("negative shift")
        if self.exact_zero:
            return Jet.zero(max(self.order - k, 0))
        if k > self.order:
            raise MultiplicityTooLow(f"cannot strip t^{k} at order {self.order}")
        scale = self._scale()
        for i in range(k):
            if not _is_zero(self.coeffs[i], tol, scale=scale):
                raise MultiplicityTooLow(
                    f"coefficient of t^{i} is nonzero, cannot strip t^{k}")
        return Jet(self.coeffs[k:], entire=self.entire)

    def shift_in(self, k: int) -> "Jet":
        """Multiply by t^k.  All k new low coefficients are exactly known,
        so the order grows to order + k."""
        if k == 0:
            return self
        if k < 0:
            raise ValueError("negative shift")
        if self.exact_zero:
            return Jet.zero(self.order + k)
        return Jet((Fraction(0),) * k + self.coeffs, entire=self.entire)

    # -- evaluation -----------------------------------------------------------

    def eval(self, t):
        """Evaluate the truncated polynomial at t (exact for Fraction t)."""
        t = _normalize(t)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * t + c
        return acc

    def eval_float(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        if self.is_exact:
            coeffs = [str(c) for c in self.coeffs]
        else:
            coeffs = [c if isinstance(c, (int, float)) else str(c)
                      for c in self.coeffs]
        out = {"coeffs": coeffs, "exact_zero": self.exact_zero}
        if self.entire and not self.exact_zero:
            out["entire"] = True
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Jet":
        coeffs = [Fraction(c) if isinstance(c, str) else c
                  for c in obj["coeffs"]]
        return cls(coeffs,
                   exact_zero=obj.get("exact_zero", False),
                   entire=obj.get("entire", False))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{k}")
            if len(terms) >= 6:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else ("0" if self.exact_zero else "0?")
        return f"Jet({body}; order={self.order})"


def _is_zero(c, tol: float | None = None, scale: float = 1.0) -> bool:
    if isinstance(c, Fraction):
        return c == 0
    if tol is None:
        tol = 1e-40
    return abs(c) <= tol * scale


# -- derived operations ---------------------------------------------------


def jet_sqrt(f: Jet) -> Jet:
    """Square root branch with positive leading coefficient.

    Requires even vanishing order 2m and a positive leading coefficient;
    returns x = t^m * sqrt(f / t^(2m)) with x*x = f to the result order
    (order(f) - m).  Exact when the leading coefficient is a perfect
    rational square, float-coefficient otherwise.

    Raises
    ------
    FlatJet            when no stored coefficient is nonzero
    OddMultiplicity    when the vanishing order is odd
    NegativeLeading    when the leading coefficient is negative
    """
    m = f.multiplicity()
    if not m.is_finite:
        raise FlatJet("square root of a flat jet is undetermined")
    if m.value % 2 != 0:
        raise OddMultiplicity(f"vanishing order {m.value} is odd")
    half = m.value // 2
    g = f.shift_out(m.value)
    c0 = g.coeffs[0]
    if isinstance(c0, complex):
        raise NegativeLeading("square root needs a real leading coefficient")
    if c0 < 0:
        raise NegativeLeading(f"leading coefficient {c0} < 0")

    s0 = _sqrt_scalar(c0)
    n = g.order
    xs = [s0]
    inv2s0 = 1 / (2 * s0)
    for k in range(1, n + 1):
        conv = sum(xs[i] * xs[k - i] for i in range(1, k))
        xs.append((g.coeffs[k] - conv) * inv2s0)
    return Jet(xs).shift_in(half)


def _sqrt_scalar(c0):
    if isinstance(c0, Fraction):
        num, den = c0.numerator, c0.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return math.sqrt(num / den)
    return math.sqrt(float(c0))


def jet_recip(f: Jet) -> Jet:
    """Multiplicative inverse; the constant term must be nonzero."""
    c0 = f.coeffs[0]
    if _is_zero(c0, None, scale=f._scale()):
        raise ZeroConstantTerm("cannot invert a jet vanishing at t = 0")
    r0 = 1 / c0
    rs = [r0]
    for k in range(1, f.order + 1):
        acc = sum(f.coeffs[i] * rs[k - i] for i in range(1, k + 1))
        rs.append(-r0 * acc)
    return Jet(rs)


def jet_div(a: Jet, b: Jet) -> Jet:
    return a * jet_recip(b)


def jet_sin_cos(f: Jet) -> tuple:
    """(sin f, cos f) for a jet with vanishing constant term.

    The argument is nilpotent modulo the truncation, so the exponential
    series terminates and the result is exact for exact input.  Arguments
    with a nonzero constant term would need a floating-point seed and are
    rejected instead.
    """
    if f.coeffs[0]:
        raise ZeroConstantTerm(
            "sin/cos jets need a vanishing constant term")
    n = f.order
    sin_t, cos_t = Jet.zero(n), Jet.const(1, n)
    term = Jet.const(1, n)
    k = 0
    while True:
        term = (term * f).scale(Fraction(1, k + 1))
        k += 1
        if not any(term.coeffs):
            break
        signed = -term if k % 4 in (2, 3) else term
        if k % 2 == 0:
            cos_t = cos_t + signed
        else:
            sin_t = sin_t + signed
    return sin_t, cos_t


def jet_sin(f: Jet) -> Jet:
    return jet_sin_cos(f)[0]


def jet_cos(f: Jet) -> Jet:
    return jet_sin_cos(f)[1]


class ComplexJet:
    """A complex-valued jet stored as an exact (re, im) pair of real jets."""

    __slots__ = ("re", "im")

    def __init__(self, re: Jet, im: Jet | None = None):
        if im is None:
            im = Jet.zero(re.order)
        n = min(re.order, im.order)
        object.__setattr__(self, "re", re.truncate(n))
        object.__setattr__(self, "im", im.truncate(n))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexJet is immutable")

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER, exact: bool = True) -> "ComplexJet":
        return cls(Jet.zero(order, exact), Jet.zero(order, exact))

    @classmethod
    def const(cls, re, im=0, order: int = DEFAULT_ORDER) -> "ComplexJet":
        return cls(Jet.const(re, order), Jet.const(im, order))

    @classmethod
    def from_jet(cls, f: Jet) -> "ComplexJet":
        return cls(f, Jet.zero(f.order))

    @property
    def order(self) -> int:
        return self.re.order

    @property
    def is_exact(self) -> bool:
        return self.re.is_exact and self.im.is_exact

    @property
    def exact_zero(self) -> bool:
        return self.re.exact_zero and self.im.exact_zero

    def is_real(self, tol: float | None = None) -> bool:
        return self.im.exact_zero or self.im.is_zero_to_order(tol)

    def conj(self) -> "ComplexJet":
        return ComplexJet(self.re, -self.im)

    def __add__(self, other: "ComplexJet") -> "ComplexJet":
        return ComplexJet(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexJet") -> "ComplexJet":
        return ComplexJet(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexJet":
        return ComplexJet(-self.re, -self.im)

    def __mul__(self, other: "ComplexJet") -> "ComplexJet":
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexJet(a * c - b * d, a * d + b * c)

    def scale(self, q) -> "ComplexJet":
        return ComplexJet(self.re.scale(q), self.im.scale(q))

    def scale_complex(self, re_q, im_q) -> "ComplexJet":
        a, b = self.re, self.im
        return ComplexJet(a.scale(re_q) - b.scale(im_q),
                          a.scale(im_q) + b.scale(re_q))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexJet):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def norm_sq(self) -> Jet:
        """|f|^2 = f * conj(f), a real jet."""
        return self.re * self.re + self.im * self.im

    def multiplicity(self, tol: float | None = None) -> Multiplicity:
        mr, mi = self.re.multiplicity(tol), self.im.multiplicity(tol)
        if mr.is_finite and mi.is_finite:
            return Multiplicity.finite(min(mr.value, mi.value))
        if mr.is_finite:
            return mr
        if mi.is_finite:
            return mi
        return Multiplicity.flat_to(self.order)

    def shift_out(self, k: int, tol: float | None = None) -> "ComplexJet":
        return ComplexJet(self.re.shift_out(k, tol), self.im.shift_out(k, tol))

    def shift_in(self, k: int) -> "ComplexJet":
        return ComplexJet(self.re.shift_in(k), self.im.shift_in(k))

    def truncate(self, order: int) -> "ComplexJet":
        return ComplexJet(self.re.truncate(order), self.im.truncate(order))

    def extend(self, order: int) -> "ComplexJet":
        return ComplexJet(self.re.extend(order), self.im.extend(order))

    def recip(self) -> "ComplexJet":
        d = jet_recip(self.norm_sq())
        return ComplexJet(self.re * d, -(self.im * d))

    def eval(self, t):
        return self.re.eval(t), self.im.eval(t)

    def eval_complex(self, t: float) -> complex:
        return complex(self.re.eval_float(t), self.im.eval_float(t))

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "ComplexJet":
        return cls(Jet.from_json(obj["re"]), Jet.from_json(obj["im"]))

    def __repr__(self) -> str:
        return f"ComplexJet(re={self.re!r}, im={self.im!r})"
