"""Truncated-series arithmetic: exactness, truncation rules, sqrt/recip."""

import math
import random
from fractions import Fraction

import pytest

from smoothroots import (
    ComplexJet,
    FlatJet,
    Jet,
    Multiplicity,
    MultiplicityTooLow,
    NegativeLeading,
    OddMultiplicity,
    ZeroConstantTerm,
    jet_div,
    jet_recip,
    jet_sqrt,
)

F = Fraction


def J(*coeffs, exact_zero=False):
    return Jet([F(c) for c in coeffs], exact_zero=exact_zero)


def test_constructors_and_order():
    z = Jet.zero(order=5)
    assert z.order == 5 and z.exact_zero
    t = Jet.variable(order=3)
    assert t.coeffs == (F(0), F(1), F(0), F(0))
    c = Jet.const(F(7, 2), order=2)
    assert c.constant_term() == F(7, 2)
    p = Jet.t_power(3, order=6, c=-2)
    assert p.coeffs[3] == F(-2) and sum(c != 0 for c in p.coeffs) == 1


def test_min_order_rule():
    a = J(1, 1, 1)          # order 2
    b = J(1, 0, 0, 0, 0)    # order 4
    assert (a + b).order == 2
    assert (a * b).order == 2


def test_product_truncates():
    # (1 + 2t + t^2)(1 - t) at order 2 keeps 1 + t - t^2
    a = J(1, 2, 1)
    b = J(1, -1, 0)
    assert (a * b).coeffs == (F(1), F(1), F(-1))


def test_exact_zero_vs_flat():
    z = Jet.zero(order=4)
    flat = Jet.zero(order=4, exact=False)
    assert z.multiplicity() == Multiplicity.flat_to(4)
    assert flat.multiplicity() == Multiplicity.flat_to(4)
    assert z.exact_zero and not flat.exact_zero
    # exact zero annihilates products; flat zero does not claim exactness
    t = Jet.variable(order=4)
    assert (z * t).exact_zero
    assert not (flat * t).exact_zero


def test_entire_cancellation_gives_exact_zero():
    t = Jet.variable(order=6)
    assert (t - t).exact_zero
    # the discriminant-style cancellation that shows up when recentering
    assert (t * t - t.scale(2) * t + t * t).exact_zero
    # an unknown-tail jet never cancels to a certified zero
    f = Jet.from_function(lambda k: Fraction(1) if k == 1 else Fraction(0),
                          order=6)
    assert not (f - f).exact_zero
    assert (f - f).multiplicity() == Multiplicity.flat_to(6)


def test_entire_respects_truncation_order():
    t = Jet.variable(order=3)
    assert t.entire
    # t^2 * t^2 has degree 4 > order 3: the stored jet is no longer the
    # whole polynomial, so the proof bit must drop
    sq = t * t
    assert sq.entire
    assert not (sq * sq).entire
    # from_poly that drops a nonzero high coefficient is not entire
    g = Jet.from_poly([1, 0, 0, 0, 0, 7], order=3)
    assert not g.entire
    assert Jet.from_poly([1, 0, 2], order=3).entire
    # truncation keeps the proof only when nothing nonzero is cut
    assert sq.truncate(2).entire
    assert not Jet.from_poly([0, 1, 1], order=2).truncate(1).entire


def test_entire_json_roundtrip():
    t = Jet.variable(order=4)
    back = Jet.from_json(t.to_json())
    assert back.entire
    assert (back - t).exact_zero


def test_multiplicity_finite():
    f = J(0, 0, 3, 1)
    assert f.multiplicity() == Multiplicity.finite(2)
    assert f.multiplicity().at_least(2)
    assert not f.multiplicity().at_least(3)
    assert Multiplicity.flat_to(8).at_least(100)


def test_shift_out_exact():
    # 2t^3 - t^4 shifted out by 3 gives 2 - t
    f = J(0, 0, 0, 2, -1)
    g = f.shift_out(3)
    assert g.coeffs == (F(2), F(-1))
    assert g.order == 1


def test_shift_out_rejects_low_terms():
    f = J(0, 1, 2)
    with pytest.raises(MultiplicityTooLow):
        f.shift_out(2)


def test_shift_in_roundtrip():
    f = J(1, -2, 3)
    g = f.shift_in(2)
    assert g.order == 4
    assert g.coeffs == (F(0), F(0), F(1), F(-2), F(3))
    assert g.shift_out(2) == f


def test_shift_out_exact_zero_keeps_exactness():
    z = Jet.zero(order=6)
    g = z.shift_out(4)
    assert g.exact_zero and g.order == 2


def test_arithmetic_matches_sampled_functions():
    rng = random.Random(20260819)
    for _ in range(200):
        n = rng.randrange(1, 6)
        ac = [F(rng.randrange(-9, 10), rng.randrange(1, 7)) for _ in range(n + 1)]
        bc = [F(rng.randrange(-9, 10), rng.randrange(1, 7)) for _ in range(n + 1)]
        a, b = Jet(ac), Jet(bc)
        s, p = a + b, a * b
        # exact convolution check against direct formula
        for k in range(n + 1):
            assert s.coeffs[k] == ac[k] + bc[k]
            assert p.coeffs[k] == sum(ac[i] * bc[k - i] for i in range(k + 1))


def test_eval_exact_and_float():
    f = J(1, -1, F(1, 2))
    assert f.eval(F(2)) == 1 - 2 + 2
    assert f.eval_float(0.5) == pytest.approx(1 - 0.5 + 0.125)


def test_recip_geometric_series():
    # 1/(1 - t^2) = 1 + t^2 + t^4 at order 4
    f = J(1, 0, -1, 0, 0)
    g = jet_recip(f)
    assert g.coeffs == (F(1), F(0), F(1), F(0), F(1))
    assert jet_div(Jet.const(1, 4), f) == g


def test_recip_rejects_zero_constant():
    with pytest.raises(ZeroConstantTerm):
        jet_recip(J(0, 1, 2))


def test_recip_roundtrip_random():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randrange(1, 8)
        c = [F(rng.randrange(-5, 6), rng.randrange(1, 5)) for _ in range(n + 1)]
        if c[0] == 0:
            c[0] = F(1)
        f = Jet(c)
        g = jet_recip(f)
        one = f * g
        assert one.coeffs[0] == 1
        assert all(x == 0 for x in one.coeffs[1:])


def test_sqrt_perfect_square():
    # sqrt(4 + 4t + t^2) = 2 + t
    f = J(4, 4, 1)
    r = jet_sqrt(f)
    assert r.coeffs == (F(2), F(1), F(0))
    assert r.is_exact


def test_sqrt_with_even_vanishing():
    # sqrt(t^4 (1 + t)) = t^2 (1 + t/2 - t^2/8 + ...)
    f = J(0, 0, 0, 0, 1, 1, 0, 0)
    r = jet_sqrt(f)
    assert r.coeffs[2] == F(1)
    assert r.coeffs[3] == F(1, 2)
    assert r.coeffs[4] == F(-1, 8)
    sq = r * r
    for k in range(sq.order + 1):
        assert sq.coeffs[k] == f.coeffs[k]


def test_sqrt_float_fallback():
    # leading coefficient 2 is not a rational square: float coefficients
    f = J(2, 1)
    r = jet_sqrt(f)
    assert not r.is_exact
    assert r.coeffs[0] == pytest.approx(math.sqrt(2))
    assert r.coeffs[1] == pytest.approx(1 / (2 * math.sqrt(2)))


def test_sqrt_errors():
    with pytest.raises(OddMultiplicity):
        jet_sqrt(J(0, 1, 1))
    with pytest.raises(NegativeLeading):
        jet_sqrt(J(-1, 0, 0))
    with pytest.raises(FlatJet):
        jet_sqrt(Jet.zero(order=4))
    with pytest.raises(FlatJet):
        jet_sqrt(Jet.zero(order=4, exact=False))


def test_sqrt_squares_back_random():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randrange(0, 5)
        half = [F(rng.randrange(1, 8))] + [
            F(rng.randrange(-6, 7), rng.randrange(1, 5)) for _ in range(n)
        ]
        g = Jet(half)
        f = g * g
        r = jet_sqrt(f)
        if r.is_exact:
            assert r == g or r == -g
        else:
            for k in range(r.order + 1):
                assert float(r.coeffs[k]) == pytest.approx(float(g.coeffs[k]))


def test_json_roundtrip():
    f = J(F(1, 3), -2, 0, 5)
    assert Jet.from_json(f.to_json()) == f
    z = Jet.zero(order=3)
    assert Jet.from_json(z.to_json()).exact_zero


def test_truncate_extend():
    f = J(1, 2, 3, 4)
    assert f.truncate(2).coeffs == (F(1), F(2), F(3))
    z = Jet.zero(order=2)
    assert z.extend(5).order == 5
    with pytest.raises(ValueError):
        f.extend(6)
    assert f.pad_known(6).coeffs == (F(1), F(2), F(3), F(4), F(0), F(0), F(0))


def test_complex_jet_arithmetic():
    i = ComplexJet(Jet.zero(order=3), Jet.const(1, 3))
    m1 = i * i
    assert m1.re.coeffs == (F(-1), F(0), F(0), F(0))
    assert m1.im.exact_zero or all(c == 0 for c in m1.im.coeffs)
    t = ComplexJet.from_jet(Jet.variable(order=3))
    z = t + i
    n = z.norm_sq()
    # |t + i|^2 = t^2 + 1
    assert n.coeffs == (F(1), F(0), F(1), F(0))


def test_complex_jet_recip():
    t = Jet.variable(order=4)
    z = ComplexJet(Jet.const(1, 4), t)  # 1 + i t
    w = z.recip()
    one = z * w
    assert all(c == 0 for c in one.re.coeffs[1:]) and one.re.coeffs[0] == 1
    assert all(c == 0 for c in one.im.coeffs)


def test_complex_jet_json():
    z = ComplexJet(Jet([F(1), F(2)]), Jet([F(0), F(-1)]))
    assert ComplexJet.from_json(z.to_json()) == z
