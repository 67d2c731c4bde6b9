"""The resolution recursion: recenter, weights, deflation, leaves."""

import random
from fractions import Fraction

import pytest

from smoothroots import (
    ComplexJet,
    Jet,
    Multiplicity,
    PolyCurve,
    RealityViolated,
    TruncationExhausted,
    check_curve,
    deflate_weights,
    minor_orders,
    multiplicity_weight,
    reduce_center,
    solve,
    verify_roots,
)

F = Fraction
N = 16


def curve_plain(*coeff_polys, order=N):
    """Build a family from descending plain coefficient polynomials in t,
    each given as a list of rational t-coefficients (ascending)."""
    jets = []
    for poly in coeff_polys:
        jets.append(Jet([F(c) for c in poly] +
                        [F(0)] * (order + 1 - len(poly))))
    return PolyCurve.from_plain_jets(jets)


def xx_minus_t_even(k, order=N):
    # x^2 - t^(2k)
    a2 = [0] * (2 * k) + [-1]
    return curve_plain([1], [0], a2, order=order)


def root_set(report):
    out = []
    for r in report.roots:
        if isinstance(r, ComplexJet):
            out.append(("c", r.re.coeffs, r.im.coeffs))
        else:
            out.append(("r", r.coeffs))
    return sorted(out)


def test_reduce_center():
    # roots t and 3t: mean 2t, recentered roots -t, t
    t = Jet.variable(N)
    c = PolyCurve.from_root_jets([t, t.scale(3)])
    centered, shift = reduce_center(c)
    assert shift == t.scale(2)
    assert centered.a[0].exact_zero
    assert centered.a[1] == -(t * t)


def test_multiplicity_weight_real():
    c = xx_minus_t_even(1)
    centered, _ = reduce_center(c)
    d = multiplicity_weight(centered, "real")
    assert d.kind == "weight" and d.weight == 1
    d4 = multiplicity_weight(reduce_center(xx_minus_t_even(4))[0], "real")
    assert d4.weight == 4


def test_multiplicity_weight_odd_order_violates():
    c = curve_plain([1], [0], [0, 0, 0, -1])  # x^2 - t^3
    with pytest.raises(RealityViolated):
        multiplicity_weight(c, "real")


def test_multiplicity_weight_complex_floor():
    c = curve_plain([1], [0], [0, 0, 0, -1])  # x^2 - t^3
    d = multiplicity_weight(c, "complex")
    assert d.kind == "weight" and d.weight == 1


def test_deflate_weights():
    c = xx_minus_t_even(1)
    d = deflate_weights(c, 1)
    assert d.order == c.order - 2
    assert d.a[1].coeffs[0] == F(-1)
    with pytest.raises(TruncationExhausted):
        deflate_weights(xx_minus_t_even(1, order=3), 1)


def test_solve_pair_roots_exact():
    rep = solve(xx_minus_t_even(1))
    roots = sorted(rep.roots, key=lambda r: r.coeffs[1])
    # roots are -t and t, with every stored coefficient exact
    assert roots[0].coeffs[1] == F(-1)
    assert roots[1].coeffs[1] == F(1)
    assert all(c == 0 for r in roots for i, c in enumerate(r.coeffs) if i != 1)
    verify_roots(rep.curve, rep.roots)
    assert rep.certificate is not None and rep.certificate.all_real


def test_solve_higher_weight():
    rep = solve(xx_minus_t_even(3))
    assert rep.solvable
    roots = sorted(rep.roots, key=lambda r: r.coeffs[3])
    assert roots[0].coeffs[3] == F(-1) and roots[1].coeffs[3] == F(1)
    verify_roots(rep.curve, rep.roots)


def test_solve_reconstruction():
    rep = solve(xx_minus_t_even(2))
    rec = rep.reconstruct()
    tr = rep.curve.truncate(rec.order)
    for got, want in zip(rec.a, tr.a):
        for i in range(rec.order + 1):
            assert got.coeffs[i] == want.coeffs[i]


def test_solve_acceptance_quartic_shape():
    # x^4 - (t^2 + t^(2k)) x^2 + t^(2k+2), roots {t, -t, t^k, -t^k}
    k = 2
    order = 32
    a2 = [0] * 33
    a2[2] = F(-1)
    a2[2 * k] = F(-1)
    a4 = [0] * 33
    a4[2 * k + 2] = F(1)
    c = PolyCurve((Jet.zero(order), Jet(a2[: order + 1]),
                   Jet.zero(order), Jet(a4[: order + 1])))
    rep = solve(c)
    assert rep.solvable
    verify_roots(c, rep.roots)
    # each root is exactly +-t or +-t^k
    sig = sorted(tuple((i, x) for i, x in enumerate(r.coeffs) if x != 0)
                 for r in rep.roots)
    assert sig == sorted([((1, F(1)),), ((1, F(-1)),),
                          ((k, F(1)),), ((k, F(-1)),)])
    # the factor x^2 - t^(2k) shows up as a tree node, mapped back to the
    # original coordinates
    def walk(node):
        yield node
        for ch in node.children:
            yield from walk(ch)

    found = False
    for node in walk(rep.tree):
        sub = node.curve
        if sub is None or sub.degree != 2:
            continue
        a1, a2l = sub.a
        if any(x != 0 for x in a1.coeffs):
            continue
        nz = [(i, x) for i, x in enumerate(a2l.coeffs) if x != 0]
        found = found or nz == [(2 * k, F(-1))]
    assert found


def test_solve_reality_violated_odd_branch():
    c = curve_plain([1], [0], [0, 0, 0, -1])  # x^2 - t^3
    with pytest.raises(RealityViolated):
        solve(c)  # sampled roots at t < 0 are complex
    with pytest.raises(RealityViolated):
        solve(c, check=False)  # odd vanishing order of a_2
    c2 = curve_plain([1], [0], [0, 0, 0, 1])  # x^2 + t^3
    with pytest.raises(RealityViolated):
        solve(c2, check=False)


def test_solve_complex_mode_unsolvable():
    c = curve_plain([1], [0], [0, 0, 0, -1])  # x^2 - t^3
    rep = solve(c, mode="complex")
    assert not rep.solvable
    assert [leaf.kind for leaf in rep.leaves] == ["unsolvable"]
    # the mapped-back unsolvable factor is the curve itself
    leaf = rep.leaves[0]
    assert leaf.curve.degree == 2
    nz = [(i, x) for i, x in enumerate(leaf.curve.a[1].coeffs) if x != 0]
    assert nz == [(3, F(-1))]
    assert "deflate[r=1]" in leaf.path


def test_solve_zero_curve():
    c = PolyCurve((Jet.zero(N), Jet.zero(N), Jet.zero(N)))
    rep = solve(c)
    assert rep.solvable
    assert len(rep.roots) == 3
    assert all(r.exact_zero for r in rep.roots)


def test_solve_truncated_tail_is_flat_not_zero():
    # x^2 - t^40 stored to order 8: the solver must not claim zero roots
    c = xx_minus_t_even(20, order=8)
    rep = solve(c, check=False)
    assert not rep.solvable
    assert [leaf.kind for leaf in rep.leaves] == ["flat"]


def test_solve_split_mixed():
    # (x - 1 - t)(x + 1)(x - t): three clusters at -1, 0, 1
    t = Jet.variable(N)
    c = PolyCurve.from_root_jets([Jet.const(1, N) + t, Jet.const(-1, N), t])
    rep = solve(c)
    assert rep.solvable
    got = root_set(rep)
    want = sorted([("r", (Jet.const(1, N) + t).coeffs),
                   ("r", Jet.const(-1, N).coeffs),
                   ("r", t.coeffs)])
    assert got == want
    verify_roots(c, rep.roots)


def test_solve_cluster_reverse_same_root_set():
    t = Jet.variable(N)
    c = PolyCurve.from_root_jets([Jet.const(1, N) + t, Jet.const(-1, N),
                                  t, -t])
    a = solve(c)
    b = solve(c, cluster_reverse=True)
    assert root_set(a) == root_set(b)
    assert a.solvable and b.solvable


def test_solve_complex_gaussian_pair():
    # x^2 + 1 in complex mode: constant branches +-i
    c = curve_plain([1], [0], [1])
    rep = solve(c, mode="complex")
    assert rep.solvable
    ims = sorted(r.im.coeffs[0] for r in rep.roots)
    assert ims == [F(-1), F(1)]
    assert all(all(x == 0 for x in r.re.coeffs) for r in rep.roots)


def test_solve_numeric_curve():
    # (x^2 - 2)(x - t): irrational pair plus a moving root
    t = Jet.variable(N)
    quad = PolyCurve.from_plain_jets([Jet.const(1, N), Jet.zero(N),
                                      Jet.const(-2, N)])
    c = quad.mul(PolyCurve.from_root_jets([t]))
    rep = solve(c)
    assert rep.solvable
    consts = sorted(float(r.coeffs[0]) for r in rep.roots)
    assert consts[0] == pytest.approx(-(2 ** 0.5), abs=1e-10)
    assert consts[1] == pytest.approx(0.0, abs=1e-10)
    assert consts[2] == pytest.approx(2 ** 0.5, abs=1e-10)


def test_solve_repeated_moving_root():
    # (x - t)^2 (x + 2): weight inside a split branch
    t = Jet.variable(N)
    c = PolyCurve.from_root_jets([t, t, Jet.const(-2, N)])
    rep = solve(c)
    assert rep.solvable
    doubled = [r for r in rep.roots if r.coeffs[0] == 0]
    assert len(doubled) == 2
    assert all(r.coeffs[1] == F(1) for r in doubled)
    verify_roots(c, rep.roots)


def test_check_curve_passes_and_fails():
    c = xx_minus_t_even(1)
    cert = check_curve(c)
    assert cert is not None and cert.all_real
    bad = curve_plain([1], [0], [1])  # x^2 + 1
    with pytest.raises(RealityViolated):
        check_curve(bad)


def test_minor_orders_pair():
    # x^2 - t^2: minors 2 and 4t^2, so orders (0, 2)
    rep = minor_orders(xx_minus_t_even(1))
    assert rep.orders[0] == Multiplicity.finite(0)
    assert rep.orders[1] == Multiplicity.finite(2)
    assert rep.top_k == 2 and rep.finite


def test_minor_orders_double_root():
    # (x - t)^2: the 2x2 minor vanishes identically, top drops to 1
    t = Jet.variable(N)
    c = PolyCurve.from_root_jets([t, t])
    rep = minor_orders(c)
    assert rep.orders[0] == Multiplicity.finite(0)
    assert not rep.orders[1].is_finite
    assert rep.top_k == 1 and rep.finite


def test_solve_random_exact_families():
    rng = random.Random(8128)
    t = Jet.variable(12)
    for _ in range(20):
        n = rng.randrange(2, 5)
        roots = []
        for _i in range(n):
            base = rng.randrange(-3, 4)
            roots.append(Jet([F(base)] + [
                F(rng.randrange(-2, 3)) for _ in range(12)]))
        c = PolyCurve.from_root_jets(roots)
        rep = solve(c, check=False)
        if not rep.solvable:
            continue
        L = min(r.order for r in rep.roots) + 1
        got = sorted(tuple(r.coeffs[:L]) for r in rep.roots)
        want = sorted(tuple(r.coeffs[:L]) for r in roots)
        assert got == want


def test_report_json():
    rep = solve(xx_minus_t_even(2))
    j = rep.to_json()
    assert j["schema"] == 1
    assert j["solvable"] is True
    assert len(j["roots"]) == 2
    assert j["tree"]["kind"] in ("deflate", "split", "recenter")
