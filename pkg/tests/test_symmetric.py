"""Power sums, Bezoutiant minors, and real-rootedness certificates."""

import random
from fractions import Fraction

from smoothroots import (
    PolyCoeffs,
    bezoutiant,
    certify_real_rooted,
    delta_minors,
    elementary_from_newton,
    inertia,
    newton_from_elementary,
)

F = Fraction


def brute_minors(roots):
    """Independent oracle: Delta_k = sum over k-subsets of the squared
    Vandermonde determinant of the chosen roots."""
    from itertools import combinations

    n = len(roots)
    out = []
    for k in range(1, n + 1):
        total = F(0)
        for sub in combinations(range(n), k):
            v = F(1)
            for a in range(len(sub)):
                for b in range(a + 1, len(sub)):
                    v *= roots[sub[b]] - roots[sub[a]]
            total += v * v
        out.append(total)
    return out


def test_sign_convention():
    # roots 1, 2: P = x^2 - 3x + 2, a = (3, 2)
    p = PolyCoeffs.from_roots([1, 2])
    assert p.a == (F(3), F(2))
    assert p.plain() == [F(1), F(-3), F(2)]
    assert p.eval(1) == 0 and p.eval(2) == 0
    assert PolyCoeffs.from_plain([1, -3, 2]) == p


def test_newton_small():
    # roots 1, 1, 2: s_1 = 4, s_2 = 6, s_3 = 10, s_4 = 18
    p = PolyCoeffs.from_roots([1, 1, 2])
    s = newton_from_elementary(p, upto=4)
    assert s == [F(3), F(4), F(6), F(10), F(18)]


def test_newton_inverse():
    # s = (3, 3, 5, 9) gives sigma = (3, 2, 0)
    p = elementary_from_newton([3, 5, 9], 3)
    # careful: the helper takes s_1..s_n
    assert p.a == (F(3), F(2), F(0))


def test_newton_roundtrip_random():
    rng = random.Random(424)
    for _ in range(300):
        n = rng.randrange(1, 7)
        roots = [F(rng.randrange(-6, 7), rng.randrange(1, 4)) for _ in range(n)]
        p = PolyCoeffs.from_roots(roots)
        s = newton_from_elementary(p, upto=n)
        q = elementary_from_newton(s[1:], n)
        assert q == p
        # power sums really are sums of root powers
        for k in range(1, n + 1):
            assert s[k] == sum(r ** k for r in roots)


def test_bezoutiant_entries():
    # x^2 - t^2 pattern at a sample value t = 3: roots +-3
    p = PolyCoeffs.from_roots([3, -3])
    B = bezoutiant(p)
    assert B == [[F(2), F(0)], [F(0), F(18)]]
    assert delta_minors(p) == [F(2), F(36)]


def test_minors_against_vandermonde_oracle():
    rng = random.Random(13)
    for _ in range(200):
        n = rng.randrange(1, 6)
        roots = [F(rng.randrange(-5, 6), rng.randrange(1, 4)) for _ in range(n)]
        p = PolyCoeffs.from_roots(roots)
        assert delta_minors(p) == brute_minors(roots)


def test_certificate_complex_pair():
    # x^2 + 1: B = diag(2, -2), indefinite, signature 0
    p = PolyCoeffs.from_plain([1, 0, 1])
    B = bezoutiant(p)
    assert B == [[F(2), F(0)], [F(0), F(-2)]]
    c = certify_real_rooted(p)
    assert not c.all_real
    assert c.rank == 2 and c.signature == 0
    assert c.deltas == (F(2), F(-4))


def test_certificate_real_distinct():
    p = PolyCoeffs.from_roots([1, -1])
    c = certify_real_rooted(p)
    assert c.all_real and c.rank == 2 and c.signature == 2
    assert c.deltas == (F(2), F(4))


def test_certificate_repeated_root():
    # (x - 1)^2 (x + 2): rank and signature both 2 (two distinct reals)
    p = PolyCoeffs.from_roots([1, 1, -2])
    c = certify_real_rooted(p)
    assert c.all_real
    assert c.rank == 2 and c.signature == 2


def test_certificate_all_same_root():
    p = PolyCoeffs.from_roots([0, 0, 0])
    B = bezoutiant(p)
    assert B[0][0] == 3
    assert all(B[i][j] == 0 for i in range(3) for j in range(3) if i + j > 0)
    c = certify_real_rooted(p)
    assert c.all_real and c.rank == 1 and c.signature == 1


def test_inertia_zero_diagonal_block():
    # hyperbolic block [[0, 1], [1, 0]] has inertia (1, 1, 0)
    B = [[F(0), F(1)], [F(1), F(0)]]
    assert inertia(B) == (1, 1, 0)


def test_certificate_counts_distinct_real_roots():
    rng = random.Random(5150)
    for _ in range(200):
        n = rng.randrange(1, 6)
        reals = [F(rng.randrange(-4, 5)) for _ in range(n)]
        # sprinkle repeats
        if n >= 2 and rng.random() < 0.5:
            reals[1] = reals[0]
        p = PolyCoeffs.from_roots(reals)
        c = certify_real_rooted(p)
        assert c.all_real
        assert c.rank == len(set(reals))
        assert c.signature == len(set(reals))


def test_certificate_mixed_random():
    rng = random.Random(777)
    for _ in range(100):
        nr = rng.randrange(0, 3)
        nc = rng.randrange(0, 2)
        if nr + 2 * nc == 0:
            nr = 1
        reals = [F(rng.randrange(-3, 4)) for _ in range(nr)]
        plain = [F(1)]
        for r in reals:
            plain = [plain[i] + 0 for i in range(len(plain))] + [F(0)]
            for i in range(len(plain) - 2, -1, -1):
                plain[i + 1] -= r * plain[i]
        pairs = []
        for _ in range(nc):
            a = F(rng.randrange(-2, 3))
            b = F(rng.randrange(1, 3))  # roots a +- bi, strictly complex
            pairs.append((a, b))
            quad = [F(1), -2 * a, a * a + b * b]
            out = [F(0)] * (len(plain) + 2)
            for i, c in enumerate(plain):
                for j, d in enumerate(quad):
                    out[i + j] += c * d
            plain = out
        p = PolyCoeffs.from_plain(plain)
        c = certify_real_rooted(p)
        assert c.all_real == (nc == 0)
        distinct_real = len(set(reals))
        distinct_cplx = len(set(pairs)) * 2
        assert c.rank == distinct_real + distinct_cplx
        assert c.signature == distinct_real


def test_json_roundtrip():
    p = PolyCoeffs.from_roots([F(1, 2), -2])
    assert PolyCoeffs.from_json(p.to_json()) == p
    c = certify_real_rooted(p)
    j = c.to_json()
    assert j["all_real"] is True and j["rank"] == 2
