"""Named counterexample families, emitted as sampled data.

Every entry here is a smooth construction that is flat or transcendental
somewhere, so none has an exact jet representation: entries are
deterministic samplers plus exact reference values at their marked
points.  The bump-train entries share one skeleton: marked times t_n
accumulating at a finite limit, a bump h_n of shrinking support around
each t_n, and a local model glued in by the bump.

The smooth step h is pinned concretely as

    h(s) = phi(s+1) / (phi(s+1) + phi(-s)),   phi(u) = exp(-1/u) (u > 0),

which is 1 for s >= 0 and 0 for s <= -1.  Any smooth step with those
plateaus gives the same marked values, because h_n is identically 1 in
a neighborhood of t_n; in IEEE arithmetic the plateau values are exact,
so reference identities like f(t_n) = 4^(-n) hold exactly on the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, UnknownCorpusEntry
from .family import FamilySpec


def _phi(u: float) -> float:
    return math.exp(-1.0 / u) if u > 0 else 0.0


def smooth_step(s: float) -> float:
    """1 for s >= 0, 0 for s <= -1, a smooth monotone join between."""
    a = _phi(s + 1.0)
    if a == 0.0:
        return 0.0
    b = _phi(-s)
    return a / (a + b)


def bump(n: int, s: float) -> float:
    """The n-th bump: 1 on |s| <= 1/(n 2^(n+1)), 0 outside the support
    |s| < 1/(n 2^(n+1)) + 1/n^2."""
    r = 1.0 / (n * 2 ** (n + 1))
    return smooth_step(n * n * (r + s)) * smooth_step(n * n * (r - s))


def t_mark(n: int) -> Fraction:
    """Marked time t_n, exactly."""
    acc = Fraction(0)
    for k in range(1, n):
        acc += Fraction(2, k * k) + Fraction(2, k * 2 ** (k + 1))
    return acc + Fraction(1, n * n) + Fraction(1, n * 2 ** (n + 1))


def t_limit() -> float:
    """The accumulation point lim t_n = pi^2/3 + log 2 in closed form
    (sum of 2/k^2 plus sum of 1/(k 2^k))."""
    return math.pi ** 2 / 3.0 + math.log(2.0)


def _bump_sum(t: float, n_max: int, local) -> float:
    """Sum of bump(n) * local(n, t - t_n) over n; supports are disjoint."""
    acc = 0.0
    for n in range(1, n_max + 1):
        s = t - float(t_mark(n))
        w = bump(n, s)
        if w != 0.0:
            acc += w * local(n, s)
    return acc


def flat_min_f(t: float, n_max: int = 12) -> float:
    """Bump train with local model (2n/2^n) s^2 + 4^(-n): smooth, > 0
    until the accumulation point, with f(t_n) = 4^(-n) exactly."""
    return _bump_sum(t, n_max, lambda n, s: (2.0 * n / 2 ** n) * s * s
                     + 0.25 ** n)


def cubic_f(t: float, n_max: int = 12) -> float:
    """Bump train with local model (n/2^n) s (zero at each t_n)."""
    return _bump_sum(t, n_max, lambda n, s: (n / 2 ** n) * s)


def cubic_eps(t: float, n_max: int = 12) -> float:
    return 1.0 - _bump_sum(t, n_max, lambda n, s: 0.125 ** n)


def rotating_a(t: float, n_max: int = 12) -> float:
    """Bump train with local model (2n/2^n) s + 4^(-n)."""
    return _bump_sum(t, n_max, lambda n, s: (2.0 * n / 2 ** n) * s
                     + 0.25 ** n)


def rotating_b(t: float, n_max: int = 12) -> float:
    """Bump train with local model (2n/2^n) s."""
    return _bump_sum(t, n_max, lambda n, s: (2.0 * n / 2 ** n) * s)


def spiral_matrix(t: float) -> list:
    """exp(-1/t^2) [[cos 2/t, sin 2/t], [sin 2/t, -cos 2/t]]; the zero
    matrix at t = 0.  Smooth eigenvalues, discontinuous eigenvectors."""
    if t == 0.0:
        return [[0.0, 0.0], [0.0, 0.0]]
    w = math.exp(-1.0 / (t * t))
    c = math.cos(2.0 / t)
    s = math.sin(2.0 / t)
    return [[w * c, w * s], [w * s, -w * c]]


@dataclass(frozen=True)
class CorpusEntry:
    """One generated family: samples, exact marks, and caveats."""

    name: str
    kind: str
    params: dict
    ts: tuple
    payload: dict
    refs: dict
    notes: tuple = ()

    def family_spec(self) -> FamilySpec:
        payload = {"ts": list(self.ts)}
        payload.update(self.payload)
        return FamilySpec(kind=self.kind, payload=payload,
                          options={"source": f"corpus:{self.name}",
                                   "params": dict(self.params)})

    def refs_json(self) -> dict:
        return {"schema": 1, "name": self.name, "params": dict(self.params),
                "refs": self.refs, "notes": list(self.notes)}


def _window_grid(n_lo: int, n_hi: int, res: float, halfwidth: int) -> list:
    ts = []
    for n in range(n_lo, n_hi + 1):
        center = float(t_mark(n))
        ts.extend(center + k * res for k in range(-halfwidth, halfwidth + 1))
    return sorted(set(ts))


def _scalar_entry(name, f, ts, params, refs, notes=()) -> CorpusEntry:
    rows = [[0.0, -f(t)] for t in ts]
    refs = dict(refs)
    refs["f"] = [f(t) for t in ts]
    return CorpusEntry(name=name, kind="poly-sampled", params=params,
                       ts=tuple(ts), payload={"coeff_rows": rows},
                       refs=refs, notes=tuple(notes))


def _build_ex24(n_lo: int = 1, n_hi: int = 6, res: float = 1e-5,
                halfwidth: int = 8) -> CorpusEntry:
    params = {"n_lo": n_lo, "n_hi": n_hi, "res": res,
              "halfwidth": halfwidth}
    ts = _window_grid(n_lo, n_hi, res, halfwidth)
    n_max = n_hi + 2
    marks = []
    for n in range(n_lo, n_hi + 1):
        marks.append({"n": n, "t": float(t_mark(n)),
                      "t_exact": str(t_mark(n)),
                      "f": 0.25 ** n,
                      "f2": 2.0 * n / 2 ** (n - 1)})
    return _scalar_entry(
        "ex24", lambda t: flat_min_f(t, n_max), ts, params,
        {"marks": marks},
        notes=("positive minima 4^(-n) at t_n accumulate: the square "
               "root of f is C^1 but not C^2 up to the limit point",))


def _build_ex25(n_lo: int = 3, n_hi: int = 8, res: float = 1e-5,
                halfwidth: int = 8) -> CorpusEntry:
    params = {"n_lo": n_lo, "n_hi": n_hi, "res": res,
              "halfwidth": halfwidth}
    ts = _window_grid(n_lo, n_hi, res, halfwidth)
    n_max = n_hi + 2
    f = [cubic_f(t, n_max) for t in ts]
    ep = [cubic_eps(t, n_max) for t in ts]
    # monic cubic with roots summing to 0: coefficient rows (0, a2, a3)
    rows = [[0.0, -fv * fv / 12.0, ev * fv ** 3 / 108.0]
            for fv, ev in zip(f, ep)]
    marks = []
    for n in range(n_lo, n_hi + 1):
        fdot = Fraction(n, 2 ** n)
        eps = 1 - Fraction(1, 8 ** n)
        b3 = fdot ** 3 * eps * (eps * eps - 3) / (eps * eps - 1) / 108
        marks.append({"n": n, "t": float(t_mark(n)),
                      "t_exact": str(t_mark(n)),
                      "fdot": float(fdot), "eps": float(eps),
                      "b3": float(b3)})
    return CorpusEntry(
        name="ex25", kind="poly-sampled", params=params, ts=tuple(ts),
        payload={"coeff_rows": rows},
        refs={"marks": marks, "f": f, "eps": ep},
        notes=("the source text states eps(t_n) = 8^(-n), but the "
               "displayed definition of eps gives 1 - 8^(-n); only the "
               "latter produces the stated ~n^3 growth of b3(t_n), so "
               "the displayed definition is used here",
               "b3 is the product of the three root derivatives; its "
               "marks blow up like n^3/108, so no C^1 root choice "
               "exists through the accumulation point"))


def _build_ex74(n_lo: int = 1, n_hi: int = 6, res: float = 1e-5,
                halfwidth: int = 8) -> CorpusEntry:
    params = {"n_lo": n_lo, "n_hi": n_hi, "res": res,
              "halfwidth": halfwidth}
    ts = _window_grid(n_lo, n_hi, res, halfwidth)
    n_max = n_hi + 2
    mats = []
    lam = []
    for t in ts:
        a = rotating_a(t, n_max)
        b = rotating_b(t, n_max)
        mats.append([[a, b], [b, -a]])
        lam.append(math.hypot(a, b))
    marks = [{"n": n, "t": float(t_mark(n)), "t_exact": str(t_mark(n)),
              "a": 0.25 ** n, "b": 0.0, "bdot": 2.0 * n / 2 ** n}
             for n in range(n_lo, n_hi + 1)]
    return CorpusEntry(
        name="ex74", kind="hermitian-sampled", params=params, ts=tuple(ts),
        payload={"matrices": mats},
        refs={"marks": marks, "lambda_plus": lam},
        notes=("eigenvalues +-sqrt(a^2+b^2) admit a C^1 arrangement but "
               "no C^2 one: second difference quotients blow up along "
               "the marks",))


def _build_ex77(k_max: int = 20, steps: int = 20000) -> CorpusEntry:
    params = {"k_max": k_max, "steps": steps}
    lo = 1.0 / (k_max + 1)
    hi = 1.0
    ts = [lo + k * (hi - lo) / steps for k in range(steps + 1)]
    mats = [spiral_matrix(t) for t in ts]
    lam = [math.exp(-1.0 / (t * t)) for t in ts]
    return CorpusEntry(
        name="ex77", kind="hermitian-sampled", params=params, ts=tuple(ts),
        payload={"matrices": mats},
        refs={"lambda_plus": lam, "angle": [1.0 / t for t in ts]},
        notes=("eigenvalues +-exp(-1/t^2) are smooth through 0, but the "
               "eigenvector lines rotate like 1/t and admit no "
               "continuous choice",))


def _log_zero_grid(k_lo: int, k_hi: int, pts: int) -> list:
    # windows around the zeros exp(-k pi), geometrically separated
    ts = []
    for k in range(k_lo, k_hi + 1):
        z = math.exp(-k * math.pi)
        ts.extend(z * (1.0 + 1.6 * q / pts) for q in range(-pts // 2,
                                                           pts // 2))
    return sorted(set([0.0] + [t for t in ts if t > 0]))


def _recip_zero_grid(k_lo: int, k_hi: int, pts: int) -> list:
    # windows around the zeros 1/(k pi), which crowd together
    ts = []
    for k in range(k_lo, k_hi + 1):
        z = 1.0 / (k * math.pi)
        gap = 1.0 / (math.pi * k * (k + 1))
        ts.extend(z + 0.8 * gap * q / pts for q in range(-pts // 2,
                                                         pts // 2))
    return sorted(set([0.0] + [t for t in ts if t > 0]))


def _build_ex23a(k_lo: int = 1, k_hi: int = 5, pts: int = 80) -> CorpusEntry:
    params = {"k_lo": k_lo, "k_hi": k_hi, "pts": pts}
    ts = _log_zero_grid(k_lo, k_hi, pts)

    def f(t):
        return (t * math.sin(math.log(t))) ** 2 if t > 0 else 0.0

    def track(t):
        return t * math.sin(math.log(t)) if t > 0 else 0.0

    return _scalar_entry(
        "ex23a", f, ts, params,
        {"track": [track(t) for t in ts],
         "zeros": [math.exp(-k * math.pi) for k in range(k_lo, k_hi + 1)]},
        notes=("f is C^1 only; the signed track t sin(log t) is not "
               "differentiable at 0",))


def _build_ex23b(k_lo: int = 2, k_hi: int = 6, pts: int = 80) -> CorpusEntry:
    params = {"k_lo": k_lo, "k_hi": k_hi, "pts": pts}
    ts = _recip_zero_grid(k_lo, k_hi, pts)

    def f(t):
        return t ** 4 * math.sin(1.0 / t) ** 2 if t > 0 else 0.0

    def track(t):
        return t * t * math.sin(1.0 / t) if t > 0 else 0.0

    return _scalar_entry(
        "ex23b", f, ts, params,
        {"track": [track(t) for t in ts],
         "zeros": [1.0 / (k * math.pi) for k in range(k_lo, k_hi + 1)]},
        notes=("f is twice differentiable; the signed track t^2 sin(1/t) "
               "is differentiable but not C^1",))


def _build_ex23c(k_lo: int = 1, k_hi: int = 5, pts: int = 80) -> CorpusEntry:
    params = {"k_lo": k_lo, "k_hi": k_hi, "pts": pts}
    ts = _log_zero_grid(k_lo, k_hi, pts)

    def f(t):
        return t ** 4 * math.sin(math.log(t)) ** 2 if t > 0 else 0.0

    def track(t):
        return t * t * math.sin(math.log(t)) if t > 0 else 0.0

    return _scalar_entry(
        "ex23c", f, ts, params,
        {"track": [track(t) for t in ts],
         "zeros": [math.exp(-k * math.pi) for k in range(k_lo, k_hi + 1)]},
        notes=("f is C^3; the signed track t^2 sin(log t) is C^1 but not "
               "twice differentiable",))


def _build_warner(t_lo: float = -0.1, t_hi: float = 0.4,
                  steps: int = 3000) -> CorpusEntry:
    params = {"t_lo": t_lo, "t_hi": t_hi, "steps": steps}
    ts = [t_lo + k * (t_hi - t_lo) / steps for k in range(steps + 1)]

    def f(t):
        if t <= 0:
            return 0.0
        return math.sin(1.0 / t) ** 2 * math.exp(-1.0 / t) \
            + math.exp(-2.0 / t)

    return _scalar_entry(
        "warner", f, ts, params, {},
        notes=("f > 0 for t > 0 and flat at 0; the square root is C^1 "
               "but its second derivative is discontinuous at 0",))


_BUILDERS = {
    "ex23a": _build_ex23a,
    "ex23b": _build_ex23b,
    "ex23c": _build_ex23c,
    "ex24": _build_ex24,
    "ex25": _build_ex25,
    "warner": _build_warner,
    "ex74": _build_ex74,
    "ex77": _build_ex77,
}

CORPUS_NAMES = tuple(sorted(_BUILDERS))


def build(name: str, **params) -> CorpusEntry:
    """Build a corpus entry by name; deterministic in (name, params)."""
    if name not in _BUILDERS:
        raise UnknownCorpusEntry(
            f"{name!r}; known: {', '.join(CORPUS_NAMES)}")
    try:
        return _BUILDERS[name](**params)
    except TypeError as exc:
        raise InputError(f"corpus {name}: {exc}") from exc
