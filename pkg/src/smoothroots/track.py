"""Sampled root curves on a time grid.

Three layers, matching how the continuous theory degrades on data:

* `ordered_roots` / `matched_roots`: per-sample numeric roots, either
  sorted ascending (real case; the ordered choice is continuous) or
  matched to the previous sample by minimal total displacement.
* meet detection and order estimation: where two ordered curves touch,
  estimate the order of contact from a log-log slope.  Finite data
  cannot certify infinite order, so high estimates degrade to a
  FlatSuspect tag instead of a number.
* `differentiable_arrangement`: undo the kinks of the ordered choice by
  toggling a transposition across every slow (first-order) meet, leaving
  flat-suspect regions free.

`c1_sqrt_track` and `sqrt_bound_audit` are the scalar (degree-2)
diagnostics: signed square-root tracking with curvature-driven sign
flips, and the derivative bound f'(t)^2 <= 2 f(t) max f'' that a C^2
square root must obey.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import InputError, NegativeValue, NotRealRooted, WindowTooSmall

FLAT_SUSPECT = "flat-suspect"

MEET_TOL = 1e-7
ORDER_CEILING = 8


@dataclass(frozen=True)
class MeetEvent:
    """A detected touching of curves i < j near t.

    order_estimate is an integer >= 1 (1 = slow meet) or the string
    FLAT_SUSPECT when the data is consistent with arbitrarily high order.
    """

    i: int
    j: int
    t: float
    order_estimate: object

    @property
    def slow(self) -> bool:
        return self.order_estimate == 1

    def to_json(self) -> dict:
        return {"i": self.i + 1, "j": self.j + 1, "t": self.t,
                "order_estimate": self.order_estimate}


@dataclass(frozen=True)
class RootGrid:
    """Root values on a strictly increasing grid of sample times.

    roots[k] lists the n root values at ts[k]: ascending reals in
    ordered mode, displacement-matched complex values in matched mode.
    arrangement[k], when filled, is the permutation (0-based here;
    1-based in JSON/CSV) with arranged curve x_i(t) = roots[k][sigma(i)].
    """

    ts: tuple
    roots: tuple
    mode: str = "ordered"
    arrangement: tuple | None = None
    meets: tuple = ()
    diagnostics: tuple = ()

    @property
    def n(self) -> int:
        return len(self.roots[0])

    @property
    def degree(self) -> int:
        return self.n

    def root_scale(self) -> float:
        m = max((abs(x) for row in self.roots for x in row), default=0.0)
        return max(float(m), 1.0)

    def curve(self, i: int) -> list:
        """Samples of the i-th curve (arranged if available, else ordered)."""
        if self.arrangement is None:
            return [row[i] for row in self.roots]
        return [row[sig[i]] for row, sig in zip(self.roots, self.arrangement)]

    def arranged(self) -> list:
        return [self.curve(i) for i in range(self.n)]

    def to_csv(self) -> str:
        lines = ["t," + ",".join(f"x_{i+1}" for i in range(self.n)) + ",sigma"]
        for k, t in enumerate(self.ts):
            sig = (self.arrangement[k] if self.arrangement is not None
                   else tuple(range(self.n)))
            vals = [self.roots[k][sig[i]] for i in range(self.n)]
            cells = [_csv_num(t)] + [_csv_num(v) for v in vals]
            cells.append(" ".join(str(s + 1) for s in sig))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        def val(x):
            if isinstance(x, complex):
                return {"re": x.real, "im": x.imag}
            return float(x)

        return {
            "schema": 1,
            "mode": self.mode,
            "ts": [float(t) for t in self.ts],
            "roots": [[val(x) for x in row] for row in self.roots],
            "arrangement": (None if self.arrangement is None else
                            [[s + 1 for s in sig] for sig in self.arrangement]),
            "meets": [m.to_json() for m in self.meets],
            "diagnostics": [dict(d) for d in self.diagnostics],
        }


def _csv_num(x) -> str:
    if isinstance(x, complex):
        return f"{x.real!r}{x.imag:+}j".replace("+-", "-")
    return repr(float(x))


def _plain_floats(poly, dtype=float) -> np.ndarray:
    """Descending plain coefficients of one sample, as a numpy vector."""
    if hasattr(poly, "plain"):
        cs = poly.plain()
    else:
        cs = list(poly)
    if dtype is complex:
        return np.array([complex(c) for c in cs], dtype=complex)
    return np.array([float(c) for c in cs], dtype=float)


def _check_ts(ts: Sequence[float]) -> tuple:
    out = tuple(float(t) for t in ts)
    if any(b <= a for a, b in zip(out, out[1:])):
        raise InputError("sample times must be strictly increasing")
    return out


def ordered_roots(samples: Sequence, tol: float = 1e-9) -> RootGrid:
    """Ascending real roots per sample; the continuous ordered choice.

    samples: pairs (t, P) with P a PolyCoeffs or a descending list of
    plain coefficients.  Raises NotRealRooted when a sample has a root
    whose imaginary part exceeds tol times the coefficient scale.
    """
    ts = _check_ts([t for t, _ in samples])
    rows = []
    for (t, poly) in samples:
        cs = _plain_floats(poly)
        scale = max(1.0, float(np.max(np.abs(cs))))
        rts = np.roots(cs)
        bad = float(np.max(np.abs(rts.imag))) if len(rts) else 0.0
        if bad > tol * scale:
            raise NotRealRooted(
                f"sample t={t}: |Im root| = {bad:.3g} exceeds tolerance")
        rows.append(tuple(sorted(rts.real.tolist())))
    return RootGrid(ts=ts, roots=tuple(rows), mode="ordered")


def matched_roots(samples: Sequence) -> RootGrid:
    """Complex roots per sample, matched to the previous sample by
    minimum-total-displacement assignment (for curves with no real order)."""
    from scipy.optimize import linear_sum_assignment

    ts = _check_ts([t for t, _ in samples])
    rows = []
    prev = None
    for (t, poly) in samples:
        cs = _plain_floats(poly, dtype=complex)
        rts = sorted(np.roots(cs).tolist(), key=lambda z: (z.real, z.imag))
        if prev is not None:
            cost = np.array([[abs(z - w) for z in rts] for w in prev])
            _, cols = linear_sum_assignment(cost)
            rts = [rts[c] for c in cols]
        rows.append(tuple(rts))
        prev = rts
    return RootGrid(ts=ts, roots=tuple(rows), mode="matched")


# -- meet detection and classification ------------------------------------

def _gap(grid: RootGrid, i: int, j: int, k: int) -> float:
    return abs(grid.roots[k][j] - grid.roots[k][i])


def classify_meet(grid: RootGrid, i: int, j: int, t_star: float,
                  span: int = 16, ceiling: int = ORDER_CEILING,
                  noise: float = 1e-13, dt_max: float | None = None) -> MeetEvent:
    """Estimate the contact order of curves i and j at t_star.

    Log-log regression of |y_j - y_i| against |t - t_star| over the
    nearest `span` usable samples, fitted on each side of the meet
    separately: the gap's lead coefficient may differ across a
    crossing, which must not read as curvature.  Usable means gap above
    the noise floor, within dt_max when given, and only while the gap
    still grows (a neighboring meet turns it back down).  Rounds the
    mean side slope to an integer >= 1; estimates above the ceiling, or
    fits with unstable residuals, degrade to FLAT_SUSPECT.
    """
    scale = grid.root_scale()
    floor = noise * scale
    pts = []
    for k, t in enumerate(grid.ts):
        dt = abs(t - t_star)
        g = _gap(grid, i, j, k)
        if dt > 0 and g > floor and (dt_max is None or dt < dt_max):
            pts.append((dt, g, t >= t_star))
    pts.sort(key=lambda p: p[0])
    slopes = []
    rmss = []
    total = 0
    for side in (True, False):
        kept = []
        for dt, g, s in pts:
            if s != side:
                continue
            if kept and g <= kept[-1][1]:
                break
            kept.append((dt, g))
            if len(kept) == span:
                break
        total += len(kept)
        if len(kept) < 2 or len({p[0] for p in kept}) < 2:
            continue
        xs = np.log([p[0] for p in kept])
        ys = np.log([p[1] for p in kept])
        slope, intercept = np.polyfit(xs, ys, 1)
        resid = ys - (slope * xs + intercept)
        slopes.append(float(slope))
        rmss.append(float(np.sqrt(np.mean(resid ** 2))))
    if not slopes:
        raise WindowTooSmall(
            f"meet ({i},{j}) at t={t_star}: {total} usable samples")
    slope = float(np.mean(slopes))
    if slope > ceiling + 0.5 or max(rmss) > 0.5:
        return MeetEvent(i, j, t_star, FLAT_SUSPECT)
    return MeetEvent(i, j, t_star, max(1, int(round(slope))))


def _parabolic_min(ts, gs, k) -> float:
    """Vertex of the parabola through three gap samples around index k."""
    if k == 0 or k == len(ts) - 1:
        return ts[k]
    t0, t1, t2 = ts[k - 1], ts[k], ts[k + 1]
    g0, g1, g2 = gs[k - 1], gs[k], gs[k + 1]
    # quadratic fit; fall back to the grid point when degenerate
    denom = (t0 - t1) * (t0 - t2) * (t1 - t2)
    if denom == 0:
        return ts[k]
    a = (t2 * (g1 - g0) + t1 * (g0 - g2) + t0 * (g2 - g1)) / denom
    b = (t2 * t2 * (g0 - g1) + t1 * t1 * (g2 - g0) + t0 * t0 * (g1 - g2)) / denom
    if a <= 0:
        return ts[k]
    v = -b / (2 * a)
    lo, hi = ts[k - 1], ts[k + 1]
    return min(max(v, lo), hi)


def find_meets(grid: RootGrid, meet_tol: float = MEET_TOL,
               ceiling: int = ORDER_CEILING) -> RootGrid:
    """Detect and classify meets of all curve pairs; returns the grid
    with `meets` (and any detection diagnostics) filled in.

    A sample marks a meet when the gap drops below meet_tol times the
    root scale; consecutive marked samples merge into one event located
    by parabolic interpolation of the gap minimum.  Pairs whose gap is
    below threshold everywhere are reported as identically-equal
    diagnostics, not meets.
    """
    n = grid.n
    thr = meet_tol * grid.root_scale()
    cands = []
    notes = []
    for i in range(n):
        for j in range(i + 1, n):
            gaps = [_gap(grid, i, j, k) for k in range(len(grid.ts))]
            below = [g < thr for g in gaps]
            if all(below):
                notes.append({"kind": "identical", "i": i + 1, "j": j + 1})
                continue
            k = 0
            while k < len(below):
                if not below[k]:
                    k += 1
                    continue
                run_start = k
                while k < len(below) and below[k]:
                    k += 1
                run = range(run_start, k)
                k_min = min(run, key=lambda q: gaps[q])
                if gaps[k_min] <= 1e-11 * grid.root_scale():
                    # the sample sits on the meet; interpolating across
                    # the kink would only move the location off it
                    t_star = grid.ts[k_min]
                else:
                    t_star = _parabolic_min(grid.ts, gaps, k_min)
                cands.append((i, j, t_star))
    # classify against a window clipped at the nearest separated meet:
    # the gap law near one meet holds only up to the next one
    steps = np.diff(np.asarray(grid.ts))
    h_med = float(np.median(steps)) if len(steps) else 0.0
    locs = sorted(c[2] for c in cands)
    events = []
    for i, j, t_star in cands:
        dists = [abs(q - t_star) for q in locs
                 if abs(q - t_star) > 3 * h_med]
        dt_max = 0.9 * min(dists) if dists else None
        try:
            ev = classify_meet(grid, i, j, t_star, ceiling=ceiling,
                               dt_max=dt_max)
        except WindowTooSmall:
            ev = MeetEvent(i, j, t_star, FLAT_SUSPECT)
            notes.append({"kind": "unclassified-meet",
                          "i": i + 1, "j": j + 1, "t": t_star})
        events.append(ev)
    return replace(grid, meets=tuple(events),
                   diagnostics=grid.diagnostics + tuple(notes))


# -- differentiable arrangement --------------------------------------------

def _continuation(grid: RootGrid, s: int, members: list, notes: list) -> dict:
    """Rank relabeling across a slow meet between samples s-1 and s.

    The curve arriving at the meet with the a-th smallest slope leaves
    with the a-th smallest value, so sorting the meeting ranks by their
    approach slope gives the continuation.  Slope ties (contact of
    order >= 2 inside the cluster) keep their relative order; any
    choice is differentiable there.  A pair never needs the slopes: a
    first-order meet of two curves is a transversal crossing, and the
    continuation is the swap.
    """
    if len(members) == 2:
        return {members[0]: members[1], members[1]: members[0]}
    a = s - 1
    if a < 1:
        notes.append({"kind": "boundary-meet", "t": grid.ts[a],
                      "ranks": [r + 1 for r in members]})
        return dict(zip(reversed(members), members))
    dt = grid.ts[a] - grid.ts[a - 1]
    ls = {r: (grid.roots[a][r] - grid.roots[a - 1][r]) / dt
          for r in members}
    ranked = sorted(members, key=lambda r: ls[r])
    tie = 1e-7 * max(1.0, max(abs(v) for v in ls.values()))
    groups = [[ranked[0]]]
    for r in ranked[1:]:
        if ls[r] - ls[groups[-1][-1]] <= tie:
            groups[-1].append(r)
        else:
            groups.append([r])
    order = [r for g in groups for r in sorted(g)]
    return dict(zip(order, members))


def differentiable_arrangement(grid: RootGrid,
                               meet_tol: float = MEET_TOL,
                               ceiling: int = ORDER_CEILING) -> RootGrid:
    """Fill the arrangement that makes the curves differentiable.

    A sequential sweep over t: at every slow (first-order) meet, in
    time order, the running permutation picks up the relabeling that
    continues each curve through the meet (a pair swaps; larger
    simultaneous clusters exit in approach-slope order).  Meets of
    order >= 2 and flat-suspect meets leave the arrangement alone (any
    choice works there).  For each pair (i, j) the {0,1} schedule that
    starts at 0 on the left and toggles across the pair's slow meets is
    recorded in the diagnostics, as are the one-sided slope jumps of
    the arranged curves across each slow meet.
    """
    if grid.mode != "ordered":
        raise InputError("arrangement needs an ordered (real) grid")
    if not grid.meets:
        grid = find_meets(grid, meet_tol, ceiling)
    n = grid.n
    m = len(grid.ts)
    notes = list(grid.diagnostics)
    slow_by_pair = {}
    for ev in grid.meets:
        if ev.slow:
            slow_by_pair.setdefault((ev.i, ev.j), []).append(ev.t)
        else:
            notes.append({"kind": "free-region", "i": ev.i + 1,
                          "j": ev.j + 1, "t": ev.t,
                          "order_estimate": ev.order_estimate})
    for pair, t_stars in slow_by_pair.items():
        t_stars.sort()
        last = 0
        toggles = []
        val = 0
        ptr = 0
        for k, t in enumerate(grid.ts):
            while ptr < len(t_stars) and t_stars[ptr] < t:
                val ^= 1
                ptr += 1
            if k and last != val:
                toggles.append(k)
            last = val
        notes.append({"kind": "eps-schedule", "i": pair[0] + 1,
                      "j": pair[1] + 1, "toggles": tuple(toggles)})
    # sweep: walk the slow meets in time order; meets within a step or
    # so of each other are one geometric event (interpolated locations
    # jitter within a step), anchored at the first sample strictly
    # right of their median location
    ts_arr = np.asarray(grid.ts)
    steps = np.diff(ts_arr)
    h_med = float(np.median(steps)) if len(steps) else 0.0
    slow = sorted((ev.t, ev.i, ev.j) for ev in grid.meets if ev.slow)
    clusters = []
    for t_star, i, j in slow:
        if clusters and t_star - clusters[-1][-1][0] <= 1.5 * h_med:
            clusters[-1].append((t_star, i, j))
        else:
            clusters.append([(t_star, i, j)])
    updates = []
    for group in clusters:
        t_mid = float(np.median([g[0] for g in group]))
        s = int(np.searchsorted(ts_arr, t_mid, side="right"))
        if not 0 < s < m:
            continue
        # ranks meeting at one point squeeze everything between them,
        # so overlapping pair intervals merge into one cluster
        ivals = sorted((min((i, j)), max((i, j))) for _, i, j in group)
        merged = [list(ivals[0])]
        for lo, hi in ivals[1:]:
            if lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        u = {}
        for lo, hi in merged:
            u.update(_continuation(grid, s, list(range(lo, hi + 1)), notes))
        updates.append((s, u))
    arrangement = []
    sig = tuple(range(n))
    ptr = 0
    for k in range(m):
        while ptr < len(updates) and updates[ptr][0] <= k:
            u = updates[ptr][1]
            sig = tuple(u.get(r, r) for r in sig)
            ptr += 1
        arrangement.append(sig)
    out = replace(grid, arrangement=tuple(arrangement))
    # slope-jump diagnostic at each slow meet
    for (i, j), t_stars in slow_by_pair.items():
        for t_star in t_stars:
            k = max(1, min(m - 2,
                           int(np.searchsorted(np.asarray(grid.ts), t_star))))
            for idx in range(n):
                xs = out.curve(idx)
                d_minus = ((xs[k] - xs[k - 1])
                           / (grid.ts[k] - grid.ts[k - 1]))
                d_plus = ((xs[k + 1] - xs[k])
                          / (grid.ts[k + 1] - grid.ts[k]))
                jump = abs(d_plus - d_minus)
                notes.append({"kind": "slope-jump", "curve": idx + 1,
                              "i": i + 1, "j": j + 1, "t": t_star,
                              "jump": jump})
    return replace(out, diagnostics=tuple(notes))


# -- scalar square-root tracking -------------------------------------------

def _second_differences(ts, fs) -> list:
    """Three-point second-derivative estimates (nonuniform safe)."""
    m = len(ts)
    out = [0.0] * m
    for k in range(1, m - 1):
        h1 = ts[k] - ts[k - 1]
        h2 = ts[k + 1] - ts[k]
        out[k] = 2 * (fs[k - 1] / (h1 * (h1 + h2))
                      - fs[k] / (h1 * h2)
                      + fs[k + 1] / (h2 * (h1 + h2)))
    if m > 2:
        out[0] = out[1]
        out[-1] = out[-2]
    return out


def c1_sqrt_track(f_samples: Sequence, f2: Sequence | None = None,
                  zero_rtol: float = 1e-5, curv_rtol: float = 0.01,
                  neg_tol: float = 1e-12, zero_window: int = 25) -> list:
    """Signed square root along a grid: x_k^2 = f_k, with the sign
    toggled exactly at zeros of f whose (estimated) second derivative is
    positive; zeros with f'' ~ 0 keep the sign.

    A sample counts as a zero relative to the local scale (the largest
    sqrt(f) within zero_window samples), so grids that span several
    decades still resolve their small-scale zeros.  f2: optional
    second-derivative estimates; central differences of the samples
    otherwise.  "Positive" means above curv_rtol times the largest
    curvature on the grid: a quartic-or-flatter zero produces a second
    difference of order h^2 that must not count.  Raises NegativeValue
    on f < 0 beyond rounding.
    """
    ts = [float(t) for t, _ in f_samples]
    fs = [float(v) for _, v in f_samples]
    scale = max(max((abs(v) for v in fs), default=0.0), 1e-300)
    if min(fs) < -neg_tol * scale:
        raise NegativeValue(f"f({ts[fs.index(min(fs))]}) = {min(fs):.3g} < 0")
    fs = [max(v, 0.0) for v in fs]
    if f2 is None:
        f2 = _second_differences(ts, fs)
    curv_tol = curv_rtol * max(max((abs(v) for v in f2), default=0.0), 1e-300)
    ys = [math.sqrt(v) for v in fs]
    zero = []
    for k, y in enumerate(ys):
        local = max(ys[max(0, k - zero_window):k + zero_window + 1])
        zero.append(y <= zero_rtol * local)
    sign = 1
    out = []
    k = 0
    m = len(ts)
    while k < m:
        if not zero[k]:
            out.append(sign * ys[k])
            k += 1
            continue
        run_start = k
        while k < m and zero[k]:
            k += 1
        run = range(run_start, k)
        k_min = min(run, key=lambda q: ys[q])
        toggle = f2[k_min] > curv_tol
        for q in run:
            # inside the zero run the value is ~0; sign flips at the minimum
            if toggle and q >= k_min:
                out.append(-sign * ys[q])
            else:
                out.append(sign * ys[q])
        if toggle:
            sign = -sign
    return out


def sqrt_bound_audit(f_samples: Sequence, t0: float,
                     f2: Sequence | None = None,
                     floor: float = 1e-300) -> float:
    """Worst ratio f'(t)^2 / (2 f(t) max f'') over the grid, where the
    max runs over the stretched window from t0 to t0 + 2(t - t0).

    A C^2 function f >= 0 with f(t0) = 0 keeps this ratio <= 1; callers
    assert `<= 1 + tol` as a validity audit.  Samples with f = 0
    contribute 0 (there f' = 0 as well).
    """
    ts = [float(t) for t, _ in f_samples]
    fs = [float(v) for _, v in f_samples]
    if f2 is None:
        f2 = _second_differences(ts, fs)
    d1 = [0.0] * len(ts)
    for k in range(1, len(ts) - 1):
        d1[k] = (fs[k + 1] - fs[k - 1]) / (ts[k + 1] - ts[k - 1])
    worst = 0.0
    for k in range(1, len(ts) - 1):
        if fs[k] <= floor:
            continue
        lo, hi = sorted((t0, t0 + 2 * (ts[k] - t0)))
        window = [f2[q] for q in range(len(ts)) if lo <= ts[q] <= hi]
        window.append(f2[k])
        big = max(window)
        if big <= 0:
            continue
        worst = max(worst, d1[k] ** 2 / (2 * fs[k] * big))
    return worst


def meets_json(grid: RootGrid) -> str:
    """Sidecar JSON for the meet events of a grid."""
    return json.dumps({"schema": 1,
                       "meets": [m.to_json() for m in grid.meets],
                       "diagnostics": [dict(d) for d in grid.diagnostics]},
                      indent=2, sort_keys=True) + "\n"
