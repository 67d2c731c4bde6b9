"""Smooth eigenvalue and eigenvector jets for hermitian matrix families.

A hermitian family A(t) with jet entries has a real characteristic root
system, so the resolution machinery of `solvecurve` applies and yields
eigenvalue jets.  Eigenvector frames are harder: a naive per-order choice
jumps between eigenspaces.  The construction here lifts a kernel basis
order by order with the pivot choices frozen at order zero, which is what
keeps the frame on one smooth branch.  When every eigenvalue agrees at
t = 0 the matrix is scalar there, so the mean is subtracted and one power
of t stripped from the remainder before recursing; each strip costs one
jet order and buys separation at the base point.

Sampled families (no jet available, or transcendental entries) go through
`eigen_track_grid`: per-sample hermitian eigendecomposition, the C^1
arrangement from `track`, and frame chaining by maximal overlap, with
diagnostics for the two classic failure modes: frames that rotate without
bound near a point, and arranged eigenvalue curves whose second difference
quotients blow up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import (FlatRecursion, HermitianViolation, InputError,
                     NonHermitianSample, RankDrop)
from .factor import PolyCurve, QQi
from .jet import DEFAULT_ORDER, ComplexJet, Jet, jet_recip, jet_sqrt
from .solvecurve import SolveReport, solve
from .track import (MEET_TOL, ORDER_CEILING, RootGrid,
                    differentiable_arrangement)

FLAT_MEET_SUSPECT = "flat-meet-suspect"
CONTINUITY_OBSTRUCTION = "continuity-obstruction"

#: relative asymmetry above which a numeric sample is rejected
HERMITIAN_TOL = 1e-12


def _as_complex_jet(x, order: int | None) -> ComplexJet:
    if isinstance(x, ComplexJet):
        return x
    if isinstance(x, Jet):
        return ComplexJet.from_jet(x)
    n = DEFAULT_ORDER if order is None else order
    if isinstance(x, complex):
        return ComplexJet.const(x.real, x.imag, order=n)
    return ComplexJet.const(x, 0, order=n)


# -- hermitian matrix curves -------------------------------------------------


class HermitianCurve:
    """Square matrix family with complex jet entries, hermitian exactly.

    The symmetry entries[i][j] == conj(entries[j][i]) is checked on the
    stored coefficients at construction and never trusted from input; the
    whole eigenvector theory is false without it, and the failure is not
    graceful.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence, order: int | None = None):
        rows = [list(r) for r in entries]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InputError("matrix family must be square and nonempty")
        rows = [[_as_complex_jet(x, order) for x in r] for r in rows]
        m = min(x.order for r in rows for x in r)
        if order is not None:
            m = min(m, order)
        rows = [[x.truncate(m) for x in r] for r in rows]
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != rows[j][i].conj():
                    raise HermitianViolation(
                        f"entry ({i},{j}) is not the conjugate of "
                        f"({j},{i}) at order {m}")
        object.__setattr__(self, "entries",
                           tuple(tuple(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("HermitianCurve is immutable")

    def __eq__(self, other):
        return (isinstance(other, HermitianCurve)
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"HermitianCurve(n={self.n}, order={self.order})"

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        return self.entries[0][0].order

    @property
    def is_exact(self) -> bool:
        return all(x.is_exact for r in self.entries for x in r)

    def coeff_scale(self) -> float:
        """max(1, largest |coefficient|), the scale for residual bounds."""
        m = 1.0
        for r in self.entries:
            for x in r:
                for c in x.re.coeffs + x.im.coeffs:
                    m = max(m, abs(float(c)))
        return m

    def at(self, t: float) -> np.ndarray:
        """Evaluate entry jets at t (numpy complex matrix)."""
        return np.array([[x.eval_complex(t) for x in r]
                         for r in self.entries])

    def truncate(self, order: int) -> "HermitianCurve":
        if order >= self.order:
            return self
        return HermitianCurve(
            [[x.truncate(order) for x in r] for r in self.entries])

    def to_json(self) -> dict:
        return {"n": self.n, "order": self.order,
                "entries": [[x.to_json() for x in r]
                            for r in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "HermitianCurve":
        try:
            rows = [[ComplexJet.from_json(x) for x in r]
                    for r in obj["entries"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad matrix-curve object: {exc}") from exc
        return cls(rows, order=obj.get("order"))


def _matrix_of(A) -> "HermitianCurve":
    return A if isinstance(A, HermitianCurve) else HermitianCurve(A)


# -- characteristic polynomial ------------------------------------------------


def char_poly_curve(A) -> PolyCurve:
    """Characteristic polynomial of a hermitian family, as a PolyCurve.

    Uses the trace recursion M_1 = A, c_k = tr(M_k)/k,
    M_{k+1} = A (M_k - c_k I); then a_k = (-1)^(k-1) c_k matches the
    monic sign convention of PolyCurve.  Hermitian symmetry makes every
    c_k real; with exact coefficient arithmetic the imaginary parts
    vanish identically, and a nonzero one means the input was not
    hermitian after all.

    Accepts a HermitianCurve or raw nested entries (which are validated).
    """
    A = _matrix_of(A)
    n, order = A.n, A.order
    M = [list(r) for r in A.entries]
    a = []
    for k in range(1, n + 1):
        tr = M[0][0]
        for i in range(1, n):
            tr = tr + M[i][i]
        c = tr.scale(Fraction(1, k))
        if not c.im.is_zero_to_order():
            raise HermitianViolation(
                f"characteristic coefficient {k} has a nonzero "
                "imaginary part")
        a.append(c.re if k % 2 == 1 else -c.re)
        if k < n:
            # M <- A (M - c I)
            for i in range(n):
                M[i][i] = M[i][i] - c
            M = [[_dot_row_col(A.entries[i], M, j, n)
                  for j in range(n)] for i in range(n)]
    return PolyCurve(a)


def _dot_row_col(row, M, j, n):
    s = row[0] * M[0][j]
    for k in range(1, n):
        s = s + row[k] * M[k][j]
    return s


# -- eigenvalue jets ----------------------------------------------------------


@dataclass(frozen=True)
class EigenValues:
    """Eigenvalue jets with their generic-multiplicity group structure.

    values[i] are real jets; groups partition range(n) so that two indices
    share a group iff their jets agree to the full order; flat lists the
    group indices where the resolution hit an all-roots-flat factor, so
    the jets there are only the group mean and carry no branch detail.
    """

    values: tuple
    groups: tuple
    flat: tuple
    report: SolveReport

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def flags(self) -> tuple:
        return tuple(FLAT_MEET_SUSPECT if g in self.flat else ""
                     for g in range(len(self.groups)))

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "values": [v.to_json() for v in self.values],
            "groups": [list(g) for g in self.groups],
            "flags": list(self.flags),
        }


def smooth_eigenvalues(A, *, group_tol: float = 1e-9) -> EigenValues:
    """Eigenvalue jets of a hermitian family, grouped by generic multiplicity.

    Delegates to the real-mode resolution of the characteristic
    polynomial; hermitian symmetry guarantees real-rootedness
    structurally, so the numeric certificate is skipped.  Factors whose
    roots all meet flatly cannot be separated at this order: each
    contributes its mean root jet, repeated, in a group flagged
    FLAT_MEET_SUSPECT.
    """
    A = _matrix_of(A)
    rep = solve(char_poly_curve(A), mode="real", check=False)
    jets = []
    for leaf in rep.leaves:
        if leaf.kind == "smooth":
            jets.extend((r, False) for r in leaf.roots)
        elif leaf.kind == "flat":
            m = leaf.curve.degree
            mean = leaf.curve.a[0].scale(Fraction(1, m))
            jets.extend((mean, True) for _ in range(m))
        else:
            raise InputError(
                f"unexpected {leaf.kind} factor for a hermitian family")
    # group indices whose jets agree to the full order
    used = [False] * len(jets)
    raw_groups = []
    for i, (v, _) in enumerate(jets):
        if used[i]:
            continue
        grp = [i]
        used[i] = True
        for j in range(i + 1, len(jets)):
            if not used[j] and (v - jets[j][0]).is_zero_to_order(group_tol):
                grp.append(j)
                used[j] = True
        raw_groups.append(grp)
    raw_groups.sort(key=lambda g: tuple(map(float, jets[g[0]][0].coeffs)))
    values, groups, flat = [], [], []
    for g in raw_groups:
        idx = tuple(range(len(values), len(values) + len(g)))
        groups.append(idx)
        if any(jets[i][1] for i in g):
            flat.append(len(groups) - 1)
        values.extend(jets[i][0] for i in g)
    return EigenValues(values=tuple(values), groups=tuple(groups),
                       flat=tuple(flat), report=rep)


# -- kernel elimination with frozen pivots ------------------------------------


def _qnorm(q: QQi) -> float:
    return float(q.re * q.re + q.im * q.im)


class _FrozenElimination:
    """Gauss-Jordan reduction of the order-zero matrix, pivots recorded.

    Solving the same matrix against the higher-order right-hand sides with
    the recorded pivots (free coordinates pinned to zero) is what keeps the
    lifted kernel basis on a single smooth branch.  Exact entries pivot on
    the first nonzero; numeric entries on the largest magnitude above a
    relative floor.
    """

    def __init__(self, b0: list, exact: bool, ztol: float):
        n = len(b0)
        scale = max([1e-300] + [_qnorm(x) for row in b0 for x in row])
        floor = ztol * ztol * scale
        aug = [list(row) + [QQi(1 if j == i else 0) for j in range(n)]
               for i, row in enumerate(b0)]
        self.n = n
        self.pivots = []                      # (column, row) in choice order
        free_rows = list(range(n))
        for col in range(n):
            pick = None
            if exact:
                for r in free_rows:
                    if aug[r][col]:
                        pick = r
                        break
            else:
                best = floor
                for r in free_rows:
                    v = _qnorm(aug[r][col])
                    if v > best:
                        best, pick = v, r
            if pick is None:
                continue
            free_rows.remove(pick)
            d = aug[pick][col]
            aug[pick] = [x / d for x in aug[pick]]
            for r in range(n):
                if r != pick and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[pick])]
            self.pivots.append((col, pick))
        self.rref = [row[:n] for row in aug]
        self.transform = [row[n:] for row in aug]
        self.zero_rows = free_rows
        self.free_cols = [c for c in range(n)
                          if c not in {col for col, _ in self.pivots}]
        self.exact = exact
        self.ztol = ztol

    def kernel_basis(self) -> list:
        """One vector per free column: that coordinate 1, pivots adjusted."""
        basis = []
        for f in self.free_cols:
            v = [QQi(0)] * self.n
            v[f] = QQi(1)
            for col, row in self.pivots:
                v[col] = -self.rref[row][f]
            basis.append(v)
        return basis

    def solve(self, rhs: list, order: int) -> list:
        """Particular solution of B0 x = rhs, free coordinates zero.

        Raises RankDrop when rhs leaves the column space: the kernel grew
        at a higher order, so the requested grouping was wrong.
        """
        y = []
        for row in self.transform:
            s = QQi(0)
            for a, b in zip(row, rhs):
                if b:
                    s = s + a * b
            y.append(s)
        scale = max([1.0] + [_qnorm(b) for b in rhs])
        for r in self.zero_rows:
            bad = bool(y[r]) if self.exact else \
                _qnorm(y[r]) > self.ztol * self.ztol * scale
            if bad:
                raise RankDrop(
                    f"kernel lift inconsistent at order {order}: "
                    "eigenvalue grouping does not match the matrix")
        x = [QQi(0)] * self.n
        for col, row in self.pivots:
            x[col] = y[row]
        return x


def _jet_coeff_matrix(B: list, order: int) -> list:
    """B as a list (by jet order) of QQi coefficient matrices."""
    n = len(B)
    return [[[QQi(B[i][j].re.coeffs[k], B[i][j].im.coeffs[k])
              for j in range(n)] for i in range(n)]
            for k in range(order + 1)]


def _kernel_lift(B: list, m: int, *, ztol: float = 1e-9) -> list:
    """Orthonormal-ready kernel basis of a jet matrix, lifted to full order.

    B must have rank n - m at order zero (RankDrop otherwise); the basis
    is lifted so B v = 0 holds to the order of B's entries.
    """
    n = len(B)
    order = min(x.order for row in B for x in row)
    exact = all(x.is_exact for row in B for x in row)
    mats = _jet_coeff_matrix(B, order)
    elim = _FrozenElimination(mats[0], exact, ztol)
    if len(elim.free_cols) != m:
        raise RankDrop(
            f"kernel at order 0 has dimension {len(elim.free_cols)}, "
            f"expected {m}")
    vectors = []
    for v0 in elim.kernel_basis():
        coeffs = [v0]
        for p in range(1, order + 1):
            rhs = [QQi(0)] * n
            for k in range(1, p + 1):
                mk, vk = mats[k], coeffs[p - k]
                for i in range(n):
                    s = rhs[i]
                    for j in range(n):
                        if vk[j]:
                            s = s + mk[i][j] * vk[j]
                    rhs[i] = s
            coeffs.append(elim.solve([-x for x in rhs], p))
        vectors.append(tuple(
            ComplexJet(Jet([coeffs[p][j].re for p in range(order + 1)]),
                       Jet([coeffs[p][j].im for p in range(order + 1)]))
            for j in range(n)))
    return vectors


# -- frames -------------------------------------------------------------------


def _inner(u: tuple, v: tuple) -> ComplexJet:
    """Hermitian inner product, conjugate-linear in the first slot."""
    s = u[0].conj() * v[0]
    for a, b in zip(u[1:], v[1:]):
        s = s + a.conj() * b
    return s


def _norm_sq(u: tuple) -> Jet:
    s = u[0].norm_sq()
    for a in u[1:]:
        s = s + a.norm_sq()
    return s


def _gram_schmidt(vectors: list) -> list:
    """Orthonormalize over jets; square roots may leave exactness behind."""
    out = []
    for v in vectors:
        w = list(v)
        for u in out:
            c = _inner(u, tuple(w))
            w = [wj - uj * c for wj, uj in zip(w, u)]
        inv = ComplexJet.from_jet(jet_recip(jet_sqrt(_norm_sq(tuple(w)))))
        out.append(tuple(wj * inv for wj in w))
    return out


def _minus_diag(M: list, lam: Jet) -> list:
    lamc = ComplexJet.from_jet(lam)
    return [[M[i][j] - lamc if i == j else M[i][j]
             for j in range(len(M))] for i in range(len(M))]


def _mat_apply(M: list, v: tuple) -> tuple:
    return tuple(_dot_row_col(M[i], [[x] for x in v], 0, len(v))
                 for i in range(len(M)))


def _standard_frame(n: int, order: int) -> list:
    return [tuple(ComplexJet.const(1 if j == i else 0, order=order)
                  for j in range(n)) for i in range(n)]


def _constant_terms_equal(lams: list, exact: bool, tol: float) -> bool:
    c0 = lams[0].constant_term()
    if exact:
        return all(v.constant_term() == c0 for v in lams)
    return all(abs(float(v.constant_term() - c0)) <= tol for v in lams)


def _frames_rec(M: list, lams: list, tol: float) -> list:
    """Eigenvector jets of the jet matrix M, aligned with lams.

    Three cases, checked in order: one generic group spanning everything
    means M is scalar to this order and any constant frame works; all
    eigenvalues equal at t = 0 (but not identically) means M(0) is that
    scalar, so subtract the mean and strip one power of t, recursing at
    one order less; otherwise the base-point values split the spectrum
    into clusters whose kernel bundles can be lifted directly, and each
    multi-eigenvalue cluster recurses on the compressed matrix.
    """
    n = len(M)
    order = min(x.order for row in M for x in row)
    if n == 1:
        return [(ComplexJet.const(1, order=order),)]
    if all((v - lams[0]).is_zero_to_order(tol) for v in lams[1:]):
        return _standard_frame(n, order)
    exact = all(v.is_exact for v in lams)
    if _constant_terms_equal(lams, exact, tol):
        if order < 1:
            raise FlatRecursion(
                "eigenvalues still coincide at t=0 with no jet order left")
        mean = lams[0]
        for v in lams[1:]:
            mean = mean + v
        mean = mean.scale(Fraction(1, n))
        su = [[x.shift_out(1, tol) for x in row]
              for row in _minus_diag(M, mean)]
        sl = [(v - mean).shift_out(1, tol) for v in lams]
        return _frames_rec(su, sl, tol)
    # cluster by value at t = 0
    idx = sorted(range(n), key=lambda i: float(lams[i].constant_term()))
    ctol = 0.0 if exact else tol
    clusters = [[idx[0]]]
    for i in idx[1:]:
        prev = clusters[-1][-1]
        gap = float(lams[i].constant_term() - lams[prev].constant_term())
        if abs(gap) <= ctol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    frames = [None] * n
    for cl in clusters:
        B = _minus_diag(M, lams[cl[0]])
        for i in cl[1:]:
            B = _mat_mul_jets(B, _minus_diag(M, lams[i]))
        basis = _gram_schmidt(_kernel_lift(B, len(cl), ztol=tol))
        if len(cl) == 1:
            frames[cl[0]] = basis[0]
            continue
        sub = [[_inner(basis[a], _mat_apply(M, basis[b]))
                for b in range(len(cl))] for a in range(len(cl))]
        sub_frames = _frames_rec(sub, [lams[i] for i in cl], tol)
        for k, i in enumerate(cl):
            comps = []
            for j in range(n):
                s = basis[0][j] * sub_frames[k][0]
                for a in range(1, len(cl)):
                    s = s + basis[a][j] * sub_frames[k][a]
                comps.append(s)
            frames[i] = tuple(comps)
    return frames


def _mat_mul_jets(A: list, B: list) -> list:
    n = len(A)
    return [[_dot_row_col(A[i], B, j, n) for j in range(n)]
            for i in range(n)]


@dataclass(frozen=True)
class EigenReport:
    """Eigenvalue jets plus an orthonormal eigenvector frame per group."""

    curve: HermitianCurve
    values: tuple
    groups: tuple
    flags: tuple
    frames: tuple                  # frames[g][k] = tuple of n ComplexJets
    solve_report: SolveReport

    @property
    def n(self) -> int:
        return len(self.values)

    def frame_of(self, i: int) -> tuple:
        """Frame vector for eigenvalue index i."""
        for g, grp in enumerate(self.groups):
            if i in grp:
                return self.frames[g][grp.index(i)]
        raise InputError(f"no eigenvalue index {i}")

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "order": self.curve.order,
            "values": [v.to_json() for v in self.values],
            "groups": [list(g) for g in self.groups],
            "flags": list(self.flags),
            "frames": [[[c.to_json() for c in vec] for vec in grp]
                       for grp in self.frames],
            "solve": self.solve_report.to_json(),
        }


def eigenbundle_frames(A, eig: EigenValues | None = None, *,
                       tol: float = 1e-9) -> EigenReport:
    """Orthonormal eigenvector jets for every eigenvalue group.

    The frame is built by frozen-pivot kernel lifting (see _frames_rec);
    within each group the vectors are Gram-Schmidt orthonormal, and
    (A - lambda_i) v vanishes to the surviving jet order.  The order
    shrinks by one per mean-stripping step; the stripped powers of t
    multiply back into the residual, so the residual order is not lost.

    Groups flagged FLAT_MEET_SUSPECT have no meaningful branch jets and
    are rejected; consult the flags from smooth_eigenvalues first.
    """
    A = _matrix_of(A)
    if eig is None:
        eig = smooth_eigenvalues(A)
    if eig.flat:
        raise InputError(
            "flat-suspect eigenvalue groups cannot be framed at this order")
    if eig.n != A.n:
        raise InputError(f"{eig.n} eigenvalues for an {A.n}x{A.n} family")
    vecs = _frames_rec([list(r) for r in A.entries], list(eig.values), tol)
    frames = tuple(tuple(vecs[i] for i in grp) for grp in eig.groups)
    return EigenReport(curve=A, values=eig.values, groups=eig.groups,
                       flags=eig.flags, frames=frames,
                       solve_report=eig.report)


# -- sampled grids ------------------------------------------------------------


@dataclass(frozen=True)
class EigenGrid:
    """Sampled eigenvalue curves with arrangement and chained frames.

    grid holds the eigenvalues (ascending per sample) with the meets and
    the differentiable arrangement; frames[k] is the unitary of sample k
    with columns chained for continuity against sample k-1, which is
    independent of the eigenvalue arrangement.
    """

    grid: RootGrid
    frames: tuple                  # frames[k][i][j] complex, column j a vector
    diagnostics: tuple = ()

    @property
    def ts(self) -> tuple:
        return self.grid.ts

    @property
    def n(self) -> int:
        return self.grid.n

    def obstructions(self) -> tuple:
        return tuple(d for d in self.diagnostics
                     if d.get("kind") == CONTINUITY_OBSTRUCTION)

    def to_json(self, frames: bool = True) -> dict:
        out = {"schema": 1, "grid": self.grid.to_json(),
               "diagnostics": list(self.diagnostics)}
        if frames:
            out["frames"] = [[[[z.real, z.imag] for z in row]
                              for row in f] for f in self.frames]
        return out


def _check_hermitian_sample(t: float, M: np.ndarray, htol: float):
    gap = float(np.max(np.abs(M - M.conj().T)))
    scale = max(1.0, float(np.max(np.abs(M))))
    if gap > htol * scale:
        raise NonHermitianSample(
            f"sample at t={t!r} is not hermitian (asymmetry {gap:.3e})")


def _chain_frames(prev: np.ndarray, cur: np.ndarray) -> np.ndarray:
    """Permute and phase the columns of cur to follow prev."""
    overlap = np.abs(prev.conj().T @ cur)
    rows, cols = linear_sum_assignment(-overlap)
    perm = np.empty(len(cols), dtype=int)
    perm[rows] = cols
    cur = cur[:, perm]
    for j in range(cur.shape[1]):
        ph = np.vdot(prev[:, j], cur[:, j])
        if abs(ph) > 1e-300:
            cur[:, j] *= np.conj(ph) / abs(ph)
    return cur


def frame_angle_windows(ts: Sequence, phi: Sequence,
                        threshold: float = math.pi / 2) -> tuple:
    """Continuity-obstruction windows of an unwrapped frame angle.

    Scans the harmonic windows [1/(k+1), 1/k] that contain at least two
    samples and reports those where the total variation of phi exceeds
    the threshold.  The windows shrink toward t = 0, so a persistent flag
    means the frame rotates without bound there; an isolated flag on a
    wide window is just a fast rotation.
    """
    ts = np.asarray(ts, dtype=float)
    phi = np.asarray(phi, dtype=float)
    pos = ts > 0
    if not pos.any():
        return ()
    out = []
    ks = sorted({int(math.floor(1.0 / t)) for t in ts[pos]})
    for k in ks:
        if k < 1:
            continue
        lo, hi = 1.0 / (k + 1), 1.0 / k
        sel = (ts >= lo) & (ts <= hi)
        if sel.sum() < 2:
            continue
        var = float(np.sum(np.abs(np.diff(phi[sel]))))
        if var > threshold:
            out.append({"kind": CONTINUITY_OBSTRUCTION, "k": k,
                        "t_lo": lo, "t_hi": hi, "variation": var})
    return tuple(out)


def _split_runs(ts: np.ndarray) -> list:
    """Index ranges separated by gaps well above the median spacing."""
    if len(ts) < 3:
        return [range(len(ts))]
    gaps = np.diff(ts)
    cut = 8.0 * float(np.median(gaps))
    starts = [0]
    for i, g in enumerate(gaps):
        if g > cut:
            starts.append(i + 1)
    starts.append(len(ts))
    return [range(a, b) for a, b in zip(starts[:-1], starts[1:])]


def _second_diff_peaks(ts: np.ndarray, ys: np.ndarray, runs: list) -> list:
    peaks = []
    for run in runs:
        if len(run) < 3:
            continue
        t, y = ts[list(run)], ys[list(run)]
        h1, h2 = t[1:-1] - t[:-2], t[2:] - t[1:-1]
        d2 = 2.0 * (y[:-2] * h2 - y[1:-1] * (h1 + h2) + y[2:] * h1) \
            / (h1 * h2 * (h1 + h2))
        i = int(np.argmax(np.abs(d2)))
        peaks.append((float(t[i + 1]), float(abs(d2[i]))))
    return peaks


def eigen_track_grid(samples: Sequence, *, htol: float = HERMITIAN_TOL,
                     meet_tol: float = MEET_TOL,
                     ceiling: int = ORDER_CEILING,
                     angle_threshold: float = math.pi / 2) -> EigenGrid:
    """Track the spectrum of sampled hermitian matrices across a grid.

    samples are (t, matrix) pairs with strictly increasing t; each matrix
    is checked hermitian to htol (relative) and eigendecomposed, the
    eigenvalue curves get the differentiable arrangement from `track`,
    and the eigenvector frames are chained sample-to-sample by maximal
    overlap with per-column phase alignment.

    Diagnostics: for real 2x2 families the frame direction is tracked as
    the unwrapped double angle of the first column (a line through the
    origin, not a signed vector, so sign flips are invisible), reported
    under "frame-angle"; harmonic windows where its variation exceeds
    angle_threshold become "continuity-obstruction" entries.  Arranged
    eigenvalue curves get per-run second-difference peaks ("c2-peaks"),
    and monotone growth of the peaks across sample runs is flagged
    "c2-blowup": the arrangement is C^1 but visibly not C^2.
    """
    ts, mats = [], []
    for t, M in samples:
        t = float(t)
        M = np.asarray(M, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise InputError(f"sample at t={t!r} is not a square matrix")
        _check_hermitian_sample(t, M, htol)
        ts.append(t)
        mats.append(M)
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise InputError("sample grid must be strictly increasing")
    vals, vecs = [], []
    for M in mats:
        w, v = np.linalg.eigh(M)
        vals.append(tuple(float(x) for x in w))
        vecs.append(v)
    grid = RootGrid(ts=tuple(ts), roots=tuple(vals), mode="ordered")
    grid = differentiable_arrangement(grid, meet_tol=meet_tol,
                                      ceiling=ceiling)
    frames = [vecs[0]]
    for v in vecs[1:]:
        frames.append(_chain_frames(frames[-1], v))
    diags = []
    n = grid.n
    tarr = np.asarray(ts)
    real_frames = all(np.allclose(f.imag, 0.0, atol=1e-12) for f in frames)
    if n == 2 and real_frames:
        u0 = np.array([f[0, 0].real for f in frames])
        u1 = np.array([f[1, 0].real for f in frames])
        phi = np.unwrap(np.arctan2(2.0 * u0 * u1, u0 * u0 - u1 * u1))
        diags.append({"kind": "frame-angle", "phi": tuple(map(float, phi))})
        diags.extend(frame_angle_windows(tarr, phi, angle_threshold))
    runs = _split_runs(tarr)
    for i in range(n):
        ys = np.asarray(grid.curve(i))
        peaks = _second_diff_peaks(tarr, ys, runs)
        if not peaks:
            continue
        diags.append({"kind": "c2-peaks", "curve": i, "peaks": tuple(peaks)})
        tops = [p for _, p in peaks]
        if (len(tops) >= 3 and tops[-1] >= 4.0 * max(tops[0], 1e-300)
                and all(b >= 0.9 * a for a, b in zip(tops, tops[1:]))):
            diags.append({"kind": "c2-blowup", "curve": i,
                          "first": tops[0], "last": tops[-1]})
    return EigenGrid(grid=grid, frames=tuple(frames),
                     diagnostics=tuple(diags))
