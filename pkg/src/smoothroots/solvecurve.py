"""Resolving a monic family into root branches.

The recursion has three moves.  If the base roots form two or more
clusters, the family splits into coprime factors and each factor is
solved on its own.  If they form a single cluster, the family is
recentered so the branch mean is zero, and the vanishing orders of the
recentered coefficients determine an integer weight r: substituting
x -> t^r x and dividing out t^(kr) from the k-th coefficient produces a
strictly simpler family whose roots, multiplied back by t^r, are the
original branches.  Degree one is immediate.

Recentering reads the mean off a_1 exactly; deflation consumes n*r
stored orders (TruncationExhausted guards the budget).  In real mode an
odd vanishing order of a_2, or a failed deflation, certifies the family
was not real-rooted (RealityViolated).  Coefficients that vanish to the
full stored order stop the recursion honestly: identically-zero exact
curves yield zero branches, anything else becomes a "flat" leaf.  In
complex mode a family that admits no positive weight is reported as an
"unsolvable" leaf rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    InputError,
    MultiplicityTooLow,
    NotARoot,
    RealityViolated,
    TruncationExhausted,
)
from .factor import (
    PolyCurve,
    cluster_points,
    cluster_roots,
    hensel_split,
    yun_square_free,
)
from .jet import ComplexJet, Jet, Multiplicity
from .symmetric import (
    Certificate,
    PolyCoeffs,
    certify_real_rooted,
    hankel_generic,
    leading_minors_generic,
    newton_sums_generic,
)

DEFAULT_ZERO_TOL = 1e-9
DEFAULT_SAMPLES = (0.1, -0.1, 0.01, -0.01, 0.001, -0.001)


def _ring_zero(curve: PolyCurve, order: int):
    if curve.complex_ring:
        return ComplexJet.zero(order)
    return Jet.zero(order)


def _jet_provably_zero(x) -> bool:
    """Identically zero by construction (the exact-zero flag), not merely
    zero in every stored coefficient: a truncated t^(N+1) looks the same."""
    if isinstance(x, ComplexJet):
        return x.re.exact_zero and x.im.exact_zero
    return x.exact_zero


def _jet_stored_zero(x) -> bool:
    if isinstance(x, ComplexJet):
        return _jet_stored_zero(x.re) and _jet_stored_zero(x.im)
    return x.exact_zero or (x.is_exact and all(c == 0 for c in x.coeffs))


def _jet_small(x, tol: float) -> bool:
    if isinstance(x, ComplexJet):
        return _jet_small(x.re, tol) and _jet_small(x.im, tol)
    if x.is_exact:
        return all(c == 0 for c in x.coeffs)
    return all(abs(complex(c)) <= tol for c in x.coeffs)


def _curve_scale(curve: PolyCurve) -> float:
    m = 1.0
    for x in curve.a:
        jets = (x.re, x.im) if isinstance(x, ComplexJet) else (x,)
        for j in jets:
            for c in j.coeffs:
                m = max(m, abs(complex(c)))
    return m


# -- recenter ---------------------------------------------------------------


def reduce_center(curve: PolyCurve, zero_tol: float = DEFAULT_ZERO_TOL):
    """Shift x by the branch mean a_1/n so the new a_1 vanishes.

    Returns (centered_curve, shift).  The computed a_1 of the result is
    asserted zero and replaced by an exact zero jet, which preserves the
    order bookkeeping downstream.
    """
    n = curve.degree
    shift = curve.a[0].scale(Fraction(1, n))
    centered = curve.shift_x(shift)
    a1 = centered.a[0]
    if not _jet_small(a1, zero_tol * _curve_scale(curve)):
        raise InputError("recentering failed to cancel a_1; "
                         "the family is numerically inconsistent")
    a = list(centered.a)
    a[0] = _ring_zero(centered, centered.order)
    return PolyCurve(a), shift


# -- weights ----------------------------------------------------------------


@dataclass(frozen=True)
class WeightDecision:
    kind: str          # "weight" | "zero_roots" | "flat" | "unsolvable"
    weight: int = 0
    note: str = ""


def multiplicity_weight(curve: PolyCurve, mode: str = "real",
                        zero_tol: float = DEFAULT_ZERO_TOL) -> WeightDecision:
    """Decide the deflation weight of a centered single-cluster family.

    Real mode reads the vanishing order 2r of a_2 (odd order or a
    nonzero a_2 with all branches real is impossible, RealityViolated).
    Complex mode takes the largest integer r with ord(a_k) >= k*r for
    every coefficient; r = 0 means no weighted structure exists.
    """
    n = curve.degree
    mults = [x.multiplicity(zero_tol) for x in curve.a]
    if all(not m.is_finite for m in mults):
        if all(_jet_provably_zero(x) for x in curve.a):
            return WeightDecision("zero_roots",
                                  note="all coefficients identically zero")
        return WeightDecision("flat",
                              note="coefficients vanish to stored order")
    if mode == "real":
        m2 = mults[1] if n >= 2 else Multiplicity.finite(0)
        if not m2.is_finite:
            if _jet_provably_zero(curve.a[1]):
                # sum of squared branches is -2*a_2 = 0, so every branch
                # of a real family is zero; but some coefficient is
                # visibly nonzero (the all-flat case returned above)
                raise RealityViolated(
                    "a_2 vanishes identically but another coefficient "
                    "does not; branches cannot all be real")
            return WeightDecision("flat",
                                  note="a_2 vanishes to stored order")
        if m2.value % 2 != 0:
            raise RealityViolated(
                f"a_2 vanishes to odd order {m2.value}; the sum of squared "
                "branches of a real family has even order")
        r = m2.value // 2
        if r == 0:
            raise RealityViolated(
                "a_2 does not vanish at the base point of a single "
                "coincident cluster")
        return WeightDecision("weight", weight=r)
    # complex mode
    r = None
    for k, m in enumerate(mults, start=1):
        if m.is_finite:
            rk = m.value // k
            r = rk if r is None else min(r, rk)
    if r is None or r == 0:
        return WeightDecision(
            "unsolvable",
            note="no positive weight r has ord(a_k) >= k*r for all k")
    return WeightDecision("weight", weight=r)


def deflate_weights(curve: PolyCurve, r: int,
                    zero_tol: float = DEFAULT_ZERO_TOL) -> PolyCurve:
    """Divide t^(kr) out of a_k; the result has order N - n*r."""
    n = curve.degree
    target = curve.order - n * r
    if target < n:
        raise TruncationExhausted(
            f"deflating weight {r} needs {n * r} of {curve.order} stored "
            f"orders and would leave {target} < degree {n}; "
            "increase the jet order")
    a = []
    for k, x in enumerate(curve.a, start=1):
        a.append(x.shift_out(k * r, zero_tol).truncate(target))
    return PolyCurve(a)


def _weight_in(curve: PolyCurve, r: int) -> PolyCurve:
    """Inverse of deflate_weights on curves: a_k gains t^(kr)."""
    return PolyCurve([x.shift_in(k * r)
                      for k, x in enumerate(curve.a, start=1)])


# -- real-rootedness gate ----------------------------------------------------


def check_curve(curve: PolyCurve, tol: float = 1e-7,
                samples: Sequence[float] | None = None):
    """Real-rootedness gate: exact certificate at the base point plus
    numeric root samples near it.  Raises RealityViolated on failure.

    Returns the base-point Certificate for exact families and None for
    numeric ones (whose base test is the sampled root check at t = 0).
    """
    if curve.complex_ring:
        raise InputError("real-rootedness applies to real families")
    if samples is None:
        samples = DEFAULT_SAMPLES
    cert = None
    if curve.is_exact:
        p = PolyCoeffs(tuple(x.constant_term() for x in curve.a))
        cert = certify_real_rooted(p)
        if not cert.all_real:
            raise RealityViolated(
                "base polynomial has a nonreal root (indefinite form: "
                f"rank {cert.rank}, signature {cert.signature})")
        sample_ts = samples
    else:
        sample_ts = (0.0,) + tuple(samples)
    for tv in sample_ts:
        rts = np.roots([complex(c) for c in curve.at(tv)])
        scale = max(1.0, max(abs(rts))) if len(rts) else 1.0
        worst = max(abs(rts.imag)) if len(rts) else 0.0
        if worst > tol * scale:
            raise RealityViolated(
                f"roots at t = {tv} have imaginary part {worst:.3e}")
    return cert


# -- vanishing orders of the form minors --------------------------------------


@dataclass(frozen=True)
class ConditionReport:
    """Vanishing orders of the Bezoutiant's leading principal minors.

    top_k is the largest k whose minor is nonzero within the stored
    order; a finite top order certifies that the count of distinct
    branches degenerates only to finite order, which is the smooth
    selection condition for the branches.
    """

    orders: tuple
    top_k: int | None
    top_order: Multiplicity | None

    @property
    def finite(self) -> bool:
        return self.top_order is not None and self.top_order.is_finite

    def to_json(self) -> dict:
        return {
            "orders": [
                {"finite": m.is_finite,
                 "value": m.value if m.is_finite else None,
                 "flat_to": None if m.is_finite else m.value}
                for m in self.orders
            ],
            "top_k": self.top_k,
            "finite": self.finite,
        }


def minor_orders(curve: PolyCurve,
                 zero_tol: float = DEFAULT_ZERO_TOL) -> ConditionReport:
    """Vanishing orders of the form minors along the family."""
    if curve.complex_ring:
        raise InputError("the real-rootedness form needs a real family")
    n = curve.degree
    N = curve.order

    def from_int(i):
        return Jet.const(i, N)

    s = newton_sums_generic(curve.a, max(2 * n - 2, 0), from_int)
    B = hankel_generic(s, n)
    minors = leading_minors_generic(B, from_int)
    orders = tuple(m.multiplicity(zero_tol) for m in minors)
    top_k = None
    top_order = None
    for k in range(n, 0, -1):
        if orders[k - 1].is_finite:
            top_k = k
            top_order = orders[k - 1]
            break
    return ConditionReport(orders=orders, top_k=top_k, top_order=top_order)


# -- the solve tree ----------------------------------------------------------


@dataclass(frozen=True)
class FactorNode:
    """One step of the resolution tree, in its local frame."""

    kind: str                      # smooth | flat | unsolvable |
    #                                split | recenter | deflate
    curve: PolyCurve
    children: tuple = ()
    shift: object = None
    weight: int | None = None
    partition: tuple | None = None
    roots: tuple = ()
    note: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "degree": self.curve.degree,
               "order": self.curve.order}
        if self.kind in ("smooth", "flat", "unsolvable"):
            out["curve"] = self.curve.to_json()
        if self.shift is not None:
            out["shift"] = self.shift.to_json()
        if self.weight is not None:
            out["weight"] = self.weight
        if self.partition is not None:
            out["partition"] = list(self.partition)
        if self.roots:
            out["roots"] = [r.to_json() for r in self.roots]
        if self.note:
            out["note"] = self.note
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class LeafRecord:
    """A terminal factor mapped back to the original frame."""

    kind: str                      # smooth | flat | unsolvable
    curve: PolyCurve               # original-frame factor
    roots: tuple                   # original-frame root jets (smooth only)
    note: str = ""
    path: tuple = ()               # outermost step first

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "curve": self.curve.to_json(),
            "roots": [r.to_json() for r in self.roots],
            "note": self.note,
            "path": list(self.path),
        }


@dataclass
class SolveReport:
    """Everything the resolution produced."""

    curve: PolyCurve
    mode: str
    tree: FactorNode
    leaves: list
    roots: tuple
    solvable: bool
    certificate: Certificate | None = None

    def reconstruct(self) -> PolyCurve:
        """Product of the mapped-back leaf factors; equals the input up
        to the surviving jet order."""
        prod = None
        for leaf in self.leaves:
            prod = leaf.curve if prod is None else prod.mul(leaf.curve)
        return prod

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "mode": self.mode,
            "degree": self.curve.degree,
            "order": self.curve.order,
            "solvable": self.solvable,
            "roots": [r.to_json() for r in self.roots],
            "certificate": (self.certificate.to_json()
                            if self.certificate else None),
            "leaves": [leaf.to_json() for leaf in self.leaves],
            "tree": self.tree.to_json(),
        }


@dataclass(frozen=True)
class _Options:
    mode: str
    tol: float
    zero_tol: float
    dps: int
    cluster_reverse: bool


def _clusters_exact(curve: PolyCurve, tol: float):
    """Clusters of an exact family via square-free multiplicities.

    Each square-free factor has simple, well-conditioned roots, and the
    factor's multiplicity is exact, so repeated branches do not scatter
    the way repeated roots of the full base polynomial would.
    """
    base = curve.plain_at_zero()
    if any(isinstance(c, complex) for c in base):
        return cluster_roots(curve, tol)
    pts = []
    for fac, mult in yun_square_free(base):
        for r in np.roots([float(c) for c in fac]):
            pts.extend([complex(r)] * mult)
    return cluster_points(pts, tol)


def _map_tree(node: FactorNode, curve_map, root_map) -> FactorNode:
    """Rewrite a subtree into an enclosing frame (weight-in or recenter),
    so every node's recorded curve ends up in original coordinates."""
    return replace(
        node,
        curve=None if node.curve is None else curve_map(node.curve),
        children=tuple(_map_tree(c, curve_map, root_map)
                       for c in node.children),
        roots=tuple(root_map(x) for x in node.roots),
        shift=None if node.shift is None else root_map(node.shift),
    )


def _solve_rec(curve: PolyCurve, opts: _Options, depth: int):
    n = curve.degree
    if n == 1:
        root = curve.a[0]
        node = FactorNode(kind="smooth", curve=curve, roots=(root,))
        return node, [LeafRecord("smooth", curve, (root,))]
    if curve.is_exact:
        clusters = _clusters_exact(curve, opts.tol)
    else:
        clusters = cluster_roots(curve, opts.tol)
    if len(clusters) >= 2:
        pair = hensel_split(curve, clusters, tol=opts.tol, dps=opts.dps,
                            reverse=opts.cluster_reverse)
        node1, lv1 = _solve_rec(pair.first, opts, depth + 1)
        node2, lv2 = _solve_rec(pair.second, opts, depth + 1)
        node = FactorNode(kind="split", curve=curve,
                          children=(node1, node2),
                          partition=(pair.first.degree, pair.second.degree))
        leaves = []
        for i, lv in enumerate((lv1, lv2)):
            for leaf in lv:
                leaf.path = (f"split[{i}]",) + leaf.path
                leaves.append(leaf)
        return node, leaves
    # single coincident cluster: recenter, then deflate by the weight
    centered, shift = reduce_center(curve, opts.zero_tol)
    trivial_shift = _jet_stored_zero(shift)
    decision = multiplicity_weight(centered, opts.mode, opts.zero_tol)
    if decision.kind == "zero_roots":
        zero = _ring_zero(centered, centered.order)
        roots = (zero,) * n
        inner = FactorNode(kind="smooth", curve=centered, roots=roots,
                           note=decision.note)
        leaves = [LeafRecord("smooth", centered, roots, decision.note)]
    elif decision.kind == "flat":
        inner = FactorNode(kind="flat", curve=centered, note=decision.note)
        leaves = [LeafRecord("flat", centered, (), decision.note)]
    elif decision.kind == "unsolvable":
        inner = FactorNode(kind="unsolvable", curve=centered,
                           note=decision.note)
        leaves = [LeafRecord("unsolvable", centered, (), decision.note)]
    else:
        r = decision.weight
        try:
            deflated = deflate_weights(centered, r, opts.zero_tol)
        except MultiplicityTooLow as e:
            if opts.mode == "real":
                raise RealityViolated(
                    f"coefficient order violates the real weight bound: {e}"
                ) from e
            raise
        child, leaves = _solve_rec(deflated, opts, depth + 1)
        for leaf in leaves:
            leaf.curve = _weight_in(leaf.curve, r)
            leaf.roots = tuple(x.shift_in(r) for x in leaf.roots)
            leaf.path = (f"deflate[r={r}]",) + leaf.path
        child = _map_tree(child, lambda c: _weight_in(c, r),
                          lambda x: x.shift_in(r))
        inner = FactorNode(kind="deflate", curve=centered,
                           children=(child,), weight=r)
    if trivial_shift:
        return inner, leaves
    neg_shift = -shift
    for leaf in leaves:
        leaf.curve = leaf.curve.shift_x(neg_shift)
        leaf.roots = tuple(x + shift for x in leaf.roots)
        leaf.path = ("recenter",) + leaf.path
    inner = _map_tree(inner, lambda c: c.shift_x(neg_shift),
                      lambda x: x + shift)
    node = FactorNode(kind="recenter", curve=curve, children=(inner,),
                      shift=shift)
    return node, leaves


def solve(curve: PolyCurve, mode: str = "real", *, check: bool = True,
          tol: float = 1e-6, zero_tol: float = DEFAULT_ZERO_TOL,
          dps: int = 64, cluster_reverse: bool = False,
          samples: Sequence[float] | None = None) -> SolveReport:
    """Resolve the family into root branches.

    mode "real" certifies real-rootedness first (unless check=False) and
    enforces the even-order weight rule; mode "complex" solves branches
    over the complex numbers and reports weightless factors as
    unsolvable leaves instead of raising.
    """
    if mode not in ("real", "complex"):
        raise InputError(f"unknown mode {mode!r}")
    if mode == "real" and curve.complex_ring:
        raise InputError("real mode needs a real-coefficient family")
    certificate = None
    if mode == "real" and check:
        certificate = check_curve(curve, samples=samples)
    opts = _Options(mode=mode, tol=tol, zero_tol=zero_tol, dps=dps,
                    cluster_reverse=cluster_reverse)
    tree, leaves = _solve_rec(curve, opts, 0)
    roots = tuple(r for leaf in leaves for r in leaf.roots)
    solvable = sum(len(leaf.roots) for leaf in leaves) == curve.degree
    return SolveReport(curve=curve, mode=mode, tree=tree, leaves=leaves,
                       roots=roots, solvable=solvable,
                       certificate=certificate)


def verify_roots(curve: PolyCurve, roots: Sequence,
                 tol: float = 1e-8) -> None:
    """Check that each root jet satisfies the family to its stored order."""
    for i, root in enumerate(roots):
        res = curve.eval_jet(root)
        if isinstance(res, ComplexJet):
            ok = _jet_small(res.re, tol * _res_scale(res.re)) and \
                _jet_small(res.im, tol * _res_scale(res.im))
        else:
            ok = _jet_small(res, tol * _res_scale(res))
        if not ok:
            raise NotARoot(f"branch {i} leaves residual {res!r}")


def _res_scale(res: Jet) -> float:
    if res.is_exact:
        return 1.0
    return res._scale()
