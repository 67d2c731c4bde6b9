"""Command-line front end.

    smoothroots certify --poly "x^3 - 3x + 2"
    smoothroots solve   --poly "x^2 - t^4" --order 32
    smoothroots track   --csv samples.csv --out results/
    smoothroots eigen   --family matrix.json
    smoothroots corpus  ex24 --param n_hi=6 --out corpus/

Every command reads one family (``--poly`` text, a ``--family`` JSON
file, a ``--csv`` sample table, or ``--corpus`` name) and emits reports
to stdout, or to files under ``--out``.  All output is UTF-8; CSV uses
'.' for decimals and ',' as the separator; every JSON document carries
``"schema": 1``.

Exit codes: 0 success (flat-but-solvable counts as success), 1 the
certificate failed (a family is not real-rooted where it must be),
2 an unsolvable factor in complex mode, 3 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import json
import pathlib
import sys
from fractions import Fraction

from .corpus import CORPUS_NAMES, CorpusEntry, build
from .eigencurve import HermitianCurve, eigen_track_grid, eigenbundle_frames, smooth_eigenvalues
from .errors import (
    HermitianViolation,
    InputError,
    NonHermitianSample,
    NotRealRooted,
    RealityViolated,
    UnknownCorpusEntry,
)
from .factor import PolyCurve
from .family import FamilySpec
from .jet import DEFAULT_ORDER, Jet
from .polyparse import poly_coeffs, poly_curve
from .solvecurve import solve
from .symmetric import PolyCoeffs, certify_real_rooted
from .track import differentiable_arrangement, meets_json, ordered_roots


# -- small helpers -------------------------------------------------------------

def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path: pathlib.Path, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _out_dir(args) -> pathlib.Path | None:
    if args.out is None:
        return None
    path = pathlib.Path(args.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _parse_grid(text: str) -> list:
    """'a:b:steps' as steps+1 evenly spaced samples, both ends included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"grid must be 'a:b:steps', got {text!r}")
    try:
        a, b, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise InputError(f"grid must be 'a:b:steps', got {text!r}") from exc
    if steps < 1 or b <= a:
        raise InputError("grid needs b > a and steps >= 1")
    return [a + (b - a) * k / steps for k in range(steps + 1)]


def _coerce(text: str):
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise InputError(f"params take key=value, got {item!r}")
        out[key.replace("-", "_")] = _coerce(val)
    return out


# -- input resolution ----------------------------------------------------------

def _avec_plain(avec) -> list:
    """Signed-elementary row (a_1..a_n) as descending plain coefficients."""
    return [1.0] + [(-1.0) ** k * float(a) for k, a in enumerate(avec, 1)]


def _read_track_csv(path) -> tuple:
    """Rows of t, a_1..a_n; a leading non-numeric header line is skipped."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if rows:
        try:
            float(rows[0][0])
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise InputError(f"{path}: no sample rows")
    ts, coeff_rows = [], []
    for r in rows:
        try:
            nums = [float(c) for c in r]
        except ValueError as exc:
            raise InputError(f"{path}: non-numeric row {r!r}") from exc
        if len(nums) < 2:
            raise InputError(f"{path}: rows need t and a_1..a_n")
        ts.append(nums[0])
        coeff_rows.append(nums[1:])
    if len({len(r) for r in coeff_rows}) != 1:
        raise InputError(f"{path}: rows have mixed coefficient counts")
    return ts, coeff_rows


def _spec_from_args(args) -> FamilySpec:
    if getattr(args, "poly", None) is not None:
        return FamilySpec("poly-jet", {"poly": args.poly})
    if getattr(args, "family", None) is not None:
        return FamilySpec.load(args.family)
    if getattr(args, "csv_path", None) is not None:
        ts, rows = _read_track_csv(args.csv_path)
        return FamilySpec("poly-sampled", {"ts": ts, "coeff_rows": rows})
    if getattr(args, "corpus", None) is not None:
        return FamilySpec(f"corpus:{args.corpus}",
                          options={"params": _parse_params(args.param)})
    raise InputError("no input family given")


def _resolve_corpus(spec: FamilySpec) -> CorpusEntry:
    name = spec.kind.split(":", 1)[1]
    return build(name, **dict(spec.options.get("params", {})))


def _opt(args, spec: FamilySpec, name: str, default=None):
    """Resolve an option: command-line flag beats the family file."""
    val = getattr(args, name, None)
    if val is None:
        val = spec.options.get(name)
    return default if val is None else val


def _grid_ts(args, spec: FamilySpec):
    if getattr(args, "grid", None):
        return _parse_grid(args.grid)
    ts = spec.options.get("grid")
    return list(ts) if ts else None


def _payload_jets(payload: dict, order: int) -> list:
    """Coefficient jets from a poly-jet payload's 'coeffs' list.

    Each entry is ascending t-coefficients (rational strings or
    numbers) or a full jet JSON object; the a-vector convention
    matches PolyCurve (plain coefficient of x^(n-k) is (-1)^k a_k).
    """
    jets = []
    for cell in payload["coeffs"]:
        if isinstance(cell, dict):
            jet = Jet.from_json(cell)
            if jet.order < order:
                if not jet.entire:
                    raise InputError(
                        f"coefficient jet of order {jet.order} cannot "
                        f"reach order {order}")
                jet = jet.extend(order)
            jets.append(jet.truncate(order))
            continue
        cs = [Fraction(c) if isinstance(c, (str, int)) else float(c)
              for c in cell]
        if len(cs) - 1 > order:
            raise InputError(
                f"t-degree {len(cs) - 1} exceeds the truncation order {order}")
        jets.append(Jet.from_poly(cs, order))
    return jets


def _jet_curve(spec: FamilySpec, order: int) -> PolyCurve:
    if "poly" in spec.payload:
        return poly_curve(spec.payload["poly"], order)
    if "coeffs" in spec.payload:
        return PolyCurve(_payload_jets(spec.payload, order))
    raise InputError("poly-jet families need a 'poly' or 'coeffs' payload")


def _matrix_cell(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, dict) and "re" in x:
        return complex(float(x["re"]), float(x.get("im", 0.0)))
    raise InputError(f"matrix entries are numbers, [re, im] pairs, or "
                     f"{{re, im}} objects, got {x!r}")


def _matrix_samples(payload: dict) -> list:
    try:
        ts, mats = payload["ts"], payload["matrices"]
    except KeyError as exc:
        raise InputError(
            "hermitian-sampled families need 'ts' and 'matrices'") from exc
    if len(ts) != len(mats):
        raise InputError(f"{len(ts)} sample times for {len(mats)} matrices")
    return [(float(t), [[_matrix_cell(x) for x in row] for row in m])
            for t, m in zip(ts, mats)]


# -- commands ------------------------------------------------------------------

def cmd_certify(args) -> int:
    spec = _spec_from_args(args)
    if spec.kind != "poly-jet":
        raise InputError("certify takes a poly-jet family")
    if "poly" in spec.payload:
        pc = poly_coeffs(spec.payload["poly"])
    else:
        consts = []
        for jet in _payload_jets(spec.payload, 0):
            consts.append(jet.coeffs[0])
        pc = PolyCoeffs(tuple(consts))
    cert = certify_real_rooted(pc)
    text = _dumps({"schema": 1, "command": "certify", **cert.to_json()})
    out = _out_dir(args)
    if out is not None:
        _write(out / "certificate.json", text)
        print(out / "certificate.json")
    else:
        print(text, end="")
    return 0 if cert.all_real else 1


def cmd_solve(args) -> int:
    spec = _spec_from_args(args)
    if spec.kind != "poly-jet":
        raise InputError("solve takes a poly-jet family")
    order = int(_opt(args, spec, "order", DEFAULT_ORDER))
    mode = _opt(args, spec, "mode", "real")
    tol = float(_opt(args, spec, "tol", 1e-6))
    report = solve(_jet_curve(spec, order), mode=mode, tol=tol)
    text = _dumps(report.to_json())
    out = _out_dir(args)
    if out is not None:
        _write(out / "solve.json", text)
        print(out / "solve.json")
    else:
        print(text, end="")
    return 2 if any(l.kind == "unsolvable" for l in report.leaves) else 0


def _scalar_samples(args, spec: FamilySpec) -> list:
    if spec.kind.startswith("corpus:"):
        spec = _resolve_corpus(spec).family_spec()
    if spec.kind == "poly-jet":
        ts = _grid_ts(args, spec)
        if ts is None:
            raise InputError("tracking a jet family needs --grid a:b:steps")
        order = int(_opt(args, spec, "order", DEFAULT_ORDER))
        curve = _jet_curve(spec, order)
        return [(t, curve.at(t)) for t in ts]
    if spec.kind == "poly-sampled":
        try:
            ts, rows = spec.payload["ts"], spec.payload["coeff_rows"]
        except KeyError as exc:
            raise InputError(
                "poly-sampled families need 'ts' and 'coeff_rows'") from exc
        if len(ts) != len(rows):
            raise InputError(f"{len(ts)} sample times for {len(rows)} rows")
        return [(float(t), _avec_plain(r)) for t, r in zip(ts, rows)]
    raise InputError("matrix families go through the eigen command")


def cmd_track(args) -> int:
    spec = _spec_from_args(args)
    samples = _scalar_samples(args, spec)
    tol = float(_opt(args, spec, "tol", 1e-9))
    grid = differentiable_arrangement(ordered_roots(samples, tol=tol))
    out = _out_dir(args)
    if out is not None:
        _write(out / "track.csv", grid.to_csv())
        _write(out / "meets.json", meets_json(grid))
        print(out / "track.csv")
        print(out / "meets.json")
    elif (args.fmt or "csv") == "csv":
        print(grid.to_csv(), end="")
    else:
        print(_dumps(grid.to_json()), end="")
    return 0


def _flat_report_json(curve: HermitianCurve, eig) -> dict:
    # same shape as EigenReport.to_json, frames withheld
    return {"schema": 1, "n": curve.n, "order": curve.order,
            "values": [v.to_json() for v in eig.values],
            "groups": [list(g) for g in eig.groups],
            "flags": list(eig.flags), "frames": None,
            "solve": eig.report.to_json()}


def cmd_eigen(args) -> int:
    spec = _spec_from_args(args)
    if spec.kind.startswith("corpus:"):
        spec = _resolve_corpus(spec).family_spec()
    out = _out_dir(args)
    fmt = args.fmt or "json"
    tol = float(_opt(args, spec, "tol", 1e-9))

    if spec.kind == "hermitian-jet":
        curve = HermitianCurve.from_json(spec.payload)
        order = _opt(args, spec, "order")
        if order is not None and int(order) < curve.order:
            curve = curve.truncate(int(order))
        eig = smooth_eigenvalues(curve, group_tol=tol)
        if eig.flat:
            doc = _flat_report_json(curve, eig)
        else:
            doc = eigenbundle_frames(curve, eig, tol=tol).to_json()
        ts = _grid_ts(args, spec)
        if ts is None:
            if fmt == "csv":
                raise InputError("csv output needs a sample grid")
            if out is not None:
                _write(out / "eigen.json", _dumps(doc))
                print(out / "eigen.json")
            else:
                print(_dumps(doc), end="")
            return 0
        eg = eigen_track_grid([(t, curve.at(t)) for t in ts])
        if out is not None:
            _write(out / "eigen.json", _dumps(doc))
            _write(out / "eigen_grid.json", _dumps(eg.to_json()))
            _write(out / "eigen.csv", eg.grid.to_csv())
            for name in ("eigen.json", "eigen_grid.json", "eigen.csv"):
                print(out / name)
        elif fmt == "csv":
            print(eg.grid.to_csv(), end="")
        else:
            print(_dumps(doc), end="")
        return 0

    if spec.kind == "hermitian-sampled":
        eg = eigen_track_grid(_matrix_samples(spec.payload))
        if out is not None:
            _write(out / "eigen.json", _dumps(eg.to_json()))
            _write(out / "eigen.csv", eg.grid.to_csv())
            print(out / "eigen.json")
            print(out / "eigen.csv")
        elif fmt == "csv":
            print(eg.grid.to_csv(), end="")
        else:
            print(_dumps(eg.to_json()), end="")
        return 0

    raise InputError("scalar families go through the track command")


def cmd_corpus(args) -> int:
    entry = build(args.name, **_parse_params(args.param))
    out = _out_dir(args) or pathlib.Path(".")
    out.mkdir(parents=True, exist_ok=True)
    fam_path = out / f"{args.name}.family.json"
    refs_path = out / f"{args.name}.refs.json"
    entry.family_spec().save(fam_path)
    _write(refs_path, _dumps(entry.refs_json()))
    print(fam_path)
    print(refs_path)
    return 0


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # bad flags are input errors: exit 3, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _add_common(sp) -> None:
    sp.add_argument("--order", type=int, default=None, metavar="N",
                    help="jet truncation order")
    sp.add_argument("--mode", choices=("real", "complex"), default=None,
                    help="root field for solve")
    sp.add_argument("--tol", type=float, default=None,
                    help="numeric tolerance")
    sp.add_argument("--grid", default=None, metavar="A:B:STEPS",
                    help="sample grid (steps+1 points, ends included)")
    sp.add_argument("--out", default=None, metavar="DIR",
                    help="write reports under DIR instead of stdout")
    sp.add_argument("--format", choices=("json", "csv"), default=None,
                    dest="fmt", help="stdout format where both exist")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="smoothroots",
                description="root and eigenvalue curves of one-parameter "
                            "polynomial families")
    sub = p.add_subparsers(dest="command", required=True, metavar="command",
                           parser_class=_Parser)

    sp = sub.add_parser("certify",
                        help="real-rootedness certificate of one polynomial")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="polynomial in x")
    g.add_argument("--family", metavar="FILE", help="family JSON file")
    _add_common(sp)
    sp.set_defaults(run=cmd_certify)

    sp = sub.add_parser("solve",
                        help="resolve a jet family into root branches")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="polynomial in x and t")
    g.add_argument("--family", metavar="FILE", help="family JSON file")
    _add_common(sp)
    sp.set_defaults(run=cmd_solve)

    sp = sub.add_parser("track",
                        help="order sampled root curves differentiably")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="polynomial in x and t (needs --grid)")
    g.add_argument("--family", metavar="FILE", help="family JSON file")
    g.add_argument("--csv", dest="csv_path", metavar="FILE",
                   help="sample table: rows of t, a_1..a_n")
    g.add_argument("--corpus", metavar="NAME",
                   help=f"corpus generator ({', '.join(CORPUS_NAMES)})")
    sp.add_argument("--param", action="append", metavar="K=V",
                    help="corpus generator parameter (repeatable)")
    _add_common(sp)
    sp.set_defaults(run=cmd_track)

    sp = sub.add_parser("eigen",
                        help="eigenvalue curves of a hermitian family")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--family", metavar="FILE", help="family JSON file")
    g.add_argument("--corpus", metavar="NAME",
                   help=f"corpus generator ({', '.join(CORPUS_NAMES)})")
    sp.add_argument("--param", action="append", metavar="K=V",
                    help="corpus generator parameter (repeatable)")
    _add_common(sp)
    sp.set_defaults(run=cmd_eigen)

    sp = sub.add_parser("corpus",
                        help="emit a corpus family file plus its references")
    sp.add_argument("name", help=f"one of: {', '.join(CORPUS_NAMES)}")
    sp.add_argument("--param", action="append", metavar="K=V",
                    help="generator parameter (repeatable)")
    _add_common(sp)
    sp.set_defaults(run=cmd_corpus)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except (InputError, UnknownCorpusEntry, HermitianViolation,
            NonHermitianSample, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NotRealRooted, RealityViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
