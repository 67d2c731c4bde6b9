"""Command-line behavior: exit codes, report files, round trips."""

import json

import pytest

from smoothroots import FamilySpec, HermitianCurve, Jet
from smoothroots.cli import _parse_grid, _parse_params, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# -- certify -------------------------------------------------------------------

def test_certify_real_rooted_exit_zero(capsys):
    code, doc = run_json(capsys, "certify", "--poly", "x^2-1")
    assert code == 0
    assert doc["schema"] == 1
    assert doc["all_real"] is True


def test_certify_failure_exit_one(capsys):
    code, doc = run_json(capsys, "certify", "--poly", "x^2+1")
    assert code == 1
    assert doc["all_real"] is False


def test_certify_repeated_root_counts(capsys):
    # roots {1, 1, -2}: two distinct, both real
    code, doc = run_json(capsys, "certify", "--poly", "x^3-3x+2")
    assert code == 0
    assert doc["rank"] == 2
    assert doc["signature"] == 2


def test_certify_malformed_poly_exit_three(capsys):
    assert main(["certify", "--poly", "x^^2"]) == 3
    assert main(["certify", "--poly", "x - t"]) == 3


def test_certify_family_file(tmp_path, capsys):
    path = tmp_path / "fam.json"
    FamilySpec("poly-jet", {"coeffs": [["0"], ["-1"]]}).save(path)
    code, doc = run_json(capsys, "certify", "--family", str(path))
    assert code == 0
    assert doc["all_real"] is True


def test_certify_rejects_t_dependent_family(tmp_path):
    path = tmp_path / "fam.json"
    FamilySpec("poly-jet", {"coeffs": [["0", "1"], ["0"]]}).save(path)
    assert main(["certify", "--family", str(path)]) == 3


def test_certify_out_dir(tmp_path, capsys):
    code, out = run(capsys, "certify", "--poly", "x^2-1",
                    "--out", str(tmp_path / "r"))
    assert code == 0
    doc = json.loads((tmp_path / "r" / "certificate.json").read_text())
    assert doc["all_real"] is True
    assert "certificate.json" in out


# -- solve ---------------------------------------------------------------------

def test_solve_quartic_family(capsys):
    code, doc = run_json(capsys, "solve", "--poly",
                         "(x^2 - t^4)(x - t)(x + t)", "--order", "16")
    assert code == 0
    assert doc["solvable"] is True
    assert doc["degree"] == 4
    roots = set()
    for r in doc["roots"]:
        cs = [str(c) for c in r["coeffs"]]
        nz = {k: c for k, c in enumerate(cs) if c not in ("0", "0.0")}
        roots.add(tuple(sorted(nz.items())))
    assert roots == {((1, "1"),), ((1, "-1"),), ((2, "1"),), ((2, "-1"),)}


def test_solve_certificate_in_real_mode(capsys):
    code, doc = run_json(capsys, "solve", "--poly", "x^2 - t^2")
    assert code == 0
    assert doc["certificate"]["all_real"] is True


def test_solve_complex_unsolvable_exit_two(capsys):
    code, doc = run_json(capsys, "solve", "--poly", "x^2 - t^3",
                         "--mode", "complex")
    assert code == 2
    assert doc["solvable"] is False
    assert any(l["kind"] == "unsolvable" for l in doc["leaves"])


def test_solve_real_mode_rejects_odd_weight(capsys):
    assert main(["solve", "--poly", "x^2 - t^3"]) == 1


def test_solve_family_file_with_jet_coeffs(tmp_path, capsys):
    # a_1 = 0, a_2 = -t^2  <=>  x^2 - t^2
    path = tmp_path / "fam.json"
    FamilySpec("poly-jet", {"coeffs": [["0"], ["0", "0", "-1"]]},
               {"order": 12}).save(path)
    code, doc = run_json(capsys, "solve", "--family", str(path))
    assert code == 0
    assert doc["solvable"] is True
    assert doc["order"] == 12


def test_solve_out_dir(tmp_path, capsys):
    code, _ = run(capsys, "solve", "--poly", "x^2 - t^2",
                  "--out", str(tmp_path))
    assert code == 0
    doc = json.loads((tmp_path / "solve.json").read_text())
    assert doc["solvable"] is True


# -- track ---------------------------------------------------------------------

CSV_PAIR = "t,a_1,a_2\n-0.2,0,-0.04\n-0.1,0,-0.01\n0,0,0\n0.1,0,-0.01\n0.2,0,-0.04\n"


def test_track_csv_input(tmp_path, capsys):
    src = tmp_path / "in.csv"
    src.write_text(CSV_PAIR)
    code, out = run(capsys, "track", "--csv", str(src))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,x_1,x_2,sigma"
    # arranged curves cross at t = 0: the permutation toggles
    assert lines[1].endswith("1 2")
    assert lines[-1].endswith("2 1")


def test_track_emits_csv_and_meets_sidecar(tmp_path, capsys):
    src = tmp_path / "in.csv"
    src.write_text(CSV_PAIR)
    code, _ = run(capsys, "track", "--csv", str(src), "--out", str(tmp_path))
    assert code == 0
    meets = json.loads((tmp_path / "meets.json").read_text())
    assert meets["schema"] == 1
    assert len(meets["meets"]) == 1
    assert meets["meets"][0]["t"] == 0.0
    assert (tmp_path / "track.csv").read_text().startswith("t,x_1,x_2,sigma")


def test_track_poly_needs_grid(capsys):
    assert main(["track", "--poly", "x^2 - t^2"]) == 3


def test_track_poly_with_grid_json(capsys):
    code, doc = run_json(capsys, "track", "--poly", "(x-t)(x+t)",
                         "--grid=-1:1:10", "--format", "json")
    assert code == 0
    assert [m["t"] for m in doc["meets"]] == [0.0]
    assert doc["arrangement"][0] != doc["arrangement"][-1]


def test_track_not_real_rooted_exit_one(tmp_path):
    src = tmp_path / "in.csv"
    src.write_text("0.0,0,1\n1.0,0,1\n")  # x^2 + 1 at every sample
    assert main(["track", "--csv", str(src)]) == 1


def test_track_rejects_mixed_row_lengths(tmp_path):
    src = tmp_path / "in.csv"
    src.write_text("0.0,0,1\n1.0,0\n")
    assert main(["track", "--csv", str(src)]) == 3


def test_track_rejects_matrix_family(tmp_path):
    path = tmp_path / "fam.json"
    FamilySpec("hermitian-sampled",
               {"ts": [0.0], "matrices": [[[1.0]]]}).save(path)
    assert main(["track", "--family", str(path)]) == 3


def test_track_corpus_entry(capsys):
    code, out = run(capsys, "track", "--corpus", "ex23a",
                    "--param", "pts=60")
    assert code == 0
    assert out.startswith("t,x_1,x_2,sigma")


# -- eigen ---------------------------------------------------------------------

def jet_pair_family(tmp_path):
    t = Jet.variable(8)
    curve = HermitianCurve([[t, t], [t, t.scale(-1)]])
    path = tmp_path / "herm.json"
    FamilySpec("hermitian-jet", curve.to_json()).save(path)
    return path


def test_eigen_jet_report(tmp_path, capsys):
    code, doc = run_json(capsys, "eigen", "--family",
                         str(jet_pair_family(tmp_path)))
    assert code == 0
    assert doc["n"] == 2
    assert doc["flags"] == ["", ""]
    assert doc["frames"] is not None
    slopes = sorted(float(v["coeffs"][1]) for v in doc["values"])
    assert abs(slopes[0] + 2 ** 0.5) < 1e-12
    assert abs(slopes[1] - 2 ** 0.5) < 1e-12


def test_eigen_flat_family_withholds_frames(tmp_path, capsys):
    f = Jet([0.0] * 9)  # numerically zero, not provably zero
    curve = HermitianCurve([[f, Jet.zero(8)], [Jet.zero(8), f.scale(-1)]])
    path = tmp_path / "flat.json"
    FamilySpec("hermitian-jet", curve.to_json()).save(path)
    code, doc = run_json(capsys, "eigen", "--family", str(path))
    assert code == 0
    assert doc["frames"] is None
    assert "flat-meet-suspect" in doc["flags"]


def test_eigen_jet_grid_mode_files(tmp_path, capsys):
    code, _ = run(capsys, "eigen", "--family", str(jet_pair_family(tmp_path)),
                  "--grid", "0:1:8", "--out", str(tmp_path / "o"))
    assert code == 0
    report = json.loads((tmp_path / "o" / "eigen.json").read_text())
    grid = json.loads((tmp_path / "o" / "eigen_grid.json").read_text())
    assert report["schema"] == grid["schema"] == 1
    assert len(grid["grid"]["ts"]) == 9
    assert len(grid["frames"]) == 9
    csv_text = (tmp_path / "o" / "eigen.csv").read_text()
    assert csv_text.startswith("t,x_1,x_2,sigma")


def test_eigen_sampled_csv(tmp_path, capsys):
    path = tmp_path / "fam.json"
    FamilySpec("hermitian-sampled",
               {"ts": [0.0, 0.5, 1.0],
                "matrices": [[[0.0, 0.0], [0.0, 0.0]],
                             [[0.1, 0.05], [0.05, -0.1]],
                             [[0.2, 0.1], [0.1, -0.2]]]}).save(path)
    code, out = run(capsys, "eigen", "--family", str(path), "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "t,x_1,x_2,sigma"
    assert len(rows) == 4


def test_eigen_sampled_complex_entries(tmp_path, capsys):
    path = tmp_path / "fam.json"
    FamilySpec("hermitian-sampled",
               {"ts": [0.0, 1.0],
                "matrices": [[[0.0, [0.0, 0.0]], [[0.0, 0.0], 0.0]],
                             [[1.0, [0.0, 0.5]], [[0.0, -0.5], -1.0]]]},
               ).save(path)
    code, doc = run_json(capsys, "eigen", "--family", str(path))
    assert code == 0
    assert doc["grid"]["roots"][1] == pytest.approx(
        [-(1.25) ** 0.5, (1.25) ** 0.5])


def test_eigen_rejects_non_hermitian_sample(tmp_path):
    path = tmp_path / "fam.json"
    FamilySpec("hermitian-sampled",
               {"ts": [0.0], "matrices": [[[0.0, 1.0], [0.0, 0.0]]]},
               ).save(path)
    assert main(["eigen", "--family", str(path)]) == 3


def test_eigen_rejects_scalar_family(tmp_path):
    path = tmp_path / "fam.json"
    FamilySpec("poly-sampled",
               {"ts": [0.0], "coeff_rows": [[0.0, 1.0]]}).save(path)
    assert main(["eigen", "--family", str(path)]) == 3


def test_eigen_csv_without_grid_is_an_error(tmp_path):
    assert main(["eigen", "--family", str(jet_pair_family(tmp_path)),
                 "--format", "csv"]) == 3


# -- corpus --------------------------------------------------------------------

def test_corpus_round_trips_byte_identically(tmp_path, capsys):
    code, out = run(capsys, "corpus", "ex23a", "--param", "pts=40",
                    "--out", str(tmp_path))
    assert code == 0
    fam_path = tmp_path / "ex23a.family.json"
    raw = fam_path.read_bytes()
    assert FamilySpec.load(fam_path).canonical().encode() == raw
    refs = json.loads((tmp_path / "ex23a.refs.json").read_text())
    assert refs["schema"] == 1
    assert refs["name"] == "ex23a"


def test_corpus_deterministic(tmp_path, capsys):
    for sub in ("a", "b"):
        assert main(["corpus", "ex24", "--param", "n_hi=2",
                     "--out", str(tmp_path / sub)]) == 0
    capsys.readouterr()
    assert ((tmp_path / "a" / "ex24.family.json").read_bytes()
            == (tmp_path / "b" / "ex24.family.json").read_bytes())
    assert ((tmp_path / "a" / "ex24.refs.json").read_bytes()
            == (tmp_path / "b" / "ex24.refs.json").read_bytes())


def test_corpus_emitted_family_feeds_track(tmp_path, capsys):
    assert main(["corpus", "ex23a", "--param", "pts=50",
                 "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    code, out = run(capsys, "track", "--family",
                    str(tmp_path / "ex23a.family.json"))
    assert code == 0
    assert out.startswith("t,x_1,x_2,sigma")


def test_corpus_unknown_name_exit_three(capsys):
    assert main(["corpus", "nope"]) == 3


def test_corpus_bad_param_exit_three(capsys):
    assert main(["corpus", "ex24", "--param", "bogus=1"]) == 3
    assert main(["corpus", "ex24", "--param", "n_hi"]) == 3


# -- flag plumbing ---------------------------------------------------------------

def test_parse_grid_samples_and_errors():
    ts = _parse_grid("0:1:4")
    assert ts == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert _parse_grid("-1:1:2") == [-1.0, 0.0, 1.0]
    for bad in ("0:1", "0:1:0", "1:0:4", "a:b:c"):
        with pytest.raises(Exception):
            _parse_grid(bad)


def test_parse_params_coercion():
    params = _parse_params(["n_hi=3", "res=1e-4", "name=warner", "k-max=2"])
    assert params == {"n_hi": 3, "res": 1e-4, "name": "warner", "k_max": 2}


def test_bad_flags_exit_three(capsys):
    assert main(["certify"]) == 3
    assert main(["solve", "--poly", "x", "--mode", "imaginary"]) == 3
    assert main(["frobnicate"]) == 3


def test_missing_family_file_exit_three(capsys):
    assert main(["solve", "--family", "/nonexistent/fam.json"]) == 3


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
