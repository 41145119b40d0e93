import subprocess
import sys
from fractions import Fraction

import pytest

from realcert import cli, report
from realcert.polysys import parse_points


def run(*argv, capsys=None):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr() if capsys else ("", "")
    return code, out, err


def test_certify_real(data_dir, capsys):
    code, out, _ = run("certify", data_dir / "ex1.system", data_dir / "ex1.points", "--real", capsys=capsys)
    assert code == 0
    recs = report.loads(out)
    assert [r["outcome"] for r in recs] == ["NotInV", "InV"]
    assert recs[0]["beta"][0].startswith("2.0534708")
    assert Fraction(recs[0]["beta"][0]) ** 2 <= report.parse_rational(recs[0]["beta_sq"]) <= Fraction(recs[0]["beta"][1]) ** 2


def test_certify_structure(data_dir, capsys):
    code, out, _ = run("certify", data_dir / "ex1.system", data_dir / "ex1.points", "--structure", "3,0,1,1", capsys=capsys)
    assert code == 0
    assert [r["outcome"] for r in report.loads(out)] == ["InV", "NotInV"]


def test_certify_approx_only(data_dir, capsys):
    code, out, _ = run("certify", data_dir / "ex1.system", data_dir / "ex1.points", capsys=capsys)
    assert code == 0
    assert {r["outcome"] for r in report.loads(out)} == {"ApproxSolutionOnly"}


def test_certify_wrong_structure_is_input_error(data_dir, capsys):
    code, _, err = run("certify", data_dir / "ex1.system", data_dir / "ex1.points", "--structure", "3,0,1,2", capsys=capsys)
    assert code == 1 and "error:" in err


def test_point_dimension_mismatch(data_dir, tmp_path, capsys):
    pts = tmp_path / "bad.points"
    pts.write_text("1 4\n1 1 0 1\n1 1 0 1\n1 1 0 1\n1 1 0 1\n")
    code, _, err = run("certify", data_dir / "ex1.system", pts, "--real", capsys=capsys)
    assert code == 1 and "4 coordinates" in err


def test_missing_file_and_parse_error(data_dir, tmp_path, capsys):
    code, _, err = run("certify", tmp_path / "nope.system", data_dir / "ex1.points", capsys=capsys)
    assert code == 1
    bad = tmp_path / "bad.system"
    bad.write_text("2 2\n1\nxyz\n")
    code, _, err = run("validate", bad, "--structure", "1,0,1,1", capsys=capsys)
    assert code == 1 and str(bad) in err


def test_validate(data_dir, capsys):
    code, out, _ = run("validate", data_dir / "ex1.system", "--structure", "3,0,1,1", capsys=capsys)
    assert code == 0
    assert out.splitlines()[0] == "structure 3,0,1,1,1,2" and "PASS" in out
    code, out, _ = run("validate", data_dir / "ex1.system", "--structure", "3,0,1,1,1,1", capsys=capsys)
    assert code == 2 and "FAIL" in out


def test_validate_tritangent_system(tmp_path, capsys):
    from realcert.polysys import serialize_system
    from realcert.tritangent import build_tritangent_system, parse_curve

    curve = parse_curve((cli.Path(__file__).parent.parent / "data" / "e41.curve").read_text())
    f, _ = build_tritangent_system(curve)
    path = tmp_path / "tri.system"
    path.write_text(serialize_system(f))
    for spec in ("3,3,0,5", "3,1,1,5"):
        code, out, _ = run("validate", path, "--structure", spec, capsys=capsys)
        assert code == 0, out
    code, _, _ = run("validate", path, "--structure", "3,3,0,4,0,6", capsys=capsys)
    assert code == 2


def test_refine_sqrt2(data_dir, capsys):
    code, out, _ = run("refine", data_dir / "sqrt2.system", data_dir / "sqrt2.points", "--iters", 2, capsys=capsys)
    assert code == 0
    assert parse_points(out)[0][0].re == Fraction(577, 408)
    code, out, _ = run("refine", data_dir / "sqrt2.system", data_dir / "sqrt2.points", "--iters", 3, capsys=capsys)
    assert parse_points(out)[0][0].re == Fraction(665857, 470832)


def test_refine_with_rounding(data_dir, capsys):
    code, out, _ = run("refine", data_dir / "sqrt2.system", data_dir / "sqrt2.points", "--iters", 7, "--round-bits", 128, capsys=capsys)
    assert code == 0
    x = parse_points(out)[0][0].re
    assert (2**128) % x.denominator == 0
    assert abs(x * x - 2) < Fraction(1, 2**125)


def test_refine_singular_passes_through(data_dir, tmp_path, capsys):
    pts = tmp_path / "zero.points"
    pts.write_text("2 1\n0 1 0 1\n3 2 0 1\n")
    code, out, err = run("refine", data_dir / "sqrt2.system", pts, capsys=capsys)
    assert code == 2 and "unchanged" in err
    got = parse_points(out)
    assert got[0][0] == 0 and got[1][0].re == Fraction(577, 408)


def test_tritangent_empty_candidates_is_partial(data_dir, tmp_path, capsys):
    empty = tmp_path / "none.points"
    empty.write_text("0 18\n")
    code, out, err = run("tritangent", data_dir / "e41.curve", empty, capsys=capsys)
    assert code == 3
    assert report.loads(out)[0]["summary"]["distinct_tritangents"] == 0
    assert "distinct 0" in err


def test_tritangent_needs_input(data_dir):
    with pytest.raises(SystemExit) as exc:
        cli.main(["tritangent", str(data_dir / "e41.curve")])
    assert exc.value.code == 2


def test_bad_flags_exit_nonzero(data_dir):
    for argv in (["refine", "a", "b", "--iters", "-1"], ["solve", "c", "--starts", "0"], ["certify", "a", "b", "--round-bits", "x"]):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 2


def test_output_is_byte_identical(data_dir, tmp_path):
    paths = [tmp_path / f"r{i}.jsonl" for i in range(2)]
    for p in paths:
        assert cli.main(["certify", str(data_dir / "ex1.system"), str(data_dir / "ex1.points"), "--real", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_jobs_env_fallback(data_dir, tmp_path, monkeypatch):
    serial, parallel = tmp_path / "s.jsonl", tmp_path / "p.jsonl"
    args = ["certify", str(data_dir / "ex1.system"), str(data_dir / "ex1.points"), "--structure", "3,0,1,1"]
    assert cli.main(args + ["--out", str(serial)]) == 0
    monkeypatch.setenv("ALPHACERT_JOBS", "2")
    assert cli._jobs(cli.build_parser().parse_args(args)) == 2
    assert cli.main(args + ["--out", str(parallel)]) == 0
    assert serial.read_bytes() == parallel.read_bytes()
    monkeypatch.setenv("ALPHACERT_JOBS", "many")
    assert cli.main(args) == 1


def test_solve_raw_is_deterministic(data_dir, tmp_path):
    outs = [tmp_path / f"c{i}.points" for i in range(2)]
    for p in outs:
        assert cli.main(["solve", str(data_dir / "e41.curve"), "--starts", "30", "--seed", "3", "--raw", "--out", str(p)]) == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()
    pts = parse_points(outs[0].read_bytes())
    assert all(len(z) == 18 for z in pts)
    assert all((2**53 * 2**60) % c.re.denominator == 0 for z in pts for c in z)


def test_module_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "realcert", "validate", str(data_dir / "sqrt2.system"), "--structure", "0,1,1,1"],
        capture_output=True, text=True,
    )
    assert proc.returncode in (0, 2)
    assert proc.stdout.startswith("structure")
