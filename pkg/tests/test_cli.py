import io
import sys

import pytest

from toricode.cli import main
from toricode.lattice import parse_points


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err
    return _run


@pytest.fixture
def exc_file(tmp_path):
    f = tmp_path / "exc.pts"
    f.write_text("0 0\n2 1\n1 2\n")
    return str(f)


@pytest.fixture
def seg_file(tmp_path):
    f = tmp_path / "seg.pts"
    f.write_text("0\n1\n2\n")
    return str(f)


def test_poly_tsv_golden(run, exc_file):
    code, out, _ = run("poly", exc_file, "--format", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == [
        "ambient_dim", "dim", "vertices", "points", "mlength",
        "strongly_indecomposable", "exceptional_in_maximal"]
    assert lines[1].split("\t") == ["2", "2", "0,0;1,2;2,1", "4", "1", "yes", "yes"]


def test_poly_square(run, tmp_path):
    f = tmp_path / "sq.pts"
    f.write_text("0 0\n1 0\n0 1\n1 1\n")
    code, out, _ = run("poly", str(f), "--format", "tsv")
    row = out.strip().splitlines()[1].split("\t")
    assert row[3] == "4" and row[4] == "2"


def test_poly_empty_file_is_input_error(run, tmp_path):
    f = tmp_path / "empty.pts"
    f.write_text("\n")
    code, _, err = run("poly", str(f))
    assert code == 2
    assert "empty" in err


def test_mlength_reports_witness(run, tmp_path):
    f = tmp_path / "sq2.pts"
    f.write_text("0 0\n2 0\n0 2\n2 2\n")
    code, out, _ = run("mlength", str(f), "--format", "tsv")
    assert code == 0
    row = out.strip().splitlines()[1].split("\t")
    assert row[0] == "4"


def test_code_reed_solomon_tsv(run, seg_file):
    code, out, _ = run("code", "--points", seg_file, "--q", "5", "--format", "tsv")
    assert code == 0
    rows = out.strip().splitlines()
    vals = dict(zip(rows[0].split("\t"), rows[1].split("\t")))
    assert (vals["n"], vals["k"], vals["d"]) == ("4", "3", "2")
    assert vals["method"] == "exhaustive" and vals["certified"] == "yes"


def test_code_isd_exact_path(run, tmp_path):
    f = tmp_path / "simplex2.pts"
    f.write_text("".join(f"{i} {j}\n" for i in range(3) for j in range(3) if i + j <= 2))
    code, out, _ = run("code", "--points", str(f), "--q", "5",
                       "--method", "isd", "--exact", "--format", "tsv")
    assert code == 0
    rows = out.strip().splitlines()
    vals = dict(zip(rows[0].split("\t"), rows[1].split("\t")))
    assert vals["d"] == "8" and vals["method"] == "information-set"
    assert vals["certified"] == "yes"


def test_code_rejects_non_prime_power(run, seg_file):
    code, _, err = run("code", "--points", seg_file, "--q", "6")
    assert code == 2
    assert "prime power" in err


def test_code_budget_exceeded_exit(run, tmp_path):
    f = tmp_path / "big.pts"
    f.write_text("".join(f"{i} {j}\n" for i in range(4) for j in range(4)))
    code, _, err = run("code", "--points", str(f), "--q", "5",
                       "--method", "exhaustive", "--budget-messages", "100")
    assert code == 3
    assert "information-set" in err


def test_bound_simplex_tsv(run):
    code, out, _ = run("bound", "--formula", "simplex", "--ell", "2",
                       "--dim", "2", "--q", "5", "--format", "tsv")
    assert code == 0
    assert out.strip().splitlines()[1].split("\t")[:3] == ["simplex", "8", "equality"]


def test_bound_inductive(run, tmp_path):
    f = tmp_path / "sq.pts"
    f.write_text("0 0\n1 0\n0 1\n1 1\n")
    code, out, _ = run("bound", "--formula", "inductive", "--points", str(f),
                       "--axes", "0,1", "--q", "5", "--format", "tsv")
    assert code == 0
    assert out.strip().splitlines()[1].split("\t")[1] == "9"


def test_construct_roundtrip(run):
    code, out, _ = run("construct", "--sind-tower", "2")
    assert code == 0
    pts = parse_points(out)
    assert len(pts) == 4


def test_construct_product(run, tmp_path):
    a = tmp_path / "a.pts"
    a.write_text("0\n1\n")
    b = tmp_path / "b.pts"
    b.write_text("0\n2\n")
    code, out, _ = run("construct", "--product", str(a), str(b))
    assert code == 0
    assert parse_points(out) == [(0, 0), (0, 2), (1, 0), (1, 2)]


def test_construct_nested_fiber(run, tmp_path):
    base = tmp_path / "base.pts"
    base.write_text("0\n1\n2\n3\n")
    code, out, _ = run("construct", "--nested-fiber", str(base),
                       "--segment", "0;1", "--levels", "2")
    assert code == 0
    assert len(parse_points(out)) == 9


def test_classify_length_one(run):
    code, out, err = run("classify", "--length", "1", "--format", "tsv")
    assert code == 0
    rows = out.strip().splitlines()
    assert len(rows) == 1 + 3
    assert "# classes: 3 total" in err


def test_usage_error_exit_code(run):
    code, _, _ = run("poly")
    assert code == 1


def test_missing_file_is_input_error(run):
    code, _, err = run("poly", "/nonexistent/nowhere.pts")
    assert code == 2


def test_plot_outputs(run, exc_file, seg_file, tmp_path):
    png1 = tmp_path / "poly.png"
    code, _, _ = run("poly", exc_file, "--plot", str(png1))
    assert code == 0 and png1.stat().st_size > 0
    png2 = tmp_path / "weights.png"
    code, _, _ = run("code", "--points", seg_file, "--q", "5",
                     "--enumerator", "--plot", str(png2))
    assert code == 0 and png2.stat().st_size > 0


def test_classify_plot(run, tmp_path):
    png = tmp_path / "census.png"
    code, _, _ = run("classify", "--length", "1", "--plot", str(png))
    assert code == 0 and png.stat().st_size > 0


def test_search_empty_seed(run, tmp_path):
    seed = tmp_path / "seed.pts"
    seed.write_text("# empty\n")
    code, out, _ = run("search", "--seed", str(seed), "--q", "4", "--dim", "2",
                       "--format", "tsv", "--budget-messages", "1000")
    assert code == 0
    rows = out.strip().splitlines()
    assert len(rows) == 1 + 9
    for row in rows[1:]:
        vals = dict(zip(rows[0].split("\t"), row.split("\t")))
        assert (vals["n"], vals["k"], vals["d_estimate"]) == ("9", "1", "9")


def test_search_reports_against_table(run, tmp_path):
    seed = tmp_path / "seed.pts"
    seed.write_text("0 0\n")
    code, out, _ = run("search", "--seed", str(seed), "--q", "8", "--dim", "2",
                       "--format", "tsv", "--max-weight", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 48
