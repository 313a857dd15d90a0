import csv
import io

import pytest

from scensched.cli import REPORT_COLUMNS, main
from scensched.core import parse_instance, serialize_instance
from scensched.generators import generate
from scensched.oracle import brute_force
from scensched.reductions import gadget_from_maxcut, parse_clauses, parse_cut_graph

from conftest import EXAMPLE_TEXT


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.txt"
    path.write_text(EXAMPLE_TEXT)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_random_contract(capsys):
    code, out, _ = run(capsys, "gen", "random", "--n", 10, "--k", 6, "--r", 3, "--pmax", 9, "--seed", 1)
    assert code == 0
    inst = parse_instance(out)
    assert inst.n == 10 and inst.k == 6 and inst.r <= 3
    assert max(inst.proc) <= 9
    assert serialize_instance(inst) == out


@pytest.mark.parametrize("kind", ["random", "pairs", "triples", "unit", "maxcut_gadget", "setsplit_gadget"])
def test_gen_round_trip_and_determinism(capsys, kind):
    _, first, _ = run(capsys, "gen", kind, "--n", 7, "--k", 5, "--seed", 3)
    _, second, _ = run(capsys, "gen", kind, "--n", 7, "--k", 5, "--seed", 3)
    assert first == second
    assert serialize_instance(parse_instance(first)) == first


def test_gen_unit(capsys):
    _, out, _ = run(capsys, "gen", "unit", "--n", 8, "--k", 3)
    assert set(parse_instance(out).proc) == {1}


def test_gen_maxcut_gadget_from_source(capsys, tmp_path):
    src = tmp_path / "k3.txt"
    src.write_text("# triangle\n1 2\n2 3\n1 3\n")
    _, out, _ = run(capsys, "gen", "maxcut_gadget", "--source", src)
    assert parse_instance(out) == gadget_from_maxcut([(1, 2), (2, 3), (1, 3)])


def test_gen_bad_params(capsys):
    code, _, err = run(capsys, "gen", "pairs", "--n", 1)
    assert code == 3 and "n >= 2" in err
    code, _, _ = run(capsys, "gen", "random", "--source", "x")
    assert code == 2


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SCHED_SEED", "5")
    _, env_out, _ = run(capsys, "gen", "random")
    _, flag_out, _ = run(capsys, "gen", "random", "--seed", 5)
    assert env_out == flag_out


def test_solve_text_output(capsys, example_file):
    code, out, _ = run(capsys, "solve", example_file, "--alg", "brute", "--objective", "minsum")
    assert code == 0
    assert out == "M1 1 2\nM2 3\nminmax 3\nminsum 5\n"


def test_solve_pairs_matches_oracle(capsys, tmp_path):
    path = tmp_path / "pairs.txt"
    inst = generate("pairs", n=9, k=12, seed=2)
    path.write_text(serialize_instance(inst))
    code, out, _ = run(capsys, "solve", path, "--alg", "pairs", "--objective", "minmax", "--format", "csv", "--oracle")
    assert code == 0
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert int(row["value"]) == int(row["opt"]) == brute_force(inst, "minmax").value
    assert row["ratio"] == "1.000000"


def test_solve_cap_error(capsys, tmp_path):
    path = tmp_path / "big.txt"
    path.write_text(serialize_instance(generate("random", n=25, k=3, seed=1)))
    code, _, err = run(capsys, "solve", path, "--alg", "brute")
    assert code == 3 and "n <= 24" in err


def test_solve_exit_codes(capsys, example_file, tmp_path):
    assert run(capsys, "solve", example_file, "--alg", "pairs", "--objective", "minmax")[0] == 3
    assert run(capsys, "solve", example_file, "--alg", "pairs", "--objective", "minsum")[0] == 2
    assert run(capsys, "solve", example_file, "--alg", "brute", "--cap-brute", 0)[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("jobs 3\np 1 1 1\nscenarios 1\nS 1 9\n")
    code, _, err = run(capsys, "solve", bad, "--alg", "brute")
    assert code == 4 and "line 4" in err
    with pytest.raises(SystemExit) as info:
        main(["solve", str(example_file), "--alg", "unknown"])
    assert info.value.code == 2


def test_solve_random_deterministic(capsys, tmp_path):
    path = tmp_path / "r.txt"
    path.write_text(serialize_instance(generate("random", n=12, k=8, r=4, seed=9)))
    outs = []
    for i in range(2):
        out = tmp_path / f"sol{i}.txt"
        assert run(capsys, "solve", path, "--alg", "random", "--trials", 1000, "--seed", 7, "--out", out)[0] == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_solve_report_appends(capsys, example_file, tmp_path):
    report = tmp_path / "report.csv"
    for alg in ("derand", "nae_exact"):
        run(capsys, "solve", example_file, "--alg", alg, "--report", report, "--oracle")
    rows = list(csv.reader(report.open()))
    assert rows[0] == REPORT_COLUMNS
    assert [r[4] for r in rows[1:]] == ["derand", "nae_exact"]


def test_eval(capsys, example_file, tmp_path):
    sol = tmp_path / "sol.txt"
    sol.write_text("M1 1\nM2 2 3\n")
    code, out, _ = run(capsys, "eval", example_file, sol)
    assert code == 0 and out.endswith("minmax 2\nminsum 6\n")


def test_compare(capsys, tmp_path):
    for i in range(6):
        (tmp_path / f"i{i:02d}.txt").write_text(serialize_instance(generate("random", n=8, k=5, r=4, seed=i)))
    (tmp_path / "i99.txt").write_text("garbage\n")
    code, out, _ = run(capsys, "compare", tmp_path / "i*.txt", "--algs", "random,derand", "--trials", 4)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert lines[-1].startswith("# failed") and "i99.txt" in lines[-1]
    rows = list(csv.DictReader(io.StringIO("\n".join(l for l in lines if not l.startswith("#")))))
    assert len(rows) == 12
    assert [r["alg"] for r in rows[:2]] == ["random", "derand"]
    assert [r["instance"] for r in rows] == sorted(r["instance"] for r in rows)
    for r in rows:
        assert 1.0 <= float(r["ratio"]) <= 1.5


def test_compare_empty_glob(capsys, tmp_path):
    code, out, _ = run(capsys, "compare", tmp_path / "nothing*.txt")
    assert code == 0 and out == ",".join(REPORT_COLUMNS) + "\n"


def test_reduce(capsys, example_file):
    _, out, _ = run(capsys, "reduce", example_file, "--to", "nae")
    assert len(parse_clauses(out).clauses) == 12
    _, out, _ = run(capsys, "reduce", example_file, "--to", "vector")
    assert out == "v 1 2 0 0\nv 2 1 1 1\nv 3 1 1 1\n"
    _, out, _ = run(capsys, "reduce", example_file, "--to", "cut")
    assert len(parse_cut_graph(out).edges) == 5
    wide = example_file.parent / "wide.txt"
    wide.write_text("jobs 4\np 1 1 1 1\nscenarios 1\nS 1 2 3 4\n")
    assert run(capsys, "reduce", wide, "--to", "cut")[0] == 3
    pairs = example_file.parent / "pairs.txt"
    pairs.write_text("jobs 2\np 3 1\nscenarios 1\nS 1 2\n")
    _, out, _ = run(capsys, "reduce", pairs, "--to", "cut")
    assert parse_cut_graph(out).edges[0].weight == 1
