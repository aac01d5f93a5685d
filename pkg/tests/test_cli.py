import json
import shutil
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from twkernel.cli import run_cli
from twkernel.io import parse_gr, parse_modulator, parse_td, report_schema, trace_from_json
from twkernel.modulators import FOREST, INDEPENDENT_SET, verify_modulator
from twkernel.oracles import treewidth_exact, validate_decomposition
from twkernel.reduction import Instance, replay

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = run_cli([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def work(tmp_path):
    for name in ("k4.gr", "c5.gr", "c5.mod", "c4.gr", "c4_bad.td", "petersen.gr", "petersen.td",
                 "two_matching.gr", "k2_weighted.wgr", "p6.gr", "p2_c4.gr", "grid3x3.gr"):
        shutil.copy(DATA / name, tmp_path / name)
    return tmp_path


def test_exact_examples(capsys, work):
    assert run(capsys, "exact", "tw", work / "k4.gr")[:2] == (0, "3\n")
    assert run(capsys, "exact", "cutwidth", work / "c5.gr")[1] == "2\n"
    assert run(capsys, "exact", "wtw", work / "k2_weighted.wgr")[1] == "4\n"
    # unweighted files count as unit weights
    assert run(capsys, "exact", "wtw", work / "petersen.gr")[1] == "4\n"


def test_exact_writes_an_optimal_decomposition(capsys, work):
    code, out, _ = run(capsys, "exact", "tw", work / "grid3x3.gr", "--td", work / "g.td")
    assert code == 0 and out == "3\n"
    g = parse_gr((work / "grid3x3.gr").read_text()).graph()
    td, _ = parse_td((work / "g.td").read_text())
    assert validate_decomposition(g, td) == 3
    code, out, _ = run(capsys, "validate-td", work / "grid3x3.gr", work / "g.td")
    assert code == 0 and out == "valid width 3\n"


def test_validate_td(capsys, work):
    code, out, _ = run(capsys, "validate-td", work / "petersen.gr", work / "petersen.td")
    assert (code, out) == (0, "valid width 4\n")
    code, out, _ = run(capsys, "validate-td", work / "c4.gr", work / "c4_bad.td")
    assert code == 1 and out.startswith("invalid:")
    code, _, err = run(capsys, "validate-td", work / "c5.gr", work / "petersen.td")
    assert code == 2 and "10 vertices" in err


def test_kernelize_trivial_yes(capsys, work):
    code, out, _ = run(capsys, "kernelize", "--mode", "vc", "--k", 5, work / "two_matching.gr")
    assert code == 0 and out.splitlines()[0] == "YES"
    kernel = parse_gr((work / "two_matching.kernel.gr").read_text()).graph()
    assert kernel.n == 3 and kernel.m == 3
    assert "k' = 2" in out
    report = json.loads((work / "two_matching.kernel.json").read_text())
    assert report["input"]["modulator_size"] == 4 and report["trace"][0]["rule"] == "3.4"
    jsonschema.validate(report, report_schema())


def test_kernelize_no_exits_one(capsys, work):
    code, out, _ = run(capsys, "kernelize", "--mode", "fvs", "--k", 2, work / "k4.gr")
    assert code == 1 and out.startswith("NO")
    assert "k' = 1" in out


def test_kernelize_reduced_output_and_report(capsys, work):
    code, out, _ = run(capsys, "kernelize", "--mode", "vc", "--k", 3, "--out", work / "red.gr",
                       "--report", work / "rep.json", work / "petersen.gr")
    assert code == 0 and out.startswith("REDUCED")
    g = parse_gr((work / "petersen.gr").read_text()).graph()
    red = parse_gr((work / "red.gr").read_text()).graph()
    mod = parse_modulator((work / "red.mod").read_text(), red.n)
    assert verify_modulator(red, mod, INDEPENDENT_SET)
    assert (treewidth_exact(red) <= 3) == (treewidth_exact(g) <= 3)
    report = json.loads((work / "rep.json").read_text())
    jsonschema.validate(report, report_schema())
    assert report["verdict"] == "REDUCED" and report["output"]["n"] == red.n


def test_kernelize_with_modulator_file_replays(capsys, work):
    code, out, _ = run(capsys, "kernelize", "--mode", "fvs", "--k", 1, "--modulator", work / "c5.mod",
                       work / "c5.gr")
    report = json.loads((work / "c5.kernel.json").read_text())
    assert report["input"]["modulator_source"] == "file"
    g = parse_gr((work / "c5.gr").read_text()).graph()
    inst = Instance(g, 1, {0}, FOREST)
    steps = [trace_from_json(e) for e in report["trace"]]
    replay(inst, steps)
    assert code == (1 if report["verdict"] == "NO" else 0)


def test_kernelize_rejects_invalid_modulator(capsys, work):
    (work / "bad.mod").write_text("1\n")
    code, _, err = run(capsys, "kernelize", "--mode", "vc", "--k", 1, "--modulator", work / "bad.mod",
                       work / "c5.gr")
    assert code == 2 and "not a vertex cover" in err


def test_heuristic_low(capsys, work):
    code, out, _ = run(capsys, "heuristic-low", work / "k4.gr", "--out", work / "low.gr")
    assert code == 0 and out.splitlines()[0] == "low 3"
    assert parse_gr((work / "low.gr").read_text()).n == 1


def test_expand_weights(capsys, work):
    code, out, _ = run(capsys, "expand-weights", work / "k2_weighted.wgr")
    assert code == 0
    g = parse_gr(out).graph()
    assert g.n == 5 and g.m == 10


def test_gen_lb_cobipartite(capsys, work):
    code, out, _ = run(capsys, "gen-lb", "--theorem", 5, "--k", 1, "--out", work / "t5",
                       work / "p6.gr", work / "p2_c4.gr")
    assert code == 0
    doc = parse_gr((work / "t5.gr").read_text())
    assert doc.weighted and doc.n == 2 * 6 + 2 + 2 + 6 + 15
    layout = (work / "t5.layout").read_text().splitlines()
    k_line = next(line for line in layout if line.startswith("k "))
    k_prime = int(k_line.split()[1])
    assert k_prime == 2 * (6 ** 4 + 6 ** 6) + 6 ** 3 + 6 ** 5 + 1 - 1
    roles = [line for line in layout if line.startswith("v ")]
    assert len(roles) == doc.n
    assert roles[0] == "v 1 a-rep instance=1 node=1 original=1"
    code, out, _ = run(capsys, "exact", "wtw", work / "t5.gr", "--clique", work / "t5.mod")
    assert code == 0 and int(out) <= k_prime


def test_gen_lb_join_cover(capsys, work):
    p8 = work / "p8.gr"
    p8.write_text("p tw 8 7\n" + "".join(f"{i} {i + 1}\n" for i in range(1, 8)))
    code, out, _ = run(capsys, "gen-lb", "--theorem", 6, "--k", 3, "--out", work / "t6", p8, p8)
    assert code == 0
    layout = (work / "t6.layout").read_text()
    assert "k 11" in layout.splitlines() and "c note:" in layout
    doc = parse_gr((work / "t6.gr").read_text())
    mod = parse_modulator((work / "t6.mod").read_text(), doc.n)
    assert len(mod) == 2 * (7 + 64)
    code, _, err = run(capsys, "gen-lb", "--theorem", 6, "--k", 1, "--out", work / "bad",
                       work / "c5.gr", work / "c5.gr")
    assert code == 2 and "d = " in err


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "safety-vc", "--seed", 1, "--count", 100)
    assert code == 0 and out.strip() == "safety-vc: 100/100 agreements"


def test_verify_is_deterministic_across_jobs(capsys):
    one = run(capsys, "verify", "--suite", "formulas", "--seed", 3, "--count", 6)
    two = run(capsys, "verify", "--suite", "formulas", "--seed", 3, "--count", 6, "--jobs", 2)
    assert one == two and one[0] == 0


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["exact", "tw"],
    ["exact", "tw", "missing.gr"],
    ["kernelize", "--mode", "vc", "--k", "-1", "x.gr"],
    ["kernelize", "--mode", "vc", "--k", "1", "--bogus", "x.gr"],
    ["verify", "--suite", "nope", "--seed", "1", "--count", "1"],
])
def test_errors_exit_two(capsys, argv):
    assert run_cli(argv) == 2


def test_parse_errors_exit_two(capsys, work):
    (work / "broken.gr").write_text("p tw 3 2\n1 2\n")
    code, _, err = run(capsys, "exact", "tw", work / "broken.gr")
    assert code == 2 and "error" in err


def test_size_cap_exits_two(capsys, work):
    big = work / "big.gr"
    big.write_text("p tw 40 39\n" + "".join(f"{i} {i + 1}\n" for i in range(1, 40)))
    code, _, err = run(capsys, "exact", "cutwidth", big)
    assert code == 2


def test_console_entry_point(work):
    proc = subprocess.run([sys.executable, "-m", "twkernel.cli", "exact", "tw", str(work / "k4.gr")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"
