import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from mcmean.cli import main
from mcmean.io import emit_graph, generate_graph

TWO_CYCLE_TEXT = "p mcm 2 2\na 1 2 1\na 2 1 2\n"


@pytest.fixture
def two_cycle(tmp_path):
    p = tmp_path / "two.txt"
    p.write_text(TWO_CYCLE_TEXT)
    return str(p)


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_karp_default(two_cycle):
    code, out = run(["solve", "--input", two_cycle])
    assert code == 0
    doc = json.loads(out)
    assert doc["mode"] == "karp"
    assert Fraction(doc["global"]["num"], doc["global"]["den"]) == Fraction(3, 2)


def test_approx_echoes_params(two_cycle):
    code, out = run(["solve", "--mode", "approx", "--epsilon", "1", "--input", two_cycle])
    doc = json.loads(out)
    assert code == 0
    assert Fraction(3, 2) <= Fraction(doc["global"]["num"], doc["global"]["den"]) <= 3
    assert doc["t"] == 64 and "R" in doc and doc["epsilon"] == {"num": 1, "den": 1}


def test_epsilon_accepts_fraction_and_decimal(two_cycle):
    for text in ("1/2", "0.5"):
        _, out = run(["solve", "--mode", "approx", "--epsilon", text, "--input", two_cycle])
        assert json.loads(out)["epsilon"] == {"num": 1, "den": 2}


def test_plain_output(two_cycle):
    assert run(["solve", "--output", "plain", "--input", two_cycle]) == (0, "global 3/2 (1.5)\n")


def test_brute_guard(tmp_path, caplog):
    p = tmp_path / "big.txt"
    p.write_text(emit_graph(generate_graph(20, 40, 3, 1)))
    code, out = run(["solve", "--mode", "brute", "--input", str(p)])
    assert code != 0 and out == ""
    assert "n <= 12" in caplog.text
    ring = tmp_path / "ring.txt"
    ring.write_text("p mcm 13 13\n" + "".join(f"a {i} {i % 13 + 1} 2\n" for i in range(1, 14)))
    assert run(["solve", "--mode", "brute", "--input", str(ring)])[0] == 1
    code, out = run(["solve", "--mode", "brute", "--brute-max-n", "13", "--input", str(ring)])
    assert code == 0 and json.loads(out)["global"]["num"] == 2


def test_power_guard_override(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(emit_graph(generate_graph(9, 12, 2, 3)))
    assert run(["solve", "--mode", "exact-power", "--input", str(p)])[0] == 1
    assert run(["solve", "--mode", "exact-power", "--power-max-n", "9", "--input", str(p)])[0] == 0


def test_epsilon_in_exact_mode_warns(two_cycle, caplog):
    code, _ = run(["solve", "--epsilon", "0.5", "--input", two_cycle])
    assert code == 0
    assert "ignored" in caplog.text


def test_parse_error_reported(tmp_path, caplog):
    p = tmp_path / "bad.txt"
    p.write_text("p mcm 2 2\na 1 2 1\n")
    assert run(["solve", "--input", str(p)])[0] == 1
    assert "expected 2 edges, found 1" in caplog.text


def test_missing_file(caplog):
    assert run(["solve", "--input", "/nonexistent/g.txt"])[0] == 1


@pytest.mark.parametrize("argv", [["solve", "--bogus"], ["solve", "--epsilon", "2"],
                                  ["solve", "--mode", "fast"], []])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv, out=io.StringIO())
    assert exc.value.code != 0


def test_generate_then_solve_stdin():
    gen = subprocess.run([sys.executable, "-m", "mcmean.cli", "generate", "--n", "6", "--m", "12",
                          "--W", "4", "--seed", "7"], capture_output=True, text=True, check=True)
    outs = [subprocess.run([sys.executable, "-m", "mcmean.cli", "solve", "--mode", mode, "--input", "-"],
                           input=gen.stdout, capture_output=True, text=True, check=True).stdout
            for mode in ("karp", "exact-power", "brute")]
    g = [json.loads(o)["global"] for o in outs]
    assert g[0] == g[1] == g[2]


def test_byte_deterministic(two_cycle):
    for mode in ("karp", "approx", "exact-power", "brute"):
        assert run(["solve", "--mode", mode, "--input", two_cycle]) == \
            run(["solve", "--mode", mode, "--input", two_cycle])


def test_bench_subcommand(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"repetitions": 1, "cases": [
        {"n": 6, "m": 12, "W": 4, "epsilon": "0.5", "mode": "approx"}]}))
    code, out = run(["bench", "--config", str(cfg)])
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,m,W,epsilon,mode,median_ms,ratio"
    assert lines[1].startswith("6,12,4,1/2,approx,")
    assert run(["bench"]) == (0, "n,m,W,epsilon,mode,median_ms,ratio\n")
