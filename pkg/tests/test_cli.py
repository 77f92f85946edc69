"""CLI tests: golden files for every subcommand plus exit-code checks.

Set ``PADICWAVE_REGEN_GOLDEN=1`` to rewrite the golden files after an
intentional output change.
"""
import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from padicwave.analysis import TestFunction
from padicwave.cli import main
from padicwave.haar import read_signal_csv
from padicwave.padic import parse_padic

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"
REGEN = os.environ.get("PADICWAVE_REGEN_GOLDEN") == "1"

# name -> argv (without --out); output is compared against GOLDEN / name
GOLDEN_CASES = {
    "expand_minus1_p5.txt": ["expand", "-1", "--p", "5", "--precision", "6"],
    "expand_zero_p3.txt": ["expand", "0", "--p", "3", "--precision", "5"],
    "expand_12_p2.txt": ["expand", "12", "--p", "2", "--precision", "4"],
    "haar_signal_1024.json": ["haar", "--in", str(DATA / "signal_1024.csv"), "--depth", "10"],
    "haar_padic_p3.json": ["haar", "--in", str(DATA / "padic_8.csv"), "--mode", "padic",
                           "--p", "3", "--precision", "8"],
    "kozyrev_p3_alpha2.json": ["kozyrev", "--p", "3", "--alpha", "2"],
    "cwt_bandlimited_p2.json": ["cwt", "--in", str(DATA / "bandlimited_p2.json"),
                                "--jmin", "-4", "--jmax", "4"],
    "hier_demo_p3_d2.txt": ["hier-demo", "--p", "3", "--depth", "2", "--dim", "2",
                            "--weighting", "measure", "--seed", "5"],
    "qudit_bell.json": ["qudit", "--circuit", str(DATA / "bell.circ"), "--p", "2", "--n", "2"],
    "qudit_qft3.json": ["qudit", "--circuit", str(DATA / "qft3.circ"), "--p", "3", "--n", "2",
                        "--init", "1,0"],
    "simplex_p4_d2_h3.svg": ["simplex", "--p", "4", "--depth", "2", "--highlight", "3"],
}


def numbers_close(a, b, tol=1e-12):
    """Structural JSON comparison with a float tolerance."""
    if isinstance(a, dict):
        return a.keys() == b.keys() and all(numbers_close(a[k], b[k], tol) for k in a)
    if isinstance(a, list):
        return len(a) == len(b) and all(numbers_close(x, y, tol) for x, y in zip(a, b))
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= tol * max(1.0, abs(a))
    return a == b


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, tmp_path):
    out = tmp_path / name
    assert main(GOLDEN_CASES[name] + ["--out", str(out)]) == 0
    text = out.read_text()
    golden = GOLDEN / name
    if REGEN:
        golden.write_text(text)
    expected = golden.read_text()
    if name.endswith(".json"):
        assert numbers_close(json.loads(text), json.loads(expected))
    else:
        assert text == expected


def test_expand_golden_matches_module_examples():
    lines = (GOLDEN / "expand_12_p2.txt").read_text().splitlines()
    assert lines[0] == "… 0 0 1 1 0 0 . (base 2, valuation 2, precision 4)"
    assert "norm: 1/4" in lines
    lines = (GOLDEN / "expand_minus1_p5.txt").read_text().splitlines()
    assert lines[0].startswith("… 4 4 4 4 4 4 .")
    assert "norm: 0/1" in (GOLDEN / "expand_zero_p3.txt").read_text()


def test_haar_roundtrip_on_bundled_signal(tmp_path):
    pyr = tmp_path / "pyr.json"
    rec = tmp_path / "rec.csv"
    assert main(["haar", "--in", str(DATA / "signal_1024.csv"), "--out", str(pyr)]) == 0
    assert main(["haar-inv", "--in", str(pyr), "--out", str(rec)]) == 0
    original = np.loadtxt(DATA / "signal_1024.csv")
    assert np.max(np.abs(np.loadtxt(rec) - original)) < 1e-12


def test_haar_constant_signal_has_zero_details(tmp_path):
    src = tmp_path / "const.csv"
    src.write_text("3.5\n" * 16)
    out = tmp_path / "pyr.json"
    assert main(["haar", "--in", str(src), "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert all(v == 0 for level in data["details"] for v in level)


def test_haar_padic_roundtrip_is_digit_exact(tmp_path):
    rec = tmp_path / "rec.txt"
    assert main(["haar-inv", "--in", str(GOLDEN / "haar_padic_p3.json"), "--out", str(rec)]) == 0
    original = read_signal_csv((DATA / "padic_8.csv").read_text(), "padic", 3, 8)
    got = [parse_padic(line) for line in rec.read_text().splitlines()]
    assert len(got) == len(original)
    assert all(g.agrees_with(o) for g, o in zip(got, original))


def test_padic_haar_p2_reports_precision_loss(tmp_path, capsys):
    src = tmp_path / "s.csv"
    src.write_text("1\n3\n5\n7\n")
    pyr = tmp_path / "p.json"
    assert main(["haar", "--in", str(src), "--mode", "padic", "--p", "2", "--precision", "2",
                 "--out", str(pyr)]) == 0
    assert main(["haar-inv", "--in", str(pyr)]) == 3
    assert "digit(s) short" in capsys.readouterr().err


def test_cwt_icwt_roundtrip(tmp_path, capsys):
    rec = tmp_path / "rec.json"
    src = DATA / "bandlimited_p2.json"
    assert main(["icwt", "--in", str(GOLDEN / "cwt_bandlimited_p2.json"),
                 "--reference", str(src), "--out", str(rec)]) == 0
    err = capsys.readouterr().err
    assert float(err.split(":")[1]) < 1e-6
    a, b = TestFunction.from_json(rec.read_text()), TestFunction.from_json(src.read_text())
    assert (a - b.refine(a.support, a.resolution)).l2_norm() < 1e-9


def test_cwt_reports_plancherel_ratio(capsys, tmp_path):
    main(["cwt", "--in", str(DATA / "bandlimited_p2.json"), "--out", str(tmp_path / "g.json")])
    assert "plancherel ratio: 1.000000000000" in capsys.readouterr().err


def test_qudit_sign_hadamard_warns_and_fails_measurement(capsys):
    circ = str(DATA / "qutrit_sign.circ")
    assert main(["qudit", "--circuit", circ, "--p", "3", "--n", "1"]) == 3
    err = capsys.readouterr().err
    assert "warning: non-unitary Hadamard" in err
    assert main(["qudit", "--circuit", circ, "--p", "3", "--n", "1", "--renormalize"]) == 0


def test_qudit_bad_circuit_and_init(tmp_path):
    bad = tmp_path / "bad.circ"
    bad.write_text("H 0\nSWAP 0 1\n")
    assert main(["qudit", "--circuit", str(bad), "--p", "2", "--n", "2"]) == 2
    assert main(["qudit", "--circuit", str(DATA / "bell.circ"), "--p", "2", "--n", "2",
                 "--init", "0"]) == 2


def test_qudit_dump_register(tmp_path):
    dump = tmp_path / "reg.json"
    assert main(["qudit", "--circuit", str(DATA / "bell.circ"), "--p", "2", "--n", "2",
                 "--dump", str(dump), "--out", str(tmp_path / "h.json")]) == 0
    amps = [complex(e["re"], e["im"]) for e in json.loads(dump.read_text())]
    assert np.allclose(amps, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_simplex_notice_for_other_primes(capsys):
    assert main(["simplex", "--p", "3", "--depth", "1"]) == 0
    captured = capsys.readouterr()
    assert "notice" in captured.err
    assert "<rect" in captured.out
    assert main(["simplex", "--p", "2", "--depth", "2"]) == 0
    assert "notice" not in capsys.readouterr().err


def test_invalid_inputs_exit_2(capsys):
    assert main(["expand", "1/0", "--p", "3"]) == 2
    assert main(["expand", "1", "--p", "4"]) == 2
    assert main(["kozyrev", "--alpha", "0"]) == 2
    assert main(["haar", "--in", "/nonexistent/file.csv"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["haar"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "padicwave", "expand", "12", "--p", "2",
                           "--precision", "4"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "expand_12_p2.txt").read_text()
