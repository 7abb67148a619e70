import csv
import io
import json
import shutil
import subprocess
from pathlib import Path

import pytest

from bundleinterp.classify import Region, elliptic_weak, scan
from bundleinterp.cli import main, parse_range
from bundleinterp.plotting import region_svg, save_region_plot

GOLDEN = Path(__file__).parent / "data" / "elliptic_d7-20_n5-12.csv"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def last_line(text):
    return text.strip().splitlines()[-1]


def test_decide(capsys):
    code, out, _ = run(capsys, "decide", "--bundle", "1,1", "--lambda", "2,2")
    assert code == 0 and last_line(out) == "true"
    assert out.startswith("# bundleinterp") and "seed=0" in out and "GF(10007)" in out and "trials=8" in out
    code, out, _ = run(capsys, "decide", "--bundle", "2,0", "--kind", "regular")
    assert code == 1 and last_line(out) == "false"
    assert "(2,2) not <= (2,1,1)" in out
    assert run(capsys, "decide", "--bundle", "x", "--lambda", "1")[0] == 2
    assert run(capsys, "decide", "--bundle", "1,1", "--lambda", "3")[0] == 2
    assert run(capsys, "decide", "--bundle", "1,1")[0] == 2


def test_decide_strong_json(capsys):
    code, out, _ = run(capsys, "decide", "--bundle", "2,1", "--kind", "strong", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["value"] is True and data["config"]["trials"] == 8
    assert len(data["verdicts"]) == 12  # partitions in a 2 x 5 box of size <= 5


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--bundle", "1,1", "--lambda", "2,2", "--seed", "42", "--prime", "10007")
    assert code == 0 and last_line(out) == "true"
    witness = json.loads(next(l for l in out.splitlines() if l.startswith("witness "))[8:])
    assert witness["h0_drop"] == 4 and witness["seed"] == 42 and witness["schema"] == "v1"
    code, out, _ = run(capsys, "oracle", "--bundle", "2,0", "--lambda", "2,2", "--trials", "64")
    assert code == 1 and "caveat:" in out and "combinatorial cross-check: false" in out
    assert run(capsys, "oracle", "--prime", "10")[0] == 2
    assert run(capsys, "oracle", "--trials", "0")[0] == 2


def test_oracle_rational_and_env(capsys, monkeypatch):
    code, out, _ = run(capsys, "oracle", "--prime", "rational", "--trials", "2")
    assert code == 0 and "field=QQ" in out
    monkeypatch.setenv("BUNDLEINTERP_PRIME", "101")
    code, out, _ = run(capsys, "oracle")
    assert "field=GF(101)" in out
    monkeypatch.setenv("BUNDLEINTERP_PRIME", "100")
    assert run(capsys, "oracle")[0] == 2


def test_output_is_byte_stable(capsys):
    first = run(capsys, "oracle", "--bundle", "3,1,0", "--lambda", "3,2,1", "--seed", "5", "--format", "json")
    second = run(capsys, "oracle", "--bundle", "3,1,0", "--lambda", "3,2,1", "--seed", "5", "--format", "json")
    assert first == second


def test_scan_golden_csv(capsys):
    code, out, _ = run(capsys, "scan", "elliptic", "--d", "7..20", "--n", "5..12", "--format", "csv")
    assert code == 0
    assert out == GOLDEN.read_text()


def test_golden_csv_matches_congruence_condition():
    rows = list(csv.DictReader(io.StringIO(GOLDEN.read_text())))
    assert len(rows) == 14 * 8
    for r in rows:
        d, n = int(r["d"]), int(r["g_or_n"])
        expected = d >= n + 1 and 3 <= (2 * d) % (n - 1) <= n - 2
        assert (r["status"] == "true") == expected


def test_scan_space_and_hilbert(capsys):
    code, out, _ = run(capsys, "scan", "space", "--d", "3..12", "--g", "0..8", "--format", "csv")
    assert code == 0 and '5,2,"PARTIAL(2,2,2,2,2,2,2,2,2)"' in out
    code, out, _ = run(capsys, "scan", "hilbert", "--d", "1..2", "--g", "5..5", "--n", "3")
    assert code == 0 and out.count("UNKNOWN") == 2
    assert run(capsys, "scan", "elliptic", "--d", "9..3", "--n", "5")[0] == 2
    assert run(capsys, "scan", "elliptic", "--d", "7..9")[0] == 2
    assert run(capsys, "scan", "space", "--d", "a..b", "--g", "1")[0] == 2


def test_scan_json_and_figure(capsys, tmp_path):
    fig = tmp_path / "space.png"
    code, out, _ = run(capsys, "scan", "space", "--d", "3..6", "--g", "0..3", "--format", "json", "--figure", str(fig))
    assert code == 0 and json.loads(out)["region"] == "space"
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_scan_svg_deterministic(capsys, tmp_path):
    a = run(capsys, "scan", "elliptic", "--d", "7..12", "--n", "5..8", "--format", "svg")[1]
    b = run(capsys, "scan", "elliptic", "--d", "7..12", "--n", "5..8", "--format", "svg")[1]
    assert a == b and a.lstrip().startswith("<?xml") and "<svg" in a


def test_region_svg_direct(tmp_path):
    rows = scan(Region.HILBERT, range(3, 8), range(0, 4))
    svg = region_svg(rows, Region.HILBERT)
    assert svg == region_svg(rows, Region.HILBERT)
    out = tmp_path / "h.svg"
    save_region_plot(rows, Region.HILBERT, out)
    assert out.read_text() == svg
    with pytest.raises(ValueError):
        region_svg([], Region.HILBERT)


def test_report(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "--outdir", str(tmp_path), "--formats", "svg")
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["elliptic.csv", "elliptic.svg", "hilbert.csv", "hilbert.svg", "quintic_audit.json", "space.csv", "space.svg"]
    assert (tmp_path / "elliptic.csv").read_text().startswith("d,g_or_n,status,citation\n")


def test_surface(capsys):
    code, out, _ = run(capsys, "surface", "fn", "--n", "3", "--k", "2")
    assert code == 0 and last_line(out) == "F1"
    assert all(json.loads(l)["surface"] for l in out.strip().splitlines()[:-1])
    code, out, _ = run(capsys, "surface", "p3secants", "--d", "3", "--k", "2")
    assert code == 0 and last_line(out) == "8,6"
    code, out, _ = run(capsys, "surface", "k1", "--points", "0,0", "1,1", "2,4", "3,9", "--k", "1")
    assert code == 1 and last_line(out) == "false"
    code, out, _ = run(capsys, "surface", "k1", "--points", "1,4", "4,1", "2,9", "9,2", "--k", "1")
    assert code == 0 and last_line(out) == "true"
    code, out, _ = run(capsys, "surface", "modify", "--n", "2", "--kinds", "general,on_neg_section")
    assert code == 0 and last_line(out) == "F2"
    assert run(capsys, "surface", "modify", "--n", "2", "--kinds", "sideways")[0] == 2
    assert run(capsys, "surface", "modify", "--n", "0", "--kinds", "on_neg_section")[0] == 2
    assert run(capsys, "surface", "k1", "--points", "0,0", "1,1", "--k", "1")[0] == 2
    code, out, _ = run(capsys, "surface", "pullback", "--d", "4")
    assert code == 0 and last_line(out) == "0"


def test_elliptic_and_quintic(capsys):
    code, out, _ = run(capsys, "elliptic", "--d", "9", "--n", "6")
    assert code == 0 and "closed-form=true pipeline=true" in out
    assert run(capsys, "elliptic", "--d", "8", "--n", "3")[0] == 1
    assert run(capsys, "elliptic", "--d", "4", "--n", "6")[0] == 2
    code, out, _ = run(capsys, "elliptic", "--d", "7", "--normal")
    assert code == 0 and "tail=(2,2)" in out
    code, out, _ = run(capsys, "quintic")
    assert code == 0 and json.loads(out)["h0_N"] == 20


def test_classify_and_modify(capsys):
    code, out, _ = run(capsys, "classify", "--bundle", "8,6")
    assert code == 1 and "regular=false" in out
    code, out, _ = run(capsys, "modify", "--bundle", "4,3,2,2", "--lambda", "3")
    assert code == 0 and last_line(out) == "3,2,2,1"


def test_usage_errors(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "decide", "--bundle", "1", "--lambda", "1", "--seed", str(2**70))[0] == 2


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]
    assert parse_range("4") == [4]
    assert parse_range("5..3") == []


def test_elliptic_cli_agrees_with_closed_form(capsys):
    for d in range(7, 21):
        for n in range(5, 13):
            if d < n + 1:
                continue
            code = main(["elliptic", "--d", str(d), "--n", str(n)])
            assert code == (0 if elliptic_weak(d, n) else 1)
    capsys.readouterr()


@pytest.mark.skipif(shutil.which("bundleinterp") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["bundleinterp", "surface", "fn", "--n", "0", "--k", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip().splitlines()[-1] == "F1"
