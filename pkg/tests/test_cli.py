"""Driver-level checks: output shape, determinism, exit codes."""

import json

from thinville.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_analyze_text(capsys):
    rc, out, _ = run(capsys, "analyze", "heisenberg-3", "--exhaustive")
    assert rc == 0
    assert "id: heisenberg-3" in out
    assert "order: 3^3 = 27" in out
    assert "beauville: refuted (exhaustive)" in out


def test_analyze_is_byte_stable(capsys):
    rc1, out1, _ = run(capsys, "analyze", "heisenberg-5", "--exhaustive")
    rc2, out2, _ = run(capsys, "analyze", "heisenberg-5", "--exhaustive")
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_analyze_json(capsys):
    rc, out, _ = run(capsys, "analyze", "elab-5", "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["order"] == 25
    assert data["beauville_status"] == "found"
    assert data["beauville_method"] == "catanese"


def test_beauville_certificate_output(capsys):
    rc, out, _ = run(capsys, "beauville", "heisenberg-5", "--exhaustive")
    assert rc == 0
    assert "beauville: found (exhaustive)" in out
    assert "first-triple:" in out
    assert "second-orders:" in out


def test_beauville_json_roundtrip(capsys):
    rc, out, _ = run(capsys, "beauville", "heisenberg-5", "--exhaustive",
                     "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["status"] == "found"
    assert data["certificate.first.x.order"] == 5


def test_lattice_text(capsys):
    rc, out, _ = run(capsys, "lattice", "heisenberg-3")
    assert rc == 0
    assert "layer 1: width 2" in out
    assert "ends-with-chain: true" in out


def test_lattice_dot(capsys):
    rc, out, _ = run(capsys, "lattice", "heisenberg-3", "--dot")
    assert rc == 0
    assert out.startswith("digraph lattice {")
    assert 'label="N9@layer1"' in out
    assert out.strip().endswith("}")
    rc2, out2, _ = run(capsys, "lattice", "heisenberg-3", "--dot")
    assert out2 == out


def test_formulas_pass(capsys):
    rc, out, _ = run(capsys, "formulas", "--p", "11")
    assert rc == 0
    assert "coefficient-closed-form" in out
    assert "status: pass" in out


def test_formulas_json(capsys):
    rc, out, _ = run(capsys, "formulas", "--p", "5", "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["status"] == "pass"
    assert all(row["failures"] == 0 for row in data["identities"])


def test_formulas_rejects_composite(capsys):
    rc, _, err = run(capsys, "formulas", "--p", "9")
    assert rc == 2
    assert "odd prime" in err


def test_unknown_target_is_usage_error(capsys):
    rc, _, err = run(capsys, "analyze", "does-not-exist")
    assert rc == 2
    assert "unknown catalog target" in err


def test_bad_file_is_assertion_error(tmp_path, capsys):
    src = tmp_path / "broken.pc"
    src.write_text("# expect: order=999\np 3\nn 2\n")
    rc, _, err = run(capsys, "analyze", str(src))
    assert rc == 1
    assert "order" in err


def test_missing_subcommand_is_usage_error(capsys):
    try:
        rc = main([])
    except SystemExit as exc:
        rc = exc.code
    assert rc == 2
