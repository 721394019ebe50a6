import io
import json

import pytest

from ctrldense.cli import main


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_list_states():
    code, out = run(["list-states"])
    assert code == 0 and len(out.strip().splitlines()) == 8


def test_run_ghz_example():
    code, out = run(["run", "--state", "ghz", "--theta", "0.785398", "--outcome", "+", "--msg", "2"])
    assert code == 0
    assert out.strip().splitlines()[-1] == "decoded=2 p_success=1 avg_bits=2"


def test_run_degrees_and_json():
    code, out = run(["run", "--state", "qutrit-ghz", "--theta-deg", "45", "--msg", "3", "--json"])
    doc = json.loads(out)
    assert code == 0 and doc["decoded"] == 3 and doc["success_probability"] == pytest.approx(1)


def test_inconclusive_exit_code():
    code, out = run(["run", "--state", "qutrit-ghz", "--outcome", "slant", "--msg", "1"])
    assert code == 2 and out.strip().endswith("avg_bits=1")


def test_bad_arguments_exit_1(capsys):
    with pytest.raises(SystemExit) as e:
        main(["run", "--state", "ghz", "--msg", "7"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1
    assert run(["run", "--state", "ghz", "--theta", "0.3", "--msg", "0"])[0] == 1
    assert run(["run", "--state", "w4", "--msg", "0"])[0] == 1
    assert "usage" in capsys.readouterr().err


def test_seeded_run_is_byte_identical():
    argv = ["run", "--state", "ghz-type", "--l", "0.5", "--msg", "1", "--seed", "42"]
    assert run(argv) == run(argv)


def test_verify_report():
    code, out = run(["verify"])
    assert code == 0
    b1 = [line for line in out.splitlines() if " B1(" in line]
    passed = [line for line in b1 if line.startswith("PASS")]
    assert len(passed) == 1 and "theta=0.785398" in passed[0]
    assert "RESULT PASS" in out


def test_sweep_and_roundtrip(tmp_path):
    path = tmp_path / "t22.csv"
    code, _ = run(["sweep", "--figure", "t22", "--out", str(path)])
    assert code == 0 and path.read_text().startswith("l,theta,shared_state")
    code, out = run(["roundtrip", "--state", "ghz-type", "--l", "0.5", "--trials", "1000", "--seed", "3"])
    assert code == 0 and "wrong=0" in out
