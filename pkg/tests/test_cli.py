import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from mapvir.cli import main
from mapvir.scalars import format_scalar, parse_scalar


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def dual_algebra(tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps(
        {"kind": "product_local", "factors": [{"point": "0", "order": 2}]}))
    return str(path)


@pytest.fixture
def dual_phi(tmp_path):
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(
        {"d0": {"1": "3", "t": "0"}, "c": {"1": "1/2", "t": "0"}}))
    return str(path)


def test_bracket_example(capsys):
    code, out, _ = run_cli(capsys, "bracket", "d[2]*1", "d[-2]*1")
    assert code == 0
    assert out.strip() == "-4*d[0] + 1/2*c"


def test_bracket_with_coefficients(capsys, dual_algebra):
    code, out, _ = run_cli(capsys, "bracket", "-A", dual_algebra,
                           "d[1]*(t)", "d[-1]*(1)")
    assert code == 0
    assert out.strip() == "-2*(d[0]*(t))".replace("-2*(d[0]*(t))", "d[0]*(-2*t)")


def test_verma_dims_example(capsys):
    code, out, _ = run_cli(capsys, "verma", "--dims", "-n", "5")
    assert code == 0
    assert out.strip() == "1 1 2 3 5 7"


def test_verma_quotient_dims(capsys, tmp_path):
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps({"d0": {"1": "5/7"}, "c": {"1": "2"}}))
    code, out, _ = run_cli(capsys, "verma", "--quotient-dims", "-n", "4",
                           "-phi", str(phi))
    assert code == 0
    assert out.strip() == "1 1 2 3 5"


def test_verma_singular(capsys, dual_algebra, dual_phi):
    code, out, _ = run_cli(capsys, "verma", "--singular", "-n", "1",
                           "-A", dual_algebra, "-phi", dual_phi,
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 1
    assert payload["vectors"] == ["(d[-1]*t) v"]


def test_check_reducible_example(capsys, dual_algebra, dual_phi):
    code, out, _ = run_cli(capsys, "check", "--reducible",
                           "-A", dual_algebra, "-phi", dual_phi)
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "reducible_certified"
    assert payload["witness"] == "(t)"
    assert payload["metadata"]["algebra"]["kind"] == "product_local"


def test_check_quasifinite_polynomial(capsys, tmp_path):
    alg = tmp_path / "poly.json"
    alg.write_text(json.dumps({"kind": "polynomial", "window": [0, 32]}))
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps({
        "d0_seq": [format_scalar(F(2) ** k) for k in range(9)],
        "c_seq": ["0"] * 9,
        "exact_ideal": "t - 2"}))
    code, out, _ = run_cli(capsys, "check", "--quasifinite",
                           "-A", str(alg), "-phi", str(phi))
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "quasifinite_certified"
    assert payload["witness"] == "(t - 2)"


def test_split(capsys, tmp_path):
    alg = tmp_path / "a.json"
    alg.write_text(json.dumps({"kind": "product_local",
                               "factors": [{"point": "0", "order": 1},
                                           {"point": "1", "order": 1}]}))
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps({"d0": {"1": "5", "t": "2"}, "c": {}}))
    code, out, _ = run_cli(capsys, "split", "-A", str(alg), "-phi", str(phi))
    assert code == 0
    payload = json.loads(out)
    weights = [c["functional"]["d0"].get("1", "0") for c in payload["components"]]
    assert weights == ["3", "2"]


def test_module_weights_tsv(capsys, tmp_path):
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"variant": "int_series_eval", "a": "1/2",
                               "b": "1/3", "window": [-20, 20]}))
    code, out, _ = run_cli(capsys, "module", "-M", str(mod),
                           "--weights", "--offsets=-2:2", "--format", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "offset\tweight\tmultiplicity"
    assert lines[1].split("\t") == ["-2", "-7/6", "1"]


def test_module_annihilator(capsys, tmp_path):
    alg = tmp_path / "a.json"
    alg.write_text(json.dumps({"kind": "product_local",
                               "factors": [{"point": "0", "order": 1},
                                           {"point": "1", "order": 1}]}))
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"variant": "int_series_eval", "a": "1/2",
                               "b": "1/3", "point": "0", "window": [-10, 10]}))
    code, out, _ = run_cli(capsys, "module", "-M", str(mod), "-A", str(alg),
                           "--annihilator")
    assert code == 0
    payload = json.loads(out)
    assert payload["annihilator"]["support"] == ["0"]
    assert payload["annihilator"]["annihilator_generators"] == ["t"]


def test_module_trichotomy(capsys, tmp_path):
    phi = tmp_path / "phi.json"
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"variant": "verma",
                               "functional": {"d0": {"1": "2"}, "c": {}}}))
    code, out, _ = run_cli(capsys, "module", "-M", str(mod), "--trichotomy",
                           "--offsets=-6:2")
    assert code == 0
    payload = json.loads(out)
    assert payload["trichotomy"]["shape"] == "truncated_above"


def test_classify(capsys, tmp_path):
    alg = tmp_path / "a.json"
    alg.write_text(json.dumps({"kind": "product_local",
                               "factors": [{"point": "0", "order": 1},
                                           {"point": "1", "order": 1}]}))
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps({"d0": {"1": "5", "t": "2"}, "c": {}}))
    code, out, _ = run_cli(capsys, "classify", "-A", str(alg), "-phi", str(phi),
                           "--explain")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "hw_tensor_of_generalized_evals"
    assert [c["point"] for c in payload["components"]] == ["0", "1"]
    assert payload["idempotents"] == ["-t + 1", "t"]


def test_selftest_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "selftest", "--seed", "3")
    code2, out2, _ = run_cli(capsys, "selftest", "--seed", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "seed 3" in out1


def test_reports_byte_identical(capsys, dual_algebra, dual_phi):
    _, out1, _ = run_cli(capsys, "check", "--reducible",
                         "-A", dual_algebra, "-phi", dual_phi)
    _, out2, _ = run_cli(capsys, "check", "--reducible",
                         "-A", dual_algebra, "-phi", dual_phi)
    assert out1 == out2


def test_emitted_rationals_roundtrip(capsys, dual_algebra, dual_phi):
    _, out, _ = run_cli(capsys, "check", "--reducible",
                        "-A", dual_algebra, "-phi", dual_phi)
    payload = json.loads(out)

    def scan(node):
        if isinstance(node, dict):
            for v in node.values():
                scan(v)
        elif isinstance(node, list):
            for v in node:
                scan(v)
        elif isinstance(node, str):
            try:
                q = parse_scalar(node)
            except ValueError:
                return
            assert format_scalar(q) == node or node != node.strip()

    scan(payload)


def test_exit_code_validation_error(capsys, tmp_path):
    code, _, err = run_cli(capsys, "check", "--reducible",
                           "-phi", str(tmp_path / "missing.json"))
    assert code == 1
    assert "error" in err


def test_exit_code_window_overflow(capsys, tmp_path):
    alg = tmp_path / "poly.json"
    alg.write_text(json.dumps({"kind": "polynomial", "window": [0, 2]}))
    code, _, err = run_cli(capsys, "bracket", "-A", str(alg),
                           "d[1]*(t^2)", "d[-1]*(t)")
    assert code == 2
    assert "window" in err.lower()


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "mapvir.cli", "bracket",
                           "d[2]*1", "d[-2]*1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "-4*d[0] + 1/2*c"
