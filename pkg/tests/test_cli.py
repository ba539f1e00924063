import io
import json
import subprocess
import sys

import pytest

from kappaforms.cli import build_parser, main

FIELDS = {"check_id", "params", "status", "residual", "paper_anchor"}


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_defaults():
    args = build_parser().parse_args(["eval", "1"])
    assert (args.n, args.order, args.family, str(args.c), args.format) == (4, 6, "d1", "1", "text")


def test_act_example():
    code, out = run(["act", "M[1,0]", "xhat[0]*xhat[1]"])
    assert code == 0
    assert out.strip() == "-i*a0*xhat[0] - xhat[0]*xhat[0] - xhat[1]*xhat[1]"


def test_act_structured_and_forms():
    code, out = run(["act", "Mt[1,0]", "xi[0]", "--n", "3", "--order", "3", "--format", "structured"])
    assert code == 0
    rec = json.loads(out)
    assert rec["result"] == "-xi[1]" and rec["family"] == "d1"


def test_eval_shift_series():
    code, out = run(["eval", "Z^(1/2)*Z^(1/2)", "--order", "3"])
    assert code == 0
    assert out.strip() == "1 - i*a0*del[0] - 1/2*a0*a0*del[0]*del[0] + 1/6*i*a0*a0*a0*del[0]*del[0]*del[0]"


def test_eval_structured():
    code, out = run(["eval", "xhat[0]*xhat[1]", "--format", "structured"])
    rec = json.loads(out)
    assert code == 0 and rec["kind"] == "nc" and rec["result"] == "i*a0*xhat[1] + xhat[1]*xhat[0]"


@pytest.mark.parametrize("argv", [
    ["eval", "xhat[0]*xi[3"],
    ["eval", "x[0] + xhat[0]"],
    ["eval", "1", "--c", "0.5"],
    ["eval", "1", "--n", "1"],
    ["check", "nope"],
    ["act", "p[1]", "xhat[0]"],
    ["act", "M[1,0]", "x[0]"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2


def test_parse_error_message(capsys):
    run(["eval", "xhat[0]*xi[3"])
    assert "position 12" in capsys.readouterr().err


def test_check_text_summary():
    code, out = run(["check", "d1", "--c", "2", "--n", "3", "--order", "3"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[-1].endswith("0 failed, 1 findings")
    assert any(line.startswith("PASS d1.family_relations [n=3 N=3 family=d1 c=2]") for line in lines)


def test_check_structured_fields_and_findings():
    code, out = run(["check", "phi", "--n", "2", "--order", "3", "--format", "structured"])
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert all(set(r) == FIELDS for r in recs)
    assert [r["check_id"] for r in recs] == ["finding.phi_identity"] * 2
    assert all("holds" in r["residual"] for r in recs)


def test_check_is_deterministic_given_seed():
    argv = ["check", "jacobi", "--n", "2", "--order", "2", "--samples", "5", "--seed", "3", "--format", "structured"]
    assert run(argv) == run(argv)


def test_findings_do_not_fail_the_run():
    # the printed compatibility form fails as a finding; the exit code stays 0
    code, out = run(["check", "d2", "--n", "2", "--order", "2"])
    assert code == 0
    assert "FAIL finding.compatibility" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kappaforms", "eval", "del[0]*x[0]", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "-1 + x[0]*del[0]"
