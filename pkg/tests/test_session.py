import json
import random

import pytest

from strata import cli
from strata.session import SessionError, elaborate, format_session, parse_session, run_session

SHIPPED = cli.shipped_sessions()

SMALL = """\
field QQ
ring R = [x, y]
complex K = koszul R : x, y
complex C over R
  rank -1 1
  rank 0 1
  d -1 [[x*y]]
end
support K expect (x, y)
support C expect (x*y)
support-equal K K expect yes
cohomology K expect degrees 0
"""


def test_shipped_sessions_listed():
    assert len(SHIPPED) >= 6


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_session_round_trip(name):
    s = parse_session(cli.shipped_session_text(name))
    text = format_session(s)
    assert parse_session(text) == s
    assert format_session(parse_session(text)) == text


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_session_passes(name):
    s = parse_session(cli.shipped_session_text(name))
    report = run_session(s)
    bad = [r for r in report["commands"] if r["status"] != "pass"]
    assert not bad, bad


def _generated_session(rng: random.Random) -> str:
    vs = rng.choice([["x"], ["x", "y"], ["a", "b", "c"]])
    lines = [rng.choice(["field QQ", "field GF(7)"]), f"option seed {rng.randint(0, 99)}", f"ring R = [{', '.join(vs)}]"]
    for i in range(rng.randint(1, 3)):
        els = ", ".join(rng.choice(vs) + rng.choice(["", "^2", "*" + rng.choice(vs)]) for _ in range(rng.randint(1, 2)))
        lines.append(f"complex K{i} = koszul R : {els}")
        lines.append(f"support K{i}")
    lines.append(f"closed Z over R = ({vs[0]}); ({vs[-1]})")
    lines.append("thick-member K0 Z")
    lines.append("cohomology K0 window -2..0")
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("seed", range(20))
def test_generated_round_trip(seed):
    text = _generated_session(random.Random(seed))
    s = parse_session(text)
    out = format_session(s)
    assert parse_session(out) == s
    elaborate(s)


def test_small_session_runs():
    report = run_session(parse_session(SMALL))
    assert report["summary"] == {"pass": 4, "fail": 0, "error": 0, "budget": 0}
    assert report["oracle_crosscheck"]
    assert all(o["agree"] for o in report["oracle_crosscheck"])


def test_failed_expectation_is_reported():
    report = run_session(parse_session(SMALL.replace("expect (x*y)", "expect (x)")))
    assert report["summary"]["fail"] == 1


def test_unknown_identifier_is_named():
    with pytest.raises(SessionError) as exc:
        elaborate(parse_session(SMALL + "support Q\n"))
    assert "'Q'" in str(exc.value) and exc.value.line == 13
    with pytest.raises(SessionError) as exc:
        elaborate(parse_session("field QQ\nring R = [x]\ncomplex K = koszul R : x, zz\n"))
    assert "zz" in str(exc.value) and exc.value.line == 3


def test_syntax_error_has_line_and_column():
    with pytest.raises(SessionError) as exc:
        parse_session("field QQ\nring R = [x]\nfrobnicate R\n")
    assert exc.value.line == 3 and exc.value.column == 1
    assert str(exc.value).startswith("line 3, column 1:")
    with pytest.raises(SessionError) as exc:
        parse_session("field QQ\nring R = [x]\ncomplex C over R\n  rank 0 1\n")
    assert "end" in str(exc.value)


def test_json_is_deterministic():
    s = parse_session(cli.shipped_session_text("conservativity.strata"))
    a = json.dumps(run_session(s), sort_keys=True)
    b = json.dumps(run_session(parse_session(cli.shipped_session_text("conservativity.strata"))), sort_keys=True)
    assert a == b


def test_parallel_matches_sequential():
    s = parse_session(cli.shipped_session_text("koszul_support_h0.strata"))
    assert run_session(s, jobs=1) == run_session(s, jobs=3)


def test_cli_exit_codes(tmp_path, capsys):
    ok = tmp_path / "ok.strata"
    ok.write_text(SMALL)
    assert cli.main(["run", str(ok), "--quiet"]) == 0
    bad = tmp_path / "bad.strata"
    bad.write_text(SMALL.replace("expect (x*y)", "expect (y)"))
    assert cli.main(["run", str(bad), "--quiet"]) == 1
    assert cli.main(["run", str(tmp_path / "missing.strata")]) == 2
    broken = tmp_path / "broken.strata"
    broken.write_text("field QQ\nring R = [x\n")
    assert cli.main(["run", str(broken)]) == 2
    assert cli.main(["bogus"]) == 2
    assert cli.main(["run", "shipped:koszul_support_h0.strata", "--quiet", "--spair-budget", "1"]) == 3


def test_cli_json_output(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["run", "shipped:ext_pattern.strata", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["summary"]["fail"] == 0
    text = capsys.readouterr().out
    assert "[PASS]" in text and "passed" in text


def test_cli_format_and_list(capsys):
    assert cli.main(["list"]) == 0
    assert "tensor_law.strata" in capsys.readouterr().out
    assert cli.main(["format", "shipped:tensor_law.strata"]) == 0
    text = capsys.readouterr().out
    assert parse_session(text) == parse_session(cli.shipped_session_text("tensor_law.strata"))
