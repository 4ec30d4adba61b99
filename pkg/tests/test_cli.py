import io
import json
import subprocess
import sys
from xml.dom import minidom

import pytest

from morseflow.cli import main


def run(*argv, stdin=None):
    """Run in-process; returns (status, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    old_err, old_in = sys.stderr, sys.stdin
    sys.stderr = err
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        rc = main(list(argv), out)
    finally:
        sys.stderr, sys.stdin = old_err, old_in
    return rc, out.getvalue(), err.getvalue()


def test_validate_example():
    rc, out, _ = run("validate", "{12]0[}[123]{3}")
    assert rc == 0
    assert out.strip() == "P1–P4 satisfied, V=3 E=3 F=2"


def test_validate_invalid():
    rc, out, _ = run("validate", "{12]0[}[12]{3}")
    assert rc == 1
    assert "P1" in out


def test_validate_bifurcation():
    assert run("validate", "SN+^A[123]{12]0[}{3}")[0] == 0


def test_equiv_conversion_example():
    rc, a, _ = run("convert", "--b-to-a", "BDS^B{1}[12(3)]{23]0[}")
    assert rc == 0
    rc, out, _ = run("equiv", "BDS^A{12}{1]0[3}[23]", a.strip())
    assert (rc, out.strip()) == (0, "equivalent")


def test_equiv_negative_and_reversal():
    from morseflow.codec import as_compact, render_compact
    from morseflow.enumeration import reversed_code
    assert run("equiv", "{[1]010}", "{[11]0}")[0] == 1
    # {[1]010} is not self-inverse
    r = render_compact(reversed_code(as_compact("{[1]010}")))
    assert run("equiv", "{[1]010}", r)[0] == 1
    assert run("equiv", "--allow-reversal", "{[1]010}", r)[0] == 0


def test_equiv_kind_mismatch():
    rc, out, err = run("equiv", "SN+^A[123]{12]0[}{3}", "HS+^A{12]0[}[123]{3}")
    assert rc == 1 and "different kinds" in err


def test_equiv_mixed_is_usage_error():
    rc, _, err = run("equiv", "{[]0}", "SN+^A[123]{12]0[}{3}")
    assert rc == 2 and err.startswith("morseflow equiv:")


def test_canon():
    assert run("canon", "{12]0[}[123]{3}")[1].strip() == "{[12]0}[123]{3}"
    rc, out, _ = run("canon", "--reflect", "[123]{3}{12]0[}")
    assert (rc, out.strip()) == (0, "{[12]0}[123]{3}")


def test_parse_error_exit_2():
    rc, out, err = run("canon", "{12")
    assert rc == 2 and out == "" and "UnbalancedBracket" in err


def test_bad_usage_exit_2():
    assert run("frobnicate")[0] == 2
    assert run("enumerate", "--surface", "torus", "--points", "3")[0] == 2
    assert run("table", "--surface", "disk", "--range", "x")[0] == 2


def test_stdin():
    assert run("validate", "-", stdin="{12]0[}[123]{3}\n")[0] == 0


def test_faces():
    rc, out, _ = run("faces", "{12]0[}[123]{3}")
    lines = out.strip().splitlines()
    assert rc == 0 and len(lines) == 3
    assert lines[-1] == "V=3 E=3 F=2"


def test_convert_round_trip():
    rc, b, _ = run("convert", "--a-to-b", "SN+^A[123]{12]0[}{3}")
    assert rc == 0 and b.startswith("SN+^B")
    rc, a, _ = run("convert", "--b-to-a", b.strip())
    assert run("equiv", a.strip(), "SN+^A[123]{12]0[}{3}")[0] == 0


def test_enumerate_json_stable():
    a = run("enumerate", "--surface", "disk", "--points", "5", "--emit", "json")[1]
    b = run("enumerate", "--surface", "disk", "--points", "5", "--emit", "json")[1]
    assert a == b
    data = json.loads(a)
    assert data["count"] == len(data["items"]) == 9
    assert json.dumps(data, sort_keys=True, indent=1) + "\n" == a


def test_enumerate_kind():
    rc, out, _ = run("enumerate", "--surface", "disk", "--points", "3", "--kind", "SN+", "--emit", "count")
    assert (rc, out.strip()) == (0, "1")


def test_enumerate_quotient():
    full = int(run("enumerate", "--surface", "disk", "--points", "6", "--emit", "count")[1])
    half = int(run("enumerate", "--surface", "disk", "--points", "6", "--quotient", "equiv+rev",
                   "--emit", "count")[1])
    assert (full, half) == (24, 14)


def test_enumerate_cylinder_six_example():
    rc, out, _ = run("enumerate", "--surface", "cylinder", "--points", "6", "--emit", "count")
    assert rc == 0
    assert out.strip() == "14"


def test_table_csv():
    rc, out, _ = run("table", "--surface", "disk", "--range", "3..4", "--csv")
    lines = out.strip().splitlines()
    assert rc == 0 and len(lines) == 3
    assert lines[1].startswith("disk,3,")


@pytest.mark.parametrize("code", ["{12]0[}[123]{3}", "SN+^A[123]{12]0[}{3}", "SC{12]0[}[2]"])
def test_render(code, tmp_path):
    rc, dot, _ = run("render", code)
    assert rc == 0 and dot.rstrip().endswith("}")
    path = tmp_path / "x.svg"
    assert run("render", code, "--format", "svg", "--out", str(path))[0] == 0
    minidom.parse(str(path))


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "morseflow.cli", "validate", "{[]0}"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "V=1" in p.stdout
