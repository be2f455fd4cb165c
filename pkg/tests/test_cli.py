import json

import pytest

from modlie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_theorem_text(capsys):
    code, out, _ = run(capsys, "verify", "theorem")
    assert code == 0 and "verdict: PASS" in out


def test_theorem_json(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--format", "json", "--seed", "0")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_theorem_p5_fails(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--p", "5")
    assert code == 1 and "verdict: FAIL" in out


def test_theorem_negative_f(capsys):
    code, _, _ = run(capsys, "verify", "theorem", "--f", "f_2342")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["verify", "theorem", "--p", "4"],
    ["verify", "theorem", "--format", "xml"],
    ["verify", "ermolaev", "--n", "1", "--p", "3"],
    ["verify", "ermolaev", "--n", "0,1", "--p", "3"],
    ["grade", "--cocharacter", "1,2,3"],
    ["grade", "--cocharacter", "2,2,0,2", "--type", "Z3"],
    ["grade", "--cocharacter", "2,2,0,2", "--subalgebra", "e_4444"],
    ["dump-structure-constants", "--type", "F4", "--p", "6"],
    ["nonsense"],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_verify_ermolaev(capsys):
    code, out, _ = run(capsys, "verify", "ermolaev", "--n", "1,1", "--p", "3")
    assert code == 0 and "verdict: PASS" in out
    code, _, _ = run(capsys, "verify", "ermolaev", "--n", "1,1", "--p", "5")
    assert code == 0


def test_ermolaev_summary(capsys):
    code, out, _ = run(capsys, "ermolaev", "--n", "1,1", "--p", "3", "--alpha", "1")
    frag = json.loads(out)
    assert code == 0 and frag["derived_dim"] == 26


def test_grade(capsys):
    code, out, _ = run(capsys, "grade", "--cocharacter", "2,2,0,2", "--subalgebra", "L")
    assert code == 0 and "-14" in out
    code, out, _ = run(capsys, "grade", "--cocharacter", "1,0,0,0", "--subalgebra",
                       "e_1000+e_0100")
    assert code == 1 and "not homogeneous" in out


def test_dump(capsys):
    code, out, _ = run(capsys, "dump-structure-constants", "--type", "F4", "--p", "3")
    assert code == 0
    again = run(capsys, "dump-structure-constants", "--type", "F4", "--p", "3")[1]
    assert out == again and out.count("\n") > 52
