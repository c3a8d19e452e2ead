import io
import json

import pytest

from sing2cob.algebra import dumps_twin, universal_twin
from sing2cob.cli import main
from sing2cob import linalg as la


@pytest.fixture
def write(tmp_path):
    def _write(text, name="d.scob"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys, write):
    code, out, _ = run(capsys, "check", write("(mW|id:1) ; mW"))
    assert code == 0 and "111 -> 1" in out
    code, _, err = run(capsys, "check", write("z ; z"))
    assert code == 2 and "offset 2" in err
    code, _, err = run(capsys, "check", write(""))
    assert code == 2 and "empty" in err
    code, _, err = run(capsys, "check", "/nonexistent/file.scob")
    assert code == 2


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("uC ; eC"))
    code, out, _ = run(capsys, "check", "-")
    assert code == 0 and "- -> -" in out


def test_invariants(capsys, write):
    code, out, _ = run(capsys, "invariants", "--json", write("uC ; dC ; mC ; eC"))
    data = json.loads(out)
    assert code == 0
    assert data["components"] == [{"boundary": [], "biwebs": [], "closed": True, "genus": 1}]
    code, out, _ = run(capsys, "invariants", "--json", write("id:1"))
    assert json.loads(out)["sigma"] == "(1 2)"
    code, out, _ = run(capsys, "invariants", write("z"))
    assert "sigma: ()" in out


def test_normalize(capsys, write):
    code, out, _ = run(capsys, "normalize", "--json", write("z ; zs"))
    assert code == 0
    assert json.loads(out) == {"normal_form": "(-i) * id:0", "scalar": "-i", "term": "id:0"}
    code, out, _ = run(capsys, "normalize", write("mW | id:1 ; mW"))
    assert out.splitlines() == ["scalar: 1", "term: mW | id:1 ; mW"]
    code, out, err = run(capsys, "normalize", "--json", write("uC ; eC"))
    assert code == 3
    assert json.loads(out)["error"] == "scalar-indeterminate"


def test_normalize_other_algebra(capsys, write):
    code, out, _ = run(capsys, "normalize", "--algebra", "trunc:3", write("z ; zs"))
    assert code == 0 and "consistent under trunc:3: yes" in out


def test_normalize_lincomb(capsys, write):
    code, out, _ = run(capsys, "normalize", write("z ; zs + 2 * id:0"))
    assert code == 0 and out.strip() == "(2-i) * id:0"


def test_equal(capsys, write):
    a, b = write("(mW|id:1) ; mW", "a.scob"), write("(id:1|mW) ; mW", "b.scob")
    code, out, _ = run(capsys, "equal", a, b)
    assert (code, out.strip()) == (0, "equal")
    a, b = write("z ; zs", "a.scob"), write("id:0", "b.scob")
    code, out, _ = run(capsys, "equal", "--json", a, b)
    assert code == 0 and json.loads(out) == {"verdict": "equal-up-to-scalar", "scalar": "-i"}
    a, b = write("uC ; eC", "a.scob"), write("uC ; dC ; mC ; eC", "b.scob")
    code, out, _ = run(capsys, "equal", a, b)
    assert (code, out.strip()) == (1, "not-equal")
    a, b = write("z", "a.scob"), write("id:0", "b.scob")
    assert run(capsys, "equal", a, b)[0] == 2


def test_eval(capsys, write):
    code, out, _ = run(capsys, "eval", "--json", write("dC ; mC"))
    assert code == 0
    assert json.loads(out) == {"algebra": "universal", "rows": 2, "cols": 2,
                               "entries": [["-h", "2*a"], ["2", "h"]]}
    code, out, _ = run(capsys, "eval", "--algebra", "trunc:2", write("uC ; dC ; mC ; eC"))
    assert code == 0 and "[ 2 ]" in out


def test_axioms(capsys, tmp_path):
    for alg in ("universal", "trunc:2", "trunc:5"):
        code, out, _ = run(capsys, "axioms", "--json", "--algebra", alg)
        data = json.loads(out)
        assert code == 0 and data["passed"]
    t = universal_twin()
    bad = t.__class__(t.C, t.W, t.z, la.scale(2, t.zstar), name="bad")
    path = tmp_path / "bad.json"
    path.write_text(dumps_twin(bad))
    code, out, _ = run(capsys, "axioms", "--algebra", str(path))
    assert code == 1 and "isomorphism-C" in out
    code, _, err = run(capsys, "relations", "--algebra", str(path))
    assert code == 2 and "fails" in err


def test_bad_algebra_selector(capsys):
    assert run(capsys, "axioms", "--algebra", "trunc:1")[0] == 2
    assert run(capsys, "axioms", "--algebra", "trunc:x")[0] == 2
    assert run(capsys, "axioms", "--algebra", "/no/such.json")[0] == 2


def test_relations(capsys):
    code, out, _ = run(capsys, "relations", "--algebra", "trunc:2")
    assert code == 0 and "local-zip-cozip" in out


def test_fuzz_small(capsys):
    code, out, _ = run(capsys, "fuzz", "--json", "--count", "10", "--steps", "5", "--seed", "3")
    data = json.loads(out)
    assert code == 0 and data["failures"] == 0 and data["count"] == 10
    again = run(capsys, "fuzz", "--json", "--count", "10", "--steps", "5", "--seed", "3")[1]
    assert again == out
    assert run(capsys, "fuzz", "--count", "-1")[0] == 2


def test_usage(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "--help")[0] == 0
