from __future__ import annotations

import pytest

from gen import FIXTURES
from railknotoids.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return FIXTURES / name


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", fx("trivial.rkd"))
    assert code == 0 and out.strip() == "ok"
    code, out, _ = run(capsys, "validate", fx("figure1.arc"))
    assert code == 0 and "ok" in out


def test_project_reports_crossings(capsys):
    code, out, _ = run(capsys, "project", fx("figure1.arc"))
    assert code == 0
    assert "# crossings: 2 (2 arc, 0 rail)" in out
    code, out, _ = run(capsys, "project", "--plane", "perp", fx("figure6.arc"))
    assert out.startswith("knd v1") and "# crossings: 2" in out


def test_equiv_trivial_kink(capsys):
    code, out, _ = run(capsys, "equiv", fx("trivial.rkd"), fx("kink.rkd"), "--max-crossings", 2, "--max-depth", 3)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "CONNECTED" and len(lines) == 2


def test_equiv_not_found(capsys, tmp_path):
    code, out, _ = run(capsys, "project", fx("x2x1.arc"))
    w = tmp_path / "w.rkd"
    w.write_text(out)
    code, out, _ = run(capsys, "equiv", fx("trivial.rkd"), w, "--max-crossings", 4, "--max-depth", 3)
    assert code == 3 and out.startswith("NOT_FOUND")


def test_invariants(capsys):
    assert run(capsys, "invariant", fx("trivial.rkd"), "--kind", "f2")[1].strip() == "ε"
    assert run(capsys, "invariant", fx("x2x1.arc"), "--kind", "f2")[1].strip() == "x2 x1"
    assert run(capsys, "invariant", fx("kink.knd"), "--kind", "bracket")[1].strip() == "1*A^0"
    assert run(capsys, "invariant", fx("kink.knd"), "--kind", "writhe")[1].strip() in ("1", "-1")


def test_simplify_kink(capsys):
    code, out, _ = run(capsys, "simplify", fx("kink.rkd"))
    body = "".join(ln + "\n" for ln in out.splitlines() if not ln.startswith("#"))
    assert body == fx("trivial.rkd").read_text()


def test_moves_list_and_apply(capsys):
    code, out, _ = run(capsys, "moves", "list", fx("kink.rkd"))
    sites = out.strip().splitlines()
    assert code == 0 and any(s.startswith("O1-") for s in sites)
    site = next(s for s in sites if s.startswith("O1-"))
    code, out, _ = run(capsys, "moves", "apply", fx("kink.rkd"), "--site", site)
    assert code == 0 and out == fx("trivial.rkd").read_text()
    code, _, err = run(capsys, "moves", "apply", fx("trivial.rkd"), "--site", "O1- 0")
    assert code == 1 and err.startswith("error:")


def test_theta_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "theta", "to", fx("kink.rkd"))
    t = tmp_path / "k.thd"
    t.write_text(out)
    _, out, _ = run(capsys, "theta", "from", t)
    assert out == fx("kink.rkd").read_text()


def test_random_commands(capsys, tmp_path):
    code, arc, _ = run(capsys, "random-arc", "--segments", 5, "--seed", 3)
    assert code == 0 and arc.startswith("rail-arc v1")
    p = tmp_path / "a.arc"
    p.write_text(arc)
    code, out, _ = run(capsys, "random-isotopy", p, "--steps", 3, "--seed", 1)
    assert code == 0 and len([ln for ln in out.splitlines() if ln.startswith("# ")]) == 3
    code, out, _ = run(capsys, "perturb", p, "--seed", 2)
    assert out == arc


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", fx("straight.arc"), "--move", "SUBDIVIDE 0 1/2 1 1/2")
    assert code == 0 and out == ""


def test_render(capsys, tmp_path):
    out_file = tmp_path / "t.svg"
    code, out, _ = run(capsys, "render", fx("trivial.rkd"), "-o", out_file)
    assert code == 0 and out == "" and out_file.read_text().startswith("<svg")


def test_domain_errors_exit_1(capsys, tmp_path):
    assert run(capsys, "validate", tmp_path / "missing.rkd")[0] == 1
    bad = tmp_path / "bad.arc"
    bad.write_text("rail-arc v1\nv 0 0 0\nv 1/0 0 0\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == 1 and "line 3, column 3" in err
    assert run(capsys, "invariant", fx("trivial.rkd"), "--kind", "bracket")[0] == 1


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["random-arc", "--segments", "3"])
    assert e.value.code == 2
