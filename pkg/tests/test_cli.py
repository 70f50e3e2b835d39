import json
import subprocess
import sys

import pytest

from thompsonk.cli import main
from thompsonk.element import expand_pair
from thompsonk.gamma import gamma_of
from thompsonk.words import eval_y, normal_form


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf(capsys):
    assert run(capsys, "nf", "--k", "3", "y1 y0")[:2] == (0, "y0 y3\n")


def test_mul_and_inv(capsys):
    assert run(capsys, "mul", "--k", "3", "y0", "y0^-1")[:2] == (0, "id\n")
    code, out, _ = run(capsys, "inv", "--json", "y0 y3")
    g = eval_y(3, (3, -1), (0, -1))
    assert code == 0 and json.loads(out) == {"element": g.to_json(), "normal_form": str(normal_form(g))}


def test_reduce(capsys, tmp_path):
    p, m = expand_pair(eval_y(3, 0), 3)
    raw = json.dumps({"k": 3, "plus": list(p.addresses), "minus": list(m.addresses)})
    code, out, _ = run(capsys, "reduce", "--json", raw)
    data = json.loads(out)
    assert code == 0 and data["was_unreduced"] and data["element"] == eval_y(3, 0).to_json()
    f = tmp_path / "pair.json"
    f.write_text(raw)
    assert run(capsys, "reduce", str(f))[1].splitlines()[-1] == "y0"


def test_member_f3vec(capsys):
    code, out, _ = run(capsys, "member", "--k", "3", "--subgroup", "f3vec", "y0")
    assert code == 1 and out.startswith("false") and "odd cycle" in out
    code, out, _ = run(capsys, "member", "--k", "3", "--subgroup", "f3vec", "y1^2")
    assert code == 0 and "colouring (+,-,+,-)" in out


def test_member_other_subgroups(capsys):
    assert run(capsys, "member", "--k", "3", "--subgroup", "gk", "y0 y3")[0] == 0
    code, out, _ = run(capsys, "member", "--subgroup", "zstab", "y0")
    assert code == 1 and "counterexample .11" in out
    assert run(capsys, "member", "--subgroup", "kab:1,2", "x0 x2")[0] == 0
    assert run(capsys, "member", "--subgroup", "parabolic:1/3", "y0")[0] == 1
    assert run(capsys, "member", "--subgroup", "f2vec", "x0 x1")[0] == 0
    assert run(capsys, "member", "--subgroup", "nonsense", "y0")[0] == 2


def test_gamma(capsys, tmp_path):
    dot = tmp_path / "out.dot"
    code, out, _ = run(capsys, "gamma", "--k", "3", "y0", "--dot", str(dot))
    assert code == 0 and "3 vertices, 4 edges" in out
    assert dot.read_text().count(" -- ") == 4
    code, out, _ = run(capsys, "gamma", "--json", "id")
    assert json.loads(out)["vertices"] == 1 and json.loads(out)["edges"] == 0
    code, out, _ = run(capsys, "gamma", "--json", "y0 y3")
    data = json.loads(out)
    G = gamma_of(eval_y(3, 0, 3))
    assert (data["vertices"], data["edges"]) == (4, 6) == (G.vertex_count, len(G.edges))
    assert run(capsys, "gamma", "--k", "4", "y0")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "prop1", "--max-splits", "3"],
        ["verify", "relations", "--family", "w", "--k", "3", "--n", "6"],
        ["verify", "decompose", "--max-splits", "2"],
    ],
)
def test_verify(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    report = json.loads(out)
    assert code == 0 and report["passed"] and report["counterexamples"] == []


def test_verify_is_deterministic(capsys):
    a = json.loads(run(capsys, "verify", "chr", "--seed", "5", "--json")[1])
    b = json.loads(run(capsys, "verify", "chr", "--seed", "5", "--json")[1])
    a.pop("runtime"), b.pop("runtime")
    assert a == b


def test_usage_errors(capsys):
    code, _, err = run(capsys, "nf", "y1 q")
    assert code == 2 and "position 3" in err
    assert run(capsys, "verify", "nope")[0] == 2
    assert run(capsys, "decompose", "y0")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_decompose_and_coset(capsys):
    assert run(capsys, "decompose", "y0 y3 y1^2")[1] == "w0 u0\n"
    code, out, _ = run(capsys, "coset", "--json", "y0")
    assert code == 0 and set(json.loads(out)) == {"h", "f1", "f2"}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "thompsonk.cli", "nf", "y1 y0"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "y0 y3\n"
