import json
import subprocess
import sys

from artin.cli import INCONCLUSIVE, OK, REFUSED, USAGE, main


def graph_file(tmp_path, ab, ac, bc, name="g.json"):
    path = tmp_path / name
    path.write_text(json.dumps({
        "vertices": ["a", "b", "c"],
        "edges": [{"u": "a", "v": "b", "m": ab}, {"u": "a", "v": "c", "m": ac}, {"u": "b", "v": "c", "m": bc}],
    }))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exit_codes_are_distinct():
    assert len({OK, REFUSED, USAGE, INCONCLUSIVE}) == 4


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "-m", "3", "b^3 a^2 b")
    assert code == OK
    assert "atoms: b,b,ba,ab" in out
    assert "N=0" in out


def test_nf_of_delta_power(capsys):
    code, out, _ = run(capsys, "nf", "-m", "3", "a b a b a b")
    assert code == OK
    assert "atoms: (none)" in out and "N=2" in out


def test_nf_json(capsys):
    code, out, _ = run(capsys, "nf", "-m", "4", "a^-1", "--json", "-")
    assert code == OK
    assert json.loads(out)


def test_eq(capsys):
    assert run(capsys, "eq", "-m", "3", "aba", "bab")[1].strip() == "equal"
    assert run(capsys, "eq", "-m", "3", "ab", "ba")[1].strip() == "different"


def test_bad_word_is_usage_error(capsys):
    code, _, err = run(capsys, "nf", "-m", "3", "a^x")
    assert code == USAGE
    assert "bad word" in err


def test_unknown_command(capsys):
    assert run(capsys, "bogus")[0] == USAGE


def test_unknown_suite(capsys):
    code, _, err = run(capsys, "repro", "nosuch")
    assert code == USAGE
    assert "unknown suite" in err


def test_growth_table(capsys):
    code, out, _ = run(capsys, "growth", "-m", "3", "a b", "--nmax", "3")
    assert code == OK
    assert len(out.strip().splitlines()) == 3


def test_graph_check(capsys, tmp_path):
    code, out, _ = run(capsys, "graph", "check", graph_file(tmp_path, 3, 3, 3))
    assert code == OK
    assert "dimension-2: yes" in out
    code, out, _ = run(capsys, "graph", "check", graph_file(tmp_path, 2, 3, 5))
    assert "dimension-2: no" in out


def test_missing_graph_file(capsys, tmp_path):
    code, _, _ = run(capsys, "graph", "check", str(tmp_path / "absent.json"))
    assert code == USAGE


def test_links_unknown_vertex(capsys, tmp_path):
    code, _, err = run(capsys, "links", graph_file(tmp_path, 3, 3, 3), "--vertex", "v_zz")
    assert code == USAGE
    assert "unknown vertex" in err


def test_cat0_check(capsys, tmp_path):
    code, out, _ = run(capsys, "cat0-check", graph_file(tmp_path, 3, 3, 3))
    assert code == OK
    assert "link condition: holds" in out


def test_witness_json(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", graph_file(tmp_path, 3, 3, "inf"), "--json", "-")
    assert code == OK
    data = json.loads(out)
    assert data["situation"] == "S2"
    assert data["augmented_pair"] == ["b", "c"]
    assert data["crossing"]["cell"] == "triangle"


def test_witness_svg(capsys, tmp_path):
    svg = tmp_path / "w.svg"
    code, _, _ = run(capsys, "witness", graph_file(tmp_path, 3, 3, 3), "--svg", str(svg))
    assert code == OK
    assert svg.read_text().startswith("<svg")


def test_witness_refuses_spherical(capsys, tmp_path):
    code, _, err = run(capsys, "witness", graph_file(tmp_path, 2, 3, 5))
    assert code == REFUSED
    assert "dimension" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "artin", "eq", "-m", "3", "aba", "bab"], capture_output=True, text=True
    )
    assert proc.returncode == OK
    assert proc.stdout.strip() == "equal"
