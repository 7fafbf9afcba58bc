import json
import subprocess
import sys

import pytest

from toricmorph.cli import main
from toricmorph.fan import catalog, serialize_fan


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_primcols(capsys):
    code, out, _ = run(capsys, "primcols", "--catalog", "projective:2")
    assert code == 0
    assert out.strip() == "{0,1,2}  k=3"


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--catalog", "projective:2", "-m", "1", "--degrees", "2,2,2")
    assert code == 0
    assert "theorem_bound=5 guest_bound=2" in out
    assert "largest guaranteed dimension 4" in out


def test_bound_not_applicable(capsys):
    code, out, _ = run(capsys, "bound", "--catalog", "hirzebruch:1", "-m", "2",
                       "--degrees", "1,0,1,1")
    assert code == 1
    assert "not applicable" in out


def test_bound_json_matches_text(capsys):
    args = ["bound", "--catalog", "hirzebruch:1", "-m", "1", "--degrees", "5,5,5,10"]
    _, text, _ = run(capsys, *args)
    _, js, _ = run(capsys, *args, "--format", "json")
    data = json.loads(js)
    for key in ("k", "m", "d_min", "theorem_bound", "guest_bound"):
        assert f"{key}={data[key]}" in text


def test_filtration_json_matches_text(capsys):
    args = ["filtration", "--catalog", "projective:1", "-m", "1", "--pbar", "3,3", "--step", "1,1"]
    code, text, _ = run(capsys, *args)
    assert code == 0
    _, js, _ = run(capsys, *args, "--format", "json")
    data = json.loads(js)
    assert data["N"] == 6 and data["truncation_dim"] == 9 and data["stab_rank_shift"] == 24
    rows = dict(line.split(None, 1) for line in text.splitlines()
                if line and not line.lstrip()[0].isdigit() and not line.lstrip().startswith("l "))
    for key in ("N", "truncation_dim", "stable_range", "stab_rank_shift"):
        assert int(rows[key]) == data[key]


def test_check_refutation(tmp_path, capsys):
    fan_path = tmp_path / "f1.json"
    fan_path.write_text(serialize_fan(catalog("hirzebruch:1")))
    bad = {
        "fan": "hirzebruch:1",
        "m": 1,
        "degrees": [1, 0, 1, 1],
        "polynomials": [
            [{"coeff": "1", "exponents": [1, 0]}],
            [{"coeff": "1", "exponents": [0, 0]}],
            [{"coeff": "2", "exponents": [1, 0]}],
            [{"coeff": "1", "exponents": [0, 1]}],
        ],
    }
    mpath = tmp_path / "bad.json"
    mpath.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "check", "--fan", str(fan_path), "--morphism", str(mpath))
    assert code == 1
    assert "not_morphism" in out and "witness: [0:1]" in out


def test_check_and_same(tmp_path, capsys):
    code, out, _ = run(capsys, "sample", "--catalog", "projective:2", "-m", "1",
                       "--degrees", "2,2,2", "--seed", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    p = tmp_path / "a.json"
    p.write_text(out)
    code, out, _ = run(capsys, "check", "--morphism", str(p), "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "morphism"
    for poly in data["polynomials"]:
        for term in poly:
            term["coeff"] = str(-2 * int(term["coeff"]))
    q = tmp_path / "b.json"
    q.write_text(json.dumps(data))
    code, out, _ = run(capsys, "same", "--morphism", str(p), "--morphism", str(q))
    assert code == 0 and "same: yes" in out


def test_sample_requires_seed(capsys):
    code, _, err = run(capsys, "sample", "--catalog", "projective:2", "-m", "1", "--degrees", "1,1,1")
    assert code == 2
    assert "--seed" in err


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "primcols")[0] == 2
    assert run(capsys, "primcols", "--catalog", "nope:3")[0] == 2
    assert run(capsys, "bound", "--catalog", "projective:2", "-m", "1", "--degrees", "1,2,1")[0] == 2
    assert run(capsys, "check", "--catalog", "projective:1", "--morphism",
               str(tmp_path / "missing.json"))[0] == 2


def test_validate_and_catalog(capsys, tmp_path):
    assert run(capsys, "validate", "--catalog", "hirzebruch:2")[0] == 0
    code, out, _ = run(capsys, "validate", "--catalog", "p112")
    assert code == 1 and "smooth" in out
    code, out, _ = run(capsys, "catalog", "--catalog", "projective:2")
    assert code == 0
    path = tmp_path / "p2.json"
    path.write_text(out)
    assert run(capsys, "validate", "--fan", str(path))[0] == 0
    code, out, _ = run(capsys, "catalog")
    assert "projective:N" in out


def test_classgroup_and_degree(capsys):
    code, out, _ = run(capsys, "classgroup", "--catalog", "projective:2")
    assert code == 0 and out.startswith("Z^1")
    assert run(capsys, "degree", "--catalog", "hirzebruch:1", "--degrees", "2,1,2,3")[0] == 0
    assert run(capsys, "degree", "--catalog", "projective:2", "--degrees", "1,2,1")[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toricmorph", "primcols", "--catalog",
                           "hirzebruch:1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "{0,2} {1,3}  k=2"
