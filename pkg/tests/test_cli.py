import json
import subprocess
import sys

import pytest

from qtwist.cli import main
from qtwist.frt import frt_relations, oq_matrix_relations
from qtwist.quadratic import algebra_from_doc, algebra_to_doc, polynomial_algebra, relation_span_equal
from qtwist.tensor import EndTensor, tensor_from_doc, tensor_to_doc
from qtwist.twist import TwistSpec, classical_rq, twist_rq_closed_form


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    doc = json.loads(out) if out.strip().startswith("{") else None
    return code, doc, err


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_rq(capsys):
    code, doc, _ = run(capsys, "rq", "--n", 2)
    assert code == 0 and len(doc["entries"]) == 5
    assert tensor_from_doc(doc) == classical_rq(2)
    code, doc, _ = run(capsys, "rq", "--n", 2, "--q", 1)
    assert code == 0 and tensor_from_doc(doc) == EndTensor.identity(2)


def test_rq_dimension_cap(capsys):
    code, doc, err = run(capsys, "rq", "--n", 9)
    assert code == 2 and doc is None and "9" in err


def test_rq_zero_q(capsys):
    assert run(capsys, "rq", "--n", 2, "--q", 0)[0] == 2


def test_qybe_check(capsys, tmp_path):
    good = write(tmp_path, "rq.json", tensor_to_doc(classical_rq(2)))
    code, doc, _ = run(capsys, "qybe-check", good)
    assert code == 0 and doc["solution"] is True and doc["residual_nonzero_count"] == 0
    bad_doc = tensor_to_doc(classical_rq(2))
    bad_doc["entries"][1]["value"] = "2"
    code, doc, _ = run(capsys, "qybe-check", write(tmp_path, "bad.json", bad_doc))
    assert code == 1 and doc["solution"] is False and doc["residual_nonzero_count"] > 0
    ident = write(tmp_path, "id.json", tensor_to_doc(EndTensor.identity(3)))
    assert run(capsys, "qybe-check", ident)[1]["solution"] is True


def test_twist_diagonal(capsys, tmp_path):
    r = write(tmp_path, "r.json", tensor_to_doc(classical_rq(2, 5)))
    alpha = write(tmp_path, "a.json", {"alpha": [["2", "0"], ["0", "3"]]})
    code, doc, _ = run(capsys, "twist", r, alpha)
    assert code == 0 and doc["solution"] is True
    expected = twist_rq_closed_form(TwistSpec(2, [[2, 0], [0, 3]], q=5))
    assert tensor_from_doc(doc["r_matrix"]) == expected


def test_twist_invalid_pairs(capsys, tmp_path):
    r = write(tmp_path, "r.json", tensor_to_doc(classical_rq(2)))
    singular = write(tmp_path, "s.json", {"alpha": [["1", "2"], ["2", "4"]]})
    code, doc, _ = run(capsys, "twist", r, singular)
    assert code == 1 and doc["error"] == "InvalidPair"
    unipotent = write(tmp_path, "u.json", {"alpha": [["1", "1"], ["0", "1"]]})
    code, doc, _ = run(capsys, "twist", r, unipotent)
    assert code == 1 and doc["error"] == "InvalidPair" and doc["relation_index"] == 1


def test_frt(capsys, tmp_path):
    r = write(tmp_path, "r.json", tensor_to_doc(classical_rq(2)))
    code, doc, _ = run(capsys, "frt", r)
    assert code == 0 and doc["convention"] == "out"
    A = algebra_from_doc(doc["algebra"])
    assert A == frt_relations(classical_rq(2))
    assert relation_span_equal(A, oq_matrix_relations(2))
    assert tensor_from_doc(doc["r_matrix"]) == classical_rq(2)


def test_hilbert(capsys, tmp_path):
    alg = write(tmp_path, "oq.json", algebra_to_doc(oq_matrix_relations(2)))
    code, doc, _ = run(capsys, "hilbert", alg, "--degree", 3)
    assert code == 0 and doc["dimensions"] == [1, 4, 10, 20]
    code, doc, _ = run(capsys, "hilbert", "--n", 2, "--degree", 3)
    assert doc["dimensions"] == [1, 4, 10, 20]
    assert run(capsys, "hilbert", alg, "--degree", 7)[0] == 2


def test_qdet(capsys):
    code, doc, _ = run(capsys, "qdet", "--n", 2)
    assert code == 0 and doc["qdet"] == "x11*x22 - q^-1*x21*x12"


def test_quadratic_commands(capsys, tmp_path):
    a = write(tmp_path, "a.json", algebra_to_doc(polynomial_algebra(["x", "y"])))
    code, doc, _ = run(capsys, "koszul-dual", a)
    assert code == 0 and len(algebra_from_doc(doc).relations) == 3
    code, doc, _ = run(capsys, "bullet", a, a)
    assert code == 0 and len(doc["gens"]) == 4
    aut = write(tmp_path, "phi.json", {"matrix": [["1", "0"], ["0", "3"]]})
    code, doc, _ = run(capsys, "zhang-twist", a, aut)
    assert code == 0 and not relation_span_equal(algebra_from_doc(doc), polynomial_algebra(["x", "y"]))
    code, doc, _ = run(capsys, "manin-end", a)
    assert code == 0 and doc["comultiplication"]["z^1_2"] == "z^1_2 ⊗ z^1_1 + z^2_2 ⊗ z^1_2"


def test_zhang_twist_rejects_non_automorphism(capsys, tmp_path):
    a = write(tmp_path, "a.json", {"gens": ["x", "y"], "relations": [[{"a": "x", "b": "y", "value": "1"}]]})
    aut = write(tmp_path, "phi.json", {"matrix": [["0", "1"], ["1", "0"]]})
    code, doc, _ = run(capsys, "zhang-twist", a, aut)
    assert code == 1 and doc["error"] == "NotAnAutomorphism"


def test_verify_suite(capsys):
    code, doc, _ = run(capsys, "verify-suite", "--seed", 7)
    assert code == 0 and doc["passed"] is True
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names) and len(names) >= 10
    assert all(line.startswith("PASS") for line in doc["human"].splitlines())


@pytest.mark.parametrize(
    "argv",
    [
        ["rq", "--n", "3", "--q", "5/3"],
        ["qdet", "--n", "3"],
        ["verify-suite", "--seed", "3"],
    ],
)
def test_output_files_are_deterministic(argv, tmp_path, capsys):
    first, second = tmp_path / "1.json", tmp_path / "2.json"
    main(argv + ["--out", str(first)])
    main(argv + ["--out", str(second)])
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.parametrize(
    "content, needle",
    [
        ("{not json", "line 1"),
        ('{"n": 2, "entries": [{"i": 1, "j": 1, "k": 1, "l": 1, "value": "q^"}]}', "entries[0].value"),
        ('{"n": 2}', "entries"),
    ],
)
def test_format_errors(content, needle, tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(capsys, "qybe-check", path)
    assert code == 2 and needle in err


def test_missing_file_and_usage(tmp_path, capsys):
    assert run(capsys, "frt", tmp_path / "nope.json")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["rq"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qtwist", "rq", "--n", "9"], capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "qtwist", "qdet", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["human"] == "x11*x22 - q^-1*x21*x12"
