import io
import json
import subprocess
import sys

import pytest

from ohtsuki.cli import EXIT_FAULT, EXIT_INPUT, EXIT_OK, run
from ohtsuki.corpus import corpus, fixture_dir
from ohtsuki.errors import DiagramError
from ohtsuki.linkdiag import SurgeryPresentation, linking_matrix


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue().strip()


def test_lambda_prints_39():
    assert call("lambda", "--n", "2", "fixtures/trefoil_plus1.pd") == (EXIT_OK, "39")
    assert call("lambda", "--n", "2", "--route", "general", "trefoil_plus1") == (EXIT_OK, "39")


def test_jones_unknot():
    assert call("jones", "fixtures/unknot.pd") == (EXIT_OK, "1")


def test_json_outputs_exact_rationals():
    code, text = call("--format", "json", "nu-table", "--max-i", "2", "--max-m", "3")
    doc = json.loads(text)
    assert code == EXIT_OK and doc["schema"] == 1
    assert doc["nu"]["+1,2"][1] == "-7/3"
    code, text = call("jones", "--format", "json", "trefoil_right")
    assert json.loads(text)["jones"] == {"1": "1", "3": "1", "4": "-1"}


def test_fermat_check_srfi():
    code, text = call("fermat-check", "--what", "srfi", "--primes", "11..31")
    assert code == EXIT_OK and text.endswith("all pass")


def test_lambda2_surgery_reports_routes():
    code, text = call("--format", "json", "lambda2-surgery", "--knot", "figure_eight", "--coeff", "1/1")
    doc = json.loads(text)
    assert code == EXIT_OK
    assert doc["lambda2"] == "69" and doc["routes"]["surgery_link"] == "69"
    assert doc["closed_form_agrees"] is False
    code, text = call("lambda2-surgery", "--knot", "trefoil_right", "--coeff", "1/-1")
    assert (code, text) == (EXIT_OK, "69")


def test_other_subcommands():
    assert call("conway", "figure_eight")[1] == "-z^2 + 1"
    assert call("v-i", "figure_eight", "-i", "2") == call("phi-i", "figure_eight", "-i", "2")
    assert call("phi-i", "trefoil_right", "-i", "2") == (EXIT_OK, "-6")
    assert call("check-dcc", "whitehead", "0", "2")[0] == EXIT_OK
    code, text = call("distinguish", "--knot", "trefoil_right", "--range=-1..1")
    assert code == EXIT_OK and "lambda2" in text


def test_input_errors():
    assert call("jones", "no_such_file.pd")[0] == EXIT_INPUT
    assert call("bogus")[0] == EXIT_INPUT
    assert call("lambda", "hopf_positive")[0] == EXIT_INPUT
    assert call("lambda2-surgery", "--knot", "trefoil_right", "--coeff", "2/3")[0] == EXIT_INPUT
    assert call()[0] == EXIT_INPUT


def test_malformed_pd(tmp_path):
    p = tmp_path / "bad.pd"
    p.write_text("PD[X(1,2,3)]")
    assert call("jones", str(p))[0] == EXIT_INPUT


def test_selftest():
    code, text = call("--selftest")
    assert code == EXIT_OK and text.endswith("all pass")


def test_byte_deterministic():
    args = ["--format", "json", "lambda", "--n", "2", "borromean_ppp"]
    a, b = call(*args), call(*args)
    assert a == b
    r = subprocess.run([sys.executable, "-m", "ohtsuki.cli", *args], capture_output=True, text=True)
    assert r.stdout.strip() == a[1]


def test_corpus_contents():
    C = corpus()
    for name in ("unknot", "trefoil_right", "trefoil_left", "figure_eight", "hopf_positive",
                 "whitehead", "borromean", "unlink2", "unlink3"):
        assert name in C
    for name in ("whitehead", "borromean"):
        lk = linking_matrix(C[name].diagram())
        assert all(lk[i][j] == 0 for i in range(len(lk)) for j in range(len(lk)) if i != j)
    with pytest.raises(DiagramError):
        SurgeryPresentation(C["hopf_positive"].diagram().with_framings([1, 1]))
    for fx in C.values():
        for entry in fx.expected.values():
            assert entry["source"] in ("published", "definition", "computed")
    assert (fixture_dir() / "manifest.json").exists()
