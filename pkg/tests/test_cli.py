import json
from pathlib import Path

import pytest

from lgfocus.cli import main, read_corpus
from lgfocus.phase import Model

CORPUS = Path(__file__).resolve().parent.parent / "corpus" / "sequents.tsv"
GOLDEN_FIRST = "((p / q) . q) . (p \\ r) ; ~r"
GOLDEN_SECOND = "(p / (q \\ p)) . ((p / (q \\ p)) \\ p) ; ~p"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("engine", ["focused", "unfocused"])
def test_prove_golden(capsys, engine):
    code, out, _ = run(capsys, "prove", "--logic", "lg0", "--engine", engine, "--certify", GOLDEN_FIRST)
    assert code == 0
    assert out.splitlines()[0] == "PROVABLE"
    assert "certificate: ok" in out


def test_prove_unprovable(capsys):
    code, out, _ = run(capsys, "prove", "p ; q")
    assert (code, out) == (1, "UNPROVABLE\n")


def test_prove_with_countermodel(capsys):
    code, out, _ = run(capsys, "prove", "--certify", "p ; q")
    assert code == 1
    assert "countermodel:" in out
    Model.from_json(out.split("countermodel:\n", 1)[1])


def test_classical_lemma_from_the_command_line(capsys):
    assert run(capsys, "prove", "--logic", "cnl", "(p \\ q) ; (~q * p)")[0] == 0
    # the sequent form negates its right side, which is a different claim
    assert run(capsys, "prove", "--logic", "cnl", "(p \\ q) => (~q * p)")[0] == 1


@pytest.mark.parametrize("fmt, marker", [("ascii", "[invp]"), ("latex", "\\begin{prooftree}"), ("json", '"rule": "invp"')])
def test_proof_formats(capsys, fmt, marker):
    code, out, _ = run(capsys, "prove", "--format", fmt, "p ; ~p")
    assert code == 0
    assert marker in out
    if fmt == "json":
        assert json.loads(out.split("\n", 1)[1])["premises"][0]["focus"]["invp_index"] == 0


@pytest.mark.parametrize("text, count", [(GOLDEN_FIRST, 1), (GOLDEN_SECOND, 2)])
def test_enumerate_counts(capsys, text, count):
    code, out, _ = run(capsys, "enumerate", "--certify", text)
    assert code == 0
    assert out.splitlines()[-1] == f"count: {count}"


def test_enumerate_reads_polarized_input(capsys):
    code, out, _ = run(capsys, "enumerate", "(^p / _(q \\ ^p)) . (_(^p / _(q \\ ^p)) \\ ^p) ; ~p")
    assert code == 0
    assert out.splitlines()[-1] == "count: 2"


def test_enumerate_unprovable(capsys):
    code, out, _ = run(capsys, "enumerate", "p ; q")
    assert (code, out) == (1, "count: 0\n")


@pytest.mark.parametrize(
    "text, printed",
    [("p / q", "^p / q"), ("p * ~q", "p * _~q"), ("p / q ; ~p", "_(^p / q) ; _~p")],
)
def test_translate(capsys, text, printed):
    assert run(capsys, "translate", text) == (0, printed + "\n", "")


def test_countermodel_and_check_model(capsys, tmp_path):
    code, out, _ = run(capsys, "countermodel", "--certify", "p ; q")
    assert code == 0
    model_file = tmp_path / "model.json"
    model_file.write_text(out)
    assert run(capsys, "check-model", str(model_file))[:2] == (0, "VALID\n")
    code, out, _ = run(capsys, "check-model", str(model_file), "p ; q")
    assert code == 1
    assert "fails" in out


def test_no_countermodel_for_a_theorem(capsys):
    code, out, _ = run(capsys, "countermodel", "p ; ~p")
    assert (code, out) == (1, "no countermodel up to n=2\n")


def test_check_model_reports_violations(capsys, tmp_path):
    bad = {"n": 2, "tensor": [[0, 0], [0, 0]], "oslash": [[0, 0], [0, 0]], "obslash": [[0, 0], [0, 0]],
           "bot": [[0, 1]], "valuation": {}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "check-model", str(path))
    assert code == 1
    assert out.startswith("INVALID")
    assert "bot not symmetric at (0,1)" in out


def test_parse_errors_exit_with_two(capsys):
    code, out, err = run(capsys, "prove", "p *")
    assert code == 2
    assert out == ""
    assert "offset 3" in err


def test_missing_file_exits_with_two(capsys, tmp_path):
    assert run(capsys, "prove", "--file", str(tmp_path / "absent.txt"))[0] == 2


def test_input_from_file(capsys, tmp_path):
    path = tmp_path / "goal.txt"
    path.write_text(GOLDEN_SECOND + "\n")
    assert run(capsys, "prove", "--file", str(path))[0] == 0


def test_budget_exhaustion_exits_with_two(capsys):
    code, out, _ = run(capsys, "prove", "--max-visited", "1", GOLDEN_SECOND)
    assert (code, out) == (2, "INDETERMINATE\n")


def test_reports_are_reproducible(capsys):
    first = run(capsys, "countermodel", "--max-n", "3", "--seed", "5", "p * (q + r) => (p * q) + r")
    second = run(capsys, "countermodel", "--max-n", "3", "--seed", "5", "p * (q + r) => (p * q) + r")
    assert first == second
    assert first[0] == 0


def test_corpus(capsys):
    entries = read_corpus(str(CORPUS))
    code, out, _ = run(capsys, "corpus", "--jobs", "2", str(CORPUS))
    assert code == 0
    assert out.splitlines()[-1] == f"{len(entries)}/{len(entries)} as expected"


def test_corpus_reports_mismatches(capsys, tmp_path):
    path = tmp_path / "corpus.tsv"
    path.write_text("# comment\nlg0\tp ; ~p\tP\nlg0\tp ; q\tP\n")
    code, out, _ = run(capsys, "corpus", str(path))
    assert code == 1
    assert out.splitlines()[1].startswith("FAIL")


def test_corpus_rejects_malformed_lines(capsys, tmp_path):
    path = tmp_path / "corpus.tsv"
    path.write_text("lg0 p ; q P\n")
    assert run(capsys, "corpus", str(path))[0] == 2
