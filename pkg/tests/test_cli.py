import json

import pytest

from causalex.cli import main

from conftest import DATA_DIR
from test_evaluation import HEADER


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert "causalex" in capsys.readouterr().out


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["extract", "--tweets", "x"])  # missing required args
    assert exc_info.value.code == 1


def test_unknown_command_exits_1(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["frobnicate"])
    assert exc_info.value.code == 1


def test_extract_writes_triples_and_summary(tmp_path, capsys):
    out = tmp_path / "triples.jsonl"
    summary = tmp_path / "summary.json"
    code, stdout, _ = run(
        capsys,
        "extract",
        "--tweets", str(DATA_DIR / "mini_corpus.jsonl"),
        "--parses", str(DATA_DIR / "mini_corpus.conllu"),
        "--targets", "insomnia,stress,headache",
        "--out", str(out),
        "--summary", str(summary),
    )
    assert code == 0
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(lines) == 14
    assert set(lines[0]) == {"tweet_id", "sent", "rule", "trigger_lemma", "cause", "effect", "text"}
    loaded = json.loads(summary.read_text())
    assert loaded["per_target"]["insomnia"]["raw_triples"] == 8


def test_extract_missing_file_exits_2(tmp_path, capsys):
    code, _, err = run(
        capsys,
        "extract",
        "--tweets", str(tmp_path / "nope.jsonl"),
        "--parses", str(DATA_DIR / "mini_corpus.conllu"),
        "--targets", "insomnia",
        "--out", str(tmp_path / "out.jsonl"),
    )
    assert code == 2
    assert "error" in err


def test_match_prints_binding_json(capsys):
    code, stdout, _ = run(
        capsys,
        "match",
        "--pattern", "{lemma:/$CLAUSAL_VERB/;pos:/VB.*/}=trigger >/nsubj/ {}=cause >/dobj|obj/ {}=effect",
        "--parses", str(DATA_DIR / "mini_corpus.conllu"),
    )
    assert code == 0
    lines = [json.loads(line) for line in stdout.splitlines()]
    by_sent = {line["sent_id"]: line for line in lines}
    assert by_sent["t01:0"]["bindings"]["cause"] == {"index": 1, "form": "Stress", "lemma": "stress"}
    assert set(by_sent["t01:0"]["bindings"]) == {"trigger", "cause", "effect"}


def test_match_bad_pattern_exits_2(capsys):
    code, _, err = run(capsys, "match", "--pattern", "{lemma:x", "--parses", str(DATA_DIR / "mini_corpus.conllu"))
    assert code == 2
    assert "unbalanced" in err


def test_report_table_and_tsv(capsys):
    code, stdout, _ = run(capsys, "report", "--result", str(DATA_DIR / "published_counts.json"))
    assert code == 0
    assert stdout == (DATA_DIR / "published_counts_table.golden.txt").read_text()
    code, tsv, _ = run(capsys, "report", "--result", str(DATA_DIR / "published_counts.json"), "--tsv")
    assert code == 0
    assert tsv.splitlines()[0] == "rule\tinsomnia\tstress\theadache"


def test_eval_both_modes(tmp_path, capsys):
    triples = tmp_path / "triples.jsonl"
    annotations = tmp_path / "ann.tsv"
    triples.write_text(
        '{"tweet_id": "a", "sent": 0, "rule": 1, "cause": "x", "effect": "stress", "trigger_lemma": "cause", "text": ""}\n'
        '{"tweet_id": "b", "sent": 0, "rule": 1, "cause": "y", "effect": "stress", "trigger_lemma": "cause", "text": ""}\n'
    )
    annotations.write_text(HEADER + "a\t0\t1\tstress\t1\t0\t0\nb\t0\t1\tstress\t1\t1\t0\n")
    code, stdout, _ = run(
        capsys, "eval", "--triples", str(triples), "--annotations", str(annotations), "--mode", "both"
    )
    assert code == 0
    assert "Strict" in stdout and "Relaxed" in stdout
    assert "50.00%" in stdout and "100.00%" in stdout


def test_eval_json_output(tmp_path, capsys):
    triples = tmp_path / "triples.jsonl"
    annotations = tmp_path / "ann.tsv"
    triples.write_text('{"tweet_id": "a", "sent": 0, "rule": 1, "cause": "x", "effect": "stress"}\n')
    annotations.write_text(HEADER + "a\t0\t1\tstress\t1\t0\t0\n")
    code, stdout, _ = run(
        capsys, "eval", "--triples", str(triples), "--annotations", str(annotations),
        "--mode", "strict", "--json",
    )
    assert code == 0
    payload = json.loads(stdout)
    assert payload[0]["per_category"]["stress"]["accuracy"] == 1.0


def test_eval_unannotated_exits_2(tmp_path, capsys):
    triples = tmp_path / "triples.jsonl"
    annotations = tmp_path / "ann.tsv"
    triples.write_text('{"tweet_id": "a", "sent": 0, "rule": 1, "cause": "x", "effect": "stress"}\n')
    annotations.write_text(HEADER)
    code, _, err = run(
        capsys, "eval", "--triples", str(triples), "--annotations", str(annotations), "--mode", "strict"
    )
    assert code == 2
    assert "unannotated" in err
