"""End-to-end CLI behaviour: subcommands, exit codes, determinism."""
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import DATA, SRC


def run_cli(*args, stdin=None, env_extra=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "oie", *args],
        input=stdin,
        capture_output=True,
        env=env,
    )


def test_extract_jsonl_contains_fig4(tmp_path):
    result = run_cli(
        "extract", "--input", str(DATA / "verbphrase.conllu"),
        "--extractor", "verb", "--format", "jsonl", "--workers", "1",
    )
    assert result.returncode == 0, result.stderr
    rows = [json.loads(line) for line in result.stdout.decode().splitlines()]
    tuples = [(r["arg1"], r["rel"], r["arg2"]) for r in rows]
    assert ("Apple Inc.", "is headquartered in", "California") in tuples


def test_extract_clause_only_yields_13_table1_records():
    result = run_cli(
        "extract", "--input", str(DATA / "table1.conllu"),
        "--extractor", "clause", "--workers", "1",
    )
    assert result.returncode == 0, result.stderr
    assert len(result.stdout.decode().splitlines()) == 13


def test_extract_tsv_format():
    result = run_cli(
        "extract", "--input", str(DATA / "table1.conllu"),
        "--extractor", "clause", "--format", "tsv", "--workers", "1",
    )
    lines = result.stdout.decode().splitlines()
    assert lines and all(len(l.split("\t")) == 10 for l in lines)


def test_extract_stdin_dash():
    data = (DATA / "table1.conllu").read_bytes()
    result = run_cli(
        "extract", "--input", "-", "--extractor", "clause", "--workers", "1",
        stdin=data,
    )
    assert result.returncode == 0
    assert len(result.stdout.decode().splitlines()) == 13


def test_empty_input_empty_output():
    result = run_cli("extract", "--input", "-", "--workers", "1", stdin=b"")
    assert result.returncode == 0
    assert result.stdout == b""


def test_unknown_extractor_is_usage_error():
    result = run_cli("extract", "--input", "-", "--extractor", "magic", stdin=b"")
    assert result.returncode == 1


def test_missing_input_is_io_error():
    result = run_cli("extract", "--input", "/nonexistent/input.conllu")
    assert result.returncode == 2


def test_all_sentences_invalid_exit_3():
    bad = b"1\ta\ta\tNOUN\t_\t_\t2\tobj\t_\t_\n2\tb\tb\tNOUN\t_\t_\t1\tobj\t_\t_\n"
    result = run_cli("extract", "--input", "-", "--workers", "1", stdin=bad)
    assert result.returncode == 3
    assert b"skipped" in result.stderr


def test_validation_failures_reported_but_processing_continues():
    good = (DATA / "table1.conllu").read_bytes()
    bad = b"1\ta\ta\tNOUN\t_\t_\t2\tobj\t_\t_\n2\tb\tb\tNOUN\t_\t_\t1\tobj\t_\t_\n\n"
    result = run_cli(
        "extract", "--input", "-", "--extractor", "clause", "--workers", "1",
        stdin=bad + good,
    )
    assert result.returncode == 0
    assert b"skipped" in result.stderr
    assert len(result.stdout.decode().splitlines()) == 13


def test_workers_do_not_change_output():
    args = ("extract", "--input", str(DATA / "fig6.conllu"), "--format", "jsonl")
    serial = run_cli(*args, "--workers", "1")
    parallel = run_cli(*args, "--workers", "2")
    assert serial.returncode == parallel.returncode == 0
    assert serial.stdout == parallel.stdout


def test_two_runs_byte_identical():
    args = (
        "extract", "--input", str(DATA / "table1.conllu"), "--workers", "1",
    )
    assert run_cli(*args).stdout == run_cli(*args).stdout


def test_eval_subcommand(tmp_path):
    pred = run_cli(
        "extract", "--input", str(DATA / "table1.conllu"),
        "--extractor", "clause", "--workers", "1",
    ).stdout
    pred_path = tmp_path / "pred.jsonl"
    pred_path.write_bytes(pred)
    result = run_cli(
        "eval", "--gold", str(DATA / "table1_gold.jsonl"), "--pred", str(pred_path)
    )
    assert result.returncode == 0
    out = result.stdout.decode()
    assert "recall=1.0000" in out
    assert "guards" in out


def test_query_subcommand(tmp_path):
    pred = run_cli(
        "extract", "--input", str(DATA / "table1.conllu"),
        "--extractor", "clause", "--workers", "1",
    ).stdout
    pred_path = tmp_path / "pred.jsonl"
    pred_path.write_bytes(pred)
    result = run_cli(
        "query", "--records", str(pred_path),
        "--rel", "died in", "--arg2", "Princeton",
    )
    assert result.returncode == 0
    assert "Albert Einstein" in result.stdout.decode()


def test_query_all_wildcards_usage_error(tmp_path):
    pred_path = tmp_path / "pred.jsonl"
    pred_path.write_bytes(b"")
    result = run_cli("query", "--records", str(pred_path))
    assert result.returncode == 1


def test_lexicon_filters_verb_phrases(tmp_path):
    lexicon = tmp_path / "lexicon.txt"
    lexicon.write_text("be award\n")
    result = run_cli(
        "extract", "--input", str(DATA / "verbphrase.conllu"),
        "--extractor", "verb", "--lexicon", str(lexicon), "--workers", "1",
    )
    rows = [json.loads(line) for line in result.stdout.decode().splitlines()]
    assert [(r["arg1"], r["rel"]) for r in rows] == [("Albert Einstein", "was awarded")]


def test_verb_lists_flag(tmp_path):
    config = tmp_path / "verbs.txt"
    config.write_text("[copular]\nbe\n[adverbial_requiring]\n[object_complement]\n")
    result = run_cli(
        "extract", "--input", str(DATA / "table1.conllu"),
        "--extractor", "clause", "--verb-lists", str(config), "--workers", "1",
    )
    rows = [json.loads(line) for line in result.stdout.decode().splitlines()]
    types = {r["clause_type"] for r in rows if r["sentence_id"] == "t1-sva"}
    assert types == {"SV"}  # 'remain' removed from the adverbial-requiring list


def test_oie_log_verbosity():
    bad = b"1\ta\ta\tNOUN\t_\t_\t2\tobj\t_\t_\n2\tb\tb\tNOUN\t_\t_\t1\tobj\t_\t_\n"
    quiet = run_cli(
        "extract", "--input", "-", "--workers", "1",
        stdin=bad, env_extra={"OIE_LOG": "error"},
    )
    assert b"skipped" not in quiet.stderr
