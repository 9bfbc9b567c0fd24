from __future__ import annotations

import json
from pathlib import Path

import pytest

from conftest import FIXTURES

from grice.cli import main

CLASSIC = """\
nonterminals: S A A' B B'
terminals: a b c
axiom: S
mode: t
component P1:
  S -> A B
  A' -> A
  B' -> B
component P2:
  A -> a A' b
  B -> c B'
component P3:
  A -> a b
  B -> c
"""


@pytest.fixture
def classic_file(tmp_path) -> Path:
    path = tmp_path / "classic.cdg"
    path.write_text(CLASSIC)
    return path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGrammarCli:
    def test_enumerate_classic(self, classic_file, capsys):
        code, out, _ = run(capsys, "grammar", "enumerate", "--grammar", str(classic_file),
                           "--mode", "t", "--max-len", "9")
        assert code == 0
        assert out.splitlines() == sorted(["abc", "aabbcc", "aaabbbccc"])

    def test_enumerate_uses_file_default_mode(self, classic_file, capsys):
        code, out, _ = run(capsys, "grammar", "enumerate", "--grammar", str(classic_file),
                           "--max-len", "9")
        assert code == 0
        assert len(out.splitlines()) == 3

    def test_member_witness_exit_zero(self, classic_file, capsys):
        code, out, _ = run(capsys, "grammar", "member", "--grammar", str(classic_file),
                           "--word", "aabbcc")
        assert code == 0
        assert [line.split(" ", 1)[0] for line in out.splitlines()] == ["P1", "P2", "P1", "P3"]

    def test_member_non_member_exit_one(self, classic_file, capsys):
        code, _, err = run(capsys, "grammar", "member", "--grammar", str(classic_file),
                           "--word", "aabbc")
        assert code == 1
        assert "not derivable" in err

    def test_member_nonterminal_word_is_data_error(self, classic_file, capsys):
        code, _, err = run(capsys, "grammar", "member", "--grammar", str(classic_file),
                           "--word", "aAb")
        assert code == 65

    def test_derive_lists_block_successors(self, classic_file, capsys):
        code, out, _ = run(capsys, "grammar", "derive", "--grammar", str(classic_file),
                           "--form", "AB", "--component", "P2", "--mode", "t")
        assert code == 0
        assert out.splitlines() == ["P2: aA'bcB'"]

    def test_malformed_grammar_exit_65(self, tmp_path, capsys):
        bad = tmp_path / "bad.cdg"
        bad.write_text("nonterminals: A\nterminals: x\naxiom: A\ncomponent P:\n  A ->\n")
        code, _, err = run(capsys, "grammar", "enumerate", "--grammar", str(bad), "--max-len", "3")
        assert code == 65
        assert "line 5" in err

    def test_missing_option_usage_error(self, capsys):
        code, _, err = run(capsys, "grammar", "enumerate", "--max-len", "3")
        assert code == 64


class TestLdaCli:
    def test_train_deterministic_byte_identical(self, tmp_path, capsys):
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        corpus = FIXTURES / "synthetic_corpus.txt"
        for out in (out_a, out_b):
            code, _, _ = run(capsys, "lda", "train", "--corpus", str(corpus), "--out", str(out),
                             "--k", "2", "--sweeps", "50", "--burn-in", "20", "--seed", "7")
            assert code == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_infer_argmax_matches_topic(self, tmp_path, capsys):
        model_path = tmp_path / "model.json"
        code, _, _ = run(capsys, "lda", "train", "--corpus", str(FIXTURES / "synthetic_corpus.txt"),
                         "--out", str(model_path), "--k", "2", "--sweeps", "200",
                         "--burn-in", "100", "--seed", "3")
        assert code == 0
        code, out_cook, _ = run(capsys, "lda", "infer", "--model", str(model_path),
                                "--seed", "1", "oven dough bread flour butter")
        assert code == 0
        code, out_space, _ = run(capsys, "lda", "infer", "--model", str(model_path),
                                 "--seed", "1", "orbit planet galaxy comet rocket")
        assert code == 0
        theta_cook = json.loads(out_cook)
        theta_space = json.loads(out_space)
        assert theta_cook.index(max(theta_cook)) != theta_space.index(max(theta_space))

    def test_train_empty_corpus_exit_65(self, tmp_path, capsys):
        empty = tmp_path / "empty.txt"
        empty.write_text("")
        code, _, err = run(capsys, "lda", "train", "--corpus", str(empty),
                           "--out", str(tmp_path / "m.json"))
        assert code == 65

    def test_infer_oov_only_exit_65(self, tmp_path, capsys):
        model_path = tmp_path / "model.json"
        run(capsys, "lda", "train", "--corpus", str(FIXTURES / "synthetic_corpus.txt"),
            "--out", str(model_path), "--sweeps", "20", "--burn-in", "5")
        code, _, _ = run(capsys, "lda", "infer", "--model", str(model_path), "xyzzy quux")
        assert code == 65


class TestAuditCli:
    def test_audit_clean(self, capsys, tmp_path):
        report_path = tmp_path / "report.json"
        code, out, _ = run(capsys, "audit", str(FIXTURES / "clean.json"),
                           "--json", str(report_path))
        assert code == 0
        assert "no breaches detected" in out
        report = json.loads(report_path.read_text())
        assert report["counts"] == {}

    def test_audit_offtopic_text_report(self, capsys):
        code, out, _ = run(capsys, "audit", str(FIXTURES / "offtopic.json"))
        assert code == 0
        assert "Relation/OffTopic: 1" in out
        assert "turn 4" in out

    def test_audit_missing_file_exit_65(self, capsys, tmp_path):
        code, _, err = run(capsys, "audit", str(tmp_path / "nope.json"))
        assert code == 65


class TestServeCli:
    def test_bad_config_startup_failure(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"topic_model_path": "/does/not/exist.json"}')
        code, _, err = run(capsys, "serve", "--config", str(cfg))
        assert code == 2
        assert "startup failure" in err

    def test_bad_bind_startup_failure(self, capsys):
        code, _, err = run(capsys, "serve", "--bind", "not-an-address")
        assert code == 2
