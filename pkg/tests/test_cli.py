"""CLI behavior: exit codes, rendering, JSON stability, remote mode."""

import json
import os

import pytest
from fastapi.testclient import TestClient

import weyldim.cli as cli
from weyldim.service.app import app

CORPUS = os.path.join(os.path.dirname(__file__), "..", "corpus")


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_normalize_table(capsys):
    code, out, _ = run(capsys, "normalize", "d1^2 * x1^2", "-n", "1")
    assert code == 0
    assert out == "x1^2*d1^2 + 4*x1*d1 + 2\n"


def test_normalize_json(capsys):
    code, out, _ = run(capsys, "normalize", "d1*x1", "-n", "1", "--output", "json")
    assert code == 0
    body = json.loads(out)
    assert body["normal_form"] == "x1*d1 + 1"
    assert list(body) == sorted(body)


def test_parse_error_exit_2(capsys):
    code, out, err = run(capsys, "normalize", "d1 +* x1", "-n", "1")
    assert code == 2
    assert not out
    assert "column 5" in err


def test_apply(capsys):
    code, out, _ = run(capsys, "apply", "d1^2", "x1^3 + x1", "-n", "1")
    assert code == 0
    assert out == "6*x1\n"


def test_dim_inline_ideal(capsys):
    code, out, _ = run(capsys, "dim", "--ideal", "d1 - d2^2", "-n", "2")
    assert code == 0
    assert "d >= n: PASS" in out
    assert "degree        3" in out


def test_dim_corpus_file(capsys):
    code, out, _ = run(capsys, "dim", os.path.join(CORPUS, "heat-n2.wcor"))
    assert code == 0
    assert "multiplicity  2" in out


def test_dim_zero_module_exit_3(capsys):
    code, _, err = run(capsys, "dim", "--ideal", "1", "-n", "1")
    assert code == 3
    assert "zero module" in err


def test_dim_usage_errors(capsys):
    assert run(capsys, "dim")[0] == 2  # neither file nor --ideal
    assert run(capsys, "dim", "--ideal", "d1")[0] == 2  # missing -n
    both = run(capsys, "dim", os.path.join(CORPUS, "poly-n1.wcor"), "--ideal", "d1", "-n", "1")
    assert both[0] == 2


def test_dim_inconclusive_exit_4(capsys):
    code, _, err = run(
        capsys, "dim", "--ideal", "d1 - d2^2", "-n", "2", "--budget", "3"
    )
    assert code == 4
    assert "inconclusive" in err


def test_check_suites(capsys):
    code, out, _ = run(
        capsys, "check", "--eq2", "--eq4", "--f", "x1^2 - 2", "-n", "1"
    )
    assert code == 0
    assert "suite eq2" in out and "suite eq4" in out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_check_requires_a_suite(capsys):
    code, _, err = run(capsys, "check", "-n", "1")
    assert code == 2
    assert "pick at least one" in err


def test_check_eq1_seeded(capsys):
    code, out, _ = run(capsys, "check", "--eq1", "--cases", "10", "--seed", "3")
    assert code == 0
    assert "seed 3" in out
    assert "passed 10/10" in out


def test_compare_shift_two(capsys):
    code, out, _ = run(capsys, "compare", os.path.join(CORPUS, "poly-n1.wcor"))
    assert code == 0
    assert "w = 2" in out
    assert "equal degrees: yes" in out


def test_compare_redundant_generators(capsys):
    code, out, _ = run(capsys, "compare", os.path.join(CORPUS, "poly-n2.wcor"), "--t-max", "6")
    assert code == 0
    assert "w = 1" in out


def test_compare_needs_two_filtrations(capsys):
    code, _, err = run(capsys, "compare", os.path.join(CORPUS, "heat-n2.wcor"))
    assert code == 2
    assert "two filtration" in err


def test_corpus_table(capsys):
    code, out, _ = run(capsys, "corpus", CORPUS)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["name", "n", "d"]
    assert "runtime" in lines[0]
    assert "failures 0" in lines[-1]
    assert "inconclusive 0" in lines[-1]


def test_corpus_json_is_byte_stable(capsys):
    first = run(capsys, "corpus", CORPUS, "--output", "json")
    second = run(capsys, "corpus", CORPUS, "--output", "json")
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    assert "runtime" not in first[1]


def test_dim_json_is_byte_stable(capsys):
    a = run(capsys, "dim", "--ideal", "x1*d1", "-n", "1", "--output", "json")
    b = run(capsys, "dim", "--ideal", "x1*d1", "-n", "1", "--output", "json")
    assert a == b
    assert json.loads(a[1])["verdict"] == "PASS"


def test_help_and_bad_usage(capsys):
    assert run(capsys, "--help")[0] == 0
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "normalize", "x1")[0] == 2  # -n is required


@pytest.fixture
def remote(monkeypatch):
    monkeypatch.setattr(cli, "_make_client", lambda server: TestClient(app))


def test_remote_matches_local(capsys, remote):
    local = run(capsys, "corpus", CORPUS, "--output", "json")
    via_server = run(capsys, "corpus", CORPUS, "--output", "json", "--server", "http://svc")
    assert local == via_server


def test_remote_normalize(capsys, remote):
    code, out, _ = run(capsys, "normalize", "d1*x1", "-n", "1", "--server", "http://svc")
    assert code == 0
    assert out == "x1*d1 + 1\n"


def test_remote_error_mapping(capsys, remote):
    code, _, err = run(capsys, "dim", "--ideal", "1", "-n", "1", "--server", "http://svc")
    assert code == 3
    assert "zero_module" in err
    code, _, err = run(capsys, "normalize", "x1 +", "-n", "1", "--server", "http://svc")
    assert code == 2
    assert "parse_error" in err
