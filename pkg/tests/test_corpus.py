"""Corpus file format: parsing, validation, directory loading."""

import os

import pytest

from weyldim import CorpusFormatError, OpSyntaxError, load_corpus_dir, load_corpus_file, parse
from weyldim.corpus import parse_corpus_text

SAMPLE = """
# heat-like module
n=2
name: sample
gen: d1 - d2^2   # inline comment
expect_d: 3
expect_hilbert: C(t+3,3) + C(t+2,3)
height: 1
filtration: 1
shift: 0
filtration: 1, x1
shift: 0, 0
"""


def test_parse_full_entry():
    entry = parse_corpus_text(SAMPLE)
    assert entry.name == "sample"
    assert entry.n == 2
    assert entry.ideal.generators == (parse("d1 - d2^2", 2),)
    assert entry.expected_d == 3
    assert entry.height_h == 1
    assert len(entry.filtrations) == 2
    assert entry.filtrations[0].shifts == (0,)
    assert entry.filtrations[1].generators_in_M == (parse("1", 2), parse("x1", 2))


def test_no_generators_means_zero_ideal():
    entry = parse_corpus_text("n=1\nexpect_d: 2\n")
    assert entry.ideal.generators == ()
    assert entry.name == "corpus-entry"


def test_shifts_default_to_zero():
    entry = parse_corpus_text("n=1\ngen: d1\nfiltration: 1, x1\n")
    assert entry.filtrations[0].shifts == (0, 0)


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("gen: d1\n", 1, "first line must be n="),
        ("n=zero\n", 1, "first line must be n="),
        ("n=0\n", 1, "n must be >= 1"),
        ("n=1\nbogus line\n", 2, "key: value"),
        ("n=1\ncolor: red\n", 2, "unknown key"),
        ("n=1\nexpect_d: soon\n", 2, "integer"),
        ("n=1\nshift: 1\n", 2, "without a preceding filtration"),
        ("n=1\nfiltration: 1\nshift: 0\nshift: 0\n", 4, "without a preceding filtration"),
        ("n=1\nfiltration: 1, x1\nshift: 0\n", 2, "shifts"),
        ("n=1\nfiltration: 1,,x1\n", 2, "empty generator"),
        ("n=1\nshift:\n", 2, "without a preceding filtration"),
        ("", 1, "empty corpus file"),
        ("# only comments\n\n", 1, "empty corpus file"),
    ],
)
def test_format_errors(text, line, fragment):
    with pytest.raises(CorpusFormatError) as info:
        parse_corpus_text(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_generator_syntax_errors_propagate():
    with pytest.raises(OpSyntaxError):
        parse_corpus_text("n=1\ngen: d1 ++ 1\n")
    with pytest.raises(OpSyntaxError):
        parse_corpus_text("n=1\ngen: d2\n")  # index out of range


def test_load_file_uses_stem_as_default_name(tmp_path):
    path = tmp_path / "my-module.wcor"
    path.write_text("n=1\ngen: d1\n")
    entry = load_corpus_file(str(path))
    assert entry.name == "my-module"
    named = tmp_path / "other.wcor"
    named.write_text("n=1\nname: override\ngen: d1\n")
    assert load_corpus_file(str(named)).name == "override"


def test_load_dir_sorted_and_filtered(tmp_path):
    (tmp_path / "b.wcor").write_text("n=1\ngen: d1\n")
    (tmp_path / "a.wcor").write_text("n=1\ngen: x1\n")
    (tmp_path / "ignored.txt").write_text("not a corpus file")
    entries = load_corpus_dir(str(tmp_path))
    assert [e.name for e in entries] == ["a", "b"]


def test_load_dir_empty_raises(tmp_path):
    with pytest.raises(CorpusFormatError):
        load_corpus_dir(str(tmp_path))


SHIPPED = os.path.join(os.path.dirname(__file__), "..", "corpus")


def test_shipped_corpus_loads():
    entries = load_corpus_dir(SHIPPED)
    assert len(entries) >= 10
    names = {e.name for e in entries}
    assert {"delta-n1", "euler-shift-n1", "poly-n2", "mixed-n2", "free-n1", "free-n2"} <= names
    assert all(e.expected_d is not None for e in entries)
    assert {e.n for e in entries} == {1, 2, 3}
    # the two comparison fixtures ship two filtrations each
    by_name = {e.name: e for e in entries}
    assert len(by_name["poly-n1"].filtrations) == 2
    assert len(by_name["poly-n2"].filtrations) == 2
