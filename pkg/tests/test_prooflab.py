"""Identity checks, the independence rank, and the corpus runner."""

import random

import pytest

from weyldim import (
    DimensionConfig,
    LeftIdealPresentation,
    binomial_count,
    check_factorial_identity,
    check_product_rule,
    check_recursion_step,
    check_vanishing,
    bernstein_corpus,
    eq1_suite,
    independence_rank,
    mul,
    parse,
    parse_poly,
    random_polynomial,
    submodule_monotonicity,
)
from weyldim.corpus import CorpusEntry

F_SET = ("x1", "x1^2 - 2", "x1^3 + x1 + 1")


def ideal_of(n, *exprs):
    return LeftIdealPresentation(n, tuple(parse(e, n) for e in exprs))


def test_product_rule_direct():
    f = parse_poly("x1^2 - 2", 1)
    report = check_product_rule(f, 1)
    assert report.holds and not report.inconclusive
    # independent restatement: [d_i, f] = f'
    d = parse("d1", 1)
    fo = f.as_operator()
    assert mul(d, fo) - mul(fo, d) == f.derivative(1).as_operator()


def test_product_rule_multivariate():
    f = parse_poly("x1^2*x2 + x2^3", 2)
    for i in (1, 2):
        assert check_product_rule(f, i).holds


def test_eq1_suite_deterministic():
    reports = eq1_suite(cases=200, seed=0)
    assert len(reports) == 200
    assert all(r.holds for r in reports)
    again = eq1_suite(cases=200, seed=0)
    assert [r.parameters for r in again] == [r.parameters for r in reports]


def test_recursion_step_grid():
    for text in F_SET:
        f = parse_poly(text, 1)
        for s in (1, 2, 3):
            for t in (1, 2, 3):
                report = check_recursion_step(f, 1, s, t)
                assert report.holds, (text, s, t)


def test_vanishing_grid():
    for text in F_SET:
        f = parse_poly(text, 1)
        for s in range(1, 5):
            for t in range(s):
                report = check_vanishing(f, s, t)
                assert report.holds and not report.inconclusive, (text, s, t)


def test_vanishing_needs_s_greater_than_t():
    f = parse_poly("x1", 1)
    with pytest.raises(ValueError):
        check_vanishing(f, 2, 2)


def test_factorial_identity_grid():
    for text in F_SET:
        f = parse_poly(text, 1)
        for t in range(4):
            report = check_factorial_identity(f, t)
            assert report.holds and not report.inconclusive, (text, t)


def test_factorial_identity_fails_for_square():
    # f = x1^2 has f' = 2 x1 and (f')^t = 0 mod f for t >= 2: the
    # nonvanishing clause must fail, honestly, not inconclusively
    f = parse_poly("x1^2", 1)
    report = check_factorial_identity(f, 2)
    assert not report.holds
    assert not report.inconclusive


def test_monic_univariate_required():
    with pytest.raises(ValueError):
        check_factorial_identity(parse_poly("2*x1", 1), 1)
    with pytest.raises(ValueError):
        check_vanishing(parse_poly("x1*x2", 2), 2, 1)


def test_binomial_count_matches_enumeration():
    for h in range(4):
        for t in range(6):
            count = 0
            stack = [(h, t)]
            # count exponent tuples (t_1..t_h) with sum <= t
            def rec(vars_left, budget):
                if vars_left == 0:
                    return 1
                return sum(rec(vars_left - 1, budget - e) for e in range(budget + 1))

            count = rec(h, t)
            assert binomial_count(h, t) == count


def test_independence_rank_full():
    for n, h in ((1, 1), (2, 1), (2, 2), (3, 2)):
        I = LeftIdealPresentation(n, tuple(parse(f"x{i}", n) for i in range(1, h + 1)))
        for t in range(4):
            assert independence_rank(I, h, t) == binomial_count(h, t)


def test_independence_rank_height_zero():
    I = ideal_of(1, "x1")
    assert independence_rank(I, 0, 3) == 1


def test_submodule_pairs():
    cases = [
        (ideal_of(2, "d1", "d2"), parse("x1^2", 2)),
        (ideal_of(1, "d1"), parse("x1^3", 1)),
        (LeftIdealPresentation(1, ()), parse("d1", 1)),
    ]
    for I, p in cases:
        report = submodule_monotonicity(I, p)
        assert report.holds
        assert report.d_sub <= report.d_full


def test_submodule_rejects_zero_class():
    with pytest.raises(ValueError):
        submodule_monotonicity(ideal_of(1, "d1"), parse("d1", 1))


def test_random_polynomial_reproducible():
    a = [random_polynomial(random.Random(42), 2, 4) for _ in range(1)]
    b = [random_polynomial(random.Random(42), 2, 4) for _ in range(1)]
    assert a == b
    for k in range(20):
        p = random_polynomial(random.Random(k), 3, 4)
        assert not p.is_zero()
        assert p.total_degree() <= 4


def test_corpus_runner_verdicts():
    entries = [
        CorpusEntry("a-poly", 1, ideal_of(1, "d1"), expected_d=1),
        CorpusEntry("b-free", 1, LeftIdealPresentation(1, ()), expected_d=2),
        CorpusEntry("c-wrong", 1, ideal_of(1, "d1"), expected_d=2),
        CorpusEntry("d-degenerate", 1, ideal_of(1, "1")),
    ]
    report = bernstein_corpus(entries)
    verdicts = {r.name: r.verdict for r in report.rows}
    assert verdicts == {
        "a-poly": "pass",
        "b-free": "pass",
        "c-wrong": "fail",
        "d-degenerate": "zero-module",
    }
    assert not report.passed
    assert [r.name for r in report.rows] == sorted(verdicts)
    assert len(report.failures) == 2
    assert not report.inconclusive


def test_corpus_runner_threaded_matches_serial():
    entries = [
        CorpusEntry("p1", 1, ideal_of(1, "x1^2 - 2"), expected_d=1),
        CorpusEntry("p2", 2, ideal_of(2, "d1", "d2"), expected_d=2),
        CorpusEntry("p3", 1, LeftIdealPresentation(1, ()), expected_d=2),
    ]
    serial = bernstein_corpus(entries, DimensionConfig(), threads=None)
    threaded = bernstein_corpus(entries, DimensionConfig(), threads=3)
    strip = lambda rows: [(r.name, r.d, r.multiplicity, r.verdict) for r in rows]
    assert strip(serial.rows) == strip(threaded.rows)
