"""Core arithmetic: normal forms, ring axioms, degrees, symbols, apply."""

import math
import random
from fractions import Fraction

import pytest

from weyldim import (
    NEG_INF,
    DiffOp,
    Polynomial,
    add,
    apply,
    bernstein_degree,
    commutator,
    mul,
    mul_single_step,
    order_degree,
    poly_pow,
    principal_symbol,
)


def random_op(rng, n, deg, max_terms=4):
    total = DiffOp.zero(n)
    for _ in range(rng.randint(1, max_terms)):
        a = tuple(rng.randint(0, deg) for _ in range(n))
        b = tuple(rng.randint(0, deg) for _ in range(n))
        coeff = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        total = add(total, DiffOp.monomial(a, b, coeff))
    return total


def random_poly(rng, n, deg, max_terms=4):
    p = Polynomial.zero(n)
    for _ in range(rng.randint(1, max_terms)):
        a = tuple(rng.randint(0, deg) for _ in range(n))
        q = Polynomial.constant(Fraction(rng.randint(-6, 6), rng.randint(1, 3)), n)
        for i, e in enumerate(a, start=1):
            for _ in range(e):
                q = q * Polynomial.variable(i, n)
        p = p + q
    return p


def test_defining_relation():
    x = DiffOp.x(1, 1)
    d = DiffOp.d(1, 1)
    assert mul(d, x) == add(mul(x, d), DiffOp.one(1))


def test_normal_form_worked_example():
    # d^2 x^2 = x^2 d^2 + 4 x d + 2, expanded by hand
    x = DiffOp.x(1, 1)
    d = DiffOp.d(1, 1)
    lhs = mul(mul(d, d), mul(x, x))
    rhs = DiffOp.monomial((2,), (2,))
    rhs = add(rhs, DiffOp.monomial((1,), (1,), 4))
    rhs = add(rhs, DiffOp.constant(2, 1))
    assert lhs == rhs


def test_heisenberg_relations():
    for n in range(1, 5):
        one = DiffOp.one(n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                xi, xj = DiffOp.x(i, n), DiffOp.x(j, n)
                di, dj = DiffOp.d(i, n), DiffOp.d(j, n)
                assert commutator(xi, xj).is_zero()
                assert commutator(di, dj).is_zero()
                expected = one if i == j else DiffOp.zero(n)
                assert commutator(di, xj) == expected


def test_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(80):
        n = rng.randint(1, 3)
        p, q, r = (random_op(rng, n, 3) for _ in range(3))
        assert mul(mul(p, q), r) == mul(p, mul(q, r))
        assert mul(p, add(q, r)) == add(mul(p, q), mul(p, r))
        assert mul(add(p, q), r) == add(mul(p, r), mul(q, r))
        assert mul(p, DiffOp.one(n)) == p
        assert mul(DiffOp.one(n), p) == p
        assert add(p, DiffOp.zero(n)) == p


def test_mul_agrees_with_single_step():
    # the closed exchange formula against one-relation-at-a-time rewriting
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 3)
        p = random_op(rng, n, 3)
        q = random_op(rng, n, 3)
        assert mul(p, q) == mul_single_step(p, q)


def test_degrees_of_zero():
    z = DiffOp.zero(2)
    assert bernstein_degree(z) == NEG_INF
    assert order_degree(z) == NEG_INF


def test_degree_additivity():
    # gr A_n is a domain, so top degrees never cancel
    rng = random.Random(13)
    checked = 0
    while checked < 120:
        n = rng.randint(1, 3)
        p = random_op(rng, n, 3)
        q = random_op(rng, n, 3)
        if p.is_zero() or q.is_zero():
            continue
        prod = mul(p, q)
        assert bernstein_degree(prod) == bernstein_degree(p) + bernstein_degree(q)
        assert order_degree(prod) == order_degree(p) + order_degree(q)
        checked += 1


def test_principal_symbol_multiplicative():
    rng = random.Random(17)
    checked = 0
    while checked < 80:
        n = rng.randint(1, 3)
        p = random_op(rng, n, 3)
        q = random_op(rng, n, 3)
        if p.is_zero() or q.is_zero():
            continue
        for filtration in ("bernstein", "order"):
            sp = principal_symbol(p, filtration)
            sq = principal_symbol(q, filtration)
            assert principal_symbol(mul(p, q), filtration) == sp * sq
        checked += 1


def test_commutator_lowers_bernstein_degree():
    rng = random.Random(19)
    for _ in range(60):
        n = rng.randint(1, 3)
        p = random_op(rng, n, 3)
        q = random_op(rng, n, 3)
        c = commutator(p, q)
        if p.is_zero() or q.is_zero() or c.is_zero():
            continue
        assert bernstein_degree(c) <= bernstein_degree(p) + bernstein_degree(q) - 2


def test_apply_basis_action():
    # r(x) d^a acting on x^a gives a! r(x); other pure powers d^b with
    # some b_i > a_i kill x^a
    for n in (1, 2, 3):
        for deg in range(5):
            for alpha in _tuples(n, deg):
                op = DiffOp.monomial((0,) * n, alpha)
                result = apply(op, _monomial(n, alpha))
                expected = Polynomial.constant(
                    math.prod(math.factorial(a) for a in alpha), n
                )
                assert result == expected


def _tuples(n, total):
    if n == 1:
        return [(total,)]
    out = []
    for head in range(total + 1):
        out.extend((head,) + rest for rest in _tuples(n - 1, total - head))
    return out


def _monomial(n, alpha):
    f = Polynomial.constant(1, n)
    for i, e in enumerate(alpha, start=1):
        for _ in range(e):
            f = f * Polynomial.variable(i, n)
    return f


def test_apply_is_module_action():
    rng = random.Random(23)
    for _ in range(200):
        n = rng.randint(1, 3)
        p = random_op(rng, n, 2)
        q = random_op(rng, n, 2)
        f = random_poly(rng, n, 3)
        assert apply(mul(p, q), f) == apply(p, apply(q, f))
        assert apply(add(p, q), f) == apply(p, f) + apply(q, f)


def test_nonzero_operator_acts_nontrivially():
    # pick the d-exponent of minimal total degree; x^alpha witnesses p != 0
    rng = random.Random(29)
    checked = 0
    while checked < 150:
        n = rng.randint(1, 3)
        p = random_op(rng, n, 3)
        if p.is_zero():
            continue
        alpha = min((b for (_, b) in p.terms), key=lambda b: (sum(b), b))
        witness = _monomial(n, alpha)
        assert not apply(p, witness).is_zero()
        checked += 1


def test_pow_matches_repeated_mul():
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randint(1, 2)
        p = random_op(rng, n, 2, max_terms=2)
        acc = DiffOp.one(n)
        for k in range(4):
            assert p**k == acc
            acc = mul(acc, p)


def test_truncation_drops_high_x_degree():
    rng = random.Random(37)
    for _ in range(40):
        n = rng.randint(1, 2)
        p = random_op(rng, n, 3)
        q = random_op(rng, n, 3)
        full = mul(p, q)
        for bound in (0, 2, 4):
            assert mul(p, q, trunc=bound) == full.truncated(bound)
            assert all(sum(a) <= bound for (a, _) in full.truncated(bound).terms)


def test_polynomial_power_and_derivative():
    x = Polynomial.variable(1, 1)
    f = x * x + Polynomial.constant(-2, 1)  # x^2 - 2
    assert poly_pow(f, 3) == f * f * f
    assert f.derivative(1) == x + x
    assert poly_pow(f, 0) == Polynomial.constant(1, 1)


def test_symbol_of_zero_raises():
    from weyldim import ZeroOperandError

    with pytest.raises(ZeroOperandError):
        principal_symbol(DiffOp.zero(1))


def test_mixed_n_raises():
    from weyldim import DimensionMismatchError

    with pytest.raises(DimensionMismatchError):
        mul(DiffOp.x(1, 1), DiffOp.x(1, 2))
