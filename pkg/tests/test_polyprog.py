import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, strategies as st

from kernelcut.errors import RefusedScale, ValidationError
from kernelcut.generators import random_ipp, random_polynomial
from kernelcut.polyprog import (
    IppInstance,
    Polynomial,
    compress_ipp,
    compress_polynomial,
    compression_N,
    eval_poly,
    feasible_set,
    solve_ipp_brute,
)

from reference import magnitude_bound, sgn


def box(n, u):
    return list(product(range(-u, u + 1), repeat=n))


def order_preserved(f, g, u):
    points = box(f.n, u)
    values_f = [eval_poly(f, x) for x in points]
    values_g = [eval_poly(g, x) for x in points]
    return all(
        sgn(a - b) == sgn(c - d) for a, c in zip(values_f, values_g) for b, d in zip(values_f, values_g)
    )


def test_eval_examples():
    assert eval_poly(Polynomial(2, 2), (5, -1)) == 0
    assert eval_poly(Polynomial(2, 2, [((1, 1), 1)]), (2, 3)) == 6
    assert eval_poly(Polynomial(2, 2, [((2, 0), 1), ((0, 1), -1)]), (-2, 1)) == 3
    with pytest.raises(ValidationError):
        eval_poly(Polynomial(2, 2), (1,))


@pytest.mark.parametrize(
    "monomials",
    [
        [((1, 1), 1), ((1, 1), 2)],
        [((3, 0), 1)],
        [((1,), 1)],
        [((1, 0), 0)],
        [((-1, 0), 1)],
    ],
)
def test_polynomial_validation(monomials):
    with pytest.raises(ValidationError):
        Polynomial(2, 2, monomials)


def test_grlex_order():
    f = Polynomial(2, 2, [((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((0, 2), 1), ((1, 1), 1), ((2, 0), 1)])
    assert [e for e, _ in f.monomials] == [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]


def test_compress_constant():
    f = Polynomial(1, 0, [((0,), F(5, 3))])
    g = compress_polynomial(f, 3)
    assert all(c.denominator == 1 for c in g.coefficients)
    assert order_preserved(f, g, 3)


def test_compress_linear():
    g = compress_polynomial(Polynomial(1, 1, [((1,), F(1, 3))]), 2)
    assert g.coefficients[0] > 0
    assert order_preserved(Polynomial(1, 1, [((1,), F(1, 3))]), g, 2)


def test_compress_two_variables():
    f = Polynomial(2, 2, [((2, 0), F(1, 2)), ((0, 1), F(-1, 3))])
    g = compress_polynomial(f, 2)
    assert [e for e, _ in g.monomials] == [e for e, _ in f.monomials]
    assert order_preserved(f, g, 2)


def test_compression_N():
    assert compression_N(3, 2, 2) == 25


@given(st.integers(0, 2**31))
def test_compress_polynomial_preserves_order(seed):
    rng = random.Random(seed)
    n, d, u = rng.randint(1, 2), rng.randint(0, 2), rng.randint(1, 2)
    f = random_polynomial(rng, n, d, rng.randint(1, 4))
    g = compress_polynomial(f, u)
    assert order_preserved(f, g, u)
    assert [e for e, _ in g.monomials] == [e for e, _ in f.monomials]
    N = compression_N(f.r, u, d)
    assert all(abs(c) <= magnitude_bound(f.r, N) for c in g.coefficients)


def test_ipp_trivial_yes():
    inst = IppInstance(Polynomial(2, 1), [], [], 0, 1)
    assert solve_ipp_brute(inst) == (True, (0, 0))
    out, _ = compress_ipp(inst)
    assert solve_ipp_brute(out)[0]


def test_ipp_infeasible():
    inst = IppInstance(Polynomial(1, 1), [Polynomial(1, 1)], [-1], 0, 2)
    assert solve_ipp_brute(inst) == (False, None)


def test_ipp_linear_example():
    inst = IppInstance(Polynomial(1, 1, [((1,), F(1, 7))]), [Polynomial(1, 1, [((1,), 1)])], [0], 0, 3)
    out, report = compress_ipp(inst)
    assert feasible_set(inst) == feasible_set(out) == [(-3,), (-2,), (-1,), (0,)]
    assert report.bound_ok


def test_ipp_constant_terms():
    # c(0) != 0: the threshold is shifted by the constant before lifting
    c = Polynomial(1, 2, [((0,), F(9, 2)), ((2,), 1)])
    inst = IppInstance(c, [], [], F(11, 2), 2)
    out, _ = compress_ipp(inst)
    assert feasible_set(inst) == feasible_set(out) == [(-1,), (0,), (1,)]


def test_ipp_requires_shared_shape():
    with pytest.raises(ValidationError):
        IppInstance(Polynomial(1, 1), [Polynomial(2, 1)], [0], 0, 1)
    with pytest.raises(ValidationError):
        IppInstance(Polynomial(1, 1), [], [], 0, 0)


def test_ipp_refuses_large_box(monkeypatch):
    monkeypatch.setenv("KERNELCUT_ENUM_CAP", "10")
    with pytest.raises(RefusedScale):
        solve_ipp_brute(IppInstance(Polynomial(3, 1), [], [], 0, 2))


def test_zero_coefficients_kept_in_support():
    # both terms are tied, so compression may not merge or drop them
    f = Polynomial(1, 2, [((2,), 0), ((1,), 1)], keep_zeros=True)
    g = compress_polynomial(f, 2)
    assert [e for e, _ in g.monomials] == [(2,), (1,)]
    assert g.coefficients[0] == 0


@given(st.integers(0, 2**31))
def test_compress_ipp_feasible_sets_equal(seed):
    rng = random.Random(seed)
    inst = random_ipp(rng, n=rng.randint(1, 2), d=rng.randint(0, 2), r=rng.randint(1, 4), m=rng.randint(0, 2), u=rng.randint(1, 2))
    out, report = compress_ipp(inst)
    assert feasible_set(inst) == feasible_set(out)
    assert solve_ipp_brute(inst)[0] == solve_ipp_brute(out)[0]
    assert report.bound_ok
    for f in out.pairs():
        assert all(c.denominator == 1 for c in f[0].coefficients) and f[1].denominator == 1
