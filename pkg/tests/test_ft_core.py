from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from kernelcut import _accel, _kernels_py
from kernelcut.errors import DegenerateBasis, RefusedScale, ValidationError
from kernelcut.exact import (
    bit_length_within,
    format_rational,
    ft_magnitude_bound,
    parse_rational,
    rational_bits,
    to_fraction,
    within_ft_bound,
)
from kernelcut.ft_core import (
    compress_inequality,
    is_lll_reduced,
    lll_reduce,
    reduce_vector,
    simultaneous_approx,
    verify_compression,
)

from reference import bits_within, first_sign_mismatch, gram_schmidt, magnitude_bound

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)


# exact helpers


def test_parse_and_format_rational():
    assert parse_rational(" 3/6 ") == F(1, 2)
    assert parse_rational("-7") == -7
    assert format_rational(F(-2, 4)) == "-1/2"
    assert format_rational(F(8, 4)) == "2"


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", ""])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValidationError):
        parse_rational(bad, line=4)


def test_to_fraction_rejects_floats_and_bools():
    with pytest.raises(ValidationError):
        to_fraction(0.5)
    with pytest.raises(ValidationError):
        to_fraction(True)


def test_rational_bits():
    assert rational_bits(0) == 2
    assert rational_bits(F(-3, 4)) == 1 + 2 + 3


@given(st.integers(min_value=-(2**200), max_value=2**200), st.integers(1, 4), st.integers(1, 6))
def test_bit_length_check_matches_reference(value, r, N):
    assert bit_length_within(value, r, N) == bits_within(value, r, N)


def test_ft_magnitude_bound_values():
    assert ft_magnitude_bound(1, 2) == 2**4 * 2**3
    assert within_ft_bound([ft_magnitude_bound(2, 3), 0], 3)
    assert not within_ft_bound([ft_magnitude_bound(2, 3) + 1, 0], 3)


# lattice reduction


def test_lll_identity_basis_unchanged():
    out = lll_reduce([[1, 0], [0, 1]])
    assert [list(row) for row in out.basis] == [[1, 0], [0, 1]]
    assert is_lll_reduced(out.basis)


def test_lll_examples():
    out = lll_reduce([[1, 1], [1, 0]])
    assert is_lll_reduced(out.basis)
    assert abs(out.transform[0][0] * out.transform[1][1] - out.transform[0][1] * out.transform[1][0]) == 1
    assert [list(r) for r in lll_reduce([[5]]).basis] in ([[5]], [[-5]])


def test_lll_small_example_shortens():
    out = lll_reduce([[1, 1], [1, 2]])
    norms = sorted(sum(x * x for x in row) for row in out.basis)
    assert norms == [1, 1]


def test_lll_rejects_dependent_rows():
    with pytest.raises(DegenerateBasis):
        lll_reduce([[1, 2], [2, 4]])


@pytest.mark.parametrize("delta", [F(1, 4), F(1), F(3, 2)])
def test_lll_rejects_delta_out_of_range(delta):
    with pytest.raises(ValidationError):
        lll_reduce([[1, 0], [0, 1]], delta)


def _independent_reduced(basis, delta=F(3, 4)):
    ortho, mu = gram_schmidt(basis)
    norms = [sum(x * x for x in v) for v in ortho]
    size_ok = all(abs(c) <= F(1, 2) for row in mu for c in row)
    lovasz_ok = all(norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1] for i in range(1, len(basis)))
    return size_ok and lovasz_ok


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_lll_output_is_reduced_and_same_lattice(rows):
    ortho, _ = gram_schmidt(rows)
    if any(all(x == 0 for x in v) for v in ortho):
        with pytest.raises(DegenerateBasis):
            lll_reduce(rows)
        return
    out = lll_reduce(rows)
    assert _independent_reduced(out.basis)
    assert is_lll_reduced(out.basis)
    # transform maps the input basis onto the output
    for t_row, b_row in zip(out.transform, out.basis):
        combo = [sum(t * row[j] for t, row in zip(t_row, rows)) for j in range(len(rows[0]))]
        assert combo == list(b_row)


def test_backends_agree_on_lll_and_ball():
    import random

    if _accel.BACKEND == "python":
        pytest.skip("compiled extension not built")
    from kernelcut import _kernels_ext

    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        gram = [[sum(a * b for a, b in zip(r, s)) for s in rows] for r in rows]
        try:
            expected = _kernels_py.lll_gram([g[:] for g in gram])
        except ZeroDivisionError:
            with pytest.raises(ZeroDivisionError):
                _kernels_ext.lll_gram([g[:] for g in gram])
            continue
        assert _kernels_ext.lll_gram([g[:] for g in gram]) == expected
        w = [rng.randint(-50, 50) for _ in range(n)]
        wbar = [rng.randint(-3, 3) for _ in range(n)]
        assert _kernels_ext.ball_sign_mismatch(w, wbar, 3) == _kernels_py.ball_sign_mismatch(w, wbar, 3)


# simultaneous approximation


def test_simultaneous_approx_examples():
    assert simultaneous_approx([0, 0, 0], F(1, 5)) == ((0, 0, 0), 1)
    assert simultaneous_approx([F(1, 2)], F(1, 4)) == ((1,), 2)
    assert simultaneous_approx([F(1, 3), F(2, 3)], F(1, 10)) == ((1, 2), 3)


def test_reduce_vector_two_thirds_one_third():
    wbar = reduce_vector((F(2, 3), F(1, 3)), 2)
    assert wbar[0] > 0 and wbar[1] > 0
    assert first_sign_mismatch((F(2, 3), F(1, 3)), wbar, 1) is None


@given(st.lists(st.fractions(min_value=-1, max_value=1, max_denominator=10**6), min_size=1, max_size=4), st.integers(2, 6))
def test_simultaneous_approx_precision_and_size(alpha, inv_eps):
    eps = F(1, inv_eps)
    p, q = simultaneous_approx(alpha, eps)
    r = len(alpha)
    assert 1 <= q
    assert all(abs(q * a - x) <= eps for a, x in zip(alpha, p))
    assert q * q <= 2 ** (r * (r + 1) // 2) * eps ** (-2 * r)


# compression


@pytest.mark.parametrize(
    "w, N, expected",
    [
        ((F(1, 3), F(2, 3)), 3, (1, 2)),
        ((5,), 2, (1,)),
        ((0, 0), 4, (0, 0)),
        ((-7, 7), 3, (-1, 1)),
    ],
)
def test_reduce_vector_examples(w, N, expected):
    assert reduce_vector(w, N) == expected


def test_reduce_vector_N_one_gives_signs():
    assert reduce_vector((F(-3, 7), 0, 9), 1) == (-1, 0, 1)


def test_reduce_vector_rejects_bad_N():
    with pytest.raises(ValidationError):
        reduce_vector((1,), 0)


@given(st.lists(rationals, min_size=1, max_size=3), st.integers(1, 5))
def test_reduce_vector_preserves_signs(w, N):
    wbar = reduce_vector(w, N)
    assert first_sign_mismatch(w, wbar, N - 1) is None
    assert all(abs(x) <= magnitude_bound(len(w), N) for x in wbar)


@given(st.lists(rationals, min_size=1, max_size=4), st.integers(2, 4))
def test_reduce_vector_deterministic_and_scale_invariant(w, N):
    out = reduce_vector(w, N)
    assert reduce_vector(w, N) == out
    assert reduce_vector([x * 7 for x in w], N) == out


def test_compress_inequality_example():
    wbar, Wbar = compress_inequality((F(1, 2), F(1, 3)), F(1, 2))
    from itertools import product

    for x in product((0, 1), repeat=2):
        lhs = F(1, 2) * x[0] + F(1, 3) * x[1] <= F(1, 2)
        assert lhs == (wbar[0] * x[0] + wbar[1] * x[1] <= Wbar)


def test_verify_compression_examples():
    assert verify_compression((F(1, 2),), (1,), 2)
    verdict = verify_compression((F(1, 2), F(1, 2)), (1, -1), 2)
    assert not verdict.passed
    assert verdict.witness == (0, 1)
    assert verify_compression((), (), 5)


def test_verify_compression_agrees_with_reference():
    import random

    rng = random.Random(11)
    for _ in range(200):
        r = rng.randint(1, 3)
        w = [F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(r)]
        wbar = [rng.randint(-4, 4) for _ in range(r)]
        N = rng.randint(1, 4)
        assert verify_compression(w, wbar, N).passed == (first_sign_mismatch(w, wbar, N - 1) is None)


def test_verify_compression_refuses_large_balls(monkeypatch):
    monkeypatch.setenv("KERNELCUT_ENUM_CAP", "10")
    with pytest.raises(RefusedScale):
        verify_compression((1, 2, 3), (1, 2, 3), 3)


def test_pure_fallback_selected_and_identical():
    import os
    import subprocess
    import sys

    script = (
        "from fractions import Fraction as F\n"
        "from kernelcut import _accel\n"
        "from kernelcut.ft_core import reduce_vector\n"
        "print(_accel.BACKEND)\n"
        "print(reduce_vector((F(3, 7), F(-2, 9), F(5, 11), F(1, 13)), 5))\n"
    )
    env = dict(os.environ, KERNELCUT_PURE="1")
    pure = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, env=env, check=True)
    env.pop("KERNELCUT_PURE")
    default = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, env=env, check=True)
    assert pure.stdout.splitlines()[0] == "python"
    assert pure.stdout.splitlines()[1] == default.stdout.splitlines()[1]
