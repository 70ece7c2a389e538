import random
from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, strategies as st

from kernelcut.errors import ValidationError
from kernelcut.generators import random_set_system
from kernelcut.oracles import solve_hitting_set_brute, solve_set_packing_brute
from kernelcut.setsystems import (
    SetSystemInstance,
    Variant,
    find_sunflower,
    kernelize_hitting_set,
    kernelize_set_packing,
)

from reference import bits_within


def hs(family, weights, k, W, d, universe=None):
    universe = universe or sorted(set().union(*map(set, family)))
    return SetSystemInstance(universe, family, weights, k, W, "hitting-set", d)


def sp(family, weights, k, W, d):
    universe = sorted(set().union(*map(set, family))) if family else []
    return SetSystemInstance(universe, family, weights, k, W, "set-packing", d)


def test_sunflower_with_core():
    flower = find_sunflower([{1, 2}, {1, 3}, {1, 4}], 2, 2)
    assert flower.core == {1}
    assert flower.is_valid() and len(flower.petals) == 3


def test_sunflower_disjoint_sets():
    flower = find_sunflower([{1, 2}, {3, 4}, {5, 6}], 2, 2)
    assert flower.core == frozenset()
    assert flower.is_valid()


def test_sunflower_may_be_absent_at_the_threshold():
    # d! k^d = 2 sets for d=1, k=2: no 3-sunflower can exist
    assert find_sunflower([{1}, {2}], 1, 2) is None


def test_sunflower_rejects_wrong_sizes():
    with pytest.raises(ValidationError):
        find_sunflower([{1, 2}, {3}], 2, 1)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**31))
def test_sunflower_guaranteed_above_bound(d, k, seed):
    rng = random.Random(seed)
    universe = range(1, 9 + d)
    from itertools import combinations

    pool = list(combinations(universe, d))
    bound = factorial(d) * k**d
    if len(pool) <= bound:
        return
    family = [set(s) for s in rng.sample(pool, rng.randint(bound + 1, min(len(pool), bound + 20)))]
    flower = find_sunflower(family, d, k)
    assert flower is not None and flower.is_valid()
    assert len(flower.petals) == k + 1
    assert all(p in family for p in flower.petals)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(universe=[1, 1], family=[], weights=[1, 1]),
        dict(universe=[1, 2], family=[{1, 2}], weights=[1, 1]),
        dict(universe=[1, 2], family=[{1}, {1}], weights=[1, 1]),
        dict(universe=[1], family=[{2}], weights=[1]),
        dict(universe=[1, 2], family=[{1}], weights=[1]),
        dict(universe=[1, 2], family=[{1}], weights=[1, -1]),
    ],
)
def test_set_system_validation(kwargs):
    with pytest.raises(ValidationError):
        SetSystemInstance(k=1, W=1, variant="hitting-set", d=1, **kwargs)


def test_hitting_set_no_firing_keeps_family():
    inst = hs([{1, 2}, {2, 3}], [F(1, 2), F(1, 3), F(1, 5)], 1, F(1, 2), 2)
    kernel, report = kernelize_hitting_set(inst)
    assert kernel.family == inst.family
    assert "sunflower-delete" not in report.rule_firings
    assert (solve_hitting_set_brute(kernel) is None) == (solve_hitting_set_brute(inst) is None)


def test_hitting_set_singletons():
    inst = hs([{1}, {2}, {3}, {4}], [1, 1, 1, 1], 1, 1, 1)
    kernel, report = kernelize_hitting_set(inst)
    # the reduction stops at d!(k+1)^d = 2 sets
    assert len(kernel.family) == 2
    assert report.rule_firings["sunflower-delete"] == 2
    assert solve_hitting_set_brute(inst) is None
    assert solve_hitting_set_brute(kernel) is None


def test_set_packing_example():
    inst = sp([{1}, {2}, {3}], [5, 3, 2], 1, 4, 1)
    kernel, _ = kernelize_set_packing(inst)
    assert solve_set_packing_brute(inst) is not None
    assert solve_set_packing_brute(kernel) is not None
    assert kernel.family == (frozenset({1}),)


def test_set_packing_deletes_lightest_petal():
    # d=2, k=1: bound d!(dk)^d = 8, petals per sunflower dk+1 = 3
    family = [{2 * i + 1, 2 * i + 2} for i in range(9)]
    weights = [9, 8, 7, 6, 5, 4, 3, 2, 1]
    kernel, report = kernelize_set_packing(sp(family, weights, 1, 9, 2))
    assert len(kernel.family) == 8
    # the greedy finds the first three disjoint pairs; {5, 6} is the lightest of them
    assert frozenset({5, 6}) not in kernel.family
    assert report.rule_firings["sunflower-delete"] == 1


def test_set_packing_exchange_case():
    # the lightest petal of the 5-sunflower is part of the unique best packing
    family = [{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {7, 8}]
    weights = [10, 10, 10, 10, 1, 10]
    extra = [{9, 10}, {11, 12}, {13, 14}, {15, 16}, {17, 18}, {19, 20}, {21, 22}, {23, 24}]
    family += extra
    weights += [1] * len(extra)
    for k in (1, 2):
        inst = sp(family, weights, k, 11 if k == 2 else 10, 2)
        kernel, _ = kernelize_set_packing(inst)
        assert (solve_set_packing_brute(inst) is None) == (solve_set_packing_brute(kernel) is None)


def test_variant_checked():
    with pytest.raises(ValidationError):
        kernelize_hitting_set(sp([{1}], [1], 1, 1, 1))
    with pytest.raises(ValidationError):
        kernelize_set_packing(hs([{1}], [1], 1, 1, 1))


@given(st.integers(0, 2**31))
def test_kernels_preserve_answers(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    k = rng.randint(0, 3)
    variant = rng.choice(["hitting-set", "set-packing"])
    inst = random_set_system(rng, variant, d=d, k=k, universe=rng.randint(d, 10), family=rng.randint(0, 40), bound=6)
    if inst.variant is Variant.HITTING_SET:
        kernel, report = kernelize_hitting_set(inst)
        bound = factorial(d) * (k + 1) ** d
        r = len(kernel.universe) + 1
        same = (solve_hitting_set_brute(inst) is None) == (solve_hitting_set_brute(kernel) is None)
    else:
        kernel, report = kernelize_set_packing(inst)
        bound = factorial(d) * (d * k) ** d
        r = len(kernel.family) + 1
        same = (solve_set_packing_brute(inst) is None) == (solve_set_packing_brute(kernel) is None)
        at_most = (solve_set_packing_brute(inst, "at-most") is None) == (
            solve_set_packing_brute(kernel, "at-most") is None
        )
        assert at_most
    assert same
    assert len(kernel.family) <= bound
    assert set(kernel.family) <= set(inst.family)
    assert report.bound_ok
    assert all(bits_within(x, r, k + 2) for x in kernel.weights + (kernel.W,))
    assert all(x.denominator == 1 for x in kernel.weights + (kernel.W,))
