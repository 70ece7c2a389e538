"""Seeded random instance families.

Every family takes a ``random.Random`` and keyword parameters, so a corpus is
reproduced exactly from its seed.
"""

import random
from fractions import Fraction
from itertools import combinations

from .errors import ValidationError
from .few_sizes import GroupedKnapsack, GroupedSubsetSum
from .ft_core import CompressionRequest
from .numeric import BinPackingInstance, KnapsackInstance, MaxCutInstance, SubsetSumInstance
from .oracles import CnfFormula
from .polyprog import IppInstance, Polynomial
from .setsystems import SetSystemInstance, Variant


def random_rational(rng, bound, allow_zero=True, positive=False):
    """``p/q`` with ``|p| <= bound`` and ``1 <= q <= bound``."""
    while True:
        p = rng.randint(0 if positive else -bound, bound)
        if p or allow_zero:
            return Fraction(p, rng.randint(1, bound))


def random_vector(rng, r=3, N=3, bound=10**6):
    return CompressionRequest(tuple(random_rational(rng, bound) for _ in range(r)), N)


def random_knapsack(rng, n=6, bound=10**6):
    w = tuple(random_rational(rng, bound, positive=True) for _ in range(n))
    p = tuple(random_rational(rng, bound, positive=True) for _ in range(n))
    # thresholds near half the totals keep both answers common
    W = sum(w, Fraction(0)) * Fraction(rng.randint(1, 9), 10)
    P = sum(p, Fraction(0)) * Fraction(rng.randint(1, 9), 10)
    return KnapsackInstance(w, p, W, P)


def random_subset_sum(rng, n=6, bound=50):
    a = tuple(rng.randint(0, bound) for _ in range(n))
    if a and rng.random() < 0.5:
        b = sum(x for x in a if rng.random() < 0.5)
    else:
        b = rng.randint(0, sum(a) + 1)
    return SubsetSumInstance(a, b)


def random_set_system(rng, variant="hitting-set", d=2, k=2, universe=8, family=12, bound=10):
    variant = Variant(variant)
    if universe < d:
        raise ValidationError("universe smaller than d")
    elements = tuple(range(1, universe + 1))
    pool = list(combinations(elements, d))
    chosen = rng.sample(pool, min(family, len(pool)))
    count = universe if variant is Variant.HITTING_SET else len(chosen)
    weights = tuple(random_rational(rng, bound, positive=True) for _ in range(count))
    total = sum(weights, Fraction(0))
    W = total * Fraction(rng.randint(1, 6), 10)
    return SetSystemInstance(elements, tuple(frozenset(s) for s in chosen), weights, k, W, variant, d)


def random_max_cut(rng, vertices=6, density=0.5, bound=5):
    vs = tuple(range(1, vertices + 1))
    edges = tuple(e for e in combinations(vs, 2) if rng.random() < density)
    weights = tuple(1 + random_rational(rng, bound, positive=True) for _ in edges)
    total = sum(weights, Fraction(0))
    W = max(Fraction(1), total * Fraction(rng.randint(3, 9), 10))
    return MaxCutInstance(vs, edges, weights, W)


def random_bin_packing(rng, n=8, b=20, k=3):
    items = tuple(rng.randint(1, b) for _ in range(n))
    return BinPackingInstance(items, b, k)


def random_grouped_knapsack(rng, k=3, n=10, bound=20):
    weights = rng.sample(range(1, bound + 1), k)
    sizes = [1] * k
    for _ in range(max(0, n - k)):
        sizes[rng.randrange(k)] += 1
    values = tuple(tuple(sorted((rng.randint(0, bound) for _ in range(s)), reverse=True)) for s in sizes)
    W = rng.randint(0, sum(w * s for w, s in zip(weights, sizes)))
    return GroupedKnapsack(tuple(weights), values, W)


def random_grouped_subset_sum(rng, k=3, max_multiplicity=8, bound=30):
    sizes = tuple(rng.sample(range(1, bound + 1), k))
    mults = tuple(rng.randint(1, max_multiplicity) for _ in range(k))
    total = sum(s * m for s, m in zip(sizes, mults))
    if rng.random() < 0.5:
        t = sum(s * rng.randint(0, m) for s, m in zip(sizes, mults))
    else:
        t = rng.randint(0, total)
    return GroupedSubsetSum(sizes, mults, t)


def _exponents(n, d):
    out = [()]
    for _ in range(n):
        out = [e + (x,) for e in out for x in range(d + 1)]
    return [e for e in out if sum(e) <= d]


def random_polynomial(rng, n=2, d=2, r=3, bound=10):
    support = _exponents(n, d)
    chosen = rng.sample(support, min(r, len(support)))
    return Polynomial(n, d, tuple((e, random_rational(rng, bound, allow_zero=False)) for e in chosen))


def random_ipp(rng, n=2, d=2, r=3, m=1, u=2, bound=10):
    c = random_polynomial(rng, n, d, r, bound)
    constraints = tuple(random_polynomial(rng, n, d, r, bound) for _ in range(m))
    bounds = tuple(random_rational(rng, bound) for _ in range(m))
    return IppInstance(c, constraints, bounds, random_rational(rng, bound), u)


def random_cnf(rng, n=3, m=3):
    clauses = tuple(tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(3)) for _ in range(m))
    return CnfFormula(n, clauses)


FAMILIES = {
    "vector": random_vector,
    "knapsack": random_knapsack,
    "subset-sum": random_subset_sum,
    "hitting-set": lambda rng, **kw: random_set_system(rng, "hitting-set", **kw),
    "set-packing": lambda rng, **kw: random_set_system(rng, "set-packing", **kw),
    "max-cut": random_max_cut,
    "bin-packing": random_bin_packing,
    "grouped-knapsack": random_grouped_knapsack,
    "grouped-subset-sum": random_grouped_subset_sum,
    "polynomial": random_polynomial,
    "ipp": random_ipp,
    "cnf": random_cnf,
}


def generate(family, seed, **params):
    """One instance of ``family`` drawn from ``random.Random(seed)``."""
    if family not in FAMILIES:
        raise ValidationError(f"unknown instance family {family!r}")
    if family == "cnf" and params.get("n", 3) < 1 and params.get("m", 3) > 0:
        raise ValidationError("clauses need at least one variable")
    try:
        return FAMILIES[family](random.Random(seed), **params)
    except TypeError as exc:
        raise ValidationError(f"bad parameters for {family}: {exc}") from None
