"""Independent reference computations used by the tests.

Nothing here calls into the package's compression or kernel code, so a test
that compares the package against these functions is a genuine cross-check.
"""

from fractions import Fraction
from itertools import product


def sgn(x):
    return (x > 0) - (x < 0)


def l1_ball(r, radius):
    """Every integer vector of length r with l1 norm at most radius."""
    if r == 0:
        yield ()
        return
    for head in range(-radius, radius + 1):
        for tail in l1_ball(r - 1, radius - abs(head)):
            yield (head,) + tail


def first_sign_mismatch(w, wbar, radius):
    for b in l1_ball(len(w), radius):
        lhs = sum((Fraction(x) * y for x, y in zip(w, b)), Fraction(0))
        rhs = sum(x * y for x, y in zip(wbar, b))
        if sgn(lhs) != sgn(rhs):
            return b
    return None


def magnitude_bound(r, N):
    return 2 ** (4 * r**3) * N ** (r * (r + 2))


def bits_within(value, r, N):
    """``bitlen(|value|) <= 4r^3 + r(r+2) log2(N) + 1``, decided with integers only."""
    excess = abs(int(value)).bit_length() - 1 - 4 * r**3
    return excess <= 0 or 2**excess <= N ** (r * (r + 2))


def gram_schmidt(basis):
    """Orthogonalised rows and the mu coefficients, in exact arithmetic."""
    ortho, mu = [], []
    for i, row in enumerate(basis):
        row = [Fraction(x) for x in row]
        v = row[:]
        coeffs = []
        for j in range(i):
            denom = sum(x * x for x in ortho[j])
            c = sum(a * b for a, b in zip(row, ortho[j])) / denom if denom else Fraction(0)
            coeffs.append(c)
            v = [a - c * b for a, b in zip(v, ortho[j])]
        ortho.append(v)
        mu.append(coeffs)
    return ortho, mu


def knapsack_feasible(w, p, W, P):
    n = len(w)
    out = set()
    for x in product((0, 1), repeat=n):
        if sum(a * b for a, b in zip(w, x)) <= W and sum(a * b for a, b in zip(p, x)) >= P:
            out.add(x)
    return out


def subset_sums(items):
    sums = {0}
    for a in items:
        sums |= {s + a for s in sums}
    return sums


def best_cut(vertices, edges, weights):
    best = Fraction(0)
    for bits in product((0, 1), repeat=len(vertices)):
        side = {v for v, b in zip(vertices, bits) if b}
        value = sum((w for (u, v), w in zip(edges, weights) if (u in side) != (v in side)), Fraction(0))
        best = max(best, value)
    return best


def k_bin_packable(items, b, k):
    """Exhaustive: can items be packed into k bins of size b?"""
    for assignment in product(range(k), repeat=len(items)):
        loads = [0] * k
        for size, where in zip(items, assignment):
            loads[where] += size
        if all(load <= b for load in loads):
            return True
    return False
