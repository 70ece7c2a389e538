"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_lll.py [--repeat 3]

Times three workloads on each backend: raw LLL on lattice Gram matrices,
the l1-ball sign check, and end-to-end ``reduce_vector``. The compiled
numbers are skipped when the extension is not built.
"""

import argparse
import random
import time
from fractions import Fraction

from kernelcut import _accel, _kernels_py, ft_core
from kernelcut.generators import random_rational

try:
    from kernelcut import _kernels_ext
except ImportError:
    _kernels_ext = None


def approximation_grams(rng, count, dim):
    """Gram matrices of the lattices used for simultaneous approximation."""
    grams = []
    for _ in range(count):
        alpha = [Fraction(rng.randint(1, 2**40), 2**40) for _ in range(dim)]
        basis = [[Fraction(int(i == j)) for j in range(dim)] + [Fraction(0)] for i in range(dim)]
        basis.append([-a for a in alpha] + [Fraction(1, 2**60)])
        grams.append(ft_core._scaled_gram(ft_core.gram_matrix(basis)))
    return grams


def ball_cases(rng, count, r, N):
    cases = []
    for _ in range(count):
        w = tuple(random_rational(rng, 10**6) for _ in range(r))
        cases.append((ft_core.integer_scaled(w), list(ft_core.reduce_vector(w, N)), N - 1))
    return cases


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run(repeat):
    rng = random.Random(2024)
    grams = approximation_grams(rng, 20, 8)
    balls = ball_cases(rng, 20, 4, 5)
    vectors = [tuple(random_rational(rng, 10**6) for _ in range(8)) for _ in range(10)]
    backends = [("python", _kernels_py)]
    if _kernels_ext is not None:
        backends.append(("cython", _kernels_ext))

    rows = []
    for name, mod in backends:
        lll = timed(lambda: [mod.lll_gram([row[:] for row in g]) for g in grams], repeat)
        ball = timed(lambda: [mod.ball_sign_mismatch(*c) for c in balls], repeat)
        saved = _accel.lll_gram, _accel.ball_sign_mismatch
        _accel.lll_gram, _accel.ball_sign_mismatch = mod.lll_gram, mod.ball_sign_mismatch
        try:
            reduce = timed(lambda: [ft_core.reduce_vector(v, 10) for v in vectors], repeat)
        finally:
            _accel.lll_gram, _accel.ball_sign_mismatch = saved
        rows.append((name, lll, ball, reduce))

    print(f"{'backend':8} {'lll x20 (s)':>12} {'ball x20 (s)':>13} {'reduce x10 (s)':>15}")
    for name, lll, ball, reduce in rows:
        print(f"{name:8} {lll:12.4f} {ball:13.4f} {reduce:15.4f}")
    if len(rows) == 2:
        (_, a, b, c), (_, x, y, z) = rows
        print(f"speedup  {a / x:11.1f}x {b / y:12.1f}x {c / z:14.1f}x")
    else:
        print("compiled extension not built; only the fallback was timed")
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    run(parser.parse_args().repeat)


if __name__ == "__main__":
    main()
