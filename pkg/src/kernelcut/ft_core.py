"""Lattice reduction, simultaneous Diophantine approximation and weight compression.

Everything here is exact: Fractions and Python integers only.

``reduce_vector(w, N)`` returns an integer vector with the same sign behaviour
as ``w`` against every integer test vector ``b`` with ``||b||_1 <= N - 1``. The
construction is the iterated-rounding scheme of Frank and Tardos:

1. scale the current vector so that its largest entry has magnitude 1;
2. approximate it simultaneously with precision ``1/N``: ``|q*w - p| <= 1/N``;
3. continue with the normalised residual ``q*w - p`` until it vanishes.

Step 2 runs on a copy of the vector rounded to a power-of-two grid, with
precision ``1/(2N)``; the grid is fine enough that the rounding error times
the largest possible ``q`` stays below ``1/(2N)``. This keeps the lattice
entries short no matter how large the input denominators are.

Each round zeroes every coordinate of maximal magnitude, so there are at most
``r`` rounds, and the sign of ``w.b`` is the first nonzero sign in the
sequence ``p_1.b, p_2.b, ...``. The rounds are merged into one integer vector
with a base ``M`` that exceeds every ``|p_i.b|``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from . import _accel
from .errors import DegenerateBasis, ValidationError, check_cap
from .exact import common_denominator, integer_scaled, rational_vector, sign

DEFAULT_DELTA = Fraction(3, 4)


@dataclass(frozen=True)
class CompressionRequest:
    w: tuple
    N: int

    def __post_init__(self):
        object.__setattr__(self, "w", rational_vector(self.w))
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise ValidationError(f"N must be a positive integer, got {self.N!r}")


@dataclass(frozen=True)
class ReducedBasis:
    basis: tuple
    transform: tuple
    delta: Fraction


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.passed


def _check_delta(delta):
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValidationError(f"delta must lie strictly between 1/4 and 1, got {delta}")
    return delta


def _scaled_gram(gram):
    scale = common_denominator(x for row in gram for x in row)
    return [[int(x * scale) for x in row] for row in gram]


def _run_lll(gram, delta):
    try:
        return _accel.lll_gram(_scaled_gram(gram), delta.numerator, delta.denominator)
    except ZeroDivisionError:
        raise DegenerateBasis("basis rows are linearly dependent") from None


def gram_matrix(basis):
    return [[sum((x * y for x, y in zip(u, v)), Fraction(0)) for v in basis] for u in basis]


def lll_reduce(basis, delta=DEFAULT_DELTA):
    """LLL-reduce the rows of a rational matrix.

    The returned transform ``U`` is unimodular and ``U @ basis`` is the reduced
    basis. Rows must be linearly independent.
    """
    delta = _check_delta(delta)
    rows = [rational_vector(row) for row in basis]
    if len({len(row) for row in rows}) > 1:
        raise ValidationError("basis rows have different lengths")
    H, _ = _run_lll(gram_matrix(rows), delta)
    width = len(rows[0]) if rows else 0
    reduced = tuple(
        tuple(sum((h * row[c] for h, row in zip(hrow, rows)), Fraction(0)) for c in range(width))
        for hrow in H
    )
    return ReducedBasis(reduced, tuple(tuple(h) for h in H), delta)


def is_lll_reduced(basis, delta=DEFAULT_DELTA):
    """Check size reduction and the Lovász condition from scratch (Gram-Schmidt)."""
    delta = Fraction(delta)
    rows = [rational_vector(row) for row in basis]
    star, norms = [], []
    mu = [[Fraction(0)] * len(rows) for _ in rows]
    for i, row in enumerate(rows):
        v = list(row)
        for j in range(i):
            mu[i][j] = sum((a * b for a, b in zip(row, star[j])), Fraction(0)) / norms[j]
            v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
        star.append(v)
        norms.append(sum((a * a for a in v), Fraction(0)))
        if norms[-1] == 0:
            return False
    for i in range(len(rows)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, len(rows)):
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True


def simultaneous_approx(alpha, eps):
    """Find integers ``p`` and ``q >= 1`` with ``|alpha_i - p_i/q| <= eps/q``.

    Reduces the lattice spanned by ``(e_i, 0)`` and ``(-alpha, c)``. With
    ``c^2 = 2^(-r(r+1)/2) eps^(2(r+1))`` the first reduced vector has Euclidean
    length at most ``eps``, which gives the precision, and its last coordinate
    ``q*c`` gives ``q <= 2^(r(r+1)/4) eps^(-r)``. Only ``c^2`` enters the Gram
    matrix, so the construction stays rational.

    Larger values of ``c`` (shorter integers) usually work too, so those are
    tried first; a candidate is accepted only after checking the precision and
    the bound on ``q`` exactly.
    """
    alpha = rational_vector(alpha)
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValidationError(f"eps must lie strictly between 0 and 1, got {eps}")
    r = len(alpha)
    if not any(alpha):
        return (0,) * r, 1
    dim = r + 1
    full = r * (r + 1) // 2
    q_sq_max = 2**full / eps ** (2 * r)
    schedule = sorted({s for s in (dim * dim // 16, dim * dim // 4) if 0 < s < full} | {full})
    for slack in schedule:
        c2 = eps ** (2 * dim) / 2**slack
        gram = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
        for i, a in enumerate(alpha):
            gram[i][r] = gram[r][i] = -a
        gram[r][r] = sum((a * a for a in alpha), Fraction(0)) + c2
        H, _ = _run_lll(gram, DEFAULT_DELTA)
        best = None
        for row in H:
            q = abs(row[r])
            if q == 0 or q * q > q_sq_max or (best is not None and q >= best[1]):
                continue
            p = [x if row[r] > 0 else -x for x in row[:r]]
            if all(abs(q * a - x) <= eps for a, x in zip(alpha, p)):
                best = (tuple(p), q)
        if best is not None:
            return best
    # unreachable: at full slack the first reduced vector qualifies
    raise AssertionError("lattice reduction missed its guarantee")


def _grid_approx(alpha, N):
    """``(p, q)`` with ``|q*alpha_i - p_i| <= 1/N`` via a rounded copy of alpha."""
    r = len(alpha)
    eps = Fraction(1, 2 * N)
    # q <= 2^(r(r+1)/4) (2N)^r; square it to stay in integers
    q_sq_max = 2 ** (r * (r + 1) // 2) * (2 * N) ** (2 * r)
    grid = 1 << ((q_sq_max.bit_length() + 1) // 2 + (2 * N).bit_length())
    rounded = [Fraction((2 * x.numerator * grid + x.denominator) // (2 * x.denominator), grid) for x in alpha]
    p, q = simultaneous_approx(rounded, eps)
    return p, q


def reduce_vector(w, N):
    """Integer vector with the sign behaviour of ``w`` on the ``(N-1)`` l1-ball.

    Entries of equal magnitude share one compressed value (up to sign): a test
    vector aggregated onto the shared coordinate has no larger l1 norm.
    Deterministic; the result is divided by the gcd of its entries.
    """
    req = CompressionRequest(w, N)
    w, N = req.w, req.N
    r = len(w)
    if N == 1:
        # the ball is {0}; any vector works
        return tuple(sign(x) for x in w)
    magnitudes = list(dict.fromkeys(abs(x) for x in w if x))
    if not magnitudes:
        return (0,) * r

    size = len(magnitudes)
    top = max(magnitudes)
    current = [x / top for x in magnitudes]
    rounds = []
    while True:
        live = [j for j, x in enumerate(current) if x]
        p_live, q = _grid_approx([current[j] for j in live], N)
        p = [0] * size
        for j, x in zip(live, p_live):
            p[j] = x
        rounds.append(p)
        residual = [q * x - y for x, y in zip(current, p)]
        assert all(abs(x) * N <= 1 for x in residual)
        top = max(abs(x) for x in residual)
        if top == 0:
            break
        current = [x / top for x in residual]

    base = (N - 1) * max(abs(x) for p in rounds for x in p) + 1
    merged = [0] * size
    for p in rounds:
        merged = [m * base + x for m, x in zip(merged, p)]
    g = gcd(*merged)
    value = {mag: m // g for mag, m in zip(magnitudes, merged)}
    return tuple(sign(x) * value[abs(x)] if x else 0 for x in w)


def compress_inequality(w, W):
    """Integer ``(wbar, Wbar)`` with ``w.x <= W  <=>  wbar.x <= Wbar`` on 0/1 vectors."""
    w = rational_vector(w)
    out = reduce_vector(w + (Fraction(W),), len(w) + 2)
    return out[:-1], out[-1]


def verify_compression(w, wbar, N):
    """Exhaustively compare ``sign(w.b)`` and ``sign(wbar.b)`` over ``||b||_1 <= N-1``.

    Returns a failing ``Verdict`` carrying the first witness found.
    """
    w = rational_vector(w)
    wbar = [int(x) for x in wbar]
    if len(w) != len(wbar):
        raise ValidationError("vectors have different lengths")
    if N < 1:
        raise ValidationError("N must be positive")
    if not w:
        return Verdict(True)
    check_cap((2 * N - 1) ** len(w), "sign verification ball")
    witness = _accel.ball_sign_mismatch(integer_scaled(w), wbar, N - 1)
    return Verdict(witness is None, witness)
