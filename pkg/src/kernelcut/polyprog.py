"""Sparse polynomials, order-preserving coefficient compression, and integer
polynomial programming over a box ``{-u..u}^n``."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .errors import ValidationError, check_cap
from .exact import rational_bits, to_fraction, within_ft_bound
from .ft_core import reduce_vector
from .report import KernelReport


def _grlex_key(exponents):
    # higher total degree first, then lexicographically larger exponent vectors
    return (-sum(exponents), tuple(-e for e in exponents))


def _nonneg_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValidationError(f"{what} must be a non-negative integer, got {value!r}")
    return value


@dataclass(frozen=True)
class Polynomial:
    """``monomials`` is a tuple of ``(exponents, coefficient)`` in graded lex order.

    Zero coefficients are rejected unless ``keep_zeros`` is set; compressed
    polynomials keep them so the monomial support is preserved.
    """

    n: int
    d: int
    monomials: tuple = ()
    keep_zeros: bool = False

    def __post_init__(self):
        _nonneg_int(self.n, "variable count")
        _nonneg_int(self.d, "degree bound")
        seen = {}
        for exponents, coeff in self.monomials:
            exponents = tuple(_nonneg_int(e, "exponent") for e in exponents)
            if len(exponents) != self.n:
                raise ValidationError(f"exponent vector {exponents} does not have {self.n} entries")
            if sum(exponents) > self.d:
                raise ValidationError(f"monomial {exponents} exceeds degree {self.d}")
            if exponents in seen:
                raise ValidationError(f"repeated monomial {exponents}")
            coeff = to_fraction(coeff)
            if coeff == 0 and not self.keep_zeros:
                raise ValidationError(f"zero coefficient for monomial {exponents}")
            seen[exponents] = coeff
        ordered = tuple((e, seen[e]) for e in sorted(seen, key=_grlex_key))
        object.__setattr__(self, "monomials", ordered)

    @property
    def r(self):
        return len(self.monomials)

    @property
    def coefficients(self):
        return tuple(c for _, c in self.monomials)

    def constant(self):
        zero = (0,) * self.n
        return next((c for e, c in self.monomials if e == zero), Fraction(0))

    def bits(self):
        return sum(rational_bits(c) + sum(e.bit_length() + 1 for e in exps) for exps, c in self.monomials)

    def __call__(self, x):
        return eval_poly(self, x)


def _monomial_value(exponents, x):
    value = 1
    for e, v in zip(exponents, x):
        if e:
            value *= v**e
    return value


def eval_poly(f: Polynomial, x) -> Fraction:
    x = tuple(x)
    if len(x) != f.n:
        raise ValidationError(f"point has {len(x)} coordinates, polynomial has {f.n} variables")
    return sum((c * _monomial_value(e, x) for e, c in f.monomials), Fraction(0))


# public alias; ``eval`` itself shadows a builtin
eval = eval_poly


def compression_N(r, u, d):
    # f(x) - f(y) = sum_j c_j (m_j(x) - m_j(y)) with |m_j(x) - m_j(y)| <= 2u^d,
    # so the difference vectors lie in the l1-ball of radius 2ru^d
    return 2 * r * u**d + 1


def compress_polynomial(f: Polynomial, u: int) -> Polynomial:
    """Integer coefficients with the same sign of ``f(x) - f(y)`` on the box."""
    if isinstance(u, bool) or not isinstance(u, int) or u < 1:
        raise ValidationError(f"box radius must be a positive integer, got {u!r}")
    if not f.monomials:
        return f
    N = compression_N(f.r, u, f.d)
    out = reduce_vector(f.coefficients, N)
    return Polynomial(f.n, f.d, tuple((e, c) for (e, _), c in zip(f.monomials, out)), keep_zeros=True)


@dataclass(frozen=True)
class IppInstance:
    """Is there ``x`` in ``{-u..u}^n`` with ``c(x) <= z`` and ``g_i(x) <= b_i`` for all i?"""

    c: Polynomial
    constraints: tuple
    bounds: tuple
    z: Fraction
    u: int

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "bounds", tuple(to_fraction(b) for b in self.bounds))
        object.__setattr__(self, "z", to_fraction(self.z))
        if isinstance(self.u, bool) or not isinstance(self.u, int) or self.u < 1:
            raise ValidationError(f"box radius must be a positive integer, got {self.u!r}")
        if len(self.constraints) != len(self.bounds):
            raise ValidationError("one bound per constraint required")
        for g in self.constraints:
            if (g.n, g.d) != (self.c.n, self.c.d):
                raise ValidationError("all polynomials must share n and d")

    @property
    def n(self):
        return self.c.n

    @property
    def d(self):
        return self.c.d

    @property
    def m(self):
        return len(self.constraints)

    def pairs(self):
        return ((self.c, self.z),) + tuple(zip(self.constraints, self.bounds))

    def accepts(self, x):
        return all(eval_poly(f, x) <= b for f, b in self.pairs())

    def bits(self):
        return (
            sum(f.bits() + rational_bits(b) for f, b in self.pairs())
            + self.u.bit_length()
            + self.d.bit_length()
        )


def _compress_pair(f: Polynomial, bound, u, report):
    """Integer ``(f~, b~)`` with ``f(x) <= bound  <=>  f~(x) <= b~`` on the box.

    The constant term is moved to the right-hand side first, so ``f`` vanishes
    at the origin. The lifted polynomial ``L(x, y) = f(x) + y * (bound - f(0))``
    in one extra variable satisfies ``L(x, 0) - L(0, 1) = f(x) - bound``; both
    points lie in the box since ``u >= 1``, so compressing ``L`` preserves the
    predicate. ``y`` is appended as the last coordinate.
    """
    zero = (0,) * f.n
    rest = [(e, c) for e, c in f.monomials if e != zero]
    beta = bound - f.constant()
    lifted_d = max(f.d, 1)
    lifted = Polynomial(
        f.n + 1,
        lifted_d,
        tuple((e + (0,), c) for e, c in rest) + ((zero + (1,), beta),),
        keep_zeros=True,
    )
    compressed = compress_polynomial(lifted, u)
    N = compression_N(lifted.r, u, lifted_d)
    report.check("ft_magnitude", within_ft_bound(compressed.coefficients, N))
    body = tuple((e[:-1], c) for e, c in compressed.monomials if e[-1] == 0)
    new_bound = next(c for e, c in compressed.monomials if e[-1] == 1)
    return Polynomial(f.n, f.d, body, keep_zeros=True), new_bound, N


def compress_ipp(inst: IppInstance):
    """Equivalent instance with integer data; returns ``(instance, report)``."""
    report = KernelReport("ipp", original_bits=inst.bits())
    pairs = []
    for index, (f, bound) in enumerate(inst.pairs()):
        g, b, N = _compress_pair(f, bound, inst.u, report)
        report.fire("lift-compress", f"{'objective' if index == 0 else f'constraint {index}'} r={g.r + 1} N={N}")
        report.params[f"N{index}"] = N
        pairs.append((g, b))
    out = IppInstance(pairs[0][0], [g for g, _ in pairs[1:]], [b for _, b in pairs[1:]], pairs[0][1], inst.u)
    report.params["u"] = inst.u
    report.params["d"] = inst.d
    report.kernel_bits = out.bits()
    return out, report


def _box_order(u):
    # 0, 1, -1, 2, -2, ...: the origin is tried first
    order = [0]
    for v in range(1, u + 1):
        order += [v, -v]
    return order


def solve_ipp_brute(inst: IppInstance) -> tuple[bool, Optional[tuple]]:
    """``(answer, witness)`` by enumerating the box; refuses above the cap."""
    check_cap((2 * inst.u + 1) ** inst.n, "polynomial programming box")
    for x in product(_box_order(inst.u), repeat=inst.n):
        if inst.accepts(x):
            return True, x
    return False, None


def feasible_set(inst: IppInstance):
    """Every box point satisfying all constraints (objective included)."""
    check_cap((2 * inst.u + 1) ** inst.n, "polynomial programming box")
    return [x for x in product(range(-inst.u, inst.u + 1), repeat=inst.n) if inst.accepts(x)]
