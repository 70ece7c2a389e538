"""Knapsack with few distinct weights, and Subset Sum with few distinct sizes.

``solve_bounded_ilp`` is an exact solver for small integer programs over a
finite box: plain enumeration, or depth-first branch and bound with interval
propagation. It stands in for fixed-dimension ILP algorithms at desk scale.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Optional

from .errors import RefusedScale, ValidationError, check_cap, enum_cap
from .exact import rational_bits, rational_vector, to_fraction, within_ft_bound
from .ft_core import reduce_vector
from .numeric import SubsetSumInstance
from .report import KernelReport


@dataclass(frozen=True)
class GroupedKnapsack:
    """Items grouped by weight; ``values[i]`` lists group i's values, non-increasing."""

    weights: tuple
    values: tuple
    W: Fraction
    P: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "weights", rational_vector(self.weights))
        object.__setattr__(self, "values", tuple(rational_vector(v) for v in self.values))
        object.__setattr__(self, "W", to_fraction(self.W))
        object.__setattr__(self, "P", to_fraction(self.P))
        if len(self.weights) != len(self.values):
            raise ValidationError("one value list per weight required")
        if len(set(self.weights)) != len(self.weights):
            raise ValidationError("group weights must be distinct")
        for group in self.values:
            if not group:
                raise ValidationError("every group needs at least one item")
            if any(v < 0 for v in group):
                raise ValidationError("item values must be non-negative")
            if any(a < b for a, b in zip(group, group[1:])):
                raise ValidationError("values must be sorted non-increasing within a group")

    @property
    def k(self):
        return len(self.weights)

    @property
    def n(self):
        return sum(len(g) for g in self.values)

    def items(self):
        """Flat ``(weight, value)`` list."""
        return [(w, v) for w, group in zip(self.weights, self.values) for v in group]


@dataclass(frozen=True)
class ConcaveEnvelope:
    """Prefix sums ``f(0..n)`` of sorted values and the pieces ``(slope, intercept)``."""

    prefix: tuple
    pieces: tuple

    def piece_value(self, index, s):
        slope, intercept = self.pieces[index]
        return slope * s + intercept

    def lower_envelope(self, s):
        return min(self.piece_value(i, s) for i in range(len(self.pieces)))


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: tuple
    rhs: Fraction
    sense: str = "<="

    def __post_init__(self):
        object.__setattr__(self, "coeffs", rational_vector(self.coeffs))
        object.__setattr__(self, "rhs", to_fraction(self.rhs))
        if self.sense not in ("<=", "=="):
            raise ValidationError(f"unsupported constraint sense {self.sense!r}")


@dataclass(frozen=True)
class BoundedILP:
    """Maximise ``objective . x`` subject to the constraints, ``lower <= x <= upper``."""

    names: tuple
    lower: tuple
    upper: tuple
    constraints: tuple = ()
    objective: tuple = field(default=())

    def __post_init__(self):
        n = len(self.names)
        object.__setattr__(self, "objective", rational_vector(self.objective or (0,) * n))
        if not (len(self.lower) == len(self.upper) == len(self.objective) == n):
            raise ValidationError("variable data has inconsistent lengths")
        if any(len(c.coeffs) != n for c in self.constraints):
            raise ValidationError("constraint width does not match the variable count")

    def box_size(self):
        size = 1
        for lo, hi in zip(self.lower, self.upper):
            size *= max(0, hi - lo + 1)
        return size

    def feasible(self, x):
        for c in self.constraints:
            lhs = sum((a * v for a, v in zip(c.coeffs, x)), Fraction(0))
            if (c.sense == "<=" and lhs > c.rhs) or (c.sense == "==" and lhs != c.rhs):
                return False
        return all(lo <= v <= hi for lo, v, hi in zip(self.lower, x, self.upper))

    def value(self, x):
        return sum((a * v for a, v in zip(self.objective, x)), Fraction(0))


@dataclass(frozen=True)
class ILPSolution:
    x: tuple
    objective: Fraction


@dataclass(frozen=True)
class SolvedVerdict:
    answer: bool
    multiplicities: Optional[tuple] = None


@dataclass(frozen=True)
class GroupedSubsetSum:
    sizes: tuple
    multiplicities: tuple
    t: int

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        for x in self.sizes + self.multiplicities + (self.t,):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValidationError(f"expected an integer, got {x!r}")
        if len(self.sizes) != len(self.multiplicities):
            raise ValidationError("one multiplicity per size required")
        if any(s < 1 for s in self.sizes):
            raise ValidationError("sizes must be positive")
        if len(set(self.sizes)) != len(self.sizes):
            raise ValidationError("sizes must be pairwise distinct")
        if any(m < 1 for m in self.multiplicities):
            raise ValidationError("multiplicities must be positive")
        if self.t < 0:
            raise ValidationError("target must be non-negative")

    @property
    def k(self):
        return len(self.sizes)

    @property
    def n(self):
        return sum(self.multiplicities)

    def items(self):
        return [s for s, m in zip(self.sizes, self.multiplicities) for _ in range(m)]


def build_envelope(values) -> ConcaveEnvelope:
    """Pieces through consecutive prefix-sum points; their minimum is the prefix sum."""
    values = rational_vector(values)
    if any(a < b for a, b in zip(values, values[1:])):
        raise ValidationError("values must be sorted non-increasing")
    prefix = [Fraction(0)]
    for v in values:
        prefix.append(prefix[-1] + v)
    # piece l passes through (l-1, f(l-1)) and (l, f(l))
    pieces = tuple((v, prefix[l] - v * l) for l, v in enumerate(values))
    return ConcaveEnvelope(tuple(prefix), pieces)


def build_knapsack_ilp(inst: GroupedKnapsack) -> BoundedILP:
    """Variables ``x_1..x_k`` (items taken per group) then ``g_1..g_k`` (their value).

    Values are scaled to integers so the ``g_i`` stay integral; the objective
    divides the scale back out.
    """
    k = inst.k
    scale = lcm(1, *(v.denominator for group in inst.values for v in group))
    envelopes = [build_envelope([v * scale for v in group]) for group in inst.values]
    names = tuple(f"x{i + 1}" for i in range(k)) + tuple(f"g{i + 1}" for i in range(k))
    lower = (0,) * (2 * k)
    upper = tuple(len(g) for g in inst.values) + tuple(int(env.prefix[-1]) for env in envelopes)
    constraints = [LinearConstraint(tuple(inst.weights) + (0,) * k, inst.W)]
    for i, env in enumerate(envelopes):
        for slope, intercept in env.pieces:
            coeffs = [0] * (2 * k)
            coeffs[i] = -slope
            coeffs[k + i] = 1
            constraints.append(LinearConstraint(coeffs, intercept))
    objective = (0,) * k + (Fraction(1, scale),) * k
    return BoundedILP(names, lower, upper, tuple(constraints), objective)


def _integer_rows(ilp):
    """Constraints as ``(coeffs, rhs)`` integer rows of ``<=`` form."""
    rows = []
    for c in ilp.constraints:
        scale = lcm(c.rhs.denominator, *(a.denominator for a in c.coeffs))
        coeffs = tuple(int(a * scale) for a in c.coeffs)
        rhs = int(c.rhs * scale)
        rows.append((coeffs, rhs))
        if c.sense == "==":
            rows.append((tuple(-a for a in coeffs), -rhs))
    return rows


def _propagate(rows, lo, hi):
    """Tighten bounds to a fixpoint; False when some range becomes empty."""
    changed = True
    while changed:
        changed = False
        for coeffs, rhs in rows:
            mins = [a * (lo[j] if a > 0 else hi[j]) for j, a in enumerate(coeffs)]
            total = sum(mins)
            if total > rhs:
                return False
            for j, a in enumerate(coeffs):
                if a == 0 or lo[j] == hi[j]:
                    continue
                room = rhs - total + mins[j]
                if a > 0:
                    bound = room // a
                    if bound < hi[j]:
                        hi[j] = bound
                        changed = True
                else:
                    bound = -(room // -a)
                    if bound > lo[j]:
                        lo[j] = bound
                        changed = True
                if lo[j] > hi[j]:
                    return False
    return True


def _branch_and_bound(ilp, node_cap):
    n = len(ilp.names)
    rows = _integer_rows(ilp)
    scale = lcm(1, *(a.denominator for a in ilp.objective))
    objective = [int(a * scale) for a in ilp.objective]
    best = [None, None]
    nodes = [0]

    def optimistic(lo, hi):
        return sum(a * (hi[j] if a > 0 else lo[j]) for j, a in enumerate(objective))

    def search(lo, hi):
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise RefusedScale(f"branch and bound exceeded {node_cap} nodes")
        if not _propagate(rows, lo, hi):
            return
        if best[0] is not None and optimistic(lo, hi) <= best[1]:
            return
        free = next((j for j in range(n) if lo[j] < hi[j]), None)
        if free is None:
            value = sum(a * x for a, x in zip(objective, lo))
            if best[0] is None or value > best[1]:
                best[0], best[1] = tuple(lo), value
            return
        # most promising value first, so once a child cannot beat the
        # incumbent none of the later ones can either
        values = range(hi[free], lo[free] - 1, -1) if objective[free] > 0 else range(lo[free], hi[free] + 1)
        for v in values:
            sub_lo, sub_hi = list(lo), list(hi)
            sub_lo[free] = sub_hi[free] = v
            if best[0] is not None and optimistic(sub_lo, sub_hi) <= best[1]:
                break
            search(sub_lo, sub_hi)

    search(list(ilp.lower), list(ilp.upper))
    if best[0] is None:
        return None
    return ILPSolution(best[0], ilp.value(best[0]))


def solve_bounded_ilp(ilp: BoundedILP, branch_and_bound=True) -> Optional[ILPSolution]:
    """Exact optimum over the integer box, or None when infeasible.

    Without branch and bound the whole box is enumerated, refusing above the
    enumeration cap. Branch and bound refuses once it has visited more nodes
    than the cap. Ties resolve to the first optimum found, so results are
    deterministic.
    """
    if any(lo > hi for lo, hi in zip(ilp.lower, ilp.upper)):
        return None
    if branch_and_bound:
        return _branch_and_bound(ilp, enum_cap())
    check_cap(ilp.box_size(), "bounded ILP box")
    best = None
    for x in product(*(range(lo, hi + 1) for lo, hi in zip(ilp.lower, ilp.upper))):
        if ilp.feasible(x):
            value = ilp.value(x)
            if best is None or value > best.objective:
                best = ILPSolution(tuple(x), value)
    return best


def solve_knapsack_few_weights(inst: GroupedKnapsack) -> Fraction:
    """Optimal total value within capacity W."""
    solution = solve_bounded_ilp(build_knapsack_ilp(inst))
    # x = 0, g = 0 is always feasible when W >= 0
    return Fraction(0) if solution is None else solution.objective


def binary_split(multiplicity):
    """Coefficients ``1, 2, 4, ..., 2^l, remainder`` whose subset sums are exactly 0..multiplicity."""
    if isinstance(multiplicity, bool) or not isinstance(multiplicity, int) or multiplicity < 0:
        raise ValidationError(f"multiplicity must be a non-negative integer, got {multiplicity!r}")
    if multiplicity == 0:
        return []
    parts = []
    power = 1
    while 2 * power - 1 < multiplicity:
        parts.append(power)
        power *= 2
    parts.append(multiplicity - (power - 1))
    return parts


def subset_sum_ilp(inst: GroupedSubsetSum) -> BoundedILP:
    k = inst.k
    return BoundedILP(
        tuple(f"x{i + 1}" for i in range(k)),
        (0,) * k,
        tuple(inst.multiplicities),
        (LinearConstraint(inst.sizes, inst.t, "=="),),
    )


def kernelize_subset_sum_few_sizes(inst: GroupedSubsetSum, branch=None):
    """Polynomial kernel for Subset Sum with k distinct sizes.

    When ``ceil(log2 n) <= k * ceil(log2 k)`` the sizes and target are
    compressed with N = sum of multiplicities + 2 and expanded back into a
    flat instance by binary splitting of the multiplicities. Otherwise
    the instance is decided directly and a ``SolvedVerdict`` is returned.
    ``branch`` may force ``"compress"`` or ``"solve"``.
    """
    k, n = inst.k, inst.n
    report = KernelReport("grouped-subset-sum", original_bits=_grouped_bits(inst))
    if branch is None:
        branch = "compress" if _ceil_log2(n) <= k * _ceil_log2(k) else "solve"
    if branch not in ("compress", "solve"):
        raise ValidationError(f"unknown branch {branch!r}")
    report.params["branch"] = branch
    if branch == "solve":
        solution = solve_bounded_ilp(subset_sum_ilp(inst))
        report.fire("solve-ilp", f"n={n} k={k}")
        verdict = SolvedVerdict(solution is not None, None if solution is None else solution.x)
        report.extra["answer"] = "yes" if verdict.answer else "no"
        return verdict, report

    N = n + 2
    out = reduce_vector(tuple(inst.sizes) + (inst.t,), N)
    sizes, t = out[:-1], out[-1]
    report.fire("compress", f"k={k} N={N}")
    report.params["r"] = k + 1
    report.params["N"] = N
    report.check("ft_magnitude", within_ft_bound(out, N))
    items = []
    for s, m in zip(sizes, inst.multiplicities):
        items.extend(c * s for c in binary_split(m))
    report.fire("binary-split", f"{len(items)} items")
    kernel = SubsetSumInstance(tuple(items), t)
    report.params["item_constant"] = ITEM_COUNT_CONSTANT
    report.check("item_count", item_count_within(len(items), k, n))
    report.kernel_bits = kernel.bits()
    return kernel, report


# emitted items <= ITEM_COUNT_CONSTANT * k * log2(n), with n read as at least 2
ITEM_COUNT_CONSTANT = 2


def item_count_within(items, k, n, c=ITEM_COUNT_CONSTANT):
    """Exact test of ``items <= c * k * log2(max(n, 2))`` via ``2^items <= max(n, 2)^(c k)``."""
    return 2**items <= max(n, 2) ** (c * k)


def _ceil_log2(x):
    return (x - 1).bit_length() if x > 0 else 0


def _grouped_bits(inst):
    return sum(rational_bits(x) for x in inst.sizes + inst.multiplicities + (inst.t,))
