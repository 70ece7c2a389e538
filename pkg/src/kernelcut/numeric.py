"""Kernels for Knapsack(n), Subset Sum(n), Weighted Max Cut(W) and Additive One Bin Packing(k)."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ValidationError
from .exact import bit_length_within, rational_bits, rational_vector, to_fraction, within_ft_bound
from .ft_core import compress_inequality, reduce_vector
from .report import KernelReport

# total kernel bits <= KNAPSACK_SIZE_CONSTANT * (n+1)^4
KNAPSACK_SIZE_CONSTANT = 20


def _int(value, what, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{what} must be an integer, got {value!r}")
    if value < minimum:
        raise ValidationError(f"{what} must be at least {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class KnapsackInstance:
    w: tuple
    p: tuple
    W: Fraction
    P: Fraction

    def __post_init__(self):
        object.__setattr__(self, "w", rational_vector(self.w))
        object.__setattr__(self, "p", rational_vector(self.p))
        object.__setattr__(self, "W", to_fraction(self.W))
        object.__setattr__(self, "P", to_fraction(self.P))
        if len(self.w) != len(self.p):
            raise ValidationError("weight and profit vectors differ in length")

    @property
    def n(self):
        return len(self.w)

    def accepts(self, x):
        """Is the 0/1 vector ``x`` feasible (weight at most W, profit at least P)?"""
        weight = sum((wi for wi, xi in zip(self.w, x) if xi), Fraction(0))
        profit = sum((pi for pi, xi in zip(self.p, x) if xi), Fraction(0))
        return weight <= self.W and profit >= self.P

    def bits(self):
        return sum(rational_bits(v) for v in self.w + self.p + (self.W, self.P))


@dataclass(frozen=True)
class SubsetSumInstance:
    a: tuple
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(_int(x, "item", 0) for x in self.a))
        _int(self.b, "target", 0)

    @property
    def n(self):
        return len(self.a)

    def bits(self):
        return sum(rational_bits(v) for v in self.a + (self.b,))


@dataclass(frozen=True)
class MaxCutInstance:
    vertices: tuple
    edges: tuple
    weights: tuple
    W: Fraction

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "weights", rational_vector(self.weights))
        object.__setattr__(self, "W", to_fraction(self.W))
        self.validate()

    def validate(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("a vertex is listed twice")
        if len(self.edges) != len(self.weights):
            raise ValidationError("every edge needs exactly one weight")
        members = set(self.vertices)
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop at {u}")
            if u not in members or v not in members:
                raise ValidationError(f"edge ({u}, {v}) uses an unknown vertex")
            key = frozenset((u, v))
            if key in seen:
                raise ValidationError(f"edge ({u}, {v}) appears twice")
            seen.add(key)
        if any(x < 1 for x in self.weights):
            raise ValidationError("edge weights must be at least 1")
        if self.W < 1:
            raise ValidationError("W must be at least 1")

    @property
    def total_weight(self):
        return sum(self.weights, Fraction(0))

    def cut_weight(self, side):
        side = set(side)
        return sum(
            (w for (u, v), w in zip(self.edges, self.weights) if (u in side) != (v in side)),
            Fraction(0),
        )

    def bits(self):
        id_bits = max((abs(v).bit_length() + 1 for v in self.vertices), default=1)
        return (
            sum(rational_bits(x) for x in self.weights)
            + rational_bits(self.W)
            + id_bits * (len(self.vertices) + 2 * len(self.edges))
        )


@dataclass(frozen=True)
class BinPackingInstance:
    items: tuple
    b: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(_int(x, "item size", 1) for x in self.items))
        _int(self.b, "bin size", 1)
        _int(self.k, "k", 1)

    def bits(self):
        return sum(rational_bits(v) for v in self.items + (self.b, self.k))


@dataclass(frozen=True)
class PackingAnswer:
    """Either ``assignment[i]`` = bin (1-based) of item i, or ``None`` for NoKPacking."""

    assignment: Optional[tuple] = None

    @property
    def no_k_packing(self):
        return self.assignment is None

    def is_valid_for(self, inst):
        if self.assignment is None:
            return True
        if len(self.assignment) != len(inst.items):
            return False
        loads = {}
        for size, where in zip(inst.items, self.assignment):
            if not 1 <= where <= inst.k + 1:
                return False
            loads[where] = loads.get(where, 0) + size
        return all(load <= inst.b for load in loads.values())


NO_K_PACKING = PackingAnswer(None)
CANONICAL_MAX_CUT_YES = MaxCutInstance((1, 2), ((1, 2),), (1,), 1)
CANONICAL_BIN_PACKING_NO = BinPackingInstance((2,), 1, 1)


def _number_checks(report, numbers, r, N):
    report.params["r"] = r
    report.params["N"] = N
    report.check("ft_magnitude", within_ft_bound(numbers, N) if numbers else True)
    report.check("number_bits", all(bit_length_within(x, r, N) for x in numbers))


def kernelize_knapsack(inst: KnapsackInstance):
    """Compress ``(w, W)`` and ``(p, P)`` separately with N = n + 2."""
    n = inst.n
    report = KernelReport("knapsack", original_bits=inst.bits())
    w, W = compress_inequality(inst.w, inst.W)
    p, P = compress_inequality(inst.p, inst.P)
    kernel = KnapsackInstance(w, p, W, P)
    report.extra["items"] = n
    report.fire("compress-weights", f"n={n}")
    report.fire("compress-profits", f"n={n}")
    _number_checks(report, w + (W,), n + 1, n + 2)
    _number_checks(report, p + (P,), n + 1, n + 2)
    report.kernel_bits = kernel.bits()
    report.params["size_constant"] = KNAPSACK_SIZE_CONSTANT
    report.check("total_bits", report.kernel_bits <= KNAPSACK_SIZE_CONSTANT * (n + 1) ** 4)
    return kernel, report


def kernelize_subset_sum(inst: SubsetSumInstance):
    """One compression of ``(a, b)`` with N = n + 2; ``a.x = b`` is a zero sign."""
    n = inst.n
    report = KernelReport("subset-sum", original_bits=inst.bits())
    out = reduce_vector(inst.a + (inst.b,), n + 2)
    kernel = SubsetSumInstance(out[:-1], out[-1])
    report.extra["items"] = n
    report.fire("compress", f"n={n}")
    _number_checks(report, out, n + 1, n + 2)
    report.kernel_bits = kernel.bits()
    report.params["size_constant"] = KNAPSACK_SIZE_CONSTANT
    report.check("total_bits", report.kernel_bits <= KNAPSACK_SIZE_CONSTANT * (n + 1) ** 4)
    return kernel, report


def greedy_cut(inst: MaxCutInstance):
    """Place vertices one at a time on the side with more crossing weight.

    The resulting cut weighs at least half the total edge weight.
    """
    side = set()
    placed = set()
    incident = {v: [] for v in inst.vertices}
    for (u, v), w in zip(inst.edges, inst.weights):
        incident[u].append((v, w))
        incident[v].append((u, w))
    for v in inst.vertices:
        to_inside = sum((w for x, w in incident[v] if x in placed and x in side), Fraction(0))
        to_outside = sum((w for x, w in incident[v] if x in placed and x not in side), Fraction(0))
        if to_outside > to_inside:
            side.add(v)
        placed.add(v)
    return frozenset(side)


def kernelize_max_cut(inst: MaxCutInstance):
    report = KernelReport("max-cut", original_bits=inst.bits())
    total = inst.total_weight
    report.params["T"] = total
    if total >= 2 * inst.W:
        report.fire("greedy-yes", f"T={total} >= 2W={2 * inst.W}")
        kernel = CANONICAL_MAX_CUT_YES
        report.kernel_bits = kernel.bits()
        return kernel, report
    m = len(inst.edges)
    report.check("edge_count", m <= 2 * inst.W)
    used = {x for e in inst.edges for x in e}
    vertices = tuple(v for v in inst.vertices if v in used)
    if len(vertices) < len(inst.vertices):
        report.fire("drop-isolated", f"{len(inst.vertices) - len(vertices)} vertices")
    out = reduce_vector(inst.weights + (inst.W,), m + 2)
    report.fire("compress", f"edges={m}")
    _number_checks(report, out, m + 1, m + 2)
    kernel = MaxCutInstance(vertices, inst.edges, out[:-1], out[-1])
    report.kernel_bits = kernel.bits()
    return kernel, report


def _bin_packing_core(inst: BinPackingInstance, report):
    """``(kept indices, kernel)``, or ``None`` when k bins certainly do not suffice."""
    k, b = inst.k, inst.b
    if any(a > b for a in inst.items):
        report.fire("oversized-item")
        return None
    if sum(inst.items) > k * b:
        report.fire("total-exceeds-kb", f"{sum(inst.items)} > {k * b}")
        return None
    keep = [i for i, a in enumerate(inst.items) if a * (k + 1) >= b]
    dropped = len(inst.items) - len(keep)
    if dropped:
        report.fire("drop-small-items", f"{dropped} items below b/(k+1)")
    report.params["kept_bound"] = k * (k + 1)
    report.check("kept_items", len(keep) <= k * (k + 1))
    N = k * (k + 1) + 2
    out = reduce_vector(tuple(inst.items[i] for i in keep) + (b,), N)
    _number_checks(report, out, len(out), N)
    return keep, BinPackingInstance(out[:-1], out[-1], k)


def kernelize_bin_packing(inst: BinPackingInstance):
    """Keep the items of size at least b/(k+1) and compress them together with b.

    Returns the canonical no-instance when an item exceeds b or the total
    exceeds k*b.
    """
    report = KernelReport("bin-packing", original_bits=inst.bits())
    core = _bin_packing_core(inst, report)
    if core is None:
        report.extra["outcome"] = "no-k-packing"
        kernel = CANONICAL_BIN_PACKING_NO
    else:
        keep, kernel = core
        report.extra["outcome"] = "kernel"
        report.extra["kept"] = " ".join(map(str, keep))
    report.extra["size_target"] = "O(k^3)"
    report.kernel_bits = kernel.bits()
    return kernel, report


def pack_into(items, capacity, bins):
    """Depth-first search for an assignment of items to at most ``bins`` bins.

    Returns 0-based bin indices aligned with ``items`` or None.
    """
    order = sorted(range(len(items)), key=lambda i: (-items[i], i))
    loads = []
    where = [0] * len(items)

    def place(pos):
        if pos == len(order):
            return True
        i = order[pos]
        tried = set()
        for j, load in enumerate(loads):
            if load in tried or load + items[i] > capacity:
                continue
            tried.add(load)
            loads[j] += items[i]
            where[i] = j
            if place(pos + 1):
                return True
            loads[j] -= items[i]
        if len(loads) < bins and items[i] <= capacity:
            loads.append(items[i])
            where[i] = len(loads) - 1
            if place(pos + 1):
                return True
            loads.pop()
        return False

    return list(where) if place(0) else None


def solve_additive_one(inst: BinPackingInstance) -> PackingAnswer:
    """Pack into at most k+1 bins or report that k bins do not suffice."""
    k, b = inst.k, inst.b
    core = _bin_packing_core(inst, KernelReport("bin-packing"))
    if core is None:
        return NO_K_PACKING
    keep, kernel = core
    packed = pack_into(kernel.items, kernel.b, k + 1)
    if packed is None:
        return NO_K_PACKING
    assignment = [0] * len(inst.items)
    loads = [0] * (k + 1)
    for i, j in zip(keep, packed):
        assignment[i] = j + 1
        loads[j] += inst.items[i]
    kept = set(keep)
    small = sorted((i for i in range(len(inst.items)) if i not in kept), key=lambda i: (-inst.items[i], i))
    for i in small:
        for j in range(k + 1):
            if loads[j] + inst.items[i] <= b:
                loads[j] += inst.items[i]
                assignment[i] = j + 1
                break
        else:
            raise AssertionError("greedy add-back cannot fail when the total is at most k*b")
    return PackingAnswer(tuple(assignment))
