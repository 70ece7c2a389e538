"""Exhaustive reference solvers and the 3-SAT to Subset Sum reduction.

Every oracle checks its candidate count against the enumeration cap before
starting and raises ``RefusedScale`` above it.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .errors import ValidationError, check_cap
from .numeric import BinPackingInstance, KnapsackInstance, MaxCutInstance, SubsetSumInstance
from .setsystems import SetSystemInstance, Variant


@dataclass(frozen=True)
class CnfFormula:
    """``clauses`` holds triples of non-zero literals; ``-i`` is the negation of variable i."""

    n: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise ValidationError(f"variable count must be a non-negative integer, got {self.n!r}")
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValidationError(f"clause {clause} does not have exactly 3 literals")
            for lit in clause:
                if isinstance(lit, bool) or not isinstance(lit, int) or not 1 <= abs(lit) <= self.n:
                    raise ValidationError(f"literal {lit!r} is out of range 1..{self.n}")

    @property
    def m(self):
        return len(self.clauses)

    def satisfied_by(self, assignment):
        """``assignment[i-1]`` is the truth value of variable i."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def parse_dimacs(text) -> CnfFormula:
    """DIMACS CNF: ``c`` comments, a ``p cnf n m`` header, clauses ended by ``0``."""
    n = m = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValidationError("header must read 'p cnf <vars> <clauses>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ValidationError("header counts must be integers", lineno) from None
            continue
        if n is None:
            raise ValidationError("clause before the 'p cnf' header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ValidationError(f"bad literal {token!r}", lineno) from None
            if lit == 0:
                if len(current) != 3:
                    raise ValidationError(f"clause has {len(current)} literals, expected 3", lineno)
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > n:
                raise ValidationError(f"literal {lit} exceeds variable count {n}", lineno)
            else:
                current.append(lit)
    if n is None:
        raise ValidationError("missing 'p cnf' header")
    if current:
        raise ValidationError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise ValidationError(f"header announces {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def format_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.n} {phi.m}"]
    lines += [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GurariOutput:
    """``digits[i][j]`` is digit j (most significant first) of ``numbers[i]``.

    Numbers are ordered v1, not-v1, v2, not-v2, ..., then y1, y1', y2, y2', ...
    """

    numbers: tuple
    target: int
    digits: tuple

    def column_sums(self):
        return tuple(sum(col) for col in zip(*self.digits)) if self.digits else ()

    def subset_sum(self) -> SubsetSumInstance:
        return SubsetSumInstance(self.numbers, self.target)


def _from_digits(digits):
    return int("".join(map(str, digits))) if digits else 0


def gurari_reduce(phi: CnfFormula) -> GurariOutput:
    """Subset Sum instance that has a solution iff ``phi`` is satisfiable.

    Columns 1..n force exactly one of v_i, not-v_i; column n+j sums the true
    literal occurrences of clause j plus two slack numbers to 3. Column sums
    never exceed 5, so the decimal additions carry nothing.
    """
    n, m = phi.n, phi.m
    width = n + m
    rows = []
    for i in range(1, n + 1):
        for lit in (i, -i):
            row = [0] * width
            row[i - 1] = 1
            for j, clause in enumerate(phi.clauses):
                row[n + j] = clause.count(lit)
            rows.append(tuple(row))
    for j in range(m):
        for _ in range(2):
            row = [0] * width
            row[n + j] = 1
            rows.append(tuple(row))
    target_digits = [1] * n + [3] * m
    out = GurariOutput(tuple(_from_digits(r) for r in rows), _from_digits(target_digits), tuple(rows))
    assert all(s <= 5 for s in out.column_sums())
    return out


def solve_sat_brute(phi: CnfFormula):
    """Satisfying assignment as a tuple of booleans, or None."""
    check_cap(2**phi.n, "3-SAT assignments")
    for assignment in product((False, True), repeat=phi.n):
        if phi.satisfied_by(assignment):
            return assignment
    return None


def solve_subset_sum_brute(inst: SubsetSumInstance):
    """Indices of a subset summing to the target, or None.

    All ``2^n`` subset sums are listed; entry ``mask`` of the list is the sum
    of the items selected by the bits of ``mask``.
    """
    check_cap(2**inst.n, "subset sum subsets")
    sums = [0]
    for a in inst.a:
        sums += [s + a for s in sums]
    try:
        mask = sums.index(inst.b)
    except ValueError:
        return None
    return tuple(i for i in range(inst.n) if mask >> i & 1)


def solve_subset_sum_dp(inst: SubsetSumInstance) -> bool:
    """Pseudo-polynomial reachability over values 0..b, held in one bitset."""
    check_cap(inst.b + 1, "subset sum target")
    window = (1 << (inst.b + 1)) - 1
    reach = 1
    for a in inst.a:
        reach = (reach | reach << a) & window
    return bool(reach >> inst.b & 1)


def solve_knapsack_brute(inst: KnapsackInstance):
    """A feasible 0/1 vector or None."""
    check_cap(2**inst.n, "knapsack selections")
    for x in product((0, 1), repeat=inst.n):
        if inst.accepts(x):
            return x
    return None


def knapsack_feasible_set(inst: KnapsackInstance):
    check_cap(2**inst.n, "knapsack selections")
    return frozenset(x for x in product((0, 1), repeat=inst.n) if inst.accepts(x))


def _count_upto(n, k):
    return sum(comb(n, i) for i in range(min(n, k) + 1))


def solve_hitting_set_brute(inst: SetSystemInstance):
    """A hitting set of at most k elements with weight at most W, or None."""
    if inst.variant is not Variant.HITTING_SET:
        raise ValidationError("expected a hitting-set instance")
    check_cap(_count_upto(len(inst.universe), inst.k), "hitting set candidates")
    weight = dict(zip(inst.universe, inst.weights))
    for size in range(min(inst.k, len(inst.universe)) + 1):
        for chosen in combinations(inst.universe, size):
            picked = set(chosen)
            if sum((weight[e] for e in chosen), Fraction(0)) <= inst.W and all(s & picked for s in inst.family):
                return chosen
    return None


def solve_set_packing_brute(inst: SetSystemInstance, mode="exactly"):
    """Indices of pairwise disjoint sets with weight at least W, or None.

    ``mode`` is ``"exactly"`` (k sets) or ``"at-most"`` (up to k sets).
    """
    if inst.variant is not Variant.SET_PACKING:
        raise ValidationError("expected a set-packing instance")
    if mode not in ("exactly", "at-most"):
        raise ValidationError(f"unknown packing mode {mode!r}")
    sizes = [inst.k] if mode == "exactly" else range(inst.k + 1)
    check_cap(sum(comb(len(inst.family), s) for s in sizes), "set packing candidates")
    for size in sizes:
        for chosen in combinations(range(len(inst.family)), size):
            sets = [inst.family[i] for i in chosen]
            if sum(len(s) for s in sets) != len(frozenset().union(*sets)):
                continue
            if sum((inst.weights[i] for i in chosen), Fraction(0)) >= inst.W:
                return chosen
    return None


def max_cut_value(inst: MaxCutInstance):
    """Largest cut weight and one side achieving it."""
    vertices = inst.vertices
    check_cap(2 ** max(len(vertices) - 1, 0), "cuts")
    best, best_side = Fraction(0), ()
    # fixing the first vertex outside halves the enumeration
    rest = vertices[1:]
    for mask in range(2 ** len(rest)):
        side = tuple(v for i, v in enumerate(rest) if mask >> i & 1)
        value = inst.cut_weight(side)
        if value > best:
            best, best_side = value, side
    return best, best_side


def solve_max_cut_brute(inst: MaxCutInstance):
    """A side of a cut with weight at least W, or None."""
    value, side = max_cut_value(inst)
    return side if value >= inst.W else None


def solve_bin_packing_brute(inst: BinPackingInstance, bins=None):
    """Assignment into ``bins`` (default k) bins of size b, or None.

    Enumerates restricted-growth labelings, so bins are never permuted.
    """
    bins = inst.k if bins is None else bins
    items = inst.items
    check_cap(bins ** len(items), "bin assignments")
    assignment = [0] * len(items)
    loads = [0] * bins

    def place(i, used):
        if i == len(items):
            return True
        for where in range(min(used + 1, bins)):
            if loads[where] + items[i] <= inst.b:
                loads[where] += items[i]
                assignment[i] = where + 1
                if place(i + 1, max(used, where + 1)):
                    return True
                loads[where] -= items[i]
        return False

    return tuple(assignment) if place(0, 0) else None
