"""Sunflowers and the kernels for Weighted d-Hitting Set(k) and d-Set Packing(k)."""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Optional

from .errors import ValidationError
from .exact import bit_length_within, rational_bits, rational_vector, to_fraction, within_ft_bound
from .ft_core import reduce_vector
from .report import KernelReport


class Variant(Enum):
    HITTING_SET = "hitting-set"
    SET_PACKING = "set-packing"


@dataclass(frozen=True)
class SetSystemInstance:
    """A d-uniform set family with weights.

    ``weights`` is aligned with ``universe`` for hitting set and with
    ``family`` for set packing. Sets keep their input order, which the
    kernelizers use for deterministic tie-breaking.
    """

    universe: tuple
    family: tuple
    weights: tuple
    k: int
    W: Fraction
    variant: Variant
    d: int

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "family", tuple(frozenset(s) for s in self.family))
        object.__setattr__(self, "weights", rational_vector(self.weights))
        object.__setattr__(self, "W", to_fraction(self.W))
        object.__setattr__(self, "variant", Variant(self.variant))
        self.validate()

    def validate(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValidationError(f"d must be a positive integer, got {self.d!r}")
        if not isinstance(self.k, int) or self.k < 0:
            raise ValidationError(f"k must be a non-negative integer, got {self.k!r}")
        if any(not isinstance(e, int) or isinstance(e, bool) for e in self.universe):
            raise ValidationError("element ids must be integers")
        if len(set(self.universe)) != len(self.universe):
            raise ValidationError("universe lists an element twice")
        members = set(self.universe)
        seen = set()
        for s in self.family:
            if len(s) != self.d:
                raise ValidationError(f"set {sorted(s)} does not have exactly {self.d} elements")
            if not s <= members:
                raise ValidationError(f"set {sorted(s)} uses elements outside the universe")
            if s in seen:
                raise ValidationError(f"set {sorted(s)} appears twice")
            seen.add(s)
        expected = len(self.universe) if self.variant is Variant.HITTING_SET else len(self.family)
        if len(self.weights) != expected:
            raise ValidationError(f"expected {expected} weights, got {len(self.weights)}")
        if any(x < 0 for x in self.weights):
            raise ValidationError("weights must be non-negative")

    def element_weight(self, element):
        return self.weights[self.universe.index(element)]

    def bits(self):
        id_bits = max((abs(e).bit_length() + 1 for e in self.universe), default=1)
        return (
            sum(rational_bits(x) for x in self.weights)
            + rational_bits(self.W)
            + id_bits * (len(self.universe) + self.d * len(self.family))
        )


@dataclass(frozen=True)
class Sunflower:
    petals: tuple
    core: frozenset
    indices: tuple = ()

    def is_valid(self):
        for i, a in enumerate(self.petals):
            for b in self.petals[i + 1 :]:
                if a & b != self.core:
                    return False
        return True


def _erdos_rado(sets, p):
    """Indices of a p-sunflower among ``(index, set)`` pairs, plus its core."""
    if len(sets) < p:
        return None
    used, chosen = set(), []
    for idx, s in sets:
        if used.isdisjoint(s):
            chosen.append(idx)
            used |= s
            if len(chosen) == p:
                return chosen, frozenset()
    counts = Counter(e for _, s in sets for e in s)
    if not counts:
        return None
    pivot = min(counts, key=lambda e: (-counts[e], e))
    found = _erdos_rado([(idx, s - {pivot}) for idx, s in sets if pivot in s], p)
    if found is None:
        return None
    return found[0], found[1] | {pivot}


def find_sunflower(family, d, k) -> Optional[Sunflower]:
    """A (k+1)-sunflower in a family of d-sets, or None.

    Always succeeds when ``len(family) > d! * k^d``.
    """
    family = [frozenset(s) for s in family]
    if any(len(s) != d for s in family):
        raise ValidationError(f"every set must have exactly {d} elements")
    found = _erdos_rado(list(enumerate(family)), k + 1)
    if found is None:
        return None
    indices, core = found
    return Sunflower(tuple(family[i] for i in indices), core, tuple(indices))


def _restricted_universe(inst, family):
    used = set().union(*family) if family else set()
    return tuple(e for e in inst.universe if e in used)


def _shrink(inst, petal_count, pick_victim, report):
    sets = list(enumerate(inst.family))
    bound = factorial(inst.d) * (petal_count - 1) ** inst.d
    while len(sets) > bound:
        found = _erdos_rado(sets, petal_count)
        assert found is not None, "Erdos-Rado guarantees a sunflower here"
        indices, core = found
        victim = pick_victim(indices)
        sets = [(i, s) for i, s in sets if i != victim]
        report.fire("sunflower-delete", f"set {victim} {sorted(inst.family[victim])} core {sorted(core)}")
    report.params["family_bound"] = bound
    report.check("family_size", len(sets) <= bound)
    return [i for i, _ in sets]


def _compress(weights, W, k, report):
    N = k + 2
    out = reduce_vector(tuple(weights) + (W,), N)
    r = len(out)
    report.params["r"] = r
    report.params["N"] = N
    report.check("ft_magnitude", within_ft_bound(out, N))
    report.check("weight_bits", all(bit_length_within(x, r, N) for x in out))
    return out[:-1], out[-1]


def kernelize_hitting_set(inst: SetSystemInstance):
    """Sunflower reduction to at most d!(k+1)^d sets, then weight compression."""
    if inst.variant is not Variant.HITTING_SET:
        raise ValidationError("expected a hitting-set instance")
    report = KernelReport("hitting-set", original_bits=inst.bits())
    keep = _shrink(inst, inst.k + 2, max, report)
    family = [inst.family[i] for i in keep]
    universe = _restricted_universe(inst, family)
    dropped = [e for e in inst.universe if e not in set(universe)]
    if dropped:
        report.fire("drop-elements", " ".join(map(str, dropped)))
    weights, W = _compress([inst.element_weight(e) for e in universe], inst.W, inst.k, report)
    kernel = SetSystemInstance(universe, family, weights, inst.k, W, Variant.HITTING_SET, inst.d)
    report.kernel_bits = kernel.bits()
    return kernel, report


def kernelize_set_packing(inst: SetSystemInstance):
    """Sunflower reduction to at most d!(dk)^d sets, then weight compression.

    Each round deletes the lightest petal of a (dk+1)-sunflower; among equally
    light petals the one latest in input order goes.
    """
    if inst.variant is not Variant.SET_PACKING:
        raise ValidationError("expected a set-packing instance")
    report = KernelReport("set-packing", original_bits=inst.bits())

    def lightest(indices):
        return min(indices, key=lambda i: (inst.weights[i], -i))

    keep = _shrink(inst, inst.d * inst.k + 1, lightest, report)
    family = [inst.family[i] for i in keep]
    universe = _restricted_universe(inst, family)
    weights, W = _compress([inst.weights[i] for i in keep], inst.W, inst.k, report)
    kernel = SetSystemInstance(universe, family, weights, inst.k, W, Variant.SET_PACKING, inst.d)
    report.kernel_bits = kernel.bits()
    return kernel, report
