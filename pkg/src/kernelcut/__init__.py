"""Exact kernelization of weighted parameterized problems through weight compression."""

from ._accel import BACKEND
from .errors import DegenerateBasis, RefusedScale, ValidationError
from .few_sizes import (
    GroupedKnapsack,
    GroupedSubsetSum,
    build_envelope,
    kernelize_subset_sum_few_sizes,
    solve_bounded_ilp,
    solve_knapsack_few_weights,
)
from .formats import parse, serialize
from .ft_core import (
    compress_inequality,
    is_lll_reduced,
    lll_reduce,
    reduce_vector,
    simultaneous_approx,
    verify_compression,
)
from .numeric import (
    BinPackingInstance,
    KnapsackInstance,
    MaxCutInstance,
    PackingAnswer,
    SubsetSumInstance,
    greedy_cut,
    kernelize_bin_packing,
    kernelize_knapsack,
    kernelize_max_cut,
    kernelize_subset_sum,
    solve_additive_one,
)
from .oracles import CnfFormula, gurari_reduce
from .polyprog import IppInstance, Polynomial, compress_ipp, compress_polynomial, eval_poly, solve_ipp_brute
from .report import KernelReport
from .setsystems import SetSystemInstance, Sunflower, find_sunflower, kernelize_hitting_set, kernelize_set_packing

__version__ = "0.1.0"
