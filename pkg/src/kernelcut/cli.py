"""Command-line entry point.

Exit codes: 0 success, 2 validation or usage error, 3 refused scale.
"""

import argparse
import sys

from .errors import RefusedScale, ValidationError
from .exact import format_rational
from .few_sizes import (
    GroupedSubsetSum,
    kernelize_subset_sum_few_sizes,
    solve_bounded_ilp,
    solve_knapsack_few_weights,
    subset_sum_ilp,
)
from .formats import parse, read_tag, serialize
from .ft_core import CompressionRequest, reduce_vector, verify_compression
from .generators import FAMILIES, generate
from .numeric import (
    SubsetSumInstance,
    kernelize_bin_packing,
    kernelize_knapsack,
    kernelize_max_cut,
    kernelize_subset_sum,
    pack_into,
    solve_additive_one,
)
from .oracles import (
    CnfFormula,
    gurari_reduce,
    knapsack_feasible_set,
    parse_dimacs,
    solve_bin_packing_brute,
    solve_hitting_set_brute,
    solve_knapsack_brute,
    solve_max_cut_brute,
    solve_sat_brute,
    solve_set_packing_brute,
    solve_subset_sum_brute,
    solve_subset_sum_dp,
)
from .polyprog import Polynomial, compress_ipp, compress_polynomial, feasible_set, solve_ipp_brute
from .report import KernelReport
from .setsystems import kernelize_hitting_set, kernelize_set_packing

EXIT_OK, EXIT_VALIDATION, EXIT_REFUSED = 0, 2, 3


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _load(path, expected=None):
    inst = parse(_read(path))
    tag = _tag_of(inst)
    if expected is not None and tag != expected:
        raise ValidationError(f"{path} holds a {tag} instance, not {expected}")
    return inst


def _tag_of(inst):
    return read_tag(serialize(inst))


def _compress_vector(req):
    out = reduce_vector(req.w, req.N)
    report = KernelReport("vector", original_bits=sum(len(format_rational(x)) for x in req.w))
    report.fire("compress", f"r={len(req.w)} N={req.N}")
    report.params["r"] = len(req.w)
    report.params["N"] = req.N
    kernel = CompressionRequest(out, req.N)
    report.kernel_bits = sum(len(format_rational(x)) for x in out)
    return kernel, report


def _grouped_answer(inst: GroupedSubsetSum):
    return solve_subset_sum_brute(SubsetSumInstance(tuple(inst.items()), inst.t)) is not None


KERNELIZERS = {
    "knapsack": kernelize_knapsack,
    "subset-sum": kernelize_subset_sum,
    "hitting-set": kernelize_hitting_set,
    "set-packing": kernelize_set_packing,
    "max-cut": kernelize_max_cut,
    "bin-packing": kernelize_bin_packing,
    "grouped-subset-sum": kernelize_subset_sum_few_sizes,
    "ipp": compress_ipp,
    "vector": _compress_vector,
}


def _verify(tag, inst, kernel):
    """True when the oracle answers agree on the input and the kernel."""
    if tag == "knapsack":
        return knapsack_feasible_set(inst) == knapsack_feasible_set(kernel)
    if tag == "subset-sum":
        return (solve_subset_sum_brute(inst) is None) == (solve_subset_sum_brute(kernel) is None)
    if tag == "hitting-set":
        return (solve_hitting_set_brute(inst) is None) == (solve_hitting_set_brute(kernel) is None)
    if tag == "set-packing":
        return (solve_set_packing_brute(inst) is None) == (solve_set_packing_brute(kernel) is None)
    if tag == "max-cut":
        return (solve_max_cut_brute(inst) is None) == (solve_max_cut_brute(kernel) is None)
    if tag == "bin-packing":
        answer = solve_additive_one(inst)
        if not answer.is_valid_for(inst):
            return False
        return not answer.no_k_packing or solve_bin_packing_brute(inst) is None
    if tag == "grouped-subset-sum":
        expected = _grouped_answer(inst)
        if isinstance(kernel, SubsetSumInstance):
            return expected == (solve_subset_sum_brute(kernel) is not None)
        return expected == kernel.answer
    if tag == "ipp":
        return feasible_set(inst) == feasible_set(kernel)
    if tag == "vector":
        return verify_compression(inst.w, kernel.w, inst.N).passed
    raise ValidationError(f"no oracle for {tag}")


def _kernelize(tag, inst, args=None):
    if tag == "polynomial":
        u = getattr(args, "u", None)
        if u is None:
            raise ValidationError("polynomial compression needs --u")
        kernel = compress_polynomial(inst, u)
        report = KernelReport("polynomial", original_bits=inst.bits(), kernel_bits=kernel.bits())
        report.params["u"] = u
        report.fire("compress", f"r={inst.r}")
        return kernel, report
    if tag not in KERNELIZERS:
        raise ValidationError(f"no kernelizer for {tag}")
    return KERNELIZERS[tag](inst)


def cmd_compress(args, out):
    req = _load(args.file, "vector")
    if args.N is not None:
        req = CompressionRequest(req.w, args.N)
    kernel, _ = _compress_vector(req)
    out.write(serialize(kernel))


def cmd_kernelize(args, out):
    inst = _load(args.file, args.problem)
    kernel, report = _kernelize(args.problem, inst, args)
    if args.verify:
        if args.problem == "polynomial":
            raise ValidationError("--verify is not available for bare polynomials")
        report.verdict = "equivalent" if _verify(args.problem, inst, kernel) else "not-equivalent"
    if args.output:
        text = serialize(kernel) if not hasattr(kernel, "answer") else f"answer={'yes' if kernel.answer else 'no'}\n"
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    out.write(report.to_text())


def _format_witness(witness):
    if witness is None:
        return None
    if isinstance(witness, (tuple, list)):
        return " ".join(str(int(x)) if isinstance(x, bool) else str(x) for x in witness)
    return str(witness)


def _solve(problem, inst, engine):
    """``(answer, witness, extra lines)``."""
    if engine == "dp":
        if problem == "subset-sum":
            return solve_subset_sum_dp(inst), None, []
        if problem == "grouped-subset-sum":
            return solve_subset_sum_dp(SubsetSumInstance(tuple(inst.items()), inst.t)), None, []
        raise ValidationError(f"engine dp does not support {problem}")
    if engine == "ilp":
        if problem == "grouped-knapsack":
            best = solve_knapsack_few_weights(inst)
            return best >= inst.P, None, [f"optimum={format_rational(best)}"]
        if problem == "grouped-subset-sum":
            solution = solve_bounded_ilp(subset_sum_ilp(inst))
            return solution is not None, None if solution is None else solution.x, []
        raise ValidationError(f"engine ilp does not support {problem}")
    if problem == "bin-packing":
        answer = solve_additive_one(inst)
        exact = solve_bin_packing_brute(inst)
        lines = [f"additive_one={'no-k-packing' if answer.no_k_packing else _format_witness(answer.assignment)}"]
        return exact is not None, exact, lines
    if problem == "grouped-subset-sum":
        witness = solve_subset_sum_brute(SubsetSumInstance(tuple(inst.items()), inst.t))
        return witness is not None, witness, []
    if problem == "ipp":
        return solve_ipp_brute(inst) + ([],)
    brute = {
        "knapsack": solve_knapsack_brute,
        "subset-sum": solve_subset_sum_brute,
        "hitting-set": solve_hitting_set_brute,
        "set-packing": solve_set_packing_brute,
        "max-cut": solve_max_cut_brute,
        "cnf": solve_sat_brute,
    }
    if problem not in brute:
        raise ValidationError(f"engine brute does not support {problem}")
    witness = brute[problem](inst)
    return witness is not None, witness, []


def cmd_solve(args, out):
    inst = _load(args.file, args.problem)
    answer, witness, lines = _solve(args.problem, inst, args.engine)
    out.write(f"answer={'yes' if answer else 'no'}\n")
    if witness is not None:
        out.write(f"witness={_format_witness(witness)}\n")
    for line in lines:
        out.write(line + "\n")


def _load_cnf(path):
    text = _read(path)
    stripped = [l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    if stripped and stripped[0].split()[0] == "problem":
        phi = parse(text)
        if not isinstance(phi, CnfFormula):
            raise ValidationError(f"{path} does not hold a cnf formula")
        return phi
    return parse_dimacs(text)


def _param(text):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, int(value)
    except ValueError:
        try:
            return key, float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"parameter {key} needs a number") from None


def cmd_generate(args, out):
    if args.kind == "gurari":
        if not args.target:
            raise ValidationError("generate gurari needs a CNF file")
        result = gurari_reduce(_load_cnf(args.target))
        out.write(serialize(result.subset_sum()))
        if args.digits:
            for row in result.digits:
                out.write("# " + "".join(map(str, row)) + "\n")
        return
    if args.target not in FAMILIES:
        raise ValidationError(f"unknown instance family {args.target!r}; choose from {', '.join(FAMILIES)}")
    params = dict(args.param or [])
    out.write(serialize(generate(args.target, args.seed, **params)))


def cmd_stats(args, out):
    text = _read(args.file)
    if text.lstrip().startswith("problem="):
        out.write(KernelReport.from_text(text).to_text())
        return
    inst = parse(text)
    tag = _tag_of(inst)
    _, report = _kernelize(tag, inst, args)
    out.write(report.to_text())


def build_parser():
    parser = argparse.ArgumentParser(prog="kernelcut", description="Kernelization of weighted problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a rational vector")
    p.add_argument("file")
    p.add_argument("--N", type=int, help="override the N stored in the file")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("kernelize", help="kernelize an instance and print its report")
    p.add_argument("problem", choices=sorted(list(KERNELIZERS) + ["polynomial"]))
    p.add_argument("file")
    p.add_argument("--verify", action="store_true", help="run the brute-force oracle on input and kernel")
    p.add_argument("--output", "-o", help="write the kernel instance here")
    p.add_argument("--u", type=int, help="box radius for polynomial compression")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("solve", help="decide an instance exactly")
    p.add_argument(
        "problem",
        choices=sorted(
            ["knapsack", "subset-sum", "hitting-set", "set-packing", "max-cut", "bin-packing",
             "grouped-knapsack", "grouped-subset-sum", "ipp", "cnf"]
        ),
    )
    p.add_argument("file")
    p.add_argument("--engine", choices=["brute", "dp", "ilp"], default="brute")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="generate instances")
    p.add_argument("kind", choices=["gurari", "random"])
    p.add_argument("target", nargs="?", help="CNF file (gurari) or instance family (random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--param", type=_param, action="append", help="family parameter key=value")
    p.add_argument("--digits", action="store_true", help="append the digit matrix as comments")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="print a kernel report as key=value lines")
    p.add_argument("file")
    p.add_argument("--u", type=int, help="box radius for polynomial files")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        args.func(args, out)
    except ValidationError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except RefusedScale as exc:
        err.write(f"refused: {exc}\n")
        return EXIT_REFUSED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
