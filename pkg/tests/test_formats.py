from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from kernelcut.errors import ValidationError
from kernelcut.formats import TAGS, parse, read_tag, serialize
from kernelcut.generators import FAMILIES, generate
from kernelcut.polyprog import IppInstance, Polynomial
from kernelcut.report import KernelReport


@given(st.sampled_from(sorted(FAMILIES)), st.integers(0, 2**31))
def test_round_trip_generated(family, seed):
    inst = generate(family, seed)
    text = serialize(inst)
    assert parse(text) == inst
    assert serialize(parse(text)) == text
    assert read_tag(text) == family


def test_round_trip_edge_cases():
    cases = [
        Polynomial(0, 0, [((), F(-3, 4))]),
        Polynomial(2, 5),
        Polynomial(1, 2, [((2,), 0)], keep_zeros=True),
        IppInstance(Polynomial(1, 1), [], [], F(1, 2), 7),
    ]
    for inst in cases:
        assert parse(serialize(inst)) == inst


def test_binary_degree_and_radius():
    text = serialize(IppInstance(Polynomial(1, 2, [((2,), 1)]), [], [], 0, 5))
    assert "d 10" in text and "u 101" in text


def test_every_tag_has_a_family():
    assert set(TAGS) == set(FAMILIES)


def test_comments_and_blank_lines():
    text = "# leading comment\n\nproblem subset-sum version 1\na 1 2 3  # items\n\nb 3\n"
    assert parse(text).a == (1, 2, 3)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("problem knapsack\n", 1),
        ("problem nothing version 1\n", 1),
        ("problem knapsack version 2\n", 1),
        ("problem subset-sum version 1\na 1 x\nb 1\n", 2),
        ("problem subset-sum version 1\na 1\nb 1\nb 2\n", 4),
        ("problem subset-sum version 1\na 1\nc 1\n", 3),
        ("problem bin-packing version 1\nitems 1 2\nb 1 2\nk 1\n", 3),
        ("problem max-cut version 1\nvertices 1 2\nW 1\nedge 1 2\n", 4),
        ("problem max-cut version 1\nvertices 1 2\nW 1\nedge 1 2 1/2\n", 4),
        ("problem hitting-set version 1\nd 2\nk 1\nW 1\nuniverse 1 2\nweights 1 1\nset 1 2 2\n", 7),
        ("problem polynomial version 1\nn 1\nd 10\nmono 1 1\n", 4),
        ("problem polynomial version 1\nn 1\nd 1\nmono 2 : 1\n", 4),
        ("problem polynomial version 1\nn 1\nd 3\n", 3),
        ("problem knapsack version 1\nw 1/0\n", 2),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(ValidationError) as exc:
        parse(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_missing_keyword():
    with pytest.raises(ValidationError, match="missing keyword 'b'"):
        parse("problem subset-sum version 1\na 1 2\n")


def test_report_round_trip():
    report = KernelReport("knapsack", original_bits=10, kernel_bits=4)
    report.fire("compress", "n=2")
    report.params["N"] = 4
    report.check("total_bits", True)
    report.verdict = "equivalent"
    again = KernelReport.from_text(report.to_text())
    assert again.to_text() == report.to_text()


def test_report_rejects_garbage():
    with pytest.raises(ValidationError):
        KernelReport.from_text("problem=x\nnonsense\n")
    with pytest.raises(ValidationError):
        KernelReport.from_text("problem=x\nweird=1\n")
