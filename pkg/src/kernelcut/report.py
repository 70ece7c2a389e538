"""Kernel-size reporting."""

from dataclasses import dataclass, field
from typing import Optional

from .errors import ValidationError


@dataclass
class KernelReport:
    """What a kernelizer did and how large its output is.

    ``params`` holds the compression parameters (``r``, ``N``) and any other
    per-problem constants; ``bound_ok`` is computed with exact arithmetic.
    """

    problem: str
    original_bits: int = 0
    kernel_bits: int = 0
    rule_firings: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    verdict: Optional[str] = None
    bound_ok: bool = True
    extra: dict = field(default_factory=dict)

    def fire(self, rule, detail=None):
        self.rule_firings[rule] = self.rule_firings.get(rule, 0) + 1
        if detail is not None:
            self.trace.append(f"{rule}: {detail}")

    def check(self, name, ok):
        """Record one bound check; ``bound_ok`` is the conjunction of all of them."""
        self.extra[f"check.{name}"] = "pass" if ok else "fail"
        self.bound_ok = self.bound_ok and bool(ok)

    def to_text(self):
        lines = [
            f"problem={self.problem}",
            f"original_bits={self.original_bits}",
            f"kernel_bits={self.kernel_bits}",
            f"bound_ok={'true' if self.bound_ok else 'false'}",
        ]
        lines += [f"param.{key}={value}" for key, value in self.params.items()]
        lines += [f"rule.{key}={value}" for key, value in self.rule_firings.items()]
        lines += [f"extra.{key}={value}" for key, value in self.extra.items()]
        if self.verdict is not None:
            lines.append(f"verdict={self.verdict}")
        lines += [f"trace.{i}={entry}" for i, entry in enumerate(self.trace)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        report = cls(problem="")
        for lineno, raw in enumerate(text.splitlines(), 1):
            if not raw.strip():
                continue
            key, sep, value = raw.partition("=")
            if not sep:
                raise ValidationError(f"expected key=value, got {raw!r}", lineno)
            head, _, tail = key.partition(".")
            if key == "problem":
                report.problem = value
            elif key in ("original_bits", "kernel_bits"):
                setattr(report, key, int(value))
            elif key == "bound_ok":
                report.bound_ok = value == "true"
            elif key == "verdict":
                report.verdict = value
            elif head == "param":
                report.params[tail] = value
            elif head == "rule":
                report.rule_firings[tail] = int(value)
            elif head == "extra":
                report.extra[tail] = value
            elif head == "trace":
                report.trace.append(value)
            else:
                raise ValidationError(f"unknown report key {key!r}", lineno)
        return report
