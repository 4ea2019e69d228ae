"""Proof trees shared by the three calculi, and their renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Union

from .formula import Formula, latex_formula, print_formula
from .structure import (
    Occurrence,
    Presentation,
    Structure,
    latex_presentation,
    latex_structure,
    print_presentation,
    print_structure,
)


@dataclass(frozen=True, slots=True)
class Stoup:
    """A polarized judgment with a positive formula in focus on the right."""

    structure: Structure
    formula: Formula


@dataclass(frozen=True, slots=True)
class FocusJudgment:
    """A focused judgment: structure ``left`` against the pattern ``pattern``."""

    left: Structure
    pattern: Structure


Judgment = Union[Presentation, Stoup, FocusJudgment]


@dataclass(frozen=True, slots=True)
class Focus:
    occurrence: Occurrence
    invp_index: int


@dataclass(frozen=True)
class ProofNode:
    rule: str
    conclusion: Judgment
    premises: tuple["ProofNode", ...] = ()
    main: Occurrence | None = None
    focus: Focus | None = None

    def walk(self) -> Iterator["ProofNode"]:
        yield self
        for p in self.premises:
            yield from p.walk()

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def rules(self) -> list[str]:
        return [n.rule for n in self.walk()]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a proof check; falsy on failure, with the premise-index
    path to the first bad node."""

    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def judgment_kind(j: Judgment) -> str:
    if isinstance(j, Stoup):
        return "stoup"
    if isinstance(j, FocusJudgment):
        return "focus"
    return "presentation"


def print_judgment(j: Judgment) -> str:
    if isinstance(j, Stoup):
        return f"{print_structure(j.structure)} |- {print_formula(j.formula)}"
    if isinstance(j, FocusJudgment):
        return f"{print_structure(j.left)} |-f {print_structure(j.pattern)}"
    return print_presentation(j)


def latex_judgment(j: Judgment) -> str:
    if isinstance(j, Stoup):
        return rf"{latex_structure(j.structure)} \vdash {latex_formula(j.formula)}"
    if isinstance(j, FocusJudgment):
        return rf"{latex_structure(j.left)} \vdash_f {latex_structure(j.pattern)}"
    return latex_presentation(j)


def to_ascii(node: ProofNode, indent: int = 0) -> str:
    pad = "  " * indent
    label = node.rule
    if node.focus is not None:
        occ = node.focus.occurrence
        label += f" @{occ.side.value}{''.join(occ.path)}#{node.focus.invp_index}"
    lines = [f"{pad}[{label}] {print_judgment(node.conclusion)}"]
    lines += [to_ascii(p, indent + 1) for p in node.premises]
    return "\n".join(lines)


_INF = {0: "AxiomC", 1: "UnaryInfC", 2: "BinaryInfC", 3: "TrinaryInfC", 4: "QuaternaryInfC", 5: "QuinaryInfC"}


def to_latex(node: ProofNode) -> str:
    """A ``bussproofs`` derivation."""
    lines: list[str] = []

    def emit(n: ProofNode) -> None:
        for p in n.premises:
            emit(p)
        body = f"${latex_judgment(n.conclusion)}$"
        rule = n.rule.replace("\\", r"\backslash ").replace("_", r"\downarrow ").replace("^", r"\uparrow ")
        if not n.premises:
            lines.append(r"\AxiomC{}")
            lines.append(rf"\RightLabel{{\scriptsize ${rule}$}}")
            lines.append(rf"\UnaryInfC{{{body}}}")
        elif len(n.premises) in _INF:
            lines.append(rf"\RightLabel{{\scriptsize ${rule}$}}")
            lines.append(rf"\{_INF[len(n.premises)]}{{{body}}}")
        else:
            raise ValueError("bussproofs supports at most five premises")

    emit(node)
    return "\\begin{prooftree}\n" + "\n".join(lines) + "\n\\end{prooftree}"


def to_json_data(node: ProofNode) -> dict:
    data: dict = {
        "rule": node.rule,
        "conclusion": print_judgment(node.conclusion),
        "main": node.main.to_json() if node.main is not None else None,
        "premises": [to_json_data(p) for p in node.premises],
    }
    if node.focus is not None:
        data["focus"] = {"path": node.focus.occurrence.to_json(), "invp_index": node.focus.invp_index}
    kind = judgment_kind(node.conclusion)
    if kind != "presentation":
        data["judgment"] = kind
    return data


def to_json(node: ProofNode) -> str:
    return json.dumps(to_json_data(node), indent=2, ensure_ascii=False)


def render(node: ProofNode, fmt: str) -> str:
    if fmt == "ascii":
        return to_ascii(node)
    if fmt == "latex":
        return to_latex(node)
    if fmt == "json":
        return to_json(node)
    raise ValueError(f"unknown format {fmt!r}")
