"""Halting-problem reduction pipeline.

Computes a self-describing code for the halting-gated class of a machine and
converts any verdict function on class codes into a halting verdict.  The
shipped decider is deliberately partial and sound: it reports a finite
dimension only after positively observing the halt, and never claims the
infinite case.  The point is to demonstrate the reduction's mechanics, not
to contradict its impossibility in general.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .classes import IndexedClass, halting_class
from .errors import ClassCodeError
from .turing import TuringMachine, run_bounded, parse_tm, serialize_tm

MAGIC = b"HMC1"
TAG_HALTING = 1

HALTS = "halts"
NO_ANSWER = "no-answer"


@dataclass(frozen=True)
class ClassCode:
    """Versioned byte code: magic, construction tag, length-prefixed
    canonical machine serialization."""

    raw: bytes

    def as_natural(self) -> int:
        """Natural-number packing for fidelity to the index-based framing."""
        return int.from_bytes(self.raw, "big")

    @classmethod
    def from_natural(cls, n: int) -> "ClassCode":
        if n <= 0:
            raise ClassCodeError("class codes are positive naturals")
        raw = n.to_bytes((n.bit_length() + 7) // 8, "big")
        return cls(raw=raw)


def class_code(tm: TuringMachine) -> ClassCode:
    """Deterministic code of the halting-gated class of `tm`."""
    body = serialize_tm(tm).encode("utf-8")
    raw = MAGIC + bytes([TAG_HALTING]) + len(body).to_bytes(4, "big") + body
    return ClassCode(raw=raw)


def decode_machine(code: ClassCode) -> TuringMachine:
    raw = code.raw
    if len(raw) < len(MAGIC) + 5 or raw[: len(MAGIC)] != MAGIC:
        raise ClassCodeError("bad magic: not a class code")
    tag = raw[len(MAGIC)]
    if tag != TAG_HALTING:
        raise ClassCodeError(f"unsupported construction tag {tag}")
    offset = len(MAGIC) + 1
    length = int.from_bytes(raw[offset : offset + 4], "big")
    body = raw[offset + 4 :]
    if len(body) != length:
        raise ClassCodeError("length prefix does not match body")
    try:
        return parse_tm(body.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as exc:
        raise ClassCodeError(f"embedded machine is invalid: {exc}") from exc


def decode_class_code(code: ClassCode) -> IndexedClass:
    """Rebuild the evaluator; pointwise equal to halting_class(machine)."""
    return halting_class(decode_machine(code))


@dataclass(frozen=True)
class DeciderVerdict:
    """Finite(value) only on positive observation of the halt; Unknown(budget)
    otherwise.  Never an 'infinite' claim."""

    finite: bool
    value: int  # halting step K when finite, exhausted budget otherwise

    def __str__(self) -> str:
        return f"Finite({self.value})" if self.finite else f"Unknown({self.value})"


def budgeted_vc_decider(code: ClassCode, budget: int) -> DeciderVerdict:
    """Sound partial stand-in for the impossible finiteness decider.

    Simulates the embedded machine for at most `budget` steps; halting at
    step K pins the window dimensions to K exactly.
    """
    tm = decode_machine(code)
    result = run_bounded(tm, budget)
    if result.halted:
        return DeciderVerdict(finite=True, value=result.steps)
    return DeciderVerdict(finite=False, value=budget)


def halting_from_vc(
    decider: Callable[[ClassCode], DeciderVerdict], tm: TuringMachine
) -> str:
    """Feed the machine's class code to a finiteness decider: a Finite verdict
    means the machine halts."""
    verdict = decider(class_code(tm))
    return HALTS if verdict.finite else NO_ANSWER


@dataclass(frozen=True)
class AgreementEntry:
    name: str
    reduction_verdict: str
    reduction_steps: int | None  # K when the verdict is halts
    direct_halted: bool
    direct_steps: int | None

    @property
    def agree(self) -> bool:
        return (self.reduction_verdict == HALTS) == self.direct_halted

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "reduction_verdict": self.reduction_verdict,
            "reduction_steps": self.reduction_steps,
            "direct_halted": self.direct_halted,
            "direct_steps": self.direct_steps,
            "agree": self.agree,
        }


@dataclass(frozen=True)
class AgreementReport:
    entries: tuple[AgreementEntry, ...]
    budget: int

    @property
    def halts_count(self) -> int:
        return sum(1 for e in self.entries if e.reduction_verdict == HALTS)

    @property
    def no_answer_count(self) -> int:
        return sum(1 for e in self.entries if e.reduction_verdict == NO_ANSWER)

    @property
    def disagreements(self) -> int:
        return sum(1 for e in self.entries if not e.agree)

    def to_json_dict(self) -> dict:
        return {
            "budget": self.budget,
            "entries": [e.to_json_dict() for e in self.entries],
            "halts": self.halts_count,
            "no_answer": self.no_answer_count,
            "disagreements": self.disagreements,
        }


def agreement_check(
    suite: Sequence[tuple[str, TuringMachine]], budget: int
) -> AgreementReport:
    """Compare the reduction pipeline against direct simulation per machine.

    At ample budget every halter must be answered at its exact step count,
    and a NoAnswer is only ever the budget running out.
    """
    entries = []
    for name, tm in suite:
        verdict = budgeted_vc_decider(class_code(tm), budget)
        direct = run_bounded(tm, budget)
        entries.append(
            AgreementEntry(
                name=name,
                reduction_verdict=HALTS if verdict.finite else NO_ANSWER,
                reduction_steps=verdict.value if verdict.finite else None,
                direct_halted=direct.halted,
                direct_steps=direct.steps if direct.halted else None,
            )
        )
    return AgreementReport(entries=tuple(entries), budget=budget)
