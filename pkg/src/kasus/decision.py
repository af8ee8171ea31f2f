"""Subject/object decisions for ambiguous test triples."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from pathlib import Path

from .backoff import CountModel, Estimate, Mode
from .errors import ParseError
from .extraction import TestTuple

THRESHOLD = 0.5


class Outcome(str, enum.Enum):
    FIRST_IS_SUBJECT = "first_is_subject"
    FIRST_IS_OBJECT = "first_is_object"
    SKIPPED_BOTH_PRONOUNS = "skipped_both_pronouns"


@dataclass(frozen=True)
class Decision:
    tuple: TestTuple
    outcome: Outcome
    estimate: Estimate | None = None

    @property
    def key(self):
        return self.tuple.key

    @property
    def skipped(self):
        return self.outcome is Outcome.SKIPPED_BOTH_PRONOUNS

    @property
    def level(self):
        return None if self.estimate is None else self.estimate.level


def mode_for(t: TestTuple):
    if t.n1_is_pronoun and t.n2_is_pronoun:
        return None
    if t.n2_is_pronoun:
        return Mode.N2_PRONOUN
    if t.n1_is_pronoun:
        return Mode.N1_PRONOUN
    return Mode.BOTH_NOUNS


def decide(model: CountModel, t: TestTuple) -> Decision:
    mode = mode_for(t)
    if mode is None:
        return Decision(t, Outcome.SKIPPED_BOTH_PRONOUNS)
    est = model.estimate(t.n1, t.v, t.n2, mode)
    # ties go to the subject reading; compare exactly, not in floating point
    subject = est.fraction >= THRESHOLD
    return Decision(t, Outcome.FIRST_IS_SUBJECT if subject else Outcome.FIRST_IS_OBJECT, est)


def decide_batch(model: CountModel, tuples) -> list[Decision]:
    return [decide(model, t) for t in tuples]


def format_probability(est: Estimate, places=4) -> str:
    frac = est.fraction
    with localcontext() as ctx:
        ctx.prec = 50
        value = Decimal(frac.numerator) / Decimal(frac.denominator)
        return str(value.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def format_decision(d: Decision) -> str:
    n1, v, n2 = d.key
    if d.estimate is None:
        return f"{n1}\t{v}\t{n2}\t{d.outcome.value}\t-\t-"
    return f"{n1}\t{v}\t{n2}\t{d.outcome.value}\t{d.estimate.level}\t{format_probability(d.estimate)}"


def write_decisions(path, decisions):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for d in decisions:
            fh.write(format_decision(d) + "\n")


def read_decisions(path) -> list[Decision]:
    """Read a decision file back.

    Only the outcome and level survive the round trip; ``c_used`` and
    ``t_used`` are not stored, so estimates come back with zero counts.
    """
    path = Path(path)
    out = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 6:
                raise ParseError("expected 6 tab-separated fields", path, lineno)
            n1, v, n2, outcome, level, p = fields
            try:
                outcome = Outcome(outcome)
            except ValueError:
                raise ParseError(f"unknown outcome {outcome!r}", path, lineno) from None
            t = TestTuple(n1, v, n2)
            if outcome is Outcome.SKIPPED_BOTH_PRONOUNS:
                out.append(Decision(TestTuple(n1, v, n2, True, True), outcome))
                continue
            if level not in ("0", "1", "2", "3"):
                raise ParseError(f"bad level {level!r}", path, lineno)
            try:
                value = float(p)
            except ValueError:
                raise ParseError(f"bad probability {p!r}", path, lineno) from None
            out.append(Decision(t, outcome, Estimate(value, int(level))))
    return out
