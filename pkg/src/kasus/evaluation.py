"""Score decisions against gold labels, broken down by back-off level."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from .decision import Decision, Outcome
from .errors import AlignmentError, ParseError

LEVELS = (3, 2, 1, 0)


@dataclass(frozen=True)
class GoldTuple:
    n1: str
    v: str
    n2: str
    gold_x: int

    @property
    def key(self):
        return (self.n1, self.v, self.n2)


@dataclass
class LevelReport:
    count: dict = field(default_factory=lambda: {lv: 0 for lv in LEVELS})
    correct: dict = field(default_factory=lambda: {lv: 0 for lv in LEVELS})
    skipped: int = 0
    # evaluated tuples whose gold label says the first noun is the subject
    first_noun_subject: int = 0

    @property
    def total(self):
        return sum(self.count.values())

    @property
    def total_correct(self):
        return sum(self.correct.values())

    def accuracy(self, level=None) -> Fraction:
        n = self.total if level is None else self.count[level]
        k = self.total_correct if level is None else self.correct[level]
        return Fraction(k, n) if n else Fraction(0)

    def percent(self, level) -> Fraction:
        return Fraction(self.count[level], self.total) if self.total else Fraction(0)

    def baseline(self) -> Fraction:
        return Fraction(self.first_noun_subject, self.total) if self.total else Fraction(0)

    def subset_accuracy(self, levels) -> Fraction:
        n = sum(self.count[lv] for lv in levels)
        k = sum(self.correct[lv] for lv in levels)
        return Fraction(k, n) if n else Fraction(0)


def _align(decisions, gold):
    by_key_d = defaultdict(list)
    by_key_g = defaultdict(list)
    for d in decisions:
        by_key_d[d.key].append(d)
    for g in gold:
        by_key_g[g.key].append(g)
    pairs, bad = [], set()
    for key in by_key_d.keys() | by_key_g.keys():
        ds, gs = by_key_d.get(key, []), by_key_g.get(key, [])
        if len(gs) == len(ds):
            pairs.extend((d, g) for d, g in zip(ds, gs) if not d.skipped)
            continue
        kept = [d for d in ds if not d.skipped]
        # gold may leave out tuples that were skipped
        if len(gs) == len(kept):
            pairs.extend(zip(kept, gs))
        else:
            bad.add(key)
    if bad:
        raise AlignmentError(bad)
    return pairs


def evaluate(decisions, gold) -> LevelReport:
    """Tally decisions per back-off level.

    Decisions and gold tuples are matched by ``(n1, v, n2)``; repeated keys
    are paired in file order.  Skipped decisions are counted separately and
    left out of every denominator.
    """
    decisions = list(decisions)
    report = LevelReport(skipped=sum(d.skipped for d in decisions))
    for d, g in _align(decisions, gold):
        level = d.level
        report.count[level] += 1
        says_subject = d.outcome is Outcome.FIRST_IS_SUBJECT
        if says_subject == (g.gold_x == 1):
            report.correct[level] += 1
        if g.gold_x == 1:
            report.first_noun_subject += 1
    return report


def pct(frac: Fraction, places=2) -> str:
    """Percentage of ``frac`` with ``places`` decimals, ties to even."""
    with localcontext() as ctx:
        ctx.prec = 50
        value = Decimal(frac.numerator) * 100 / Decimal(frac.denominator)
        return str(value.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


_ROW = "{:<6}{:>8}{:>10}{:>10}{:>10}"


def render_report(report: LevelReport) -> str:
    lines = [_ROW.format("P_n", "Number", "Percent", "Correct", "Accuracy")]
    for lv in LEVELS:
        lines.append(
            _ROW.format(
                f"P_{lv}",
                report.count[lv],
                pct(report.percent(lv)),
                report.correct[lv],
                pct(report.accuracy(lv)),
            )
        )
    lines.append(
        _ROW.format(
            "Total",
            report.total,
            pct(Fraction(1) if report.total else Fraction(0)),
            report.total_correct,
            pct(report.accuracy()),
        )
    )
    lines.append(f"Baseline (first noun subject): {pct(report.baseline())}")
    lines.append(f"Skipped (both pronouns): {report.skipped}")
    return "\n".join(lines) + "\n"


def read_gold(path) -> list[GoldTuple]:
    path = Path(path)
    out = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 4 or not all(fields[:3]):
                raise ParseError("expected n1, v, n2, gold_x", path, lineno)
            if fields[3] not in ("0", "1"):
                raise ParseError(f"gold_x must be 0 or 1, got {fields[3]!r}", path, lineno)
            out.append(GoldTuple(fields[0], fields[1], fields[2], int(fields[3])))
    return out


def write_gold(path, gold):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for g in gold:
            fh.write(f"{g.n1}\t{g.v}\t{g.n2}\t{g.gold_x}\n")
