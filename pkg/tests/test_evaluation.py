from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from kasus.backoff import Estimate
from kasus.decision import Decision, Outcome
from kasus.errors import AlignmentError, ParseError
from kasus.evaluation import LEVELS, GoldTuple, evaluate, pct, read_gold, render_report, write_gold
from kasus.extraction import TestTuple

DATA = Path(__file__).parent / "data"
SUBJ, OBJ = Outcome.FIRST_IS_SUBJECT, Outcome.FIRST_IS_OBJECT


def dec(n1, outcome, level, v="v", n2="B"):
    return Decision(TestTuple(n1, v, n2), outcome, Estimate(1.0 if outcome is SUBJ else 0.0, level))


def test_all_correct_at_level0():
    ds = [dec(f"A{i}", SUBJ, 0) for i in range(4)]
    gold = [GoldTuple(f"A{i}", "v", "B", 1) for i in range(4)]
    r = evaluate(ds, gold)
    assert (r.count[0], r.percent(0), r.correct[0], r.accuracy(0)) == (4, 1, 4, 1)
    assert r.baseline() == 1


def test_half_right():
    r = evaluate([dec("A", SUBJ, 1), dec("C", SUBJ, 1)], [GoldTuple("A", "v", "B", 1), GoldTuple("C", "v", "B", 0)])
    assert pct(r.accuracy()) == "50.00"


def test_reference_level_report_golden():
    decisions, gold = oracles.reference_level_set()
    report = evaluate(decisions, gold)
    assert [report.count[lv] for lv in LEVELS] == [2, 204, 486, 23]
    assert [report.correct[lv] for lv in LEVELS] == [2, 194, 431, 20]
    assert report.accuracy() == Fraction(647, 715)
    text = render_report(report)
    assert text == (DATA / "level_report_715.txt").read_text(encoding="utf-8")
    assert "Total      715    100.00       647     90.49" in text


def test_empty_report():
    text = render_report(evaluate([], []))
    lines = text.splitlines()
    assert lines[0].split() == ["P_n", "Number", "Percent", "Correct", "Accuracy"]
    assert lines[5].split() == ["Total", "0", "0.00", "0", "0.00"]


def test_single_level_report_prints_zero_rows():
    text = render_report(evaluate([dec("A", SUBJ, 2)], [GoldTuple("A", "v", "B", 1)]))
    rows = {line.split()[0]: line.split()[1:] for line in text.splitlines()[1:5]}
    assert rows["P_2"] == ["1", "100.00", "1", "100.00"]
    for lv in ("P_3", "P_1", "P_0"):
        assert rows[lv] == ["0", "0.00", "0", "0.00"]


def test_skipped_out_of_denominator():
    skipped = Decision(TestTuple("er", "v", "es", True, True), Outcome.SKIPPED_BOTH_PRONOUNS)
    r = evaluate([skipped, dec("A", SUBJ, 1)], [GoldTuple("A", "v", "B", 1)])
    assert (r.total, r.skipped) == (1, 1)
    # gold that also lists the skipped key is fine
    r = evaluate([skipped, dec("A", SUBJ, 1)], [GoldTuple("er", "v", "es", 1), GoldTuple("A", "v", "B", 1)])
    assert (r.total, r.skipped) == (1, 1)


def test_alignment_error_lists_keys():
    with pytest.raises(AlignmentError) as exc:
        evaluate([dec("A", SUBJ, 1)], [GoldTuple("C", "v", "D", 1)])
    assert exc.value.keys == [("A", "v", "B"), ("C", "v", "D")]
    assert "(A, v, B)" in str(exc.value)


def test_repeated_keys_pair_in_order():
    ds = [dec("A", SUBJ, 1), dec("A", OBJ, 1)]
    r = evaluate(ds, [GoldTuple("A", "v", "B", 1), GoldTuple("A", "v", "B", 0)])
    assert r.total_correct == 2


@pytest.mark.parametrize(
    "frac, text",
    [(Fraction(1, 8), "12.50"), (Fraction(1, 800), "0.12"), (Fraction(3, 800), "0.38"), (Fraction(5, 16), "31.25")],
)
def test_pct_half_even(frac, text):
    assert pct(frac) == text


def test_gold_file_round_trip(tmp_path):
    gold = [GoldTuple("Inflationsrate", "erwarten", "Ökonomin", 0)]
    write_gold(tmp_path / "g.tsv", gold)
    assert read_gold(tmp_path / "g.tsv") == gold


def test_bad_gold_file(tmp_path):
    p = tmp_path / "g.tsv"
    p.write_text("A\tv\tB\t1\nA\tv\tB\tyes\n", encoding="utf-8")
    with pytest.raises(ParseError) as exc:
        read_gold(p)
    assert exc.value.lineno == 2


pairs = st.lists(
    st.tuples(st.sampled_from(LEVELS), st.sampled_from([SUBJ, OBJ]), st.sampled_from([0, 1])),
    max_size=60,
)


@settings(max_examples=300)
@given(pairs)
def test_report_arithmetic(rows):
    ds = [dec(f"N{i}", o, lv) for i, (lv, o, _) in enumerate(rows)]
    gold = [GoldTuple(f"N{i}", "v", "B", g) for i, (_, _, g) in enumerate(rows)]
    r = evaluate(ds, gold)
    assert r.total == len(rows) == sum(r.count.values())
    assert r.total_correct == sum(r.correct.values())
    assert r.total_correct == sum((o is SUBJ) == (g == 1) for _, o, g in rows)
    if rows:
        assert sum(r.percent(lv) for lv in LEVELS) == 1
        total = sum(float(pct(r.percent(lv))) for lv in LEVELS)
        assert abs(total - 100) <= 0.005 * len(LEVELS)
    for lv in LEVELS:
        if r.count[lv]:
            assert r.accuracy(lv) == Fraction(r.correct[lv], r.count[lv])
    k, n = oracles.first_noun_baseline(gold)
    assert r.baseline() == (Fraction(k, n) if n else 0)
