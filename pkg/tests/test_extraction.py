from dataclasses import replace
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from kasus.chunker import ClauseStructure, ClauseType, Constituent, Introducer, Kind
from kasus.errors import ParseError
from kasus.extraction import (
    TestTuple,
    TrainingTuple,
    apply_rules,
    eligible,
    extract_corpus,
    parse_sentence,
    read_test,
    read_training,
    write_test,
    write_training,
)
from kasus.morphology import Token, UnknownPolicy, load_default_lexicon

DATA = Path(__file__).parent / "data"
LEXICON = load_default_lexicon()


def one(text, **kw):
    return extract_corpus([text], LEXICON, **kw)


def structure(text):
    (s,) = parse_sentence(LEXICON, text)
    return s


GESELLSCHAFT = "Die Gesellschaft erwartet in diesem Jahr in Südostasien einen Umsatz von 125 Millionen DM ."


def test_eligible_gesellschaft():
    n1c, vc, n2c = eligible(structure(GESELLSCHAFT))
    assert (n1c.head_lemma, vc.head_lemma, n2c.head_lemma) == ("Gesellschaft", "erwarten", "Umsatz")


def test_rule_case_acc():
    assert one(GESELLSCHAFT) == ([TrainingTuple("Gesellschaft", "erwarten", "Umsatz", 1, "case_acc")], [])


def test_rule_case_nom():
    assert one("Eine hohe Inflationsrate erwartet der Ökonom .") == (
        [TrainingTuple("Inflationsrate", "erwarten", "Ökonom", 0, "case_nom")],
        [],
    )


def test_rule_agreement():
    assert one("Die Ökonomen erwarten eine hohe Inflationsrate .") == (
        [TrainingTuple("Ökonom", "erwarten", "Inflationsrate", 1, "agreement")],
        [],
    )


def test_default_rule():
    assert one("Eine hohe Inflationsrate erwartet die Ökonomin .") == (
        [],
        [TestTuple("Inflationsrate", "erwarten", "Ökonomin")],
    )


@pytest.mark.parametrize(
    "text",
    [
        "In diesem Jahr erwartet die Ökonomin eine hohe Inflationsrate .",
        "Weil die Ökonomin eine hohe Inflationsrate erwartet , ...",
    ],
)
def test_heuristic_rule(text):
    assert one(text) == ([TrainingTuple("Ökonomin", "erwarten", "Inflationsrate", 1, "heuristic")], [])


def test_relative_clause_gets_no_heuristic():
    train, test = one("Die Rate , die die Ökonomin erwartet , ...")
    assert train == []
    assert test == [TestTuple("der", "erwarten", "Ökonomin", True, False)]


def test_empty_and_ineligible_corpus():
    assert extract_corpus([], LEXICON) == ([], [])
    assert extract_corpus(["", "Der Wagen ."], LEXICON) == ([], [])


def test_unknown_policy_changes_outcome():
    text = "Die Quux erwartet eine hohe Inflationsrate ."
    assert one(text) == ([], [])
    assert one(text, policy=UnknownPolicy.AMBIGUOUS_NOUN) == (
        [],
        [TestTuple("Quux", "erwarten", "Inflationsrate")],
    )


# --- constructed structures -----------------------------------------------


def nc(lemma, cases, gender="fem", number="sg", person=3, pronoun=False, pos=0):
    return Constituent(
        kind=Kind.NC,
        tokens=(Token(lemma, pos),),
        head_lemma=lemma,
        person_set=frozenset({person}),
        number_set=frozenset({number}),
        case_set=frozenset(cases),
        head_is_pronoun=pronoun,
        head_gender=gender,
    )


def vc(number="sg", pos=1):
    return Constituent(
        kind=Kind.VC,
        tokens=(Token("v", pos),),
        head_lemma="v",
        person_set=frozenset({3}),
        number_set=frozenset({number}),
        agreement=((frozenset({3}), frozenset({number})),),
    )


def clause(a, v, b, ctype=ClauseType.VERB_SECOND, intro=Introducer.NONE_NC_FIRST):
    a = replace(a, tokens=(replace(a.tokens[0], position=0),))
    v = replace(v, tokens=(replace(v.tokens[0], position=1),))
    b = replace(b, tokens=(replace(b.tokens[0], position=2),))
    return ClauseStructure(ctype, intro, (a, v, b), "v")


def test_three_nom_acc_ncs_ineligible():
    s = clause(nc("A", {"nom"}), vc(), nc("B", {"acc"}))
    s = replace(s, constituents=s.constituents + (nc("C", {"nom", "acc"}, pos=3),))
    assert eligible(s) is None


def test_one_nc_ineligible():
    s = clause(nc("A", {"nom"}), vc(), nc("B", {"dat"}))
    assert eligible(s) is None


def test_contradictory_case_evidence_discarded(caplog):
    s = clause(nc("A", {"nom"}, "masc"), vc(), nc("B", {"nom"}, "masc"))
    assert apply_rules(s, *eligible(s)) is None
    assert "contradictory" in caplog.text


def test_case_rule_needs_masculine_head():
    s = clause(nc("A", {"nom"}, "fem"), vc(), nc("B", {"nom", "acc"}))
    assert isinstance(apply_rules(s, *eligible(s)), TestTuple)


def test_case_rule_beats_heuristic():
    s = clause(nc("A", {"acc"}, "masc"), vc(), nc("B", {"nom", "acc"}), intro=Introducer.ADVERBIAL_FIRST)
    assert apply_rules(s, *eligible(s)) == TrainingTuple("A", "v", "B", 0, "case_acc")


def test_mutual_agreement_falls_through():
    s = clause(nc("A", {"nom", "acc"}), vc(), nc("B", {"nom", "acc"}))
    assert isinstance(apply_rules(s, *eligible(s)), TestTuple)


def test_interrogative_item_gets_no_heuristic():
    s = clause(nc("A", {"nom", "acc"}), vc(), nc("B", {"nom", "acc"}), ClauseType.VERB_FINAL, Introducer.INTERROGATIVE_ITEM)
    assert isinstance(apply_rules(s, *eligible(s)), TestTuple)


case_sets = st.sampled_from([{"nom"}, {"acc"}, {"nom", "acc"}, {"nom", "dat"}, {"acc", "gen"}])
genders = st.sampled_from(["masc", "fem", "neut", "none"])
numbers = st.sampled_from(["sg", "pl"])
intros = st.sampled_from(
    [
        (ClauseType.VERB_SECOND, Introducer.NONE_NC_FIRST),
        (ClauseType.VERB_SECOND, Introducer.ADVERBIAL_FIRST),
        (ClauseType.VERB_FINAL, Introducer.SUBORD_CONJUNCTION),
        (ClauseType.VERB_FINAL, Introducer.COMPLEMENTIZER),
        (ClauseType.VERB_FINAL, Introducer.RELATIVE_ITEM),
        (ClauseType.VERB_FINAL, Introducer.INTERROGATIVE_ITEM),
    ]
)


@settings(max_examples=500)
@given(case_sets, genders, numbers, case_sets, genders, numbers, numbers, intros)
def test_rule_cascade_properties(c1, g1, m1, c2, g2, m2, vn, intro):
    a, b = nc("A", c1, g1, m1), nc("B", c2, g2, m2)
    s = clause(a, vc(vn), b, *intro)
    out = apply_rules(s, *eligible(s))
    if out is None:
        return
    if isinstance(out, TrainingTuple):
        assert (out.n1, out.n2) == ("A", "B")
        if out.source_rule in ("case_nom", "case_acc"):
            unambiguous = [c for c in (a, b) if c.nom_acc in ({"nom"}, {"acc"})]
            assert any(c.head_gender == "masc" for c in unambiguous)
        if out.source_rule == "case_nom":
            subj = a if (a.head_gender == "masc" and a.nom_acc == {"nom"}) else b
            assert out.x == (1 if subj is a else 0)
        if out.source_rule == "agreement":
            assert out.x == (1 if m1 == vn else 0)
            assert (m1 == vn) != (m2 == vn)
        if out.source_rule == "heuristic":
            assert out.x == 1
            assert intro[1] not in (Introducer.RELATIVE_ITEM, Introducer.INTERROGATIVE_ITEM)
    else:
        no_case = not any(c.head_gender == "masc" and c.nom_acc in ({"nom"}, {"acc"}) for c in (a, b))
        assert no_case and (m1 == vn) == (m2 == vn)


# --- files ------------------------------------------------------------------


def test_tuple_files_round_trip(tmp_path):
    train = [TrainingTuple("Ökonom", "erwarten", "Inflationsrate", 1, "agreement")]
    test = [TestTuple("der", "erwarten", "Ökonomin", True, False)]
    write_training(tmp_path / "train.tsv", train)
    write_test(tmp_path / "test.tsv", test)
    assert read_training(tmp_path / "train.tsv") == train
    assert read_test(tmp_path / "test.tsv") == test
    assert (tmp_path / "test.tsv").read_text(encoding="utf-8") == "der\terwarten\tÖkonomin\t1\t0\n"


@pytest.mark.parametrize(
    "row",
    ["A\tv\tB\t2\tcase_nom", "A\tv\tB\t1\tguess", "A\tv\tB\t1", "\tv\tB\t1\tcase_nom"],
)
def test_malformed_training_row(tmp_path, row):
    p = tmp_path / "train.tsv"
    p.write_text("A\tv\tB\t1\tcase_nom\n" + row + "\n", encoding="utf-8")
    with pytest.raises(ParseError) as exc:
        read_training(p)
    assert exc.value.lineno == 2
