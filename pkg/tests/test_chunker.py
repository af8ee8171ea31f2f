from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from kasus.chunker import (
    ClauseType,
    Introducer,
    Kind,
    chunk,
    dump_structure,
    parse_tokens,
    segment_clauses,
    unify_nc_features,
)
from kasus.morphology import analyze_sentence, load_default_lexicon, parse_lexicon_line

DATA = Path(__file__).parent / "data"
LEXICON = load_default_lexicon()


def parse(text):
    return parse_tokens(analyze_sentence(LEXICON, text))


def reading(line):
    return parse_lexicon_line(line)[1]


def test_gesellschaft_structure_golden():
    (s,) = parse("Die Gesellschaft erwartet in diesem Jahr in Südostasien einen Umsatz von 125 Millionen DM .")
    expected = (DATA / "gesellschaft_structure.txt").read_text(encoding="utf-8")
    assert dump_structure(s) + "\n" == expected
    assert s.clause_type is ClauseType.VERB_SECOND
    assert s.main_verb_lemma == "erwarten"
    nc1, nc2 = s.of_kind(Kind.NC)
    assert (nc1.head_lemma, nc1.case_set, nc1.number_set, nc1.person_set) == (
        "Gesellschaft",
        {"nom", "acc"},
        {"sg"},
        {3},
    )
    assert (nc2.head_lemma, nc2.case_set, nc2.head_gender) == ("Umsatz", {"acc"}, "masc")


def test_subordinate_clause_segment():
    toks = analyze_sentence(LEXICON, "Weil die Ökonomin eine hohe Inflationsrate erwartet , ...")
    spans = segment_clauses(toks)
    assert len(spans) == 1
    assert spans[0].introducer is Introducer.SUBORD_CONJUNCTION


def test_relative_clause_is_carved_out():
    toks = analyze_sentence(LEXICON, "Die Rate , die die Ökonomin erwartet , ...")
    spans = segment_clauses(toks)
    assert [s.introducer for s in spans if s.introducer is not None] == [Introducer.RELATIVE_ITEM]
    rel = next(s for s in spans if s.introducer is Introducer.RELATIVE_ITEM)
    host = next(s for s in spans if s.introducer is None)
    assert [toks[i].surface for i in host.indices if toks[i].surface.isalpha()] == ["Die", "Rate"]
    assert [toks[i].surface for i in rel.indices] == ["die", "die", "Ökonomin", "erwartet"]


def test_empty_segment():
    assert segment_clauses([]) == []


def test_dative_confusion_structure():
    (s,) = parse("Der Wagen gehört Bill .")
    nc1, nc2 = s.of_kind(Kind.NC)
    assert nc1.case_set == {"nom"}
    assert nc2.head_lemma == "Bill" and nc2.case_set == {"nom", "gen", "dat", "acc"}


def test_no_finite_verb_rejected():
    assert chunk(analyze_sentence(LEXICON, "Die hohe Inflationsrate .")) is None


def test_unknown_word_rejects_clause_by_default():
    assert parse("Die Quux erwartet eine hohe Inflationsrate .") == []


def test_auxiliary_resolves_to_lexical_verb():
    (s,) = parse("Alle Architekten sollen Hand in Hand arbeiten .")
    assert s.main_verb_lemma == "arbeiten"
    assert [t.surface for t in s.vc.bracket] == ["arbeiten"]


def test_adverbial_first_clause():
    (s,) = parse("In diesem Jahr erwartet die Ökonomin eine hohe Inflationsrate .")
    assert s.introducer is Introducer.ADVERBIAL_FIRST
    assert [c.kind for c in s.constituents] == [Kind.PC, Kind.VC, Kind.NC, Kind.NC]


def test_unify_eine_hohe_inflationsrate():
    tokens = analyze_sentence(LEXICON, "Eine hohe Inflationsrate")
    feats = unify_nc_features([t.readings for t in tokens])
    assert feats.case_set == {"nom", "acc"}
    assert feats.head == 2 and feats.gender == "fem"


def test_unify_einen_umsatz():
    tokens = analyze_sentence(LEXICON, "einen Umsatz")
    assert unify_nc_features([t.readings for t in tokens]).case_set == {"acc"}


def test_unify_single_token_identity():
    r = reading("Umsatz\tNoun\tUmsatz\tmasc\tnom|acc|dat\tsg\t3")
    feats = unify_nc_features([[r]])
    assert (feats.case_set, feats.number_set, feats.person_set, feats.gender) == (
        r.case_set,
        r.number_set,
        r.person_set,
        r.gender,
    )


def test_unify_failure():
    den = reading("den\tDeterminer\tder\tmasc\tacc\tsg\t3")
    frau = reading("Frau\tNoun\tFrau\tfem\tnom|gen|dat|acc\tsg\t3")
    assert unify_nc_features([[den], [frau]]) is None


def test_unify_empty_rejected():
    with pytest.raises(ValueError):
        unify_nc_features([])


# --- properties over random word salad from the bundled lexicon ------------

WORDS = sorted(s for s in LEXICON.entries if s not in (".", "..."))
sentences = st.lists(st.sampled_from(WORDS), min_size=1, max_size=12).map(lambda ws: " ".join(ws) + " .")


@settings(max_examples=300, deadline=None)
@given(sentences)
def test_clause_invariants(text):
    tokens = analyze_sentence(LEXICON, text)
    spans = segment_clauses(tokens)
    seen = set()
    for span in spans:
        assert not seen & set(span.indices)
        seen |= set(span.indices)
        clause = [tokens[k] for k in span.indices]
        intro = tokens[span.introducer_token] if span.introducer_token is not None else None
        s = chunk(clause, span.introducer, intro)
        if s is None:
            continue
        # constituents partition the clause's non-punctuation tokens
        words = sorted(t.position for t in clause if any(ch.isalnum() for ch in t.surface))
        covered = sorted(p for c in s.constituents for p in c.positions)
        assert covered == words
        vcs = s.of_kind(Kind.VC)
        assert len(vcs) == 1
        if s.clause_type is ClauseType.VERB_SECOND:
            # one prefield constituent, optionally followed by its PCs; an
            # empty prefield means a preceding clause fills it
            k = s.constituents.index(vcs[0])
            assert k >= 1 or s.introducer is Introducer.ADVERBIAL_FIRST
            assert all(c.kind is Kind.PC for c in s.constituents[1:k])
        else:
            assert s.constituents[-1].kind is Kind.VC
        for nc in s.of_kind(Kind.NC):
            assert nc.case_set and nc.number_set and nc.person_set


@settings(max_examples=100, deadline=None)
@given(sentences)
def test_parse_is_deterministic(text):
    tokens = analyze_sentence(LEXICON, text)
    assert parse_tokens(tokens) == parse_tokens(tokens)
