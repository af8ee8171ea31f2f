"""Turn shallow clause structures into training tuples and test triples.

A clause qualifies when it holds one verbal and exactly two
nominative/accusative nominal constituents.  The rules below are tried in
order and the first one that fires decides; the default turns the clause
into an ambiguous test triple.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .chunker import ClauseStructure, ClauseType, Introducer, Kind, parse_tokens
from .errors import ParseError
from .morphology import Lexicon, UnknownPolicy, analyze_sentence

log = logging.getLogger(__name__)

RULES = ("case_nom", "case_acc", "agreement", "heuristic")


@dataclass(frozen=True)
class TrainingTuple:
    n1: str
    v: str
    n2: str
    x: int
    source_rule: str = "heuristic"

    @property
    def key(self):
        return (self.n1, self.v, self.n2)


@dataclass(frozen=True)
class TestTuple:
    __test__ = False  # keep pytest from collecting it

    n1: str
    v: str
    n2: str
    n1_is_pronoun: bool = False
    n2_is_pronoun: bool = False

    @property
    def key(self):
        return (self.n1, self.v, self.n2)


def eligible(structure: ClauseStructure):
    """Return ``(n1c, vc, n2c)`` or None."""
    vcs = structure.of_kind(Kind.VC)
    ncs = [c for c in structure.of_kind(Kind.NC) if c.nom_acc]
    if len(vcs) != 1 or len(ncs) != 2:
        return None
    n1c, n2c = sorted(ncs, key=lambda c: c.token_span)
    return n1c, vcs[0], n2c


def _g(i):
    return 1 if i == 0 else 0


def agrees(nc, vc):
    return any(nc.person_set & p and nc.number_set & n for p, n in vc.agreement)


def apply_rules(structure: ClauseStructure, n1c, vc, n2c):
    """Apply the rule cascade.

    Returns a TrainingTuple or a TestTuple, or None when both case rules fire
    with contradictory conclusions.
    """
    ncs = (n1c, n2c)
    v = structure.main_verb_lemma
    n1, n2 = n1c.head_lemma, n2c.head_lemma

    # Only masculine heads can make an NC unambiguous between nom and acc.
    found = []
    for i, nc in enumerate(ncs):
        if nc.head_gender == "masc" and nc.nom_acc == {"nom"}:
            found.append(("case_nom", _g(i)))
    for i, nc in enumerate(ncs):
        if nc.head_gender == "masc" and nc.nom_acc == {"acc"}:
            found.append(("case_acc", _g(1 - i)))
    if found:
        if len({x for _, x in found}) > 1:
            log.warning("contradictory case evidence, clause discarded: %s %s %s", n1, v, n2)
            return None
        rule, x = found[0]
        return TrainingTuple(n1, v, n2, x, rule)

    a1, a2 = agrees(n1c, vc), agrees(n2c, vc)
    if a1 != a2:
        return TrainingTuple(n1, v, n2, _g(0 if a1 else 1), "agreement")

    intro = structure.introducer
    if (structure.clause_type is ClauseType.VERB_SECOND and intro is Introducer.ADVERBIAL_FIRST) or (
        structure.clause_type is ClauseType.VERB_FINAL
        and intro in (Introducer.SUBORD_CONJUNCTION, Introducer.COMPLEMENTIZER)
    ):
        return TrainingTuple(n1, v, n2, 1, "heuristic")

    return TestTuple(n1, v, n2, n1c.head_is_pronoun, n2c.head_is_pronoun)


def extract_structures(structures: Iterable[ClauseStructure]):
    train, test = [], []
    for s in structures:
        triple = eligible(s)
        if triple is None:
            continue
        out = apply_rules(s, *triple)
        if isinstance(out, TrainingTuple):
            train.append(out)
        elif isinstance(out, TestTuple):
            test.append(out)
    return train, test


def parse_sentence(lexicon: Lexicon, text: str, policy=UnknownPolicy.SKIP_CLAUSE):
    return parse_tokens(analyze_sentence(lexicon, text, policy), policy)


def extract_corpus(sentences: Iterable[str], lexicon: Lexicon, policy=UnknownPolicy.SKIP_CLAUSE):
    """Extract tuples from an iterable of sentences, in corpus order."""
    train, test = [], []
    for text in sentences:
        if not text.strip():
            continue
        tr, te = extract_structures(parse_sentence(lexicon, text, policy))
        train.extend(tr)
        test.extend(te)
    return train, test


# --- tuple files ----------------------------------------------------------


def format_training(t: TrainingTuple):
    return f"{t.n1}\t{t.v}\t{t.n2}\t{t.x}\t{t.source_rule}"


def format_test(t: TestTuple):
    return f"{t.n1}\t{t.v}\t{t.n2}\t{int(t.n1_is_pronoun)}\t{int(t.n2_is_pronoun)}"


def write_training(path, tuples):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for t in tuples:
            fh.write(format_training(t) + "\n")


def write_test(path, tuples):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for t in tuples:
            fh.write(format_test(t) + "\n")


def _flag(text, path, lineno):
    if text not in ("0", "1"):
        raise ParseError(f"expected 0 or 1, got {text!r}", path, lineno)
    return text == "1"


def _rows(path, width):
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != width or not all(fields[:3]):
                raise ParseError(f"expected {width} tab-separated fields", path, lineno)
            yield lineno, fields


def read_training(path):
    out = []
    for lineno, (n1, v, n2, x, rule) in _rows(path, 5):
        if rule not in RULES:
            raise ParseError(f"unknown rule {rule!r}", path, lineno)
        out.append(TrainingTuple(n1, v, n2, int(_flag(x, path, lineno)), rule))
    return out


def read_test(path):
    return [
        TestTuple(n1, v, n2, _flag(p1, path, lineno), _flag(p2, path, lineno))
        for lineno, (n1, v, n2, p1, p2) in _rows(path, 5)
    ]
