"""Lexicon-driven morphological analysis.

Every surface form is looked up in a closed lexicon.  A reading carries the
lemma, a category and the case/gender/number/person ambiguity sets that the
chunker later intersects.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ParseError

CASES = ("nom", "gen", "dat", "acc")
NUMBERS = ("sg", "pl")
PERSONS = (1, 2, 3)
GENDERS = ("masc", "fem", "neut", "none")


class Category(enum.Enum):
    NOUN = "Noun"
    PROPER_NOUN = "ProperNoun"
    PRONOUN = "Pronoun"
    FINITE_VERB = "FiniteVerb"
    NONFINITE_VERB = "NonfiniteVerb"
    VERB_PREFIX = "VerbPrefix"
    DETERMINER = "Determiner"
    ADJECTIVE = "Adjective"
    PREPOSITION = "Preposition"
    ADVERB = "Adverb"
    COORD_CONJ = "CoordConj"
    SUBORD_CONJ = "SubordConj"
    COMPLEMENTIZER = "Complementizer"
    RELATIVE_PRONOUN = "RelativePronoun"
    INTERROGATIVE_PRONOUN = "InterrogativePronoun"
    PUNCT = "Punct"
    OTHER = "Other"


NOMINAL = frozenset(
    {
        Category.NOUN,
        Category.PROPER_NOUN,
        Category.PRONOUN,
        Category.DETERMINER,
        Category.ADJECTIVE,
        Category.RELATIVE_PRONOUN,
        Category.INTERROGATIVE_PRONOUN,
    }
)
VERBAL = frozenset({Category.FINITE_VERB, Category.NONFINITE_VERB, Category.VERB_PREFIX})
PRONOMINAL = frozenset(
    {Category.PRONOUN, Category.RELATIVE_PRONOUN, Category.INTERROGATIVE_PRONOUN}
)


class UnknownPolicy(enum.Enum):
    """What to do with words the lexicon does not know."""

    SKIP_CLAUSE = "skip-clause"
    AMBIGUOUS_NOUN = "ambiguous-noun"


@dataclass(frozen=True)
class MorphReading:
    lemma: str
    category: Category
    case_set: frozenset = frozenset()
    gender: str = "none"
    number_set: frozenset = frozenset()
    person_set: frozenset = frozenset()

    def violations(self):
        """Return a list of constraint violations (empty when well-formed)."""
        problems = []
        if self.category in NOMINAL and not self.case_set:
            problems.append(f"{self.category.value} reading needs a case set")
        if self.category not in NOMINAL and self.case_set:
            problems.append(f"{self.category.value} reading cannot carry case")
        if self.category is Category.FINITE_VERB and not (self.person_set and self.number_set):
            problems.append("FiniteVerb reading needs person and number")
        if not self.case_set <= set(CASES):
            problems.append(f"bad case set {sorted(self.case_set)}")
        if self.gender not in GENDERS:
            problems.append(f"bad gender {self.gender}")
        return problems

    @property
    def is_nominal(self):
        return self.category in NOMINAL


@dataclass(frozen=True)
class Token:
    surface: str
    position: int
    readings: tuple = ()

    @property
    def known(self):
        return bool(self.readings)

    def categories(self):
        return {r.category for r in self.readings}


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, tuple] = field(default_factory=dict)
    # Capitalized surfaces are also looked up lowercased.
    fold_capitalized: bool = True

    def __len__(self):
        return len(self.entries)

    def __contains__(self, surface):
        return surface in self.entries

    def lookup(self, surface):
        return self.entries.get(surface, ())

    def readings(self):
        for surface, readings in self.entries.items():
            for r in readings:
                yield surface, r


def _parse_set(text, allowed, what, path, lineno, convert=str):
    if text == "-":
        return frozenset()
    out = set()
    for item in text.split("|"):
        try:
            value = convert(item)
        except ValueError:
            value = None
        if value not in allowed:
            raise ParseError(f"unknown {what} token {item!r}", path, lineno)
        out.add(value)
    return frozenset(out)


def parse_lexicon_line(line, path=None, lineno=None):
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) != 7:
        raise ParseError(f"expected 7 tab-separated fields, got {len(fields)}", path, lineno)
    surface, cat, lemma, gender, cases, numbers, persons = fields
    if not surface or not lemma:
        raise ParseError("empty surface or lemma", path, lineno)
    try:
        category = Category(cat)
    except ValueError:
        raise ParseError(f"unknown category token {cat!r}", path, lineno) from None
    if gender == "-":
        gender = "none"
    if gender not in GENDERS:
        raise ParseError(f"unknown gender token {gender!r}", path, lineno)
    reading = MorphReading(
        lemma=lemma,
        category=category,
        case_set=_parse_set(cases, CASES, "case", path, lineno),
        gender=gender,
        number_set=_parse_set(numbers, NUMBERS, "number", path, lineno),
        person_set=_parse_set(persons, PERSONS, "person", path, lineno, convert=int),
    )
    problems = reading.violations()
    if problems:
        raise ParseError("; ".join(problems), path, lineno)
    return surface, reading


def build_lexicon(lines: Iterable[str], path=None) -> Lexicon:
    entries: dict[str, list] = {}
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.startswith("#"):
            continue
        surface, reading = parse_lexicon_line(line, path, lineno)
        bucket = entries.setdefault(surface, [])
        if reading not in bucket:
            bucket.append(reading)
    return Lexicon({s: tuple(rs) for s, rs in entries.items()})


def load_lexicon(path) -> Lexicon:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return build_lexicon(fh, path)


def default_lexicon_path():
    return resources.files("kasus") / "data" / "lexicon.tsv"


def load_default_lexicon() -> Lexicon:
    with resources.as_file(default_lexicon_path()) as p:
        return load_lexicon(p)


def format_reading(surface, r: MorphReading):
    def fmt(values, order):
        vals = [str(v) for v in order if v in values]
        return "|".join(vals) if vals else "-"

    return "\t".join(
        [
            surface,
            r.category.value,
            r.lemma,
            r.gender,
            fmt(r.case_set, CASES),
            fmt(r.number_set, NUMBERS),
            fmt(r.person_set, PERSONS),
        ]
    )


def analyze(lexicon: Lexicon, surface: str, position: int = 0) -> Token:
    """Look up every reading of ``surface``.

    A capitalized form is looked up both as written and lowercased and the
    union is returned, so sentence-initial "Morgen" keeps its noun and its
    adverb reading.
    """
    if not surface:
        raise ValueError("empty surface")
    readings = list(lexicon.lookup(surface))
    lowered = surface[:1].lower() + surface[1:]
    if lexicon.fold_capitalized and lowered != surface:
        for r in lexicon.lookup(lowered):
            if r not in readings:
                readings.append(r)
    return Token(surface, position, tuple(readings))


_TOKEN_RE = re.compile(r"\.\.\.|\w+(?:[-']\w+)*|[^\w\s]", re.UNICODE)


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text)


def is_punctuation(surface: str) -> bool:
    return not any(ch.isalnum() for ch in surface)


def guess_unknown(token: Token) -> Token:
    """Ambiguous-noun fallback for an unknown capitalized word."""
    if token.readings or not token.surface[:1].isupper():
        return token
    reading = MorphReading(
        lemma=token.surface,
        category=Category.NOUN,
        case_set=frozenset(CASES),
        gender="none",
        number_set=frozenset(NUMBERS),
        person_set=frozenset({3}),
    )
    return Token(token.surface, token.position, (reading,))


def analyze_sentence(lexicon: Lexicon, text: str, policy=UnknownPolicy.SKIP_CLAUSE):
    tokens = [analyze(lexicon, s, i) for i, s in enumerate(tokenize(text))]
    if policy is UnknownPolicy.AMBIGUOUS_NOUN:
        tokens = [guess_unknown(t) for t in tokens]
    return tokens
