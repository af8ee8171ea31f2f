"""Seeded generator of a toy German-like corpus with known grammatical roles.

Nouns are pseudo-words with real German article paradigms, so case
syncretism behaves as in German: masculine singular NCs are unambiguous,
feminine, neuter and plural NCs are nominative/accusative ambiguous.  Each
verb prefers subjects from one noun class and objects from another, which
is the regularity the back-off model is supposed to pick up.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from .evaluation import GoldTuple, write_gold

_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "w", "z", "br", "kr", "st", "tr", "pl"]
_VOWELS = ["a", "e", "i", "o", "u", "au", "ei"]
_CODAS = ["", "", "n", "r", "l", "m", "s", "k", "nd", "rt"]

# surface, category, lemma, gender, cases, numbers, persons
_FUNCTION_WORDS = [
    (",", "Punct", ",", "-", "-", "-", "-"),
    (".", "Punct", ".", "-", "-", "-", "-"),
    ("...", "Punct", "...", "-", "-", "-", "-"),
    ("der", "Determiner", "der", "masc", "nom", "sg", "3"),
    ("der", "Determiner", "der", "fem", "gen|dat", "sg", "3"),
    ("der", "Determiner", "der", "none", "gen", "pl", "3"),
    ("die", "Determiner", "der", "fem", "nom|acc", "sg", "3"),
    ("die", "Determiner", "der", "none", "nom|acc", "pl", "3"),
    ("das", "Determiner", "der", "neut", "nom|acc", "sg", "3"),
    ("den", "Determiner", "der", "masc", "acc", "sg", "3"),
    ("den", "Determiner", "der", "none", "dat", "pl", "3"),
    ("dem", "Determiner", "der", "masc", "dat", "sg", "3"),
    ("dem", "Determiner", "der", "neut", "dat", "sg", "3"),
    ("ein", "Determiner", "ein", "masc", "nom", "sg", "3"),
    ("ein", "Determiner", "ein", "neut", "nom|acc", "sg", "3"),
    ("eine", "Determiner", "ein", "fem", "nom|acc", "sg", "3"),
    ("einen", "Determiner", "ein", "masc", "acc", "sg", "3"),
    ("neue", "Adjective", "neu", "none", "nom|acc", "sg|pl", "-"),
    ("in", "Preposition", "in", "-", "-", "-", "-"),
    ("mit", "Preposition", "mit", "-", "-", "-", "-"),
    ("nach", "Preposition", "nach", "-", "-", "-", "-"),
    ("heute", "Adverb", "heute", "-", "-", "-", "-"),
    ("oft", "Adverb", "oft", "-", "-", "-", "-"),
    ("dort", "Adverb", "dort", "-", "-", "-", "-"),
    ("nun", "Adverb", "nun", "-", "-", "-", "-"),
    ("weil", "SubordConj", "weil", "-", "-", "-", "-"),
    ("dass", "Complementizer", "dass", "-", "-", "-", "-"),
]
_FUNCTION_LEMMAS = len({(w[2], w[1]) for w in _FUNCTION_WORDS if w[1] != "Punct"})

_NOUN_FORMS = {
    # gender: (sg suffix, sg cases, pl suffix, pl cases)
    "masc": ("", "nom|dat|acc", "e", "nom|gen|acc"),
    "fem": ("e", "nom|gen|dat|acc", "en", "nom|gen|dat|acc"),
    "neut": ("", "nom|dat|acc", "er", "nom|gen|acc"),
}


@dataclass(frozen=True)
class Noun:
    lemma: str
    gender: str
    plural: str
    cls: int


@dataclass(frozen=True)
class Verb:
    lemma: str
    sg: str
    pl: str
    subject_class: int
    object_class: int


@dataclass
class SyntheticConfig:
    seed: int = 0
    n_clauses: int = 2400
    lexicon_size: int = 200
    n_verbs: int = 60
    n_classes: int = 4
    subject_first: float = 0.8
    heuristic_inversion: float = 0.05
    role_noise: float = 0.03
    plural_share: float = 0.3
    adjective_share: float = 0.2
    filler_share: float = 0.3
    # main NC-first / adverbial-first / subordinate
    template_weights: tuple = (0.6, 0.2, 0.2)


@dataclass
class SyntheticCorpus:
    config: SyntheticConfig
    nouns: list
    verbs: list
    lexicon_lines: list = field(default_factory=list)
    sentences: list = field(default_factory=list)
    gold: list = field(default_factory=list)
    n_clauses: int = 0

    @property
    def lemma_count(self):
        return len(self.nouns) + len(self.verbs) + _FUNCTION_LEMMAS


def _pseudo_stem(rng, taken):
    while True:
        syl = rng.randint(1, 2)
        stem = "".join(rng.choice(_ONSETS) + rng.choice(_VOWELS) for _ in range(syl))
        stem += rng.choice(_CODAS)
        if len(stem) >= 3 and stem not in taken:
            return stem


def _vocabulary(cfg, rng):
    taken = {w[0] for w in _FUNCTION_WORDS}
    n_nouns = cfg.lexicon_size - cfg.n_verbs - _FUNCTION_LEMMAS
    genders = ["masc", "fem", "neut"]
    nouns = []
    while len(nouns) < n_nouns:
        gender = genders[len(nouns) % 3]
        sg_suf, _, pl_suf, _ = _NOUN_FORMS[gender]
        stem = _pseudo_stem(rng, taken).capitalize()
        sg, pl = stem + sg_suf, stem + pl_suf
        if sg in taken or pl in taken or sg == pl:
            continue
        taken.update((stem, sg, pl, stem.lower(), sg.lower(), pl.lower()))
        nouns.append(Noun(sg, gender, pl, len(nouns) % cfg.n_classes))
    verbs = []
    while len(verbs) < cfg.n_verbs:
        stem = _pseudo_stem(rng, taken)
        forms = (stem + "en", stem + "t")
        if any(f in taken for f in forms) or stem.endswith("t"):
            continue
        taken.update((stem,) + forms)
        s = rng.randrange(cfg.n_classes)
        o = (s + rng.randrange(1, cfg.n_classes)) % cfg.n_classes
        verbs.append(Verb(stem + "en", stem + "t", stem + "en", s, o))
    return nouns, verbs


def _lexicon_lines(nouns, verbs):
    lines = ["\t".join(w) for w in _FUNCTION_WORDS]
    for n in nouns:
        _, sg_cases, _, pl_cases = _NOUN_FORMS[n.gender]
        lines.append("\t".join([n.lemma, "Noun", n.lemma, n.gender, sg_cases, "sg", "3"]))
        lines.append("\t".join([n.plural, "Noun", n.lemma, n.gender, pl_cases, "pl", "3"]))
    for v in verbs:
        lines.append("\t".join([v.sg, "FiniteVerb", v.lemma, "-", "-", "sg", "3"]))
        lines.append("\t".join([v.pl, "FiniteVerb", v.lemma, "-", "-", "pl", "1|3"]))
    return lines


class _Generator:
    def __init__(self, cfg: SyntheticConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.nouns, self.verbs = _vocabulary(cfg, self.rng)
        self.by_class = {}
        for n in self.nouns:
            self.by_class.setdefault(n.cls, []).append(n)
        self.dative_nouns = [n for n in self.nouns if n.gender != "fem"]

    def nc(self, noun, case, plural):
        rng = self.rng
        if plural:
            det, head = "die", noun.plural
        elif noun.gender == "masc":
            definite = rng.random() < 0.5
            det = ("der" if definite else "ein") if case == "nom" else ("den" if definite else "einen")
            head = noun.lemma
        elif noun.gender == "fem":
            det, head = rng.choice(["die", "eine"]), noun.lemma
        else:
            det, head = rng.choice(["das", "ein"]), noun.lemma
        words = [det]
        if det in ("die", "das", "eine", "der") and rng.random() < self.cfg.adjective_share:
            words.append("neue")
        words.append(head)
        return words

    def filler(self):
        rng = self.rng
        if rng.random() < 0.5:
            return [rng.choice(["heute", "oft", "dort", "nun"])]
        return [rng.choice(["in", "mit", "nach"]), "dem", rng.choice(self.dative_nouns).lemma]

    def arguments(self):
        rng = self.rng
        v = rng.choice(self.verbs)
        s_cls, o_cls = v.subject_class, v.object_class
        if rng.random() < self.cfg.role_noise:
            s_cls, o_cls = o_cls, s_cls
        subj = rng.choice(self.by_class[s_cls])
        obj = rng.choice(self.by_class[o_cls])
        return v, subj, obj, rng.random() < self.cfg.plural_share, rng.random() < self.cfg.plural_share

    def clause(self):
        """Return (words, n_clauses, gold or None)."""
        rng, cfg = self.rng, self.cfg
        v, subj, obj, s_pl, o_pl = self.arguments()
        finite = v.pl if s_pl else v.sg
        s_words = self.nc(subj, "nom", s_pl)
        o_words = self.nc(obj, "acc", o_pl)
        template = rng.choices(["main", "adverbial", "subordinate"], cfg.template_weights)[0]
        if template == "main":
            subject_first = rng.random() < cfg.subject_first
            first, second = (s_words, o_words) if subject_first else (o_words, s_words)
            words = first + [finite]
            if rng.random() < cfg.filler_share:
                words += self.filler()
            words += second + ["."]
            ambiguous = not (
                (subj.gender == "masc" and not s_pl) or (obj.gender == "masc" and not o_pl)
            ) and s_pl == o_pl
            gold = None
            if ambiguous:
                n1, n2 = (subj, obj) if subject_first else (obj, subj)
                gold = GoldTuple(n1.lemma, v.lemma, n2.lemma, int(subject_first))
            return words, 1, gold
        inverted = rng.random() < cfg.heuristic_inversion
        first, second = (o_words, s_words) if inverted else (s_words, o_words)
        if template == "adverbial":
            return self.filler() + [finite] + first + second + ["."], 1, None
        words = [rng.choice(["weil", "dass"])] + first + second + [finite, ","]
        if rng.random() < 0.5:
            return words + ["..."], 1, None
        # a main clause whose prefield is the subordinate clause
        v2, subj2, obj2, s_pl2, o_pl2 = self.arguments()
        words += [v2.pl if s_pl2 else v2.sg] + self.nc(subj2, "nom", s_pl2) + self.nc(obj2, "acc", o_pl2) + ["."]
        return words, 2, None


def generate(config: SyntheticConfig | None = None) -> SyntheticCorpus:
    cfg = config or SyntheticConfig()
    gen = _Generator(cfg)
    corpus = SyntheticCorpus(cfg, gen.nouns, gen.verbs, _lexicon_lines(gen.nouns, gen.verbs))
    while corpus.n_clauses < cfg.n_clauses:
        words, k, gold = gen.clause()
        words[0] = words[0][:1].upper() + words[0][1:]
        corpus.sentences.append(" ".join(words))
        corpus.n_clauses += k
        if gold is not None:
            corpus.gold.append(gold)
    return corpus


def write_corpus(corpus: SyntheticCorpus, directory):
    """Write ``lexicon.tsv``, ``corpus.txt`` and ``gold.tsv``; returns their paths."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    lex, text, gold = d / "lexicon.tsv", d / "corpus.txt", d / "gold.tsv"
    lex.write_text("\n".join(corpus.lexicon_lines) + "\n", encoding="utf-8")
    text.write_text("\n".join(corpus.sentences) + "\n", encoding="utf-8")
    write_gold(gold, corpus.gold)
    return lex, text, gold
