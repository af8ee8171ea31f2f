"""Clause segmentation and shallow chunking into NC/PC/VC constituents.

A deterministic greedy pass stands in for a hand-written clause grammar.
Prepositional constituents are never attached to anything.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .morphology import (
    CASES,
    NUMBERS,
    PERSONS,
    PRONOMINAL,
    Category,
    MorphReading,
    Token,
    UnknownPolicy,
    is_punctuation,
)

log = logging.getLogger(__name__)

NOM_ACC = frozenset({"nom", "acc"})
SENTENCE_END = {".", "!", "?", ";", ":"}


class Kind(str, enum.Enum):
    NC = "NC"
    PC = "PC"
    VC = "VC"
    # adverbs and leftovers; never an argument
    AC = "AC"


class ClauseType(str, enum.Enum):
    VERB_SECOND = "verb_second"
    VERB_FINAL = "verb_final"


class Introducer(str, enum.Enum):
    NONE_NC_FIRST = "none_nc_first"
    ADVERBIAL_FIRST = "adverbial_first"
    COORD_CONJUNCTION = "coord_conjunction"
    SUBORD_CONJUNCTION = "subord_conjunction"
    COMPLEMENTIZER = "complementizer"
    RELATIVE_ITEM = "relative_item"
    INTERROGATIVE_ITEM = "interrogative_item"


EMBEDDED = frozenset(
    {
        Introducer.SUBORD_CONJUNCTION,
        Introducer.COMPLEMENTIZER,
        Introducer.RELATIVE_ITEM,
        Introducer.INTERROGATIVE_ITEM,
    }
)


@dataclass(frozen=True)
class Constituent:
    kind: Kind
    tokens: tuple
    head_lemma: str
    head_category: Category | None = None
    person_set: frozenset = frozenset()
    number_set: frozenset = frozenset()
    case_set: frozenset = frozenset()
    head_is_pronoun: bool = False
    head_gender: str = "none"
    # VC only: (person_set, number_set) per finite reading, and the
    # clause-final verbal material (participles, infinitives, prefixes).
    agreement: tuple = ()
    bracket: tuple = ()

    @property
    def token_span(self):
        return (self.tokens[0].position, self.tokens[-1].position + 1)

    @property
    def positions(self):
        return [t.position for t in self.tokens + self.bracket]

    @property
    def surface(self):
        text = " ".join(t.surface for t in self.tokens)
        if self.bracket:
            text += " [" + " ".join(t.surface for t in self.bracket) + "]"
        return text

    @property
    def nom_acc(self):
        return self.case_set & NOM_ACC


@dataclass(frozen=True)
class ClauseStructure:
    clause_type: ClauseType
    introducer: Introducer
    constituents: tuple
    main_verb_lemma: str
    introducer_token: Token | None = None

    @property
    def vc(self):
        return next(c for c in self.constituents if c.kind is Kind.VC)

    def of_kind(self, kind):
        return [c for c in self.constituents if c.kind is kind]


@dataclass(frozen=True)
class ClauseSpan:
    """Token positions of one clause.

    Conjunction/complementizer introducers are held out of ``indices``;
    relative and interrogative items stay in because they fill argument
    slots.  ``introducer`` is None for a main clause whose class is settled
    by the chunker.
    """

    indices: tuple
    introducer: Introducer | None
    introducer_token: int | None = None


# --- feature formatting ---------------------------------------------------


def _fmt_set(values, order):
    items = [str(v) for v in order if v in values]
    if len(items) == 1:
        return items[0]
    return "{" + ",".join(items) + "}"


def constituent_features(c: Constituent) -> str:
    if c.kind is Kind.NC:
        return ",".join(
            [
                _fmt_set(c.person_set, PERSONS),
                _fmt_set(c.number_set, NUMBERS),
                _fmt_set(c.case_set, CASES),
            ]
        )
    if c.kind is Kind.VC:
        return ",".join([_fmt_set(c.person_set, PERSONS), _fmt_set(c.number_set, NUMBERS)])
    return "-"


def dump_structure(s: ClauseStructure) -> str:
    """Debug dump, one ``KIND<TAB>features<TAB>surface`` line per constituent."""
    return "\n".join(
        f"{c.kind.value}\t{constituent_features(c)}\t{c.surface}" for c in s.constituents
    )


# --- segmentation ---------------------------------------------------------


def _has(token, *cats):
    return any(r.category in cats for r in token.readings)


def _is_punct(token):
    return _has(token, Category.PUNCT) or is_punctuation(token.surface)


def _embedded_introducer(tokens, j):
    """Introducer class if an embedded clause starts at ``j``, with a flag
    saying whether the introducer token is held out of the clause."""
    if j >= len(tokens):
        return None
    t = tokens[j]
    if _has(t, Category.SUBORD_CONJ):
        return Introducer.SUBORD_CONJUNCTION, True
    if _has(t, Category.COMPLEMENTIZER):
        return Introducer.COMPLEMENTIZER, True
    if _has(t, Category.RELATIVE_PRONOUN):
        return Introducer.RELATIVE_ITEM, False
    if (
        _has(t, Category.PREPOSITION)
        and j + 1 < len(tokens)
        and _has(tokens[j + 1], Category.RELATIVE_PRONOUN)
    ):
        return Introducer.RELATIVE_ITEM, False
    if _has(t, Category.INTERROGATIVE_PRONOUN):
        return Introducer.INTERROGATIVE_ITEM, False
    return None


@dataclass
class _Frame:
    introducer: Introducer | None
    embedded: bool
    intro_token: int | None = None
    indices: list = field(default_factory=list)
    has_finite: bool = False
    prefield_clause: bool = False


def _finite_ahead(tokens, i):
    for t in tokens[i:]:
        if _is_punct(t) and t.surface in SENTENCE_END | {","}:
            return False
        if _has(t, Category.FINITE_VERB):
            return True
    return False


def segment_clauses(tokens: Sequence[Token]) -> list[ClauseSpan]:
    """Split one sentence into clauses.

    A comma followed by a relative item, subordinating conjunction or
    complementizer opens an embedded clause that is carved out of its host;
    the next plain comma closes it again.  In a main clause a plain comma
    starts a sibling clause.
    """
    done: list[_Frame] = []
    stack = [_Frame(None, embedded=False)]

    def push(frame):
        host = stack[-1]
        if not host.indices and not host.embedded:
            host.prefield_clause = True
        stack.append(frame)

    def close_top():
        done.append(stack.pop())

    first_word = next((k for k, t in enumerate(tokens) if not _is_punct(t)), None)
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if _is_punct(tok):
            if tok.surface == ",":
                intro = _embedded_introducer(tokens, i + 1)
                if intro is not None:
                    kind, held_out = intro
                    frame = _Frame(kind, embedded=True, intro_token=i + 1 if held_out else None)
                    push(frame)
                    i += 2 if held_out else 1
                    continue
                if stack[-1].embedded:
                    close_top()
                else:
                    close_top()
                    stack.append(_Frame(None, embedded=False))
            elif tok.surface in SENTENCE_END:
                while stack:
                    close_top()
                stack.append(_Frame(None, embedded=False))
            i += 1
            continue
        if i == first_word and _has(tok, Category.SUBORD_CONJ, Category.COMPLEMENTIZER):
            kind = (
                Introducer.SUBORD_CONJUNCTION
                if _has(tok, Category.SUBORD_CONJ)
                else Introducer.COMPLEMENTIZER
            )
            push(_Frame(kind, embedded=True, intro_token=i))
            i += 1
            continue
        top = stack[-1]
        if _has(tok, Category.COORD_CONJ) and top.has_finite and _finite_ahead(tokens, i + 1):
            close_top()
            stack.append(
                _Frame(Introducer.COORD_CONJUNCTION, embedded=top.embedded, intro_token=i)
            )
            i += 1
            continue
        top.indices.append(i)
        if _has(tok, Category.FINITE_VERB):
            top.has_finite = True
        i += 1
    while stack:
        close_top()

    spans = []
    for f in done:
        if not f.indices:
            continue
        intro = f.introducer
        if intro is None and f.prefield_clause:
            intro = Introducer.ADVERBIAL_FIRST
        spans.append(ClauseSpan(tuple(f.indices), intro, f.intro_token))
    spans.sort(key=lambda s: min(s.indices))
    return spans


# --- feature unification --------------------------------------------------


@dataclass(frozen=True)
class NCFeatures:
    case_set: frozenset
    number_set: frozenset
    person_set: frozenset
    gender: str
    head: int


_HEAD_CATS = (Category.NOUN, Category.PROPER_NOUN)


def _default_head(readings):
    for k, rs in enumerate(readings):
        if any(r.category in _HEAD_CATS for r in rs):
            return k
    for k, rs in enumerate(readings):
        if any(r.category in PRONOMINAL for r in rs):
            return k
    return len(readings) - 1


def _gender_ok(r, h):
    return r.gender == "none" or h.gender == "none" or r.gender == h.gender


def _number_ok(r, h):
    return not r.number_set or not h.number_set or bool(r.number_set & h.number_set)


def unify_nc_features(readings: Sequence[Sequence[MorphReading]], head: int | None = None):
    """Unify the nominal readings of the tokens of one NC.

    For each reading of the head, the case set is intersected with the cases
    of the compatible readings of every other token.  Tokens left of the head
    (articles, adjectives) must also agree in gender and number with that
    head reading; nouns right of the head are appositions and only constrain
    case.  Returns None when no head reading survives.
    """
    if not readings:
        raise ValueError("an NC needs at least one token")
    if head is None:
        head = _default_head(readings)
    viable = []
    for h in readings[head]:
        if not h.is_nominal:
            continue
        cases = set(h.case_set)
        for k, rs in enumerate(readings):
            if k == head:
                continue
            if k < head:
                compat = [r for r in rs if r.is_nominal and _gender_ok(r, h) and _number_ok(r, h)]
            else:
                compat = [r for r in rs if r.is_nominal]
            allowed = set()
            for r in compat:
                allowed |= r.case_set
            cases &= allowed
            if not cases:
                break
        if cases:
            viable.append((h, frozenset(cases)))
    if not viable:
        return None
    case_set = frozenset().union(*(c for _, c in viable))
    number_set = frozenset().union(*(h.number_set for h, _ in viable))
    person_set = frozenset().union(*(h.person_set for h, _ in viable))
    genders = {h.gender for h, _ in viable}
    gender = genders.pop() if len(genders) == 1 else "none"
    return NCFeatures(case_set, number_set, person_set or frozenset({3}), gender, head)


# --- chunking -------------------------------------------------------------


class _Role(enum.Enum):
    NOUN = "noun"
    DET = "det"
    ADJ = "adj"
    PRON = "pron"
    REL = "rel"
    PREP = "prep"
    FIN = "fin"
    NONFIN = "nonfin"
    PREFIX = "prefix"
    ADV = "adv"
    CONJ = "conj"
    OTHER = "other"


_ROLE_CATS = {
    _Role.NOUN: {Category.NOUN, Category.PROPER_NOUN},
    _Role.DET: {Category.DETERMINER},
    _Role.ADJ: {Category.ADJECTIVE},
    _Role.PRON: {Category.PRONOUN, Category.INTERROGATIVE_PRONOUN, Category.DETERMINER},
    _Role.REL: {Category.RELATIVE_PRONOUN},
    _Role.PREP: {Category.PREPOSITION},
    _Role.FIN: {Category.FINITE_VERB},
    _Role.NONFIN: {Category.NONFINITE_VERB},
    _Role.PREFIX: {Category.VERB_PREFIX},
    _Role.ADV: {Category.ADVERB},
    _Role.CONJ: {Category.COORD_CONJ},
}
_VERBAL_ROLES = {_Role.FIN, _Role.NONFIN, _Role.PREFIX}
_GROUP_START = {_Role.DET, _Role.ADJ, _Role.NOUN}


def _assign_roles(tokens, introducer):
    roles = []
    n = len(tokens)
    for k, t in enumerate(tokens):
        cats = t.categories()
        nxt = tokens[k + 1].categories() if k + 1 < n else set()
        if introducer is Introducer.RELATIVE_ITEM and Category.RELATIVE_PRONOUN in cats and (
            k == 0 or (k == 1 and roles[0] is _Role.PREP)
        ):
            roles.append(_Role.REL)
        elif cats & {Category.NOUN, Category.PROPER_NOUN}:
            roles.append(_Role.NOUN)
        elif Category.FINITE_VERB in cats:
            roles.append(_Role.FIN)
        elif Category.NONFINITE_VERB in cats:
            roles.append(_Role.NONFIN)
        elif Category.DETERMINER in cats:
            if nxt & {Category.NOUN, Category.PROPER_NOUN, Category.ADJECTIVE}:
                roles.append(_Role.DET)
            elif Category.PRONOUN in cats:
                roles.append(_Role.PRON)
            else:
                roles.append(_Role.DET)
        elif cats & {Category.PRONOUN, Category.INTERROGATIVE_PRONOUN}:
            roles.append(_Role.PRON)
        elif Category.ADJECTIVE in cats:
            roles.append(_Role.ADJ)
        elif Category.PREPOSITION in cats:
            roles.append(_Role.PREP)
        elif Category.VERB_PREFIX in cats:
            roles.append(_Role.PREFIX)
        elif Category.ADVERB in cats:
            roles.append(_Role.ADV)
        elif Category.COORD_CONJ in cats:
            roles.append(_Role.CONJ)
        else:
            roles.append(_Role.OTHER)
    return roles


def _role_readings(token, role):
    cats = _ROLE_CATS.get(role)
    if cats is None:
        return token.readings
    if role is _Role.PRON:
        # a determiner used alone is pronominal; prefer real pronoun readings
        own = [r for r in token.readings if r.category in PRONOMINAL]
        if own:
            return tuple(own)
    return tuple(r for r in token.readings if r.category in cats)


def _group_end(roles, i):
    j = i
    if j < len(roles) and roles[j] is _Role.DET:
        j += 1
    while j < len(roles) and roles[j] is _Role.ADJ:
        j += 1
    while j < len(roles) and roles[j] is _Role.NOUN:
        j += 1
    return j


def _make_nc(tokens, readings, feats: NCFeatures):
    head_r = next(r for r in readings[feats.head] if r.is_nominal)
    return Constituent(
        kind=Kind.NC,
        tokens=tuple(tokens),
        head_lemma=head_r.lemma,
        head_category=head_r.category,
        person_set=feats.person_set,
        number_set=feats.number_set,
        case_set=feats.case_set,
        head_is_pronoun=head_r.category in PRONOMINAL,
        head_gender=feats.gender,
    )


def _nominal(tokens, roles, i, j):
    """NC over tokens[i:j], re-chunking into smaller NCs when unification fails."""
    out = []
    while i < j:
        for k in range(j, i, -1):
            rs = [_role_readings(tokens[m], roles[m]) for m in range(i, k)]
            feats = unify_nc_features(rs)
            if feats is not None:
                out.append(_make_nc(tokens[i:k], rs, feats))
                i = k
                break
        else:
            return None
    return out


def _coordinate(first: Constituent, conj: Token, second: Constituent):
    cases = first.case_set & second.case_set
    if not cases:
        return None
    return Constituent(
        kind=Kind.NC,
        tokens=first.tokens + (conj,) + second.tokens,
        head_lemma=first.head_lemma,
        head_category=first.head_category,
        person_set=first.person_set | second.person_set,
        number_set=frozenset({"pl"}),
        case_set=cases,
        head_is_pronoun=first.head_is_pronoun,
        head_gender=first.head_gender,
    )


def _simple(kind, tokens, head=None):
    head = head or tokens[0]
    r = head.readings[0] if head.readings else None
    return Constituent(
        kind=kind,
        tokens=tuple(tokens),
        head_lemma=r.lemma if r else head.surface,
        head_category=r.category if r else None,
    )


def _prefield_ok(prefield):
    if not prefield:
        return False
    if prefield[0].kind is Kind.VC:
        return False
    return all(c.kind is Kind.PC for c in prefield[1:])


def chunk(
    tokens: Sequence[Token],
    introducer: Introducer | None = None,
    introducer_token: Token | None = None,
    policy: UnknownPolicy = UnknownPolicy.SKIP_CLAUSE,
) -> ClauseStructure | None:
    """Chunk one clause.  Returns None when the clause is rejected."""
    toks = [t for t in tokens if not _is_punct(t)]
    if not toks:
        return None
    if policy is UnknownPolicy.SKIP_CLAUSE and any(
        not t.readings and t.surface[:1].isupper() for t in toks
    ):
        log.debug("rejected: unknown nominal in %s", [t.surface for t in toks])
        return None
    roles = _assign_roles(toks, introducer)

    units = []  # Constituent or (role, Token) for verbal material
    i = 0
    n = len(toks)
    while i < n:
        role = roles[i]
        if role is _Role.PREP:
            j = i + 1
            if j < n and roles[j] in (_Role.REL, _Role.PRON):
                j += 1
            elif j < n and roles[j] in _GROUP_START:
                j = _group_end(roles, j)
            units.append(_simple(Kind.PC, toks[i:j]))
            i = j
        elif role in _GROUP_START:
            j = _group_end(roles, i)
            ncs = _nominal(toks, roles, i, j)
            if ncs is None:
                return None
            # noun-phrase coordination: "Bilder und Zeichnungen"
            while (
                j + 1 < n
                and roles[j] is _Role.CONJ
                and roles[j + 1] in _GROUP_START | {_Role.PRON}
            ):
                k = _group_end(roles, j + 1) if roles[j + 1] in _GROUP_START else j + 2
                more = _nominal(toks, roles, j + 1, k)
                if more is None:
                    break
                merged = _coordinate(ncs[-1], toks[j], more[0])
                if merged is None:
                    break
                ncs[-1:] = [merged] + more[1:]
                j = k
            units.extend(ncs)
            i = j
        elif role in (_Role.PRON, _Role.REL):
            ncs = _nominal(toks, roles, i, i + 1)
            if ncs is None:
                return None
            units.extend(ncs)
            i += 1
        elif role in _VERBAL_ROLES:
            units.append((role, toks[i]))
            i += 1
        else:
            j = i + 1
            while j < n and roles[j] is _Role.ADV and role is _Role.ADV:
                j += 1
            units.append(_simple(Kind.AC, toks[i:j]))
            i = j

    verb_idx = [k for k, u in enumerate(units) if isinstance(u, tuple)]
    if not verb_idx:
        return None

    def finite_readings(tok):
        return [r for r in tok.readings if r.category is Category.FINITE_VERB]

    def build_vc(finite_tok, span_toks, bracket_toks, nonfinite_pool):
        frs = finite_readings(finite_tok)
        main = frs[0].lemma
        for t in nonfinite_pool:
            nf = [r for r in t.readings if r.category is Category.NONFINITE_VERB]
            if nf:
                main = nf[0].lemma
                break
        vc = Constituent(
            kind=Kind.VC,
            tokens=tuple(span_toks),
            head_lemma=frs[0].lemma,
            head_category=Category.FINITE_VERB,
            person_set=frozenset().union(*(r.person_set for r in frs)),
            number_set=frozenset().union(*(r.number_set for r in frs)),
            agreement=tuple((r.person_set, r.number_set) for r in frs),
            bracket=tuple(bracket_toks),
        )
        return vc, main

    def verb_final():
        # all verbal material forms one run at the end of the clause
        first = verb_idx[0]
        if verb_idx != list(range(first, len(units))):
            return None
        run = [units[k][1] for k in verb_idx]
        fin_pos = [m for m, t in enumerate(run) if finite_readings(t)]
        if not fin_pos:
            return None
        f = fin_pos[-1]
        pool = run[:f] + run[f + 1 :]
        vc, main = build_vc(run[f], run, (), pool)
        consts = units[:first] + [vc]
        if not any(c.kind is not Kind.VC for c in consts):
            return None
        return ClauseType.VERB_FINAL, consts, main

    def verb_second():
        fin = next((k for k in verb_idx if finite_readings(units[k][1])), None)
        if fin is None or fin != verb_idx[0]:
            return None
        rest = [units[k][1] for k in verb_idx[1:]]
        vc, main = build_vc(units[fin][1], [units[fin][1]], rest, rest)
        others = [u for u in units if not isinstance(u, tuple)]
        prefield = [u for u in units[:fin] if not isinstance(u, tuple)]
        consts = prefield + [vc] + others[len(prefield) :]
        return ClauseType.VERB_SECOND, consts, main, prefield

    result = None
    intro = introducer
    if introducer in EMBEDDED:
        result = verb_final()
    else:
        v2 = verb_second()
        if v2 is not None:
            ctype, consts, main, prefield = v2
            if introducer is Introducer.ADVERBIAL_FIRST:
                # an embedded clause already fills the prefield
                ok = not prefield
            else:
                ok = _prefield_ok(prefield)
                if ok and introducer is None:
                    head = prefield[0]
                    if head.kind is Kind.NC:
                        if head.head_category is Category.INTERROGATIVE_PRONOUN:
                            intro = Introducer.INTERROGATIVE_ITEM
                        else:
                            intro = Introducer.NONE_NC_FIRST
                    else:
                        intro = Introducer.ADVERBIAL_FIRST
            if ok:
                result = (ctype, consts, main)
        if result is None and introducer is Introducer.COORD_CONJUNCTION:
            result = verb_final()
    if result is None:
        log.debug("rejected: no verb-second/verb-final analysis for %s", [t.surface for t in toks])
        return None
    ctype, consts, main = result
    return ClauseStructure(
        clause_type=ctype,
        introducer=intro,
        constituents=tuple(consts),
        main_verb_lemma=main,
        introducer_token=introducer_token,
    )


def parse_tokens(tokens: Sequence[Token], policy=UnknownPolicy.SKIP_CLAUSE):
    """Segment and chunk a sentence; rejected clauses are dropped."""
    out = []
    for span in segment_clauses(tokens):
        clause_toks = [tokens[k] for k in span.indices]
        intro_tok = tokens[span.introducer_token] if span.introducer_token is not None else None
        s = chunk(clause_toks, span.introducer, intro_tok, policy)
        if s is not None:
            out.append(s)
    return out
