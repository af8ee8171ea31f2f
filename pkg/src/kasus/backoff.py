"""Hard back-off estimate of P(first noun is subject | n1, v, n2).

Counts are exact integers.  Each level is a plain relative frequency; the
estimate falls back to the next coarser level when the total there is zero
and ends in a subject-first prior of 1.0.  There is no discounting.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import ParseError

MODEL_HEADER = "#kasus-model v1"


class Mode(str, enum.Enum):
    BOTH_NOUNS = "both_nouns"
    N2_PRONOUN = "n2_pronoun"
    N1_PRONOUN = "n1_pronoun"


@dataclass(frozen=True)
class Estimate:
    value: float
    level: int
    c_used: int = 0
    t_used: int = 0

    @property
    def fraction(self) -> Fraction:
        if self.t_used == 0:
            # level 0, or an estimate read back without its counts
            return Fraction(self.value)
        return Fraction(self.c_used, self.t_used)


class CountModel:
    """Frequency store over training tuples ``(n1, v, n2, x)``.

    ``f_so(a, v, b)`` counts a as subject and b as object of v, whichever
    order they appeared in.  The per-noun and per-verb marginals are
    materialized at construction; the model is read-only afterwards.
    """

    def __init__(self, raw: dict | None = None):
        self.raw = Counter()
        for key, count in (raw or {}).items():
            if count < 0:
                raise ValueError(f"negative count for {key}")
            if count:
                self.raw[key] = count
        self._so = Counter()
        self._s = Counter()
        self._o = Counter()
        self._sv = Counter()
        self._ov = Counter()
        self.vocabulary = set()
        for (n1, v, n2, x), k in self.raw.items():
            self.vocabulary.update((n1, n2))
            subj, obj = (n1, n2) if x == 1 else (n2, n1)
            self._so[subj, v, obj] += k
            self._s[subj, v] += k
            self._o[obj, v] += k
            if x == 1:
                self._sv[v] += k
            else:
                self._ov[v] += k

    @classmethod
    def from_tuples(cls, tuples: Iterable):
        raw = Counter()
        for t in tuples:
            raw[t.n1, t.v, t.n2, int(t.x)] += 1
        return cls(raw)

    def __eq__(self, other):
        return isinstance(other, CountModel) and self.raw == other.raw

    def __len__(self):
        return len(self.raw)

    def c(self, n1, v, n2, x):
        return self.raw.get((n1, v, n2, x), 0)

    def f_so(self, n1, v, n2):
        return self._so.get((n1, v, n2), 0)

    def f_s(self, n, v):
        return self._s.get((n, v), 0)

    def f_o(self, n, v):
        return self._o.get((n, v), 0)

    def f_s_verb(self, v):
        return self._sv.get(v, 0)

    def f_o_verb(self, v):
        return self._ov.get(v, 0)

    def verbs(self):
        return {v for (_, v, _, _) in self.raw}

    def level_counts(self, n1, v, n2, mode=Mode.BOTH_NOUNS):
        """``[(level, c, t), ...]`` from the entry level down to 1."""
        mode = Mode(mode)
        levels = []
        if mode is Mode.BOTH_NOUNS:
            so, os_ = self.f_so(n1, v, n2), self.f_so(n2, v, n1)
            levels.append((3, so, so + os_))
            levels.append(
                (
                    2,
                    self.f_s(n1, v) + self.f_o(n2, v),
                    self.f_s(n1, v) + self.f_o(n1, v) + self.f_s(n2, v) + self.f_o(n2, v),
                )
            )
        elif mode is Mode.N2_PRONOUN:
            levels.append((2, self.f_s(n1, v), self.f_s(n1, v) + self.f_o(n1, v)))
        else:
            # Mirror of the n2-pronoun case: how often the known second noun
            # was the object, i.e. the pronoun the subject.  f_s(n2, v) in the
            # numerator would be the other possible mirror, but it estimates
            # the wrong event.
            levels.append((2, self.f_o(n2, v), self.f_s(n2, v) + self.f_o(n2, v)))
        sv, ov = self.f_s_verb(v), self.f_o_verb(v)
        levels.append((1, sv, sv + ov))
        return levels

    def estimate(self, n1, v, n2, mode=Mode.BOTH_NOUNS) -> Estimate:
        for level, c, t in self.level_counts(n1, v, n2, mode):
            if t > 0:
                return Estimate(c / t, level, c, t)
        return Estimate(1.0, 0, 0, 0)


def train(tuples: Iterable) -> CountModel:
    return CountModel.from_tuples(tuples)


def estimate(model: CountModel, n1, v, n2, mode=Mode.BOTH_NOUNS) -> Estimate:
    return model.estimate(n1, v, n2, mode)


# --- model files ----------------------------------------------------------


def save_model(model: CountModel, path):
    rows = sorted(model.raw.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2], kv[0][3]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(MODEL_HEADER + "\n")
        for (n1, v, n2, x), k in rows:
            fh.write(f"{n1}\t{v}\t{n2}\t{x}\t{k}\n")


def load_model(path) -> CountModel:
    path = Path(path)
    raw = Counter()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            if line.startswith("#"):
                if lineno == 1 and line != MODEL_HEADER:
                    raise ParseError(f"unsupported model header {line!r}", path, lineno)
                continue
            fields = line.split("\t")
            if len(fields) != 5 or not all(fields[:3]):
                raise ParseError("expected n1, v, n2, x, count", path, lineno)
            n1, v, n2, x, k = fields
            if x not in ("0", "1"):
                raise ParseError(f"x must be 0 or 1, got {x!r}", path, lineno)
            try:
                count = int(k)
            except ValueError:
                raise ParseError(f"count is not an integer: {k!r}", path, lineno) from None
            if count < 0:
                raise ParseError(f"negative count {count}", path, lineno)
            raw[n1, v, n2, int(x)] += count
    return CountModel(raw)
