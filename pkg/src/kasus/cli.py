"""Command-line front end: extract, train, decide, eval and an end-to-end run.

Exit codes: 0 on success, 1 for usage errors (bad flags, missing input
files), 2 for data errors (malformed input, gold/decision mismatch).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import backoff, decision, evaluation, extraction
from .chunker import dump_structure
from .errors import KasusError
from .morphology import UnknownPolicy, default_lexicon_path, load_lexicon

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class StageError(Exception):
    """An error raised inside one stage of ``run``."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage}: {cause}")


@dataclass
class PipelineConfig:
    lexicon: Path
    unknown: UnknownPolicy
    corpus: Path | None = None
    train: Path | None = None
    test: Path | None = None
    model: Path | None = None
    decisions: Path | None = None
    gold: Path | None = None
    out: Path | None = None
    workdir: Path | None = None

    @classmethod
    def from_args(cls, args):
        def path(name):
            value = getattr(args, name, None)
            return None if value is None else Path(value)

        return cls(
            lexicon=Path(args.lexicon) if getattr(args, "lexicon", None) else default_lexicon_path(),
            unknown=UnknownPolicy(getattr(args, "unknown", UnknownPolicy.SKIP_CLAUSE.value)),
            corpus=path("corpus"),
            train=path("train"),
            test=path("test"),
            model=path("model"),
            decisions=path("decisions"),
            gold=path("gold"),
            out=path("out"),
            workdir=path("workdir"),
        )


def _need_file(path, what):
    if path is None:
        raise UsageError(f"--{what} is required")
    if not Path(path).is_file():
        raise UsageError(f"{what} file not found: {path}")


def _read_corpus(path):
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\r\n") for line in fh]


# --- subcommands ----------------------------------------------------------


def cmd_extract(cfg: PipelineConfig, out=sys.stdout):
    _need_file(cfg.lexicon, "lexicon")
    _need_file(cfg.corpus, "corpus")
    if cfg.out is None:
        raise UsageError("--out is required")
    lexicon = load_lexicon(cfg.lexicon)
    train, test = extraction.extract_corpus(_read_corpus(cfg.corpus), lexicon, cfg.unknown)
    cfg.out.mkdir(parents=True, exist_ok=True)
    extraction.write_training(cfg.out / "train.tsv", train)
    extraction.write_test(cfg.out / "test.tsv", test)
    print(f"training={len(train)} test={len(test)}", file=out)
    return train, test


def cmd_train(cfg: PipelineConfig, out=sys.stdout):
    _need_file(cfg.train, "train")
    target = cfg.out or cfg.model
    if target is None:
        raise UsageError("--out is required")
    model = backoff.train(extraction.read_training(cfg.train))
    backoff.save_model(model, target)
    print(f"entries={len(model)}", file=out)
    return model


def cmd_decide(cfg: PipelineConfig, out=sys.stdout):
    _need_file(cfg.model, "model")
    _need_file(cfg.test, "test")
    if cfg.out is None:
        raise UsageError("--out is required")
    model = backoff.load_model(cfg.model)
    decisions = decision.decide_batch(model, extraction.read_test(cfg.test))
    decision.write_decisions(cfg.out, decisions)
    skipped = sum(d.skipped for d in decisions)
    print(f"decisions={len(decisions) - skipped} skipped={skipped}", file=out)
    return decisions


def cmd_eval(cfg: PipelineConfig, out=sys.stdout):
    _need_file(cfg.decisions, "decisions")
    _need_file(cfg.gold, "gold")
    report = evaluation.evaluate(decision.read_decisions(cfg.decisions), evaluation.read_gold(cfg.gold))
    text = evaluation.render_report(report)
    if cfg.out is not None:
        cfg.out.write_text(text, encoding="utf-8")
    out.write(text)
    return report


def _stage(name, fn, cfg, out):
    try:
        return fn(cfg, out)
    except (UsageError, KasusError, OSError) as exc:
        raise StageError(name, exc) from exc


def cmd_run(cfg: PipelineConfig, out=sys.stdout):
    """Extract, train, decide and evaluate, keeping every intermediate file."""
    if cfg.workdir is None:
        raise UsageError("--workdir is required")
    # validate every input before doing any work, but name the stage that needs it
    for stage, path, what in (
        ("extract", cfg.lexicon, "lexicon"),
        ("extract", cfg.corpus, "corpus"),
        ("eval", cfg.gold, "gold"),
    ):
        try:
            _need_file(path, what)
        except UsageError as exc:
            raise StageError(stage, exc) from exc
    wd = cfg.workdir
    wd.mkdir(parents=True, exist_ok=True)
    files = {name: wd / f"{name}.tsv" for name in ("train", "test", "model", "decisions")}
    base = dict(lexicon=cfg.lexicon, unknown=cfg.unknown)
    _stage("extract", cmd_extract, PipelineConfig(**base, corpus=cfg.corpus, out=wd), out)
    _stage("train", cmd_train, PipelineConfig(**base, train=files["train"], out=files["model"]), out)
    _stage(
        "decide",
        cmd_decide,
        PipelineConfig(**base, model=files["model"], test=files["test"], out=files["decisions"]),
        out,
    )
    return _stage(
        "eval",
        cmd_eval,
        PipelineConfig(**base, decisions=files["decisions"], gold=cfg.gold, out=wd / "report.txt"),
        out,
    )


def cmd_parse(cfg: PipelineConfig, out=sys.stdout, sentences=None):
    """Print the clause structures of each sentence (debugging aid)."""
    _need_file(cfg.lexicon, "lexicon")
    if sentences is None:
        _need_file(cfg.corpus, "corpus")
        sentences = _read_corpus(cfg.corpus)
    lexicon = load_lexicon(cfg.lexicon)
    for text in sentences:
        if not text.strip():
            continue
        print(f"# {text}", file=out)
        for s in extraction.parse_sentence(lexicon, text, cfg.unknown):
            print(f"## {s.clause_type.value} {s.introducer.value}", file=out)
            print(dump_structure(s), file=out)
            triple = extraction.eligible(s)
            if triple is not None:
                print(f"=> {extraction.apply_rules(s, *triple)}", file=out)
    return None


def cmd_synth(args, out=sys.stdout):
    from .synthetic import SyntheticConfig, generate, write_corpus

    if args.out is None:
        raise UsageError("--out is required")
    corpus = generate(SyntheticConfig(seed=args.seed, n_clauses=args.clauses))
    write_corpus(corpus, args.out)
    print(
        f"clauses={corpus.n_clauses} sentences={len(corpus.sentences)} "
        f"gold={len(corpus.gold)} lemmas={corpus.lemma_count}",
        file=out,
    )
    return corpus


# --- argument parsing -----------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="kasus", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--lexicon", help="lexicon TSV (default: bundled lexicon)")
        sp.add_argument(
            "--unknown",
            choices=[u.value for u in UnknownPolicy],
            default=UnknownPolicy.SKIP_CLAUSE.value,
            help="policy for capitalized words missing from the lexicon",
        )

    sp = sub.add_parser("extract", help="extract training and test tuples from a corpus")
    common(sp)
    sp.add_argument("--corpus", required=True, help="UTF-8 text, one sentence per line")
    sp.add_argument("--out", required=True, help="output directory for train.tsv and test.tsv")

    sp = sub.add_parser("train", help="count training tuples into a model file")
    sp.add_argument("--train", required=True, help="training tuple TSV")
    sp.add_argument("--out", "--model", dest="out", required=True, help="model file to write")

    sp = sub.add_parser("decide", help="decide test tuples with a model")
    sp.add_argument("--model", required=True)
    sp.add_argument("--test", required=True, help="test tuple TSV")
    sp.add_argument("--out", required=True, help="decision TSV to write")

    sp = sub.add_parser("eval", help="score decisions against gold labels")
    sp.add_argument("--decisions", required=True)
    sp.add_argument("--gold", required=True)
    sp.add_argument("--out", help="also write the report here")

    sp = sub.add_parser("run", help="extract, train, decide and eval in one go")
    common(sp)
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--gold", required=True)
    sp.add_argument("--workdir", required=True, help="directory for intermediate files")

    sp = sub.add_parser("parse", help="print clause structures for debugging")
    common(sp)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus")
    src.add_argument("--sentence")

    sp = sub.add_parser("synth", help="write a seeded synthetic corpus with gold labels")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--clauses", type=int, default=2400)
    sp.add_argument("--out", required=True, help="output directory")
    return p


_COMMANDS = {
    "extract": cmd_extract,
    "train": cmd_train,
    "decide": cmd_decide,
    "eval": cmd_eval,
    "run": cmd_run,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "synth":
            cmd_synth(args, out)
        elif args.command == "parse":
            cfg = PipelineConfig.from_args(args)
            cmd_parse(cfg, out, None if args.sentence is None else [args.sentence])
        else:
            _COMMANDS[args.command](PipelineConfig.from_args(args), out)
    except StageError as exc:
        print(f"kasus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc.cause, UsageError) else EXIT_DATA
    except UsageError as exc:
        print(f"kasus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KasusError, OSError) as exc:
        print(f"kasus: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
