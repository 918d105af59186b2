"""Command-line interface.

Subcommands: ``extract``, ``featurize``, ``stats``, ``train``,
``evaluate``.  Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import classifiers, model_io
from .classifiers import Hyperparameters, TrainingSet
from .corpus import corpus_stats, load_corpus
from .errors import NswcatError
from .features import REPRESENTATIONS, build_matrix, load_matrix
from .harness import ExperimentConfig, run_experiment
from .lexer import extract_nsws, load_lexicon, load_rules, occurrences_tsv
from .taxonomy import load_taxonomy


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--taxonomy", metavar="F", help="taxonomy manifest (default: packaged)")
    parser.add_argument("--lexicon", metavar="F", help="lexicon file (default: packaged)")
    parser.add_argument("--rules", metavar="F", help="rule file (default: packaged)")


def _load_engine(args):
    taxonomy = load_taxonomy(args.taxonomy)
    lexicon = load_lexicon(args.lexicon, taxonomy)
    rules = load_rules(args.rules, taxonomy)
    return taxonomy, lexicon, rules


def _cmd_extract(args) -> int:
    _, lexicon, rules = _load_engine(args)
    corpus = load_corpus(args.corpus, lexicon.abbreviation_forms())
    occurrences = []
    for doc in corpus:
        occurrences.extend(extract_nsws(doc, lexicon, rules))
    text = occurrences_tsv(occurrences)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_featurize(args) -> int:
    taxonomy, lexicon, rules = _load_engine(args)
    corpus = load_corpus(args.corpus, lexicon.abbreviation_forms())
    occurrences = {doc.id: extract_nsws(doc, lexicon, rules) for doc in corpus}
    matrix = build_matrix(corpus.documents, occurrences, args.rep, taxonomy)
    matrix.save(args.out)
    return 0


def _cmd_stats(args) -> int:
    _, lexicon, rules = _load_engine(args)
    corpus = load_corpus(args.corpus, lexicon.abbreviation_forms())
    counts = {doc.id: len(extract_nsws(doc, lexicon, rules)) for doc in corpus}
    sys.stdout.write(corpus_stats(corpus.documents, counts).to_tsv())
    return 0


def _cmd_train(args) -> int:
    matrix = load_matrix(args.matrix)
    hp = Hyperparameters(
        knn_k=args.k,
        knn_scale=args.scale,
        tree_min_leaf=args.min_leaf,
        tree_max_depth=args.max_depth,
        forest_trees=args.trees,
        rng_seed=args.seed,
    )
    model = classifiers.train(args.kind, TrainingSet.from_matrix(matrix), hp)
    model_io.save_model(model, args.out)
    return 0


def _cmd_evaluate(args) -> int:
    from .report import write_reports

    config = ExperimentConfig(
        representations=tuple(args.reps),
        kinds=tuple(args.kinds),
        k=args.k,
        seed=args.seed,
        stratified=not args.no_stratify,
        hyperparameters=Hyperparameters(
            knn_k=args.knn_k,
            knn_scale=args.scale,
            tree_min_leaf=args.min_leaf,
            tree_max_depth=args.max_depth,
            forest_trees=args.trees,
            rng_seed=args.seed,
        ),
        taxonomy_path=args.taxonomy,
        lexicon_path=args.lexicon,
        rules_path=args.rules,
        jobs=args.jobs,
        figures=not args.no_figures,
    )
    result = run_experiment(args.corpus, config)
    written = write_reports(result, args.out_dir, figures=config.figures)
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nswcat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[], help="dump detected NSW occurrences")
    p.add_argument("corpus", help="corpus root directory")
    _add_data_flags(p)
    p.add_argument("--out", metavar="F", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("featurize", help="build one feature matrix")
    p.add_argument("corpus")
    _add_data_flags(p)
    p.add_argument("--rep", required=True, choices=REPRESENTATIONS)
    p.add_argument("--out", metavar="F", required=True)
    p.set_defaults(func=_cmd_featurize)

    p = sub.add_parser("stats", help="corpus token/NSW statistics table")
    p.add_argument("corpus")
    _add_data_flags(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("train", help="train one classifier from a matrix file")
    p.add_argument("--matrix", metavar="F", required=True)
    p.add_argument("--kind", required=True, choices=classifiers.KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=5, help="neighbors for knn")
    p.add_argument("--scale", action="store_true", help="min-max scale knn features")
    p.add_argument("--min-leaf", type=int, default=2)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--trees", type=int, default=100)
    p.add_argument("--out", metavar="F", required=True)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="cross-validate classifiers and write reports")
    p.add_argument("--corpus", metavar="D", required=True)
    _add_data_flags(p)
    p.add_argument("--k", type=int, default=5, help="number of folds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", nargs="+", default=list(REPRESENTATIONS), choices=REPRESENTATIONS)
    p.add_argument("--kinds", nargs="+", default=list(classifiers.KINDS), choices=classifiers.KINDS)
    p.add_argument("--knn-k", type=int, default=5)
    p.add_argument("--scale", action="store_true")
    p.add_argument("--min-leaf", type=int, default=2)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--trees", type=int, default=100)
    p.add_argument("--no-stratify", action="store_true")
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", metavar="D", required=True)
    p.set_defaults(func=_cmd_evaluate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NswcatError as exc:
        print(f"nswcat: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
