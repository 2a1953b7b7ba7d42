"""Command-line entry point: ``python -m serbest.main <command> ...``"""

import argparse
import logging
import sys
import unicodedata
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence, Tuple

from . import corpus
from .config import settings
from .errors import (
    FeatureStructureError,
    GrammarError,
    LexiconError,
    MorphologyError,
    PlanError,
    SchemaError,
    SerbestError,
)
from .featstruct import FeatureStructure, parse_fs, parse_fs_many
from .generator import get_generator
from .models import Case, ComplexType

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REALIZATION = 2

_INPUT_ERRORS = (FeatureStructureError, SchemaError, PlanError, LexiconError)


def root_cause(error: SerbestError) -> SerbestError:
    """The error a chain of builtin failures started from."""
    while (isinstance(error, GrammarError) and error.code == "builtin-failure"
           and isinstance(error.__cause__, SerbestError)):
        error = error.__cause__
    return error


def exit_code(error: SerbestError) -> int:
    if isinstance(root_cause(error), _INPUT_ERRORS):
        return EXIT_INPUT
    return EXIT_REALIZATION


def _out(text: str) -> None:
    print(unicodedata.normalize("NFC", text))


def _err(text: str) -> None:
    print(unicodedata.normalize("NFC", text), file=sys.stderr)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


# ── commands ───────────────────────────────────────────────────────────────

def cmd_realize(args) -> int:
    generator = get_generator(args.grammar, args.lexicon)
    structures = parse_fs_many(_read(args.input))

    def one(fs: FeatureStructure) -> Tuple[Optional[str], Optional[str], Optional[SerbestError]]:
        try:
            sentence = generator.realize(fs)
            trace = None
            if args.trace and generator.validate(fs).type == ComplexType.SIMPLE:
                trace = generator.trace(fs)
            return sentence, trace, None
        except SerbestError as e:
            return None, None, e

    code = EXIT_OK
    workers = args.workers or settings.SERBEST_WORKERS
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for sentence, trace, error in pool.map(one, structures):
            if error is not None:
                _err(error.diagnostic())
                code = max(code, exit_code(error))
                continue
            if trace is not None:
                _err(trace)
            _out(sentence)
    return code


def cmd_morph(args) -> int:
    generator = get_generator(args.grammar, args.lexicon)
    try:
        _out(generator.morph(args.tags))
    except MorphologyError as e:
        # a malformed tag string is bad input, not a generation failure
        _err(e.diagnostic())
        return EXIT_INPUT
    return EXIT_OK


def cmd_np(args) -> int:
    generator = get_generator(args.grammar, args.lexicon)
    for fs in parse_fs_many(_read(args.input)):
        _out(generator.realize_np(fs, Case(args.case), args.role))
    return EXIT_OK


def cmd_variants(args) -> int:
    generator = get_generator(args.grammar, args.lexicon)
    for spec, sentence in generator.variants(parse_fs(_read(args.input))):
        _out(f"{spec}\t{sentence}")
    return EXIT_OK


def cmd_trace(args) -> int:
    generator = get_generator(args.grammar, args.lexicon)
    _out(generator.trace(parse_fs(_read(args.input))))
    return EXIT_OK


def cmd_corpus(args) -> int:
    generator = get_generator(args.grammar, args.lexicon)
    directory = settings.corpus_dir(args.directory)
    report = corpus.run_corpus(generator, directory, args.workers or settings.SERBEST_WORKERS, args.grammar)
    for result in report.results:
        _out(f"{'PASS' if result.passed else 'FAIL'}\t{result.case.id}")
        if not result.passed:
            _out(result.diff())
    _out(report.summary())
    return EXIT_OK if report.ok else EXIT_INPUT


# ── argument parsing ───────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="serbest", description="Turkish sentence generation from case frames")
    parser.add_argument("--grammar", help="directory holding sentence.rules, np.rules and lexicon.tlx")
    parser.add_argument("--lexicon", help="lexicon file (default: <grammar>/lexicon.tlx)")
    parser.add_argument("--workers", type=int, help=f"threads for batch work (default {settings.SERBEST_WORKERS})")
    commands = parser.add_subparsers(dest="command", required=True)

    realize = commands.add_parser("realize", help="realize every structure in a file")
    realize.add_argument("input", help="feature-structure file, - for stdin")
    realize.add_argument("--trace", action="store_true", help="print the derivation trace to stderr")
    realize.set_defaults(func=cmd_realize)

    morph = commands.add_parser("morph", help="generate one word from root+TAG+TAG")
    morph.add_argument("tags")
    morph.set_defaults(func=cmd_morph)

    np = commands.add_parser("np", help="realize noun-phrase structures")
    np.add_argument("input")
    np.add_argument("--case", default="nom", choices=[c.value for c in Case])
    np.add_argument("--role", help="grammatical role, e.g. dir-obj")
    np.set_defaults(func=cmd_np)

    variants = commands.add_parser("variants", help="every information-structure variant of a frame")
    variants.add_argument("input")
    variants.set_defaults(func=cmd_variants)

    trace = commands.add_parser("trace", help="print the sentence derivation trace")
    trace.add_argument("input")
    trace.set_defaults(func=cmd_trace)

    corpus_cmd = commands.add_parser("corpus", help="run the golden corpus")
    corpus_cmd.add_argument("directory", nargs="?", help="corpus directory (default: SERBEST_CORPUS_DIR or corpus/)")
    corpus_cmd.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL)
    reconfigure: Optional[Callable] = getattr(sys.stdout, "reconfigure", None)
    if reconfigure is not None:
        reconfigure(encoding="utf-8")

    args = build_parser().parse_args(argv)
    if args.workers is not None and args.workers < 1:
        _err("error[bad-argument] --workers: must be at least 1")
        return EXIT_INPUT
    try:
        return args.func(args)
    except OSError as e:
        _err(f"error[missing-input]: {e}")
        return EXIT_INPUT
    except SerbestError as e:
        _err(e.diagnostic())
        return exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
