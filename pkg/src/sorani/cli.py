"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterable, Optional, TextIO

from .analyzer import Analyzer
from .core import FeatureError, nfc, parse_features
from .lexicon import Lexicon, LexiconError, load_lexicon_file, seed_lexicon
from .nominal import NominalFeatures, inflect_noun
from .phonology import realize
from .script import arabic_to_latin, latin_to_arabic
from .verbs import GenerationOptions, generate_verb, paradigm

ENV_LEXICON = "SORANI_LEXICON"
EXIT_USAGE = 1
EXIT_LEXICON = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _lexicon(path: Optional[str]) -> Lexicon:
    path = path or os.environ.get(ENV_LEXICON)
    return load_lexicon_file(path) if path else seed_lexicon()


def _lines(path: Optional[str]) -> Iterable[str]:
    if path in (None, "-"):
        for line in sys.stdin:
            yield nfc(line.rstrip("\n"))
    else:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                yield nfc(line.rstrip("\n"))


def _options(args) -> GenerationOptions:
    return GenerationOptions(
        progressive=args.progressive,
        subjunctive_bi=not args.no_bi,
        long_markers=args.long_markers,
        conditional=args.conditional,
    )


def cmd_analyze(args, out: TextIO) -> int:
    an = Analyzer(_lexicon(args.lexicon), guess=args.guess, northern=args.northern)
    for line in _lines(args.input):
        for token in line.split():
            readings = arabic_to_latin(token) if args.script == "arabic" else [token]
            analyses = [a for r in readings for a in an.analyze(r)]
            if args.format == "jsonl":
                rec = {"surface": token, "analyses": [dict(a.to_dict(), reading=a.surface) for a in analyses]}
                out.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
                continue
            if not analyses:
                out.write(f"{token}\t?\n")
            for a in analyses:
                d = a.to_dict()
                out.write("\t".join((token, d["lemma"], d["features"], d["segmentation"], d["gloss"], d["word_gloss"])) + "\n")
    return 0


def _generate_one(lexicon: Lexicon, words: list[str], options: GenerationOptions, northern: bool) -> tuple[str, str]:
    if len(words) < 2:
        raise UsageError("generate needs a lemma and a construction (or a nominal part of speech)")
    lemma, what, pairs = words[0], words[1], words[2:]
    try:
        lex = lexicon.get(lemma)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if what in ("noun", "adjective", "adverb"):
        kw = {}
        for tok in pairs:
            if "=" not in tok:
                raise UsageError(f"expected key=value, got {tok!r}")
            k, v = tok.split("=", 1)
            k = k.replace("-", "_")
            if k not in NominalFeatures.__dataclass_fields__:
                raise UsageError(f"unknown feature {k!r}")
            kw[k] = v.lower() in ("yes", "true", "1") if k == "emphasis" else v
        try:
            seq = inflect_noun(lex.lemma, NominalFeatures(**kw), what, northern)
        except (FeatureError, ValueError) as exc:
            raise UsageError(str(exc)) from None
    else:
        try:
            seq = generate_verb(lex, parse_features(what, pairs), options)
        except (FeatureError, ValueError) as exc:
            raise UsageError(str(exc)) from None
    return seq.underlying(), realize(seq).surface


def cmd_generate(args, out: TextIO) -> int:
    lexicon = _lexicon(args.lexicon)
    options = _options(args)
    jobs = [args.words] if args.words else [line.split() for line in _lines(args.input) if line.strip()]
    for words in jobs:
        underlying, surface = _generate_one(lexicon, words, options, args.northern)
        out.write(f"{underlying}\t{surface}\n" if args.underlying else surface + "\n")
    return 0


def cmd_paradigm(args, out: TextIO) -> int:
    lexicon = _lexicon(args.lexicon)
    try:
        lex = lexicon.get(args.lemma)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if not lex.is_verb:
        raise UsageError(f"{lex.lemma} is not a verb")
    for row in paradigm(lex, args.construction or None, _options(args)):
        out.write(row.tsv() + "\n")
    return 0


def cmd_translit(args, out: TextIO) -> int:
    for line in _lines(args.input):
        try:
            if args.to == "arabic":
                out.write(latin_to_arabic(line) + "\n")
            else:
                words = []
                for tok in line.split():
                    cands = arabic_to_latin(tok, bound=args.bound)
                    words.append("|".join(cands) + ("|…" if cands.overflow else ""))
                out.write(" ".join(words) + "\n")
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return 0


def cmd_lexicon_check(args, out: TextIO) -> int:
    path = args.path or args.lexicon or os.environ.get(ENV_LEXICON)
    lexicon = load_lexicon_file(path) if path else seed_lexicon()
    out.write(f"ok\t{len(lexicon)} entries\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sorani", description="Sorani Kurdish morphological generator and analyzer")
    p.add_argument("--lexicon", help=f"lexicon TSV (default: ${ENV_LEXICON} or the bundled seed lexicon)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def dialect(sp):
        sp.add_argument("--progressive", choices=("de", "e"), default="de")
        sp.add_argument("--no-bi", action="store_true", help="leave the subjunctive prefix empty")
        sp.add_argument("--long-markers", action="store_true", help="use ît/êt instead of î/ê")
        sp.add_argument("--conditional", choices=("ba", "aye"), default="ba")
        sp.add_argument("--northern", action="store_true", help="enable nominal case suffixes")

    a = sub.add_parser("analyze", help="analyze whitespace-separated word-forms")
    a.add_argument("input", nargs="?", help="input file (default: stdin)")
    a.add_argument("--script", choices=("latin", "arabic"), default="latin")
    a.add_argument("--format", choices=("text", "jsonl"), default="text")
    a.add_argument("--guess", action="store_true", help="hypothesize stems missing from the lexicon")
    a.add_argument("--northern", action="store_true", help="enable nominal case suffixes")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="generate a surface form from a lemma and features")
    g.add_argument("words", nargs="*", help="LEMMA CONSTRUCTION [key=value ...]; read from stdin when empty")
    g.add_argument("--input", help="file of 'lemma construction key=value...' lines")
    g.add_argument("--underlying", action="store_true", help="print the underlying sequence too")
    dialect(g)
    g.set_defaults(func=cmd_generate)

    pd = sub.add_parser("paradigm", help="print the paradigm of a verb as TSV")
    pd.add_argument("lemma")
    pd.add_argument("--construction", action="append", help="restrict to a construction (repeatable)")
    dialect(pd)
    pd.set_defaults(func=cmd_paradigm)

    t = sub.add_parser("translit", help="convert between Latin and Arabic script, line by line")
    t.add_argument("input", nargs="?")
    t.add_argument("--to", choices=("arabic", "latin"), required=True)
    t.add_argument("--bound", type=int, default=64, help="candidate cap per word")
    t.set_defaults(func=cmd_translit)

    lc = sub.add_parser("lexicon-check", help="validate a lexicon file")
    lc.add_argument("path", nargs="?")
    lc.set_defaults(func=cmd_lexicon_check)
    return p


def main(argv: Optional[list[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    if hasattr(sys.stdin, "reconfigure"):
        sys.stdin.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"sorani: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LexiconError as exc:
        print(f"sorani: lexicon error: {exc}", file=sys.stderr)
        return EXIT_LEXICON
    except OSError as exc:
        print(f"sorani: {exc}", file=sys.stderr)
        return EXIT_LEXICON if args.command == "lexicon-check" or args.lexicon else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
