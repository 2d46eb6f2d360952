"""Command line entry point (``airport-absa``).

    airport-absa analyze  --input F [--format csv|jsonl] [--lexicon builtin|PATH]
                          [--scorer oracle|adapter:SPEC] --out DIR [--airports DXB,DOH]
    airport-absa evaluate ...same options...        (also writes the accuracy report)
    airport-absa summarize --matrix F [--out DIR] [--sort aspect|count] [--chart]
    airport-absa lexicon dump [--lexicon PATH]

Errors go to stderr as ``{"errors": [...]}`` with a nonzero exit code.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .aggregate import read_matrix_csv, summaries_to_csv, summaries_to_json, summarize_by_airport
from .errors import AbsaError
from .lexicon import load_lexicon
from .pipeline import PipelineConfig, run
from .report import RenderSpec, render

EXIT_OK = 0
EXIT_ERROR = 1


def _run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="review file (CSV or JSONL)")
    p.add_argument("--format", choices=("csv", "jsonl"), help="input format (default: from extension)")
    p.add_argument("--lexicon", default="builtin", help="'builtin' or path to a lexicon JSON")
    p.add_argument("--dictionary", help="spell dictionary, token<TAB>frequency per line")
    p.add_argument("--scorer", default="oracle", help="'oracle', 'adapter:http://...' or 'adapter:stdio:CMD'")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--airports", help="comma-separated airport codes to keep")
    p.add_argument("--workers", type=int, default=1, help="threads (used only with reentrant scorers)")
    p.add_argument("--timeout", type=float, default=30.0, help="external scorer timeout in seconds")
    p.add_argument("--positive-threshold", type=int, default=3, help="lowest star rating counted as positive")
    p.add_argument("--seed", type=int, help="reserved; the pipeline is deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="airport-absa", description="Aspect-based sentiment for airport reviews")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    _run_args(sub.add_parser("analyze", help="build the aspect matrix and summaries"))
    _run_args(sub.add_parser("evaluate", help="analyze and add the rating-derived accuracy report"))

    s = sub.add_parser("summarize", help="per-airport summaries from an existing matrix CSV")
    s.add_argument("--matrix", required=True)
    s.add_argument("--out", help="directory for summary.csv / summary.json (and chart)")
    s.add_argument("--sort", choices=("aspect", "count"), default="aspect")
    s.add_argument("--chart", action="store_true", help="also write summary.png (needs --out)")

    lx = sub.add_parser("lexicon", help="lexicon utilities")
    lx_sub = lx.add_subparsers(dest="lexicon_command", required=True)
    dump = lx_sub.add_parser("dump", help="print the lexicon as JSON")
    dump.add_argument("--lexicon", default="builtin")
    return parser


def _config_from(args: argparse.Namespace, evaluate: bool) -> PipelineConfig:
    airports = None
    if args.airports:
        airports = tuple(a.strip() for a in args.airports.split(",") if a.strip())
    return PipelineConfig(
        input_path=args.input,
        output_dir=args.out,
        input_format=args.format,
        lexicon_source=args.lexicon,
        dictionary_path=args.dictionary,
        scorer_name=args.scorer,
        airport_filter=airports,
        evaluation_enabled=evaluate,
        positive_threshold=args.positive_threshold,
        workers=args.workers,
        scorer_timeout=args.timeout,
        seed=args.seed,
    )


def _cmd_run(args: argparse.Namespace, evaluate: bool) -> int:
    manifest = run(_config_from(args, evaluate))
    out = {
        "output_dir": args.out,
        "artifacts": [a["path"] for a in manifest.artifacts],
        "analyzed_counts": manifest.analyzed_counts,
        "n_failed_reviews": len(manifest.failures),
    }
    if evaluate:
        out["evaluation"] = json.loads((Path(args.out) / "evaluation.json").read_text(encoding="utf-8"))
    print(json.dumps(out, indent=2))
    if manifest.failures:
        print(json.dumps({"warnings": manifest.failures}, indent=2), file=sys.stderr)
    return EXIT_OK


def _cmd_summarize(args: argparse.Namespace) -> int:
    rows = read_matrix_csv(args.matrix)
    summaries = summarize_by_airport(rows)
    sys.stdout.write(render(summaries, RenderSpec("summary", "plain-table", args.sort))[0].decode("utf-8"))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.csv").write_text(summaries_to_csv(summaries), encoding="utf-8", newline="")
        (out / "summary.json").write_text(summaries_to_json(summaries), encoding="utf-8")
        if args.chart:
            data, name = render(summaries, RenderSpec("summary", "bar-chart-image"))
            (out / name).write_bytes(data)
    elif args.chart:
        raise ValueError("--chart requires --out")
    return EXIT_OK


def _cmd_lexicon(args: argparse.Namespace) -> int:
    print(json.dumps(load_lexicon(args.lexicon).to_dict(), indent=2))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command in ("analyze", "evaluate"):
            return _cmd_run(args, args.command == "evaluate")
        if args.command == "summarize":
            return _cmd_summarize(args)
        return _cmd_lexicon(args)
    except AbsaError as exc:
        err = exc.to_dict()
    except (OSError, ValueError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps({"errors": [err]}, indent=2, default=str), file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
