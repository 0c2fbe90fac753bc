"""Command-line front end: pmi, align, and report subcommands.

All outputs are plain CSV/TSV written in a fixed order, plus a run
manifest recording the configuration and input digests, so identical
configurations produce byte-identical results.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import analysis, pmi as pmi_mod
from .corpus import GroupMap, ingest, pair, retention_report
from .costs import binary_cost_model
from .errors import DialignError, EmptyCorpus, ParseError
from .pmi import AlignmentCorpus, InductionOptions, PmiTable, to_cost_model
from .phonetics import SegmentTable
from .triple import ChangeRecord, align_triple, column_direction, decompose

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_CONFIG_ERROR = 2


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_segment_table(path) -> SegmentTable:
    return SegmentTable.from_file(path) if path else SegmentTable.default()


def _write_manifest(outdir: Path, args, inputs: list[str]) -> None:
    config = {
        k: str(v) if isinstance(v, Path) else v
        for k, v in sorted(vars(args).items())
        if k != "func"
    }
    manifest = {
        "config": config,
        "inputs": {p: _sha256(p) for p in sorted({p for p in inputs if p})},
    }
    (outdir / "run_manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _induction_pairs(triples) -> AlignmentCorpus:
    # Pool (older, standard) and (newer, standard) pairs for induction.
    pairs = []
    for t in triples:
        pairs.append((t.older, t.standard))
        pairs.append((t.newer, t.standard))
    return AlignmentCorpus(pairs)


def _resolve_cost_model(args, triples, outdir: Path):
    """Returns (cost model, distance table for direction scoring)."""
    if args.mode == "binary":
        cm = binary_cost_model(constrained=not args.unconstrained)
        return cm, cm.distances
    if args.mode == "load":
        table = PmiTable.read(args.pmi_table)
    else:
        opts = InductionOptions(
            max_iter=args.max_iter, tol=args.tol, smoothing=args.smoothing
        )
        init = binary_cost_model(constrained=not args.unconstrained)
        table = pmi_mod.induce_distances(_induction_pairs(triples), init, opts)
        table.write(outdir / "pmi_table.tsv")
        (outdir / "pmi_log.txt").write_text(
            f"iterations_run\t{table.iterations_run}\n"
            f"converged\t{str(table.converged).lower()}\n",
            encoding="utf-8",
        )
    return to_cost_model(table, constrained=not args.unconstrained), table


def _dump_alignment(t, al, dist_table) -> str:
    def row(label, cells):
        return label + "\t" + "\t".join(cells)

    tags = []
    for col in al.columns:
        d = column_direction(col, dist_table)
        if col.stable:
            tags.append("stable")
        elif d < 0:
            tags.append("conv.")
        elif d > 0:
            tags.append("div.")
        else:
            tags.append("neutr.")
    lines = [
        f"# {t.location} / {t.word} (cost {al.total_cost:.6f}, length {al.length})",
        row("older", [str(c.x) if c.x else "-" for c in al.columns]),
        row("newer", [str(c.y) if c.y else "-" for c in al.columns]),
        row("standard", [str(c.z) if c.z else "-" for c in al.columns]),
        row("cost", [f"{c.cost:.4g}" for c in al.columns]),
        row("direction", tags),
    ]
    return "\n".join(lines) + "\n"


def cmd_align(args) -> int:
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    table = _load_segment_table(args.segments)
    records = ingest(args.corpus)
    triples, excluded = pair(records, table)
    if not triples:
        raise EmptyCorpus("no comparison triples after pairing and exclusions")
    cm, dist_table = _resolve_cost_model(args, triples, outdir)

    change_records = []
    dumps = []
    for t in triples:  # already sorted by (location, word)
        al = align_triple(t.older, t.newer, t.standard, cm)
        conv, div = decompose(al, dist_table)
        change_records.append(
            ChangeRecord(t.location, t.word, conv, div, al.length)
        )
        dumps.append(_dump_alignment(t, al, dist_table))

    lines = ["location,word,conv,div,alignment_length"]
    for r in change_records:
        lines.append(
            f"{r.location},{r.word},{r.conv:.6f},{r.div:.6f},{r.alignment_length}"
        )
    (outdir / "change_records.csv").write_text(
        "\n".join(lines) + "\n", encoding="utf-8"
    )
    (outdir / "alignments.txt").write_text("\n".join(dumps), encoding="utf-8")
    (outdir / "retention.txt").write_text(
        retention_report(triples, excluded).format(), encoding="utf-8"
    )
    _write_manifest(outdir, args, [args.corpus, args.segments, args.pmi_table])
    return EXIT_OK


def cmd_pmi(args) -> int:
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    table = _load_segment_table(args.segments)
    records = ingest(args.corpus)
    triples, _ = pair(records, table)
    if not triples:
        raise EmptyCorpus("no comparison triples after pairing and exclusions")
    opts = InductionOptions(
        max_iter=args.max_iter, tol=args.tol, smoothing=args.smoothing
    )
    init = binary_cost_model(constrained=not args.unconstrained)
    result = pmi_mod.induce_distances(_induction_pairs(triples), init, opts)
    result.write(outdir / "pmi_table.tsv")
    (outdir / "pmi_log.txt").write_text(
        f"iterations_run\t{result.iterations_run}\n"
        f"converged\t{str(result.converged).lower()}\n",
        encoding="utf-8",
    )
    _write_manifest(outdir, args, [args.corpus, args.segments])
    return EXIT_OK


def _read_change_records(path) -> list[ChangeRecord]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "location,word,conv,div,alignment_length":
        raise ParseError(1, "not a change-record CSV")
    records = []
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != 5:
            raise ParseError(lineno, f"expected 5 fields, got {len(fields)}")
        records.append(
            ChangeRecord(
                fields[0], fields[1], float(fields[2]), float(fields[3]), int(fields[4])
            )
        )
    return records


def cmd_report(args) -> int:
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    records = _read_change_records(args.records)
    groups = GroupMap.from_file(args.groups)

    summaries = analysis.summarize(records, groups)
    lines = ["group\tn_records\tmean_conv\tmean_div\tmean_change"]
    for s in summaries:
        if s.n_records == 0:
            lines.append(f"{s.group}\t0\t-\t-\t-")
        else:
            lines.append(
                f"{s.group}\t{s.n_records}\t{s.mean_conv:.6f}\t{s.mean_div:.6f}"
                f"\t{s.mean_conv + s.mean_div:.6f}"
            )
    (outdir / "summary.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    contrast_lines = ["measure,statistic,p_value,n_permutations,direction"]
    for measure in ("conv", "div"):
        result = analysis.permutation_contrast(
            records, groups, measure, n_perm=args.n_perm, seed=args.seed
        )
        contrast_lines.append(
            f"{result.measure},{result.statistic:.6f},{result.p_value:.6f},"
            f"{result.n_permutations},{result.direction}"
        )
    (outdir / "contrasts.csv").write_text(
        "\n".join(contrast_lines) + "\n", encoding="utf-8"
    )

    inputs = [args.records, args.groups]
    if args.coords:
        coords = {}
        for lineno, line in enumerate(
            Path(args.coords).read_text(encoding="utf-8").splitlines(), 1
        ):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(lineno, "expected location<TAB>lon<TAB>lat")
            coords[fields[0]] = (float(fields[1]), float(fields[2]))
        (outdir / "geo.csv").write_text(
            analysis.export_geo(records, coords), encoding="utf-8"
        )
        inputs.append(args.coords)
    _write_manifest(outdir, args, inputs)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dialign",
        description=(
            "Quantify phonetic convergence/divergence between two "
            "time-separated dialect corpora relative to a standard variety. "
            "Corpus TSV columns: location, word, source{older|newer|standard}, "
            "transcription, cognate_id, exclusion{-|lex|morph|reduction|missing}."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--corpus", required=True, help="corpus TSV path")
        p.add_argument(
            "--segments",
            default=None,
            help="segment table (symbol<TAB>V|C<TAB>flags); default: built-in IPA table",
        )
        p.add_argument("--out-dir", required=True, help="output directory")
        p.add_argument(
            "--unconstrained",
            action="store_true",
            help="drop the vowel-consonant alignment constraint",
        )

    def add_pmi_opts(p):
        p.add_argument("--max-iter", type=int, default=50)
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--smoothing", type=float, default=0.5)

    p_pmi = sub.add_parser("pmi", help="induce a PMI distance table from a corpus")
    add_common(p_pmi)
    add_pmi_opts(p_pmi)
    p_pmi.set_defaults(func=cmd_pmi)

    p_align = sub.add_parser(
        "align", help="align triples and write per-word change records"
    )
    add_common(p_align)
    add_pmi_opts(p_align)
    p_align.add_argument(
        "--mode",
        choices=("binary", "pmi", "load"),
        default="pmi",
        help="cost model: unit costs, corpus-induced PMI costs, or a saved table",
    )
    p_align.add_argument("--pmi-table", default=None, help="table for --mode load")
    p_align.add_argument("--seed", type=int, default=0)
    p_align.set_defaults(func=cmd_align)

    p_report = sub.add_parser(
        "report", help="group summaries, LS contrast, and geo export"
    )
    p_report.add_argument("--records", required=True, help="change_records.csv path")
    p_report.add_argument("--groups", required=True, help="location<TAB>group map")
    p_report.add_argument("--coords", default=None, help="location<TAB>lon<TAB>lat")
    p_report.add_argument("--n-perm", type=int, default=9999)
    p_report.add_argument("--seed", type=int, default=0)
    p_report.add_argument("--out-dir", required=True)
    p_report.set_defaults(func=cmd_report)
    return parser


def _validate(args) -> None:
    if getattr(args, "command", None) == "align":
        if args.mode == "load" and not args.pmi_table:
            raise ValueError("--mode load requires --pmi-table")
        if args.mode == "binary" and args.pmi_table:
            raise ValueError("--pmi-table is only valid with --mode load")


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except DialignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
