"""Command-line interface.

Subcommands: encode, align, circular, project, snr, gain.  Every run that
writes results also writes its resolved configuration as config.json.
Exit codes: 0 success, 1 usage error, 2 input error, 3 no alignment or
no candidates.
"""

import argparse
import sys
from pathlib import Path

from . import figures
from .bars import align_sequences
from .circular import circular_align
from .coding import CodingScheme, processing_gain
from .errors import MoireAlignError, NoAlignment, NoCandidates
from .experiments import DEFAULT_QUERY_BASES, DEFAULT_SHIFTS, run_snr_experiment
from .imaging import FORMATS, write_overlap_image, write_pattern_image, write_gray
from .projection import detect_candidates, dilate_rows, project_rows, restricted_report
from .reports import (
    write_circular_report,
    write_config,
    write_profile_csv,
    write_report,
    write_snr_csv,
)
from .seqio import read_fasta

_EXPECTED_DB = {
    CodingScheme.BASE_PPM: 6.0206,
    CodingScheme.BASE_POLARIZED: 6.0206,
    CodingScheme.PAIR_POLARIZED: 12.0412,
    CodingScheme.PAIR_PPM: 12.0412,
}


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _scheme(value: str) -> CodingScheme:
    return CodingScheme(int(value))


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _first_record(path):
    records = read_fasta(path)
    return records[0]


def _config_from(args, **extra) -> dict:
    config = {
        key: (str(value) if isinstance(value, Path) else value)
        for key, value in vars(args).items()
        if key != "func"
    }
    if "scheme" in config:
        config["scheme"] = int(config["scheme"])
    config.update(extra)
    return config


def cmd_encode(args) -> int:
    out = _out_dir(args)
    write_config(_config_from(args, command="encode"), out / "config.json")
    from .bars import build_query_pattern

    for name, seq in read_fasta(args.fasta):
        pattern = build_query_pattern(seq, args.scheme, rows=1)
        path = out / f"{name}_pattern.{args.format}"
        write_pattern_image(pattern, args.format, path)
        print(f"{name}: {len(seq)} bases -> {path}")
    return 0


def cmd_align(args) -> int:
    out = _out_dir(args)
    write_config(_config_from(args, command="align"), out / "config.json")
    ref_name, reference = _first_record(args.reference)
    query_name, query = _first_record(args.query)
    outcome = align_sequences(reference, query, args.scheme, args.min_run)
    report = outcome.report

    write_pattern_image(outcome.stack, args.format, out / f"stack.{args.format}")
    write_pattern_image(outcome.query_pattern, args.format, out / f"query.{args.format}")
    write_overlap_image(outcome.overlap, args.format, out / f"overlap.{args.format}")
    write_report(report, args.scheme, out / "report.json")
    figures.save_alignment_figure(outcome, out / "figure_alignment.png")

    print(f"aligned {query_name} ({len(query)} bases) against {ref_name} ({len(reference)} bases)")
    if report.exact_match_offsets:
        print(f"exact match at offset(s): {', '.join(map(str, report.exact_match_offsets))}")
    for event in report.events:
        print(f"{event.kind} of {event.length} base(s) at query position {event.query_position}")
    if report.snr_db is not None:
        print(f"snr_db={report.snr_db:.4f} at row {report.snr_row} ({report.snr_row_kind})")
    if report.ambiguous:
        print("warning: alignment is ambiguous (tied chains or slidable junction)")
    if not report.exact_match_offsets and not report.segments:
        print("no alignment found")
        return 3
    return 0


def cmd_circular(args) -> int:
    out = _out_dir(args)
    write_config(_config_from(args, command="circular"), out / "config.json")
    _, reference = _first_record(args.reference)
    _, query = _first_record(args.query)
    outcome = circular_align(
        reference,
        query,
        args.scheme,
        size=args.raster,
        r0=args.r0,
        dr0=args.dr0,
        threshold=args.threshold,
    )
    write_gray(outcome.sector.raster, args.format, out / f"sector.{args.format}")
    write_gray(outcome.curved.raster, args.format, out / f"curved.{args.format}")
    write_gray(outcome.overlap * 255, args.format, out / f"ring_overlap.{args.format}")
    write_circular_report(outcome, args.scheme, args.threshold, out / "circular_report.json")
    figures.save_circular_figure(outcome, out / "figure_circular.png")

    if outcome.matched_rings:
        rings = ", ".join(map(str, outcome.matched_rings))
        offsets = ", ".join(map(str, outcome.exact_match_offsets))
        print(f"bright ring(s) at index {rings} (shift offset {offsets})")
        return 0
    print("no ring reached the detection threshold")
    return 3


def cmd_project(args) -> int:
    out = _out_dir(args)
    write_config(_config_from(args, command="project"), out / "config.json")
    _, reference = _first_record(args.reference)
    _, query = _first_record(args.query)
    outcome = align_sequences(reference, query, args.scheme, args.min_run)
    profile = project_rows(outcome.overlap)
    write_profile_csv(profile, out / "profile.csv")
    candidates = detect_candidates(profile, args.threshold)
    figures.save_profile_figure(profile, args.threshold, candidates, out / "figure_profile.png")
    if not candidates:
        print("no candidate rows above threshold")
        return 3
    report = restricted_report(
        outcome.overlap, profile, args.threshold, args.min_run, args.candidate_gap
    )
    write_report(report, args.scheme, out / "report.json")
    print(f"stage-1 candidates (brightest first): {', '.join(map(str, candidates))}")
    if report.exact_match_offsets:
        print(f"exact match at offset(s): {', '.join(map(str, report.exact_match_offsets))}")
    for event in report.events:
        print(f"{event.kind} of {event.length} base(s) at query position {event.query_position}")
    return 0


def cmd_snr(args) -> int:
    out = _out_dir(args)
    write_config(_config_from(args, command="snr"), out / "config.json")
    summaries = run_snr_experiment(
        args.trials, args.seed, query_bases=args.query_bases, shifts=args.shifts
    )
    rows = [(s.scheme, s.mean_db, s.std_db, s.n_trials) for s in summaries]
    write_snr_csv(rows, out / "snr.csv")
    figures.save_snr_figure(summaries, _EXPECTED_DB, out / "figure_snr.png")
    print("scheme,mean_snr_db,std_db,n_trials")
    for s in summaries:
        print(f"{int(s.scheme)},{s.mean_db:.4f},{s.std_db:.4f},{s.n_trials}")
    return 0


def cmd_gain(args) -> int:
    print("scheme,processing_gain")
    for scheme in CodingScheme:
        print(f"{int(scheme)},{processing_gain(args.pixels, scheme)}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="moirealign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, threshold=None):
        p.add_argument("--scheme", type=_scheme, default=CodingScheme.BASE_PPM,
                       choices=list(CodingScheme), metavar="{1,2,3,4}")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--format", choices=FORMATS, default="pgm")
        p.add_argument("--out", default="out")
        p.add_argument("--min-run", dest="min_run", type=int, default=3)
        if threshold is not None:
            p.add_argument("--threshold", type=float, default=threshold)

    p_encode = sub.add_parser("encode", help="render a FASTA file as slot patterns")
    p_encode.add_argument("fasta")
    common(p_encode)
    p_encode.set_defaults(func=cmd_encode)

    p_align = sub.add_parser("align", help="bar-pattern alignment of query against reference")
    p_align.add_argument("reference")
    p_align.add_argument("query")
    common(p_align)
    p_align.set_defaults(func=cmd_align)

    p_circ = sub.add_parser("circular", help="circular-pattern alignment")
    p_circ.add_argument("reference")
    p_circ.add_argument("query")
    common(p_circ, threshold=0.9)
    p_circ.add_argument("--raster", type=int, default=1024)
    p_circ.add_argument("--r0", type=float, default=None)
    p_circ.add_argument("--dr0", type=float, default=None)
    p_circ.set_defaults(func=cmd_circular)

    p_proj = sub.add_parser("project", help="1D projection profile plus two-stage report")
    p_proj.add_argument("reference")
    p_proj.add_argument("query")
    common(p_proj, threshold=0.25)
    p_proj.add_argument("--candidate-gap", dest="candidate_gap", type=int, default=4)
    p_proj.set_defaults(func=cmd_project)

    p_snr = sub.add_parser("snr", help="seeded SNR experiment over random sequences")
    common(p_snr)
    p_snr.add_argument("--trials", type=int, default=1000)
    p_snr.add_argument("--query-bases", dest="query_bases", type=int,
                       default=DEFAULT_QUERY_BASES)
    p_snr.add_argument("--shifts", type=int, default=DEFAULT_SHIFTS)
    p_snr.set_defaults(func=cmd_snr)

    p_gain = sub.add_parser("gain", help="bases comparable per row for a pixel budget")
    p_gain.add_argument("--pixels", type=int, required=True)
    p_gain.set_defaults(func=cmd_gain)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (NoAlignment, NoCandidates) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (MoireAlignError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
