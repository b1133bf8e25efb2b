"""Serialization of alignment reports, profiles, and experiment tables.

All positions in serialized output are 1-based and say so via the
``index_base`` key.  Key order is fixed, floats are rounded to four
decimals, and an infinite SNR is written as the string "+inf", so equal
runs produce byte-identical files.
"""

import json
import math

from .bars import AlignmentReport
from .circular import CircularOutcome
from .coding import CodingScheme
from .projection import ProjectionProfile


def _snr_value(snr: float):
    if math.isinf(snr):
        return "+inf" if snr > 0 else "-inf"
    return round(snr, 4)


def report_to_dict(report: AlignmentReport, scheme: CodingScheme) -> dict:
    out = {
        "index_base": 1,
        "scheme": int(scheme),
        "exact_match_offsets": list(report.exact_match_offsets),
        "segments": [
            {"row": s.row, "word_start": s.word_start, "word_end": s.word_end}
            for s in report.segments
        ],
        "events": [
            {"query_position": e.query_position, "kind": e.kind, "length": e.length}
            for e in report.events
        ],
    }
    if report.snr_db is not None:
        out["snr_db"] = _snr_value(report.snr_db)
    out["ambiguous"] = report.ambiguous
    return out


def report_to_json(report: AlignmentReport, scheme: CodingScheme) -> str:
    return json.dumps(report_to_dict(report, scheme), indent=2) + "\n"


def write_report(report: AlignmentReport, scheme: CodingScheme, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(report_to_json(report, scheme))


def circular_to_json(outcome: CircularOutcome, scheme: CodingScheme, threshold: float) -> str:
    obj = {
        "index_base": 1,
        "scheme": int(scheme),
        "ring_count": outcome.geometry.ring_count,
        "threshold": round(threshold, 4),
        "matched_rings": list(outcome.matched_rings),
        "exact_match_offsets": list(outcome.exact_match_offsets),
        "ring_energy": [round(float(e), 4) for e in outcome.ring_energy],
    }
    return json.dumps(obj, indent=2) + "\n"


def write_circular_report(outcome: CircularOutcome, scheme: CodingScheme, threshold: float, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(circular_to_json(outcome, scheme, threshold))


def profile_to_csv(profile: ProjectionProfile) -> str:
    lines = ["row,intensity"]
    lines += [f"{r + 1},{int(v)}" for r, v in enumerate(profile.values)]
    return "\n".join(lines) + "\n"


def write_profile_csv(profile: ProjectionProfile, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(profile_to_csv(profile))


def snr_table_to_csv(rows) -> str:
    lines = ["scheme,mean_snr_db,std_db,n_trials"]
    lines += [
        f"{int(scheme)},{mean:.4f},{std:.4f},{n}" for scheme, mean, std, n in rows
    ]
    return "\n".join(lines) + "\n"


def write_snr_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(snr_table_to_csv(rows))


def write_config(config: dict, path) -> None:
    """Echo the resolved run configuration next to its results."""
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(config, handle, indent=2, sort_keys=True)
        handle.write("\n")
