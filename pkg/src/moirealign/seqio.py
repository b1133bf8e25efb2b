"""FASTA ingestion."""

from .coding import DnaSequence, parse_sequence
from .errors import InvalidBase, MalformedFasta, TooShort


def read_fasta(path) -> list[tuple[str, DnaSequence]]:
    """Parse a FASTA file into (identifier, sequence) pairs, in file order.

    Headers start with '>'; the identifier is the first whitespace-split
    token.  Sequence lines are concatenated and validated; bad bases
    raise InvalidBase carrying the record identifier.
    """
    records: list[tuple[str, list[str], int]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith(">"):
                name = stripped[1:].split()
                if not name:
                    raise MalformedFasta(line_no, "header has no identifier")
                records.append((name[0], [], line_no))
            else:
                if not records:
                    raise MalformedFasta(line_no, "sequence data before any '>' header")
                records[-1][1].append(stripped)
    if not records:
        raise MalformedFasta(0, "no records found")

    out = []
    for name, chunks, line_no in records:
        try:
            seq = parse_sequence("".join(chunks))
        except TooShort as exc:
            raise MalformedFasta(line_no, f"record {name!r} has no sequence") from exc
        except InvalidBase as exc:
            raise InvalidBase(exc.position, exc.character, record=name) from exc
        out.append((name, seq))
    return out
