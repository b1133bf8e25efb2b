import pytest

from moirealign import DnaSequence

# Worked fixture trio: the query S2 occurs verbatim at offset 6 of S1;
# S3 is S2 with "AG" inserted after base 6 and bases 14-15 deleted.
S1_TEXT = "TCCGTACGTATCCGTACAGGTCGAATGCGTACATCGACCT"
S2_TEXT = "ACGTATCCGTACAGGTCGAA"
S3_TEXT = "ACGTATAGCCGTACATCGAA"


@pytest.fixture(scope="session")
def s1():
    return DnaSequence(S1_TEXT)


@pytest.fixture(scope="session")
def s2():
    return DnaSequence(S2_TEXT)


@pytest.fixture(scope="session")
def s3():
    return DnaSequence(S3_TEXT)


@pytest.fixture
def write_fasta(tmp_path):
    def _write(name, *records):
        path = tmp_path / name
        lines = []
        for ident, seq in records:
            lines.append(f">{ident}")
            lines.append(str(seq))
        path.write_text("\n".join(lines) + "\n")
        return path

    return _write
