import pytest

from core.belconfig import BelDecomposition, decomposition_algebra
from core.errors import NotBilinearError, ParseError, TooLargeError
from core.formats import (
    detect_format,
    format_coeff,
    format_decomp,
    format_table,
    parse_algebra,
    parse_coeff,
    parse_decomp,
    parse_table,
    read_algebra,
    read_decomposition,
    write_text,
)
from core.linmap import LinMap

GTF27_COEFF = """\
SEMIFIELD-COEFF v1
# generalized twisted field, k = 1, m = 2
3 1 3
modulus 1 2 0 1

1 0 0
0 0 {minus_c}
0 0 0
"""


def gtf27_text(gtf27) -> str:
    return GTF27_COEFF.format(minus_c=gtf27.C[1][2])


def test_modulus_line_of_gf27(ctx27):
    assert ctx27.modulus_text() == "1 2 0 1"


def test_parse_coeff(gtf27):
    assert parse_coeff(gtf27_text(gtf27)) == gtf27


def test_formatted_coeff_parses_back(gtf27, field16):
    for S in (gtf27, field16):
        text = format_coeff(S)
        assert text.splitlines()[0] == "SEMIFIELD-COEFF v1"
        assert parse_coeff(text) == S


def test_table_text(field16):
    text = format_table(field16)
    lines = text.splitlines()
    assert lines[:3] == ["SEMIFIELD-TABLE v1", "2 1 4", "modulus 1 1 0 0 1"]
    assert len(lines) == 3 + 16
    assert parse_table(text) == field16
    assert detect_format(text) == "table"


def test_corrupted_table_text(field16):
    lines = format_table(field16).splitlines()
    row = lines[3 + 2].split()
    row[3] = str((int(row[3]) + 1) % 16)
    lines[3 + 2] = " ".join(row)
    with pytest.raises(NotBilinearError):
        parse_table("\n".join(lines))


def test_decomp_text(ctx27):
    ident, frob = LinMap.identity(ctx27), LinMap.frobenius(ctx27, 1)
    D = BelDecomposition(ctx27, [ident, frob], [ident, LinMap.scalar(ctx27, 2)])
    text = format_decomp(D)
    assert text.splitlines()[1] == "3 1 3 2"
    parsed = parse_decomp(text)
    assert parsed.fs == D.fs and parsed.gs == D.gs
    assert detect_format(text) == "decomp"
    assert parse_algebra(text) == decomposition_algebra(D)


def test_wrong_modulus_reports_line(gtf27):
    text = gtf27_text(gtf27).replace("modulus 1 2 0 1", "modulus 2 2 0 1")
    with pytest.raises(ParseError) as info:
        parse_coeff(text)
    assert info.value.line == 4


def test_missing_modulus_line(gtf27):
    text = gtf27_text(gtf27).replace("modulus 1 2 0 1", "1 2 0 1")
    with pytest.raises(ParseError, match="modulus"):
        parse_coeff(text)


def test_bad_header():
    with pytest.raises(ParseError):
        parse_algebra("SEMIFIELD-COEFF v2\n3 1 3\n")
    with pytest.raises(ParseError):
        detect_format("\n# only a comment\n")


def test_non_prime_characteristic_is_a_parse_error():
    with pytest.raises(ParseError) as info:
        parse_coeff("SEMIFIELD-COEFF v1\n4 1 2\nmodulus 1 1 1\n")
    assert info.value.line == 2


def test_oversized_field_is_not_a_parse_error():
    with pytest.raises(TooLargeError):
        parse_coeff("SEMIFIELD-COEFF v1\n2 1 40\nmodulus 1\n")
    with pytest.raises(TooLargeError):
        parse_coeff("SEMIFIELD-COEFF v1\n2 1 100000000000\nmodulus 1\n")


def test_short_row_and_bad_codes(gtf27):
    lines = gtf27_text(gtf27).splitlines()
    short = "\n".join(lines[:6] + ["0 0"] + lines[7:])
    with pytest.raises(ParseError) as info:
        parse_coeff(short)
    assert info.value.line == 7

    bad_code = "\n".join(lines[:5] + ["1 0 27"] + lines[6:])
    with pytest.raises(ParseError, match="outside"):
        parse_coeff(bad_code)


def test_truncated_and_trailing_content(gtf27):
    text = gtf27_text(gtf27)
    with pytest.raises(ParseError, match="end of file"):
        parse_coeff("\n".join(text.splitlines()[:7]))
    with pytest.raises(ParseError, match="trailing"):
        parse_coeff(text + "0 0 0\n")


def test_decomp_with_bad_map_reports_line(ctx27):
    text = "BEL-DECOMP v1\n3 1 3 1\nmodulus 1 2 0 1\n1 0 0\n1 0\n"
    with pytest.raises(ParseError) as info:
        parse_decomp(text)
    assert info.value.line == 5


def test_files(tmp_path, gtf27):
    path = write_text(tmp_path / "nested" / "gtf27.coeff", format_coeff(gtf27))
    assert read_algebra(path) == gtf27
    decomp = write_text(tmp_path / "d.txt", "BEL-DECOMP v1\n3 1 3 1\nmodulus 1 2 0 1\n1 0 0\n1 0 0\n")
    D = read_decomposition(decomp)
    assert D.r == 1
    binary = tmp_path / "blob.bin"
    binary.write_bytes(b"\xff\xfe\x00\x81")
    with pytest.raises(ParseError):
        read_algebra(binary)
