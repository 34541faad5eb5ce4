"""
Text formats: SEMIFIELD-COEFF v1, SEMIFIELD-TABLE v1 and BEL-DECOMP v1.

Every file starts with a header line, a parameter line and the modulus line
`modulus c0 c1 ... c_{en}` (ascending F_p digits), which must match the
modulus the field context derives for (p, e, n). Blank lines and lines
starting with '#' are ignored; reported line numbers refer to the file.
"""
from pathlib import Path
from typing import List, Tuple, Union
import logging

from core.belconfig import BelDecomposition, decomposition_algebra
from core.errors import NonPrimeError, ParseError, TooLargeError
from core.gf import FieldCtx, get_context
from core.linmap import LinMap
from core.semifield import SemifieldCoeffs, from_table, to_table

logger = logging.getLogger(__name__)

COEFF_HEADER = "SEMIFIELD-COEFF v1"
TABLE_HEADER = "SEMIFIELD-TABLE v1"
DECOMP_HEADER = "BEL-DECOMP v1"

Line = Tuple[int, str]


def _content_lines(text: str) -> List[Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((number, stripped))
    return lines


def _ints(line: Line, expected: int = -1) -> List[int]:
    number, text = line
    try:
        values = [int(v) for v in text.split()]
    except ValueError as exc:
        raise ParseError(f"expected integers, found {text!r}", number) from exc
    if expected >= 0 and len(values) != expected:
        raise ParseError(f"expected {expected} values, found {len(values)}", number)
    return values


def _take(lines: List[Line], index: int, what: str) -> Line:
    if index >= len(lines):
        last = lines[-1][0] if lines else 0
        raise ParseError(f"unexpected end of file, missing {what}", last + 1)
    return lines[index]


def _read_preamble(lines: List[Line], header: str, params: int) -> Tuple[FieldCtx, List[int]]:
    """Header, parameter and modulus lines; returns the context and any extra parameters."""
    number, text = _take(lines, 0, "header")
    if text != header:
        raise ParseError(f"expected header {header!r}, found {text!r}", number)

    values = _ints(_take(lines, 1, "parameter line"), params)
    p, e, n = values[:3]
    try:
        ctx = get_context(p, e, n)
    except TooLargeError:
        raise
    except (NonPrimeError, ValueError) as exc:
        raise ParseError(str(exc), lines[1][0]) from exc

    number, text = _take(lines, 2, "modulus line")
    fields = text.split()
    if not fields or fields[0] != "modulus":
        raise ParseError("expected a line starting with 'modulus'", number)
    try:
        digits = tuple(int(v) for v in fields[1:])
    except ValueError as exc:
        raise ParseError(f"malformed modulus {text!r}", number) from exc
    if digits != ctx.modulus:
        raise ParseError(
            f"modulus {' '.join(fields[1:])} does not match {ctx.modulus_text()} for p={p}, e={e}, n={n}",
            number,
        )
    return ctx, values[3:]


def _check_codes(ctx: FieldCtx, line: Line, values: List[int]) -> List[int]:
    for v in values:
        if not 0 <= v < ctx.order:
            raise ParseError(f"element code {v} outside [0, {ctx.order})", line[0])
    return values


def _preamble_text(ctx: FieldCtx, header: str, *extra: int) -> List[str]:
    params = " ".join(str(v) for v in (ctx.p, ctx.e, ctx.n) + extra)
    return [header, params, f"modulus {ctx.modulus_text()}"]


# ---- COEFF ----

def parse_coeff(text: str) -> SemifieldCoeffs:
    lines = _content_lines(text)
    ctx, _ = _read_preamble(lines, COEFF_HEADER, 3)
    rows = []
    for i in range(ctx.n):
        line = _take(lines, 3 + i, f"coefficient row {i}")
        rows.append(_check_codes(ctx, line, _ints(line, ctx.n)))
    if len(lines) > 3 + ctx.n:
        raise ParseError("trailing content after the coefficient matrix", lines[3 + ctx.n][0])
    return SemifieldCoeffs(ctx, rows)


def format_coeff(S: SemifieldCoeffs) -> str:
    out = _preamble_text(S.ctx, COEFF_HEADER)
    out.extend(" ".join(str(v) for v in row) for row in S.C)
    return "\n".join(out) + "\n"


# ---- TABLE ----

def parse_table(text: str) -> SemifieldCoeffs:
    lines = _content_lines(text)
    ctx, _ = _read_preamble(lines, TABLE_HEADER, 3)
    table = []
    for x in range(ctx.order):
        line = _take(lines, 3 + x, f"table row {x}")
        table.append(_check_codes(ctx, line, _ints(line, ctx.order)))
    if len(lines) > 3 + ctx.order:
        raise ParseError("trailing content after the table", lines[3 + ctx.order][0])
    return from_table(ctx, table)


def format_table(S: SemifieldCoeffs) -> str:
    out = _preamble_text(S.ctx, TABLE_HEADER)
    out.extend(" ".join(str(v) for v in row) for row in to_table(S))
    return "\n".join(out) + "\n"


# ---- DECOMP ----

def parse_decomp(text: str) -> BelDecomposition:
    lines = _content_lines(text)
    ctx, extra = _read_preamble(lines, DECOMP_HEADER, 4)
    r = extra[0]
    if r < 1:
        raise ParseError(f"r must be positive, got {r}", lines[1][0])
    maps = []
    for i in range(2 * r):
        number, body = _take(lines, 3 + i, f"map {i + 1} of {2 * r}")
        maps.append(LinMap.from_text(ctx, body, number))
    if len(lines) > 3 + 2 * r:
        raise ParseError("trailing content after the maps", lines[3 + 2 * r][0])
    return BelDecomposition(ctx, maps[:r], maps[r:])


def format_decomp(D: BelDecomposition) -> str:
    out = _preamble_text(D.ctx, DECOMP_HEADER, D.r)
    out.extend(f.to_text() for f in D.fs)
    out.extend(g.to_text() for g in D.gs)
    return "\n".join(out) + "\n"


# ---- files ----

def detect_format(text: str) -> str:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    header = lines[0][1]
    for kind, expected in (("coeff", COEFF_HEADER), ("table", TABLE_HEADER), ("decomp", DECOMP_HEADER)):
        if header == expected:
            return kind
    raise ParseError(f"unknown header {header!r}", lines[0][0])


def parse_algebra(text: str) -> SemifieldCoeffs:
    kind = detect_format(text)
    if kind == "coeff":
        return parse_coeff(text)
    if kind == "table":
        return parse_table(text)
    return decomposition_algebra(parse_decomp(text))


def read_algebra(path: Union[str, Path]) -> SemifieldCoeffs:
    """Any of the three formats, as a coefficient matrix."""
    path = Path(path)
    logger.debug(f"Reading {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path.name} is not a text file") from exc
    return parse_algebra(text)


def read_decomposition(path: Union[str, Path]) -> BelDecomposition:
    return parse_decomp(Path(path).read_text(encoding="utf-8"))


def write_text(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path
