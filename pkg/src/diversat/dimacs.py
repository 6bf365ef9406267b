"""Text formats: DIMACS CNF, XDIMACS, DIMACS edge lists, F2 matrices, set systems."""

from __future__ import annotations

from typing import Iterator, Union

from diversat.formula import Clause, CnfFormula, FormulaError, XorClause, XorFormula


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


Text = Union[str, bytes]


def _lines(text: Text) -> Iterator[tuple[int, str]]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        yield lineno, raw.strip()


def _read_header(line: str, lineno: int, kinds: tuple[str, ...]) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 4 or parts[0] != "p" or parts[1] not in kinds:
        raise ParseError(f"malformed header {line!r}", lineno)
    try:
        a, b = int(parts[2]), int(parts[3])
    except ValueError:
        raise ParseError(f"malformed header {line!r}", lineno) from None
    if a < 0 or b < 0:
        raise ParseError("negative counts in header", lineno)
    return a, b


def _parse_clauses(text: Text, xor: bool) -> tuple[int, list[tuple[int, list[int]]]]:
    n = m = None
    clauses: list[tuple[int, list[int]]] = []
    current: list[int] = []
    start = 0
    for lineno, line in _lines(text):
        if not line or line[0] == "c":
            continue
        if line[0] == "%":
            break
        if line[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            n, m = _read_header(line, lineno, ("cnf", "xor"))
            continue
        if n is None:
            raise ParseError("clause before header", lineno)
        if xor:
            if line[0] != "x":
                raise ParseError("XOR clause lines must start with 'x'", lineno)
            line = line[1:]
        elif line[0] == "x":
            raise ParseError("XOR clause in a CNF file", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                clauses.append((start, current))
                current = []
                continue
            if abs(lit) > n:
                raise ParseError(f"literal index {abs(lit)} out of range 1..{n}", lineno)
            if not current:
                start = lineno
            current.append(lit)
        if xor and current:
            raise ParseError("XOR clause not terminated by 0", lineno)
    if n is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        clauses.append((start, current))
    if len(clauses) != m:
        raise ParseError(f"header declares {m} clauses, found {len(clauses)}")
    return n, clauses


def parse_dimacs(text: Text) -> CnfFormula:
    n, clauses = _parse_clauses(text, xor=False)
    return CnfFormula(n, tuple(Clause.of(*lits) for _, lits in clauses))


def parse_xdimacs(text: Text) -> XorFormula:
    n, clauses = _parse_clauses(text, xor=True)
    out = []
    for lineno, lits in clauses:
        try:
            out.append(XorClause.from_literals(lits))
        except FormulaError as exc:
            raise ParseError(str(exc), lineno) from None
    return XorFormula(n, tuple(out))


def emit_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    lines += [" ".join(map(str, c.to_ints())) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


def emit_xdimacs(phi: XorFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    for c in phi.clauses:
        # rhs 0 is written by negating the last variable
        lits = [str(v) for v in c.vars]
        if c.rhs == 0:
            lits[-1] = "-" + lits[-1]
        lines.append("x " + " ".join(lits) + " 0")
    return "\n".join(lines) + "\n"


def is_xdimacs(text: Text) -> bool:
    for _, line in _lines(text):
        if line and line[0] == "x":
            return True
        if line and line[0] not in "cp%":
            return False
    return False


def is_matrix(text: Text) -> bool:
    for _, line in _lines(text):
        if not line or line[0] == "c":
            continue
        parts = line.split()
        return len(parts) == 2 and all(p.isdigit() for p in parts)
    return False


# --- DIMACS graphs -----------------------------------------------------------


def parse_dimacs_graph(text: Text) -> tuple[int, list[tuple[int, int]]]:
    """Return ``(num_vertices, edges)`` with 1-based vertices."""
    nv = ne = None
    edges: list[tuple[int, int]] = []
    for lineno, line in _lines(text):
        if not line or line[0] == "c":
            continue
        if line[0] == "p":
            nv, ne = _read_header(line, lineno, ("edge", "col"))
            continue
        if line[0] != "e":
            raise ParseError(f"unexpected line {line!r}", lineno)
        if nv is None:
            raise ParseError("edge before header", lineno)
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"malformed edge line {line!r}", lineno)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"malformed edge line {line!r}", lineno) from None
        if not (1 <= u <= nv and 1 <= v <= nv):
            raise ParseError(f"vertex out of range 1..{nv}", lineno)
        edges.append((u, v))
    if nv is None:
        raise ParseError("missing 'p edge' header")
    if len(edges) != ne:
        raise ParseError(f"header declares {ne} edges, found {len(edges)}")
    return nv, edges


def emit_dimacs_graph(
    num_vertices: int, edges: list[tuple[int, int]], comments: list[str] = ()
) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {num_vertices} {len(edges)}")
    lines += [f"e {u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# --- F2 matrices -------------------------------------------------------------


def parse_matrix(text: Text) -> tuple[int, list[list[int]], list[int] | None]:
    """Parse ``rows cols`` followed by 0/1 rows and an optional ``b`` line.

    Rows may be written as ``1 0 1`` or ``101``.
    """
    header = None
    rows: list[list[int]] = []
    rhs = None

    def bits(tokens: list[str], lineno: int) -> list[int]:
        digits = "".join(tokens)
        if set(digits) - {"0", "1"}:
            raise ParseError("matrix entries must be 0 or 1", lineno)
        if len(digits) != header[1]:
            raise ParseError(f"expected {header[1]} entries, got {len(digits)}", lineno)
        return [int(ch) for ch in digits]

    for lineno, line in _lines(text):
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError("expected 'rows cols' header", lineno)
            header = (int(parts[0]), int(parts[1]))
            continue
        if parts[0] == "b":
            if rhs is not None:
                raise ParseError("duplicate b line", lineno)
            digits = "".join(parts[1:])
            if set(digits) - {"0", "1"} or len(digits) != header[0]:
                raise ParseError(f"b line must hold {header[0]} bits", lineno)
            rhs = [int(ch) for ch in digits]
            continue
        rows.append(bits(parts, lineno))
    if header is None:
        raise ParseError("empty matrix file")
    if len(rows) != header[0]:
        raise ParseError(f"header declares {header[0]} rows, found {len(rows)}")
    return header[1], rows, rhs


def emit_matrix(num_cols: int, rows: list[list[int]], rhs: list[int] | None = None) -> str:
    lines = [f"{len(rows)} {num_cols}"]
    lines += [" ".join(map(str, r)) for r in rows]
    if rhs is not None:
        lines.append("b " + " ".join(map(str, rhs)))
    return "\n".join(lines) + "\n"


# --- set systems -------------------------------------------------------------


def parse_set_system(text: Text) -> tuple[int, list[list[int]]]:
    """One whitespace-separated set per line; optional ``p set U F`` header."""
    universe = None
    sets: list[list[int]] = []
    for lineno, line in _lines(text):
        if not line or line[0] == "c":
            continue
        if line[0] == "p":
            universe, _ = _read_header(line, lineno, ("set",))
            continue
        try:
            sets.append([int(t) for t in line.split()])
        except ValueError:
            raise ParseError(f"bad set line {line!r}", lineno) from None
    if universe is None:
        universe = max((max(s) for s in sets if s), default=0)
    return universe, sets


def emit_set_system(universe: int, sets: list[list[int]]) -> str:
    lines = [f"p set {universe} {len(sets)}"]
    lines += [" ".join(map(str, s)) for s in sets]
    return "\n".join(lines) + "\n"
