"""Placement delivery arrays: representation, parsing, validation, statistics.

A placement delivery array (PDA) is an F x K array whose entries are either a
star or an ordinary symbol. Stars encode which node stores which file batch;
ordinary symbols encode the coded delivery: equal symbols mark intermediate
values that can be exchanged in one multicast transmission.

Grid entries are plain ints: ``STAR`` (0) for a star, a positive label for an
ordinary symbol. Canonical arrays label their symbols 1..S in row-major order
of first occurrence; column subarrays keep the parent's labels, so their label
sets may have gaps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

STAR = 0


class PdaFormatError(ValueError):
    """PDA text that cannot be parsed. ``line``/``column`` are 1-based."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


@dataclass(frozen=True)
class Violation:
    """One broken PDA rule, with the 1-based coordinates involved.

    rule is one of:
      "a"         equal symbols share a row or a column
      "b"         the cross positions of an equal-symbol pair are not both stars
      "symbol"    an entry is not a star or a positive integer
      "coverage"  some label in 1..max(labels) never occurs
      "numbering" first occurrences are not in increasing label order
    """

    rule: str
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    params: tuple[int, int, int, int] | None  # (K, F, T, S) when valid

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            k, f, t, s = self.params
            return f"OK: ({k},{f},{t},{s}) PDA"
        return "\n".join(f"rule {v.rule}: {v.message}" for v in self.violations)


class PdaValidationError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(report.summary())


class EmptyStarRowError(ValueError):
    """A column restriction left some row without a star (outage)."""

    def __init__(self, row: int):
        self.row = row  # 1-based
        super().__init__(f"row {row} keeps no star under the requested column subset")


@dataclass(frozen=True)
class Pda:
    """Validated PDA grid. Construct through ``parse_pda``, the family
    constructors, or ``column_subarray``; building one directly skips
    validation."""

    grid: tuple[tuple[int, ...], ...]

    @cached_property
    def f(self) -> int:
        """Row count (number of file batches)."""
        return len(self.grid)

    @cached_property
    def k(self) -> int:
        """Column count (number of nodes)."""
        return len(self.grid[0])

    @cached_property
    def t(self) -> int:
        """Total number of star entries."""
        return sum(row.count(STAR) for row in self.grid)

    @cached_property
    def s(self) -> int:
        """Number of distinct ordinary symbols."""
        return len(self.occurrences)

    @cached_property
    def occurrences(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """symbol -> ((row, col), ...) in row-major order, 0-based. Read-only."""
        occ: dict[int, list[tuple[int, int]]] = {}
        for i, row in enumerate(self.grid):
            for j, entry in enumerate(row):
                if entry != STAR:
                    occ.setdefault(entry, []).append((i, j))
        return {sym: tuple(pos) for sym, pos in occ.items()}

    @property
    def params(self) -> tuple[int, int, int, int]:
        """(K, F, T, S)."""
        return (self.k, self.f, self.t, self.s)

    def stars_in_row(self, i: int) -> int:
        return self.grid[i].count(STAR)

    def star_columns(self, i: int) -> tuple[int, ...]:
        """0-based columns holding a star in row ``i``."""
        return tuple(j for j, entry in enumerate(self.grid[i]) if entry == STAR)

    def star_rows(self, j: int) -> tuple[int, ...]:
        """0-based rows holding a star in column ``j``."""
        return tuple(i for i in range(self.f) if self.grid[i][j] == STAR)


@dataclass(frozen=True)
class PdaStats:
    """Derived PDA quantities, all exact.

    tau           minimum number of stars over the rows
    s_t           multiplicity t -> number of symbols occurring exactly t times
    theta         multiplicity t -> fraction of ordinary entries under such
                  symbols (S_t * t / (K*F - T)); empty for an all-star array
    regular_g     g when every symbol occurs exactly g times, else None
    storage_load  T / F, the number of stored copies per file
    is_comp       True when every row has at least one star
    """

    tau: int
    s_t: dict[int, int]
    theta: dict[int, Fraction]
    regular_g: int | None
    storage_load: Fraction
    is_comp: bool


def validate_pda(grid, require_canonical: bool = True) -> ValidationReport:
    """Check a raw grid against the PDA rules and report every violation.

    ``grid`` is a nonempty rectangular sequence of rows of ints (STAR or a
    symbol label). With ``require_canonical`` the label set must be exactly
    1..S, numbered in row-major first-occurrence order; column subarrays are
    checked with it off.
    """
    rows = [tuple(row) for row in grid]
    if not rows or not rows[0]:
        raise ValueError("grid must be nonempty")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("grid must be rectangular")

    violations: list[Violation] = []
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            if entry == STAR:
                continue
            if not isinstance(entry, int) or entry < 0:
                violations.append(Violation(
                    "symbol", (i + 1,), (j + 1,),
                    f"entry at ({i + 1},{j + 1}) is not a star or a positive integer"))
                continue
            occ.setdefault(entry, []).append((i, j))

    for sym in sorted(occ):
        places = occ[sym]
        for a in range(len(places)):
            i1, j1 = places[a]
            for b in range(a + 1, len(places)):
                i2, j2 = places[b]
                if i1 == i2 or j1 == j2:
                    violations.append(Violation(
                        "a", (i1 + 1, i2 + 1), (j1 + 1, j2 + 1),
                        f"symbol {sym} repeats in the same "
                        f"{'row' if i1 == i2 else 'column'} at "
                        f"({i1 + 1},{j1 + 1}) and ({i2 + 1},{j2 + 1})"))
                    continue
                if rows[i1][j2] != STAR or rows[i2][j1] != STAR:
                    violations.append(Violation(
                        "b", (i1 + 1, i2 + 1), (j1 + 1, j2 + 1),
                        f"symbol {sym} at ({i1 + 1},{j1 + 1}) and ({i2 + 1},{j2 + 1}) "
                        f"needs stars at ({i1 + 1},{j2 + 1}) and ({i2 + 1},{j1 + 1})"))

    if require_canonical and occ:
        labels = sorted(occ)
        for missing in sorted(set(range(1, labels[-1] + 1)) - set(labels)):
            violations.append(Violation(
                "coverage", (), (),
                f"symbol {missing} never occurs (labels must cover 1..{labels[-1]})"))
        firsts = sorted(occ, key=lambda sym: occ[sym][0])
        for expected, sym in enumerate(firsts, start=1):
            if sym != expected:
                i, j = occ[sym][0]
                violations.append(Violation(
                    "numbering", (i + 1,), (j + 1,),
                    f"symbol {sym} first occurs at ({i + 1},{j + 1}) out of "
                    f"first-occurrence order (expected {expected})"))
                break

    params = None
    if not violations:
        t = sum(row.count(STAR) for row in rows)
        params = (width, len(rows), t, len(occ))
    return ValidationReport(tuple(violations), params)


def canonical_relabel(raw_grid) -> tuple[tuple[int, ...], ...]:
    """Renumber ordinary symbols 1..S by first occurrence in row-major order.

    Entries equal to STAR stay; any other (hashable) entry is a symbol.
    """
    mapping: dict = {}
    out = []
    for row in raw_grid:
        new_row = []
        for entry in row:
            if entry == STAR:
                new_row.append(STAR)
            else:
                if entry not in mapping:
                    mapping[entry] = len(mapping) + 1
                new_row.append(mapping[entry])
        out.append(tuple(new_row))
    return tuple(out)


def parse_pda(text) -> Pda:
    """Parse PDA text: a header line ``F K`` followed by F rows of K
    whitespace-separated tokens, each ``*`` or a positive integer. Lines
    starting with ``#`` and blank lines are ignored. Symbols are renumbered
    canonically; the grid is then validated.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise PdaFormatError(f"PDA text is not ASCII: {exc}") from None

    lines = []  # (1-based line number, content)
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, line))

    if not lines:
        raise PdaFormatError("empty PDA file")

    header_no, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise PdaFormatError("header must be 'F K'", line=header_no)
    try:
        f, k = int(fields[0]), int(fields[1])
    except ValueError:
        raise PdaFormatError("header must hold two integers", line=header_no) from None
    if f < 1 or k < 1:
        raise PdaFormatError(f"degenerate dimensions {f}x{k}", line=header_no)

    body = lines[1:]
    if len(body) != f:
        raise PdaFormatError(f"expected {f} grid rows, found {len(body)}",
                             line=body[-1][0] if body else header_no)

    grid = []
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) != k:
            raise PdaFormatError(f"expected {k} entries, found {len(tokens)}", line=lineno)
        row = []
        pos = 0
        for token in tokens:
            pos = line.index(token, pos)
            if token == "*":
                row.append(STAR)
            elif token.isdigit() and int(token) > 0:
                row.append(int(token))
            else:
                raise PdaFormatError(f"bad entry {token!r}", line=lineno, column=pos + 1)
            pos += len(token)
        grid.append(tuple(row))

    canonical = canonical_relabel(grid)
    report = validate_pda(canonical)
    if not report.ok:
        raise PdaValidationError(report)
    return Pda(canonical)


def render_pda(pda: Pda) -> str:
    """PDA text in the file format accepted by ``parse_pda``."""
    lines = [f"{pda.f} {pda.k}"]
    for row in pda.grid:
        lines.append(" ".join("*" if entry == STAR else str(entry) for entry in row))
    return "\n".join(lines) + "\n"


def pda_stats(pda: Pda) -> PdaStats:
    """Exact derived quantities of a validated PDA."""
    tau = min(pda.stars_in_row(i) for i in range(pda.f))
    s_t: dict[int, int] = {}
    for places in pda.occurrences.values():
        s_t[len(places)] = s_t.get(len(places), 0) + 1
    ordinary = pda.k * pda.f - pda.t
    theta = {t: Fraction(count * t, ordinary) for t, count in sorted(s_t.items())}
    regular_g = next(iter(s_t)) if len(s_t) == 1 else None
    return PdaStats(
        tau=tau,
        s_t=dict(sorted(s_t.items())),
        theta=theta,
        regular_g=regular_g,
        storage_load=Fraction(pda.t, pda.f),
        is_comp=tau >= 1,
    )


def column_subarray(pda: Pda, nodes) -> Pda:
    """Restrict to the columns in ``nodes`` (1-based labels, kept in the given
    order). Symbols keep their parent labels so occurrence counts in the
    subarray can be compared with the full array. Raises EmptyStarRowError if
    some row loses all its stars.
    """
    nodes = list(nodes)
    if not nodes:
        raise ValueError("nodes must be nonempty")
    if len(set(nodes)) != len(nodes):
        raise ValueError("nodes must be distinct")
    for node in nodes:
        if not 1 <= node <= pda.k:
            raise ValueError(f"node {node} outside 1..{pda.k}")

    grid = []
    for i, row in enumerate(pda.grid):
        new_row = tuple(row[node - 1] for node in nodes)
        if STAR not in new_row:
            raise EmptyStarRowError(i + 1)
        grid.append(new_row)
    return Pda(tuple(grid))
