"""Tabular clause format: the editable bridge between English and models.

One row per clause; refinement sub-clauses use dotted ids (``2.1`` is the
first child of row ``2``). Columns:

    id  text  agent  modality  verb  object  connective  condition  time

The ``condition`` column holds a guard in a small textual grammar
(``done(name)``, ``violated(name)``, ``not``/``and``/``or``), optionally
followed by ``ELSE <name>`` naming the reparation row. The ``time`` column
holds a window: ``< N``, ``<= N``, ``>= N``, ``in [N,M]``, ``in [N,M)``,
each optionally suffixed ``of <name>`` for windows relative to another
clause; ``within N of <name>`` abbreviates ``< N of <name>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .errors import NormaError
from .model import (
    Action,
    Agent,
    And,
    Atomic,
    Clause,
    Composite,
    Connective,
    ContractModel,
    Declaration,
    Done,
    GuardExpr,
    Modality,
    Not,
    Or,
    TimeExpr,
    TimeKind,
    Violated,
    autoname,
    validate,
)

HEADER = ("id", "text", "agent", "modality", "verb", "object", "connective", "condition", "time")

_CONNECTIVES = {"AND": Connective.CONJUNCTION, "OR": Connective.CHOICE, "SEQ": Connective.SEQUENCE}
_CONNECTIVE_CODES = {v: k for k, v in _CONNECTIVES.items()}
_MODALITIES = {"O", "P", "F", "D", ""}


@dataclass(frozen=True)
class ClauseRow:
    id: str
    text: str = ""
    agent: str = ""
    modality: str = ""
    verb: str = ""
    object: str = ""
    connective: str = ""
    condition: str = ""
    time: str = ""

    def cells(self) -> tuple[str, ...]:
        return (
            self.id,
            self.text,
            self.agent,
            self.modality,
            self.verb,
            self.object,
            self.connective,
            self.condition,
            self.time,
        )


@dataclass(frozen=True)
class TsvTable:
    rows: tuple[ClauseRow, ...] = ()
    header: tuple[str, ...] = HEADER


def _escape(cell: str) -> str:
    return (
        cell.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def _unescape(cell: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(cell):
        ch = cell[i]
        if ch == "\\" and i + 1 < len(cell):
            nxt = cell[i + 1]
            out.append({"t": "\t", "n": "\n", "r": "\r", "\\": "\\"}.get(nxt, "\\" + nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def emit_tsv(table: TsvTable) -> str:
    lines = ["\t".join(table.header)]
    for row in table.rows:
        lines.append("\t".join(_escape(c) for c in row.cells()))
    return "\n".join(lines) + "\n"


def parse_tsv(text: str) -> TsvTable:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise NormaError("BAD_HEADER", "empty input")
    header = tuple(lines[0].split("\t"))
    if header != HEADER:
        raise NormaError("BAD_HEADER", f"expected header {'/'.join(HEADER)}")
    rows: list[ClauseRow] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [_unescape(c) for c in line.split("\t")]
        if len(cells) != len(HEADER):
            raise NormaError("BAD_ROW", f"{len(cells)} cells, expected {len(HEADER)}",
                             location=f"line {lineno}")
        row = ClauseRow(*cells)
        if not row.id:
            raise NormaError("BAD_ROW", "empty id", location=f"line {lineno}")
        if row.id in seen:
            raise NormaError("DUPLICATE_ID", f"row id {row.id!r} repeated",
                             location=f"line {lineno}")
        if row.modality not in _MODALITIES:
            raise NormaError("BAD_ROW", f"unknown modality {row.modality!r}",
                             location=f"line {lineno}")
        seen.add(row.id)
        rows.append(row)
    return TsvTable(rows=tuple(rows))


# --- condition and time grammars ---------------------------------------

_TIME_RE = re.compile(
    r"""^\s*(?:
        (?P<within>within)\s+(?P<wn>\d+)
      | (?P<op><=|<|>=)\s*(?P<n>\d+)
      | in\s*\[\s*(?P<lo>\d+)\s*,\s*(?P<hi>\d+)\s*(?P<close>[\]\)])
    )\s*(?:of\s+(?P<ref>[a-z][a-z0-9_]*))?\s*$""",
    re.VERBOSE,
)


def parse_time(text: str, row_id: str = "") -> TimeExpr | None:
    if not text.strip():
        return None
    m = _TIME_RE.match(text)
    if not m:
        raise NormaError("PARSE_TIME", f"cannot parse time {text!r}", location=row_id)
    ref = m.group("ref")
    kind = TimeKind.RELATIVE if ref else TimeKind.ABSOLUTE
    if m.group("within"):
        return TimeExpr(kind=kind, high=int(m.group("wn")), strict_high=True, ref=ref)
    if m.group("op"):
        n = int(m.group("n"))
        if m.group("op") == ">=":
            return TimeExpr(kind=kind, low=n, ref=ref)
        return TimeExpr(kind=kind, high=n, strict_high=m.group("op") == "<", ref=ref)
    return TimeExpr(
        kind=kind,
        low=int(m.group("lo")),
        high=int(m.group("hi")),
        strict_high=m.group("close") == ")",
        ref=ref,
    )


def format_time(time: TimeExpr) -> str:
    suffix = f" of {time.ref}" if time.ref else ""
    if time.low is not None and time.high is not None:
        close = ")" if time.strict_high else "]"
        return f"in [{time.low},{time.high}{close}{suffix}"
    if time.high is not None:
        if time.strict_high:
            return (f"within {time.high}" if time.ref else f"< {time.high}") + suffix
        return f"<= {time.high}{suffix}"
    return f">= {time.low}{suffix}"


_COND_TOKEN_RE = re.compile(r"\s*([a-z][a-z0-9_]*|\(|\)|ELSE)")


class _CondParser:
    """Recursive-descent parser for the condition column."""

    def __init__(self, text: str, row_id: str):
        self.text = text
        self.row_id = row_id
        self.tokens: list[str] = []
        pos = 0
        while pos < len(text):
            m = _COND_TOKEN_RE.match(text, pos)
            if m is None:
                if text[pos:].strip() == "":
                    break
                raise self.error(f"bad character {text[pos:].strip()[0]!r}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.pos = 0

    def error(self, why: str) -> NormaError:
        return NormaError("PARSE_CONDITION", f"{why} in condition {self.text!r}",
                          location=self.row_id)

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end")
        self.pos += 1
        return tok

    def parse(self) -> tuple[GuardExpr | None, str | None]:
        guard = None
        if self.peek() not in (None, "ELSE"):
            guard = self.parse_or()
        reparation = None
        if self.peek() == "ELSE":
            self.take()
            reparation = self.take()
        if self.peek() is not None:
            raise self.error(f"trailing input at {self.peek()!r}")
        return guard, reparation

    def parse_or(self) -> GuardExpr:
        expr = self.parse_and()
        while self.peek() == "or":
            self.take()
            expr = Or(expr, self.parse_and())
        return expr

    def parse_and(self) -> GuardExpr:
        expr = self.parse_unary()
        while self.peek() == "and":
            self.take()
            expr = And(expr, self.parse_unary())
        return expr

    def parse_unary(self) -> GuardExpr:
        tok = self.peek()
        if tok == "not":
            self.take()
            return Not(self.parse_unary())
        if tok == "(":
            self.take()
            expr = self.parse_or()
            if self.take() != ")":
                raise self.error("expected ')'")
            return expr
        if tok in ("done", "violated"):
            self.take()
            if self.take() != "(":
                raise self.error(f"expected '(' after {tok}")
            ref = self.take()
            if self.take() != ")":
                raise self.error("expected ')'")
            return Done(ref) if tok == "done" else Violated(ref)
        raise self.error(f"unexpected token {tok!r}")


def parse_condition(text: str, row_id: str = "") -> tuple[GuardExpr | None, str | None]:
    """Parse the condition column into (guard, reparation name)."""
    if not text.strip():
        return None, None
    return _CondParser(text, row_id).parse()


def format_guard(guard: GuardExpr) -> str:
    if isinstance(guard, Done):
        return f"done({guard.ref})"
    if isinstance(guard, Violated):
        return f"violated({guard.ref})"
    if isinstance(guard, Not):
        return f"not {_wrap(guard.inner)}"
    op = "and" if isinstance(guard, And) else "or"
    return f"{_wrap(guard.left)} {op} {_wrap(guard.right)}"


def _wrap(guard: GuardExpr) -> str:
    if isinstance(guard, (Done, Violated)):
        return format_guard(guard)
    return f"({format_guard(guard)})"


def format_condition(guard: GuardExpr | None, reparation: str | None) -> str:
    parts = []
    if guard is not None:
        parts.append(format_guard(guard))
    if reparation is not None:
        parts.append(f"ELSE {reparation}")
    return " ".join(parts)


# --- table <-> model ----------------------------------------------------


def rows_to_model(table: TsvTable, title: str = "") -> ContractModel:
    """Build a contract model from a table.

    Row ids become clause names (``2`` -> ``c2``, ``2.1`` -> ``c2_1``);
    rows named by an ``ELSE`` reference become reparation clauses.
    """
    children: dict[str, list[ClauseRow]] = {}
    top: list[ClauseRow] = []
    ids = {row.id for row in table.rows}
    for row in table.rows:
        if "." in row.id:
            parent, _, k = row.id.rpartition(".")
            if parent not in ids:
                raise NormaError("ORPHAN_SUBROW", f"row {row.id} has no parent row {parent}",
                                 location=row.id)
            siblings = children.setdefault(parent, [])
            if not k.isdigit() or int(k) != len(siblings) + 1:
                raise NormaError("BAD_SUBROW",
                                 f"sub-rows of {parent} must be numbered consecutively from 1",
                                 location=row.id)
            siblings.append(row)
        else:
            top.append(row)

    def clause_name(row_id: str) -> str:
        return "c" + row_id.replace(".", "_")

    rep_targets: set[str] = set()

    def build(row: ClauseRow) -> Clause:
        name = clause_name(row.id)
        guard, reparation = parse_condition(row.condition, row.id)
        if reparation is not None:
            rep_targets.add(reparation)
        time = parse_time(row.time, row.id)
        kids = children.get(row.id, [])
        if kids:
            connective = _CONNECTIVES.get(row.connective or "AND")
            if connective is None:
                raise NormaError("BAD_ROW", f"unknown connective {row.connective!r}",
                                 location=row.id)
            return Clause(
                name,
                Composite(
                    connective=connective,
                    children=tuple(build(k) for k in kids),
                    guard=guard,
                    reparation=reparation,
                ),
            )
        if row.modality == "D":
            if guard is not None or reparation is not None:
                raise NormaError("PARSE_CONDITION", "declarations take no condition",
                                 location=row.id)
            return Clause(name, Declaration(text=row.text, time=time))
        if row.modality == "":
            raise NormaError("MISSING_MODALITY", "row has no modality and no sub-rows",
                             location=row.id)
        return Clause(
            name,
            Atomic(
                agent=Agent(row.agent),
                modality=Modality(row.modality),
                action=Action(verb=row.verb, object=row.object),
                time=time,
                guard=guard,
                reparation=reparation,
            ),
        )

    built = [(row, build(row)) for row in top]
    clauses = tuple(c for row, c in built if c.name not in rep_targets)
    reparations = tuple(c for row, c in built if c.name in rep_targets)
    model = autoname(ContractModel(title=title, clauses=clauses, reparations=reparations))
    diags = validate(model)
    if diags:
        first = diags[0]
        raise NormaError("INVARIANT_VIOLATION", f"{first.code}: {first.message}",
                         location=first.clause)
    return model


def model_to_rows(model: ContractModel) -> TsvTable:
    """Flatten a model back to a table.

    Row ids are positional; clause names are rewritten accordingly so the
    result converts back to the same model up to autonaming.
    """
    new_ids: dict[str, str] = {}

    def assign(clause: Clause, row_id: str) -> None:
        new_ids[clause.name] = row_id
        if isinstance(clause.body, Composite):
            for i, child in enumerate(clause.body.children, 1):
                assign(child, f"{row_id}.{i}")

    n_top = len(model.clauses)
    for i, clause in enumerate(model.clauses, 1):
        assign(clause, str(i))
    for i, clause in enumerate(model.reparations, 1):
        assign(clause, str(n_top + i))

    def rename(name: str) -> str:
        return "c" + new_ids[name].replace(".", "_")

    def rewrite_guard(guard: GuardExpr) -> GuardExpr:
        if isinstance(guard, Done):
            return Done(rename(guard.ref))
        if isinstance(guard, Violated):
            return Violated(rename(guard.ref))
        if isinstance(guard, Not):
            return Not(rewrite_guard(guard.inner))
        cls = And if isinstance(guard, And) else Or
        return cls(rewrite_guard(guard.left), rewrite_guard(guard.right))

    rows: list[ClauseRow] = []

    def emit(clause: Clause) -> None:
        row_id = new_ids[clause.name]
        body = clause.body
        guard = getattr(body, "guard", None)
        if guard is not None:
            guard = rewrite_guard(guard)
        reparation = getattr(body, "reparation", None)
        if reparation is not None:
            reparation = rename(reparation)
        condition = format_condition(guard, reparation)
        time = getattr(body, "time", None)
        if time is not None and time.ref is not None:
            time = replace(time, ref=rename(time.ref))
        time_text = format_time(time) if time is not None else ""
        if isinstance(body, Composite):
            rows.append(
                ClauseRow(
                    id=row_id,
                    connective=_CONNECTIVE_CODES[body.connective],
                    condition=condition,
                )
            )
            for child in body.children:
                emit(child)
        elif isinstance(body, Declaration):
            rows.append(ClauseRow(id=row_id, text=body.text, modality="D", time=time_text))
        else:
            rows.append(
                ClauseRow(
                    id=row_id,
                    agent=body.agent.name,
                    modality=body.modality.value,
                    verb=body.action.verb,
                    object=body.action.object,
                    condition=condition,
                    time=time_text,
                )
            )

    for clause in model.clauses:
        emit(clause)
    for clause in model.reparations:
        emit(clause)
    return TsvTable(rows=tuple(rows))
