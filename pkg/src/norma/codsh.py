"""Compact shorthand notation for contract models (CODSH).

One clause per line; names are explicit, which makes the notation handy
for inspecting what the converter produced. Grammar sketch:

    clause := name ":" body ["{" guard "}"] ["|>" name]
    body   := MOD "<" agent ">" "(" verb [object] ")" [time]
            | "(" clause (CONN clause)+ ")"
            | "D(" text ")" [time]
    MOD    := "O" | "P" | "F"        CONN := "/\\" | "\\/" | ";"
    time   := "[" spec ["@" name] "]"
    spec   := "t<" N | "t<=" N | "t>=" N | N "," M | N ",<" M

``@name`` marks a window measured from another clause's completion. The
guard language uses ``done(name)``/``violated(name)`` with ``!``, ``&``,
``|`` and parentheses. ``|> name`` attaches a reparation; clauses that are
referenced as reparations are printed after the main clauses.
"""

from __future__ import annotations

import re

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
    validate,
)

_CONN_SYMBOLS = {
    Connective.CONJUNCTION: "/\\",
    Connective.CHOICE: "\\/",
    Connective.SEQUENCE: ";",
}


def _esc(text: str) -> str:
    out = text.replace("\\", "\\\\")
    for raw, esc in (("(", "\\("), (")", "\\)"), ("\n", "\\n"), ("\t", "\\t"), ("\r", "\\r")):
        out = out.replace(raw, esc)
    return out


def print_codsh(model: ContractModel) -> str:
    """Render a valid model; one top-level clause per line."""
    diags = validate(model)
    if diags:
        first = diags[0]
        raise NormaError("INVARIANT_VIOLATION", first.message, location=first.clause)
    lines = []
    if model.title:
        lines.append("#title " + _esc(model.title))
    for clause in model.clauses:
        lines.append(_print_clause(clause))
    for clause in model.reparations:
        lines.append(_print_clause(clause))
    return "\n".join(lines) + ("\n" if lines else "")


def _print_time(time: TimeExpr) -> str:
    at = f"@{time.ref}" if time.ref else ""
    if time.low is not None and time.high is not None:
        sep = ",<" if time.strict_high else ","
        return f"[{time.low}{sep}{time.high}{at}]"
    if time.high is not None:
        op = "t<" if time.strict_high else "t<="
        return f"[{op}{time.high}{at}]"
    return f"[t>={time.low}{at}]"


def _print_guard(guard: GuardExpr) -> str:
    if isinstance(guard, Done):
        return f"done({guard.ref})"
    if isinstance(guard, Violated):
        return f"violated({guard.ref})"
    if isinstance(guard, Not):
        return "!" + _print_guard_atomish(guard.inner)
    sym = " & " if isinstance(guard, And) else " | "
    return _print_guard_atomish(guard.left) + sym + _print_guard_atomish(guard.right)


def _print_guard_atomish(guard: GuardExpr) -> str:
    if isinstance(guard, (Done, Violated)):
        return _print_guard(guard)
    if isinstance(guard, Not):
        return "!" + _print_guard_atomish(guard.inner)
    return "(" + _print_guard(guard) + ")"


def _print_clause(clause: Clause) -> str:
    body = clause.body
    if isinstance(body, Atomic):
        content = body.action.verb
        if body.action.object:
            content += " " + _esc(body.action.object)
        text = f"{body.modality.value}<{body.agent.name}>({content})"
        if body.time is not None:
            text += _print_time(body.time)
    elif isinstance(body, Declaration):
        text = f"D({_esc(body.text)})"
        if body.time is not None:
            text += _print_time(body.time)
    else:
        sym = f" {_CONN_SYMBOLS[body.connective]} "
        text = "(" + sym.join(_print_clause(c) for c in body.children) + ")"
    line = f"{clause.name}: {text}"
    guard = getattr(body, "guard", None)
    if guard is not None:
        line += " {" + _print_guard(guard) + "}"
    reparation = getattr(body, "reparation", None)
    if reparation is not None:
        line += f" |> {reparation}"
    return line


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, why: str) -> NormaError:
        line = self.text.count("\n", 0, self.pos) + 1
        col = self.pos - (self.text.rfind("\n", 0, self.pos) + 1) + 1
        return NormaError("SYNTAX", why, location=f"line {line}, col {col}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def lit(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.lit(token):
            raise self.error(f"expected {token!r}")

    def name(self) -> str:
        self.skip_ws()
        m = re.compile(r"[a-z][a-z0-9_]*").match(self.text, self.pos)
        if not m:
            raise self.error("expected a name")
        self.pos = m.end()
        return m.group()

    def number(self) -> int:
        self.skip_ws()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected a number")
        self.pos = m.end()
        return int(m.group())

    def raw_until_close(self) -> str:
        """Backslash-escaped text up to an unescaped ')'. Consumes the ')'."""
        out: list[str] = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\" and self.pos + 1 < len(self.text):
                nxt = self.text[self.pos + 1]
                out.append({"n": "\n", "t": "\t", "r": "\r"}.get(nxt, nxt))
                self.pos += 2
                continue
            if ch == ")":
                self.pos += 1
                return "".join(out)
            out.append(ch)
            self.pos += 1
        raise self.error("unterminated '('")

    def line_rest(self) -> str:
        end = self.text.find("\n", self.pos)
        if end == -1:
            end = len(self.text)
        raw = self.text[self.pos:end]
        self.pos = end
        out: list[str] = []
        i = 0
        while i < len(raw):
            if raw[i] == "\\" and i + 1 < len(raw):
                out.append({"n": "\n", "t": "\t", "r": "\r"}.get(raw[i + 1], raw[i + 1]))
                i += 2
            else:
                out.append(raw[i])
                i += 1
        return "".join(out)


def parse_codsh(text: str) -> ContractModel:
    """Parse shorthand text into a validated model."""
    sc = _Scanner(text)
    title = ""
    sc.skip_ws()
    if sc.lit("#title"):
        if sc.text[sc.pos:sc.pos + 1] == " ":
            sc.pos += 1
        title = sc.line_rest()

    clauses: list[Clause] = []
    rep_targets: list[str] = []
    while not sc.eof():
        clauses.append(_parse_clause(sc, rep_targets))

    main = tuple(c for c in clauses if c.name not in rep_targets)
    reps = tuple(c for c in clauses if c.name in rep_targets)
    model = ContractModel(title=title, clauses=main, reparations=reps)
    diags = validate(model)
    if diags:
        first = diags[0]
        raise NormaError("INVARIANT_VIOLATION", f"{first.code}: {first.message}",
                         location=first.clause)
    return model


def _parse_time_opt(sc: _Scanner) -> TimeExpr | None:
    if not sc.lit("["):
        return None
    low = high = None
    strict = False
    if sc.lit("t<="):
        high = sc.number()
    elif sc.lit("t<"):
        high, strict = sc.number(), True
    elif sc.lit("t>="):
        low = sc.number()
    else:
        low = sc.number()
        sc.expect(",")
        strict = sc.lit("<")
        high = sc.number()
    ref = None
    if sc.lit("@"):
        ref = sc.name()
    sc.expect("]")
    return TimeExpr(
        kind=TimeKind.RELATIVE if ref else TimeKind.ABSOLUTE,
        low=low,
        high=high,
        strict_high=strict,
        ref=ref,
    )


def _parse_guard_expr(sc: _Scanner) -> GuardExpr:
    expr = _parse_guard_and(sc)
    while True:
        sc.skip_ws()
        # '|>' is the reparation arrow, not a disjunction.
        if sc.text.startswith("|", sc.pos) and not sc.text.startswith("|>", sc.pos):
            sc.pos += 1
            expr = Or(expr, _parse_guard_and(sc))
        else:
            return expr


def _parse_guard_and(sc: _Scanner) -> GuardExpr:
    expr = _parse_guard_unary(sc)
    while sc.lit("&"):
        expr = And(expr, _parse_guard_unary(sc))
    return expr


def _parse_guard_unary(sc: _Scanner) -> GuardExpr:
    if sc.lit("!"):
        return Not(_parse_guard_unary(sc))
    if sc.lit("("):
        expr = _parse_guard_expr(sc)
        sc.expect(")")
        return expr
    word = sc.name()
    if word not in ("done", "violated"):
        raise sc.error(f"expected done/violated, got {word!r}")
    sc.expect("(")
    ref = sc.name()
    sc.expect(")")
    return Done(ref) if word == "done" else Violated(ref)


def _parse_clause(sc: _Scanner, rep_targets: list[str]) -> Clause:
    name = sc.name()
    sc.expect(":")
    sc.skip_ws()
    ch = sc.text[sc.pos:sc.pos + 1]
    if ch in ("O", "P", "F") and sc.text.startswith(ch + "<", sc.pos):
        sc.pos += 2
        agent = sc.name()
        sc.expect(">")
        sc.expect("(")
        content = sc.raw_until_close()
        verb, _, obj = content.partition(" ")
        body: object = Atomic(
            agent=Agent(agent),
            modality=Modality(ch),
            action=Action(verb=verb, object=obj),
            time=_parse_time_opt(sc),
        )
    elif sc.lit("D("):
        text = sc.raw_until_close()
        body = Declaration(text=text, time=_parse_time_opt(sc))
    elif sc.lit("("):
        children = [_parse_clause(sc, rep_targets)]
        connective = None
        while True:
            if sc.lit("/\\"):
                conn = Connective.CONJUNCTION
            elif sc.lit("\\/"):
                conn = Connective.CHOICE
            elif sc.lit(";"):
                conn = Connective.SEQUENCE
            elif sc.lit(")"):
                break
            else:
                raise sc.error("expected a connective or ')'")
            if connective is not None and conn is not connective:
                raise sc.error("mixed connectives in one composite")
            connective = conn
            children.append(_parse_clause(sc, rep_targets))
        if connective is None:
            raise sc.error("composite needs at least two children")
        body = Composite(connective=connective, children=tuple(children))
    else:
        snippet = sc.text[sc.pos:sc.pos + 10]
        raise sc.error(f"expected a clause body, got {snippet!r}")

    if sc.lit("{"):
        guard = _parse_guard_expr(sc)
        sc.expect("}")
        body = _with(body, guard=guard)
    if sc.lit("|>"):
        target = sc.name()
        rep_targets.append(target)
        body = _with(body, reparation=target)
    return Clause(name=name, body=body)


def _with(body, **kw):
    from dataclasses import replace

    if isinstance(body, Declaration):
        raise NormaError("SYNTAX", "declarations take no guard or reparation")
    return replace(body, **kw)
