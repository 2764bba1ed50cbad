"""Controlled-natural-language verbalization of contract models.

Output is template-driven and deterministic: one block per clause,
prefixed with the clause label in square brackets. Verbalization needs
every agent, verb and object word to be present in the lexicon; a missing
word suppresses only the affected clause and is reported alongside the
partial output, so the other views keep working.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .errors import NormaError
from .model import (
    And,
    Clause,
    Composite,
    Connective,
    ContractModel,
    Declaration,
    Done,
    GuardExpr,
    Modality,
    Not,
    TimeExpr,
    Violated,
    validate,
)


@dataclass(frozen=True)
class LexEntry:
    lemma: str
    pos: str
    s3: str
    pastpart: str


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, LexEntry]

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(text: str) -> Lexicon:
    """Parse lexicon lines: ``lemma<TAB>pos<TAB>s3<TAB>pastpart``."""
    entries: dict[str, LexEntry] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise NormaError("BAD_LEXICON", f"expected 4 columns, got {len(parts)}",
                             location=f"line {lineno}")
        lemma, pos, s3, pastpart = parts
        entries[lemma.lower()] = LexEntry(lemma, pos, s3, pastpart)
    return Lexicon(entries)


_default: Lexicon | None = None


def default_lexicon() -> Lexicon:
    global _default
    if _default is None:
        text = resources.files("norma").joinpath("data/lexicon.tsv").read_text("utf-8")
        _default = load_lexicon(text)
    return _default


@dataclass(frozen=True)
class LexiconMiss:
    token: str
    clause: str

    @property
    def code(self) -> str:
        return "LEXICON_MISS"


@dataclass(frozen=True)
class CnlResult:
    text: str
    misses: tuple[LexiconMiss, ...] = ()


_MODAL = {
    Modality.OBLIGATION: "must",
    Modality.PERMISSION: "may",
    Modality.PROHIBITION: "must not",
}

_HEADERS = {
    Connective.CONJUNCTION: "and both of:",
    Connective.CHOICE: "or one of:",
    Connective.SEQUENCE: "then, in order:",
}

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z'-]*")


def _time_phrase(time: TimeExpr) -> str:
    if time.ref is None:
        if time.low is not None and time.high is not None:
            if time.strict_high:
                return f"from time {time.low} until before time {time.high}"
            if time.low == time.high:
                return f"at time {time.low}"
            return f"between time {time.low} and time {time.high}"
        if time.high is not None:
            word = "before" if time.strict_high else "by"
            return f"{word} time {time.high}"
        return f"from time {time.low}"
    ref = f"[{time.ref}]"
    if time.low is not None and time.high is not None:
        if time.strict_high:
            return f"from {time.low} until before {time.high} time units after {ref}"
        if time.low == time.high:
            return f"at {time.low} time units after {ref}"
        return f"between {time.low} and {time.high} time units after {ref}"
    if time.high is not None:
        if time.strict_high:
            return f"within {time.high} time units of {ref}"
        return f"by {time.high} time units after {ref}"
    return f"at least {time.low} time units after {ref}"


def _guard_phrase(guard: GuardExpr) -> str:
    if isinstance(guard, Done):
        return f"[{guard.ref}] is done"
    if isinstance(guard, Violated):
        return f"[{guard.ref}] is violated"
    if isinstance(guard, Not):
        return f"not ({_guard_phrase(guard.inner)})"
    op = "and" if isinstance(guard, And) else "or"
    return f"({_guard_phrase(guard.left)} {op} {_guard_phrase(guard.right)})"


def verbalize(model: ContractModel, lexicon: Lexicon | None = None) -> CnlResult:
    """Render the model as labelled controlled-English blocks."""
    diags = validate(model)
    if diags:
        first = diags[0]
        raise NormaError("INVARIANT_VIOLATION", first.message, location=first.clause)
    if lexicon is None:
        lexicon = default_lexicon()

    blocks: list[str] = []
    misses: list[LexiconMiss] = []

    def check_words(clause_name: str, text: str) -> bool:
        ok = True
        for word in _WORD_RE.findall(text):
            if word not in lexicon:
                misses.append(LexiconMiss(token=word, clause=clause_name))
                ok = False
        return ok

    def render(clause: Clause) -> None:
        body = clause.body
        label = f"[{clause.name}]"
        if isinstance(body, Composite):
            line = label
            if body.guard is not None:
                line += f" if {_guard_phrase(body.guard)}, then"
            line += f" {_HEADERS[body.connective]}"
            if body.reparation is not None:
                line += f" otherwise [{body.reparation}] applies"
            blocks.append(line)
            for child in body.children:
                render(child)
            return
        if isinstance(body, Declaration):
            line = f"{label} {body.text}".rstrip()
            if body.time is not None:
                line += f" {_time_phrase(body.time)}"
            blocks.append(line)
            return
        phrase = body.agent.name.replace("_", " ")
        words = " ".join(p for p in (phrase, body.action.verb, body.action.object) if p)
        if not check_words(clause.name, words):
            return
        line = f"{label}"
        if body.guard is not None:
            line += f" if {_guard_phrase(body.guard)}, then"
        line += f" the {phrase} {_MODAL[body.modality]} {body.action.label}".rstrip()
        if body.time is not None:
            line += f" {_time_phrase(body.time)}"
        if body.reparation is not None:
            line += f"; otherwise [{body.reparation}] applies"
        blocks.append(line)

    for clause in model.clauses:
        render(clause)
    for clause in model.reparations:
        render(clause)
    text = "\n".join(blocks) + ("\n" if blocks else "")
    return CnlResult(text=text, misses=tuple(misses))
