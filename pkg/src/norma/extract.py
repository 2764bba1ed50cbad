"""Rule-based clause extraction from English text.

Deterministic surface patterns stand in for a full parser: ordered marker
patterns pick the modality (first matching pattern wins, never guessed),
the noun phrase before the marker supplies the agent, the words after it
supply verb and object, and temporal phrases are moved to the time
column. Extraction is best-effort by design; empty cells mean "needs
post-editing". The default rules can be overridden with a config file of
``pattern<TAB>code`` lines, where code is a modality letter (replacing
the default markers) or ``TIME <template>`` (tried before the default
temporal patterns; ``{n}`` in the template is the captured number, weeks
already multiplied by 7).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .tsv import ClauseRow, TsvTable

_NUM_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10,
}
_NUM = r"(\d+|one|two|three|four|five|six|seven|eight|nine|ten)"


def _num(token: str) -> int:
    return _NUM_WORDS.get(token.lower(), 0) if not token.isdigit() else int(token)


DEFAULT_MODALITY_MARKERS: tuple[tuple[str, str], ...] = (
    (r"\bmust not\b", "F"),
    (r"\bmay not\b", "F"),
    (r"\bshall not\b", "F"),
    (r"\bis not allowed\b", "F"),
    (r"\bare not allowed\b", "F"),
    (r"\bmust\b", "O"),
    (r"\bshall\b", "O"),
    (r"\bneeds? to\b", "O"),
    (r"\bshould\b", "O"),
    (r"\b(?:is|are) required to\b", "O"),
    (r"\bwill have\b", "P"),
    (r"\bmay\b", "P"),
    (r"\bcan\b", "P"),
    (r"\b(?:is|are) allowed to\b", "P"),
    (r"\bwill\b", "D"),
    (r"\bis\b", "D"),
    (r"\bare\b", "D"),
)

# Temporal rules: (pattern, kind, template). Kinds:
#   plain     -> template with {n} (weeks normalised to days)
#   prev_ref  -> "within N of <previous top-level clause>"
#   sched_ref -> N before the latest declared schedule ("in [k,k]" row)
DEFAULT_TEMPORAL_PATTERNS: tuple[tuple[str, str, str], ...] = (
    (
        rf"\bbefore the \w+ deadline,?\s+{_NUM} (weeks?|days?) after the course has started",
        "plain",
        "< {n}",
    ),
    (rf",?\s*{_NUM} (weeks?|days?) after the course has started", "plain", "<= {n}"),
    (rf"\bwithin {_NUM} (weeks?|days?) of [a-z][\w ]*", "prev_ref", "within {n} of {ref}"),
    (rf"\bwithin {_NUM} (weeks?|days?)", "plain", "< {n}"),
    (rf"\buntil [\w ]*?on day {_NUM}", "plain", "<= {n}"),
    (rf"\blatest {_NUM} (weeks?|days?) before [a-z][\w ]*", "sched_ref", "<= {n}"),
    (rf"\bbefore day {_NUM}", "plain", "< {n}"),
    (rf"\bby day {_NUM}", "plain", "<= {n}"),
    (rf"\bon day {_NUM}", "plain", "in [{n},{n}]"),
)


@dataclass(frozen=True)
class RuleSet:
    modality_markers: tuple[tuple[str, str], ...] = DEFAULT_MODALITY_MARKERS
    temporal_patterns: tuple[tuple[str, str, str], ...] = DEFAULT_TEMPORAL_PATTERNS


DEFAULT_RULES = RuleSet()


def load_rules(text: str) -> RuleSet:
    """Build a RuleSet from ``pattern<TAB>code`` lines over the defaults."""
    markers: list[tuple[str, str]] = []
    temporal: list[tuple[str, str, str]] = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        pattern, _, code = line.partition("\t")
        code = code.strip()
        if code in ("O", "P", "F", "D"):
            markers.append((pattern, code))
        elif code.startswith("TIME "):
            temporal.append((pattern, "plain", code[5:]))
    return RuleSet(
        modality_markers=tuple(markers) or DEFAULT_MODALITY_MARKERS,
        temporal_patterns=tuple(temporal) + DEFAULT_TEMPORAL_PATTERNS,
    )


_ABBREVIATIONS = ("e.g.", "i.e.")


def split_sentences(text: str) -> list[str]:
    """Split text on sentence-final punctuation; protects e.g./i.e."""
    guarded = text
    for i, abbr in enumerate(_ABBREVIATIONS):
        guarded = guarded.replace(abbr, f"\x00{i}\x00")
    parts = re.split(r"(?<=[.!?])\s+", guarded.strip())
    sentences = []
    for part in parts:
        for i, abbr in enumerate(_ABBREVIATIONS):
            part = part.replace(f"\x00{i}\x00", abbr)
        part = part.strip()
        if part:
            sentences.append(part)
    return sentences


_ARTICLES = {"the", "a", "an"}
_LEAD_SUBORDINATE = re.compile(r"^(?:to|if|when|once|unless|after|before)\b[^,]*,\s*", re.I)


def _singular(word: str) -> str:
    word = word.lower()
    if word.endswith("s") and not word.endswith(("ss", "us", "is")) and len(word) > 3:
        return word[:-1]
    return word


def _agent_of(pre_text: str) -> str:
    pre_text = _LEAD_SUBORDINATE.sub("", pre_text).strip()
    words = re.findall(r"[A-Za-z][\w-]*", pre_text)
    if not words:
        return ""
    return re.sub(r"[^a-z0-9_]", "", _singular(words[-1]))


def _strip_articles(phrase: str) -> str:
    words = [w for w in phrase.split() if w.lower() not in _ARTICLES]
    return " ".join(words)


def _verb_object(predicate: str) -> tuple[str, str]:
    predicate = predicate.strip().strip(".!?,;").strip()
    predicate = re.sub(r"^(?:to|be)\s+", "", predicate, flags=re.I)
    words = predicate.split()
    if not words:
        return "", ""
    verb = re.sub(r"[^a-z0-9_]", "", words[0].lower())
    obj = _strip_articles(" ".join(words[1:])).strip().strip(".!?,;")
    return verb, obj


_BOTH_AND = re.compile(r"^(?P<verb>[\w-]+)\s+both\s+(?P<x>.+?)\s+and\s+(?P<y>.+)$", re.I)
_EITHER_OR = re.compile(r"^(?P<verb>[\w-]+)\s+either\s+(?P<x>.+?)\s+or\s+(?P<y>.+)$", re.I)
_THEN = re.compile(r",?\s*(?:and\s+)?then\s+", re.I)


def _apply_temporal(rest: str, rules: RuleSet, context: list[ClauseRow]) -> tuple[str, str]:
    """Extract the first matching temporal phrase; returns (time, rest)."""
    for pattern, kind, template in rules.temporal_patterns:
        m = re.search(pattern, rest, re.I)
        if m is None:
            continue
        n = _num(m.group(1))
        if m.lastindex and m.lastindex >= 2 and m.group(2).lower().startswith("week"):
            n *= 7
        remainder = (rest[: m.start()] + " " + rest[m.end():]).strip()
        if kind == "plain":
            return template.format(n=n), remainder
        if kind == "prev_ref":
            if not context:
                return f"< {n}", remainder
            return template.format(n=n, ref="c" + context[-1].id), remainder
        if kind == "sched_ref":
            for row in reversed(context):
                sched = re.fullmatch(r"in \[(\d+),(\d+)\]", row.time)
                if row.modality == "D" and sched:
                    return template.format(n=max(int(sched.group(1)) - n, 0)), remainder
            return "", remainder
    return "", rest


def extract(text: str, rules: RuleSet = DEFAULT_RULES) -> TsvTable:
    """Extract one top-level clause row per sentence, best effort."""
    rows: list[ClauseRow] = []
    top_rows: list[ClauseRow] = []
    for i, sentence in enumerate(split_sentences(text), 1):
        row_id = str(i)
        modality = ""
        marker = None
        for pattern, code in rules.modality_markers:
            m = re.search(pattern, sentence, re.I)
            if m is not None:
                modality, marker = code, m
                break

        agent = ""
        time = ""
        sub_parts: list[tuple[str, str]] = []
        verb, obj, connective = "", "", ""
        if marker is not None:
            pre, post = sentence[: marker.start()], sentence[marker.end():]
            time, post = _apply_temporal(post, rules, top_rows)
            if modality != "D":
                agent = _agent_of(pre)
                predicate = post.strip().strip(".!?,;").strip()
                predicate = re.sub(r"^(?:to|be)\s+", "", predicate, flags=re.I)
                both = _BOTH_AND.match(predicate)
                either = _EITHER_OR.match(predicate)
                if both or either:
                    m2 = both or either
                    connective = "AND" if both else "OR"
                    shared = re.sub(r"[^a-z0-9_]", "", m2.group("verb").lower())
                    for part in (m2.group("x"), m2.group("y")):
                        sub_parts.append((shared, _strip_articles(part).strip(".!?,; ")))
                elif _THEN.search(predicate):
                    connective = "SEQ"
                    for part in _THEN.split(predicate):
                        sub_parts.append(_verb_object(part))
                else:
                    verb, obj = _verb_object(predicate)
        else:
            time, _ = _apply_temporal(sentence, rules, top_rows)

        parent = ClauseRow(
            id=row_id,
            text=sentence,
            agent=agent,
            modality=modality,
            verb="" if sub_parts else verb,
            object="" if sub_parts else obj,
            connective=connective,
            time="" if sub_parts else time,
        )
        rows.append(parent)
        top_rows.append(parent)
        for k, (sub_verb, sub_obj) in enumerate(sub_parts, 1):
            rows.append(
                ClauseRow(
                    id=f"{row_id}.{k}",
                    agent=agent,
                    modality=modality,
                    verb=sub_verb,
                    object=sub_obj,
                    time=time,
                )
            )
    return TsvTable(rows=tuple(rows))
