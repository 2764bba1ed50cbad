"""COML: the XML persistence format for contract models.

The schema is deliberately small and diff-friendly:

    <contract title="...">
      <clause name="c1" kind="atomic">
        <agent>student</agent>
        <modality>O</modality>
        <action verb="register" object="for course"/>
        <time high="7" strict="true"/>
        <guard><done ref="c2"/></guard>
        <reparation ref="r1"/>
      </clause>
      <clause name="c2" kind="composite" connective="and"> ... </clause>
      <clause name="c3" kind="declaration"><text>...</text></clause>
      <reparations> ... </reparations>
    </contract>

``emit_coml`` is deterministic (fixed attribute order, 2-space indent,
UTF-8, trailing newline) and ``parse_coml(emit_coml(m))`` reproduces the
model exactly.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

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

_CONNECTIVE_CODES = {c.value: c for c in Connective}
_MODALITY_CODES = {m.value: m for m in Modality}


def _esc_text(value: str) -> str:
    out = value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    # Literal CR would be folded to LF by XML line-end normalisation.
    return out.replace("\r", "&#13;")


def _esc_attr(value: str) -> str:
    out = _esc_text(value).replace('"', "&quot;")
    # Numeric references survive XML attribute-value normalisation.
    return out.replace("\n", "&#10;").replace("\t", "&#9;").replace("\r", "&#13;")


def emit_coml(model: ContractModel) -> str:
    """Serialize a valid model to COML text."""
    diags = validate(model)
    if diags:
        first = diags[0]
        raise NormaError("INVARIANT_VIOLATION", first.message, location=first.clause)

    lines: list[str] = ['<?xml version="1.0" encoding="UTF-8"?>']
    if not model.clauses and not model.reparations:
        lines.append(f'<contract title="{_esc_attr(model.title)}"/>')
        return "\n".join(lines) + "\n"

    lines.append(f'<contract title="{_esc_attr(model.title)}">')
    for clause in model.clauses:
        _emit_clause(lines, clause, 1)
    if model.reparations:
        lines.append("  <reparations>")
        for clause in model.reparations:
            _emit_clause(lines, clause, 2)
        lines.append("  </reparations>")
    lines.append("</contract>")
    return "\n".join(lines) + "\n"


def _emit_time(lines: list[str], time: TimeExpr, pad: str) -> None:
    attrs = []
    if time.low is not None:
        attrs.append(f'low="{time.low}"')
    if time.high is not None:
        attrs.append(f'high="{time.high}"')
    if time.strict_high:
        attrs.append('strict="true"')
    if time.ref is not None:
        attrs.append(f'ref="{_esc_attr(time.ref)}"')
    lines.append(f"{pad}<time {' '.join(attrs)}/>")


def _emit_guard(lines: list[str], guard: GuardExpr, pad: str) -> None:
    if isinstance(guard, Done):
        lines.append(f'{pad}<done ref="{_esc_attr(guard.ref)}"/>')
    elif isinstance(guard, Violated):
        lines.append(f'{pad}<violated ref="{_esc_attr(guard.ref)}"/>')
    elif isinstance(guard, Not):
        lines.append(f"{pad}<not>")
        _emit_guard(lines, guard.inner, pad + "  ")
        lines.append(f"{pad}</not>")
    else:
        tag = "and" if isinstance(guard, And) else "or"
        lines.append(f"{pad}<{tag}>")
        _emit_guard(lines, guard.left, pad + "  ")
        _emit_guard(lines, guard.right, pad + "  ")
        lines.append(f"{pad}</{tag}>")


def _emit_clause(lines: list[str], clause: Clause, depth: int) -> None:
    pad = "  " * depth
    inner = pad + "  "
    body = clause.body
    if isinstance(body, Atomic):
        lines.append(f'{pad}<clause name="{_esc_attr(clause.name)}" kind="atomic">')
        lines.append(f"{inner}<agent>{_esc_text(body.agent.name)}</agent>")
        lines.append(f"{inner}<modality>{body.modality.value}</modality>")
        lines.append(
            f'{inner}<action verb="{_esc_attr(body.action.verb)}"'
            f' object="{_esc_attr(body.action.object)}"/>'
        )
        if body.time is not None:
            _emit_time(lines, body.time, inner)
        if body.guard is not None:
            lines.append(f"{inner}<guard>")
            _emit_guard(lines, body.guard, inner + "  ")
            lines.append(f"{inner}</guard>")
        if body.reparation is not None:
            lines.append(f'{inner}<reparation ref="{_esc_attr(body.reparation)}"/>')
        lines.append(f"{pad}</clause>")
    elif isinstance(body, Declaration):
        lines.append(f'{pad}<clause name="{_esc_attr(clause.name)}" kind="declaration">')
        lines.append(f"{inner}<text>{_esc_text(body.text)}</text>")
        if body.time is not None:
            _emit_time(lines, body.time, inner)
        lines.append(f"{pad}</clause>")
    else:
        lines.append(
            f'{pad}<clause name="{_esc_attr(clause.name)}" kind="composite"'
            f' connective="{body.connective.value}">'
        )
        for child in body.children:
            _emit_clause(lines, child, depth + 1)
        if body.guard is not None:
            lines.append(f"{inner}<guard>")
            _emit_guard(lines, body.guard, inner + "  ")
            lines.append(f"{inner}</guard>")
        if body.reparation is not None:
            lines.append(f'{inner}<reparation ref="{_esc_attr(body.reparation)}"/>')
        lines.append(f"{pad}</clause>")


def parse_coml(xml_text: str) -> ContractModel:
    """Parse COML text into a validated model."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise NormaError("XML_MALFORMED", str(exc)) from None
    if root.tag != "contract":
        raise NormaError("SCHEMA_VIOLATION", f"root element is <{root.tag}>, expected <contract>",
                         location="/" + root.tag)

    title = root.get("title", "")
    clauses: list[Clause] = []
    reparations: list[Clause] = []
    for i, child in enumerate(root):
        path = f"/contract/*[{i + 1}]"
        if child.tag == "clause":
            clauses.append(_parse_clause(child, path))
        elif child.tag == "reparations":
            for j, rep in enumerate(child):
                rpath = f"{path}/*[{j + 1}]"
                if rep.tag != "clause":
                    raise NormaError("SCHEMA_VIOLATION", f"unexpected <{rep.tag}>", location=rpath)
                reparations.append(_parse_clause(rep, rpath))
        else:
            raise NormaError("SCHEMA_VIOLATION", f"unexpected <{child.tag}>", location=path)

    model = ContractModel(title=title, clauses=tuple(clauses), reparations=tuple(reparations))
    diags = validate(model)
    if diags:
        first = diags[0]
        raise NormaError("SCHEMA_VIOLATION", f"{first.code}: {first.message}",
                         location=first.clause)
    return model


def _parse_time(elem: ET.Element, path: str) -> TimeExpr:
    def bound(attr: str) -> int | None:
        raw = elem.get(attr)
        if raw is None:
            return None
        try:
            return int(raw)
        except ValueError:
            raise NormaError("SCHEMA_VIOLATION", f"bad {attr}={raw!r}", location=path) from None

    ref = elem.get("ref")
    return TimeExpr(
        kind=TimeKind.RELATIVE if ref is not None else TimeKind.ABSOLUTE,
        low=bound("low"),
        high=bound("high"),
        strict_high=elem.get("strict") == "true",
        ref=ref,
    )


def _parse_guard(elem: ET.Element, path: str) -> GuardExpr:
    tag = elem.tag
    if tag in ("done", "violated"):
        ref = elem.get("ref")
        if not ref:
            raise NormaError("SCHEMA_VIOLATION", f"<{tag}> needs a ref", location=path)
        return Done(ref) if tag == "done" else Violated(ref)
    kids = list(elem)
    if tag == "not":
        if len(kids) != 1:
            raise NormaError("SCHEMA_VIOLATION", "<not> needs one operand", location=path)
        return Not(_parse_guard(kids[0], path + "/not"))
    if tag in ("and", "or"):
        if len(kids) != 2:
            raise NormaError("SCHEMA_VIOLATION", f"<{tag}> needs two operands", location=path)
        left = _parse_guard(kids[0], f"{path}/{tag}")
        right = _parse_guard(kids[1], f"{path}/{tag}")
        return And(left, right) if tag == "and" else Or(left, right)
    raise NormaError("SCHEMA_VIOLATION", f"unknown guard element <{tag}>", location=path)


def _parse_clause(elem: ET.Element, path: str) -> Clause:
    name = elem.get("name", "")
    kind = elem.get("kind")
    fields: dict[str, ET.Element] = {}
    children: list[Clause] = []
    for i, child in enumerate(elem):
        if child.tag == "clause":
            children.append(_parse_clause(child, f"{path}/clause[{i + 1}]"))
        elif child.tag in ("agent", "modality", "action", "time", "guard", "reparation", "text"):
            if child.tag in fields:
                raise NormaError("SCHEMA_VIOLATION", f"duplicate <{child.tag}>", location=path)
            fields[child.tag] = child
        else:
            raise NormaError("SCHEMA_VIOLATION", f"unexpected <{child.tag}>", location=path)

    time = _parse_time(fields["time"], path + "/time") if "time" in fields else None
    guard = None
    if "guard" in fields:
        kids = list(fields["guard"])
        if len(kids) != 1:
            raise NormaError("SCHEMA_VIOLATION", "<guard> needs one expression", location=path)
        guard = _parse_guard(kids[0], path + "/guard")
    reparation = fields["reparation"].get("ref") if "reparation" in fields else None

    if kind == "atomic":
        for required in ("agent", "modality", "action"):
            if required not in fields:
                raise NormaError("SCHEMA_VIOLATION", f"atomic clause lacks <{required}>",
                                 location=path)
        mod_code = (fields["modality"].text or "").strip()
        if mod_code not in _MODALITY_CODES:
            raise NormaError("SCHEMA_VIOLATION", f"unknown modality {mod_code!r}", location=path)
        body: object = Atomic(
            agent=Agent((fields["agent"].text or "").strip()),
            modality=_MODALITY_CODES[mod_code],
            action=Action(
                verb=fields["action"].get("verb", ""),
                object=fields["action"].get("object", ""),
            ),
            time=time,
            guard=guard,
            reparation=reparation,
        )
    elif kind == "declaration":
        if "text" not in fields:
            raise NormaError("SCHEMA_VIOLATION", "declaration lacks <text>", location=path)
        if guard is not None or reparation is not None:
            raise NormaError("SCHEMA_VIOLATION", "declaration takes no guard/reparation",
                             location=path)
        body = Declaration(text=fields["text"].text or "", time=time)
    elif kind == "composite":
        code = elem.get("connective", "")
        if code not in _CONNECTIVE_CODES:
            raise NormaError("SCHEMA_VIOLATION", f"unknown connective {code!r}", location=path)
        if time is not None:
            raise NormaError("SCHEMA_VIOLATION", "composite takes no time", location=path)
        body = Composite(
            connective=_CONNECTIVE_CODES[code],
            children=tuple(children),
            guard=guard,
            reparation=reparation,
        )
    else:
        raise NormaError("SCHEMA_VIOLATION", f"unknown clause kind {kind!r}", location=path)

    if kind != "composite" and children:
        raise NormaError("SCHEMA_VIOLATION", "only composites nest clauses", location=path)
    return Clause(name=name, body=body)
