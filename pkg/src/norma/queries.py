"""Query templates over contract models.

Ten English templates with typed slots: templates 1-6 are syntactic
(predicate filtering over the clause tree), templates 7-10 are semantic
(translated to a timed-automata property and checked). Slot completions
come from the model's own vocabulary. Answers are phrased naturally: up
to two matches are inlined, three or more become bullets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .checker import Verdict, check
from .errors import NormaError
from .model import (
    Atomic,
    ContractModel,
    collect_actions,
    collect_agents,
    guard_refs,
    iter_atomics,
    iter_clauses,
)
from .nta import TaNetwork, encode_property, translate


class SlotKind(Enum):
    AGENT = "agent"
    ACTION = "action"
    CLAUSE = "clause"
    NUMBER = "number"


@dataclass(frozen=True)
class Slot:
    name: str
    kind: SlotKind


@dataclass(frozen=True)
class QueryTemplate:
    id: int
    kind: str  # "syntactic" | "semantic"
    sentence: str
    slots: tuple[Slot, ...]


@dataclass(frozen=True)
class QueryInstance:
    template: int
    bindings: dict[str, str]


@dataclass(frozen=True)
class QueryResult:
    matches: tuple[str, ...]
    answer: str


_AGENT = Slot("agent", SlotKind.AGENT)
_ACTION = Slot("action", SlotKind.ACTION)
_CLAUSE = Slot("clause", SlotKind.CLAUSE)
_NUMBER = Slot("number", SlotKind.NUMBER)

TEMPLATES: tuple[QueryTemplate, ...] = (
    QueryTemplate(1, "syntactic", "What are the obligations of {agent}?", (_AGENT,)),
    QueryTemplate(2, "syntactic", "What are the permissions of {agent}?", (_AGENT,)),
    QueryTemplate(3, "syntactic", "What are the prohibitions of {agent}?", (_AGENT,)),
    QueryTemplate(4, "syntactic", "Who may or must {action}?", (_ACTION,)),
    QueryTemplate(5, "syntactic", "Which clauses have a reparation?", ()),
    QueryTemplate(6, "syntactic", "Which clauses are guarded by {clause}?", (_CLAUSE,)),
    QueryTemplate(7, "semantic", "The {agent} must {action} before time {number}.",
                  (_AGENT, _ACTION, _NUMBER)),
    QueryTemplate(8, "semantic", "Can {agent} avoid {action} and still complete the contract?",
                  (_AGENT, _ACTION)),
    QueryTemplate(9, "semantic", "Can the whole contract be completed?", ()),
    QueryTemplate(10, "semantic",
                  "Is {action} by {agent} ever simultaneously obliged and forbidden?",
                  (_ACTION, _AGENT)),
)


def list_templates() -> list[QueryTemplate]:
    return list(TEMPLATES)


def get_template(template_id: int) -> QueryTemplate:
    for template in TEMPLATES:
        if template.id == template_id:
            return template
    raise NormaError("UNKNOWN_TEMPLATE", f"no query template {template_id}")


def complete_slots(model: ContractModel, template: QueryTemplate) -> dict[str, list[str]]:
    """Per-slot completion lists, sorted and deduplicated."""
    out: dict[str, list[str]] = {}
    for slot in template.slots:
        if slot.kind is SlotKind.AGENT:
            out[slot.name] = [a.name for a in collect_agents(model)]
        elif slot.kind is SlotKind.ACTION:
            out[slot.name] = [a.label for a in collect_actions(model)]
        elif slot.kind is SlotKind.CLAUSE:
            out[slot.name] = sorted(c.name for c in iter_clauses(model))
        else:
            out[slot.name] = []
    return out


# --- syntactic predicates ------------------------------------------------


@dataclass(frozen=True)
class IsObl:
    pass


@dataclass(frozen=True)
class IsPerm:
    pass


@dataclass(frozen=True)
class IsForb:
    pass


@dataclass(frozen=True)
class AgentOf:
    agent: str


@dataclass(frozen=True)
class ActionOf:
    action: str


@dataclass(frozen=True)
class HasReparation:
    pass


@dataclass(frozen=True)
class HasTimeConstraint:
    pass


@dataclass(frozen=True)
class GuardedBy:
    clause: str


@dataclass(frozen=True)
class PredAnd:
    left: "Predicate"
    right: "Predicate"


Predicate = (
    IsObl | IsPerm | IsForb | AgentOf | ActionOf
    | HasReparation | HasTimeConstraint | GuardedBy | PredAnd
)


def eval_predicate(pred: Predicate, body: Atomic) -> bool:
    """Evaluate a predicate on one atomic clause body."""
    if isinstance(pred, IsObl):
        return body.modality.value == "O"
    if isinstance(pred, IsPerm):
        return body.modality.value == "P"
    if isinstance(pred, IsForb):
        return body.modality.value == "F"
    if isinstance(pred, AgentOf):
        return body.agent.name == pred.agent
    if isinstance(pred, ActionOf):
        return body.action.label == pred.action
    if isinstance(pred, HasReparation):
        return body.reparation is not None
    if isinstance(pred, HasTimeConstraint):
        return body.time is not None
    if isinstance(pred, GuardedBy):
        return body.guard is not None and pred.clause in guard_refs(body.guard)
    return eval_predicate(pred.left, body) and eval_predicate(pred.right, body)


_STEM = {
    1: "The following are obligations of {agent}:",
    2: "The following are permissions of {agent}:",
    3: "The following are prohibitions of {agent}:",
    4: "The following agents may or must {action}:",
    5: "The following actions carry reparations:",
    6: "The following actions are guarded by [{clause}]:",
}


def _validate_bindings(model: ContractModel, template: QueryTemplate,
                       bindings: dict[str, str]) -> None:
    agents = {a.name for a in collect_agents(model)}
    actions = {a.label for a in collect_actions(model)}
    names = {c.name for c in iter_clauses(model)}
    for slot in template.slots:
        if slot.name not in bindings:
            raise NormaError("MISSING_BINDING", f"slot {slot.name!r} is unbound")
        value = bindings[slot.name]
        if slot.kind is SlotKind.AGENT and value not in agents:
            raise NormaError("UNKNOWN_AGENT", f"agent {value!r} not in the model")
        if slot.kind is SlotKind.ACTION and value not in actions:
            raise NormaError("UNKNOWN_ACTION", f"action {value!r} not in the model")
        if slot.kind is SlotKind.CLAUSE and value not in names:
            raise NormaError("UNKNOWN_CLAUSE", f"clause {value!r} not in the model")
        if slot.kind is SlotKind.NUMBER and not value.isdigit():
            raise NormaError("BAD_NUMBER", f"slot {slot.name!r} needs a natural number")


def predicate_for(template_id: int, bindings: dict[str, str]) -> Predicate:
    if template_id == 1:
        return PredAnd(IsObl(), AgentOf(bindings["agent"]))
    if template_id == 2:
        return PredAnd(IsPerm(), AgentOf(bindings["agent"]))
    if template_id == 3:
        return PredAnd(IsForb(), AgentOf(bindings["agent"]))
    if template_id == 4:
        return ActionOf(bindings["action"])
    if template_id == 5:
        return HasReparation()
    if template_id == 6:
        return GuardedBy(bindings["clause"])
    raise NormaError("UNKNOWN_TEMPLATE", f"template {template_id} is not a syntactic query")


def run_syntactic(model: ContractModel, instance: QueryInstance) -> QueryResult:
    template = get_template(instance.template)
    if template.kind != "syntactic":
        raise NormaError("UNKNOWN_TEMPLATE",
                         f"template {template.id} is not a syntactic query")
    _validate_bindings(model, template, instance.bindings)
    pred = predicate_for(template.id, instance.bindings)
    matched = [c for c in iter_atomics(model) if eval_predicate(pred, c.body)]
    items = [
        c.body.agent.name if template.id == 4 else c.body.action.label for c in matched
    ]
    stem = _STEM[template.id].format(**instance.bindings)
    if not items:
        answer = "There are none."
    elif len(items) <= 2:
        answer = f"{stem} {' and '.join(items)}."
    else:
        answer = stem + "\n" + "\n".join(f"- {item}" for item in items)
    return QueryResult(matches=tuple(c.name for c in matched), answer=answer)


def run_semantic(
    model: ContractModel,
    instance: QueryInstance,
    horizon: int | None = None,
    state_limit: int | None = None,
    network: TaNetwork | None = None,
) -> Verdict:
    template = get_template(instance.template)
    if template.kind != "semantic":
        raise NormaError("UNKNOWN_TEMPLATE",
                         f"template {template.id} is not a semantic query")
    _validate_bindings(model, template, instance.bindings)
    if network is None:
        network = translate(model)
    prop = encode_property(template.id, instance.bindings, network)
    kwargs = {"horizon": horizon}
    if state_limit is not None:
        kwargs["state_limit"] = state_limit
    return check(network, prop, **kwargs)


# --- canonical JSON (shared by CLI and service) --------------------------


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def parse_instance(payload) -> QueryInstance:
    if not isinstance(payload, dict) or "template" not in payload:
        raise NormaError("BAD_QUERY", "query must be {template: int, bindings: {...}}")
    template = payload["template"]
    if not isinstance(template, int):
        raise NormaError("BAD_QUERY", "template id must be an integer")
    bindings = payload.get("bindings", {})
    if not isinstance(bindings, dict):
        raise NormaError("BAD_QUERY", "bindings must be an object")
    return QueryInstance(template=template, bindings={str(k): str(v) for k, v in bindings.items()})


def result_payload(result: QueryResult) -> dict:
    return {"matches": list(result.matches), "answer": result.answer}


def verdict_payload(verdict: Verdict) -> dict:
    trace = None
    if verdict.trace is not None:
        trace = [
            {"agent": s.agent, "action": s.action, "time": s.time} for s in verdict.trace
        ]
    return {"outcome": verdict.outcome, "trace": trace}


def templates_payload() -> list[dict]:
    return [
        {
            "id": t.id,
            "kind": t.kind,
            "sentence": t.sentence,
            "slots": [{"name": s.name, "kind": s.kind.value} for s in t.slots],
        }
        for t in TEMPLATES
    ]
