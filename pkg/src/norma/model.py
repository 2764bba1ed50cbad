"""Deontic contract model: agents, actions, modalities, clauses.

A contract is a tree of named clauses. Atomic clauses state that an agent
is obliged (O), permitted (P) or forbidden (F) to perform an action,
optionally inside a time window, optionally guarded on the status of
other clauses, optionally with a reparation clause that activates if this
one is violated. Declarations are scheduled facts without normative force.
Composites refine a clause into sub-clauses joined by conjunction, choice
or sequence.

All types are immutable values; the operations here are pure functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator, Union

from .errors import Diagnostic, NormaError

TOKEN_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class Modality(Enum):
    OBLIGATION = "O"
    PERMISSION = "P"
    PROHIBITION = "F"


class Connective(Enum):
    CONJUNCTION = "and"
    CHOICE = "or"
    SEQUENCE = "seq"


class TimeKind(Enum):
    ABSOLUTE = "absolute"
    RELATIVE = "relative"


@dataclass(frozen=True, order=True)
class Agent:
    name: str


@dataclass(frozen=True)
class Action:
    verb: str
    object: str = ""

    @property
    def label(self) -> str:
        """Canonical action label: verb and object joined by one space."""
        return " ".join((self.verb + " " + self.object).split())


@dataclass(frozen=True)
class TimeExpr:
    """A time window in abstract whole-number time units ("days").

    Absolute windows constrain global time; relative windows constrain
    time elapsed since the referenced clause completed. ``strict_high``
    makes the upper bound exclusive (deadline phrased "within"/"before").
    """

    kind: TimeKind = TimeKind.ABSOLUTE
    low: int | None = None
    high: int | None = None
    strict_high: bool = False
    ref: str | None = None


# Guard expression atoms and combinators (status of other clauses only).


@dataclass(frozen=True)
class Done:
    ref: str


@dataclass(frozen=True)
class Violated:
    ref: str


@dataclass(frozen=True)
class Not:
    inner: "GuardExpr"


@dataclass(frozen=True)
class And:
    left: "GuardExpr"
    right: "GuardExpr"


@dataclass(frozen=True)
class Or:
    left: "GuardExpr"
    right: "GuardExpr"


GuardExpr = Union[Done, Violated, Not, And, Or]


def guard_refs(guard: GuardExpr) -> set[str]:
    """All clause names referenced anywhere in a guard expression."""
    if isinstance(guard, (Done, Violated)):
        return {guard.ref}
    if isinstance(guard, Not):
        return guard_refs(guard.inner)
    return guard_refs(guard.left) | guard_refs(guard.right)


@dataclass(frozen=True)
class Atomic:
    agent: Agent
    modality: Modality
    action: Action
    time: TimeExpr | None = None
    guard: GuardExpr | None = None
    reparation: str | None = None


@dataclass(frozen=True)
class Declaration:
    text: str
    time: TimeExpr | None = None


@dataclass(frozen=True)
class Composite:
    connective: Connective
    children: tuple["Clause", ...]
    guard: GuardExpr | None = None
    reparation: str | None = None


Body = Union[Atomic, Declaration, Composite]


@dataclass(frozen=True)
class Clause:
    name: str
    body: Body


@dataclass(frozen=True)
class ContractModel:
    title: str = ""
    clauses: tuple[Clause, ...] = ()
    reparations: tuple[Clause, ...] = ()


def iter_clauses(model: ContractModel) -> Iterator[Clause]:
    """Every clause in document order: main tree first, then reparations."""

    def walk(clause: Clause) -> Iterator[Clause]:
        yield clause
        if isinstance(clause.body, Composite):
            for child in clause.body.children:
                yield from walk(child)

    for top in model.clauses:
        yield from walk(top)
    for rep in model.reparations:
        yield from walk(rep)


def iter_atomics(model: ContractModel) -> Iterator[Clause]:
    for clause in iter_clauses(model):
        if isinstance(clause.body, Atomic):
            yield clause


def clause_index(model: ContractModel) -> dict[str, Clause]:
    return {c.name: c for c in iter_clauses(model)}


def _check_time(diags: list[Diagnostic], name: str, time: TimeExpr) -> None:
    if time.low is None and time.high is None:
        diags.append(Diagnostic("BAD_TIME", name, "time window has no bounds"))
    if time.low is not None and time.high is not None and time.low > time.high:
        diags.append(
            Diagnostic("BAD_TIME", name, f"low bound {time.low} exceeds high bound {time.high}")
        )
    for bound in (time.low, time.high):
        if bound is not None and bound < 0:
            diags.append(Diagnostic("BAD_TIME", name, "bounds must be natural numbers"))
    if (time.ref is not None) != (time.kind is TimeKind.RELATIVE):
        diags.append(
            Diagnostic("BAD_TIME", name, "ref is required for relative windows and only those")
        )


def validate(model: ContractModel) -> list[Diagnostic]:
    """Check every model invariant; an empty list means the model is valid."""
    diags: list[Diagnostic] = []
    seen: dict[str, int] = {}
    for clause in iter_clauses(model):
        seen[clause.name] = seen.get(clause.name, 0) + 1
    for name, count in seen.items():
        if count > 1:
            diags.append(Diagnostic("DUPLICATE_NAME", name, f"name used {count} times"))
    names = set(seen)
    reparation_names = {c.name for c in model.reparations}

    referenced_reps: set[str] = set()
    for clause in iter_clauses(model):
        name = clause.name
        if not TOKEN_RE.match(name):
            diags.append(Diagnostic("BAD_NAME", name, "clause name must match [a-z][a-z0-9_]*"))
        body = clause.body
        if isinstance(body, Atomic):
            if not TOKEN_RE.match(body.agent.name):
                diags.append(Diagnostic("BAD_NAME", name, f"bad agent token {body.agent.name!r}"))
            if not TOKEN_RE.match(body.action.verb):
                diags.append(Diagnostic("BAD_NAME", name, f"bad verb token {body.action.verb!r}"))
        if isinstance(body, Composite) and len(body.children) < 2:
            diags.append(Diagnostic("TOO_FEW_CHILDREN", name, "composite needs >= 2 children"))
        time = getattr(body, "time", None)
        if time is not None:
            _check_time(diags, name, time)
            if time.ref is not None and time.ref not in names:
                diags.append(Diagnostic("UNRESOLVED_REF", name, f"time ref {time.ref!r} unknown"))
        guard = getattr(body, "guard", None)
        if guard is not None:
            refs = guard_refs(guard)
            if name in refs:
                diags.append(Diagnostic("SELF_GUARD", name, "guard refers to its own clause"))
            for ref in refs - names:
                diags.append(Diagnostic("UNRESOLVED_REF", name, f"guard ref {ref!r} unknown"))
        reparation = getattr(body, "reparation", None)
        if reparation is not None:
            referenced_reps.add(reparation)
            if reparation not in reparation_names:
                diags.append(
                    Diagnostic(
                        "UNRESOLVED_REF",
                        name,
                        f"reparation {reparation!r} is not a top-level reparation clause",
                    )
                )

    for rep in model.reparations:
        if rep.name not in referenced_reps:
            diags.append(
                Diagnostic("ORPHAN_REPARATION", rep.name, "reparation is never referenced")
            )

    # Reparation chains must be acyclic (carrier -> its reparation clause).
    edges: dict[str, set[str]] = {}
    for clause in iter_clauses(model):
        reparation = getattr(clause.body, "reparation", None)
        if reparation is not None:
            for rep_top in model.reparations:
                if rep_top.name == reparation:
                    owner = _owning_reparation(model, clause.name)
                    if owner is not None:
                        edges.setdefault(owner, set()).add(reparation)
    state: dict[str, int] = {}

    def has_cycle(node: str) -> bool:
        state[node] = 1
        for nxt in edges.get(node, ()):
            if state.get(nxt) == 1:
                return True
            if state.get(nxt, 0) == 0 and has_cycle(nxt):
                return True
        state[node] = 2
        return False

    for node in list(edges):
        if state.get(node, 0) == 0 and has_cycle(node):
            diags.append(Diagnostic("REPARATION_CYCLE", node, "reparation chain forms a cycle"))
            break

    return diags


def _owning_reparation(model: ContractModel, clause_name: str) -> str | None:
    """Name of the reparation tree containing clause_name, if any."""

    def contains(clause: Clause) -> bool:
        if clause.name == clause_name:
            return True
        if isinstance(clause.body, Composite):
            return any(contains(c) for c in clause.body.children)
        return False

    for rep in model.reparations:
        if contains(rep):
            return rep.name
    return None


def autoname(model: ContractModel) -> ContractModel:
    """Assign names to unnamed clauses.

    Top-level clauses get ``c<k>`` in document order; the i-th child of a
    composite gets ``<parent>_<i>`` (1-based). Existing names are kept.
    Raises NAME_COLLISION if a generated name is already taken by a
    user-supplied one.
    """
    taken = {c.name for c in iter_clauses(model) if c.name}

    def fresh(candidate: str) -> str:
        if candidate in taken:
            raise NormaError(
                "NAME_COLLISION", f"generated name {candidate!r} collides with an existing name"
            )
        taken.add(candidate)
        return candidate

    def rename(clause: Clause, candidate: str) -> Clause:
        name = clause.name or fresh(candidate)
        body = clause.body
        if isinstance(body, Composite):
            children = tuple(
                rename(child, f"{name}_{i}") for i, child in enumerate(body.children, 1)
            )
            body = replace(body, children=children)
        return Clause(name=name, body=body)

    clauses = tuple(rename(c, f"c{i}") for i, c in enumerate(model.clauses, 1))
    offset = len(model.clauses)
    reparations = tuple(
        rename(c, f"c{offset + i}") for i, c in enumerate(model.reparations, 1)
    )
    return replace(model, clauses=clauses, reparations=reparations)


def collect_agents(model: ContractModel) -> list[Agent]:
    """Sorted, deduplicated agents of all atomic clauses."""
    return sorted({c.body.agent for c in iter_atomics(model)})


def collect_actions(model: ContractModel) -> list[Action]:
    """Sorted (by label), deduplicated actions of all atomic clauses."""
    unique = {(c.body.action.verb, c.body.action.object): c.body.action for c in iter_atomics(model)}
    return sorted(unique.values(), key=lambda a: (a.label, a.verb))


def action_key(agent: Agent, action: Action) -> str:
    """Identifier-safe key ``agent_action`` used for clocks and channels."""
    raw = f"{agent.name}_{action.label}"
    key = re.sub(r"[^a-z0-9_]+", "_", raw.lower()).strip("_")
    return re.sub(r"_+", "_", key) or "action"
