"""Translation of contract models into a network of timed automata.

Every atomic clause, declaration and composite gets a small automaton over
the locations Inactive / Enabled / Done / Violated:

* an *activation* edge (urgent) moves Inactive -> Enabled as soon as the
  clause's enabling condition holds: its guard, its parent being active,
  its predecessor in a sequence being complete, the referenced clause of
  a relative window being done, or (for reparation clauses) the carrier
  being violated; activation resets the clause's local clock;
* obligations/permissions complete on their action channel within the
  time window; prohibitions are *violated* by the action instead;
* passing the deadline forces violation (obligations) or closes the
  window (permissions, prohibitions, declarations) without delay;
* composites resolve from their children: conjunction and sequence
  violate when a child is hopelessly violated (no reparation can save
  it) and complete when all children are effectively done; choice
  completes on the first completed child and deactivates the rest.

Global time lives in the never-reset clock ``t0``. Each action key
``agent_action`` owns one broadcast channel and one cell of the
``Clocks`` array, reset when the action is performed, so that
``t0 - Clocks[key]`` reads the absolute time of performance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NormaError
from .model import (
    And,
    Atomic,
    Clause,
    Composite,
    ContractModel,
    Declaration,
    Done,
    GuardExpr,
    Not,
    Or,
    TimeExpr,
    TimeKind,
    Violated,
    action_key,
    validate,
)

INACTIVE, ENABLED, DONE, VIOLATED = 0, 1, 2, 3
STATUS_NAMES = ("INACTIVE", "ENABLED", "DONE", "VIOLATED")


# --- guard condition atoms (conjunctions only; alternatives are edges) --


@dataclass(frozen=True)
class StatusCond:
    clause: str
    statuses: frozenset[int]


@dataclass(frozen=True)
class ClockCond:
    clock: str  # "t0" or "local"
    op: str  # "<", "<=", ">="
    bound: int


@dataclass(frozen=True)
class EffDoneCond:
    """Clause is done, or violated with its reparation effectively done."""

    clause: str


@dataclass(frozen=True)
class HopelessCond:
    """Clause is violated and no reparation chain can repair it."""

    clause: str


Cond = StatusCond | ClockCond | EffDoneCond | HopelessCond


@dataclass(frozen=True)
class TaEdge:
    src: str
    dst: str
    guards: tuple[Cond, ...] = ()
    sync: str | None = None  # "<key>!" or "<key>?"
    resets: tuple[str, ...] = ()  # "local" and/or "Clocks[<key>]"
    sets_status: int | None = None
    sets_action_done: str | None = None
    auto: bool = False


@dataclass(frozen=True)
class TaLocation:
    name: str
    invariant: tuple[ClockCond, ...] = ()


@dataclass(frozen=True)
class TimedAutomaton:
    name: str
    clause: str | None  # owning clause; None for environment helpers
    locations: tuple[TaLocation, ...]
    initial: str
    edges: tuple[TaEdge, ...]
    local_clock: bool = False


@dataclass(frozen=True)
class ClauseInfo:
    name: str
    kind: str  # "O" | "P" | "F" | "D" | "and" | "or" | "seq"
    parent: str | None
    children: tuple[str, ...]
    agent: str | None
    action_label: str | None
    action_key: str | None
    time: TimeExpr | None
    reparation: str | None
    top_level: bool
    is_reparation: bool
    has_upper: bool


@dataclass(frozen=True)
class TaNetwork:
    automata: tuple[TimedAutomaton, ...]
    clocks: tuple[str, ...]  # action keys indexing the Clocks array
    channels: tuple[str, ...]  # one broadcast channel per action key
    status_vars: tuple[str, ...]
    clauses: dict[str, ClauseInfo] = field(default_factory=dict)
    key_actions: dict[str, tuple[str, str]] = field(default_factory=dict)
    top_level: tuple[str, ...] = ()
    max_constant: int = 0
    global_clock: str = "t0"


# --- property language ---------------------------------------------------


@dataclass(frozen=True)
class PropAllComplete:
    pass


@dataclass(frozen=True)
class PropIsDone:
    key: str


@dataclass(frozen=True)
class PropConflict:
    key: str


@dataclass(frozen=True)
class PropClockCmp:
    """Compares ``t0 - Clocks[key]`` (absolute performance time)."""

    key: str
    op: str  # "<", "<=", ">", ">=", "=="
    bound: int


@dataclass(frozen=True)
class PropNot:
    inner: "PropExpr"


@dataclass(frozen=True)
class PropAnd:
    left: "PropExpr"
    right: "PropExpr"


@dataclass(frozen=True)
class PropOr:
    left: "PropExpr"
    right: "PropExpr"


@dataclass(frozen=True)
class PropImplies:
    left: "PropExpr"
    right: "PropExpr"


PropExpr = (
    PropAllComplete | PropIsDone | PropConflict | PropClockCmp
    | PropNot | PropAnd | PropOr | PropImplies
)


@dataclass(frozen=True)
class Property:
    quantifier: str  # "AG" | "EF"
    body: PropExpr


# --- guard DNF -----------------------------------------------------------


def _nnf(expr: GuardExpr, negated: bool) -> GuardExpr:
    if isinstance(expr, Not):
        return _nnf(expr.inner, not negated)
    if isinstance(expr, And):
        left, right = _nnf(expr.left, negated), _nnf(expr.right, negated)
        return Or(left, right) if negated else And(left, right)
    if isinstance(expr, Or):
        left, right = _nnf(expr.left, negated), _nnf(expr.right, negated)
        return And(left, right) if negated else Or(left, right)
    return Not(expr) if negated else expr


def _dnf(expr: GuardExpr) -> list[list[StatusCond]]:
    expr = _nnf(expr, False)

    def walk(e: GuardExpr) -> list[list[StatusCond]]:
        if isinstance(e, Or):
            return walk(e.left) + walk(e.right)
        if isinstance(e, And):
            return [l + r for l in walk(e.left) for r in walk(e.right)]
        if isinstance(e, Not):
            atom = e.inner
            want = DONE if isinstance(atom, Done) else VIOLATED
            other = frozenset({INACTIVE, ENABLED, DONE, VIOLATED}) - {want}
            return [[StatusCond(atom.ref, other)]]
        want = DONE if isinstance(e, Done) else VIOLATED
        return [[StatusCond(e.ref, frozenset({want}))]]

    return walk(expr)


# --- translation ---------------------------------------------------------


def _window_conds(time: TimeExpr | None) -> tuple[list[ClockCond], int | None]:
    """Action-permitting clock conditions and the forced-exit boundary."""
    if time is None:
        return [], None
    clock = "local" if time.kind is TimeKind.RELATIVE else "t0"
    conds: list[ClockCond] = []
    if time.low is not None:
        conds.append(ClockCond(clock, ">=", time.low))
    boundary: int | None = None
    if time.high is not None:
        if time.strict_high:
            conds.append(ClockCond(clock, "<", time.high))
            boundary = time.high
        else:
            conds.append(ClockCond(clock, "<=", time.high))
            boundary = time.high + 1
    return conds, boundary


def translate(model: ContractModel) -> TaNetwork:
    """Build the timed-automata network for a valid model."""
    diags = validate(model)
    if diags:
        first = diags[0]
        raise NormaError("INVARIANT_VIOLATION", first.message, location=first.clause)

    infos: dict[str, ClauseInfo] = {}
    order: list[str] = []
    keys: list[str] = []
    key_actions: dict[str, tuple[str, str]] = {}
    carriers: dict[str, list[str]] = {}  # reparation name -> carrying clauses

    def register(clause: Clause, parent: str | None, top: bool, is_rep: bool) -> None:
        body = clause.body
        if isinstance(body, Atomic):
            kind = body.modality.value
            key = action_key(body.agent, body.action)
            if key not in key_actions:
                keys.append(key)
                key_actions[key] = (body.agent.name, body.action.label)
            children: tuple[str, ...] = ()
            time, reparation = body.time, body.reparation
            agent, label = body.agent.name, body.action.label
        elif isinstance(body, Declaration):
            kind, key, children = "D", None, ()
            time, reparation = body.time, None
            agent = label = None
        else:
            kind = {"and": "and", "or": "or", "seq": "seq"}[body.connective.value]
            key, time, reparation = None, None, body.reparation
            children = tuple(c.name for c in body.children)
            agent = label = None
        if reparation is not None:
            carriers.setdefault(reparation, []).append(clause.name)
        infos[clause.name] = ClauseInfo(
            name=clause.name,
            kind=kind,
            parent=parent,
            children=children,
            agent=agent,
            action_label=label,
            action_key=key,
            time=time,
            reparation=reparation,
            top_level=top,
            is_reparation=is_rep,
            has_upper=time is not None and time.high is not None,
        )
        order.append(clause.name)
        if isinstance(body, Composite):
            for child in body.children:
                register(child, clause.name, False, is_rep)

    for top in model.clauses:
        register(top, None, True, False)
    for rep in model.reparations:
        register(rep, None, False, True)

    automata: list[TimedAutomaton] = []
    max_constant = 0

    for name in order:
        info = infos[name]
        guard = None
        time = info.time
        src_clause = _find_clause(model, name)
        guard = getattr(src_clause.body, "guard", None)

        # Enabling alternatives: structural context x user guard DNF.
        structural: list[Cond] = []
        if info.parent is not None:
            parent_info = infos[info.parent]
            structural.append(StatusCond(info.parent, frozenset({ENABLED})))
            if parent_info.kind == "seq":
                idx = parent_info.children.index(name)
                if idx > 0:
                    structural.append(EffDoneCond(parent_info.children[idx - 1]))
        if time is not None and time.ref is not None:
            structural.append(StatusCond(time.ref, frozenset({DONE})))
        alternatives: list[list[Cond]] = [[]]
        if info.is_reparation and info.parent is None:
            alternatives = [
                [StatusCond(carrier, frozenset({VIOLATED}))]
                for carrier in carriers.get(name, [])
            ]
        disjuncts: list[list[Cond]] = [[]]
        if guard is not None:
            disjuncts = [list(d) for d in _dnf(guard)]

        local = time is not None and time.kind is TimeKind.RELATIVE
        resets = ("local",) if local else ()
        edges: list[TaEdge] = []
        for alt in alternatives:
            for disjunct in disjuncts:
                edges.append(
                    TaEdge(
                        src="Inactive",
                        dst="Enabled",
                        guards=tuple(structural + alt + disjunct),
                        resets=resets,
                        sets_status=ENABLED,
                        auto=True,
                    )
                )
        if info.parent is not None:
            # Parent resolved or deactivated: withdraw this clause.
            edges.append(
                TaEdge(
                    src="Enabled",
                    dst="Inactive",
                    guards=(StatusCond(info.parent,
                                       frozenset({INACTIVE, DONE, VIOLATED})),),
                    sets_status=INACTIVE,
                    auto=True,
                )
            )

        window, boundary = _window_conds(time)
        for cond in window:
            max_constant = max(max_constant, cond.bound)
        if boundary is not None:
            max_constant = max(max_constant, boundary)
        invariant: tuple[ClockCond, ...] = ()
        clockname = "local" if (time is not None and time.kind is TimeKind.RELATIVE) else "t0"

        has_violated = True
        if info.kind in ("O", "P", "F"):
            key = info.action_key
            action_resets = (f"Clocks[{key}]",)
            target = VIOLATED if info.kind == "F" else DONE
            edges.append(
                TaEdge(
                    src="Enabled",
                    dst="Violated" if info.kind == "F" else "Done",
                    guards=tuple(window),
                    sync=f"{key}?",
                    resets=action_resets,
                    sets_status=target,
                    sets_action_done=key,
                )
            )
            if boundary is not None:
                if info.kind == "O":
                    edges.append(
                        TaEdge(
                            src="Enabled",
                            dst="Violated",
                            guards=(ClockCond(clockname, ">=", boundary),),
                            sets_status=VIOLATED,
                            auto=True,
                        )
                    )
                else:
                    # Permission lapses, prohibition survives: both close.
                    edges.append(
                        TaEdge(
                            src="Enabled",
                            dst="Done",
                            guards=(ClockCond(clockname, ">=", boundary),),
                            sets_status=DONE,
                            auto=True,
                        )
                    )
                invariant = (ClockCond(clockname, "<=", boundary),)
            has_violated = info.kind in ("O", "F")
        elif info.kind == "D":
            sched = None
            if time is not None:
                sched = time.low if time.low is not None else time.high
            guards = (ClockCond(clockname, ">=", sched),) if sched is not None else ()
            if sched is not None:
                max_constant = max(max_constant, sched)
                invariant = (ClockCond(clockname, "<=", sched),)
            edges.append(
                TaEdge(src="Enabled", dst="Done", guards=guards, sets_status=DONE, auto=True)
            )
            has_violated = False
        else:
            # Composite resolution from children.
            children = info.children
            if info.kind == "and":
                edges.append(TaEdge("Enabled", "Done",
                                    tuple(EffDoneCond(c) for c in children),
                                    sets_status=DONE, auto=True))
                for child in children:
                    edges.append(TaEdge("Enabled", "Violated", (HopelessCond(child),),
                                        sets_status=VIOLATED, auto=True))
            elif info.kind == "or":
                for child in children:
                    edges.append(TaEdge("Enabled", "Done", (EffDoneCond(child),),
                                        sets_status=DONE, auto=True))
                edges.append(TaEdge("Enabled", "Violated",
                                    tuple(HopelessCond(c) for c in children),
                                    sets_status=VIOLATED, auto=True))
            else:
                edges.append(TaEdge("Enabled", "Done",
                                    tuple(EffDoneCond(c) for c in children),
                                    sets_status=DONE, auto=True))
                for child in children:
                    edges.append(TaEdge("Enabled", "Violated", (HopelessCond(child),),
                                        sets_status=VIOLATED, auto=True))

        locations = [TaLocation("Inactive"), TaLocation("Enabled", invariant)]
        locations.append(TaLocation("Done"))
        if has_violated:
            locations.append(TaLocation("Violated"))
        automata.append(
            TimedAutomaton(
                name=f"A_{name}",
                clause=name,
                locations=tuple(locations),
                initial="Inactive",
                edges=tuple(edges),
                local_clock=local,
            )
        )

    # Environment senders keep every channel alive from the sending side.
    for key in keys:
        automata.append(
            TimedAutomaton(
                name=f"Env_{key}",
                clause=None,
                locations=(TaLocation("Idle"),),
                initial="Idle",
                edges=(TaEdge("Idle", "Idle", sync=f"{key}!"),),
            )
        )
    automata.append(
        TimedAutomaton(
            name="Urgency",
            clause=None,
            locations=(TaLocation("Idle"),),
            initial="Idle",
            edges=(TaEdge("Idle", "Idle", sync="urg?"),),
        )
    )

    return TaNetwork(
        automata=tuple(automata),
        clocks=tuple(keys),
        channels=tuple(keys),
        status_vars=tuple(f"st_{n}" for n in order),
        clauses=infos,
        key_actions=key_actions,
        top_level=tuple(c.name for c in model.clauses),
        max_constant=max_constant,
    )


def _find_clause(model: ContractModel, name: str) -> Clause:
    from .model import iter_clauses

    for clause in iter_clauses(model):
        if clause.name == name:
            return clause
    raise KeyError(name)


# --- property encoding ---------------------------------------------------


TEMPLATE_PROPERTIES = {7, 8, 9, 10}


def encode_property(template_id: int, bindings: dict[str, str], network: TaNetwork) -> Property:
    """Encode a semantic query instance against a translated network."""

    def key_of() -> str:
        agent = bindings["agent"]
        action = bindings["action"]
        raw = re.sub(r"[^a-z0-9_]+", "_", f"{agent}_{action}".lower()).strip("_")
        key = re.sub(r"_+", "_", raw)
        if key not in network.key_actions:
            raise NormaError("UNKNOWN_ACTION_KEY",
                             f"no action {action!r} by {agent!r} in the model")
        return key

    if template_id == 7:
        key = key_of()
        bound = int(bindings["number"])
        return Property(
            "AG",
            PropImplies(
                PropAllComplete(),
                PropAnd(PropIsDone(key), PropClockCmp(key, "<", bound)),
            ),
        )
    if template_id == 8:
        key = key_of()
        return Property("EF", PropAnd(PropAllComplete(), PropNot(PropIsDone(key))))
    if template_id == 9:
        return Property("EF", PropAllComplete())
    if template_id == 10:
        key = key_of()
        return Property("AG", PropNot(PropConflict(key)))
    raise NormaError("UNKNOWN_TEMPLATE", f"template {template_id} is not a semantic query")


def render_query(prop: Property) -> str:
    """Render a property in textual verifier query syntax."""
    quant = "A[]" if prop.quantifier == "AG" else "E<>"
    return f"{quant} {_render_expr(prop.body)}"


def _render_expr(expr: PropExpr) -> str:
    if isinstance(expr, PropAllComplete):
        return "allComplete()"
    if isinstance(expr, PropIsDone):
        return f"isDone(K_{expr.key})"
    if isinstance(expr, PropConflict):
        return f"conflict(K_{expr.key})"
    if isinstance(expr, PropClockCmp):
        return f"t0 - Clocks[K_{expr.key}] {expr.op} {expr.bound}"
    if isinstance(expr, PropNot):
        return f"!({_render_expr(expr.inner)})"
    if isinstance(expr, PropImplies):
        return f"({_render_expr(expr.left)}) imply ({_render_expr(expr.right)})"
    op = "&&" if isinstance(expr, PropAnd) else "||"
    return f"({_render_expr(expr.left)}) {op} ({_render_expr(expr.right)})"


# --- UPPAAL-compatible XML ------------------------------------------------


def _xml_esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _render_cond(cond: Cond, local_name: str = "x") -> str:
    if isinstance(cond, StatusCond):
        parts = [f"st_{cond.clause} == {STATUS_NAMES[s]}" for s in sorted(cond.statuses)]
        return parts[0] if len(parts) == 1 else "(" + " || ".join(parts) + ")"
    if isinstance(cond, ClockCond):
        clock = local_name if cond.clock == "local" else cond.clock
        return f"{clock} {cond.op} {cond.bound}"
    if isinstance(cond, EffDoneCond):
        return f"effdone_{cond.clause}()"
    return f"hopeless_{cond.clause}()"


def _function_order(network: TaNetwork) -> list[str]:
    """Clause order with dependencies (children, reparations) first."""
    seen: set[str] = set()
    out: list[str] = []

    def visit(name: str) -> None:
        if name in seen:
            return
        seen.add(name)
        info = network.clauses[name]
        for child in info.children:
            visit(child)
        if info.reparation is not None:
            visit(info.reparation)
        out.append(name)

    for name in network.clauses:
        visit(name)
    return out


def _global_declaration(network: TaNetwork) -> str:
    lines = ["// Global time; never reset.", "clock t0;"]
    n = len(network.clocks)
    if n:
        lines.append(f"clock Clocks[{n}];")
        lines.append(f"bool actionDone[{n}];")
        for i, key in enumerate(network.clocks):
            lines.append(f"const int K_{key} = {i};")
        for key in network.channels:
            lines.append(f"broadcast chan ch_{key};")
    lines.append("urgent broadcast chan urg;")
    lines.append("const int INACTIVE = 0;")
    lines.append("const int ENABLED = 1;")
    lines.append("const int DONE = 2;")
    lines.append("const int VIOLATED = 3;")
    for var in network.status_vars:
        lines.append(f"int[0,3] {var} = INACTIVE;")
    if n:
        lines.append("bool isDone(int a) { return actionDone[a]; }")

    for name in _function_order(network):
        info = network.clauses[name]
        rep = info.reparation
        eff = f"st_{name} == DONE"
        hop = f"st_{name} == VIOLATED"
        if rep is not None:
            eff += f" || (st_{name} == VIOLATED && effdone_{rep}())"
            hop += f" && hopeless_{rep}()"
        lines.append(f"bool effdone_{name}() {{ return {eff}; }}")
        lines.append(f"bool hopeless_{name}() {{ return {hop}; }}")
        open_ok = "false"
        if info.kind in ("P", "F") and not info.has_upper:
            open_ok = f"st_{name} == ENABLED"
        elif info.kind in ("and", "or", "seq"):
            kids = " && ".join(f"settled_{c}()" for c in info.children)
            open_ok = f"st_{name} == ENABLED && {kids}"
        lines.append(
            f"bool settled_{name}() {{ return effdone_{name}() || ({open_ok}); }}"
        )

    tops = " && ".join(f"settled_{name}()" for name in network.top_level) or "true"
    lines.append(f"bool allComplete() {{ return {tops}; }}")

    conflict_body = []
    obligations: dict[str, list[str]] = {}
    prohibitions: dict[str, list[str]] = {}
    for name, info in network.clauses.items():
        if info.kind == "O":
            obligations.setdefault(info.action_key, []).append(name)
        elif info.kind == "F":
            prohibitions.setdefault(info.action_key, []).append(name)
    for key in network.clocks:
        obls = obligations.get(key)
        bans = prohibitions.get(key)
        if obls and bans:
            left = " || ".join(f"st_{o} == ENABLED" for o in obls)
            right = " || ".join(f"st_{f} == ENABLED" for f in bans)
            conflict_body.append(f"if (a == K_{key}) {{ return ({left}) && ({right}); }}")
    if n:
        body = "\n  ".join(conflict_body) if conflict_body else ""
        lines.append("bool conflict(int a) {\n  " + body + ("\n  " if body else "")
                     + "return false;\n}")
    return "\n".join(lines)


def emit_uppaal_xml(network: TaNetwork) -> str:
    """Serialize the network in the flat document structure of UPPAAL 4.x."""
    out: list[str] = [
        '<?xml version="1.0" encoding="utf-8"?>',
        "<!DOCTYPE nta PUBLIC '-//Uppaal Team//DTD Flat System 1.1//EN'"
        " 'http://www.it.uu.se/research/group/darts/uppaal/flat-1_1.dtd'>",
        "<nta>",
        "  <declaration>" + _xml_esc(_global_declaration(network)) + "</declaration>",
    ]
    for aut in network.automata:
        out.append("  <template>")
        out.append(f"    <name>{aut.name}</name>")
        if aut.local_clock:
            out.append("    <declaration>clock x;</declaration>")
        for loc in aut.locations:
            loc_id = f"{aut.name}_{loc.name}"
            if loc.invariant:
                inv = " &amp;&amp; ".join(
                    _xml_esc(_render_cond(c)) for c in loc.invariant
                )
                out.append(f'    <location id="{loc_id}">')
                out.append(f"      <name>{loc.name}</name>")
                out.append(f'      <label kind="invariant">{inv}</label>')
                out.append("    </location>")
            else:
                out.append(
                    f'    <location id="{loc_id}"><name>{loc.name}</name></location>'
                )
        out.append(f'    <init ref="{aut.name}_{aut.initial}"/>')
        for edge in aut.edges:
            out.append("    <transition>")
            out.append(f'      <source ref="{aut.name}_{edge.src}"/>')
            out.append(f'      <target ref="{aut.name}_{edge.dst}"/>')
            if edge.guards:
                guard = " &amp;&amp; ".join(_xml_esc(_render_cond(c)) for c in edge.guards)
                out.append(f'      <label kind="guard">{guard}</label>')
            sync = None
            if edge.sync is not None:
                mark = edge.sync[-1]
                sync = f"ch_{edge.sync[:-1]}{mark}" if edge.sync[:-1] != "urg" else edge.sync
            elif edge.auto and not any(isinstance(c, ClockCond) for c in edge.guards):
                # Urgent bookkeeping; clock-guarded edges are forced by
                # location invariants instead (urgent syncs cannot carry
                # clock guards).
                sync = "urg!"
            if sync is not None:
                out.append(f'      <label kind="synchronisation">{_xml_esc(sync)}</label>')
            assignments = []
            for reset in edge.resets:
                if reset == "local":
                    assignments.append("x = 0")
                else:
                    key = reset[len("Clocks["):-1]
                    assignments.append(f"Clocks[K_{key}] = 0")
            if edge.sets_status is not None and network.clauses.get(aut.clause):
                assignments.append(f"st_{aut.clause} = {STATUS_NAMES[edge.sets_status]}")
            if edge.sets_action_done is not None:
                assignments.append(f"actionDone[K_{edge.sets_action_done}] = true")
            if assignments:
                out.append(
                    f'      <label kind="assignment">{_xml_esc(", ".join(assignments))}</label>'
                )
            out.append("    </transition>")
        out.append("  </template>")
    names = ", ".join(a.name for a in network.automata)
    out.append(f"  <system>system {names};</system>")
    out.append("</nta>")
    return "\n".join(out) + "\n"
