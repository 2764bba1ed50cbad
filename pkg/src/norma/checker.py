"""Bounded discrete-time explicit-state checking of translated networks.

States pair automaton locations with clock information; from each state
either one action channel fires (affecting every enabled receiver) or
time advances by one unit. Bookkeeping transitions — activation,
deadline violation, window expiry, declaration events, composite
resolution — are urgent and fold into the step that triggered them, so
every explored state is stable.

State identity is aggressively normalised: local clocks only count while
their clause is enabled and saturate above the largest constant they are
compared against; global time saturates above the largest constant in
network or property; action bookkeeping is tracked only for the keys the
property mentions. Saturation preserves every guard and property verdict
while keeping the reachable set finite and small.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NormaError
from .nta import (
    DONE,
    ENABLED,
    INACTIVE,
    VIOLATED,
    ClockCond,
    EffDoneCond,
    HopelessCond,
    Property,
    PropExpr,
    PropAllComplete,
    PropAnd,
    PropClockCmp,
    PropConflict,
    PropImplies,
    PropIsDone,
    PropNot,
    PropOr,
    StatusCond,
    TaNetwork,
)

DEFAULT_STATE_LIMIT = 10_000_000

_STATUS_OF_LOC = {"Inactive": INACTIVE, "Enabled": ENABLED, "Done": DONE, "Violated": VIOLATED}


@dataclass(frozen=True)
class TraceAction:
    agent: str
    action: str
    time: int


@dataclass(frozen=True)
class RawStep:
    kind: str  # "action" | "delay"
    time: int
    key: str | None = None
    agent: str | None = None
    action: str | None = None


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "Satisfied" | "NotSatisfied"
    trace: tuple[TraceAction, ...] | None = None
    raw: tuple[RawStep, ...] | None = None  # pre-abstraction steps


def abstract_trace(raw: tuple[RawStep, ...]) -> tuple[TraceAction, ...]:
    """Keep only performed actions with their absolute timestamps."""
    return tuple(
        TraceAction(agent=step.agent or "", action=step.action or "", time=step.time)
        for step in raw
        if step.kind == "action"
    )


class _Compiled:
    """Network compiled to index-based tables and closures."""

    def __init__(self, network: TaNetwork, prop: Property):
        self.network = network
        autos = [a for a in network.automata if a.clause is not None]
        self.autos = autos
        self.n = len(autos)
        self.idx_of_clause = {a.clause: i for i, a in enumerate(autos)}
        self.loc_idx = [
            {loc.name: j for j, loc in enumerate(a.locations)} for a in autos
        ]
        self.loc_status = [
            tuple(_STATUS_OF_LOC[loc.name] for loc in a.locations) for a in autos
        ]
        self.initial = tuple(self.loc_idx[i][a.initial] for i, a in enumerate(autos))

        # Local clocks: one slot per automaton that owns one.
        self.lc_slot = {}
        caps = []
        for i, a in enumerate(autos):
            if a.local_clock:
                cap = 0
                for e in a.edges:
                    for g in e.guards:
                        if isinstance(g, ClockCond) and g.clock == "local":
                            cap = max(cap, g.bound)
                self.lc_slot[i] = len(caps)
                caps.append(cap + 1)
        self.lc_caps = caps

        # Property-tracked action bookkeeping.
        done_keys: set[str] = set()
        time_bounds: dict[str, int] = {}

        def scan(e: PropExpr) -> None:
            if isinstance(e, PropIsDone):
                done_keys.add(e.key)
            elif isinstance(e, PropClockCmp):
                time_bounds[e.key] = max(time_bounds.get(e.key, 0), e.bound)
            elif isinstance(e, PropNot):
                scan(e.inner)
            elif isinstance(e, (PropAnd, PropOr, PropImplies)):
                scan(e.left)
                scan(e.right)

        scan(prop.body)
        self.done_keys = sorted(done_keys)
        self.done_slot = {k: i for i, k in enumerate(self.done_keys)}
        self.time_keys = sorted(time_bounds)
        self.time_slot = {k: i for i, k in enumerate(self.time_keys)}
        self.time_caps = [time_bounds[k] + 1 for k in self.time_keys]

        self.t_cap = max([network.max_constant] + list(time_bounds.values())) + 1

        self.status_fns = {}
        infos = network.clauses

        def status(state, name):
            i = self.idx_of_clause[name]
            return self.loc_status[i][state[1][i]]

        self.status = status

        def effdone(state, name):
            st = status(state, name)
            if st == DONE:
                return True
            rep = infos[name].reparation
            return st == VIOLATED and rep is not None and effdone(state, rep)

        def hopeless(state, name):
            st = status(state, name)
            if st != VIOLATED:
                return False
            rep = infos[name].reparation
            return rep is None or hopeless(state, rep)

        self.effdone = effdone
        self.hopeless = hopeless

        def settled(state, name):
            if effdone(state, name):
                return True
            info = infos[name]
            st = status(state, name)
            if st != ENABLED:
                return False
            if info.kind in ("P", "F"):
                return not info.has_upper
            if info.kind in ("and", "or", "seq"):
                return all(settled(state, c) for c in info.children)
            return False

        self.settled = settled

        obligations: dict[str, list[str]] = {}
        prohibitions: dict[str, list[str]] = {}
        for name, info in infos.items():
            if info.kind == "O":
                obligations.setdefault(info.action_key, []).append(name)
            elif info.kind == "F":
                prohibitions.setdefault(info.action_key, []).append(name)

        def conflict(state, key):
            return any(
                status(state, o) == ENABLED for o in obligations.get(key, ())
            ) and any(status(state, f) == ENABLED for f in prohibitions.get(key, ()))

        self.conflict = conflict
        self.body = self._compile_expr(prop.body)

        # Edge tables.
        self.auto_edges = []  # [aut][loc] -> list[(guard_fn, dst, to_enabled)]
        self.receivers = {}  # channel -> list[(aut, src, guard_fn, dst, key)]
        for i, a in enumerate(autos):
            per_loc = [[] for _ in a.locations]
            for e in a.edges:
                guard_fn = self._compile_guard(i, e.guards)
                src = self.loc_idx[i][e.src]
                dst = self.loc_idx[i][e.dst]
                if e.auto:
                    per_loc[src].append((guard_fn, dst, e.dst == "Enabled"))
                elif e.sync is not None and e.sync.endswith("?"):
                    key = e.sync[:-1]
                    self.receivers.setdefault(key, []).append(
                        (i, src, guard_fn, dst, e.sets_action_done)
                    )
            self.auto_edges.append(per_loc)
        self.channel_order = sorted(self.receivers)

    def _compile_guard(self, aut: int, conds) -> callable:
        fns = []
        for cond in conds:
            if isinstance(cond, StatusCond):
                target = self.idx_of_clause[cond.clause]
                stats = cond.statuses
                loc_status = self.loc_status[target]
                fns.append(lambda s, t=target, ls=loc_status, st=stats: ls[s[1][t]] in st)
            elif isinstance(cond, ClockCond):
                if cond.clock == "t0":
                    fns.append(self._clock_fn(lambda s: s[0], cond.op, cond.bound))
                else:
                    slot = self.lc_slot[aut]
                    fns.append(self._clock_fn(lambda s, sl=slot: s[2][sl], cond.op, cond.bound))
            elif isinstance(cond, EffDoneCond):
                fns.append(lambda s, n=cond.clause: self.effdone(s, n))
            elif isinstance(cond, HopelessCond):
                fns.append(lambda s, n=cond.clause: self.hopeless(s, n))
        if not fns:
            return lambda s: True
        if len(fns) == 1:
            return fns[0]
        return lambda s, all_fns=tuple(fns): all(f(s) for f in all_fns)

    @staticmethod
    def _clock_fn(read, op: str, bound: int):
        if op == "<":
            return lambda s: read(s) < bound
        if op == "<=":
            return lambda s: read(s) <= bound
        if op == ">=":
            return lambda s: read(s) >= bound
        if op == ">":
            return lambda s: read(s) > bound
        return lambda s: read(s) == bound

    def _compile_expr(self, e: PropExpr):
        if isinstance(e, PropAllComplete):
            tops = self.network.top_level
            return lambda s: all(self.settled(s, n) for n in tops)
        if isinstance(e, PropIsDone):
            slot = self.done_slot[e.key]
            return lambda s: bool(s[3] >> slot & 1)
        if isinstance(e, PropConflict):
            return lambda s, k=e.key: self.conflict(s, k)
        if isinstance(e, PropClockCmp):
            slot = self.time_slot[e.key]
            return self._clock_fn(lambda s, sl=slot: s[4][sl], e.op, e.bound)
        if isinstance(e, PropNot):
            inner = self._compile_expr(e.inner)
            return lambda s: not inner(s)
        left, right = self._compile_expr(e.left), self._compile_expr(e.right)
        if isinstance(e, PropAnd):
            return lambda s: left(s) and right(s)
        if isinstance(e, PropOr):
            return lambda s: left(s) or right(s)
        return lambda s: (not left(s)) or right(s)

    # --- semantics -----------------------------------------------------

    def cascade(self, t0, locs, lclks, adone, ftimes):
        locs = list(locs)
        lclks = list(lclks)
        state = (t0, locs, lclks, adone, ftimes)
        changed = True
        while changed:
            changed = False
            for i in range(self.n):
                for guard_fn, dst, to_enabled in self.auto_edges[i][locs[i]]:
                    if guard_fn(state):
                        locs[i] = dst
                        slot = self.lc_slot.get(i)
                        if slot is not None:
                            lclks[slot] = 0 if to_enabled else -1
                        changed = True
                        break
        return (t0, tuple(locs), tuple(lclks), adone, ftimes)

    def initial_state(self):
        lclks = tuple(-1 for _ in self.lc_caps)
        ftimes = tuple(0 for _ in self.time_keys)
        return self.cascade(0, self.initial, lclks, 0, ftimes)

    def fire(self, state, key):
        t0, locs, lclks, adone, ftimes = state
        hits = [
            (i, dst, sets_key)
            for (i, src, guard_fn, dst, sets_key) in self.receivers.get(key, ())
            if locs[i] == src and guard_fn(state)
        ]
        if not hits:
            return None
        locs = list(locs)
        lclks = list(lclks)
        for i, dst, sets_key in hits:
            locs[i] = dst
            slot = self.lc_slot.get(i)
            if slot is not None:
                lclks[slot] = -1
        if key in self.done_slot:
            adone |= 1 << self.done_slot[key]
        if key in self.time_slot:
            ftimes = list(ftimes)
            ftimes[self.time_slot[key]] = min(t0, self.time_caps[self.time_slot[key]])
            ftimes = tuple(ftimes)
        return self.cascade(t0, tuple(locs), tuple(lclks), adone, ftimes)

    def tick(self, state, tick_limit):
        t0, locs, lclks, adone, ftimes = state
        if t0 >= tick_limit:
            return None
        new_lclks = tuple(
            -1 if v < 0 else min(v + 1, self.lc_caps[j]) for j, v in enumerate(lclks)
        )
        return self.cascade(t0 + 1, locs, new_lclks, adone, ftimes)


def check(
    network: TaNetwork,
    prop: Property,
    horizon: int | None = None,
    state_limit: int = DEFAULT_STATE_LIMIT,
) -> Verdict:
    """Explore all reachable states up to the horizon and judge ``prop``.

    AG properties report the shortest violating run (breadth-first order,
    channels tried in sorted order before the time step); EF properties
    report the shortest witness.
    """
    minimum = network.max_constant + 1
    if horizon is None:
        horizon = minimum
    if horizon < minimum:
        raise NormaError(
            "HORIZON_TOO_SMALL",
            f"horizon {horizon} below the largest network constant + 1 ({minimum})",
        )
    compiled = _Compiled(network, prop)
    tick_limit = min(horizon, compiled.t_cap)
    body = compiled.body
    want_witness = prop.quantifier == "EF"

    init = compiled.initial_state()
    visited = {init: 0}
    parents: list[tuple[int, tuple]] = [(-1, ())]
    queue = deque([init])

    def verdict_at(state, node_id):
        raw = _reconstruct(compiled, parents, visited, state, node_id)
        outcome = "Satisfied" if want_witness else "NotSatisfied"
        return Verdict(outcome, abstract_trace(raw), raw)

    if body(init) == want_witness:
        return verdict_at(init, 0)

    while queue:
        state = queue.popleft()
        node_id = visited[state]
        successors = []
        for key in compiled.channel_order:
            nxt = compiled.fire(state, key)
            if nxt is not None:
                successors.append((nxt, ("action", key, state[0])))
        nxt = compiled.tick(state, tick_limit)
        if nxt is not None:
            successors.append((nxt, ("delay", None, state[0])))
        for nxt, step in successors:
            if nxt in visited:
                continue
            visited[nxt] = len(parents)
            parents.append((node_id, step))
            if len(visited) > state_limit:
                raise NormaError(
                    "STATE_LIMIT", f"state space exceeds {state_limit} states"
                )
            if body(nxt) == want_witness:
                return verdict_at(nxt, visited[nxt])
            queue.append(nxt)

    if want_witness:
        return Verdict("NotSatisfied", None)
    return Verdict("Satisfied", None)


def _reconstruct(compiled, parents, visited, state, node_id) -> tuple[RawStep, ...]:
    steps = []
    while node_id > 0:
        node_id, step = parents[node_id]
        steps.append(step)
    steps.reverse()
    raw = []
    t = 0
    for kind, key, _t0 in steps:
        if kind == "delay":
            t += 1
            raw.append(RawStep(kind="delay", time=t))
        else:
            agent, action = compiled.network.key_actions[key]
            raw.append(RawStep(kind="action", time=t, key=key, agent=agent, action=action))
    return tuple(raw)
