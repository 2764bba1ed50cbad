"""Core model types: validation, autonaming, vocabulary collection."""

import pytest
from hypothesis import given

from norma.errors import NormaError
from norma.model import (
    Action,
    Agent,
    Atomic,
    Clause,
    Composite,
    Connective,
    ContractModel,
    Declaration,
    Done,
    Modality,
    TimeExpr,
    autoname,
    collect_actions,
    collect_agents,
    validate,
)

from strategies import contract_models


def obligation(name, agent="student", verb="act", obj="", **kw):
    return Clause(name, Atomic(Agent(agent), Modality.OBLIGATION, Action(verb, obj), **kw))


def test_empty_model_is_valid():
    assert validate(ContractModel()) == []


def test_duplicate_names_flagged():
    model = ContractModel(clauses=(obligation("c1"), obligation("c1")))
    codes = [d.code for d in validate(model)]
    assert codes == ["DUPLICATE_NAME"]


def test_course_fixture_is_valid(course):
    assert validate(course) == []


def test_unresolved_guard_ref():
    model = ContractModel(clauses=(obligation("c1", guard=Done("nope")),))
    assert any(d.code == "UNRESOLVED_REF" for d in validate(model))


def test_self_guard_rejected():
    model = ContractModel(clauses=(obligation("c1", guard=Done("c1")),))
    assert any(d.code == "SELF_GUARD" for d in validate(model))


def test_reparation_must_be_toplevel_reparation():
    model = ContractModel(clauses=(obligation("c1", reparation="c2"), obligation("c2")))
    assert any(d.code == "UNRESOLVED_REF" for d in validate(model))


def test_reparation_cycle_detected():
    r1 = obligation("r1", reparation="r2")
    r2 = obligation("r2", reparation="r1")
    model = ContractModel(
        clauses=(obligation("c1", reparation="r1"),), reparations=(r1, r2)
    )
    assert any(d.code == "REPARATION_CYCLE" for d in validate(model))


def test_orphan_reparation_flagged():
    model = ContractModel(clauses=(obligation("c1"),), reparations=(obligation("r1"),))
    assert any(d.code == "ORPHAN_REPARATION" for d in validate(model))


def test_composite_needs_two_children():
    model = ContractModel(
        clauses=(Clause("c1", Composite(Connective.CONJUNCTION, (obligation("c1_1"),))),)
    )
    assert any(d.code == "TOO_FEW_CHILDREN" for d in validate(model))


def test_bad_time_bounds():
    model = ContractModel(clauses=(obligation("c1", time=TimeExpr(low=9, high=2)),))
    assert any(d.code == "BAD_TIME" for d in validate(model))


class TestAutoname:
    def test_toplevel_scheme(self):
        model = ContractModel(clauses=(obligation(""), obligation("")))
        named = autoname(model)
        assert [c.name for c in named.clauses] == ["c1", "c2"]

    def test_children_scheme(self):
        comp = Clause(
            "",
            Composite(
                Connective.CONJUNCTION,
                (obligation(""), obligation(""), obligation("")),
            ),
        )
        named = autoname(ContractModel(clauses=(obligation(""), comp)))
        c2 = named.clauses[1]
        assert c2.name == "c2"
        assert [c.name for c in c2.body.children] == ["c2_1", "c2_2", "c2_3"]

    def test_identity_on_named_model(self, course):
        assert autoname(course) == course

    def test_collision_raises(self):
        model = ContractModel(clauses=(obligation("c2"), obligation("")))
        with pytest.raises(NormaError) as exc:
            autoname(model)
        assert exc.value.code == "NAME_COLLISION"

    @given(contract_models())
    def test_idempotent(self, model):
        assert autoname(autoname(model)) == autoname(model)


class TestVocabulary:
    def test_course_agents(self, course):
        assert [a.name for a in collect_agents(course)] == ["grader", "student"]

    def test_course_actions(self, course):
        labels = [a.label for a in collect_actions(course)]
        assert "register for course" in labels
        assert "sign up for exam" in labels

    def test_empty(self):
        assert collect_agents(ContractModel()) == []
        assert collect_actions(ContractModel()) == []

    @given(contract_models())
    def test_sorted_and_unique(self, model):
        agents = collect_agents(model)
        assert agents == sorted(agents)
        assert len(agents) == len(set(agents))
        actions = collect_actions(model)
        labels = [(a.verb, a.object) for a in actions]
        assert len(labels) == len(set(labels))
        assert [a.label for a in actions] == sorted(a.label for a in actions)


def test_declaration_body_carries_no_norms():
    decl = Clause("c1", Declaration("The exam will be held on day 60."))
    model = ContractModel(clauses=(decl,))
    assert validate(model) == []
    assert collect_agents(model) == []
