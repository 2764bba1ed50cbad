"""Network translation and UPPAAL-compatible XML structure."""

import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings

from norma.errors import NormaError
from norma.model import (
    Action,
    Agent,
    Atomic,
    Clause,
    ContractModel,
    Declaration,
    Modality,
    TimeExpr,
)
from norma.nta import (
    ClockCond,
    Property,
    PropAllComplete,
    emit_uppaal_xml,
    encode_property,
    render_query,
    translate,
)

from strategies import contract_models


def single_obligation():
    return ContractModel(
        clauses=(
            Clause("c1", Atomic(Agent("a"), Modality.OBLIGATION, Action("pay"),
                                time=TimeExpr(high=5))),
        )
    )


class TestTranslate:
    def test_minimal_network(self):
        network = translate(single_obligation())
        clause_autos = [a for a in network.automata if a.clause is not None]
        assert len(clause_autos) == 1
        assert network.clocks == ("a_pay",)
        assert network.channels == ("a_pay",)

    def test_course_keys(self, course):
        network = translate(course)
        assert "student_register_for_course" in network.clocks
        assert len(network.clocks) == 6

    def test_one_clock_and_channel_per_key(self, course):
        network = translate(course)
        assert len(set(network.clocks)) == len(network.clocks)
        assert network.clocks == network.channels

    @settings(max_examples=100)
    @given(contract_models(max_const=20))
    def test_total_and_deterministic(self, model):
        assert translate(model) == translate(model)

    @settings(max_examples=100)
    @given(contract_models(max_const=20))
    def test_t0_never_reset(self, model):
        network = translate(model)
        for automaton in network.automata:
            for edge in automaton.edges:
                assert "t0" not in edge.resets

    @settings(max_examples=100)
    @given(contract_models(max_const=20))
    def test_local_clock_reset_exactly_on_activation(self, model):
        network = translate(model)
        for automaton in network.automata:
            for edge in automaton.edges:
                if "local" in edge.resets:
                    assert automaton.local_clock
                    assert (edge.src, edge.dst) == ("Inactive", "Enabled")
            if automaton.local_clock:
                activations = [
                    e for e in automaton.edges if (e.src, e.dst) == ("Inactive", "Enabled")
                ]
                assert activations
                assert all("local" in e.resets for e in activations)

    @settings(max_examples=100)
    @given(contract_models(max_const=20))
    def test_action_clock_reset_only_on_own_action(self, model):
        network = translate(model)
        for automaton in network.automata:
            key = (network.clauses[automaton.clause].action_key
                   if automaton.clause in network.clauses else None)
            for edge in automaton.edges:
                for reset in edge.resets:
                    if reset.startswith("Clocks["):
                        assert reset == f"Clocks[{key}]"
                        assert edge.sync == f"{key}?"


class TestUppaalXml:
    def test_single_clause_document(self):
        network = translate(single_obligation())
        root = ET.fromstring(emit_uppaal_xml(network))
        assert root.tag == "nta"
        names = [t.findtext("name") for t in root.findall("template")]
        assert "A_c1" in names and "Env_a_pay" in names
        system = root.findtext("system")
        assert "A_c1" in system

    def test_structure_and_label_kinds(self, course):
        network = translate(course)
        root = ET.fromstring(emit_uppaal_xml(network))
        assert root.find("declaration") is not None
        kinds = {
            label.get("kind")
            for template in root.findall("template")
            for transition in template.findall("transition")
            for label in transition.findall("label")
        }
        assert kinds <= {"guard", "synchronisation", "assignment"}
        assert {"guard", "synchronisation", "assignment"} <= kinds
        for template in root.findall("template"):
            assert template.find("init") is not None
            assert template.findall("location")

    def test_every_channel_sent_and_received(self, course):
        network = translate(course)
        root = ET.fromstring(emit_uppaal_xml(network))
        syncs = [
            label.text
            for template in root.findall("template")
            for transition in template.findall("transition")
            for label in transition.findall("label")
            if label.get("kind") == "synchronisation"
        ]
        for key in network.channels:
            assert f"ch_{key}!" in syncs
            assert f"ch_{key}?" in syncs
        assert "urg!" in syncs and "urg?" in syncs

    def test_clockless_declaration_has_no_clock_guards(self):
        model = ContractModel(clauses=(Clause("c1", Declaration("it stands")),))
        network = translate(model)
        automaton = next(a for a in network.automata if a.clause == "c1")
        for edge in automaton.edges:
            assert not any(isinstance(g, ClockCond) for g in edge.guards)
        assert not automaton.local_clock

    @settings(max_examples=60)
    @given(contract_models(max_const=20))
    def test_always_well_formed(self, model):
        ET.fromstring(emit_uppaal_xml(translate(model)))

    def test_deterministic(self, course):
        network = translate(course)
        assert emit_uppaal_xml(network) == emit_uppaal_xml(network)


class TestProperties:
    def test_template7_encoding(self, course):
        network = translate(course)
        prop = encode_property(
            7, {"agent": "student", "action": "register for course", "number": "5"}, network
        )
        assert prop.quantifier == "AG"
        rendered = render_query(prop)
        assert rendered.startswith("A[]")
        assert "t0 - Clocks[K_student_register_for_course] < 5" in rendered

    def test_template9_no_slots(self, course):
        network = translate(course)
        prop = encode_property(9, {}, network)
        assert prop == Property("EF", PropAllComplete())
        assert render_query(prop) == "E<> allComplete()"

    def test_unknown_action_key(self, course):
        network = translate(course)
        with pytest.raises(NormaError) as exc:
            encode_property(7, {"agent": "student", "action": "fly", "number": "3"}, network)
        assert exc.value.code == "UNKNOWN_ACTION_KEY"
