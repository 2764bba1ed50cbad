"""Shorthand notation: golden strings, round-trip, syntax errors."""

import pytest
from hypothesis import given, settings

from norma.codsh import parse_codsh, print_codsh
from norma.errors import NormaError
from norma.model import (
    Action,
    Agent,
    Atomic,
    Clause,
    Composite,
    Connective,
    ContractModel,
    Modality,
    TimeExpr,
)

from strategies import contract_models


def test_atomic_golden():
    model = ContractModel(
        clauses=(
            Clause(
                "c1",
                Atomic(
                    Agent("student"),
                    Modality.OBLIGATION,
                    Action("register", "for course"),
                    time=TimeExpr(high=7, strict_high=True),
                ),
            ),
        )
    )
    assert print_codsh(model) == "c1: O<student>(register for course)[t<7]\n"


def test_conjunction_parses():
    text = "c2: (c2_1: O<student>(pass assignment) /\\ c2_2: O<student>(pass exam))\n"
    model = parse_codsh(text)
    body = model.clauses[0].body
    assert isinstance(body, Composite)
    assert body.connective is Connective.CONJUNCTION
    assert [c.name for c in body.children] == ["c2_1", "c2_2"]
    assert print_codsh(model) == text


def test_unknown_modality_is_syntax_error():
    with pytest.raises(NormaError) as exc:
        parse_codsh("x: Q<a>(b)\n")
    assert exc.value.code == "SYNTAX"
    assert "line 1" in (exc.value.location or "")


def test_course_round_trip(course):
    text = print_codsh(course)
    assert parse_codsh(text) == course
    # Every clause name appears exactly once as a label.
    for name in ["c1", "c2", "c2_1", "c2_2", "c3", "c4", "c5", "c6", "c7"]:
        assert text.count(f"{name}:") == 1


def test_guard_and_reparation_round_trip():
    text = (
        "c1: O<a>(pay)[t<=5] {done(c2) & !violated(c2)} |> r1\n"
        "c2: P<b>(leave)[2,<9]\n"
        "r1: F<a>(flee)[t>=3]\n"
    )
    model = parse_codsh(text)
    assert model.clauses[0].body.reparation == "r1"
    assert [r.name for r in model.reparations] == ["r1"]
    assert print_codsh(model) == text


def test_declaration_with_escapes():
    model = parse_codsh("d1: D(held \\(indoors\\) on day 60)[60,60]\n")
    assert model.clauses[0].body.text == "held (indoors) on day 60"
    assert print_codsh(model) == "d1: D(held \\(indoors\\) on day 60)[60,60]\n"


def test_title_line():
    model = parse_codsh("#title course rules\nc1: O<a>(pay)\n")
    assert model.title == "course rules"
    assert print_codsh(model).startswith("#title course rules\n")


def test_empty_model():
    assert print_codsh(ContractModel()) == ""
    assert parse_codsh("") == ContractModel()


@settings(max_examples=300)
@given(contract_models())
def test_round_trip_random_models(model):
    assert parse_codsh(print_codsh(model)) == model
