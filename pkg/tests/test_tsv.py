"""Table format: parsing, escaping, and conversion to/from models."""

import pytest
from hypothesis import given, settings

from norma.errors import NormaError
from norma.model import (
    Atomic,
    Clause,
    Composite,
    Connective,
    ContractModel,
    Modality,
    autoname,
    validate,
)
from norma.tsv import (
    HEADER,
    ClauseRow,
    TsvTable,
    emit_tsv,
    model_to_rows,
    parse_tsv,
    rows_to_model,
)

from course_fixture import course_model
from strategies import contract_models, tsv_tables


HEADER_LINE = "\t".join(HEADER)


def test_header_only():
    table = parse_tsv(HEADER_LINE + "\n")
    assert table.rows == ()


def test_registration_row_parses():
    line = "1\tStudents need to register.\tstudent\tO\tregister\tfor course\t\t\t< 7"
    table = parse_tsv(HEADER_LINE + "\n" + line + "\n")
    row = table.rows[0]
    assert row.agent == "student"
    assert row.modality == "O"
    assert row.verb == "register"
    assert row.object == "for course"
    assert row.time == "< 7"


def test_duplicate_id_rejected():
    body = "3\t\t\tO\tx\t\t\t\t\n3\t\t\tO\tx\t\t\t\t\n"
    with pytest.raises(NormaError) as exc:
        parse_tsv(HEADER_LINE + "\n" + body)
    assert exc.value.code == "DUPLICATE_ID"


def test_bad_header():
    with pytest.raises(NormaError) as exc:
        parse_tsv("id\tagent\n")
    assert exc.value.code == "BAD_HEADER"


def test_bad_row_reports_line():
    with pytest.raises(NormaError) as exc:
        parse_tsv(HEADER_LINE + "\nonly\ttwo\n")
    assert exc.value.code == "BAD_ROW"
    assert exc.value.location == "line 2"


@settings(max_examples=200)
@given(tsv_tables())
def test_round_trip_tables(table):
    assert parse_tsv(emit_tsv(table)) == table


def test_cells_with_tabs_and_newlines_survive():
    row = ClauseRow(id="1", text="a\tb\nc\\d", modality="D")
    table = TsvTable(rows=(row,))
    assert parse_tsv(emit_tsv(table)) == table
    assert "\t".join(emit_tsv(table).splitlines()[1:]).count("\n") == 0


class TestRowsToModel:
    def test_single_obligation(self):
        table = TsvTable(
            rows=(ClauseRow(id="1", agent="student", modality="O", verb="pay"),)
        )
        model = rows_to_model(table)
        assert len(model.clauses) == 1
        body = model.clauses[0].body
        assert isinstance(body, Atomic)
        assert body.modality is Modality.OBLIGATION
        assert model.clauses[0].name == "c1"

    def test_conjunction_from_subrows(self):
        table = TsvTable(
            rows=(
                ClauseRow(id="2", modality="O", connective="AND"),
                ClauseRow(id="2.1", agent="student", modality="O", verb="pass",
                          object="assignment"),
                ClauseRow(id="2.2", agent="student", modality="O", verb="pass", object="exam"),
            )
        )
        model = rows_to_model(table)
        body = model.clauses[0].body
        assert isinstance(body, Composite)
        assert body.connective is Connective.CONJUNCTION
        assert [c.body.action.label for c in body.children] == ["pass assignment", "pass exam"]
        assert [c.name for c in body.children] == ["c2_1", "c2_2"]

    def test_orphan_subrow(self):
        table = TsvTable(rows=(ClauseRow(id="4.1", agent="a", modality="O", verb="x"),))
        with pytest.raises(NormaError) as exc:
            rows_to_model(table)
        assert exc.value.code == "ORPHAN_SUBROW"

    def test_default_connective_is_conjunction(self):
        table = TsvTable(
            rows=(
                ClauseRow(id="1"),
                ClauseRow(id="1.1", agent="a", modality="O", verb="x"),
                ClauseRow(id="1.2", agent="a", modality="O", verb="y"),
            )
        )
        model = rows_to_model(table)
        assert model.clauses[0].body.connective is Connective.CONJUNCTION

    def test_else_moves_row_to_reparations(self):
        table = TsvTable(
            rows=(
                ClauseRow(id="1", agent="a", modality="O", verb="x", condition="ELSE c2"),
                ClauseRow(id="2", agent="a", modality="O", verb="y"),
            )
        )
        model = rows_to_model(table)
        assert len(model.clauses) == 1
        assert [r.name for r in model.reparations] == ["c2"]
        assert model.clauses[0].body.reparation == "c2"

    def test_bad_time_reports_row(self):
        table = TsvTable(rows=(ClauseRow(id="1", agent="a", modality="O", verb="x",
                                         time="soonish"),))
        with pytest.raises(NormaError) as exc:
            rows_to_model(table)
        assert exc.value.code == "PARSE_TIME"
        assert exc.value.location == "1"

    def test_bad_condition_reports_row(self):
        table = TsvTable(rows=(ClauseRow(id="1", agent="a", modality="O", verb="x",
                                         condition="done(",),))
        with pytest.raises(NormaError) as exc:
            rows_to_model(table)
        assert exc.value.code == "PARSE_CONDITION"

    def test_result_always_validates(self):
        model = rows_to_model(model_to_rows(course_model()))
        assert validate(model) == []


class TestModelRoundTrip:
    def test_empty_model(self):
        assert model_to_rows(ContractModel()).rows == ()

    def test_course_row_count(self):
        table = model_to_rows(course_model())
        top = [r for r in table.rows if "." not in r.id]
        sub = [r for r in table.rows if "." in r.id]
        assert len(top) == 7
        assert [r.id for r in sub] == ["2.1", "2.2"]

    def test_course_round_trip(self):
        course = course_model()
        again = rows_to_model(model_to_rows(course))
        assert again == autoname(ContractModel(title="", clauses=course.clauses,
                                               reparations=course.reparations))

    @settings(max_examples=200)
    @given(contract_models())
    def test_round_trip_up_to_names(self, model):
        table = model_to_rows(model)
        rebuilt = rows_to_model(table)
        assert validate(rebuilt) == []
        # Structure is preserved: flattening the rebuilt model gives the
        # same table, and converting again is a fixpoint.
        assert model_to_rows(rebuilt) == table
        assert rows_to_model(model_to_rows(rebuilt)) == rebuilt
