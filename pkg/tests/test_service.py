"""HTTP service: endpoint behaviour, error payloads, model storage."""

import json
import threading

import pytest
from fastapi.testclient import TestClient

from norma.coml import emit_coml, parse_coml
from norma.service import create_app

from course_fixture import COURSE_TEXT, course_model


@pytest.fixture
def client(tmp_path):
    app = create_app(store_dir=tmp_path / "store")
    with TestClient(app) as c:
        yield c


@pytest.fixture
def course_coml():
    return emit_coml(course_model())


class TestExtraction:
    def test_course_text_gives_seven_rows(self, client):
        response = client.post("/nl/tsv", content=COURSE_TEXT.encode())
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/tab-separated-values")
        rows = response.text.strip().split("\n")[1:]
        top = [r for r in rows if "." not in r.split("\t")[0]]
        assert len(top) == 7

    def test_empty_body_400(self, client):
        response = client.post("/nl/tsv", content=b"")
        assert response.status_code == 400
        assert response.json()["code"] == "EMPTY_INPUT"

    def test_single_sentence(self, client):
        response = client.post("/nl/tsv", content=b"Users must pay.")
        assert len(response.text.strip().split("\n")) == 2


class TestConversions:
    def test_tsv_to_coml_round_trips(self, client, course_coml):
        tsv = client.post("/coml/tsv", content=course_coml.encode()).text
        coml = client.post("/tsv/coml", content=tsv.encode())
        assert coml.status_code == 200
        assert parse_coml(coml.text).clauses == course_model().clauses

    def test_codsh(self, client, course_coml):
        response = client.post("/coml/codsh", content=course_coml.encode())
        assert response.status_code == 200
        assert response.text.startswith("#title course rules\nc1: O<student>")

    def test_cnl_with_misses_header(self, client):
        from norma.model import (
            Action, Agent, Atomic, Clause, ContractModel, Modality,
        )

        model = ContractModel(
            clauses=(Clause("c1", Atomic(Agent("student"), Modality.OBLIGATION,
                                         Action("zzzq"))),)
        )
        response = client.post("/coml/cnl", content=emit_coml(model).encode())
        assert response.status_code == 200
        assert response.headers["X-Lexicon-Misses"] == "zzzq"
        assert response.text == ""

    def test_cnl_clean(self, client, course_coml):
        response = client.post("/coml/cnl", content=course_coml.encode())
        assert response.status_code == 200
        assert "X-Lexicon-Misses" not in response.headers
        assert "[c1] the student must register for course before time 7" in response.text

    def test_malformed_coml_400(self, client):
        response = client.post("/coml/codsh", content=b"<contract")
        assert response.status_code == 400
        assert response.json()["code"] == "XML_MALFORMED"

    def test_uppaal_xml(self, client, course_coml):
        response = client.post("/coml/uppaal", content=course_coml.encode())
        assert response.status_code == 200
        assert response.text.startswith('<?xml version="1.0"')
        assert "<nta>" in response.text


class TestQueries:
    def test_syntactic_four_matches(self, client, course_coml):
        body = {"coml": course_coml, "query": {"template": 1,
                                               "bindings": {"agent": "student"}}}
        response = client.post("/coml/syntactic", content=json.dumps(body).encode())
        assert response.status_code == 200
        payload = response.json()
        assert payload["matches"] == ["c1", "c2_1", "c2_2", "c7"]
        assert payload["answer"].count("- ") == 4

    def test_semantic_not_satisfied(self, client, course_coml):
        body = {
            "coml": course_coml,
            "query": {"template": 7,
                      "bindings": {"agent": "student",
                                   "action": "register for course",
                                   "number": "5"}},
        }
        response = client.post("/coml/semantic", content=json.dumps(body).encode())
        assert response.status_code == 200
        payload = response.json()
        assert payload["outcome"] == "NotSatisfied"
        register = [s for s in payload["trace"] if s["action"] == "register for course"]
        assert register and 5 <= register[0]["time"] < 7

    def test_unknown_template_400(self, client, course_coml):
        body = {"coml": course_coml, "query": {"template": 99, "bindings": {}}}
        response = client.post("/coml/syntactic", content=json.dumps(body).encode())
        assert response.status_code == 400
        assert response.json()["code"] == "UNKNOWN_TEMPLATE"

    def test_state_limit_422(self, client, course_coml):
        body = {
            "coml": course_coml,
            "query": {"template": 9, "bindings": {}},
            "stateLimit": 5,
        }
        response = client.post("/coml/semantic", content=json.dumps(body).encode())
        assert response.status_code == 422
        assert response.json()["code"] == "STATE_LIMIT"

    def test_templates_and_completions(self, client, course_coml):
        listing = client.get("/queries").json()
        assert len(listing) == 10
        body = {"coml": course_coml, "template": 1}
        slots = client.post("/coml/completions", content=json.dumps(body).encode()).json()
        assert slots == {"agent": ["grader", "student"]}


class TestModels:
    def test_put_get_round_trip(self, client, course_coml):
        put = client.put("/models/course", content=course_coml.encode())
        assert put.status_code == 200
        assert put.json()["id"] == "course"
        got = client.get("/models/course")
        assert got.status_code == 200
        assert got.text == course_coml

    def test_get_unknown_404(self, client):
        assert client.get("/models/ghost").status_code == 404

    def test_put_invalid_coml_400(self, client):
        assert client.put("/models/x", content=b"<bad").status_code == 400

    def test_list(self, client, course_coml):
        client.put("/models/a", content=course_coml.encode())
        client.put("/models/b", content=course_coml.encode())
        listing = client.get("/models").json()
        assert [m["id"] for m in listing] == ["a", "b"]
        assert all(m["createdAt"] and m["updatedAt"] for m in listing)

    def test_concurrent_puts_never_tear(self, client, course_coml):
        other = emit_coml(course_model())

        def writer(body):
            for _ in range(20):
                assert client.put("/models/shared", content=body.encode()).status_code == 200

        threads = [threading.Thread(target=writer, args=(b,))
                   for b in (course_coml, other)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        final = client.get("/models/shared")
        assert final.status_code == 200
        parse_coml(final.text)  # intact, parseable document


def test_identical_requests_identical_responses(client, course_coml):
    body = {"coml": course_coml, "query": {"template": 1, "bindings": {"agent": "student"}}}
    first = client.post("/coml/syntactic", content=json.dumps(body).encode())
    second = client.post("/coml/syntactic", content=json.dumps(body).encode())
    assert first.content == second.content
