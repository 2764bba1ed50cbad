"""HTTP service exposing each pipeline stage, plus model persistence.

Every endpoint is a thin adapter over the library: raw bodies in the
pipeline's native formats (text, TSV, COML, CODSH, CNL, verifier XML),
JSON envelopes for queries. Errors map to JSON bodies carrying the
module diagnostic code. Stored models live as ``{id}.coml.xml`` files,
written atomically; there is no other shared state.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
import threading
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
import anyio.to_thread

from . import queries as qs
from .cnl import default_lexicon, verbalize
from .codsh import print_codsh
from .coml import emit_coml, parse_coml
from .errors import NormaError
from .extract import DEFAULT_RULES, extract
from .nta import emit_uppaal_xml, translate
from .tsv import emit_tsv, model_to_rows, parse_tsv, rows_to_model

_ID_RE = re.compile(r"[A-Za-z0-9_-]{1,64}\Z")

TSV_TYPE = "text/tab-separated-values; charset=utf-8"
XML_TYPE = "application/xml; charset=utf-8"
TEXT_TYPE = "text/plain; charset=utf-8"
JSON_TYPE = "application/json"

_check_slots = threading.Semaphore(os.cpu_count() or 2)


class ModelStore:
    """Flat directory of COML files with atomic replacement."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, model_id: str) -> Path:
        return self.root / f"{model_id}.coml.xml"

    def put(self, model_id: str, coml_text: str) -> dict:
        parse_coml(coml_text)  # reject invalid documents up front
        target = self.path(model_id)
        existed = target.exists()
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(coml_text)
            os.replace(tmp, target)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
        meta = self.root / f"{model_id}.meta.json"
        if not existed or not meta.exists():
            self._write_meta(meta, datetime.now(timezone.utc).isoformat())
        return self.describe(model_id)

    def _write_meta(self, meta: Path, created: str) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump({"createdAt": created}, fh)
        os.replace(tmp, meta)

    def get(self, model_id: str) -> str | None:
        target = self.path(model_id)
        if not target.exists():
            return None
        return target.read_text("utf-8")

    def describe(self, model_id: str) -> dict:
        target = self.path(model_id)
        meta = self.root / f"{model_id}.meta.json"
        created = None
        if meta.exists():
            created = json.loads(meta.read_text("utf-8")).get("createdAt")
        updated = datetime.fromtimestamp(
            target.stat().st_mtime, timezone.utc
        ).isoformat()
        return {"id": model_id, "createdAt": created or updated, "updatedAt": updated}

    def list(self) -> list[dict]:
        ids = sorted(p.name[: -len(".coml.xml")] for p in self.root.glob("*.coml.xml"))
        return [self.describe(i) for i in ids]


def _error_response(exc: NormaError) -> JSONResponse:
    status = 422 if exc.code == "STATE_LIMIT" else 400
    body = {"code": exc.code, "message": exc.message, "location": exc.location}
    return JSONResponse(status_code=status, content=body)


def create_app(store_dir: str | Path | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="norma", docs_url=None, redoc_url=None)
    store = ModelStore(Path(store_dir or os.environ.get("NORMA_STORE", "norma-store")))

    @app.exception_handler(NormaError)
    async def handle_norma_error(request: Request, exc: NormaError):
        return _error_response(exc)

    async def body_text(request: Request) -> str:
        return (await request.body()).decode("utf-8")

    @app.post("/nl/tsv")
    async def nl_tsv(request: Request) -> Response:
        text = await body_text(request)
        if not text.strip():
            raise NormaError("EMPTY_INPUT", "no input text")
        return Response(emit_tsv(extract(text, DEFAULT_RULES)), media_type=TSV_TYPE)

    @app.post("/tsv/coml")
    async def tsv_coml(request: Request) -> Response:
        model = rows_to_model(parse_tsv(await body_text(request)))
        return Response(emit_coml(model), media_type=XML_TYPE)

    @app.post("/coml/tsv")
    async def coml_tsv(request: Request) -> Response:
        model = parse_coml(await body_text(request))
        return Response(emit_tsv(model_to_rows(model)), media_type=TSV_TYPE)

    @app.post("/coml/codsh")
    async def coml_codsh(request: Request) -> Response:
        model = parse_coml(await body_text(request))
        return Response(print_codsh(model), media_type=TEXT_TYPE)

    @app.post("/coml/cnl")
    async def coml_cnl(request: Request) -> Response:
        model = parse_coml(await body_text(request))
        result = verbalize(model, default_lexicon())
        headers = {}
        if result.misses:
            tokens = sorted({m.token for m in result.misses})
            headers["X-Lexicon-Misses"] = ",".join(tokens)
        return Response(result.text, media_type=TEXT_TYPE, headers=headers)

    @app.post("/coml/uppaal")
    async def coml_uppaal(request: Request) -> Response:
        model = parse_coml(await body_text(request))
        return Response(emit_uppaal_xml(translate(model)), media_type=XML_TYPE)

    def _envelope(payload_text: str) -> tuple:
        try:
            payload = json.loads(payload_text)
        except json.JSONDecodeError as exc:
            raise NormaError("BAD_QUERY", f"invalid JSON body: {exc}") from None
        if not isinstance(payload, dict) or "coml" not in payload:
            raise NormaError("BAD_QUERY", 'body must be {"coml": ..., "query": {...}}')
        model = parse_coml(str(payload["coml"]))
        return model, payload

    @app.post("/coml/syntactic")
    async def coml_syntactic(request: Request) -> Response:
        model, payload = _envelope(await body_text(request))
        instance = qs.parse_instance(payload.get("query"))
        result = qs.run_syntactic(model, instance)
        return Response(qs.dumps(qs.result_payload(result)), media_type=JSON_TYPE)

    @app.post("/coml/semantic")
    async def coml_semantic(request: Request) -> Response:
        model, payload = _envelope(await body_text(request))
        instance = qs.parse_instance(payload.get("query"))
        horizon = payload.get("horizon")
        horizon = int(horizon) if horizon is not None else None
        state_limit = payload.get("stateLimit")
        state_limit = int(state_limit) if state_limit is not None else None

        def run():
            with _check_slots:
                return qs.run_semantic(model, instance, horizon=horizon,
                                       state_limit=state_limit)

        verdict = await anyio.to_thread.run_sync(run)
        return Response(qs.dumps(qs.verdict_payload(verdict)), media_type=JSON_TYPE)

    @app.get("/queries")
    async def queries_listing() -> Response:
        return Response(qs.dumps(qs.templates_payload()), media_type=JSON_TYPE)

    @app.post("/coml/completions")
    async def coml_completions(request: Request) -> Response:
        model, payload = _envelope(await body_text(request))
        template = qs.get_template(int(payload.get("template", 0)))
        return Response(
            qs.dumps(qs.complete_slots(model, template)), media_type=JSON_TYPE
        )

    def _check_id(model_id: str) -> None:
        if not _ID_RE.match(model_id):
            raise NormaError("BAD_ID", "model ids are 1-64 chars of [A-Za-z0-9_-]")

    @app.put("/models/{model_id}")
    async def put_model(model_id: str, request: Request) -> Response:
        _check_id(model_id)
        info = store.put(model_id, await body_text(request))
        return Response(qs.dumps(info), media_type=JSON_TYPE)

    @app.get("/models/{model_id}")
    async def get_model(model_id: str) -> Response:
        _check_id(model_id)
        text = store.get(model_id)
        if text is None:
            return JSONResponse(
                status_code=404,
                content={"code": "NOT_FOUND", "message": f"no model {model_id!r}",
                         "location": None},
            )
        return Response(text, media_type=XML_TYPE)

    @app.get("/models")
    async def list_models() -> Response:
        return Response(qs.dumps(store.list()), media_type=JSON_TYPE)

    ui = Path(ui_dir) if ui_dir else Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui.is_dir():
        app.mount("/", StaticFiles(directory=ui, html=True), name="ui")
    return app
