"""HTTP facade: request in, benchmark out, CSV back.

Endpoints:

    GET  /api/run?engines=row_store,column_store&operator=sum&dataset=...
         &rows=N&cols=M[&reps=R][&warmups=W][&mode=udf|native][&<op params>]
         -> 200 text/csv benchmark results (recommendation in # comments)
    GET  /api/operators   -> JSON operator catalog with schemas and modes
    GET  /api/datasets    -> JSON built-in profiles plus uploads
    POST /api/datasets/{name}  (CSV body) -> JSON dimension echo

Validation failures return 400 with a JSON body {code, message}; unknown
operator/dataset/engine names return 404; operator failures during a run
return 500 with the operator's error code.  Run requests are served one
at a time in arrival order so measured sections never interleave; the
read-only endpoints answer concurrently.
"""

from __future__ import annotations

import json
import os
import threading
from collections import deque
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, unquote, urlparse

from . import catalog
from .data import parse_dataset_csv
from .engines import OperatorRequest, create_engine, engine_display_name, engine_ids
from .errors import (
    BenchError,
    DuplicateDataset,
    InvalidParameter,
    UnknownDataset,
    UnknownEngine,
    UnknownOperator,
    UnsupportedMode,
)
from .runner import (
    BenchmarkFailure,
    BenchmarkSpec,
    DatasetStore,
    recommend,
    results_to_csv,
    run_benchmark,
)

DEFAULT_PORT = 8080

_RESERVED_RUN_PARAMS = ("engines", "operator", "dataset", "rows", "cols",
                        "reps", "warmups", "mode")

_STATUS_BY_ERROR = {
    UnknownOperator: 404,
    UnknownDataset: 404,
    UnknownEngine: 404,
    DuplicateDataset: 409,
}


def parse_run_request(raw: dict[str, str], store: DatasetStore) -> BenchmarkSpec:
    """Map one flat query-parameter dict onto a validated BenchmarkSpec."""
    for required in ("engines", "operator", "dataset", "rows", "cols"):
        if required not in raw or raw[required] == "":
            raise InvalidParameter(f"missing required parameter {required!r}")
    operator = raw["operator"]
    spec = catalog.operator_spec(operator)  # 404 on unknown names

    engines = tuple(e for e in raw["engines"].split(",") if e)
    known = set(engine_ids())
    for e in engines:
        if e not in known:
            raise UnknownEngine(e)

    dataset = raw["dataset"]
    store.resolve(dataset)  # 404 on unknown names

    def _int(key: str, default: int | None = None) -> int:
        value = raw.get(key)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            raise InvalidParameter(f"{key}={value!r} is not an integer") from None

    mode = raw.get("mode", catalog.UDF)
    if spec.forced_mode:
        mode = spec.forced_mode
    if mode not in catalog.MODES:
        raise InvalidParameter(f"unknown mode {mode!r}")
    for engine in engines:
        if mode not in catalog.supported_modes(operator, engine):
            raise UnsupportedMode(f"{operator} has no {mode!r} mode on {engine}")

    params = {k: v for k, v in raw.items() if k not in _RESERVED_RUN_PARAMS}
    typed = catalog.validate_params(operator, params)

    request = OperatorRequest(operator=operator, params=typed, mode=mode)
    return BenchmarkSpec(
        engines=engines,
        operator=request,
        dataset=dataset,
        rows=_int("rows"),
        cols=_int("cols"),
        reps=_int("reps", 5),
        warmups=_int("warmups", 1),
    )


class _FifoLock:
    """Mutual exclusion granted strictly in arrival order."""

    def __init__(self):
        self._cond = threading.Condition()
        self._queue: deque[int] = deque()
        self._counter = 0
        self._active: int | None = None

    def __enter__(self):
        with self._cond:
            self._counter += 1
            ticket = self._counter
            self._queue.append(ticket)
            while self._active is not None or self._queue[0] != ticket:
                self._cond.wait()
            self._queue.popleft()
            self._active = ticket
        return self

    def __exit__(self, *exc):
        with self._cond:
            self._active = None
            self._cond.notify_all()
        return False


class BenchService:
    """Owns the dataset store, the run queue, and the HTTP server."""

    def __init__(self, port: int | None = None, host: str = "127.0.0.1",
                 store: DatasetStore | None = None, engine_factory=create_engine,
                 quiet: bool = True):
        if port is None:
            port = int(os.environ.get("BENCH_PORT", DEFAULT_PORT))
        self.store = store or DatasetStore()
        self.engine_factory = engine_factory
        self.run_lock = _FifoLock()
        self.quiet = quiet

        service = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, fmt, *args):
                if not service.quiet:
                    super().log_message(fmt, *args)

            def do_GET(self):
                service.handle_get(self)

            def do_POST(self):
                service.handle_post(self)

        self.server = ThreadingHTTPServer((host, port), Handler)
        self.port = self.server.server_address[1]
        self._thread: threading.Thread | None = None

    # -- lifecycle -----------------------------------------------------------

    def start(self) -> "BenchService":
        self._thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self.server.shutdown()
        self.server.server_close()
        if self._thread:
            self._thread.join(timeout=5)

    def serve_forever(self) -> None:
        self.server.serve_forever()

    # -- plumbing --------------------------------------------------------

    def _send(self, handler, status: int, body: bytes, content_type: str) -> None:
        handler.send_response(status)
        handler.send_header("Content-Type", content_type)
        handler.send_header("Content-Length", str(len(body)))
        handler.send_header("Access-Control-Allow-Origin", "*")
        handler.end_headers()
        handler.wfile.write(body)

    def _send_json(self, handler, status: int, payload) -> None:
        self._send(handler, status, json.dumps(payload, indent=1).encode("utf-8"),
                   "application/json")

    def _send_error(self, handler, exc: BenchError) -> None:
        status = _STATUS_BY_ERROR.get(type(exc), 400)
        if isinstance(exc, BenchmarkFailure):
            status = 500
        self._send_json(handler, status, {"code": exc.code, "message": str(exc)})

    # -- routing -----------------------------------------------------------

    def handle_get(self, handler) -> None:
        url = urlparse(handler.path)
        try:
            if url.path == "/api/run":
                self._run(handler, url)
            elif url.path == "/api/operators":
                self._send_json(handler, 200, catalog.schema())
            elif url.path == "/api/datasets":
                self._send_json(handler, 200, self.store.entries())
            elif url.path == "/api/engines":
                self._send_json(handler, 200, self._engines_payload())
            elif not url.path.startswith("/api"):
                self._static(handler, url.path)
            else:
                self._send_json(handler, 404, {"code": "NotFound",
                                               "message": url.path})
        except BenchError as e:
            self._send_error(handler, e)
        except Exception as e:  # pragma: no cover - last-resort guard
            self._send_json(handler, 500, {"code": "InternalError", "message": str(e)})

    def handle_post(self, handler) -> None:
        url = urlparse(handler.path)
        try:
            if url.path.startswith("/api/datasets/"):
                name = unquote(url.path[len("/api/datasets/"):])
                if not name or "/" in name:
                    raise InvalidParameter(f"bad dataset name {name!r}")
                length = int(handler.headers.get("Content-Length", 0))
                body = handler.rfile.read(length)
                self._upload(handler, name, body)
            else:
                self._send_json(handler, 404, {"code": "NotFound",
                                               "message": url.path})
        except BenchError as e:
            self._send_error(handler, e)
        except Exception as e:  # pragma: no cover - last-resort guard
            self._send_json(handler, 500, {"code": "InternalError", "message": str(e)})

    # -- endpoints ---------------------------------------------------------

    def _engines_payload(self) -> list[dict]:
        return [{"id": eid, "display_name": engine_display_name(eid)}
                for eid in engine_ids()]

    def _run(self, handler, url) -> None:
        raw = {k: v[-1] for k, v in parse_qs(url.query, keep_blank_values=True).items()}
        spec = parse_run_request(raw, self.store)
        with self.run_lock:
            results = run_benchmark(spec, store=self.store,
                                    engine_factory=self.engine_factory)
        csv = results_to_csv(results, recommend(results))
        self._send(handler, 200, csv, "text/csv")

    def _upload(self, handler, name: str, body: bytes) -> None:
        dataset = parse_dataset_csv(body, name)
        self.store.upload(name, dataset)
        self._send_json(handler, 200, {"name": name, "rows": dataset.n_rows,
                                       "series": dataset.n_series})

    def _static(self, handler, path: str) -> None:
        ui_dir = os.environ.get("BENCH_UI_DIR")
        if ui_dir is None:
            here = os.path.dirname(os.path.abspath(__file__))
            candidate = os.path.normpath(
                os.path.join(here, "..", "..", "frontend", "dist"))
            ui_dir = candidate if os.path.isdir(candidate) else None
        if ui_dir:
            rel = path.lstrip("/") or "index.html"
            full = os.path.normpath(os.path.join(ui_dir, rel))
            if full.startswith(os.path.normpath(ui_dir)) and os.path.isfile(full):
                ctype = {
                    ".html": "text/html", ".js": "text/javascript",
                    ".css": "text/css", ".map": "application/json",
                }.get(os.path.splitext(full)[1], "application/octet-stream")
                with open(full, "rb") as f:
                    self._send(handler, 200, f.read(), ctype)
                return
        if path in ("/", "/index.html"):
            body = (
                "<html><body><h1>tsbench</h1><p>Endpoints: GET /api/run, "
                "GET /api/operators, GET /api/datasets, POST /api/datasets/{name}."
                " Build frontend/ to serve the console here.</p></body></html>"
            ).encode("utf-8")
            self._send(handler, 200, body, "text/html")
            return
        self._send_json(handler, 404, {"code": "NotFound", "message": path})
