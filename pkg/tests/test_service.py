import json
import threading
import time
import urllib.error
import urllib.request

import pytest

from tsbench.engines import InsertStats, OperatorResult
from tsbench.runner import parse_results_csv
from tsbench.service import BenchService


@pytest.fixture(scope="module")
def service():
    svc = BenchService(port=0).start()
    yield svc
    svc.stop()


@pytest.fixture(scope="module")
def base(service):
    return f"http://127.0.0.1:{service.port}"


def get(url):
    with urllib.request.urlopen(url) as r:
        return r.status, r.headers.get("Content-Type", ""), r.read()


def get_error(url):
    try:
        urllib.request.urlopen(url)
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read())
    raise AssertionError(f"expected an HTTP error from {url}")


def post(url, body):
    req = urllib.request.Request(url, data=body, method="POST")
    try:
        with urllib.request.urlopen(req) as r:
            return r.status, json.loads(r.read())
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read())


class TestCatalogEndpoints:
    def test_operators_sorted_and_complete(self, base):
        status, ctype, body = get(base + "/api/operators")
        assert status == 200 and ctype.startswith("application/json")
        ops = json.loads(body)
        names = [o["name"] for o in ops]
        assert names == sorted(names)
        assert len(names) == 14
        assert "moving_average" in names and "znormalize_native" in names

    def test_sax_schema_lists_bounds(self, base):
        ops = json.loads(get(base + "/api/operators")[2])
        sax = next(o for o in ops if o["name"] == "sax")
        params = {p["name"]: p for p in sax["params"]}
        assert params["w"]["min"] == 1
        assert params["a"]["min"] == 2 and params["a"]["max"] == 20

    def test_modes_reported_per_engine(self, base):
        ops = json.loads(get(base + "/api/operators")[2])
        znorm = next(o for o in ops if o["name"] == "znormalize")
        assert znorm["modes"]["column_store"] == ["udf", "native"]
        assert znorm["modes"]["row_store"] == ["udf"]

    def test_datasets_fresh_server(self, base):
        entries = json.loads(get(base + "/api/datasets")[2])
        builtin = [e["id"] for e in entries if e["kind"] == "builtin"]
        assert builtin == ["alabama_mini", "sports_mini", "mex_mini",
                           "hydraulic_mini"]
        mex = next(e for e in entries if e["id"] == "mex_mini")
        assert mex["regularity"] == "irregular"


class TestRun:
    def test_default_run_shape(self, base):
        status, ctype, body = get(
            base + "/api/run?engines=row_store,column_store&operator=sum"
                   "&dataset=sports_mini&rows=100&cols=5")
        assert status == 200
        assert ctype.startswith("text/csv")
        results, rec = parse_results_csv(body)
        assert len(results) == 2 * (1 + 5)  # default reps=5
        assert rec is not None and rec.winner in ("row_store", "column_store")

    def test_validation_error_codes(self, base):
        q = "engines=row_store&operator=sum&dataset=sports_mini"
        code, body = get_error(base + f"/api/run?{q}&rows=0&cols=5")
        assert (code, body["code"]) == (400, "OutOfRange")
        code, body = get_error(base + f"/api/run?{q}&rows=10&cols=0")
        assert (code, body["code"]) == (400, "OutOfRange")
        code, body = get_error(
            base + "/api/run?engines=row_store&operator=fly"
                   "&dataset=sports_mini&rows=10&cols=2")
        assert (code, body["code"]) == (404, "UnknownOperator")
        code, body = get_error(
            base + "/api/run?engines=warp&operator=sum"
                   "&dataset=sports_mini&rows=10&cols=2")
        assert (code, body["code"]) == (404, "UnknownEngine")
        code, body = get_error(
            base + "/api/run?engines=row_store&operator=sum&dataset=nope"
                   "&rows=10&cols=2")
        assert (code, body["code"]) == (404, "UnknownDataset")
        code, body = get_error(base + f"/api/run?{q}&rows=ten&cols=2")
        assert (code, body["code"]) == (400, "InvalidParameter")
        code, body = get_error(
            base + "/api/run?engines=row_store&operator=sax&dataset=sports_mini"
                   "&rows=20&cols=2&a=99")
        assert (code, body["code"]) == (400, "OutOfRange")
        code, body = get_error(base + f"/api/run?{q}&rows=10&cols=2&reps=0")
        assert (code, body["code"]) == (400, "OutOfRange")

    def test_native_pin_on_wrong_engine(self, base):
        code, body = get_error(
            base + "/api/run?engines=row_store&operator=znormalize_native"
                   "&dataset=sports_mini&rows=50&cols=2")
        assert (code, body["code"]) == (400, "UnsupportedMode")
        status, _, _ = get(
            base + "/api/run?engines=column_store&operator=znormalize_native"
                   "&dataset=sports_mini&rows=50&cols=2&reps=1")
        assert status == 200

    def test_operator_failure_maps_to_500(self, base):
        code, body = get_error(
            base + "/api/run?engines=row_store&operator=hotsax"
                   "&dataset=sports_mini&rows=30&cols=1&win=10&count=500")
        assert code == 500
        assert body["code"] == "OutOfRange"

    def test_identical_requests_identical_payload_columns(self, base):
        url = (base + "/api/run?engines=row_store,column_store&operator=sum"
                      "&dataset=sports_mini&rows=50&cols=3&reps=2")
        rows_a, _ = parse_results_csv(get(url)[2])
        rows_b, _ = parse_results_csv(get(url)[2])
        strip = [(r.engine, r.operator, r.dataset, r.rows, r.cols, r.phase, r.rep)
                 for r in rows_a]
        assert strip == [(r.engine, r.operator, r.dataset, r.rows, r.cols,
                          r.phase, r.rep) for r in rows_b]


class TestUpload:
    def test_upload_run_cycle(self, base):
        status, body = post(base + "/api/datasets/up1", b"timestamp,a\n0,1.0\n10,2.0\n")
        assert status == 200
        assert body == {"name": "up1", "rows": 2, "series": 1}
        entries = json.loads(get(base + "/api/datasets")[2])
        assert any(e["id"] == "up1" and e["kind"] == "uploaded" for e in entries)
        status, _, csv = get(base + "/api/run?engines=row_store&operator=sum"
                                    "&dataset=up1&rows=2&cols=1&reps=1")
        assert status == 200
        results, _ = parse_results_csv(csv)
        assert {r.dataset for r in results} == {"up1"}

    def test_duplicate_upload_conflicts(self, base):
        post(base + "/api/datasets/dup", b"timestamp,a\n0,1\n1,2\n")
        status, body = post(base + "/api/datasets/dup", b"timestamp,a\n0,1\n1,2\n")
        assert (status, body["code"]) == (409, "DuplicateDataset")

    def test_builtin_name_conflicts(self, base):
        status, body = post(base + "/api/datasets/sports_mini",
                            b"timestamp,a\n0,1\n1,2\n")
        assert (status, body["code"]) == (409, "DuplicateDataset")

    def test_malformed_body_rejected(self, base):
        status, body = post(base + "/api/datasets/bad", b"timestamp,a\n0,zap\n")
        assert (status, body["code"]) == (400, "MalformedCsv")
        status, body = post(base + "/api/datasets/bad2", b"timestamp,a\n5,1\n3,2\n")
        assert (status, body["code"]) == (400, "NonMonotonicTimestamps")


class SlowStubEngine:
    """Records the wall-clock span of each measured run call."""

    sections = []
    lock = threading.Lock()

    def __init__(self, engine_id, chunk_size=10000):
        self.engine_id = engine_id

    def insert(self, dataset):
        return InsertStats(rows=dataset.n_rows, cells=0, elapsed_ms=0.0)

    def run(self, name, req):
        start = time.monotonic()
        time.sleep(0.02)
        end = time.monotonic()
        with SlowStubEngine.lock:
            SlowStubEngine.sections.append((start, end))
        return OperatorResult(payload=None, elapsed_ms=(end - start) * 1000)


class TestRunQueue:
    def test_concurrent_runs_never_interleave(self):
        svc = BenchService(port=0, engine_factory=SlowStubEngine).start()
        try:
            url = (f"http://127.0.0.1:{svc.port}/api/run?engines=row_store"
                   "&operator=sum&dataset=sports_mini&rows=10&cols=1&reps=3"
                   "&warmups=0")
            SlowStubEngine.sections = []
            errors = []

            def client():
                try:
                    get(url)
                except Exception as e:  # noqa: BLE001
                    errors.append(e)

            threads = [threading.Thread(target=client) for _ in range(2)]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
            assert not errors
            spans = sorted(SlowStubEngine.sections)
            assert len(spans) == 6
            for (_, end_a), (start_b, _) in zip(spans, spans[1:]):
                assert start_b >= end_a  # measured sections never overlap
        finally:
            svc.stop()


class TestStaticLanding:
    def test_root_serves_html(self, base):
        status, ctype, _ = get(base + "/")
        assert status == 200
        assert ctype.startswith("text/html")
