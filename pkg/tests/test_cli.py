import json
import urllib.request

from tsbench.cli import main
from tsbench.runner import parse_results_csv


class TestRunCommand:
    def test_prints_csv(self, capsys):
        rc = main(["run", "--engines", "row_store,column_store", "--operator",
                   "sum", "--dataset", "sports_mini", "--rows", "50",
                   "--cols", "3", "--reps", "2"])
        assert rc == 0
        out = capsys.readouterr().out
        results, rec = parse_results_csv(out.encode())
        assert len(results) == 2 * (1 + 2)
        assert rec is not None

    def test_operator_params_pass_through(self, capsys):
        rc = main(["run", "--engines", "row_store", "--operator", "sax",
                   "--dataset", "sports_mini", "--rows", "60", "--cols", "2",
                   "--reps", "1", "--w", "6", "--a", "5"])
        assert rc == 0
        assert "sax" in capsys.readouterr().out

    def test_dataset_csv_flag(self, tmp_path, capsys):
        path = tmp_path / "mine.csv"
        path.write_bytes(b"timestamp,a\n0,1.0\n10,2.0\n20,3.0\n")
        rc = main(["run", "--engines", "row_store", "--operator", "sum",
                   "--dataset-csv", str(path), "--rows", "3", "--cols", "1",
                   "--reps", "1"])
        assert rc == 0
        results, _ = parse_results_csv(capsys.readouterr().out.encode())
        assert {r.dataset for r in results} == {"uploaded"}

    def test_validation_failure_exit_code(self, capsys):
        rc = main(["run", "--engines", "row_store", "--operator", "sum",
                   "--dataset", "sports_mini", "--rows", "0", "--cols", "1"])
        assert rc == 1
        assert "OutOfRange" in capsys.readouterr().err

    def test_unknown_operator_exit_code(self, capsys):
        rc = main(["run", "--engines", "row_store", "--operator", "fly",
                   "--dataset", "sports_mini", "--rows", "5", "--cols", "1"])
        assert rc == 1
        assert "UnknownOperator" in capsys.readouterr().err

    def test_missing_dataset_flags(self, capsys):
        rc = main(["run", "--engines", "row_store", "--operator", "sum",
                   "--rows", "5", "--cols", "1"])
        assert rc == 2


class TestServeCommand:
    def test_server_answers_while_running(self):
        from tsbench.service import BenchService

        svc = BenchService(port=0).start()
        try:
            with urllib.request.urlopen(
                    f"http://127.0.0.1:{svc.port}/api/operators") as r:
                assert r.status == 200
                assert len(json.loads(r.read())) == 14
        finally:
            svc.stop()

    def test_port_env_default(self, monkeypatch):
        from tsbench.service import BenchService

        monkeypatch.setenv("BENCH_PORT", "0")
        svc = BenchService()
        try:
            assert svc.port > 0  # 0 asks the OS for an ephemeral port
        finally:
            svc.server.server_close()
