"""Command-line client: replay, compute, cards, plot-data, exit codes."""

import json
import subprocess
from fractions import Fraction as F
from pathlib import Path

import pytest

from docit2.cards import ValueScale
from docit2.cli import main
from docit2.errors import InternalError, ProtocolError
from docit2.fuzzy import PiecewiseMF
from docit2.it2 import IT2MF
from docit2.mcdm import Criterion, DecisionProblem, LinguisticScale
from drivers import FIG_CONFIG

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "fig_session.docit2.json"
EVENTS = DATA / "fig_session.events.jsonl"

tri = PiecewiseMF.triangular
trap = PiecewiseMF.trapezoidal


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path: Path, data: dict) -> str:
    path.write_text(json.dumps(data))
    return str(path)


class TestCards:
    def test_digit_mode_prints_counts(self, capsys):
        code, out, err = run(capsys, "cards", "--values", "0,0.33,1", "--digits", "2")
        assert (code, out, err) == (0, "33,67\n", "")

    def test_chain_mode_prints_gap_counts(self, capsys):
        code, out, _ = run(capsys, "cards", "--values", "0,2,7", "--h-max", "7")
        assert (code, out) == (0, "1,4\n")

    def test_requires_exactly_one_mode(self, capsys):
        for extra in ((), ("--digits", "2", "--h-max", "7")):
            code, _, err = run(capsys, "cards", "--values", "0,1", *extra)
            assert code == 2
            assert json.loads(err)["error"] == "validation"

    def test_colliding_values_fail_with_precision_error(self, capsys):
        code, _, err = run(capsys, "cards", "--values", "0,0.001,1", "--digits", "2")
        payload = json.loads(err)
        assert code == 2
        assert payload["type"] == "PrecisionError"
        assert "increase digits" in payload["message"]


class TestReplay:
    def test_document_report(self, capsys):
        code, out, _ = run(capsys, "replay", "--input", str(GOLDEN))
        report = json.loads(out)
        assert code == 0
        assert report["phase"] == "assembled"
        assert report["events"] == 64
        assert sorted(report["labels"]) == ["high", "low", "medium"]
        side = report["sides"]["low/right"]
        assert side["fractions"] == [["0", "2/7", "1"]]
        assert side["decimals"] == [[0.0, 0.2857142857142857, 1.0]]
        assert side["reviewed"]

    def test_output_document_is_byte_identical(self, capsys, tmp_path):
        out_path = tmp_path / "copy.docit2.json"
        code, _, _ = run(
            capsys, "replay", "--input", str(GOLDEN), "--output", str(out_path)
        )
        assert code == 0
        assert out_path.read_bytes() == GOLDEN.read_bytes()

    def test_event_log_with_config_rebuilds_the_document(self, capsys, tmp_path):
        cfg = write_json(tmp_path / "config.json", FIG_CONFIG.to_json())
        out_path = tmp_path / "rebuilt.docit2.json"
        code, _, _ = run(
            capsys,
            "replay", "--input", str(EVENTS), "--config", cfg,
            "--output", str(out_path),
        )
        assert code == 0
        assert out_path.read_bytes() == GOLDEN.read_bytes()

    def test_event_log_without_config_fails(self, capsys):
        code, _, err = run(capsys, "replay", "--input", str(EVENTS))
        payload = json.loads(err)
        assert code == 2
        assert payload["field"] == "config"

    def test_missing_input_file(self, capsys):
        code, _, err = run(capsys, "replay", "--input", "no/such/file.docit2.json")
        payload = json.loads(err)
        assert code == 2
        assert payload["type"] == "FileNotFoundError"

    def test_malformed_document_reports_byte_offset(self, capsys, tmp_path):
        bad = tmp_path / "bad.docit2.json"
        bad.write_bytes(b"{oops")
        code, _, err = run(capsys, "replay", "--input", str(bad))
        payload = json.loads(err)
        assert code == 2
        assert isinstance(payload["offset"], int)

    def test_illegal_event_in_log_is_a_validation_failure(self, capsys, tmp_path):
        lines = EVENTS.read_text().splitlines()
        doubled = tmp_path / "doubled.events.jsonl"
        doubled.write_text("\n".join([lines[0], lines[0]] + lines[1:]) + "\n")
        cfg = write_json(tmp_path / "config.json", FIG_CONFIG.to_json())
        code, _, err = run(
            capsys, "replay", "--input", str(doubled), "--config", cfg
        )
        payload = json.loads(err)
        assert code == 2
        assert "event 1" in payload["message"]


class TestCompute:
    def band(self, mf: PiecewiseMF) -> dict:
        return IT2MF.from_t1(mf).to_dict()

    def test_order_of_disjoint_supports(self, capsys, tmp_path):
        low, high = self.band(tri(0.0, 0.1, 0.2)), self.band(tri(0.5, 0.6, 0.7))
        for a, b, relation, result in (
            (low, high, "less", -1),
            (high, low, "greater", 1),
            (low, low, "equal", 0),
        ):
            path = write_json(tmp_path / "order.json", {"op": "order", "a": a, "b": b})
            code, out, _ = run(capsys, "compute", "--input", path)
            parsed = json.loads(out)
            assert code == 0
            assert parsed["order"] == "order_1"
            assert (parsed["relation"], parsed["result"]) == (relation, result)

    def test_order_flag_overrides_the_file(self, capsys, tmp_path):
        a = {
            "lower": tri(0.0, 0.1, 0.2).to_dict(),
            "upper": trap(0.0, 0.05, 0.3, 0.5).to_dict(),
        }
        b = {
            "lower": tri(0.05, 0.15, 0.25).to_dict(),
            "upper": trap(0.04, 0.1, 0.2, 0.27).to_dict(),
        }
        path = write_json(
            tmp_path / "order.json", {"op": "order", "a": a, "b": b, "order": "order_2"}
        )
        _, out, _ = run(capsys, "compute", "--input", path)
        assert json.loads(out)["result"] == 1
        _, out, _ = run(capsys, "compute", "--input", path, "--order", "1")
        parsed = json.loads(out)
        assert parsed["order"] == "order_1"
        assert parsed["result"] == -1

    def test_add(self, capsys, tmp_path):
        operand = self.band(tri(0.0, 0.25, 0.5))
        path = write_json(
            tmp_path / "add.json", {"op": "add", "a": operand, "b": operand}
        )
        _, out, _ = run(capsys, "compute", "--input", path)
        assert json.loads(out)["result"] == self.band(tri(0.0, 0.5, 1.0))

    def test_scale_accepts_fraction_factor(self, capsys, tmp_path):
        path = write_json(
            tmp_path / "scale.json",
            {"op": "scale", "factor": "1/2", "operand": self.band(tri(0.0, 0.5, 1.0))},
        )
        _, out, _ = run(capsys, "compute", "--input", path)
        assert json.loads(out)["result"] == self.band(tri(0.0, 0.25, 0.5))

    def test_weighted_average_identity(self, capsys, tmp_path):
        operand = self.band(trap(0.1, 0.2, 0.3, 0.4))
        path = write_json(
            tmp_path / "wa.json",
            {"op": "wa", "operands": [operand], "weights": ["1"]},
        )
        _, out, _ = run(capsys, "compute", "--input", path)
        assert json.loads(out)["result"] == operand

    def rank_expression(self) -> dict:
        values = ValueScale(("low", "high"), (F(0), F(1)), F(1))
        scale = LinguisticScale(
            "quality",
            values,
            {
                "low": IT2MF.from_t1(tri(0.0, 0.25, 0.5)),
                "high": IT2MF.from_t1(tri(0.5, 0.75, 1.0)),
            },
        )
        criteria = (Criterion("c1", scale), Criterion("c2", scale))
        problem = DecisionProblem.of(
            ("a", "b"),
            criteria,
            ("1/2", "1/2"),
            {
                ("a", "c1"): "high",
                ("a", "c2"): "high",
                ("b", "c1"): "low",
                ("b", "c2"): "low",
            },
        )
        return {"op": "rank", "problem": problem.to_dict()}

    def test_rank_writes_report_and_knots(self, capsys, tmp_path):
        path = write_json(tmp_path / "rank.json", self.rank_expression())
        out_path, knots_path = tmp_path / "out.json", tmp_path / "knots.csv"
        code, out, _ = run(
            capsys,
            "compute", "--input", path,
            "--output", str(out_path), "--knots-output", str(knots_path),
        )
        assert (code, out) == (0, "")
        report = json.loads(out_path.read_text())
        assert report["ranking"]["order"] == "order_1"
        assert report["ranking"]["classes"] == [["a"], ["b"]]
        assert report["csv"] == "rank,alternative\n1,a\n2,b\n"
        assert knots_path.read_text().startswith("alternative,component,x,membership")

    def test_unknown_op(self, capsys, tmp_path):
        path = write_json(tmp_path / "nope.json", {"op": "frobnicate"})
        code, _, err = run(capsys, "compute", "--input", path)
        payload = json.loads(err)
        assert code == 2
        assert payload["field"] == "op"

    def test_unknown_order_name(self, capsys, tmp_path):
        path = write_json(tmp_path / "o.json", {"op": "order", "order": "order_9"})
        code, _, err = run(capsys, "compute", "--input", path)
        assert code == 2
        assert json.loads(err)["field"] == "order"


class TestPlotData:
    def test_raw_band_to_knot_csv(self, capsys, tmp_path):
        path = write_json(
            tmp_path / "band.json", IT2MF.from_t1(tri(0.0, 0.5, 1.0)).to_dict()
        )
        code, out, _ = run(capsys, "plot-data", "--input", path)
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "component,x,membership"
        assert "lower,0.5,1.0" in lines
        assert "upper,0.5,1.0" in lines

    def test_document_to_scale_knot_csv(self, capsys):
        code, out, _ = run(capsys, "plot-data", "--input", str(GOLDEN))
        assert code == 0
        assert out.startswith("label,component,x,membership\n")
        assert any(line.startswith("medium,upper,") for line in out.splitlines())


class TestExitCodes:
    def test_protocol_error_maps_to_3(self, capsys, monkeypatch):
        def raiser(args):
            raise ProtocolError(
                "no", phase="label_values", expected=["place_label_cards"]
            )

        monkeypatch.setattr("docit2.cli.cmd_replay", raiser)
        code, _, err = run(capsys, "replay", "--input", "x")
        payload = json.loads(err)
        assert code == 3
        assert payload["error"] == "protocol"
        assert payload["phase"] == "label_values"
        assert payload["expected"] == ["place_label_cards"]

    def test_internal_error_maps_to_4(self, capsys, monkeypatch):
        def raiser(args):
            raise InternalError("invariant broke")

        monkeypatch.setattr("docit2.cli.cmd_replay", raiser)
        code, _, err = run(capsys, "replay", "--input", "x")
        assert code == 4
        assert json.loads(err)["error"] == "internal"

    def test_unexpected_exception_maps_to_4(self, capsys, monkeypatch):
        def raiser(args):
            raise RuntimeError("surprise")

        monkeypatch.setattr("docit2.cli.cmd_replay", raiser)
        code, _, err = run(capsys, "replay", "--input", "x")
        payload = json.loads(err)
        assert code == 4
        assert payload["type"] == "RuntimeError"


class TestConsoleScript:
    def test_installed_entry_point(self):
        proc = subprocess.run(
            ["docit2", "cards", "--values", "0,0.33,1", "--digits", "2"],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert proc.stdout == "33,67\n"
        assert proc.stderr == ""
