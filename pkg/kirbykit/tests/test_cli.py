import json

import pytest

from kirbykit import cli
from kirbykit.errors import TemplateError
from kirbykit.handlebody import HandleStructure
from kirbykit.resources import corpus_file

from .utils import load_corpus


def run_cli(capsys, *args):
    with pytest.raises(SystemExit) as excinfo:
        cli.main([str(arg) for arg in args])

    output = capsys.readouterr().out
    return excinfo.value.code, output


def run_json(capsys, *args):
    code, output = run_cli(capsys, *args)
    return code, json.loads(output)


@pytest.fixture
def broken_script(tmp_path):
    path = tmp_path / "broken.script"
    path.write_text(
        json.dumps(
            {
                "start": str(corpus_file("torus.kby")),
                "moves": [{"op": "blow_down", "target": "tau"}],
            }
        )
    )
    return path


class TestReport:
    def test_to_dict(self):
        report = cli.Report("check", "x.script", data={"step": 2}, asserted=["a"])

        assert report.to_dict() == {
            "command": "check",
            "subject": "x.script",
            "verdict": "pass",
            "step": 2,
            "asserted": ["a"],
        }
        assert report.exit_code == 0

    def test_to_text(self):
        report = cli.Report(
            "check",
            "x.script",
            verdict="fail",
            message="step 0 (slide): h ≠ h does not hold",
            data={"final": {"chi": 1}},
            asserted=["h is an unknot"],
        )

        assert report.to_text() == "\n".join(
            [
                "check x.script: fail",
                "step 0 (slide): h ≠ h does not hold",
                '  final: {"chi": 1}',
                "  asserted:",
                "    - h is an unknot",
            ]
        )
        assert report.exit_code == 1

    @pytest.mark.parametrize(
        ["asserted", "flags", "expected"],
        (
            pytest.param([], {}, "pass", id="nothing asserted"),
            pytest.param(["x"], {}, "pass", id="allowed"),
            pytest.param(["x"], {"strict": True}, "pass-with-assertions", id="strict"),
            pytest.param(["x"], {"allow_assertions": False}, "fail", id="disallowed"),
        ),
    )
    def test_verdict(self, asserted, flags, expected):
        options = cli.build_parser().parse_args(["corpus-test"])
        for key, value in flags.items():
            setattr(options, key, value)

        verdict, _ = cli._verdict(asserted, options)
        assert verdict == expected


class TestInvariants:
    def test_corpus_file(self, capsys):
        code, report = run_json(capsys, "invariants", corpus_file("cusp.kby"))

        assert code == 0
        assert report["verdict"] == "pass"
        assert report["invariants"] == {
            "chi": 2,
            "sigma": 0,
            "h1": "0",
            "h2": "Z",
            "boundary_h1": "Z",
        }
        assert report["torus_bundle_h1"] == "Z"

    def test_monodromy_mismatch(self, capsys, tmp_path):
        path = tmp_path / "cusp.kby"
        load_corpus("cusp.kby").replace(monodromy=[[1, 0], [0, 1]]).dump(path)

        code, report = run_json(capsys, "invariants", path)

        assert code == 1
        assert report["verdict"] == "fail"
        assert "torus bundle" in report["message"]

    def test_text(self, capsys):
        path = corpus_file("fishtail.kby")
        code, output = run_cli(capsys, "--format", "text", "invariants", path)

        assert code == 0
        assert output.splitlines()[0] == f"invariants {path}: pass"
        assert "  torus_bundle_h1: Z^2" in output.splitlines()

    def test_d3_caveat(self, capsys, tmp_path):
        path = tmp_path / "three_handle.kby"
        path.write_text(
            json.dumps(
                {
                    "handles": [{"id": "h", "kind": "framed", "framing": 0}],
                    "three_handles": 1,
                }
            )
        )
        code, report = run_json(capsys, "invariants", path)

        assert code == 0
        assert report["caveat"].startswith("1 3-handle(s) without d3")

        code, report = run_json(capsys, "invariants", corpus_file("torus_star.kby"))
        assert "caveat" not in report

    @pytest.mark.parametrize(
        "content",
        (
            pytest.param(None, id="missing"),
            pytest.param('{"handles": [', id="syntax"),
            pytest.param('{"handles": [{"id": "h", "kind": "framed"}]}', id="invalid"),
        ),
    )
    def test_error(self, capsys, tmp_path, content):
        path = tmp_path / "input.kby"
        if content is not None:
            path.write_text(content)

        code, report = run_json(capsys, "invariants", path)

        assert code == 2
        assert report["verdict"] == "error"
        assert report["command"] == "invariants"


class TestCheck:
    def test_pass(self, capsys):
        code, report = run_json(capsys, "check", corpus_file("figure9_to_figure7.script"))

        assert code == 0
        assert report["verdict"] == "pass"
        assert report["final"]["boundary_h1"] == "Z^3"
        assert report["asserted"]
        assert len(report["certificate"]["steps"]) == 1

    def test_strict(self, capsys):
        code, report = run_json(
            capsys, "--strict", "check", corpus_file("fig11_to_cusp.script")
        )

        assert code == 0
        assert report["verdict"] == "pass-with-assertions"

    def test_no_assertions(self, capsys):
        code, report = run_json(
            capsys, "--no-allow-assertions", "check", corpus_file("fig11_to_cusp.script")
        )

        assert code == 1
        assert report["verdict"] == "fail"
        assert report["message"] == "asserted geometric conditions are not allowed"

    @pytest.mark.parametrize(
        ["path", "boundary_h1"],
        (
            pytest.param("corpus/figure7_to_T3.script", "Z^3", id="figure7_to_T3"),
            pytest.param("corpus/fig12_to_fig11.script", "Z", id="fig12_to_fig11"),
            pytest.param("figure7_to_figure8.script", "Z^3", id="alias"),
        ),
    )
    def test_corpus_name(self, capsys, monkeypatch, tmp_path, path, boundary_h1):
        monkeypatch.chdir(tmp_path)

        code, report = run_json(capsys, "check", path)

        assert code == 0
        assert report["verdict"] == "pass"
        assert report["final"]["boundary_h1"] == boundary_h1

    def test_cancel_23_without_d3(self, capsys, tmp_path):
        path = tmp_path / "no_d3.script"
        path.write_text(
            json.dumps(
                {
                    "start": {
                        "handles": [{"id": "h", "kind": "framed", "framing": 0}],
                        "three_handles": 1,
                    },
                    "moves": [
                        {
                            "op": "cancel_23",
                            "target": "h",
                            "assert": [{"handle": "h", "unknot": True}],
                        }
                    ],
                }
            )
        )
        code, report = run_json(capsys, "check", path)

        assert code == 1
        assert "attaching maps are given by d3" in report["message"]
        assert "without d3" in report["caveat"]

    def test_illegal_move(self, capsys, broken_script):
        code, report = run_json(capsys, "check", broken_script)

        assert code == 1
        assert report["step"] == 0
        assert report["message"].startswith("step 0 (blow_down):")

    def test_mismatch(self, capsys, tmp_path):
        path = tmp_path / "mismatch.script"
        path.write_text(
            json.dumps(
                {
                    "start": str(corpus_file("torus.kby")),
                    "moves": [{"op": "blow_up"}],
                    "expect": {"chi": 0},
                }
            )
        )
        code, report = run_json(capsys, "check", path)

        assert code == 1
        assert report["expected"] == {"chi": 0}
        assert report["actual"]["chi"] == 1

    def test_unknown_move(self, capsys, tmp_path):
        path = tmp_path / "unknown.script"
        path.write_text('{"start": "torus.kby", "moves": [{"op": "twist"}]}')

        code, report = run_json(capsys, "check", path)

        assert code == 2
        assert "unknown move 'twist'" in report["message"]


class TestSurgery:
    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "torus_star.kby"
        code, report = run_json(
            capsys, "surgery", corpus_file("torus.kby"), "trefoil", "-o", out
        )

        assert code == 0
        assert report["knot"] == "left-trefoil"
        assert report["before"] == report["after"]
        assert report["output"] == str(out)
        assert HandleStructure.load(out) == load_corpus("torus_star.kby")

    def test_invalid_marking(self, capsys):
        code, report = run_json(
            capsys,
            "surgery",
            corpus_file("cusp.kby"),
            "right-trefoil",
            "--marking",
            "h,h,h",
        )

        assert code == 1
        assert "Cannot mark torus" in report["message"]

    def test_marking_option(self, capsys, tmp_path):
        path = tmp_path / "unmarked.kby"
        load_corpus("cusp_nbhd.kby").replace(marking=None).dump(path)

        code, report = run_json(
            capsys, "surgery", path, "trefoil", "--marking", "a, b, tau, gamma, delta"
        )

        assert code == 0
        assert HandleStructure.from_dict(report["structure"]) == load_corpus(
            "cusp_star.kby"
        )

    def test_unsupported(self, capsys):
        code, report = run_json(
            capsys, "surgery", corpus_file("torus.kby"), "figure-eight"
        )

        assert code == 1
        assert "no complement presentation" in report["message"]

    def test_template_error(self, capsys, monkeypatch):
        def broken(*args, **kwargs):
            raise TemplateError("complement presentation of 'left-trefoil' is invalid")

        monkeypatch.setattr(cli, "knot_surgery_diagram", broken)

        code, report = run_json(capsys, "surgery", corpus_file("torus.kby"), "trefoil")

        assert code == 2
        assert report["verdict"] == "error"
        assert "is invalid" in report["message"]


class TestKnots:
    @pytest.mark.parametrize(
        ["knot", "expected", "determinant"],
        (
            pytest.param("trefoil", "t - 1 + t^-1", 3, id="trefoil"),
            pytest.param("figure-eight", "-t + 3 - t^-1", 5, id="figure-eight"),
        ),
    )
    def test_alexander(self, capsys, knot, expected, determinant):
        code, report = run_json(capsys, "alexander", knot)

        assert code == 0
        assert report["alexander"] == expected
        assert report["fox"] == expected
        assert report["agree"] is True
        assert report["determinant"] == determinant

    def test_alexander_unknown(self, capsys):
        code, report = run_json(capsys, "alexander", "7_4")

        assert code == 1
        assert "unknown knot" in report["message"]

    def test_knot(self, capsys):
        code, report = run_json(capsys, "knot", "figure-eight")

        assert code == 0
        assert report["crossing_number"] == 4
        assert report["writhe"] == 0
        assert len(report["crossings"]) == 4


class TestSW:
    def test_k3(self, capsys):
        code, report = run_json(capsys, "sw", "K3", "trefoil")

        assert code == 0
        assert report["sw"] == "exp(2T) - 1 + exp(-2T)"
        assert report["basic_classes"] == [[-2], [0], [2]]
        assert report["symmetric"] is True
        assert report["fake_pair"] is True

    def test_torus_class(self, capsys):
        code, report = run_json(
            capsys, "sw", "E(4)", "figure-eight", "--torus-class", "1"
        )

        assert code == 0
        assert report["epsilon"] == 4
        assert report["sw"] == (
            "-exp(4F) + 5*exp(2F) - 8 + 5*exp(-2F) - exp(-4F)"
        )

    @pytest.mark.parametrize(
        "args",
        (
            pytest.param(["sw", "K4", "trefoil"], id="entry"),
            pytest.param(["sw", "K3", "trefoil", "--torus-class", "x,y"], id="class"),
        ),
    )
    def test_error(self, capsys, args):
        code, report = run_json(capsys, *args)

        assert code == 2
        assert report["verdict"] == "error"

    def test_catalog_option(self, capsys, tmp_path):
        path = tmp_path / "catalog.json"
        path.write_text(
            json.dumps(
                {
                    "manifolds": [
                        {
                            "manifold": "X",
                            "basis": ["T"],
                            "epsilon": 1,
                            "sw": "exp(T) - exp(-T)",
                        }
                    ]
                }
            )
        )

        code, report = run_json(capsys, "sw", "X", "trefoil", "--catalog", path)

        assert code == 0
        assert report["sw"] == "exp(3T) - 2*exp(T) + 2*exp(-T) - exp(-3T)"


class TestCorpusTest:
    def test_pass(self, capsys):
        code, report = run_json(capsys, "corpus-test", "--samples", 3)

        assert code == 0
        assert {name: check["problems"] for name, check in report["checks"].items()} == {
            name: [] for name in report["checks"]
        }
        assert any("h_beta is an unknot" in condition for condition in report["asserted"])

    def test_default_samples(self):
        options = cli.build_parser().parse_args(["corpus-test"])

        assert options.samples == 1000

    def test_long_random_sequences(self):
        assert list(cli._check_random_moves(25, seed=7, n_moves=12)) == []

    def test_corpus_override(self, capsys, monkeypatch, tmp_path, broken_script):
        load_corpus("cusp.kby").dump(tmp_path / "cusp.kby")
        monkeypatch.setenv("KIRBYKIT_CORPUS", str(tmp_path))

        code, report = run_json(capsys, "corpus-test", "--samples", 1)

        assert code == 1
        assert report["subject"] == str(tmp_path)
        assert report["checks"]["scripts"]["verdict"] == "fail"
        assert report["checks"]["invariants"]["verdict"] == "pass"


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["--version"])

    assert excinfo.value.code == 0
    assert capsys.readouterr().out.strip() == cli.__version__
