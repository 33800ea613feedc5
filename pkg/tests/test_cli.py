"""Tests of the command-line front end."""

import logging
from pathlib import Path

import orjson
import pytest
from pytest_mock import MockerFixture
from typer.testing import CliRunner

from app.catalog.instances import dk_instance
from app.cli.loader import build_instance, read_instance_file
from app.dktype import grading as grading_module
from app.main import app
from app.utils.errors import NotFound

lgr = logging.getLogger(__name__)

runner = CliRunner(mix_stderr=False)

INSTANCES = Path(__file__).parent.parent / "instances"


def _example(name: str, tmp_path: Path) -> Path:
    path = tmp_path / f"{name}.json"
    result = runner.invoke(app, ["example", name, "--out", str(path)])
    assert result.exit_code == 0, result.stderr
    return path


def _analyze(path: Path, *flags: str) -> dict:
    result = runner.invoke(app, ["analyze", str(path), *flags])
    assert result.exit_code == 0, result.stderr
    return orjson.loads(result.stdout)


def test_quadratics_report(tmp_path: Path) -> None:
    """Test the whole report of binary quadratic forms."""
    report = _analyze(_example("binary-quadratics", tmp_path))
    assert [e["members"] for e in report["spcl"]] == [[1, 2, 3], [2, 3]]
    assert report["spcl"][0]["stab"] == [1]
    assert report["hasse"] == [[2, 1]]
    assert [e["status"] for e in report["exceptional"]] == [
        "not exceptional",
        "exceptional",
    ]
    assert [e["positive"] for e in report["convergence"]] == [True, False]
    assert report["ifd"][0]["verdict"] == "found"
    assert "timings" not in report


def test_f4_report(tmp_path: Path) -> None:
    """Test the six special subspaces and their covering relations."""
    report = _analyze(_example("f4", tmp_path))
    spcl = report["spcl"]
    assert len(spcl) == 6
    assert all(e["special"] for e in spcl)
    assert spcl[0]["members"] == list(range(1, 13))
    # каждое ребро Хассе - строгое включение
    for lo, hi in report["hasse"]:
        assert set(spcl[lo - 1]["members"]) < set(spcl[hi - 1]["members"])
    assert [e["verdict"] for e in report["ifd"]] == ["found"] * 4


def test_analyze_is_deterministic(tmp_path: Path) -> None:
    """Test that two runs with one seed give the same bytes."""
    path = _example("g2", tmp_path)
    first = runner.invoke(app, ["analyze", str(path), "--seed", "7"])
    second = runner.invoke(app, ["analyze", str(path), "--seed", "7"])
    assert first.exit_code == second.exit_code == 0
    assert first.stdout_bytes == second.stdout_bytes
    assert orjson.loads(first.stdout)["seed"] == 7


def test_analyze_text_and_timings(tmp_path: Path) -> None:
    """Test the table output and the timings switch."""
    path = _example("binary-quadratics", tmp_path)
    result = runner.invoke(
        app, ["analyze", str(path), "--format", "text", "--timings"]
    )
    assert result.exit_code == 0, result.stderr
    assert "Spcl(V)" in result.stdout
    assert "timings:" in result.stdout
    report = _analyze(path, "--timings")
    assert set(report["timings"]) >= {"spcl", "exceptional"}


def test_analyze_mu_flags(tmp_path: Path) -> None:
    """Test a scaled mu and a rejected one."""
    path = _example("binary-quadratics", tmp_path)
    report = _analyze(path, "--mu", "1/2", "--mu", "3")
    assert [e["mu"] for e in report["convergence"]][::2] == [
        [1, 1],
        [6, 6],
    ]
    result = runner.invoke(app, ["analyze", str(path), "--mu", "0"])
    assert result.exit_code == 2
    assert "InvalidMu" in result.stderr


def test_malformed_file_names_field(tmp_path: Path) -> None:
    """Test exit code 2 and the offending field on a short vector."""
    path = tmp_path / "bad.json"
    path.write_bytes(
        orjson.dumps(
            {
                "root_datum": "A2",
                "g_simple": [1],
                "psi_v": [{"weight": [1, -1, 0]}, {"weight": [1, 0]}],
            }
        )
    )
    result = runner.invoke(app, ["analyze", str(path)])
    assert result.exit_code == 2
    assert "psi_v[1] has length 2, expected 3" in result.stderr


def test_not_json(tmp_path: Path) -> None:
    """Test exit code 2 on a file that is not json."""
    path = tmp_path / "bad.json"
    path.write_text("{psi_v: ", encoding="utf-8")
    result = runner.invoke(app, ["analyze", str(path)])
    assert result.exit_code == 2
    assert "malformed json" in result.stderr


def test_cap_exceeded(tmp_path: Path) -> None:
    """Test exit code 3 when V has more weights than allowed."""
    path = _example("f4", tmp_path)
    result = runner.invoke(app, ["analyze", str(path), "--max-weights", "5"])
    assert result.exit_code == 3
    assert "CapExceeded" in result.stderr


def test_dk_command(tmp_path: Path) -> None:
    """Test that the written DK file rebuilds the same instance."""
    path = tmp_path / "f4.json"
    result = runner.invoke(app, ["dk", "F4", "0,2,0,0", "--out", str(path)])
    assert result.exit_code == 0, result.stderr
    spec = read_instance_file(path)
    assert spec.root_datum == "F4"
    assert spec.g_simple == [1, 3, 4]
    rebuilt = build_instance(spec)
    assert rebuilt.psi_v == dk_instance("F4", (0, 2, 0, 0)).psi_v


def test_dk_zero_labels(mocker: MockerFixture) -> None:
    """Test the warning and the empty weight list for zero labels."""
    spy = mocker.spy(grading_module.lgr, "warning")
    result = runner.invoke(app, ["dk", "A2", "0,0"])
    assert result.exit_code == 0, result.stderr
    assert orjson.loads(result.stdout)["psi_v"] == []
    spy.assert_called_once()


def test_dk_bad_labels() -> None:
    """Test rejected labels and a rejected root datum."""
    assert runner.invoke(app, ["dk", "A2", "0,x"]).exit_code == 2
    assert runner.invoke(app, ["dk", "A2", "0,-2"]).exit_code == 2
    assert runner.invoke(app, ["dk", "Q7", "0,2"]).exit_code == 2


def test_ifd_command(tmp_path: Path, mocker: MockerFixture) -> None:
    """Test a found verdict and a NotFound turned into a verdict."""
    path = _example("binary-quadratics", tmp_path)
    result = runner.invoke(app, ["ifd", str(path)])
    assert result.exit_code == 0, result.stderr
    (entry,) = orjson.loads(result.stdout)["ifd"]
    assert entry["verdict"] == "found"
    assert entry["subspace"] == [2, 3]

    # стандартизация не нашла подпространство
    mocker.patch(
        "app.cli.analysis.ifd_special",
        side_effect=NotFound("no conjugate is regular"),
    )
    result = runner.invoke(app, ["ifd", str(path), "--format", "text"])
    assert result.exit_code == 0, result.stderr
    assert "not found" in result.stdout


def test_unknown_example() -> None:
    """Test exit code 2 on an unknown catalog name."""
    result = runner.invoke(app, ["example", "e9"])
    assert result.exit_code == 2
    assert "Unknown example" in result.stderr


@pytest.mark.slow
def test_e6_report(tmp_path: Path) -> None:
    """Test eighteen special subspaces and fifteen exceptional ones."""
    report = _analyze(_example("e6", tmp_path))
    assert len(report["spcl"]) == 18
    statuses = [e["status"] for e in report["exceptional"]]
    assert statuses.count("exceptional") == 15
    assert [e["w"] for e in report["ifd"]][-1] == [4]


@pytest.mark.parametrize(
    "path",
    sorted(INSTANCES.glob("*.json")),
    ids=lambda p: p.stem,
)
def test_shipped_instances_load(path: Path) -> None:
    """Test that every sample file builds an instance."""
    inst = build_instance(read_instance_file(path))
    assert inst.n_weights > 0
    lgr.debug(f"{path.name}: {inst.n_weights} weights")


def test_hand_written_quadratics_match_catalog(tmp_path: Path) -> None:
    """Test that the sample file and the catalog give one report."""
    shipped = _analyze(INSTANCES / "binary_quadratics.json")
    generated = _analyze(_example("binary-quadratics", tmp_path))
    assert shipped["spcl"] == generated["spcl"]
    assert shipped["instance"]["fund_chars"] == [[2, 2]]
