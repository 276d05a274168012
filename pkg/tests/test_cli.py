"""Tests for the gasket command line."""

from __future__ import annotations

import pytest

from gasket_resistance import __version__, main
from gasket_resistance.cli import build_parser, overrides_from_args
from gasket_resistance.models.network import Network
from gasket_resistance.network_core import write_network


@pytest.fixture(autouse=True)
def clean_env(tmp_path, monkeypatch):
    monkeypatch.setenv("GASKET_CONFIG", str(tmp_path / "absent.toml"))
    for key in ("GASKET_THREADS", "GASKET_SEED", "GASKET_OUTPUT_DIR"):
        monkeypatch.delenv(key, raising=False)


def test_version():
    assert __version__ == "0.1.0"


def test_comma_lists():
    args = build_parser().parse_args(["generate", "--size", "16,32", "--eps", "2,4.5"])
    overrides = overrides_from_args(args)
    assert overrides["generate"]["sizes"] == [16, 32]
    assert overrides["generate"]["eps"] == [2.0, 4.5]
    assert overrides["generate"]["p"] is None


def test_unset_flags_are_none():
    args = build_parser().parse_args(["exponents"])
    assert overrides_from_args(args)["exponents"]["spectral"] is None
    args = build_parser().parse_args(["exponents", "--no-spectral"])
    assert overrides_from_args(args)["exponents"]["spectral"] is False


def test_bad_list_exits():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["generate", "--size", "a,b"])


def test_generate_success(tmp_path, capsys):
    code = main(["--output-dir", str(tmp_path), "generate", "--size", "8", "--p", "1.0"])
    assert code == 0
    out = capsys.readouterr().out
    assert "status: success" in out
    assert (tmp_path / "generate" / "clusters" / "L8_r0.cluster").is_file()


def test_resist_prints_summary(tmp_path, capsys):
    path = write_network(Network.from_edges([0, 1], [(0, 1, 4.0)]), tmp_path / "edge.net")
    code = main(["--output-dir", str(tmp_path / "out"), "resist", "--network", str(path)])
    assert code == 0
    assert "edge.net" in capsys.readouterr().out


def test_config_error_exit_code(tmp_path):
    assert main(["--output-dir", str(tmp_path), "--threads", "0", "verify"]) == 2


def test_missing_config_file(tmp_path):
    assert main(["--config", str(tmp_path / "missing.toml"), "verify"]) == 2


def test_missing_input_exit_code(tmp_path):
    code = main(["--output-dir", str(tmp_path), "resist", "--network", str(tmp_path / "nope.net")])
    assert code == 3


def test_injected_fixture_exit_code(tmp_path):
    code = main(
        ["--output-dir", str(tmp_path), "--quiet", "verify", "--inject-non-metric", "--fixtures", "2"]
    )
    assert code == 4


def test_manifest_recheck(tmp_path):
    assert main(["--output-dir", str(tmp_path), "generate", "--size", "8", "--p", "1.0"]) == 0
    manifest = tmp_path / "generate" / "manifest.json"
    assert main(["verify", "--manifest", str(manifest)]) == 0
    (tmp_path / "generate" / "clusters" / "L8_r0.cluster").write_text("x\n")
    assert main(["verify", "--manifest", str(manifest)]) == 4


@pytest.mark.parametrize(
    "text",
    [
        "NET v1 x 1\n0\n1\n0 1 1.0\n",
        "NET v1 2 1\n0\n1\n0 1\n",
        "NET v1 2 1\n0\n1\n0 1 heavy\n",
    ],
)
def test_malformed_network_exit_code(tmp_path, capsys, text):
    path = tmp_path / "bad.net"
    path.write_text(text)
    assert main(["--output-dir", str(tmp_path / "out"), "walk", "--network", str(path)]) == 2
    assert main(["--output-dir", str(tmp_path / "out"), "resist", "--network", str(path)]) == 2
    assert "status: error" in capsys.readouterr().out


def test_malformed_snapshot_exit_code(tmp_path):
    path = tmp_path / "bad.cluster"
    path.write_text("CLUSTER v1 8 0.5 0 1\n3 three\n")
    assert main(["--output-dir", str(tmp_path / "out"), "resist", "--snapshot", str(path)]) == 2
