"""Tests for the command-line entry point."""

import io
import json
from pathlib import Path

import pytest

from src.cli.corpus import corpus_names, load_corpus_text
from src.cli.main import build_parser, main
from src.shared.types import ExitCode


@pytest.fixture
def poly_file(tmp_path: Path) -> Path:
    """The polynomial ring session written to disk."""
    path = tmp_path / "poly.ialg"
    path.write_text(load_corpus_text("poly_xy"), encoding="utf-8")
    return path


@pytest.fixture
def free_file(tmp_path: Path) -> Path:
    """The free algebra session written to disk."""
    path = tmp_path / "free.ialg"
    path.write_text(load_corpus_text("free_xy"), encoding="utf-8")
    return path


class TestRun:
    """`ialg run FILE`."""

    def test_verified_session(self, poly_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Every check on k[x,y] passes."""
        assert main(["run", str(poly_file)]) == ExitCode.OK
        out = capsys.readouterr().out
        assert out.startswith("ialg 0.1.0 (sha256:")
        assert "== check star" in out

    def test_refuted_session(self, free_file: Path) -> None:
        """k<x,y> is not strongly indexed."""
        assert main(["run", str(free_file)]) == ExitCode.REFUTED

    def test_json(self, poly_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """--json emits the report with one result per run line."""
        main(["run", str(poly_file), "--json"])
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert [r["command"] for r in payload["results"]] == [
            "dims (0,0) (2,2)",
            "check star",
            "check strong",
            "check cocompact",
        ]

    def test_stdin(
        self, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """FILE may be - for standard input."""
        monkeypatch.setattr("sys.stdin", io.StringIO(load_corpus_text("deloop_zn")))
        main(["dims", "-", "(0)", "(2)", "--json"])
        payload = json.loads(capsys.readouterr().out)
        assert payload["results"][0]["data"]["total"] == 3


class TestSingleCommands:
    """One subcommand per command."""

    def test_dims(self, poly_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Subcommands ignore the file's run lines."""
        assert main(["dims", str(poly_file), "(0,0)", "(1,1)", "--json"]) == ExitCode.OK
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["results"]) == 1
        assert payload["results"][0]["data"]["total"] == 4

    def test_window_flag(self, poly_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """--window replaces the declared window."""
        main(["gens", str(poly_file), "P(0,0)", "--window", "(0,0)..(1,1)", "--json"])
        payload = json.loads(capsys.readouterr().out)
        assert payload["results"][0]["data"]["window"] == ["(0,0)", "(1,1)"]

    def test_field_flag(self, poly_file: Path) -> None:
        """--field overrides the declared field."""
        assert main(["check", str(poly_file), "strong", "--field", "Fp 5"]) == ExitCode.OK

    def test_command_error(self, poly_file: Path) -> None:
        """A failing command exits with the usage code."""
        assert main(["gens", str(poly_file), "N"]) == ExitCode.USAGE


class TestDiagnostics:
    """Input problems go to stderr."""

    def test_parse_error(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Parse errors are printed as FILE:LINE:COL: message."""
        path = tmp_path / "bad.ialg"
        path.write_text("field Q\nbogus 1\n", encoding="utf-8")
        assert main(["run", str(path)]) == ExitCode.USAGE
        assert capsys.readouterr().err.strip().endswith(
            f"{path}:2:1: unknown declaration 'bogus'"
        )

    def test_build_error_location(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Build errors report the declaration's line."""
        path = tmp_path / "inhom.ialg"
        path.write_text(
            "field Q\nposet zlattice 2\ngen x (1,0)\ngen y (0,1)\nrel (1,1): x*y - x\n",
            encoding="utf-8",
        )
        assert main(["run", str(path)]) == ExitCode.USAGE
        assert f"{path}:5:0: inhomogeneous" in capsys.readouterr().err

    def test_missing_file(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """An unreadable file is a usage error."""
        assert main(["run", str(tmp_path / "absent.ialg")]) == ExitCode.USAGE
        assert "ialg:" in capsys.readouterr().err

    def test_invalid_option(self, poly_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Chain lengths below three are rejected."""
        assert main(["run", str(poly_file), "--chain-len", "2"]) == ExitCode.USAGE
        assert "invalid option" in capsys.readouterr().err

    def test_window_ceiling(self, poly_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """A declared window over --limit-window stops before any command."""
        assert main(["run", str(poly_file), "--limit-window", "4"]) == ExitCode.RESOURCE_LIMIT
        assert "window limit exceeded: 9 > 4" in capsys.readouterr().err


class TestCorpus:
    """`ialg corpus [NAME]`."""

    def test_listing(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Without a name the manifest is listed."""
        assert main(["corpus"]) == ExitCode.OK
        out = capsys.readouterr().out
        for name in corpus_names():
            assert name in out

    def test_listing_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--json lists name, file and description."""
        main(["corpus", "--json"])
        rows = json.loads(capsys.readouterr().out)
        assert [r["name"] for r in rows] == corpus_names()
        assert rows[0]["file"] == "free_xy.ialg"

    def test_run_entry(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A named entry runs like a file."""
        main(["corpus", "deloop_zn"])
        assert "== hom P(2) P(0)\ndim Hom(P(2), P(0)) = 1" in capsys.readouterr().out

    def test_unknown_entry(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Unknown names are usage errors."""
        assert main(["corpus", "nope"]) == ExitCode.USAGE


class TestParser:
    """Argument parsing."""

    def test_subcommands(self) -> None:
        """Every command is a subcommand taking FILE and ARGS."""
        ns = build_parser().parse_args(["tail", "f.ialg", "K", "(0,0)", "--probe-len", "5"])
        assert ns.command == "tail"
        assert ns.args == ["K", "(0,0)"]
        assert ns.probe_len == 5

    def test_command_required(self) -> None:
        """A bare invocation is an argparse error."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])
