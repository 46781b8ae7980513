"""Tests for command dispatch."""

import pytest

from src.cli.commands import CHECK_KINDS, COMMANDS, run_command, run_session
from src.cli.corpus import corpus_names, load_corpus_text
from src.cli.report import CommandStatus, input_digest
from src.cli.session import Session, load_session
from src.config.settings import Settings
from src.poset.window import Window
from src.shared.types import ExitCode, Verdict


class TestComputations:
    """Commands without a verdict."""

    def test_dims(self, poly_session: Session) -> None:
        """k[x,y] has one monomial per degree."""
        result = run_command(poly_session, "dims", ["(0,0)", "(1,1)"])
        assert result.status == CommandStatus.OK
        assert result.verdict is None
        assert result.data["window"] == ["(0,0)", "(1,1)"]
        assert result.data["dimensions"][0] == {"target": "(0,0)", "dimension": 1}
        assert result.data["total"] == 4

    def test_dims_free(self, free_session: Session) -> None:
        """k<x,y> has two paths to (1,1)."""
        result = run_command(free_session, "dims", ["(0,0)", "(1,1)"])
        assert result.data["total"] == 5

    def test_hom(self, line_session: Session) -> None:
        """Hom(P(2), P(0)) over k[t] is spanned by t^2."""
        result = run_command(line_session, "hom", ["P(2)", "P(0)"])
        assert result.data["dimension"] == 1
        assert len(result.data["basis"]) == 1

    def test_torsion(self, line_session: Session) -> None:
        """The simple module is all torsion."""
        result = run_command(line_session, "torsion", ["S0"])
        assert result.data["total"] == 1
        assert result.data["dimensions"] == [{"degree": "(0)", "dimension": 1}]

    def test_gens(self, poly_session: Session) -> None:
        """The Koszul cokernel is cyclic."""
        result = run_command(poly_session, "gens", ["K"])
        assert result.data["module"] == "K"
        assert result.data["total"] == 1


class TestVerdicts:
    """Checks and probes report verdicts."""

    def test_check_replays_certificates(self, poly_session: Session) -> None:
        """Verified checks come back with their certificates replayed."""
        result = run_command(poly_session, "check", ["star", "(0,0)..(1,1)"])
        assert result.verdict == Verdict.VERIFIED
        assert result.data["certificates_replayed"] == 4

    def test_refuted(self, free_session: Session) -> None:
        """k<x,y> is not strongly indexed."""
        result = run_command(free_session, "check", ["strong"])
        assert result.verdict == Verdict.REFUTED
        assert result.data["certificates_replayed"] == 1

    @pytest.mark.parametrize("kind", CHECK_KINDS)
    def test_every_check_replays(self, poly_session: Session, kind: str) -> None:
        """Each check on k[x,y] comes back with all of its certificates re-validated."""
        result = run_command(poly_session, "check", [kind])
        assert result.status == CommandStatus.OK, result.error
        assert result.verdict is not None
        assert result.data["certificates_replayed"] >= 0

    def test_tau(self, poly_session: Session) -> None:
        """S(0,0) is torsion; the probe agrees with the window torsion."""
        result = run_command(poly_session, "tau", ["S(0,0)"], window="(0,0)..(3,3)")
        assert result.verdict == Verdict.VERIFIED
        assert result.data["value_dimension"] == 1
        assert result.data["agrees_with_torsion"] is True

    def test_short_chain_is_inconclusive(self, poly_session: Session) -> None:
        """Two chain steps cannot show stabilization."""
        result = run_command(poly_session, "tau", ["S(0,0)"])
        assert result.verdict == Verdict.INCONCLUSIVE
        assert result.data["agrees_with_torsion"] is None

    def test_qgrhom(self, poly_session: Session) -> None:
        """Maps into a torsion module vanish."""
        result = run_command(poly_session, "qgrhom", ["P(0,0)", "S(0,0)"], window="(0,0)..(4,4)")
        assert result.verdict == Verdict.VERIFIED
        assert result.data["value_dimension"] == 0

    def test_aofseq(self, poly_session: Session) -> None:
        """The hom algebra of P(0,0), P(1,0) is connected."""
        result = run_command(poly_session, "aofseq", ["P(0,0)", "P(1,0)"])
        assert result.verdict == Verdict.VERIFIED
        assert result.data["kind"] == "explicit"
        assert result.data["members"][1] == {"label": "E1", "module": "P(1,0)", "index": "(1,0)"}
        assert {"source": "E0", "target": "E1", "dimension": 1} in result.data["dimensions"]

    def test_aofseq_explicit_index(self, poly_session: Session) -> None:
        """NAME@INDEX places a declared module in the source poset."""
        result = run_command(poly_session, "aofseq", ["K@(0,0)"])
        assert result.data["members"] == [{"label": "E0", "module": "K", "index": "(0,0)"}]
        assert result.verdict == Verdict.VERIFIED


class TestFailures:
    """Engine errors become result entries."""

    @pytest.mark.parametrize(
        ("name", "args", "message"),
        [
            ("nope", [], "unknown command 'nope'"),
            ("dims", ["(0,0)"], "dims takes 2 arguments, got 1"),
            ("gens", ["N"], "unknown module 'N'"),
        ],
    )
    def test_error(self, poly_session: Session, name: str, args: list[str], message: str) -> None:
        """The diagnostic is kept and the status is error."""
        result = run_command(poly_session, name, args)
        assert result.status == CommandStatus.ERROR
        assert result.error == message
        assert result.verdict is None

    @pytest.mark.parametrize("args", [[], ["magic"], ["star", "(0,0)..(1,1)", "x"]])
    def test_check_arguments(self, poly_session: Session, args: list[str]) -> None:
        """check needs a known kind and at most a window."""
        assert run_command(poly_session, "check", args).status == CommandStatus.ERROR

    @pytest.mark.parametrize("failure", [IndexError("basis position 3"), KeyError("z")])
    def test_lookup_failure(
        self, poly_session: Session, monkeypatch: pytest.MonkeyPatch, failure: LookupError
    ) -> None:
        """A lookup failure inside a handler is reported, not raised."""

        def failing(*_: object) -> None:
            raise failure

        monkeypatch.setitem(COMMANDS, "dims", failing)
        result = run_command(poly_session, "dims", ["(0,0)", "(1,1)"])
        assert result.status == CommandStatus.ERROR
        assert result.error == f"dims: {failure.args[0]}"
        follow = run_command(poly_session, "gens", ["K"])
        assert follow.status == CommandStatus.OK

    def test_empty_window(self, poly_session: Session, monkeypatch: pytest.MonkeyPatch) -> None:
        """Checks refuse a window with no elements."""
        monkeypatch.setattr(
            poly_session, "window", lambda text=None: Window(poly_session.poset, ())
        )
        result = run_command(poly_session, "check", ["sequence"])
        assert result.status == CommandStatus.ERROR
        assert result.error == "check sequence needs a non-empty window"

    def test_resource_limit(self) -> None:
        """A command window over the ceiling reports the ceiling."""
        session = load_session(
            "poset zlattice 2\ngen x (1,0)\ngen y (0,1)\n", settings=Settings(window_limit=5)
        )
        result = run_command(session, "dims", ["(0,0)", "(2,2)"])
        assert result.status == CommandStatus.RESOURCE_LIMIT
        assert result.data == {"limit": "window", "value": 9, "ceiling": 5}


class TestRunSession:
    """Whole files."""

    def test_runs_file_commands(self, line_session: Session) -> None:
        """Run lines execute in order."""
        text = load_corpus_text("deloop_zn")
        report = run_session(line_session, text)
        assert [r.name for r in report.results] == ["dims", "hom", "check", "torsion"]
        assert all(r.status == CommandStatus.OK for r in report.results)
        assert report.input_digest == input_digest(text)

    @pytest.mark.parametrize("name", corpus_names())
    def test_corpus_checks_replay(self, name: str, settings: Settings) -> None:
        """Every check a corpus file runs replays its certificates."""
        text = load_corpus_text(name)
        report = run_session(load_session(text, settings=settings), text)
        checks = [r for r in report.results if r.name == "check"]
        assert checks
        for r in checks:
            assert r.status == CommandStatus.OK, (r.command, r.error)
            assert "certificates_replayed" in r.data

    def test_explicit_commands(self, poly_session: Session) -> None:
        """Given commands replace the run lines."""
        report = run_session(poly_session, "", [("dims", ("(0,0)", "(1,1)"))])
        assert len(report.results) == 1
        assert report.exit_code() == ExitCode.OK

    def test_every_command_has_a_handler(self) -> None:
        """The dispatch table covers the documented commands."""
        assert set(COMMANDS) == {
            "dims",
            "tail",
            "gens",
            "torsion",
            "hom",
            "tau",
            "qgrhom",
            "saturate",
            "chi1",
            "aofseq",
            "check",
        }
