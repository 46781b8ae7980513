"""Command handlers: one function per `run` command, dispatched by name.

Handlers return a verdict (None for plain computations) and a JSON-ready
payload. Engine errors are caught per command, so one failing command
never aborts the rest of a session.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Sequence
from typing import Any

from src.checks.criteria import (
    check_cocompact_by_strong_indexing,
    check_coherence_probe,
    check_connected,
    check_poset,
    check_star,
    check_strongly_indexed,
    check_tails_cocompact,
)
from src.checks.replay import replay
from src.checks.sequence import check_sequence_conditions
from src.cli.report import CommandResult, CommandStatus, Report, input_digest
from src.cli.session import Session
from src.cli.syntax import CokerModule
from src.gradedmod.generation import min_generators_in_window
from src.gradedmod.hom import hom_space
from src.gradedmod.modules import free_module
from src.gradedmod.submodules import tail, whole
from src.gradedmod.torsion import torsion_elements
from src.poset.window import Window
from src.qgr.chi1 import chi1_probe
from src.qgr.hom_algebra import FamilyMember, a_of_sequence
from src.qgr.ideals import IdealSlice
from src.qgr.probes import (
    ColimitProbe,
    qgr_hom,
    saturation_component,
    saturation_unit,
    tau_colimit,
    tau_cross_check,
)
from src.shared.errors import IalgError, ParseError, PresentationError, ResourceLimitError
from src.shared.outcome import CheckOutcome
from src.shared.types import Verdict

logger = logging.getLogger(__name__)

Payload = tuple[Verdict | None, dict[str, Any]]
Handler = Callable[[Session, Sequence[str], str | None], Payload]

CHECK_KINDS = (
    "star",
    "cocompact",
    "strong",
    "criterion",
    "coherence",
    "sequence",
    "connected",
    "poset",
    "ideals",
)


def _arity(name: str, args: Sequence[str], count: int) -> None:
    if len(args) != count:
        raise ParseError(f"{name} takes {count} arguments, got {len(args)}")


def _probe_verdict(probe: ColimitProbe) -> Verdict:
    return Verdict.VERIFIED if probe.stabilized else Verdict.INCONCLUSIVE


def _dims(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("dims", args, 2)
    lo, hi = session.index(args[0]), session.index(args[1])
    window = Window.box(session.poset, lo, hi, limit=session.settings.window_limit)
    fmt = session.poset.format_element
    rows = [
        {"target": fmt(j), "dimension": session.algebra.dimension(lo, j)}
        for j in window.elements
    ]
    return None, {
        "algebra": session.algebra.name,
        "source": fmt(lo),
        "window": window.bounds(),
        "dimensions": rows,
        "total": sum(r["dimension"] for r in rows),
    }


def _tail(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("tail", args, 2)
    module, d = session.module(args[0]), session.index(args[1])
    report = min_generators_in_window(tail(module, d, True, session.window(window_text)))
    return None, {"module": module.name, "cut": args[1], **report.to_dict()}


def _gens(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("gens", args, 1)
    module = session.module(args[0])
    report = min_generators_in_window(whole(module, session.window(window_text)))
    return None, {"module": module.name, **report.to_dict()}


def _torsion(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("torsion", args, 1)
    window = session.window(window_text)
    report = torsion_elements(session.module(args[0]), window)
    fmt = session.poset.format_element
    data = report.to_dict()
    data["dimensions"] = [
        {"degree": fmt(d), "dimension": report.dimension(d)}
        for d in window.elements
        if report.dimension(d)
    ]
    return None, data


def _hom(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("hom", args, 2)
    return None, hom_space(session.module(args[0]), session.module(args[1])).to_dict()


def _tau(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("tau", args, 1)
    module = session.module(args[0])
    window = session.window(window_text)
    probe = tau_colimit(module, session.chain(window), window)
    data = {"module": module.name, **probe.to_dict()}
    data["agrees_with_torsion"] = (
        tau_cross_check(probe, torsion_elements(module, window)) if probe.stabilized else None
    )
    return _probe_verdict(probe), data


def _qgrhom(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("qgrhom", args, 2)
    source, target = session.module(args[0]), session.module(args[1])
    window = session.window(window_text)
    probe = qgr_hom(source, target, session.chain(window), window)
    data = {"source": source.name, "target": target.name, **probe.to_dict()}
    return _probe_verdict(probe), data


def _saturate(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("saturate", args, 2)
    module, i = session.module(args[0]), session.index(args[1])
    window = session.window(window_text)
    chain = session.chain(window)
    probe = saturation_component(module, i, chain, window)
    fmt = session.poset.format_element
    units = [
        {"degree": fmt(u.degree), "rank": u.rank, "injective": u.injective}
        for u in saturation_unit(module, i, chain, window)
    ]
    data = {"module": module.name, "index": fmt(i), **probe.to_dict(), "unit": units}
    return _probe_verdict(probe), data


def _chi1(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    _arity("chi1", args, 2)
    module, d = session.module(args[0]), session.index(args[1])
    window = session.window(window_text)
    outcome = chi1_probe(
        module,
        d,
        session.chain(window),
        window,
        length=session.settings.generation_chain_length,
    )
    return outcome.verdict, outcome.to_dict()


def _family_member(session: Session, k: int, item: str) -> FamilyMember:
    ref, at, index_text = item.rpartition("@")
    if at:
        return FamilyMember(f"E{k}", session.index(index_text), session.module(ref))
    module = session.module(item)
    index = None
    if item not in session.modules and item[:1] in ("P", "S"):
        index = session.index(item[1:])
    return FamilyMember(f"E{k}", index, module)


def _aofseq(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    if not args:
        raise ParseError("aofseq needs at least one module")
    members = [_family_member(session, k, item) for k, item in enumerate(args)]
    algebra, outcome = a_of_sequence(members)
    fmt = session.poset.format_element
    labels = algebra.poset.ordered()
    return outcome.verdict, {
        "kind": algebra.kind.value,
        "members": [
            {
                "label": m.label,
                "module": m.module.name,
                "index": fmt(m.index) if m.index is not None else None,
            }
            for m in members
        ],
        "dimensions": [
            {"source": a, "target": b, "dimension": algebra.dimension(a, b)}
            for a in labels
            for b in labels
            if algebra.poset.leq(a, b)
        ],
        "connected": outcome.to_dict(),
    }


def _check_outcome(session: Session, kind: str, window: Window) -> CheckOutcome:
    algebra = session.algebra
    n = session.settings.generation_chain_length
    if kind == "star":
        return check_star(algebra, window, length=n)
    if kind == "cocompact":
        return check_tails_cocompact(algebra, window, length=n)
    if kind == "strong":
        return check_strongly_indexed(algebra, window)
    if kind == "criterion":
        return check_cocompact_by_strong_indexing(algebra, window, length=n)
    if kind == "coherence":
        maps = [
            session.modules[m.name].relation_map()
            for m in session.spec.modules
            if isinstance(m, CokerModule)
        ]
        return check_coherence_probe(algebra, window, maps, length=n)
    if kind == "sequence":
        samples = list(session.modules.values()) or [
            free_module(algebra, [window.elements[0]], name="P")
        ]
        return check_sequence_conditions(algebra, window, samples, length=n)
    if kind == "connected":
        return check_connected(algebra)
    if kind == "poset":
        return check_poset(session.poset)
    return IdealSlice(algebra, window.middle()).check_sequence_identity(window)


def _check(session: Session, args: Sequence[str], window_text: str | None) -> Payload:
    if not args or len(args) > 2:
        raise ParseError("check takes a kind and an optional window LO..HI")
    kind = args[0]
    if kind not in CHECK_KINDS:
        raise ParseError(f"unknown check {kind!r}; expected one of {', '.join(CHECK_KINDS)}")
    window = session.window(args[1] if len(args) == 2 else window_text)
    if not window.elements:
        raise PresentationError(f"check {kind} needs a non-empty window")
    outcome = _check_outcome(session, kind, window)
    data = outcome.to_dict()
    data["certificates_replayed"] = replay(outcome)
    return outcome.verdict, data


COMMANDS: dict[str, Handler] = {
    "dims": _dims,
    "tail": _tail,
    "gens": _gens,
    "torsion": _torsion,
    "hom": _hom,
    "tau": _tau,
    "qgrhom": _qgrhom,
    "saturate": _saturate,
    "chi1": _chi1,
    "aofseq": _aofseq,
    "check": _check,
}


def run_command(
    session: Session, name: str, args: Sequence[str], *, window: str | None = None
) -> CommandResult:
    """Execute one command, turning engine errors into a result entry.

    Args:
        session: Live session objects.
        name: Command name.
        args: Command arguments.
        window: Window override `LO..HI` from the command line.

    Returns:
        The result; status is error or resource_limit when the command failed.
    """
    line = " ".join((name, *args))
    start = time.perf_counter()
    handler = COMMANDS.get(name)
    try:
        if handler is None:
            raise ParseError(f"unknown command {name!r}")
        try:
            verdict, data = handler(session, args, window)
        except (IndexError, KeyError) as exc:
            raise PresentationError(f"{name}: {exc.args[0] if exc.args else exc!r}") from exc
        result = CommandResult(command=line, name=name, verdict=verdict, data=data)
    except ResourceLimitError as exc:
        result = CommandResult(
            command=line,
            name=name,
            status=CommandStatus.RESOURCE_LIMIT,
            error=str(exc),
            data={"limit": exc.limit, "value": exc.value, "ceiling": exc.ceiling},
        )
    except IalgError as exc:
        message = exc.message if isinstance(exc, ParseError) else str(exc)
        result = CommandResult(command=line, name=name, status=CommandStatus.ERROR, error=message)
    logger.info(
        "command_completed",
        extra={
            "command": line,
            "status": result.status.value,
            "verdict": result.verdict.value if result.verdict else None,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return result


def run_session(
    session: Session,
    text: str,
    commands: Sequence[tuple[str, Sequence[str]]] | None = None,
    *,
    window: str | None = None,
) -> Report:
    """Run commands in order and assemble the report.

    Args:
        session: Live session objects.
        text: The input text, for the digest.
        commands: (name, args) pairs; defaults to the file's `run` lines.
        window: Window override applied to every command.

    Returns:
        The report, in command order.
    """
    if commands is None:
        commands = [(r.command, r.args) for r in session.spec.runs]
    results = [run_command(session, name, args, window=window) for name, args in commands]
    return Report(
        engine_version=session.settings.engine_version,
        input_digest=input_digest(text),
        results=results,
    )
