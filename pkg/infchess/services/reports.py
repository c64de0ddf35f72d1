"""Text reports rendered from the templates in ``infchess/templates``."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from infchess.core.config import get_settings
from infchess.i18n import translate
from infchess.models.ordinal import format_ordinal
from infchess.models.position import Position
from infchess.services import notation
from infchess.services.certificates import VerificationReport
from infchess.services.simulation import TournamentResult, Transcript
from infchess.services.solver import MateResult, SearchBudget

TEMPLATE_DIR = Path(__file__).resolve().parents[1] / "templates"

_environment = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
    autoescape=False,
)
_environment.globals["translate"] = translate


def render(name: str, *, locale: str | None = None, **context: Any) -> str:
    locale = locale or get_settings().locale
    return _environment.get_template(name).render(locale=locale, **context)


def certificate_report(report: VerificationReport, *, locale: str | None = None) -> str:
    return render("certificate.txt.j2", locale=locale, report=report, claim=format_ordinal(report.claim))


def solve_report(
    position: Position, result: MateResult, budget: SearchBudget, line: str = "", *, locale: str | None = None
) -> str:
    board = notation.diagram(position) if position.dims == 2 else notation.serialize_position(position)
    return render("solve.txt.j2", locale=locale, board=board, result=result, budget=budget, line=line)


def simulate_report(transcript: Transcript, *, locale: str | None = None) -> str:
    line = notation.format_line(transcript.moves, transcript.root).split() if transcript.moves else []
    return render("simulate.txt.j2", locale=locale, transcript=transcript, line=line)


def tournament_report(result: TournamentResult, *, locale: str | None = None) -> str:
    return render("tournament.txt.j2", locale=locale, result=result)


__all__ = ["render", "certificate_report", "solve_report", "simulate_report", "tournament_report"]
