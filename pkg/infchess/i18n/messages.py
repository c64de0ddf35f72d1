"""Simple dictionary-based translations for command output and reports."""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Mapping

from infchess.core.config import get_settings

DEFAULT_LOCALE = "en"
FALLBACK_LOCALE = "en"

_MESSAGES: Mapping[str, Mapping[str, str]] = {
    "en": {
        "error.input": "Input error: {detail}",
        "error.budget": "Search budget exhausted after {nodes} nodes.",
        "error.strategy": "Strategy {strategy} failed: {detail}",
        "error.unexpected": "Unexpected error: {detail}",
        "validate.ok": "{path}: position is valid.",
        "validate.problems": "{path}: {count} problem(s) found.",
        "solve.mate": "White mates in {moves}.",
        "solve.none": "No mate within {bound} moves.",
        "solve.horizon": "Result is relative to the family horizon {horizon}.",
        "value.finite": "Value: {value}",
        "value.none": "No finite value within {bound} moves.",
        "certify.pass": "Certificate holds: claim {claim}.",
        "certify.fail": "Certificate fails ({reason}) at {path}: {detail}",
        "gen.written": "Position written to {path}.",
        "gen.certificate": "Certificate written to {path}.",
        "rank.value": "Rank: {rank}",
        "simulate.outcome": "Outcome: {outcome} after {plies} plies.",
        "tournament.done": "{games} game(s): white won {white}, black won {black}.",
        "repl.welcome": "Engine plays {side}. Enter moves, 'board', 'moves' or 'quit'.",
        "repl.illegal": "Not a legal move: {detail}",
        "repl.engine": "Engine plays {move}",
        "repl.status": "Status: {status}",
        "repl.bye": "Bye.",
        "report.certificate.title": "Certificate report",
        "report.solve.title": "Mate search report",
        "report.simulate.title": "Game transcript",
        "report.tournament.title": "Strategy tournament",
        "report.field.mode": "Mode",
        "report.field.claim": "Claim",
        "report.field.verdict": "Verdict",
        "report.field.reason": "Reason",
        "report.field.path": "Path",
        "report.field.nodes": "Nodes",
        "report.field.leaves": "Leaves",
        "report.field.samples": "Samples",
        "report.field.caveats": "Caveats",
        "report.field.outcome": "Outcome",
        "report.field.moves": "Moves",
        "report.field.budget": "Budget",
        "report.field.white": "White",
        "report.field.black": "Black",
        "report.verdict.pass": "pass",
        "report.verdict.fail": "fail",
        "report.none": "none",
    },
    "ru": {
        "error.input": "Ошибка ввода: {detail}",
        "error.budget": "Бюджет поиска исчерпан после {nodes} узлов.",
        "error.strategy": "Стратегия {strategy} не справилась: {detail}",
        "error.unexpected": "Непредвиденная ошибка: {detail}",
        "validate.ok": "{path}: позиция корректна.",
        "validate.problems": "{path}: найдено проблем: {count}.",
        "solve.mate": "Белые ставят мат в {moves} ход(а).",
        "solve.none": "Мата не найдено в пределах {bound} ходов.",
        "solve.horizon": "Результат зависит от горизонта семейств {horizon}.",
        "value.finite": "Значение: {value}",
        "value.none": "Конечного значения в пределах {bound} ходов нет.",
        "certify.pass": "Сертификат верен: заявлено {claim}.",
        "certify.fail": "Сертификат не прошёл ({reason}) в {path}: {detail}",
        "gen.written": "Позиция записана в {path}.",
        "gen.certificate": "Сертификат записан в {path}.",
        "rank.value": "Ранг: {rank}",
        "simulate.outcome": "Итог: {outcome} после {plies} полуходов.",
        "tournament.done": "Партий: {games}; побед белых {white}, побед чёрных {black}.",
        "repl.welcome": "Движок играет за {side}. Вводите ходы, 'board', 'moves' или 'quit'.",
        "repl.illegal": "Недопустимый ход: {detail}",
        "repl.engine": "Ход движка: {move}",
        "repl.status": "Состояние: {status}",
        "repl.bye": "До встречи.",
        "report.certificate.title": "Отчёт о сертификате",
        "report.solve.title": "Отчёт о поиске мата",
        "report.simulate.title": "Запись партии",
        "report.tournament.title": "Турнир стратегий",
        "report.field.mode": "Режим",
        "report.field.claim": "Заявка",
        "report.field.verdict": "Вердикт",
        "report.field.reason": "Причина",
        "report.field.path": "Путь",
        "report.field.nodes": "Узлы",
        "report.field.leaves": "Листья",
        "report.field.samples": "Выборки",
        "report.field.caveats": "Оговорки",
        "report.field.outcome": "Итог",
        "report.field.moves": "Ходы",
        "report.field.budget": "Бюджет",
        "report.field.white": "Белые",
        "report.field.black": "Чёрные",
        "report.verdict.pass": "принят",
        "report.verdict.fail": "отклонён",
        "report.none": "нет",
    },
}


@lru_cache(maxsize=8)
def _resolve_locale(locale: str | None) -> str:
    if not locale:
        return DEFAULT_LOCALE
    lang = locale.split("_")[0].split("-")[0].lower()
    if lang in _MESSAGES:
        return lang
    return DEFAULT_LOCALE


def translate(key: str, *, locale: str | None = None, **kwargs: Any) -> str:
    """Message ``key`` in ``locale``; English, then the key itself, when a catalogue lacks it."""
    loc = _resolve_locale(locale)
    table = _MESSAGES.get(loc, {})
    template = table.get(key) or _MESSAGES[FALLBACK_LOCALE].get(key) or key
    try:
        return template.format(**kwargs)
    except (KeyError, IndexError, ValueError):
        return template


def t(key: str, **kwargs: Any) -> str:
    """``translate`` in the configured locale."""
    return translate(key, locale=get_settings().locale, **kwargs)


def available_locales() -> tuple[str, ...]:
    return tuple(_MESSAGES)


__all__ = ["DEFAULT_LOCALE", "translate", "t", "available_locales"]
