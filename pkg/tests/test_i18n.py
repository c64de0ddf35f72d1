from infchess.i18n import t, translate
from infchess.i18n.messages import available_locales


def test_locales() -> None:
    assert available_locales() == ("en", "ru")


def test_translate_formats_arguments() -> None:
    assert translate("solve.mate", moves=3) == "White mates in 3."
    assert translate("rank.value", locale="ru", rank="w + 2") == "Ранг: w + 2"


def test_regional_locale_falls_back_to_language() -> None:
    assert translate("repl.bye", locale="ru_RU") == "До встречи."
    assert translate("repl.bye", locale="de") == "Bye."


def test_unknown_key_is_returned_as_is() -> None:
    assert translate("no.such.key", locale="ru") == "no.such.key"


def test_missing_argument_leaves_template() -> None:
    assert translate("solve.mate") == "White mates in {moves}."


def test_configured_locale(monkeypatch) -> None:
    monkeypatch.setenv("INFCHESS_LOCALE", "ru")
    assert t("repl.status", status="stalemate") == "Состояние: stalemate"
