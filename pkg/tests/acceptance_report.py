"""Shared record of acceptance outcomes, printed at the end of a pytest run."""

_results: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> str:
    _results[number] = (ok, detail)
    return format_line(number)


def format_line(number: int) -> str:
    ok, detail = _results[number]
    return f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def lines() -> list[str]:
    return [format_line(n) for n in sorted(_results)]
