"""Strict TOML loading shared by scenario and catalog files.

Unknown keys are hard errors: a planning input with a typo must fail loudly,
not be silently ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Iterable

try:
    import tomllib  # Python >= 3.11
except ImportError:  # pragma: no cover
    import tomli as tomllib


class InputFileError(ValueError):
    """Malformed scenario or catalog file."""


def load_toml(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise InputFileError(f"file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise InputFileError(f"{path}: invalid TOML: {exc}") from None


def reject_unknown_keys(table: dict[str, Any], allowed: Iterable[str], where: str) -> None:
    unknown = sorted(set(table) - set(allowed))
    if unknown:
        raise InputFileError(
            f"{where}: unknown key(s) {', '.join(unknown)} "
            f"(allowed: {', '.join(sorted(allowed))})"
        )


def typed(table: dict[str, Any], key: str, kinds: type | tuple[type, ...],
          where: str, default: Any = None, required: bool = False) -> Any:
    """Fetch ``table[key]`` checking its type; bool is not accepted as int."""
    if key not in table:
        if required:
            raise InputFileError(f"{where}: missing required key {key!r}")
        return default
    value = table[key]
    if isinstance(value, bool) and bool not in (kinds if isinstance(kinds, tuple) else (kinds,)):
        raise InputFileError(f"{where}.{key}: expected {_kind_name(kinds)}, got a boolean")
    if not isinstance(value, kinds):
        raise InputFileError(
            f"{where}.{key}: expected {_kind_name(kinds)}, got {type(value).__name__}")
    return value


def _kind_name(kinds: type | tuple[type, ...]) -> str:
    if isinstance(kinds, tuple):
        return " or ".join(k.__name__ for k in kinds)
    return kinds.__name__
