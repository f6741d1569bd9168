"""Utility functions for RadoKit."""
import hashlib
import json
import re
from typing import Any, Iterable, Sequence

from .exceptions import InvalidInput, ParseError


INT_LIST_PATTERN = re.compile(r'^\s*-?\d+(\s*,\s*-?\d+)*\s*$')


def payload_digest(command: str, payload: dict[str, Any]) -> str:
    """Calculate the SHA256 content hash of a job.

    Args:
        command: The command name.
        payload: JSON-serializable arguments of the job.

    Returns:
        Hexadecimal string of the SHA256 hash.
    """
    canonical = json.dumps({"command": command, "args": payload}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def to_decimal_strings(values: Iterable[int]) -> list[str]:
    """Encode integers as decimal strings for precision-safe JSON."""
    return [str(v) for v in values]


def from_decimal_strings(values: Sequence[Any]) -> tuple[int, ...]:
    """Decode a JSON array of integers or decimal strings.

    Raises:
        InvalidInput: If an entry is not an integer.
    """
    result = []
    for i, v in enumerate(values):
        if isinstance(v, bool):
            raise InvalidInput("string", f"entry {i} is a boolean")
        if isinstance(v, int):
            result.append(v)
        elif isinstance(v, str) and re.fullmatch(r'\s*-?\d+\s*', v):
            result.append(int(v))
        else:
            raise InvalidInput("string", f"entry {i} is not an integer: {v!r}")
    return tuple(result)


def parse_int_string(text: str) -> tuple[int, ...]:
    """Parse a string literal such as ``[3,0,-4]`` or ``["3","0","-4"]``.

    Raises:
        ParseError: If the text is not a JSON array.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.colno)
    if not isinstance(data, list):
        raise ParseError("expected a JSON array", 1)
    try:
        return from_decimal_strings(data)
    except InvalidInput as e:
        raise ParseError(e.message, 1)


def parse_int_list(text: str, field: str = "list") -> tuple[int, ...]:
    """Parse a comma separated list like ``1,2,4``.

    Raises:
        InvalidInput: If the text is not a comma separated integer list.
    """
    if text.strip() == "":
        return ()
    if not INT_LIST_PATTERN.match(text):
        raise InvalidInput(field, "expected comma separated integers (e.g. '1,2,4')")
    return tuple(int(part) for part in text.split(","))


def format_int_set(values: Iterable[int]) -> str:
    """Format a set of integers compactly, collapsing runs (``1..7, 9``)."""
    ordered = sorted(set(values))
    if not ordered:
        return "{}"
    parts = []
    start = prev = ordered[0]
    for v in ordered[1:]:
        if v == prev + 1:
            prev = v
            continue
        parts.append(f"{start}..{prev}" if prev - start >= 2 else ", ".join(str(x) for x in range(start, prev + 1)))
        start = prev = v
    parts.append(f"{start}..{prev}" if prev - start >= 2 else ", ".join(str(x) for x in range(start, prev + 1)))
    return "{" + ", ".join(parts) + "}"
