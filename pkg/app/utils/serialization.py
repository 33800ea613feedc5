"""Serialization tools."""

import logging
from typing import Any

import orjson

lgr = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2


def serialize(value: Any) -> bytes:
    """
    Serialize some value from python type to stable json bytes.

    Keys are sorted so identical values always give identical bytes.

    Args:
        value (Any): Any serializable python value.

    Returns:
        bytes: Serialized object terminated by a newline.

    Raises:
        TypeError: If the value isn't serializable.
    """
    try:
        serialized: bytes = orjson.dumps(value, option=JSON_OPTIONS)
    except TypeError as e:
        lgr.error(f"Value {value!r:.200} is not serializable.", exc_info=e)
        raise e
    return serialized + b"\n"


def deserialize(raw: bytes | str) -> Any:
    """
    Parse json bytes into python objects.

    Args:
        raw (bytes | str): Json document.

    Returns:
        Any: Parsed value.

    Raises:
        orjson.JSONDecodeError: If the document is malformed.
    """
    try:
        return orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        lgr.error(f"Malformed json document: {e}")
        raise e
