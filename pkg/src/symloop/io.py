"""Shared I/O utilities: argument parsing, JSON documents, JSONL, atomic writes."""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import tempfile
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import IO, Any

from symloop.errors import DocumentError

logger = logging.getLogger(__name__)


def safe_parse(
    parser: argparse.ArgumentParser,
    args: list[str] | None,
) -> tuple[argparse.Namespace | None, int | None]:
    """Parse *args* with *parser*, catching ``SystemExit`` from argparse.

    Returns ``(namespace, None)`` on success, or ``(None, exit_code)`` when
    argparse calls ``sys.exit`` (--help, errors, etc.).
    """
    try:
        ns = parser.parse_args(args)
    except SystemExit as e:
        return None, int(e.code) if e.code is not None else 0
    return ns, None


def read_jsonl(stream: IO[str]) -> Iterator[dict]:
    """Read JSONL from a stream, yielding dicts.

    Skips blank lines, malformed JSON, and non-dict values.
    Emits a warning for malformed JSON lines.
    """
    for n, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            logger.warning("skipping malformed JSON on line %d", n)
            continue
        if isinstance(obj, dict):
            yield obj
        else:
            logger.warning("skipping non-object JSON on line %d", n)


def dumps_record(record: Any) -> str:
    """Serialize one JSONL record."""
    return json.dumps(record, ensure_ascii=False)


# ---------------------------------------------------------------------------
# JSON documents (space, ring and certificate files)
# ---------------------------------------------------------------------------


def load_document(path: str | Path) -> dict[str, Any]:
    """Load a JSON object from *path*.

    Raises:
        DocumentError: If the file is unreadable or not a JSON object.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise DocumentError(f"cannot read {path}: {err.strerror or err}") from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"{path}: invalid JSON at line {err.lineno}") from err
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: expected a JSON object")
    return doc


def check_keys(
    doc: dict[str, Any],
    *,
    required: Iterable[str],
    optional: Iterable[str] = (),
    where: str = "document",
) -> None:
    """Reject unknown and missing keys.

    Raises:
        DocumentError: Naming the first offending key.
    """
    required = tuple(required)
    allowed = set(required) | set(optional)
    for key in doc:
        if key not in allowed:
            raise DocumentError(f"{where}: unknown key '{key}'")
    for key in required:
        if key not in doc:
            raise DocumentError(f"{where}: missing key '{key}'")


def write_atomic(path: str | Path, data: str) -> None:
    """Write *data* to *path* atomically (write-to-temp + os.replace)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        os.write(fd, data.encode("utf-8"))
        os.close(fd)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.close(fd)
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise
