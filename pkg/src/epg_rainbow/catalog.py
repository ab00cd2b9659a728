"""Catalog files: one :class:`GroupSpec` per line, ``#`` comments allowed."""

from __future__ import annotations

import logging
from importlib import resources
from pathlib import Path

from .groups import GroupError, GroupSpec, parse_spec

log = logging.getLogger(__name__)


def data_path(name: str) -> Path:
    return Path(str(resources.files("epg_rainbow") / "data" / name))


DEFAULT_CATALOG = data_path("default_catalog.txt")


def parse_catalog(text: str, base_dir: Path | None = None, strict: bool = False
                  ) -> tuple[list[GroupSpec], list[str]]:
    """Parse catalog text into specs.  Malformed lines are skipped with a
    warning (returned as the second element) unless ``strict``."""
    specs, warnings = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            specs.append(parse_spec(line, base_dir))
        except GroupError as exc:
            if strict:
                raise GroupError(f"line {lineno}: {exc}") from exc
            msg = f"line {lineno}: skipped malformed spec {line!r} ({exc})"
            log.warning(msg)
            warnings.append(msg)
    return specs, warnings


def load_catalog(path: str | Path | None = None, strict: bool = False
                 ) -> tuple[list[GroupSpec], list[str]]:
    path = Path(path) if path is not None else DEFAULT_CATALOG
    return parse_catalog(path.read_text(), path.parent, strict)


def default_catalog() -> list[GroupSpec]:
    return load_catalog()[0]
