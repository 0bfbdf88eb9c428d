"""Corpus sweep: discover every file under each project root and
categorize it as analyzable source or a non-code resource.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from pathlib import Path

from tiergraph.config import (
    DEFAULT_NON_CODE_EXTENSIONS,
    ConfigError,
    ProjectConfig,
)

CODE_EXTENSION = "cs"


class FileCategory(enum.Enum):
    CodeBehind = "CodeBehind"
    NonCode = "NonCode"


@dataclass(frozen=True)
class FileRecord:
    path: str  # relative to the project root, '/'-separated
    project_id: str
    category: FileCategory
    content_hash: str
    skipped: bool = False  # unreadable during the sweep


def categorize_file(path: str | Path, config: ProjectConfig) -> FileCategory:
    """CodeBehind for .cs source, NonCode for everything else."""
    suffix = Path(path).suffix.lstrip(".").lower()
    if suffix == CODE_EXTENSION:
        return FileCategory.CodeBehind
    return FileCategory.NonCode


def is_non_code_extension(path: str | Path, config: ProjectConfig) -> bool:
    suffix = Path(path).suffix.lstrip(".").lower()
    return suffix in DEFAULT_NON_CODE_EXTENSIONS or suffix in config.non_code_extensions


def scan_corpus(configs: list[ProjectConfig]) -> list[FileRecord]:
    """Sweep every project root into a deterministic file inventory.

    Hidden files and directories are skipped. Unreadable files are recorded
    with a skip flag rather than aborting the sweep. Ordering is lexicographic
    by project id, then path, so equal trees give byte-identical inventories.
    """
    records: list[FileRecord] = []
    for cfg in sorted(configs, key=lambda c: c.project_id):
        root = Path(cfg.root_path)
        if not root.is_dir():
            raise ConfigError(
                f"project {cfg.project_id!r}: root path does not exist: {root}"
            )
        for path in sorted(_walk_visible(root)):
            rel = path.relative_to(root).as_posix()
            try:
                digest = hashlib.sha256(path.read_bytes()).hexdigest()
                skipped = False
            except OSError:
                digest = ""
                skipped = True
            records.append(
                FileRecord(
                    path=rel,
                    project_id=cfg.project_id,
                    category=categorize_file(rel, cfg),
                    content_hash=digest,
                    skipped=skipped,
                )
            )
    return records


def _walk_visible(root: Path):
    for entry in root.iterdir():
        if entry.name.startswith("."):
            continue
        if entry.is_dir():
            yield from _walk_visible(entry)
        elif entry.is_file():
            yield entry


def corpus_hash(inventory: list[FileRecord]) -> str:
    """Stable digest of the whole inventory, used to stamp snapshots."""
    h = hashlib.sha256()
    for record in inventory:
        h.update(
            f"{record.project_id}\x00{record.path}\x00{record.content_hash}\n".encode()
        )
    return h.hexdigest()
