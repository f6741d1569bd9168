"""Append-only result cache for RadoKit jobs.

Each line of the cache file is one :class:`JobRecord` in JSON. Jobs are
keyed by the SHA256 digest of their command and arguments; every operation
is pure, so an identical job replays the stored result.
"""
import json
import logging
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError as PydanticValidationError

from .exceptions import CacheError
from .schemas import JobRecord
from .utils import payload_digest

logger = logging.getLogger(__name__)


def job_digest(command: str, payload: dict[str, Any]) -> str:
    """Content hash identifying a job."""
    return payload_digest(command, payload)


class ResultCache:
    """JSON-lines cache of job results."""

    def __init__(self, path: Path):
        self.path = path
        self._index: Optional[dict[str, JobRecord]] = None

    def _load(self) -> dict[str, JobRecord]:
        index: dict[str, JobRecord] = {}
        if not self.path.exists():
            return index
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                for lineno, line in enumerate(f, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        record = JobRecord.model_validate_json(line)
                    except PydanticValidationError as e:
                        logger.warning(f"Skipping corrupt cache line {lineno} in {self.path}: {e.error_count()} errors")
                        continue
                    # First record wins so replays stay stable.
                    index.setdefault(record.input_digest, record)
        except OSError as e:
            raise CacheError(str(self.path), str(e))
        logger.debug(f"Loaded {len(index)} cached jobs from {self.path}")
        return index

    @property
    def index(self) -> dict[str, JobRecord]:
        if self._index is None:
            self._index = self._load()
        return self._index

    def lookup(self, command: str, payload: dict[str, Any]) -> Optional[JobRecord]:
        """Return the stored record for an identical job, if any."""
        record = self.index.get(job_digest(command, payload))
        if record is not None:
            logger.debug(f"Cache hit for {command} ({record.input_digest[:12]})")
        return record

    def store(self, record: JobRecord) -> None:
        """Append a record unless its digest is already present."""
        if record.input_digest in self.index:
            return
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record.model_dump(mode="json"), sort_keys=True) + "\n")
        except OSError as e:
            raise CacheError(str(self.path), str(e))
        self.index[record.input_digest] = record
