"""Run manifests: what ran, on which inputs, with which settings."""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from hawkesmisd import __version__

MANIFEST_FILE = "manifest.json"


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def config_digest(settings: Dict[str, Any]) -> str:
    """Digest of the canonical (sorted-key) JSON of the effective settings."""
    return sha256_bytes(json.dumps(settings, sort_keys=True, default=str).encode("utf-8"))


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class RunManifest:
    """One per output directory; enough to replay the command exactly."""

    command: str
    config_hash: str
    input_digests: Dict[str, str]
    seed: Optional[int]
    tool_version: str = __version__
    started: str = field(default_factory=utc_now)
    finished: Optional[str] = None
    settings: Dict[str, Any] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    metrics: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def begin(
        cls,
        command: str,
        settings: Dict[str, Any],
        inputs: Dict[str, Optional[Path]],
        seed: Optional[int] = None,
    ) -> "RunManifest":
        digests = {name: sha256_file(p) for name, p in inputs.items() if p is not None}
        return cls(
            command=command,
            config_hash=config_digest(settings),
            input_digests=digests,
            seed=seed,
            settings=json.loads(json.dumps(settings, default=str)),
        )

    def finish(self, out_dir: Path, metrics: Optional[Dict[str, Any]] = None) -> Path:
        """Stamp the finish time, list the outputs and write ``manifest.json``."""
        out_dir = Path(out_dir)
        self.finished = utc_now()
        self.outputs = sorted(p.name for p in out_dir.iterdir() if p.is_file() and p.name != MANIFEST_FILE)
        self.metrics = metrics or {}
        path = out_dir / MANIFEST_FILE
        path.write_text(json.dumps(asdict(self), indent=2, default=str) + "\n", encoding="utf-8")
        return path
