"""Run manifests: digests of inputs and outputs for tamper-evident pipelines."""

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import ManifestError


def sha256_file(path: Path | str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    version: str
    command: str
    seed: int
    inputs: dict[str, dict] = field(default_factory=dict)  # name -> {path, sha256}
    outputs: list[dict] = field(default_factory=list)  # [{path, sha256}]
    summary: dict = field(default_factory=dict)
    duration_s: float = 0.0
    created_utc: str = ""
    tool: str = "qmap"

    def add_input(self, name: str, path: Path | str):
        self.inputs[name] = {"path": str(path), "sha256": sha256_file(path)}

    def add_output(self, path: Path | str):
        self.outputs.append({"path": str(path), "sha256": sha256_file(path)})

    def finish(self, started: float):
        self.duration_s = time.time() - started
        self.created_utc = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def write_manifest(manifest: RunManifest, path: Path | str):
    Path(path).write_text(manifest.to_json())


def load_manifest(path: Path | str, check: bool = True) -> RunManifest:
    """Load a manifest; with check=True recompute all digests and fail on drift."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
        manifest = RunManifest(**data)
    except (OSError, json.JSONDecodeError, TypeError) as e:
        raise ManifestError(f"cannot read manifest {path}: {e}") from None
    if check:
        base = path.parent
        entries = list(manifest.inputs.values()) + list(manifest.outputs)
        for entry in entries:
            if not entry["sha256"]:  # non-file input, e.g. an arch shorthand
                continue
            target = Path(entry["path"])
            if not target.is_absolute():
                target = base / target
            try:
                digest = sha256_file(target)
            except OSError as e:
                raise ManifestError(f"manifest target missing: {e}") from None
            if digest != entry["sha256"]:
                raise ManifestError(f"digest mismatch for {entry['path']}")
    return manifest
