"""CSV/JSON emission with run manifests, and jinja2 text reports."""

import json
import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence

import numpy as np
from jinja2 import Environment, FileSystemLoader, StrictUndefined

from qu5it import __version__
from qu5it.config import settings
from qu5it.models import ExperimentConfig, RunManifest

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"

_env = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)
_env.filters["num"] = lambda value, digits=6: format_value(value, digits)


def new_manifest(command: str, config: ExperimentConfig, seed: Optional[int] = None) -> RunManifest:
    return RunManifest(
        command=command,
        config_hash=config.config_hash(),
        version=__version__,
        prng=settings.prng_name,
        seed=seed,
    )


@contextmanager
def stage(manifest: RunManifest, name: str) -> Iterator[None]:
    """Record the wall-clock seconds of a block under ``name``."""
    start = time.perf_counter()
    try:
        yield
    finally:
        manifest.stages[name] = round(time.perf_counter() - start, 6)
        logger.debug(f"stage {name}: {manifest.stages[name]:.3f}s")


def format_value(value: Any, digits: Optional[int] = None) -> str:
    """Floats with a fixed number of significant digits; everything else via str()."""
    digits = settings.output_digits if digits is None else digits
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = f"{float(value):.{digits}g}"
        return "0" if text == "-0" else text
    return str(value)


def manifest_lines(manifest: RunManifest) -> List[str]:
    return [f"# {key}: {json.dumps(value, sort_keys=True)}" for key, value in manifest.model_dump().items()]


def csv_text(manifest: RunManifest, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = manifest_lines(manifest)
    lines.append(",".join(header))
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def data_rows(text: str) -> List[str]:
    """Header and data lines of a CSV written by csv_text."""
    return [line for line in text.splitlines() if not line.startswith("#")]


def write_outputs(
    directory: Path,
    stem: str,
    manifest: RunManifest,
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    summary: Dict[str, Any],
    formats: Sequence[str] = ("csv", "json")
) -> List[Path]:
    """Write ``stem.csv`` and its ``stem.json`` side-car; returns the written paths."""
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        path = directory / f"{stem}.csv"
        path.write_text(csv_text(manifest, header, rows), encoding="utf-8")
        written.append(path)
    if "json" in formats:
        path = directory / f"{stem}.json"
        payload = {"manifest": manifest.model_dump(), "summary": _jsonable(summary)}
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(path)
    for path in written:
        logger.info(f"✅ wrote {path}")
    return written


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(format_value(float(value)))
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def render(template: str, **context: Any) -> str:
    return _env.get_template(template).render(**context)
