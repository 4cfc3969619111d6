"""Chain-spec documents and CSV path files."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from pathlib import Path

import jsonschema
import numpy as np

from .exceptions import ConfigParseError
from .state_space import StateSpace, validate_metric
from .transition import TransitionModel, validate_stochastic

__all__ = [
    "SCHEMA_VERSION",
    "CHAIN_SPEC_SCHEMA",
    "ChainSpec",
    "load_chain_spec",
    "parse_chain_spec",
    "spec_digest",
    "path_to_csv",
    "read_path_csv",
]

SCHEMA_VERSION = 1

CHAIN_SPEC_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "states", "transitions"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "states": {
            "type": "array",
            "items": {"type": "string", "minLength": 1},
            "minItems": 2,
            "uniqueItems": True,
        },
        "metric": {
            "oneOf": [
                {"const": "discrete"},
                {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "number"}},
                },
            ]
        },
        "order": {"type": "integer", "minimum": 1},
        "transitions": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        },
        "strict_positivity": {"type": "boolean"},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "length": {"type": "integer", "minimum": 1},
        "initial": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    },
}


def spec_digest(document: dict) -> str:
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class ChainSpec:
    space: StateSpace
    model: TransitionModel
    seed: int
    length: int
    initial: tuple[int, ...] | None
    digest: str
    document: dict

    @property
    def states(self):
        return self.space.states


def _json_path(error) -> str:
    out = "$"
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def parse_chain_spec(document: dict) -> ChainSpec:
    """Validate a decoded chain-spec document.

    Schema problems raise :class:`ConfigParseError` naming the offending
    field; metric and probability problems propagate as ``ValidationError``.
    """
    validator = jsonschema.Draft202012Validator(CHAIN_SPEC_SCHEMA)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        msg = "; ".join(f"{_json_path(e)}: {e.message}" for e in errors)
        raise ConfigParseError(msg)

    states = document["states"]
    space = validate_metric(document.get("metric", "discrete"), states=states)
    model = validate_stochastic(
        document["transitions"],
        order=document.get("order", 1),
        strict=document.get("strict_positivity", False),
    )
    if model.m != space.m:
        raise ConfigParseError(
            f"$.transitions: rows have {model.m} columns but there are {space.m} states"
        )
    initial = document.get("initial")
    if initial is not None:
        if len(initial) != model.order:
            raise ConfigParseError(f"$.initial: expected {model.order} labels, got {len(initial)}")
        initial = tuple(int(i) for i in space.indices(initial))
    return ChainSpec(
        space=space,
        model=model,
        seed=int(document.get("seed", 0)),
        length=int(document.get("length", 1000)),
        initial=initial,
        digest=spec_digest(document),
        document=document,
    )


def load_chain_spec(source) -> ChainSpec:
    """Read a chain spec from a path or an already-decoded dict."""
    if isinstance(source, dict):
        return parse_chain_spec(source)
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise ConfigParseError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return parse_chain_spec(document)


def path_to_csv(path, space: StateSpace, metadata: dict | None = None) -> str:
    """CSV with columns ``step,state_label``; metadata goes in ``#`` comment lines."""
    buf = io.StringIO()
    for key, value in (metadata or {}).items():
        buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "state_label"])
    for step, idx in enumerate(getattr(path, "path", path)):
        writer.writerow([step, space.states[int(idx)]])
    return buf.getvalue()


def read_path_csv(source, space: StateSpace):
    """Parse a path CSV back into state indices.

    ``source`` is a filename or the CSV text itself (anything containing a
    newline is treated as text).
    """
    text = source if isinstance(source, str) and "\n" in source else Path(source).read_text()
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.DictReader(rows)
    if reader.fieldnames != ["step", "state_label"]:
        raise ConfigParseError(f"path CSV header must be step,state_label, got {reader.fieldnames}")
    labels = []
    for expected, row in enumerate(reader):
        if int(row["step"]) != expected:
            raise ConfigParseError(f"path CSV step {row['step']} out of order (expected {expected})")
        labels.append(row["state_label"])
    return np.asarray(space.indices(labels), dtype=np.int64)
