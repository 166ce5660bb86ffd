"""Loading outcome-space description files.

A space file is a JSON object::

    {
      "outcomes": ["H", "T"],
      "probs": ["1/2", 0.5],
      "events": {"heads": ["H"]},
      "partitions": {"coin": [["H"], ["T"]]}
    }

Probabilities may be JSON numbers, decimal strings or exact fractions
``"a/b"``.  ``events`` and ``partitions`` are optional.  Every space also has
the event ``U`` and the partitions ``1_U`` (all singletons) and ``0_U``
(one block), unless the file defines those names itself.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import BornRuleError, DuplicateLabel, EmptySpace
from .probability import (
    Event,
    OutcomeSpace,
    Partition,
    discrete_partition,
    indiscrete_partition,
    new_partition,
)

MAX_OUTCOMES = 64


class SpecError(Exception):
    """Malformed or invalid space file (CLI exit code 2)."""

    def __init__(self, message: str, line: int | None = None, context: str | None = None):
        self.line = line
        self.context = context
        where = f"line {line}: " if line is not None else ""
        text = f"{where}{message}"
        if context is not None:
            text += f"\n    {context.strip()}"
        super().__init__(text)


class UnknownName(KeyError):
    """Event or partition name not defined in the space file (CLI exit code 3)."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


@dataclass(frozen=True)
class SpaceSpec:
    space: OutcomeSpace
    events: dict[str, Event]
    partitions: dict[str, Partition]
    digest: str
    path: str | None = None

    def event(self, name: str) -> Event:
        """Named event, or the singleton of an outcome label as a fallback."""
        if name in self.events:
            return self.events[name]
        if name in self.space.labels:
            return self.space.singleton(self.space.index(name))
        raise UnknownName(f"no event or outcome named {name!r}")

    def partition(self, name: str) -> Partition:
        if name in self.partitions:
            return self.partitions[name]
        raise UnknownName(f"no partition named {name!r}")


def _locate(text: str, needle: str) -> tuple[int | None, str | None]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return lineno, line
    return None, None


def _fail(text: str, message: str, needle: str | None = None):
    line, context = _locate(text, needle) if needle else (None, None)
    raise SpecError(message, line, context)


def parse_probability(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError(f"not a probability: {value!r}")
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise ValueError(f"not a finite number: {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"not a probability: {value!r}")


def parse_spec(text: str, *, normalize: bool = False, path: str | None = None) -> SpaceSpec:
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else None
        raise SpecError(exc.msg, exc.lineno, context) from None

    if not isinstance(doc, dict):
        _fail(text, "top level must be a JSON object")
    for key in ("outcomes", "probs"):
        if key not in doc:
            _fail(text, f"missing required key {key!r}")
    labels = doc["outcomes"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        _fail(text, "'outcomes' must be a list of strings", '"outcomes"')
    if len(labels) > MAX_OUTCOMES:
        _fail(text, f"{len(labels)} outcomes exceeds the limit of {MAX_OUTCOMES}", '"outcomes"')
    raw = doc["probs"]
    if not isinstance(raw, list):
        _fail(text, "'probs' must be a list", '"probs"')

    try:
        weights = [parse_probability(v) for v in raw]
    except (ValueError, ZeroDivisionError) as exc:
        _fail(text, f"bad probability: {exc}", '"probs"')
    if normalize:
        if any(w < 0 for w in weights):
            _fail(text, "--normalize needs nonnegative weights", '"probs"')
        total = sum(weights, Fraction(0))
        if total == 0:
            _fail(text, "--normalize needs a positive total weight", '"probs"')
        weights = [w / total for w in weights]

    try:
        space = OutcomeSpace(tuple(labels), tuple(float(w) for w in weights))
    except BornRuleError as exc:
        needle = '"outcomes"' if isinstance(exc, (DuplicateLabel, EmptySpace)) else '"probs"'
        _fail(text, f"{type(exc).__name__}: {exc}", needle)

    events: dict[str, Event] = {"U": space.full()}
    for name, members in (doc.get("events") or {}).items():
        if not isinstance(members, list) or not all(isinstance(x, str) for x in members):
            _fail(text, f"event {name!r} must be a list of outcome labels", f'"{name}"')
        try:
            events[name] = space.event(members)
        except BornRuleError as exc:
            _fail(text, f"event {name!r}: {exc}", f'"{name}"')

    partitions: dict[str, Partition] = {
        "1_U": discrete_partition(space),
        "0_U": indiscrete_partition(space),
    }
    for name, blocks in (doc.get("partitions") or {}).items():
        if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
            _fail(text, f"partition {name!r} must be a list of label lists", f'"{name}"')
        try:
            partitions[name] = new_partition(space, [space.event(b) for b in blocks])
        except BornRuleError as exc:
            _fail(text, f"partition {name!r}: {type(exc).__name__}: {exc}", f'"{name}"')

    return SpaceSpec(space, events, partitions, digest, path)


def load_spec(path: str | Path, *, normalize: bool = False) -> SpaceSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    return parse_spec(text, normalize=normalize, path=str(path))
