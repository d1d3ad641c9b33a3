"""The frozen JSON Lines schema for dataset examples.

One example per line; every line carries the full formal theory so records
stand alone. ``write_record`` and ``read_record`` are exact inverses, and the
reader rejects lines with missing or unknown fields by name.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .engine import GivenFact, ProofStep
from .syntax import emit_atom, emit_literal

FIELDS = (
    "id",
    "theory_formal",
    "context",
    "question",
    "statement_formal",
    "answer",
    "depth",
    "provenance",
    "proofs",
    "split",
)

PROVENANCES = ("proven", "negated_proven", "cwa_false", "flipped_true")
SPLITS = ("train", "dev", "test")


class SchemaError(Exception):
    pass


@dataclass
class DatasetRecord:
    id: str
    theory_formal: str
    context: str
    question: str
    statement_formal: str
    answer: bool
    depth: int
    provenance: str
    proofs: list
    split: str


def proof_json(step: ProofStep) -> dict:
    """A proof tree as plain nested dicts, ready for JSON."""
    if isinstance(step.via, GivenFact):
        return {
            "literal": emit_literal(step.conclusion),
            "via": "given",
            "sentence": step.via.sentence,
        }
    return {
        "literal": emit_literal(step.conclusion),
        "via": "rule",
        "rule": step.via.rule_id,
        "sentence": step.via.sentence,
        "binding": step.via.binding,
        "conditions": [proof_json(child) for child in step.via.children],
        "naf": [emit_atom(atom) for atom in step.via.naf],
    }


def write_record(record: DatasetRecord) -> str:
    payload = asdict(record)
    ordered = {name: payload[name] for name in FIELDS}
    return json.dumps(ordered, ensure_ascii=False)


def read_record(line: str) -> DatasetRecord:
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as err:
        raise SchemaError(f"not a JSON object: {err}") from err
    if not isinstance(payload, dict):
        raise SchemaError("record line must hold a JSON object")
    for name in FIELDS:
        if name not in payload:
            raise SchemaError(f"missing field {name!r}")
    for name in payload:
        if name not in FIELDS:
            raise SchemaError(f"unknown field {name!r}")
    if payload["provenance"] not in PROVENANCES:
        raise SchemaError(f"bad provenance {payload['provenance']!r}")
    if payload["split"] not in SPLITS:
        raise SchemaError(f"bad split {payload['split']!r}")
    if not isinstance(payload["answer"], bool):
        raise SchemaError("answer must be a boolean")
    if not isinstance(payload["depth"], int) or payload["depth"] < 0:
        raise SchemaError("depth must be a non-negative integer")
    if not isinstance(payload["proofs"], list):
        raise SchemaError("proofs must be a list")
    return DatasetRecord(**payload)


def read_dataset(path) -> list[DatasetRecord]:
    out = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                out.append(read_record(line))
    return out


def write_dataset(path, records) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(write_record(record) + "\n")
