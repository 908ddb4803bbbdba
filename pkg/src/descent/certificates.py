"""JSONL certificate records.

One record per line, self-describing (kind + schema_version), with every
integer serialized as a decimal string so arbitrary magnitudes survive
JSON round-trips. Scan summaries exclude wall-clock timings: identical
inputs must produce byte-identical lines regardless of worker count.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"

_KINDS = ("triple", "form_eval", "scan_summary", "descent_trace", "catalog_form")


def config_digest(payload: dict) -> str:
    """Stable 16-hex digest of the semantic scan/run parameters."""
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def _encode(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if value is None:
        return None
    raise TypeError(f"unsupported payload value {value!r}")


def _is_decimal(s: str) -> bool:
    body = s[1:] if s[:1] == "-" else s
    return body.isdigit() and body != ""


def _decode(value):
    if isinstance(value, str) and _is_decimal(value):
        return int(value)
    if isinstance(value, list):
        return [_decode(v) for v in value]
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class CertificateRecord:
    """One line of certificate output."""

    kind: str
    payload: dict
    config_hash: str = ""
    tool_version: str = TOOL_VERSION
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")


def serialize_record(record: CertificateRecord) -> str:
    obj = {
        "kind": record.kind,
        "schema_version": record.schema_version,
        "tool_version": record.tool_version,
        "config_hash": record.config_hash,
        "payload": _encode(record.payload),
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def parse_record(line: str) -> CertificateRecord:
    obj = json.loads(line)
    return CertificateRecord(
        kind=obj["kind"],
        payload=_decode(obj["payload"]),
        config_hash=obj["config_hash"],
        tool_version=obj["tool_version"],
        schema_version=obj["schema_version"],
    )


def triple_record(triple, report, config_hash: str = "") -> CertificateRecord:
    return CertificateRecord(
        kind="triple",
        payload={
            "p": triple.gen.p, "q": triple.gen.q,
            "a": triple.a, "b": triple.b, "c": triple.c,
            "div3": report.div3, "div4": report.div4, "div5": report.div5,
        },
        config_hash=config_hash,
    )


def decomposition_record(a: int, b: int, gen, config_hash: str = "") -> CertificateRecord:
    return CertificateRecord(
        kind="triple",
        payload={"a": a, "b": b, "p": gen.p, "q": gen.q},
        config_hash=config_hash,
    )


def form_eval_record(instance, config_hash: str = "") -> CertificateRecord:
    return CertificateRecord(
        kind="form_eval",
        payload={
            "form": instance.form,
            "params": dict(instance.params),
            "value": instance.value,
            "is_square": instance.is_square,
            "is_exception": instance.is_exception,
        },
        config_hash=config_hash,
    )


def scan_summary_record(report) -> CertificateRecord:
    # elapsed is deliberately omitted: summaries must be byte-identical
    # across runs and worker counts.
    return CertificateRecord(
        kind="scan_summary",
        payload={
            "target": report.target,
            "bounds": dict(report.bounds),
            "candidates_tested": report.candidates_tested,
            "squares_found": [dict(r) for r in report.squares_found],
            "violations": [dict(r) for r in report.violations],
            "oracle_checked": report.oracle_checked,
            "oracle_mismatches": report.oracle_mismatches,
            "expected": report.expected,
        },
        config_hash=report.config_hash,
    )


def descent_trace_record(
    theorem: int, inputs: dict, outcome, config_hash: str = ""
) -> CertificateRecord:
    payload = {
        "theorem": theorem,
        "inputs": dict(inputs),
        "tag": outcome.tag,
        "reduced": list(outcome.reduced) if outcome.reduced else None,
        "exception_name": outcome.exception_name,
        "violated": outcome.violated,
        "trace": [{"label": label, "values": dict(values)} for label, values in outcome.trace],
    }
    return CertificateRecord(
        kind="descent_trace", payload=payload, config_hash=config_hash
    )


def catalog_form_record(entry: dict) -> CertificateRecord:
    return CertificateRecord(kind="catalog_form", payload=dict(entry))
