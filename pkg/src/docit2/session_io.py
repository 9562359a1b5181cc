"""Versioned session documents, event logs, and plot exports.

A document is canonical JSON (sorted keys, no whitespace, UTF-8) so two
independent exports of the same session compare byte for byte.  Exact
rationals travel as decimal strings like ``"2/7"``; floats rely on the
shortest round-trip representation.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .cards import CardChain, RatioTable, ValueScale, format_fraction, parse_fraction
from .coresupport import CoreSupport
from .errors import Docit2Error, DocumentError, MigrationError
from .fuzzy import knots
from .it2 import IT2MF
from .mcdm import LinguisticScale
from .session import (
    Event,
    SessionConfig,
    SessionState,
    SideRecord,
    initial_state,
    replay_events,
    session_transition,
)

SCHEMA_VERSION = 1


def replay(config: SessionConfig, events) -> SessionState:
    """Fold a persisted log; a failing event is reported with its position."""
    state = initial_state(config)
    for index, event in enumerate(events):
        try:
            state = session_transition(state, event)
        except Docit2Error as err:
            raise DocumentError(
                f"event {index} ({event.type!r}) failed: {err}"
            ) from err
    return state


@dataclass(frozen=True)
class SessionDocument:
    """A session frozen in flight: config, full event log, state snapshot."""

    schema_version: int
    config: SessionConfig
    events: tuple[Event, ...]
    state: SessionState

    @classmethod
    def of(cls, state: SessionState) -> "SessionDocument":
        return cls(SCHEMA_VERSION, state.config, state.audit_log, state)


def _fractions_to_json(values) -> list:
    return [format_fraction(v) for v in values]


def _fractions_from_json(values) -> tuple:
    return tuple(parse_fraction(v) for v in values)


def _side_to_json(record: SideRecord) -> dict:
    return {
        "chain": record.chain.to_json(),
        "breakpoints": _fractions_to_json(record.breakpoints),
        "variants": [_fractions_to_json(v) for v in record.variants],
        "reviewed": record.reviewed,
    }


def _side_from_json(data: dict) -> SideRecord:
    return SideRecord(
        chain=CardChain.from_json(data["chain"]),
        breakpoints=_fractions_from_json(data["breakpoints"]),
        variants=tuple(_fractions_from_json(v) for v in data["variants"]),
        reviewed=data["reviewed"],
    )


def state_to_dict(state: SessionState) -> dict:
    """Snapshot without the audit log (the document stores events once)."""
    return {
        "phase": state.phase,
        "value_scale": None if state.value_scale is None else state.value_scale.to_json(),
        "label_index": state.label_index,
        "side": state.side,
        "probe_answers": list(state.probe_answers),
        "shapes": [shape.to_json() for shape in state.shapes],
        "current_chain": (
            None if state.current_chain is None else state.current_chain.to_json()
        ),
        "current_breakpoints": (
            None
            if state.current_breakpoints is None
            else _fractions_to_json(state.current_breakpoints)
        ),
        "current_values": (
            None
            if state.current_values is None
            else _fractions_to_json(state.current_values)
        ),
        "current_table": (
            None if state.current_table is None else state.current_table.to_json()
        ),
        "sides": {
            f"{index}:{side}": _side_to_json(record)
            for (index, side), record in sorted(state.sides.items())
        },
        "memberships": {
            label: mf.to_dict() for label, mf in sorted(state.memberships.items())
        },
    }


def state_from_dict(
    data: dict, config: SessionConfig, events: tuple[Event, ...]
) -> SessionState:
    sides = {}
    for key, record in data["sides"].items():
        index, _, side = key.partition(":")
        sides[(int(index), side)] = _side_from_json(record)
    return SessionState(
        config=config,
        phase=data["phase"],
        value_scale=(
            None
            if data["value_scale"] is None
            else ValueScale.from_json(data["value_scale"])
        ),
        label_index=data["label_index"],
        side=data["side"],
        probe_answers=tuple(data["probe_answers"]),
        shapes=tuple(CoreSupport.from_json(s) for s in data["shapes"]),
        current_chain=(
            None
            if data["current_chain"] is None
            else CardChain.from_json(data["current_chain"])
        ),
        current_breakpoints=(
            None
            if data["current_breakpoints"] is None
            else _fractions_from_json(data["current_breakpoints"])
        ),
        current_values=(
            None
            if data["current_values"] is None
            else _fractions_from_json(data["current_values"])
        ),
        current_table=(
            None
            if data["current_table"] is None
            else RatioTable.from_json(data["current_table"])
        ),
        sides=sides,
        memberships={
            label: IT2MF.from_dict(mf) for label, mf in data["memberships"].items()
        },
        audit_log=events,
    )


def save(doc: SessionDocument) -> bytes:
    """Canonical bytes: key-sorted compact JSON, UTF-8, no trailing newline."""
    payload = {
        "schema_version": doc.schema_version,
        "config": doc.config.to_json(),
        "events": [event.to_json() for event in doc.events],
        "snapshot": state_to_dict(doc.state),
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")


def load(data: bytes, verify: bool = True) -> SessionDocument:
    """Parse and, by default, prove the snapshot is the replay of the log."""
    try:
        payload = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as err:
        raise DocumentError(f"not valid UTF-8: {err.reason}", offset=err.start) from None
    except json.JSONDecodeError as err:
        raise DocumentError(f"malformed JSON: {err.msg}", offset=err.pos) from None
    if not isinstance(payload, dict):
        raise DocumentError("document is not a JSON object")
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise MigrationError(
            f"unsupported schema version {version!r}, this build reads {SCHEMA_VERSION}"
        )
    try:
        config = SessionConfig.from_json(payload["config"])
        events = tuple(Event.from_json(e) for e in payload["events"])
        state = state_from_dict(payload["snapshot"], config, events)
    except (KeyError, TypeError, AttributeError) as err:
        raise DocumentError(f"document field missing or malformed: {err!r}") from None
    if verify:
        replayed = replay_events(config, events)
        if replayed != state:
            raise DocumentError("snapshot does not match the replay of its event log")
    return SessionDocument(version, config, events, state)


def write_document(path: "str | Path", doc: SessionDocument) -> None:
    Path(path).write_bytes(save(doc))


def read_document(path: "str | Path", verify: bool = True) -> SessionDocument:
    return load(Path(path).read_bytes(), verify=verify)


def events_to_jsonl(events) -> str:
    """One compact event object per line, trailing newline included."""
    return "".join(
        json.dumps(event.to_json(), sort_keys=True, separators=(",", ":")) + "\n"
        for event in events
    )


def events_from_jsonl(text: str) -> tuple[Event, ...]:
    """Reads a log; a parse failure reports its absolute byte offset."""
    events = []
    offset = 0
    for line in text.splitlines(keepends=True):
        if line.strip():
            try:
                events.append(Event.from_json(json.loads(line)))
            except json.JSONDecodeError as err:
                raise DocumentError(
                    f"malformed event line: {err.msg}",
                    offset=offset + len(line[: err.pos].encode("utf-8")),
                ) from None
            except (KeyError, TypeError) as err:
                raise DocumentError(
                    f"event field missing or malformed: {err!r}", offset=offset
                ) from None
        offset += len(line.encode("utf-8"))
    return tuple(events)


def scale_knots_csv(scale: LinguisticScale) -> str:
    """Plot-ready knot table of every bound label's band, labels sorted."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["label", "component", "x", "membership"])
    for label in sorted(scale.memberships):
        mf = scale.memberships[label]
        for component, curve in (("lower", mf.lower), ("upper", mf.upper)):
            for x, degree in knots(curve):
                writer.writerow([label, component, repr(x), repr(degree)])
    return out.getvalue()
