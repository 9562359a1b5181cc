"""Event-sourced elicitation sessions for one linguistic scale.

A session walks the decision maker through every label of a scale: card
placement between labels fixes the scale values, a probe dialogue brackets
each label's core and support, card chains describe both flanks, ratio
tables get reviewed (and adjusted) until accepted, and hesitant chains fan
out into an interval type-2 envelope at assembly.

All state lives in an immutable ``SessionState``; the only way to move is
``session_transition(state, event)``, which returns a fresh state with the
event appended to the audit log.  Replaying the log from the initial state
therefore reproduces the final state field for field.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .cards import (
    CardChain,
    RatioTable,
    ValueScale,
    adjust_values,
    cards_from_values,
    enumerate_chains,
    label_values,
    normalize,
    parse_fraction,
    unnormalized_values,
)
from .coresupport import BoundaryDialogue, CoreSupport
from .errors import EnumerationCapError, ProtocolError, ValidationError
from .it2 import IT2MF, envelope_it2
from .mcdm import LinguisticScale
from .sides import assemble_t1, build_t1_side, default_breakpoints

PHASES = (
    "label_values",
    "core_support",
    "side_cards",
    "ratio_review",
    "adjusting",
    "side_done",
    "assembled",
)

# event type -> actor allowed to emit it
EVENT_ACTORS = {
    "place_label_cards": "dm",
    "answer_probe": "dm",
    "place_side_cards": "dm",
    "accept_ratios": "dm",
    "modify_ratios": "dm",
    "proceed": "analyst",
}

EXPECTED_EVENTS = {
    "label_values": ("place_label_cards",),
    "core_support": ("answer_probe",),
    "side_cards": ("place_side_cards",),
    "ratio_review": ("accept_ratios", "modify_ratios"),
    "adjusting": ("proceed",),
    "side_done": ("proceed",),
    "assembled": (),
}


@dataclass(frozen=True)
class Event:
    """One decision-maker or analyst action, self-stamped for replay."""

    type: str
    actor: str
    at: str = ""
    payload: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.type not in EVENT_ACTORS:
            raise ProtocolError(
                f"unknown event type {self.type!r}",
                phase=None,
                expected=tuple(sorted(EVENT_ACTORS)),
            )
        if self.actor != EVENT_ACTORS[self.type]:
            raise ProtocolError(
                f"event {self.type!r} must come from actor "
                f"{EVENT_ACTORS[self.type]!r}, got {self.actor!r}",
                phase=None,
                expected=(EVENT_ACTORS[self.type],),
            )

    def to_json(self) -> dict:
        data = {"type": self.type, "actor": self.actor, "at": self.at}
        if self.payload:
            data["payload"] = self.payload
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Event":
        return cls(
            type=data["type"],
            actor=data["actor"],
            at=data.get("at", ""),
            payload=data.get("payload", {}),
        )


@dataclass(frozen=True)
class SessionConfig:
    """Fixed parameters chosen before the dialogue starts."""

    labels: tuple[str, ...]
    scale_name: str = "scale"
    resolution: Fraction | None = None
    h_max: int = 50
    enumeration_cap: int = 10_000
    orientation: str = "ascending"

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ValidationError("a scale needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError("duplicate labels")
        if self.orientation not in ("ascending", "literal"):
            raise ValidationError(f"unknown orientation {self.orientation!r}")
        if self.h_max < 1:
            raise ValidationError(f"h_max must be positive, got {self.h_max}")
        if self.enumeration_cap < 1:
            raise ValidationError(
                f"enumeration cap must be positive, got {self.enumeration_cap}"
            )

    def to_json(self) -> dict:
        from .cards import format_fraction

        return {
            "labels": list(self.labels),
            "scale_name": self.scale_name,
            "resolution": (
                None if self.resolution is None else format_fraction(self.resolution)
            ),
            "h_max": self.h_max,
            "enumeration_cap": self.enumeration_cap,
            "orientation": self.orientation,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SessionConfig":
        resolution = data.get("resolution")
        return cls(
            labels=tuple(data["labels"]),
            scale_name=data.get("scale_name", "scale"),
            resolution=None if resolution is None else parse_fraction(resolution),
            h_max=data.get("h_max", 50),
            enumeration_cap=data.get("enumeration_cap", 10_000),
            orientation=data.get("orientation", "ascending"),
        )


@dataclass(frozen=True)
class SideRecord:
    """A finished flank: placement, domain positions, membership variants.

    An accepted (reviewed) side carries exactly one variant; a hesitant side
    carries one per enumerated chain.
    """

    chain: CardChain
    breakpoints: tuple[Fraction, ...]
    variants: tuple[tuple[Fraction, ...], ...]
    reviewed: bool


@dataclass(frozen=True)
class SessionState:
    config: SessionConfig
    phase: str = "label_values"
    value_scale: ValueScale | None = None
    label_index: int = 0
    side: str | None = None
    probe_answers: tuple[str, ...] = ()
    shapes: tuple[CoreSupport, ...] = ()
    current_chain: CardChain | None = None
    current_breakpoints: tuple[Fraction, ...] | None = None
    current_values: tuple[Fraction, ...] | None = None
    current_table: RatioTable | None = None
    sides: dict = field(default_factory=dict)
    memberships: dict = field(default_factory=dict)
    audit_log: tuple[Event, ...] = ()

    @property
    def label(self) -> str:
        return self.config.labels[self.label_index]


def initial_state(config: SessionConfig) -> SessionState:
    return SessionState(config=config)


def probe_dialogue(state: SessionState) -> BoundaryDialogue:
    """The boundary dialogue for the label under construction, replayed.

    The dialogue itself is mutable, so the state stores only the answer
    sequence and rebuilds on demand; at most a few dozen answers exist.
    """
    if state.value_scale is None:
        raise ProtocolError(
            "no value scale yet", phase=state.phase, expected=("place_label_cards",)
        )
    dialogue = BoundaryDialogue(
        domain=(Fraction(0), Fraction(1)),
        anchor=state.value_scale.value_of(state.label),
        resolution=state.config.resolution,
    )
    for answer in state.probe_answers:
        dialogue.answer(answer)
    return dialogue


def pending_probe(state: SessionState) -> Fraction | None:
    """Domain value the decision maker is currently asked about, if any."""
    if state.phase != "core_support":
        return None
    return probe_dialogue(state).pending


def _illegal(state: SessionState, event: Event) -> ProtocolError:
    expected = EXPECTED_EVENTS[state.phase]
    if not expected:
        message = f"session is complete; no {event.type!r} accepted"
    else:
        message = (
            f"event {event.type!r} is illegal in phase {state.phase!r}; "
            f"expected one of {sorted(expected)}"
        )
    return ProtocolError(message, phase=state.phase, expected=expected)


def _side_edges_equal(shape: CoreSupport, side: str) -> bool:
    if side == "left":
        return shape.support.lo == shape.core.lo
    return shape.support.hi == shape.core.hi


def _place_label_cards(state: SessionState, event: Event) -> SessionState:
    gaps = event.payload.get("gaps")
    if gaps is None:
        raise ValidationError("place_label_cards needs a 'gaps' list", field="gaps")
    scale = label_values(state.config.labels, gaps)
    return replace(
        state,
        phase="core_support",
        value_scale=scale,
        label_index=0,
        probe_answers=(),
    )


def _answer_probe(state: SessionState, event: Event) -> SessionState:
    answer = event.payload.get("answer")
    dialogue = probe_dialogue(state)
    dialogue.answer(answer)
    answers = state.probe_answers + (answer,)
    if not dialogue.done:
        return replace(state, probe_answers=answers)
    return replace(
        state,
        phase="side_cards",
        probe_answers=answers,
        shapes=state.shapes + (dialogue.result(),),
        side="left",
        current_chain=None,
        current_breakpoints=None,
        current_values=None,
        current_table=None,
    )


def _place_side_cards(state: SessionState, event: Event) -> SessionState:
    gaps = event.payload.get("gaps")
    if gaps is None:
        raise ValidationError("place_side_cards needs a 'gaps' list", field="gaps")
    items = event.payload.get("items")
    if items is None:
        items = [f"{state.label}/{state.side}/{i}" for i in range(len(gaps) + 1)]
    chain = CardChain.of(items, gaps)
    shape = state.shapes[state.label_index]
    raw = event.payload.get("breakpoints")
    if raw is None:
        breakpoints = tuple(default_breakpoints(len(chain.items), state.side, shape))
    else:
        breakpoints = tuple(parse_fraction(x) for x in raw)
    if chain.is_exact:
        values = tuple(unnormalized_values(chain))
        # validate placement against the shape now, not at accept time
        build_t1_side(normalize(values), breakpoints, state.side, shape)
        return replace(
            state,
            phase="ratio_review",
            current_chain=chain,
            current_breakpoints=breakpoints,
            current_values=values,
            current_table=RatioTable.from_values(values),
        )
    variants = tuple(
        tuple(normalize(unnormalized_values(c)))
        for c in enumerate_chains(chain, state.config.enumeration_cap)
    )
    build_t1_side(variants[0], breakpoints, state.side, shape)
    record = SideRecord(chain, breakpoints, variants, reviewed=False)
    return replace(
        state,
        phase="side_done",
        sides={**state.sides, (state.label_index, state.side): record},
        current_chain=None,
        current_breakpoints=None,
        current_values=None,
        current_table=None,
    )


def _accept_ratios(state: SessionState, event: Event) -> SessionState:
    memberships = tuple(normalize(state.current_values))
    record = SideRecord(
        chain=state.current_chain,
        breakpoints=state.current_breakpoints,
        variants=(memberships,),
        reviewed=True,
    )
    return replace(
        state,
        phase="side_done",
        sides={**state.sides, (state.label_index, state.side): record},
        current_chain=None,
        current_breakpoints=None,
        current_values=None,
        current_table=None,
    )


def _modify_ratios(state: SessionState, event: Event) -> SessionState:
    payload = event.payload
    try:
        s, r = int(payload["s"]), int(payload["r"])
        value = parse_fraction(payload["value"])
    except KeyError as missing:
        raise ValidationError(
            f"modify_ratios needs 's', 'r' and 'value', missing {missing}"
        ) from None
    if value < 1:
        raise ValidationError(
            f"ratio ({s}, {r}) of {value} is below 1, contradicting the "
            "ascending card placement",
            field="value",
        )
    table = state.current_table.with_modification(s, r, value)
    return replace(state, phase="adjusting", current_table=table)


def _adjust(state: SessionState, event: Event) -> SessionState:
    adjusted = adjust_values(state.current_table, state.config.orientation)
    chain = state.current_chain
    if all(a < b for a, b in zip(adjusted, adjusted[1:])):
        chain, _ = cards_from_values(
            adjusted, state.config.h_max, items=chain.items
        )
    return replace(
        state,
        phase="ratio_review",
        current_chain=chain,
        current_values=tuple(adjusted),
        current_table=RatioTable.from_values(adjusted),
    )


def _assemble_label(state: SessionState) -> SessionState:
    key_left = (state.label_index, "left")
    key_right = (state.label_index, "right")
    left, right = state.sides[key_left], state.sides[key_right]
    count = len(left.variants) * len(right.variants)
    if count > state.config.enumeration_cap:
        raise EnumerationCapError(
            f"joint flank enumeration yields {count} combinations, "
            f"cap is {state.config.enumeration_cap}",
            count=count,
            cap=state.config.enumeration_cap,
        )
    shape = state.shapes[state.label_index]
    family = []
    for lvec in left.variants:
        lfrag = build_t1_side(lvec, left.breakpoints, "left", shape)
        for rvec in right.variants:
            rfrag = build_t1_side(rvec, right.breakpoints, "right", shape)
            family.append(assemble_t1(shape, lfrag, rfrag))
    memberships = {**state.memberships, state.label: envelope_it2(family)}
    if state.label_index + 1 < len(state.config.labels):
        return replace(
            state,
            phase="core_support",
            memberships=memberships,
            label_index=state.label_index + 1,
            probe_answers=(),
            side=None,
        )
    return replace(state, phase="assembled", memberships=memberships, side=None)


def _proceed(state: SessionState, event: Event) -> SessionState:
    if state.phase == "adjusting":
        return _adjust(state, event)
    if state.side == "left":
        return replace(
            state,
            phase="side_cards",
            side="right",
            current_chain=None,
            current_breakpoints=None,
            current_values=None,
            current_table=None,
        )
    return _assemble_label(state)


_HANDLERS = {
    ("label_values", "place_label_cards"): _place_label_cards,
    ("core_support", "answer_probe"): _answer_probe,
    ("side_cards", "place_side_cards"): _place_side_cards,
    ("ratio_review", "accept_ratios"): _accept_ratios,
    ("ratio_review", "modify_ratios"): _modify_ratios,
    ("adjusting", "proceed"): _proceed,
    ("side_done", "proceed"): _proceed,
}


def session_transition(state: SessionState, event: Event) -> SessionState:
    """Apply one action; returns the next state with the event logged.

    Never mutates the input state.  Illegal events raise a protocol error
    naming the expected ones, and domain errors from the underlying pipeline
    propagate unchanged; in both cases the state stands as it was.
    """
    handler = _HANDLERS.get((state.phase, event.type))
    if handler is None:
        raise _illegal(state, event)
    moved = handler(state, event)
    return replace(moved, audit_log=state.audit_log + (event,))


def replay_events(config: SessionConfig, events: "list[Event] | tuple") -> SessionState:
    """Fold an event log from the initial state; the replay determinism hook."""
    state = initial_state(config)
    for event in events:
        state = session_transition(state, event)
    return state


def linguistic_scale(state: SessionState) -> LinguisticScale:
    """Scale snapshot from whatever labels are finished so far."""
    if state.value_scale is None:
        raise ProtocolError(
            "no scale values placed yet",
            phase=state.phase,
            expected=("place_label_cards",),
        )
    return LinguisticScale(
        name=state.config.scale_name,
        values=state.value_scale,
        memberships=dict(state.memberships),
    )
