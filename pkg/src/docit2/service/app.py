"""Session lifecycle and stateless computation over HTTP.

The server owns all session state; clients only post events.  A registry
lock guards the id map and one lock per session serializes its writers, so
concurrent posts apply in some total order and each response shows the
phase the next request will meet.
"""

from __future__ import annotations

import threading
import uuid

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ..cards import format_fraction, parse_fraction
from ..errors import (
    DocumentError,
    EnumerationCapError,
    InternalError,
    ProtocolError,
    ValidationError,
)
from ..fuzzy import knots
from ..it2 import IT2MF, it2_add, it2_scale, it2_weighted_average, ORDERS
from ..mcdm import DecisionProblem, rank, ranking_csv
from ..session import (
    EXPECTED_EVENTS,
    Event,
    SessionConfig,
    SessionState,
    initial_state,
    pending_probe,
    session_transition,
)
from ..session_io import SessionDocument, save
from .schemas import (
    AddRequest,
    CreateSessionRequest,
    EventRequest,
    MFResponse,
    OrderRequest,
    OrderResponse,
    RankRequest,
    RankResponse,
    RatioCell,
    ScaleRequest,
    SessionView,
    WeightedAverageRequest,
)


class UnknownSessionError(Exception):
    def __init__(self, session_id: str):
        super().__init__(f"no session {session_id!r}")
        self.session_id = session_id


class SessionRegistry:
    """id -> state, with per-session writer serialization."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._states: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}

    def create(self, state: SessionState) -> str:
        session_id = uuid.uuid4().hex
        with self._lock:
            self._states[session_id] = state
            self._locks[session_id] = threading.Lock()
        return session_id

    def get(self, session_id: str) -> SessionState:
        with self._lock:
            try:
                return self._states[session_id]
            except KeyError:
                raise UnknownSessionError(session_id) from None

    def apply(self, session_id: str, event: Event) -> SessionState:
        with self._lock:
            try:
                lock = self._locks[session_id]
            except KeyError:
                raise UnknownSessionError(session_id) from None
        with lock:
            state = session_transition(self.get(session_id), event)
            with self._lock:
                self._states[session_id] = state
            return state


def _mf_preview(mf: IT2MF) -> dict:
    return {
        "lower": [[x, m] for x, m in knots(mf.lower)],
        "upper": [[x, m] for x, m in knots(mf.upper)],
    }


def _table_cells(state: SessionState) -> list[RatioCell] | None:
    table = state.current_table
    if table is None:
        return None
    return [
        RatioCell(
            s=s,
            r=r,
            value=format_fraction(value),
            modified=(s, r) in table.modified,
        )
        for (s, r), value in sorted(table.entries.items())
    ]


def _view(session_id: str, state: SessionState) -> SessionView:
    probe = pending_probe(state)
    memberships = None
    if state.current_values is not None:
        top = state.current_values[-1]
        if top > 0:
            memberships = [format_fraction(v / top) for v in state.current_values]
    return SessionView(
        id=session_id,
        phase=state.phase,
        label=state.label if state.value_scale is not None else None,
        side=state.side,
        expected_events=list(EXPECTED_EVENTS[state.phase]),
        pending_probe=None if probe is None else format_fraction(probe),
        value_scale=None if state.value_scale is None else state.value_scale.to_json(),
        shapes=[shape.to_json() for shape in state.shapes],
        current_chain=(
            None if state.current_chain is None else state.current_chain.to_json()
        ),
        current_breakpoints=(
            None
            if state.current_breakpoints is None
            else [format_fraction(x) for x in state.current_breakpoints]
        ),
        current_table=_table_cells(state),
        current_memberships=memberships,
        previews={
            label: _mf_preview(mf) for label, mf in sorted(state.memberships.items())
        },
        audit_length=len(state.audit_log),
    )


def _it2_from_payload(payload) -> IT2MF:
    return IT2MF.from_dict({"lower": payload.lower, "upper": payload.upper})


def _it2_response(mf: IT2MF) -> MFResponse:
    data = mf.to_dict()
    return MFResponse(result={"lower": data["lower"], "upper": data["upper"]})


def create_app(default_enumeration_cap: int = 10_000) -> FastAPI:
    app = FastAPI(title="docit2", version="1.0")
    registry = SessionRegistry()

    @app.exception_handler(ProtocolError)
    async def _protocol_conflict(request: Request, exc: ProtocolError):
        return JSONResponse(
            status_code=409,
            content={
                "detail": str(exc),
                "phase": exc.phase,
                "expected": list(exc.expected or ()),
            },
        )

    @app.exception_handler(EnumerationCapError)
    async def _cap_exceeded(request: Request, exc: EnumerationCapError):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "count": exc.count, "cap": exc.cap},
        )

    @app.exception_handler(ValidationError)
    async def _invalid(request: Request, exc: ValidationError):
        content = {"detail": str(exc)}
        field = getattr(exc, "field", None)
        if field is not None:
            content["field"] = field
        return JSONResponse(status_code=422, content=content)

    @app.exception_handler(DocumentError)
    async def _bad_document(request: Request, exc: DocumentError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(InternalError)
    async def _internal(request: Request, exc: InternalError):
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.exception_handler(UnknownSessionError)
    async def _unknown_session(request: Request, exc: UnknownSessionError):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.post("/sessions", response_model=SessionView, status_code=201)
    def create_session(body: CreateSessionRequest) -> SessionView:
        config = SessionConfig(
            labels=tuple(body.labels),
            scale_name=body.scale_name,
            resolution=(
                None if body.resolution is None else parse_fraction(body.resolution)
            ),
            h_max=body.h_max,
            enumeration_cap=(
                default_enumeration_cap
                if body.enumeration_cap is None
                else body.enumeration_cap
            ),
            orientation=body.orientation,
        )
        state = initial_state(config)
        return _view(registry.create(state), state)

    @app.get("/sessions/{session_id}", response_model=SessionView)
    def get_session(session_id: str) -> SessionView:
        return _view(session_id, registry.get(session_id))

    @app.post("/sessions/{session_id}/events", response_model=SessionView)
    def post_event(session_id: str, body: EventRequest) -> SessionView:
        event = Event(
            type=body.type, actor=body.actor, at=body.at, payload=body.payload
        )
        return _view(session_id, registry.apply(session_id, event))

    @app.get("/sessions/{session_id}/export")
    def export_session(session_id: str) -> Response:
        blob = save(SessionDocument.of(registry.get(session_id)))
        return Response(content=blob, media_type="application/json")

    @app.post("/compute/add", response_model=MFResponse)
    def compute_add(body: AddRequest) -> MFResponse:
        return _it2_response(
            it2_add(_it2_from_payload(body.a), _it2_from_payload(body.b))
        )

    @app.post("/compute/scale", response_model=MFResponse)
    def compute_scale(body: ScaleRequest) -> MFResponse:
        return _it2_response(it2_scale(body.factor, _it2_from_payload(body.operand)))

    @app.post("/compute/wa", response_model=MFResponse)
    def compute_weighted_average(body: WeightedAverageRequest) -> MFResponse:
        operands = [_it2_from_payload(p) for p in body.operands]
        weights = [float(parse_fraction(w)) for w in body.weights]
        return _it2_response(it2_weighted_average(operands, weights))

    @app.post("/compute/order", response_model=OrderResponse)
    def compute_order(body: OrderRequest) -> OrderResponse:
        result = ORDERS[body.order](
            _it2_from_payload(body.a), _it2_from_payload(body.b)
        )
        return OrderResponse(order=body.order, result=result)

    @app.post("/compute/rank", response_model=RankResponse)
    def compute_rank(body: RankRequest) -> RankResponse:
        problem = DecisionProblem.from_dict(body.problem)
        ranking = rank(problem, body.order)
        return RankResponse(ranking=ranking.to_dict(), csv=ranking_csv(ranking))

    return app
