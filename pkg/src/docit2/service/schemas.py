"""Request and response bodies for the HTTP API.

Fuzzy sets travel as their dict form ({"levels": [...], "cuts": {...}} per
component); deep numeric validation stays in the domain layer, which maps
onto 422 responses through the error handlers.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class CreateSessionRequest(BaseModel):
    labels: list[str] = Field(min_length=2)
    scale_name: str = "scale"
    resolution: str | int | float | None = None
    h_max: int = Field(default=50, ge=1)
    enumeration_cap: int | None = Field(default=None, ge=1)
    orientation: Literal["ascending", "literal"] = "ascending"


class EventRequest(BaseModel):
    type: str
    actor: str
    at: str = ""
    payload: dict = Field(default_factory=dict)


class RatioCell(BaseModel):
    s: int
    r: int
    value: str
    modified: bool


class SessionView(BaseModel):
    """Pure projection of one session's state for clients."""

    id: str
    phase: str
    label: str | None
    side: str | None
    expected_events: list[str]
    pending_probe: str | None
    value_scale: dict | None
    shapes: list[dict]
    current_chain: dict | None
    current_breakpoints: list[str] | None
    current_table: list[RatioCell] | None
    current_memberships: list[str] | None
    previews: dict[str, dict]
    audit_length: int


class IT2Payload(BaseModel):
    lower: dict
    upper: dict


class AddRequest(BaseModel):
    a: IT2Payload
    b: IT2Payload


class ScaleRequest(BaseModel):
    factor: float
    operand: IT2Payload


class WeightedAverageRequest(BaseModel):
    operands: list[IT2Payload] = Field(min_length=1)
    weights: list[str | int | float] = Field(min_length=1)


class MFResponse(BaseModel):
    result: IT2Payload


class OrderRequest(BaseModel):
    a: IT2Payload
    b: IT2Payload
    order: Literal["order_1", "order_2"]


class OrderResponse(BaseModel):
    order: Literal["order_1", "order_2"]
    result: Literal[-1, 0, 1]


class RankRequest(BaseModel):
    problem: dict
    order: Literal["order_1", "order_2"]


class RankResponse(BaseModel):
    ranking: dict
    csv: str
