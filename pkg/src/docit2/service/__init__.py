"""HTTP API over sessions and fuzzy computation."""

from .app import SessionRegistry, UnknownSessionError, create_app

__all__ = ["SessionRegistry", "UnknownSessionError", "create_app"]
