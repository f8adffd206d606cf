"""HTTP service wrapping the core toolkit (FastAPI + pydantic schemas)."""

from .app import app

__all__ = ["app"]
