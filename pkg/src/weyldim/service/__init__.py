"""HTTP face of the engine: pydantic models, pure handlers, FastAPI app."""
