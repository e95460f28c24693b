"""FastAPI application exposing the engine as a stateless compute service."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    CorpusFormatError,
    InconclusiveError,
    OpSyntaxError,
    WeylError,
    ZeroModuleError,
)
from . import api
from .models import (
    ApplyRequest,
    ApplyResponse,
    CheckRequest,
    CheckResponse,
    CompareRequest,
    CompareResponse,
    CorpusRequest,
    CorpusResponse,
    DimRequest,
    DimResponse,
    HealthResponse,
    NormalizeRequest,
    NormalizeResponse,
)

app = FastAPI(
    title="weyldim",
    version=__version__,
    description="Exact Weyl-algebra computations: normal forms, Hilbert dimensions, identity checks.",
)


def _error_tag(exc: Exception) -> str:
    if isinstance(exc, OpSyntaxError):
        return "parse_error"
    if isinstance(exc, CorpusFormatError):
        return "corpus_error"
    if isinstance(exc, ZeroModuleError):
        return "zero_module"
    if isinstance(exc, InconclusiveError):
        return "inconclusive"
    return "usage_error"


@app.exception_handler(WeylError)
async def weyl_error_handler(_request: Request, exc: WeylError):
    return JSONResponse(status_code=422, content={"error": _error_tag(exc), "message": str(exc)})


@app.exception_handler(ValueError)
async def value_error_handler(_request: Request, exc: ValueError):
    return JSONResponse(status_code=422, content={"error": "usage_error", "message": str(exc)})


@app.get("/v1/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/v1/normalize", response_model=NormalizeResponse)
def normalize(req: NormalizeRequest) -> NormalizeResponse:
    return api.do_normalize(req)


@app.post("/v1/apply", response_model=ApplyResponse)
def apply_op(req: ApplyRequest) -> ApplyResponse:
    return api.do_apply(req)


@app.post("/v1/dim", response_model=DimResponse)
def dim(req: DimRequest) -> DimResponse:
    return api.do_dim(req)


@app.post("/v1/check", response_model=CheckResponse)
def check(req: CheckRequest) -> CheckResponse:
    return api.do_check(req)


@app.post("/v1/compare", response_model=CompareResponse)
def compare(req: CompareRequest) -> CompareResponse:
    return api.do_compare(req)


@app.post("/v1/corpus", response_model=CorpusResponse)
def corpus(req: CorpusRequest) -> CorpusResponse:
    return api.do_corpus(req)
