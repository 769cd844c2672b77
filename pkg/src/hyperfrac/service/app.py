"""FastAPI application exposing the exact-set operations.

Status mapping: malformed inputs (bad file text, unknown suite, bad rational)
are 400; resource-cap conditions (iteration cap, section level cap,
non-materializable exact values) are 409.  Verification failures are not
errors; they come back as ``all_passed = false``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import (
    IterationCapExceeded,
    LevelCapError,
    MaterializationError,
    ParseError,
    UnrepresentableError,
)
from . import ops
from .schemas import (
    AttractorRequest,
    AttractorResponse,
    CheckLineModel,
    ErrorResponse,
    HausdorffRequest,
    HausdorffResponse,
    ReduceRequest,
    ReduceResponse,
    RenderRequest,
    RenderResponse,
    VerifyRequest,
    VerifyResponse,
)

BAD_INPUT = 400
RESOURCE_CAP = 409

_ERROR_RESPONSES = {
    BAD_INPUT: {"model": ErrorResponse},
    RESOURCE_CAP: {"model": ErrorResponse},
}


def create_app() -> FastAPI:
    app = FastAPI(
        title="hyperfrac",
        description=(
            "Exact rational arithmetic on interval-union compact sets: "
            "attractors with error certificates, distorted section "
            "constructions, grid-set reductions, verification suites, and "
            "SVG rendering."
        ),
        version="0.1.0",
    )

    @app.exception_handler(ParseError)
    async def _parse_error(request: Request, exc: ParseError):
        return JSONResponse(status_code=BAD_INPUT, content={"detail": str(exc)})

    @app.exception_handler(UnrepresentableError)
    async def _unrepresentable(request: Request, exc: UnrepresentableError):
        return JSONResponse(status_code=BAD_INPUT, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=BAD_INPUT, content={"detail": str(exc)})

    @app.exception_handler(IterationCapExceeded)
    async def _cap(request: Request, exc: IterationCapExceeded):
        return JSONResponse(status_code=RESOURCE_CAP, content={"detail": str(exc)})

    @app.exception_handler(LevelCapError)
    async def _level_cap(request: Request, exc: LevelCapError):
        return JSONResponse(status_code=RESOURCE_CAP, content={"detail": str(exc)})

    @app.exception_handler(MaterializationError)
    async def _materialization(request: Request, exc: MaterializationError):
        return JSONResponse(status_code=RESOURCE_CAP, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/attractor", response_model=AttractorResponse, responses=_ERROR_RESPONSES)
    def attractor(request: AttractorRequest):
        outcome = ops.attractor_op(request.ifs_text, request.tolerance, request.cap)
        return AttractorResponse(
            cover_text=outcome.cover_text,
            iterations=outcome.iterations,
            error_bound=outcome.error_bound,
            certified=outcome.certified,
        )

    @app.post("/reduce", response_model=ReduceResponse, responses=_ERROR_RESPONSES)
    def reduce(request: ReduceRequest):
        outcome = ops.reduce_op(request.gridset_text, request.levels, request.depth)
        return ReduceResponse(
            cover_text=outcome.cover_text,
            plan_text=outcome.plan_text,
            x_lower=outcome.x_lower,
            x_upper=outcome.x_upper,
            resolution=outcome.resolution,
        )

    @app.post("/hausdorff", response_model=HausdorffResponse, responses=_ERROR_RESPONSES)
    def hausdorff(request: HausdorffRequest):
        outcome = ops.hausdorff_op(request.cover_a, request.cover_b)
        return HausdorffResponse(distance=outcome.distance, ideal_within=outcome.ideal_within)

    @app.post("/render", response_model=RenderResponse, responses=_ERROR_RESPONSES)
    def render(request: RenderRequest):
        outcome = ops.render_op(
            request.cover_text, request.height, request.width, request.embed_dim
        )
        return RenderResponse(svg=outcome.svg)

    @app.post("/verify", response_model=VerifyResponse, responses=_ERROR_RESPONSES)
    def verify(request: VerifyRequest):
        outcome = ops.verify_op(request.suite, request.options.model_dump())
        return VerifyResponse(
            lines=[
                CheckLineModel(name=line.name, passed=line.passed, detail=line.detail)
                for line in outcome.lines
            ],
            all_passed=outcome.all_passed,
        )

    return app


app = create_app()
