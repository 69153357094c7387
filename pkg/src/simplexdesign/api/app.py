"""HTTP surface: a thin FastAPI adapter over the service functions."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from ..core import CapExceeded
from ..designfile import DesignFileError
from . import schemas, service


def create_app() -> FastAPI:
    app = FastAPI(title="simplexdesign", version="1.0.0")

    @app.exception_handler(DesignFileError)
    @app.exception_handler(ValueError)
    async def _bad_input(request: Request, exc: Exception):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(CapExceeded)
    async def _too_large(request: Request, exc: Exception):
        return JSONResponse(status_code=413, content={"detail": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/verify", response_model=schemas.VerifyResponse)
    async def verify(req: schemas.VerifyRequest):
        return service.run_verify(req)

    @app.post("/construct", response_model=schemas.ConstructResponse)
    async def construct(req: schemas.ConstructRequest):
        return service.run_construct(req)

    @app.get("/tables", response_model=schemas.TablesResponse)
    async def tables():
        return service.run_tables()

    @app.get("/counterexample", response_model=schemas.CounterexampleResponse)
    async def counterexample(tolerance: float = 1e-9):
        return service.run_counterexample(tolerance)

    @app.post("/span", response_model=schemas.SpanResponse)
    async def span(req: schemas.SpanRequest):
        return service.run_span(req)

    @app.post("/plot")
    async def plot(req: schemas.PlotRequest):
        svg = service.run_plot(req)
        return Response(content=svg, media_type="image/svg+xml")

    return app


app = create_app()
