"""HTTP front end exposing the analysis operations.

Each endpoint accepts object documents in the same schema the CLI reads
from disk and returns the same report models, rendered through the shared
17-significant-digit JSON writer so service and CLI output are
byte-comparable.  Input violations map to 400, internal numerical failures
to 500, both with a structured error body naming the offending field.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from pydantic import BaseModel, ConfigDict, Field

from . import handlers, jsonio, schemas
from .errors import InvalidInputError, NumericalError

__all__ = ["app", "create_app"]


class _Req(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ValidateRequest(_Req):
    object: schemas.ObjectDoc


class ClassifyRequest(_Req):
    channel: schemas.ChannelDoc


class ActRequest(_Req):
    channel: schemas.ChannelDoc
    state: schemas.StateDoc | None = None
    observable: schemas.ObservableDoc | None = None


class WitnessRequest(_Req):
    channel: schemas.ChannelDoc


class JointRequest(_Req):
    observables: list[schemas.ObservableDoc] = Field(min_length=2, max_length=2)
    channel: schemas.ChannelDoc | None = None


class SteerRequest(_Req):
    state: schemas.StateDoc
    split: list[int] = Field(min_length=2, max_length=2)
    channel: schemas.ChannelDoc | None = None
    side: Literal["A", "B"] = "A"


class EprSweepRequest(_Req):
    channel: schemas.ChannelDoc
    r_grid: list[float] | None = None


class SampleRequest(_Req):
    state: schemas.StateDoc
    observable: schemas.ObservableDoc
    n: int = Field(ge=1)
    seed: int = 0


def _render(model: BaseModel, status_code: int = 200) -> Response:
    return Response(content=jsonio.dumps(model.model_dump()) + "\n",
                    media_type="application/json", status_code=status_code)


def _error_response(category: str, message: str, status_code: int,
                    field: str | None = None) -> Response:
    body = schemas.ErrorReport(
        error=schemas.ErrorBody(category=category, message=message, field=field))
    return _render(body, status_code=status_code)


def create_app() -> FastAPI:
    app = FastAPI(title="gaussbreak", version="1.0")

    @app.exception_handler(InvalidInputError)
    async def _invalid(request: Request, exc: InvalidInputError) -> Response:
        return _error_response("input", str(exc), 400)

    @app.exception_handler(NumericalError)
    async def _numerical(request: Request, exc: NumericalError) -> Response:
        return _error_response("numerical", str(exc), 500)

    @app.exception_handler(RequestValidationError)
    async def _request_invalid(request: Request,
                               exc: RequestValidationError) -> Response:
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", ())) or None
        return _error_response("input", first.get("msg", "invalid request"),
                               400, field=loc)

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok", "format_version": schemas.FORMAT_VERSION}

    @app.post("/validate")
    async def validate(req: ValidateRequest) -> Response:
        return _render(handlers.handle_validate(schemas.to_object(req.object)))

    @app.post("/classify")
    async def classify(req: ClassifyRequest) -> Response:
        return _render(handlers.handle_classify(schemas.to_object(req.channel)))

    @app.post("/act")
    async def act(req: ActRequest) -> Response:
        if (req.state is None) == (req.observable is None):
            raise InvalidInputError(
                "act: provide exactly one of 'state' or 'observable'")
        target = schemas.to_object(req.state if req.state is not None
                                   else req.observable)
        return _render(handlers.handle_act(schemas.to_object(req.channel), target))

    @app.post("/witness")
    async def witness(req: WitnessRequest) -> Response:
        return _render(handlers.handle_witness(schemas.to_object(req.channel)))

    @app.post("/joint")
    async def joint(req: JointRequest) -> Response:
        channel = None if req.channel is None else schemas.to_object(req.channel)
        return _render(handlers.handle_joint(schemas.to_object(req.observables[0]),
                                             schemas.to_object(req.observables[1]),
                                             channel=channel))

    @app.post("/steer")
    async def steer(req: SteerRequest) -> Response:
        channel = None if req.channel is None else schemas.to_object(req.channel)
        return _render(handlers.handle_steer(
            schemas.to_object(req.state), (req.split[0], req.split[1]),
            channel=channel, side=req.side))

    @app.post("/epr-sweep")
    async def epr_sweep(req: EprSweepRequest) -> Response:
        return _render(handlers.handle_epr_sweep(schemas.to_object(req.channel),
                                                 grid=req.r_grid))

    @app.post("/sample")
    async def do_sample(req: SampleRequest) -> Response:
        return _render(handlers.handle_sample(schemas.to_object(req.state),
                                              schemas.to_object(req.observable),
                                              req.n, req.seed))

    return app


app = create_app()
