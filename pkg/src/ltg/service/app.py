"""HTTP+JSON surface over the challenge service.

Every client-visible failure is a 4xx whose body is
``{"error": <code>, "message": <human text>}``.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Header, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .store import ChallengeService, ServiceError, Unauthorized

ADMIN_TOKEN_ENV = "LTG_ADMIN_TOKEN"


class SubmissionIn(BaseModel):
    team: str
    prompt_id: str
    text: str


class RatingIn(BaseModel):
    assignment_id: str
    relevance: int
    consistency: int
    fluency: int
    coherence: int


class PhaseIn(BaseModel):
    phase: str


def create_app(
    service: ChallengeService,
    *,
    admin_token: str | None = None,
    ui_dir: str | None = None,
) -> FastAPI:
    """Assemble the API around one service instance."""
    if admin_token is None:
        admin_token = os.environ.get(ADMIN_TOKEN_ENV)
    app = FastAPI(title="LTG challenge service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ServiceError)
    async def service_error(_request: Request, exc: ServiceError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.http_status,
            content={"error": exc.code, "message": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(
        _request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": "ValidationError", "message": str(exc.errors())},
        )

    @app.exception_handler(StarletteHTTPException)
    async def http_error(
        _request: Request, exc: StarletteHTTPException
    ) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status_code,
            content={"error": "HTTPError", "message": str(exc.detail)},
        )

    @app.post("/api/submissions", status_code=201)
    def post_submission(body: SubmissionIn) -> dict:
        sub = service.submit(body.team, body.prompt_id, body.text)
        return sub.public_dict()

    @app.get("/api/submissions/{submission_id}")
    def get_submission(submission_id: str) -> dict:
        return service.get_submission(submission_id).public_dict()

    @app.get("/api/leaderboard")
    def get_leaderboard() -> list[dict]:
        return service.leaderboard()

    @app.get("/api/assignments/next")
    def get_next_assignment(judge: str) -> dict:
        return service.next_assignment(judge)

    @app.post("/api/ratings", status_code=201)
    def post_rating(body: RatingIn) -> dict:
        rating = service.record_rating(
            body.assignment_id,
            relevance=body.relevance,
            consistency=body.consistency,
            fluency=body.fluency,
            coherence=body.coherence,
        )
        return rating.public_dict()

    @app.get("/api/submissions/{submission_id}/human")
    def get_human_scores(submission_id: str) -> dict:
        return service.aggregate_human_scores(submission_id)

    @app.get("/api/phase")
    def get_phase() -> dict:
        return {"phase": service.phase}

    @app.post("/api/phase")
    def post_phase(
        body: PhaseIn, x_admin_token: str | None = Header(default=None)
    ) -> dict:
        if not admin_token or x_admin_token != admin_token:
            raise Unauthorized("valid X-Admin-Token header required")
        return {"phase": service.set_phase(body.phase)}

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
