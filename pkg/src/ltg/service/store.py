"""Challenge workflow state: submissions, ratings, phases.

All mutations append one JSON object per event (submission, assignment,
rating, phase change) to a newline-delimited log and then update the
in-memory state; restarting rebuilds identical state by replaying the
log. Submission events carry the already-computed score, so a replay
never re-runs the metric.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable

from ..embeddings import EmbeddingTable, tokenize
from ..errors import MetricError
from ..lawfit import AnalysisConfig, analyze_text

PHASES = ("registration", "leaderboard", "human_eval", "complete")

RATING_DIMENSIONS = ("relevance", "consistency", "fluency", "coherence")

#: A submission is done being judged once this many distinct judges rated it.
RATINGS_PER_SUBMISSION = 5

DEFAULT_MIN_TOKENS = 40_000
DEFAULT_MAX_TOKENS = 2_000_000


class ServiceError(Exception):
    """Base for request-level failures; ``code`` is the wire error string."""

    http_status = 400

    @property
    def code(self) -> str:
        return type(self).__name__


class WrongPhase(ServiceError):
    http_status = 409


class UnknownPrompt(ServiceError):
    http_status = 404


class PromptPrefixMismatch(ServiceError):
    http_status = 422


class TooShort(ServiceError):
    http_status = 422


class TooLong(ServiceError):
    http_status = 422


class ScoreOutOfRange(ServiceError):
    http_status = 422


class DuplicateRating(ServiceError):
    http_status = 409


class UnknownAssignment(ServiceError):
    http_status = 404


class UnknownSubmission(ServiceError):
    http_status = 404


class NoWorkAvailable(ServiceError):
    http_status = 404


class NoRatings(ServiceError):
    http_status = 404


class InvalidPhase(ServiceError):
    http_status = 422


class Unauthorized(ServiceError):
    http_status = 401


def normalize_whitespace(text: str) -> str:
    """Collapse all whitespace runs to single spaces (for prefix checks)."""
    return " ".join(text.split())


@dataclass(frozen=True)
class Prompt:
    id: str
    text: str
    reference_text: str | None = None


def load_prompts(path: str | Path) -> list[Prompt]:
    """Read the registered prompts from a JSON array of objects."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        Prompt(p["id"], p["text"], p.get("reference_text")) for p in raw
    ]


@dataclass
class Submission:
    id: str
    team: str
    prompt_id: str
    text: str
    token_count: int
    received_at: str
    status: str  # "scored" | "error"
    report: dict | None = None
    error: str | None = None

    def public_dict(self) -> dict:
        return {
            "id": self.id,
            "team": self.team,
            "prompt_id": self.prompt_id,
            "text": self.text,
            "token_count": self.token_count,
            "received_at": self.received_at,
            "status": self.status,
            "report": self.report,
            "error": self.error,
        }


@dataclass
class Assignment:
    id: str
    submission_id: str
    judge_id: str
    open: bool = True


@dataclass
class Rating:
    id: str
    assignment_id: str
    submission_id: str
    judge_id: str
    scores: dict[str, int]
    submitted_at: str

    def public_dict(self) -> dict:
        return {
            "id": self.id,
            "assignment_id": self.assignment_id,
            "submission_id": self.submission_id,
            "judge_id": self.judge_id,
            **self.scores,
            "submitted_at": self.submitted_at,
        }


@dataclass
class _State:
    """Pure event-application target; no IO, no clocks."""

    phase: str = PHASES[0]
    submissions: dict[str, Submission] = field(default_factory=dict)
    assignments: dict[str, Assignment] = field(default_factory=dict)
    ratings: dict[str, list[Rating]] = field(default_factory=dict)
    assigned_pairs: set[tuple[str, str]] = field(default_factory=set)
    counters: dict[str, int] = field(default_factory=lambda: {"sub": 0, "asg": 0, "rat": 0})

    def apply(self, event: dict) -> None:
        kind = event["type"]
        if kind == "submission":
            sub = Submission(**{k: v for k, v in event.items() if k != "type"})
            self.submissions[sub.id] = sub
            self.counters["sub"] += 1
        elif kind == "assignment":
            asg = Assignment(event["id"], event["submission_id"], event["judge_id"])
            self.assignments[asg.id] = asg
            self.assigned_pairs.add((asg.submission_id, asg.judge_id))
            self.counters["asg"] += 1
        elif kind == "rating":
            rating = Rating(
                id=event["id"],
                assignment_id=event["assignment_id"],
                submission_id=event["submission_id"],
                judge_id=event["judge_id"],
                scores={d: event[d] for d in RATING_DIMENSIONS},
                submitted_at=event["submitted_at"],
            )
            self.ratings.setdefault(rating.submission_id, []).append(rating)
            self.assignments[rating.assignment_id].open = False
            self.counters["rat"] += 1
        elif kind == "phase":
            self.phase = event["phase"]
        else:
            raise ValueError(f"unknown event type {kind!r}")

    def rating_count(self, submission_id: str) -> int:
        return len(self.ratings.get(submission_id, ()))


class EventLog:
    """Append-only newline-delimited JSON file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.touch(exist_ok=True)

    def replay(self) -> Iterable[dict]:
        with self.path.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield json.loads(line)

    def append(self, event: dict) -> None:
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


class ChallengeService:
    """The challenge backend: submission scoring, leaderboard, human eval.

    Mutations are serialized through one lock (which also serializes
    scoring); reads take the same lock briefly to snapshot. One
    embedding table is shared by all scoring runs.
    """

    def __init__(
        self,
        log_path: str | Path,
        *,
        prompts: Iterable[Prompt],
        table: EmbeddingTable,
        min_tokens: int = DEFAULT_MIN_TOKENS,
        max_tokens: int = DEFAULT_MAX_TOKENS,
        config: AnalysisConfig | None = None,
        clock=_utcnow,
    ):
        self._lock = threading.Lock()
        self._log = EventLog(log_path)
        self._state = _State()
        self._prompts = {p.id: p for p in prompts}
        self._prompt_prefixes = {
            p.id: normalize_whitespace(p.text) for p in self._prompts.values()
        }
        self._table = table
        self._min_tokens = min_tokens
        self._max_tokens = max_tokens
        self._config = config or AnalysisConfig()
        self._clock = clock
        for event in self._log.replay():
            self._state.apply(event)

    def _commit(self, event: dict) -> None:
        self._log.append(event)
        self._state.apply(event)

    # -- phases ---------------------------------------------------------

    @property
    def phase(self) -> str:
        return self._state.phase

    def set_phase(self, target: str) -> str:
        with self._lock:
            if target not in PHASES:
                raise InvalidPhase(f"unknown phase {target!r}")
            if PHASES.index(target) <= PHASES.index(self._state.phase):
                raise WrongPhase(
                    f"phase can only advance; currently {self._state.phase!r}"
                )
            self._commit({"type": "phase", "phase": target})
            return self._state.phase

    def _require_phase(self, *allowed: str) -> None:
        if self._state.phase not in allowed:
            raise WrongPhase(
                f"operation requires phase {' or '.join(allowed)!s}, "
                f"currently {self._state.phase!r}"
            )

    # -- submissions ------------------------------------------------------

    def submit(self, team: str, prompt_id: str, text: str) -> Submission:
        with self._lock:
            self._require_phase("leaderboard")
            prompt = self._prompts.get(prompt_id)
            if prompt is None:
                raise UnknownPrompt(f"prompt {prompt_id!r} is not registered")
            if not normalize_whitespace(text).startswith(self._prompt_prefixes[prompt_id]):
                raise PromptPrefixMismatch(
                    "submission must start with the registered prompt text"
                )
            token_count = len(tokenize(text))
            if token_count < self._min_tokens:
                raise TooShort(
                    f"{token_count} tokens; submissions need >= {self._min_tokens}"
                )
            if token_count > self._max_tokens:
                raise TooLong(
                    f"{token_count} tokens; submissions are capped at {self._max_tokens}"
                )
            status, report, error = "scored", None, None
            try:
                report = analyze_text(text, self._table, self._config).to_dict()
            except MetricError as exc:
                status, error = "error", f"{exc.code}: {exc}"
            sub_id = f"sub-{self._state.counters['sub'] + 1}"
            self._commit(
                {
                    "type": "submission",
                    "id": sub_id,
                    "team": team,
                    "prompt_id": prompt_id,
                    "text": text,
                    "token_count": token_count,
                    "received_at": self._clock(),
                    "status": status,
                    "report": report,
                    "error": error,
                }
            )
            return self._state.submissions[sub_id]

    def get_submission(self, submission_id: str) -> Submission:
        with self._lock:
            sub = self._state.submissions.get(submission_id)
            if sub is None:
                raise UnknownSubmission(f"no submission {submission_id!r}")
            return sub

    # -- leaderboard ------------------------------------------------------

    def leaderboard(self) -> list[dict]:
        """One entry per team (its best submission), most structured first."""
        with self._lock:
            self._require_phase("leaderboard", "human_eval", "complete")
            best: dict[str, tuple] = {}
            for sub in self._state.submissions.values():
                if sub.status != "scored":
                    continue
                key = (sub.report["gapelmaper"], sub.received_at, sub.id)
                if sub.team not in best or key < best[sub.team][0]:
                    best[sub.team] = (key, sub)
            ranked = sorted(best.values(), key=lambda pair: pair[0])
            return [
                {
                    "team": sub.team,
                    "submission_id": sub.id,
                    "gapelmaper": sub.report["gapelmaper"],
                    "received_at": sub.received_at,
                }
                for _, sub in ranked
            ]

    # -- human evaluation -------------------------------------------------

    def next_assignment(self, judge_id: str) -> dict:
        """The least-rated submission this judge has not seen yet.

        Re-issuing is idempotent: while the judge has an unrated
        assignment open, that same assignment is returned.
        """
        with self._lock:
            self._require_phase("human_eval")
            for asg in self._state.assignments.values():
                if asg.open and asg.judge_id == judge_id:
                    return self._assignment_payload(asg)
            candidates = [
                sub
                for sub in self._state.submissions.values()
                if (sub.id, judge_id) not in self._state.assigned_pairs
                and self._state.rating_count(sub.id) < RATINGS_PER_SUBMISSION
            ]
            if not candidates:
                raise NoWorkAvailable(f"nothing left to rate for judge {judge_id!r}")
            sub = min(
                candidates,
                key=lambda s: (self._state.rating_count(s.id), s.received_at, s.id),
            )
            asg_id = f"asg-{self._state.counters['asg'] + 1}"
            self._commit(
                {
                    "type": "assignment",
                    "id": asg_id,
                    "submission_id": sub.id,
                    "judge_id": judge_id,
                }
            )
            return self._assignment_payload(self._state.assignments[asg_id])

    def _assignment_payload(self, asg: Assignment) -> dict:
        sub = self._state.submissions[asg.submission_id]
        prompt = self._prompts.get(sub.prompt_id)
        return {
            "assignment_id": asg.id,
            "submission_id": sub.id,
            "text": sub.text,
            "reference_text": prompt.reference_text if prompt else None,
        }

    def record_rating(self, assignment_id: str, **scores: int) -> Rating:
        with self._lock:
            self._require_phase("human_eval")
            missing = [d for d in RATING_DIMENSIONS if d not in scores]
            extra = [d for d in scores if d not in RATING_DIMENSIONS]
            if missing or extra:
                raise ScoreOutOfRange(
                    f"ratings need exactly the dimensions {RATING_DIMENSIONS}"
                )
            for dim in RATING_DIMENSIONS:
                value = scores[dim]
                if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
                    raise ScoreOutOfRange(
                        f"{dim} must be an integer in 1..5, got {value!r}"
                    )
            asg = self._state.assignments.get(assignment_id)
            if asg is None:
                raise UnknownAssignment(f"no assignment {assignment_id!r}")
            if not asg.open:
                raise DuplicateRating(f"assignment {assignment_id!r} was already rated")
            rat_id = f"rat-{self._state.counters['rat'] + 1}"
            self._commit(
                {
                    "type": "rating",
                    "id": rat_id,
                    "assignment_id": assignment_id,
                    "submission_id": asg.submission_id,
                    "judge_id": asg.judge_id,
                    **{d: scores[d] for d in RATING_DIMENSIONS},
                    "submitted_at": self._clock(),
                }
            )
            ratings = self._state.ratings[asg.submission_id]
            return ratings[-1]

    def aggregate_human_scores(self, submission_id: str) -> dict:
        """Arithmetic mean per dimension over this submission's judges."""
        with self._lock:
            if submission_id not in self._state.submissions:
                raise UnknownSubmission(f"no submission {submission_id!r}")
            ratings = self._state.ratings.get(submission_id)
            if not ratings:
                raise NoRatings(f"submission {submission_id!r} has no ratings yet")
            n = len(ratings)
            out: dict = {"submission_id": submission_id}
            for dim in RATING_DIMENSIONS:
                out[f"{dim}_mean"] = sum(r.scores[dim] for r in ratings) / n
            out["n_judges"] = n
            out["complete"] = n >= RATINGS_PER_SUBMISSION
            return out
