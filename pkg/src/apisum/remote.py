"""Live REST source: page through questions by tag and date, then answers.

Speaks the Stack Exchange v2.x wire shape: ``questions`` and
``questions/{ids}/answers`` routes, ``tagged``/``fromdate``/``todate``/
``filter=withbody`` query parameters, gzip JSON responses, and the
``backoff`` / ``quota_remaining`` response fields.
"""

from __future__ import annotations

import time
from datetime import datetime, timezone
from typing import Iterator

import requests

from .errors import HttpError, QuotaExhausted
from .ingest import ANSWER, QUESTION, IngestConfig, RawPost

PAGE_SIZE = 100
IDS_PER_ANSWER_CALL = 100  # the vectorized answers route caps ids per call


class _Session:
    """One fetch run: retry budget, backoff bookkeeping, quota tracking."""

    def __init__(self, endpoint, max_retries=3, retry_delay=0.5, sleep=time.sleep):
        self.endpoint = endpoint.rstrip("/")
        self.max_retries = max_retries
        self.retry_delay = retry_delay
        self.sleep = sleep
        self.http = requests.Session()
        self._pending_backoff = 0
        self._quota_remaining = None

    def get(self, route, params) -> dict:
        if self._quota_remaining == 0:
            raise QuotaExhausted("remote quota exhausted")
        if self._pending_backoff:
            self.sleep(self._pending_backoff)
            self._pending_backoff = 0

        url = f"{self.endpoint}/{route}"
        delay = self.retry_delay
        last_status = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                self.sleep(delay)
                delay *= 2
            try:
                resp = self.http.get(url, params=params, timeout=30)
            except requests.RequestException:
                last_status = 0
                continue
            last_status = resp.status_code
            if resp.status_code == 200:
                payload = resp.json()
                self._pending_backoff = payload.get("backoff", 0)
                if "quota_remaining" in payload:
                    self._quota_remaining = payload["quota_remaining"]
                return payload
        raise HttpError(last_status, url)


def _epoch(dt: datetime) -> int:
    return int(dt.timestamp())


def _question_from_item(item: dict) -> RawPost:
    return RawPost(
        id=item["question_id"],
        post_type=QUESTION,
        score=item["score"],
        title=item.get("title"),
        body_html=item.get("body", ""),
        tags=tuple(t.lower() for t in item.get("tags", [])),
        creation_date=datetime.fromtimestamp(item["creation_date"], tz=timezone.utc),
    )


def _answer_from_item(item: dict) -> RawPost:
    return RawPost(
        id=item["answer_id"],
        post_type=ANSWER,
        parent_id=item["question_id"],
        score=item["score"],
        body_html=item.get("body", ""),
        creation_date=datetime.fromtimestamp(item["creation_date"], tz=timezone.utc),
    )


def _paged(session: _Session, route: str, params: dict) -> Iterator[dict]:
    page = 1
    while True:
        payload = session.get(route, dict(params, page=page, pagesize=PAGE_SIZE))
        yield from payload.get("items", [])
        if not payload.get("has_more"):
            return
        page += 1


def fetch_remote(
    cfg: IngestConfig,
    endpoint: str,
    max_retries: int = 3,
    retry_delay: float = 0.5,
    sleep=time.sleep,
) -> Iterator[RawPost]:
    """Yield tagged in-window questions followed by all their answers.

    Server ``backoff`` directives are honored by sleeping the indicated
    number of seconds before the next request.  Raises :class:`HttpError`
    once the retry budget is spent and :class:`QuotaExhausted` when another
    request is needed after the reported quota reaches zero.
    """
    session = _Session(endpoint, max_retries=max_retries,
                       retry_delay=retry_delay, sleep=sleep)
    question_params = {
        "tagged": cfg.tag,
        "fromdate": _epoch(cfg.date_from),
        "todate": _epoch(cfg.date_to),
        "filter": "withbody",
    }
    question_ids: list[int] = []
    for item in _paged(session, "questions", question_params):
        question_ids.append(item["question_id"])
        yield _question_from_item(item)

    for start in range(0, len(question_ids), IDS_PER_ANSWER_CALL):
        chunk = question_ids[start:start + IDS_PER_ANSWER_CALL]
        ids = ";".join(str(i) for i in chunk)
        for item in _paged(session, f"questions/{ids}/answers",
                           {"filter": "withbody"}):
            yield _answer_from_item(item)
