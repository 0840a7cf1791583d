"""Plotting-function usage survey over a code-search HTTP API.

One query per function (pattern ``"<namespace>.<fn>("``), disk-cached by
query hash, with exponential backoff on rate limits. The CLI renders a
ranked report; counts are total code matches per query.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Optional

from .errors import RateLimited, TransportError

DEFAULT_API_URL = "https://api.github.com/search/code"
BACKOFF_SECONDS = (1.0, 2.0, 4.0)
RETRY_STATUSES = (403, 429)


@dataclass
class TransportResponse:
    status: int
    data: Any


Transport = Callable[[str], TransportResponse]


@dataclass
class SurveyRow:
    function: str
    match_count: int
    query: str


@dataclass
class SurveyResult:
    rows: list[SurveyRow] = field(default_factory=list)
    fetched_at: str = ""
    cache_hits: int = 0


def _cache_file(cache_dir: Path, query: str) -> Path:
    digest = hashlib.sha256(query.encode("utf-8")).hexdigest()[:24]
    return cache_dir / f"{digest}.json"


def _fetch_with_backoff(
    transport: Transport, query: str, sleep: Callable[[float], None]
) -> int:
    attempts = len(BACKOFF_SECONDS) + 1
    for attempt in range(attempts):
        try:
            response = transport(query)
        except Exception as e:
            raise TransportError(f"query {query!r}: {e}") from e
        if response.status == 200:
            try:
                return int(response.data["total_count"])
            except (KeyError, TypeError, ValueError) as e:
                raise TransportError(
                    f"query {query!r}: malformed response payload"
                ) from e
        if response.status in RETRY_STATUSES:
            if attempt < len(BACKOFF_SECONDS):
                sleep(BACKOFF_SECONDS[attempt])
                continue
            raise RateLimited(
                f"query {query!r}: still rate-limited after "
                f"{len(BACKOFF_SECONDS)} retries"
            )
        raise TransportError(f"query {query!r}: HTTP {response.status}")
    raise RateLimited(query)  # unreachable


def survey(
    functions: list[str],
    transport: Transport,
    cache_dir,
    namespace: str = "sc.pl",
    sleep: Callable[[float], None] = time.sleep,
) -> SurveyResult:
    """Query match counts for every function, using the cache when warm.

    Rows come back sorted by match_count descending, ties by name ascending.
    """
    if not functions:
        raise ValueError("functions must be non-empty")
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    rows: list[SurveyRow] = []
    cache_hits = 0
    for fn in functions:
        query = f'"{namespace}.{fn}("'
        cached = _cache_file(cache_dir, query)
        if cached.exists():
            payload = json.loads(cached.read_text(encoding="utf-8"))
            rows.append(SurveyRow(fn, int(payload["match_count"]), query))
            cache_hits += 1
            continue
        count = _fetch_with_backoff(transport, query, sleep)
        cached.write_text(
            json.dumps({"query": query, "match_count": count}), encoding="utf-8"
        )
        rows.append(SurveyRow(fn, count, query))
    rows.sort(key=lambda r: (-r.match_count, r.function))
    return SurveyResult(
        rows=rows,
        fetched_at=datetime.now(timezone.utc).isoformat(),
        cache_hits=cache_hits,
    )


def render_report(result: SurveyResult, format: str = "markdown") -> str:
    if format == "csv":
        lines = ["function,match_count"]
        lines += [f"{r.function},{r.match_count}" for r in result.rows]
    elif format == "markdown":
        lines = ["| function | match_count |", "| --- | --- |"]
        lines += [f"| {r.function} | {r.match_count} |" for r in result.rows]
    else:
        raise ValueError(f"unknown format {format!r}")
    return "\n".join(lines) + "\n"


# -- transports ---------------------------------------------------------------


def github_transport(
    api_url: str = DEFAULT_API_URL, token: Optional[str] = None
) -> Transport:
    """Live client; pass a token (or set SURVEY_API_TOKEN) to raise limits."""

    def call(query: str) -> TransportResponse:
        url = f"{api_url}?q={urllib.parse.quote(query)}"
        request = urllib.request.Request(url)
        request.add_header("Accept", "application/vnd.github+json")
        if token:
            request.add_header("Authorization", f"Bearer {token}")
        try:
            with urllib.request.urlopen(request, timeout=30) as response:
                return TransportResponse(
                    response.status, json.loads(response.read().decode("utf-8"))
                )
        except urllib.error.HTTPError as e:
            return TransportResponse(e.code, None)

    return call


def offline_transport() -> Transport:
    def call(query: str) -> TransportResponse:
        raise TransportError(
            f"no cached result for {query!r} and --live not given"
        )

    return call


# -- CLI -------------------------------------------------------------------------


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotmorph-survey",
        description="Rank plotting functions by code-search usage "
        "(counts are total matches per query).",
    )
    parser.add_argument(
        "--functions",
        required=True,
        help="comma-separated function names, e.g. dotplot,umap,violin",
    )
    parser.add_argument("--namespace", default="sc.pl")
    parser.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    parser.add_argument("--cache-dir", default=".plotmorph-survey-cache")
    parser.add_argument(
        "--live",
        action="store_true",
        help="query the live API (token via SURVEY_API_TOKEN); otherwise "
        "only cached results are used",
    )
    parser.add_argument("--api-url", default=DEFAULT_API_URL)
    args = parser.parse_args(argv)

    functions = [fn.strip() for fn in args.functions.split(",") if fn.strip()]
    if args.live:
        transport = github_transport(
            api_url=args.api_url, token=os.environ.get("SURVEY_API_TOKEN")
        )
    else:
        transport = offline_transport()
    try:
        result = survey(
            functions, transport, args.cache_dir, namespace=args.namespace
        )
    except (RateLimited, TransportError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(result, args.format))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
