"""Shared plumbing for HTTP inference adapters.

Every neural stage is reachable through a JSON-over-HTTP endpoint; the
reference implementations in each module are the deterministic stand-ins.
All remote calls share one timeout budget and one failure mapping.
"""

from __future__ import annotations

import logging

import httpx

from innerself.errors import AdapterUnavailable

logger = logging.getLogger(__name__)

# per-call budget for any external inference endpoint
ADAPTER_TIMEOUT_SECONDS = 10.0
DEFAULT_RETRY_AFTER = 30.0


def post_json(
    endpoint: str,
    *,
    json: dict | None = None,
    files: list | None = None,
    data: dict | None = None,
    timeout: float = ADAPTER_TIMEOUT_SECONDS,
) -> httpx.Response:
    """POST to an adapter endpoint, mapping transport failures.

    Timeouts, connection errors, and 5xx responses raise
    AdapterUnavailable carrying a retry_after hint (from the Retry-After
    response header when present).
    """
    try:
        response = httpx.post(
            endpoint, json=json, files=files, data=data, timeout=timeout
        )
    except httpx.TimeoutException as exc:
        raise AdapterUnavailable(
            f"adapter at {endpoint} timed out after {timeout} s",
            retry_after=DEFAULT_RETRY_AFTER,
        ) from exc
    except httpx.HTTPError as exc:
        raise AdapterUnavailable(
            f"adapter at {endpoint} unreachable: {exc}",
            retry_after=DEFAULT_RETRY_AFTER,
        ) from exc
    if response.status_code >= 500 or response.status_code == 429:
        retry_after = DEFAULT_RETRY_AFTER
        header = response.headers.get("retry-after")
        if header is not None:
            try:
                retry_after = float(header)
            except ValueError:
                pass
        raise AdapterUnavailable(
            f"adapter at {endpoint} returned {response.status_code}",
            retry_after=retry_after,
        )
    if response.status_code >= 400:
        raise AdapterUnavailable(
            f"adapter at {endpoint} rejected the request "
            f"({response.status_code}): {response.text[:200]}",
            retry_after=DEFAULT_RETRY_AFTER,
        )
    return response
