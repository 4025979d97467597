#!/usr/bin/env python3
"""Write the service's OpenAPI document to docs/openapi.json.

The live service serves the same document at GET /v1/openapi; this copy
is committed so integrators can generate clients without running the
server. Re-run after changing routes.
"""

from __future__ import annotations

import json
from pathlib import Path

from innerself.service.api import create_app
from innerself.service.config import ServiceConfig


def main() -> None:
    app = create_app(ServiceConfig(data_dir="/tmp/innerself-openapi", webapp_dir=None))
    document = app.openapi()
    out = Path(__file__).resolve().parents[1] / "docs" / "openapi.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(document['paths'])} paths)")


if __name__ == "__main__":
    main()
