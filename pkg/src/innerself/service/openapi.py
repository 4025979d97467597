"""Response schemas for the served OpenAPI document.

FastAPI only sees ``dict`` returns from the route handlers, so on its own
it would publish empty response schemas. The webapp runs contract tests
against this document; it has to describe the real payloads. Everything
here is additive metadata, the handlers are untouched.
"""

from __future__ import annotations

from innerself.emotion.classify import EmotionLabel

LABELS = [label.value for label in EmotionLabel]

_EMOTION = {
    "type": "object",
    "required": ["probabilities", "dominant", "confidence", "logits"],
    "additionalProperties": False,
    "properties": {
        "probabilities": {
            "type": "object",
            "required": LABELS,
            "additionalProperties": False,
            "properties": {label: {"type": "number"} for label in LABELS},
        },
        "dominant": {"type": "string", "enum": LABELS},
        "confidence": {"type": "number"},
        "logits": {"type": "array", "items": {"type": "number"}},
    },
}

_STRATEGY = {
    "type": "object",
    "required": ["id", "step"],
    "additionalProperties": False,
    "properties": {
        "id": {"type": "string"},
        "step": {"type": "integer", "minimum": 0},
    },
}

_PROSODY = {
    "type": "object",
    "required": ["pitch_shift", "volume_gain", "rate"],
    "additionalProperties": False,
    "properties": {
        "pitch_shift": {"type": "number"},
        "volume_gain": {"type": "number"},
        "rate": {"type": "number"},
    },
}

_SESSION_INFO = {
    "type": "object",
    "required": [
        "session_id",
        "user_name",
        "alpha",
        "created_at",
        "enrolled",
        "turn_count",
        "open_plans",
    ],
    "additionalProperties": False,
    "properties": {
        "session_id": {"type": "string"},
        "user_name": {"type": "string"},
        "alpha": {"type": "integer", "minimum": 1},
        "created_at": {"type": "string"},
        "enrolled": {"type": "boolean"},
        "turn_count": {"type": "integer", "minimum": 0},
        "open_plans": {"type": "array", "items": {"type": "object"}},
    },
}

_TURN_OUTCOME = {
    "type": "object",
    "required": [
        "turn_index",
        "timestamp",
        "transcript",
        "emotion",
        "strategy",
        "response_text",
        "prosody",
        "constraint_report",
        "used_fallback",
        "response_audio_ref",
        "latency_ms",
    ],
    "additionalProperties": False,
    "properties": {
        "turn_index": {"type": "integer", "minimum": 0},
        "timestamp": {"type": "string"},
        "transcript": {"type": "string"},
        "emotion": {"$ref": "#/components/schemas/Emotion"},
        "strategy": {"$ref": "#/components/schemas/Strategy"},
        "response_text": {"type": "string"},
        "prosody": {"$ref": "#/components/schemas/Prosody"},
        "constraint_report": {
            "type": "object",
            "additionalProperties": {"type": "boolean"},
        },
        "used_fallback": {"type": "boolean"},
        "response_audio_ref": {"type": ["string", "null"]},
        "latency_ms": {
            "type": "object",
            "additionalProperties": {"type": "number"},
        },
    },
}

# history rows: user rows carry emotion, system rows carry strategy,
# prosody and the audio ref
_TURN_RECORD = {
    "type": "object",
    "required": ["session_id", "turn_index", "role", "text", "timestamp"],
    "properties": {
        "session_id": {"type": "string"},
        "turn_index": {"type": "integer", "minimum": 0},
        "role": {"type": "string", "enum": ["user", "system"]},
        "text": {"type": "string"},
        "timestamp": {"type": "string"},
        "emotion": {"$ref": "#/components/schemas/Emotion"},
        "strategy": {"$ref": "#/components/schemas/Strategy"},
        "prosody": {"$ref": "#/components/schemas/Prosody"},
        "audio_ref": {"type": ["string", "null"]},
    },
}

_HISTORY_DOCUMENT = {
    "type": "object",
    "required": ["session_id", "turns"],
    "additionalProperties": False,
    "properties": {
        "session_id": {"type": "string"},
        "turns": {
            "type": "array",
            "items": {"$ref": "#/components/schemas/TurnRecord"},
        },
    },
}

_TRAJECTORY_POINT = {
    "type": "object",
    "required": ["turn_index", "timestamp", "text", "emotion"],
    "additionalProperties": False,
    "properties": {
        "turn_index": {"type": "integer", "minimum": 0},
        "timestamp": {"type": "string"},
        "text": {"type": "string"},
        "emotion": {"$ref": "#/components/schemas/Emotion"},
    },
}

_TRAJECTORY_DOCUMENT = {
    "type": "object",
    "required": ["session_id", "trajectory"],
    "additionalProperties": False,
    "properties": {
        "session_id": {"type": "string"},
        "trajectory": {
            "type": "array",
            "items": {"$ref": "#/components/schemas/TrajectoryPoint"},
        },
    },
}

_EXPORT_DOCUMENT = {
    "type": "object",
    "required": ["schema", "session", "turns", "trajectory", "plans"],
    "properties": {
        "schema": {"type": "string"},
        "session": {"type": "object"},
        "turns": {
            "type": "array",
            "items": {"$ref": "#/components/schemas/TurnRecord"},
        },
        "trajectory": {
            "type": "array",
            "items": {"$ref": "#/components/schemas/TrajectoryPoint"},
        },
        "plans": {"type": "array", "items": {"type": "object"}},
    },
}

_ENROLL_RESULT = {
    "type": "object",
    "required": ["profile", "warnings"],
    "additionalProperties": False,
    "properties": {
        "profile": {
            "type": "object",
            "required": ["sample_count", "created_at", "embedding_dim"],
            "additionalProperties": False,
            "properties": {
                "sample_count": {"type": "integer", "minimum": 1},
                "created_at": {"type": "string"},
                "embedding_dim": {"type": "integer", "minimum": 1},
            },
        },
        "warnings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "code"],
                "additionalProperties": False,
                "properties": {
                    "index": {"type": "integer", "minimum": 0},
                    "code": {"type": "string"},
                },
            },
        },
    },
}

_HEALTH = {
    "type": "object",
    "required": ["status"],
    "additionalProperties": False,
    "properties": {"status": {"type": "string", "const": "ok"}},
}

_ERROR = {
    "type": "object",
    "required": ["error"],
    "additionalProperties": False,
    "properties": {
        "error": {
            "type": "object",
            "required": ["code", "message"],
            "additionalProperties": False,
            "properties": {
                "code": {"type": "string"},
                "message": {"type": "string"},
                "retry_after": {"type": "number"},
            },
        }
    },
}

_SESSION_CREATE_REQUEST = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "user_name": {"type": "string"},
        "alpha": {"type": "integer", "minimum": 1},
    },
}

SCHEMAS = {
    "Emotion": _EMOTION,
    "SessionCreateRequest": _SESSION_CREATE_REQUEST,
    "Strategy": _STRATEGY,
    "Prosody": _PROSODY,
    "SessionInfo": _SESSION_INFO,
    "TurnOutcome": _TURN_OUTCOME,
    "TurnRecord": _TURN_RECORD,
    "HistoryDocument": _HISTORY_DOCUMENT,
    "TrajectoryPoint": _TRAJECTORY_POINT,
    "TrajectoryDocument": _TRAJECTORY_DOCUMENT,
    "ExportDocument": _EXPORT_DOCUMENT,
    "EnrollResult": _ENROLL_RESULT,
    "Health": _HEALTH,
    "Error": _ERROR,
}

# (path, method) -> {status: schema name}
RESPONSE_BINDINGS = {
    ("/v1/health", "get"): {"200": "Health"},
    ("/v1/sessions", "post"): {"201": "SessionInfo", "400": "Error"},
    ("/v1/sessions/{session_id}", "get"): {"200": "SessionInfo", "404": "Error"},
    ("/v1/sessions/{session_id}/enroll", "post"): {
        "200": "EnrollResult",
        "404": "Error",
        "409": "Error",
    },
    ("/v1/sessions/{session_id}/turn", "post"): {
        "200": "TurnOutcome",
        "400": "Error",
        "404": "Error",
        "409": "Error",
        "413": "Error",
        "422": "Error",
        "503": "Error",
    },
    ("/v1/sessions/{session_id}/history", "get"): {
        "200": "HistoryDocument",
        "404": "Error",
    },
    ("/v1/sessions/{session_id}/trajectory", "get"): {
        "200": "TrajectoryDocument",
        "404": "Error",
    },
    ("/v1/sessions/{session_id}/export", "get"): {
        "200": "ExportDocument",
        "404": "Error",
    },
    ("/v1/audio/{ref}", "get"): {"404": "Error"},
}


def _json_response(name: str) -> dict:
    return {
        "description": "error" if name == "Error" else name,
        "content": {
            "application/json": {
                "schema": {"$ref": f"#/components/schemas/{name}"}
            }
        },
    }


def decorate_openapi(schema: dict) -> dict:
    """Attach real response schemas to a generated OpenAPI document.

    Mutates and returns ``schema``. Existing auto-generated entries for a
    bound status code are replaced; everything else is left alone.
    """
    components = schema.setdefault("components", {}).setdefault("schemas", {})
    components.update(SCHEMAS)
    paths = schema.get("paths", {})
    for (path, method), codes in RESPONSE_BINDINGS.items():
        operation = paths.get(path, {}).get(method)
        if operation is None:
            continue
        responses = operation.setdefault("responses", {})
        for code, name in codes.items():
            responses[code] = _json_response(name)

    create = paths.get("/v1/sessions", {}).get("post")
    if create is not None:
        create["requestBody"] = {
            "required": False,
            "content": {
                "application/json": {
                    "schema": {"$ref": "#/components/schemas/SessionCreateRequest"}
                }
            },
        }

    # raw-body routes: document the WAV request body and the hint header
    turn = paths.get("/v1/sessions/{session_id}/turn", {}).get("post")
    if turn is not None:
        turn["requestBody"] = {
            "required": True,
            "content": {
                "audio/wav": {"schema": {"type": "string", "format": "binary"}}
            },
        }
        turn.setdefault("parameters", []).append(
            {
                "name": "x-innerself-transcript",
                "in": "header",
                "required": False,
                "schema": {"type": "string"},
                "description": "transcript override, skips the STT stage",
            }
        )
    # enroll 422 is either a domain error (no valid samples) or FastAPI's
    # multipart validation shape
    enroll = paths.get("/v1/sessions/{session_id}/enroll", {}).get("post")
    if enroll is not None and "HTTPValidationError" in components:
        enroll.setdefault("responses", {})["422"] = {
            "description": "no valid samples, or malformed multipart",
            "content": {
                "application/json": {
                    "schema": {
                        "anyOf": [
                            {"$ref": "#/components/schemas/Error"},
                            {"$ref": "#/components/schemas/HTTPValidationError"},
                        ]
                    }
                }
            },
        }

    audio = paths.get("/v1/audio/{ref}", {}).get("get")
    if audio is not None:
        audio.setdefault("responses", {})["200"] = {
            "description": "synthesized reply audio, served as stored",
            "content": {
                "audio/wav": {"schema": {"type": "string", "format": "binary"}}
            },
        }
    return schema
