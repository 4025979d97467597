"""Service layer: configuration, turn engine, HTTP/WS API, simulation."""

from innerself.service.config import ServiceConfig, load_config
from innerself.service.engine import SessionState, TurnEngine, TurnOutcome
from innerself.service.simulate import (
    SimScript,
    SimulationResult,
    load_script,
    run_simulation,
)

__all__ = [
    "ServiceConfig",
    "SessionState",
    "SimScript",
    "SimulationResult",
    "TurnEngine",
    "TurnOutcome",
    "load_config",
    "load_script",
    "run_simulation",
]
