from innerself.conversation.adapters import (
    AdversarialLLM,
    HttpLLM,
    LanguageModelAdapter,
    ScriptedLLM,
    ScriptFollowingLLM,
)
from innerself.conversation.prompts import (
    ResponseConstraints,
    build_prompt,
    script_section,
)
from innerself.conversation.prosody import (
    NEUTRAL_PROSODY,
    ProsodyParams,
    ProsodyTable,
    default_prosody_table,
    prosody_for_emotion,
)
from innerself.conversation.reframe import (
    AbsoluteSpan,
    SubstitutionTable,
    default_substitution_table,
    detect_absolutes,
    reframe_absolutes,
)
from innerself.conversation.responder import (
    ResponsePlan,
    generate_response,
    validate_response,
)
from innerself.conversation.strategy import (
    STRATEGY_IDS,
    DialogStrategy,
    StrategyHistory,
    StrategyTable,
    default_strategy_table,
    select_strategy,
)

__all__ = [
    "AbsoluteSpan",
    "AdversarialLLM",
    "DialogStrategy",
    "HttpLLM",
    "LanguageModelAdapter",
    "NEUTRAL_PROSODY",
    "ProsodyParams",
    "ProsodyTable",
    "ResponseConstraints",
    "ResponsePlan",
    "STRATEGY_IDS",
    "ScriptFollowingLLM",
    "ScriptedLLM",
    "StrategyHistory",
    "StrategyTable",
    "SubstitutionTable",
    "build_prompt",
    "default_prosody_table",
    "default_strategy_table",
    "default_substitution_table",
    "detect_absolutes",
    "generate_response",
    "prosody_for_emotion",
    "reframe_absolutes",
    "script_section",
    "select_strategy",
    "validate_response",
]
