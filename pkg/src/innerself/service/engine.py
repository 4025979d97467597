"""Turn orchestration.

TurnEngine owns the adapters, the classifier head, and the per-session
state (dialogue buffer, strategy history, voice profile, open plans).
One engine serves many sessions; each session processes one turn at a
time, guarded by a non-blocking lock that surfaces as a BUSY error.

Persistence ordering inside a turn: the turn log line is written first,
then the in-memory buffer advances, then evicted text is flushed to the
chunk store. Recovery replays the log, so a crash between those steps
never leaves the buffer and the log in disagreement.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from innerself.audio import AudioClip
from innerself.conversation import (
    ProsodyParams,
    ProsodyTable,
    StrategyHistory,
    StrategyTable,
    SubstitutionTable,
    build_prompt,
    default_prosody_table,
    default_strategy_table,
    default_substitution_table,
    generate_response,
    prosody_for_emotion,
    reframe_absolutes,
    select_strategy,
)
from innerself.conversation.adapters import HttpLLM, ScriptFollowingLLM
from innerself.conversation.prompts import MAX_CONTEXT_CHARS
from innerself.emotion import (
    ClassifierHead,
    EmotionResult,
    HttpAudioFeatures,
    HttpSpeechToText,
    MockSpeechToText,
    ReferenceAudioFeatures,
    classify,
    extract_text_features,
    fuse,
    transcribe,
)
from innerself.errors import (
    EmptyTranscript,
    EmptyUtterance,
    InnerSelfError,
    OversizeAppend,
    SessionBusy,
    SilentClip,
    StoreUnavailable,
)
from innerself.lexicons import (
    data_path,
    default_absolute_terms,
    default_valence_lexicon,
)
from innerself.service.config import REFERENCE, ServiceConfig
from innerself.storage import (
    ActionPlan,
    DialogueBuffer,
    EvictionFlusher,
    PlanStep,
    SessionStore,
    TurnRecord,
    buffer_line,
    emotion_trajectory,
    export_session,
    read_turns,
    recover_buffer,
)
from innerself.storage.buffer import OVERSIZE_FACTOR
from innerself.voiceclone import (
    EnrollmentSample,
    HttpSpeakerEncoder,
    HttpSynthesizer,
    HttpVocoder,
    ReferenceSpeakerEncoder,
    ReferenceSynthesizer,
    ReferenceVocoder,
    VoiceProfile,
    apply_prosody,
    embed_speaker,
    synthesize,
    validate_enrollment,
    vocode,
)

STAGES = (
    "transcribe",
    "features",
    "classify",
    "strategy",
    "generate",
    "synthesize",
    "persist",
)
SIMULATE_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
PLAN_STEP_TEXTS = (
    "Name the smallest next step you could take.",
    "Do that step before the day ends.",
    "Write one line about how it went.",
)


@dataclass(frozen=True)
class TurnOutcome:
    """Everything one exchange produced, JSON-serializable."""

    turn_index: int
    timestamp: str
    transcript: str
    emotion: EmotionResult
    strategy: tuple[str, int]
    response_text: str
    prosody: ProsodyParams
    constraint_report: dict
    used_fallback: bool
    response_audio_ref: str | None
    latency_ms: dict

    def to_dict(self) -> dict:
        return {
            "turn_index": self.turn_index,
            "timestamp": self.timestamp,
            "transcript": self.transcript,
            "emotion": self.emotion.to_dict(),
            "strategy": {"id": self.strategy[0], "step": self.strategy[1]},
            "response_text": self.response_text,
            "prosody": self.prosody.to_dict(),
            "constraint_report": dict(self.constraint_report),
            "used_fallback": self.used_fallback,
            "response_audio_ref": self.response_audio_ref,
            "latency_ms": dict(self.latency_ms),
        }


@dataclass
class SessionState:
    session_id: str
    user_name: str
    alpha: int
    buffer: DialogueBuffer
    flusher: EvictionFlusher
    history: StrategyHistory = field(default_factory=StrategyHistory)
    profile: VoiceProfile | None = None
    plans: list[ActionPlan] = field(default_factory=list)
    next_index: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def has_open_plan(self) -> bool:
        return any(plan.is_open for plan in self.plans)


class _StageTimer:
    def __init__(self, zeroed: bool):
        self.zeroed = zeroed
        self.laps: dict[str, float] = {name: 0.0 for name in STAGES}
        self._mark = time.perf_counter()

    def lap(self, stage: str) -> None:
        now = time.perf_counter()
        if not self.zeroed:
            self.laps[stage] = round((now - self._mark) * 1000.0, 3)
        self._mark = now


class TurnEngine:
    """Session lifecycle plus the full per-turn pipeline."""

    def __init__(
        self,
        config: ServiceConfig | None = None,
        store: SessionStore | None = None,
        event_sink=None,
        simulate_mode: bool = False,
    ):
        self.config = config or ServiceConfig()
        self.store = store or SessionStore(self.config.data_dir)
        self.simulate_mode = simulate_mode
        self._event_sink = event_sink
        self._sessions: dict[str, SessionState] = {}
        self._sessions_lock = threading.Lock()

        cfg = self.config
        self.stt = (
            MockSpeechToText() if cfg.stt == REFERENCE else HttpSpeechToText(cfg.stt)
        )
        self.audio_features = (
            ReferenceAudioFeatures()
            if cfg.audio_features == REFERENCE
            else HttpAudioFeatures(cfg.audio_features)
        )
        self.llm = ScriptFollowingLLM() if cfg.llm == REFERENCE else HttpLLM(cfg.llm)
        self.encoder = (
            ReferenceSpeakerEncoder()
            if cfg.encoder == REFERENCE
            else HttpSpeakerEncoder(cfg.encoder)
        )
        self.synth = (
            ReferenceSynthesizer()
            if cfg.synthesizer == REFERENCE
            else HttpSynthesizer(cfg.synthesizer)
        )
        self.vocoder = (
            ReferenceVocoder() if cfg.vocoder == REFERENCE else HttpVocoder(cfg.vocoder)
        )

        head_path = cfg.head_path or data_path("head.json")
        self.head = ClassifierHead.load(head_path)
        self.strategies: StrategyTable = default_strategy_table()
        self.prosody_table: ProsodyTable = default_prosody_table()
        self.substitutions: SubstitutionTable = default_substitution_table()
        self.absolutes = default_absolute_terms()
        self.valence = default_valence_lexicon()

    # -- events ----------------------------------------------------------

    def set_event_sink(self, sink) -> None:
        self._event_sink = sink

    def _emit(self, session_id: str, event: dict) -> None:
        if self._event_sink is not None:
            self._event_sink(session_id, event)

    # -- session lifecycle -------------------------------------------------

    def create_session(
        self,
        user_name: str | None = None,
        session_id: str | None = None,
        alpha: int | None = None,
    ) -> SessionState:
        sid = session_id or uuid.uuid4().hex
        if self.store.session_exists(sid):
            raise ValueError(f"session {sid!r} already exists")
        name = user_name or self.config.default_user_name
        cap = alpha or self.config.alpha
        created = self._timestamp(0)
        self.store.create_session(
            sid, {"user_name": name, "alpha": cap, "created_at": created}
        )
        state = SessionState(
            session_id=sid,
            user_name=name,
            alpha=cap,
            buffer=DialogueBuffer(cap),
            flusher=EvictionFlusher(self.store.chunk_sink(sid)),
        )
        with self._sessions_lock:
            self._sessions[sid] = state
        return state

    def get_session(self, session_id: str) -> SessionState:
        with self._sessions_lock:
            state = self._sessions.get(session_id)
            if state is not None:
                return state
        state = self._recover_session(session_id)
        with self._sessions_lock:
            return self._sessions.setdefault(session_id, state)

    def _recover_session(self, session_id: str) -> SessionState:
        meta = self.store.load_session(session_id)
        buffer, missing = recover_buffer(session_id, self.store)
        flusher = EvictionFlusher(self.store.chunk_sink(session_id))
        if missing:
            flusher.flush([missing])
        turns = read_turns(session_id, self.store)
        uses = tuple(
            (rec.strategy[0], rec.strategy[1])
            for rec in turns
            if rec.role == "system"
        )
        plans = [ActionPlan.from_dict(d) for d in self.store.load_plans(session_id)]
        profile_doc = self.store.load_profile(session_id)
        profile = VoiceProfile.from_dict(profile_doc) if profile_doc else None
        next_index = max((rec.turn_index for rec in turns), default=-1) + 1
        return SessionState(
            session_id=session_id,
            user_name=meta.get("user_name", self.config.default_user_name),
            alpha=int(meta.get("alpha", self.config.alpha)),
            buffer=buffer,
            flusher=flusher,
            history=StrategyHistory(uses),
            profile=profile,
            plans=plans,
            next_index=next_index,
        )

    def session_info(self, session_id: str) -> dict:
        state = self.get_session(session_id)
        meta = self.store.load_session(session_id)
        return {
            "session_id": state.session_id,
            "user_name": state.user_name,
            "alpha": state.alpha,
            "created_at": meta.get("created_at"),
            "enrolled": state.profile is not None,
            "turn_count": state.next_index,
            "open_plans": [p.to_dict() for p in state.plans if p.is_open],
        }

    # -- enrollment --------------------------------------------------------

    def enroll_voice(
        self, session_id: str, pairs: list[tuple[AudioClip, str]]
    ) -> tuple[VoiceProfile, list[dict]]:
        """Validate each sample, embed the accepted ones, store the profile.

        Partial acceptance: invalid samples are reported as warnings
        naming the failed check and the sample index, not errors. Only
        when no sample survives does enrollment fail.
        """
        state = self.get_session(session_id)
        if not state.lock.acquire(blocking=False):
            raise SessionBusy(f"session {session_id} is busy")
        try:
            samples: list[EnrollmentSample] = []
            warnings: list[dict] = []
            for index, (clip, transcript) in enumerate(pairs):
                checked, errors = validate_enrollment(
                    EnrollmentSample(clip, transcript)
                )
                samples.append(checked)
                for code in errors:
                    warnings.append({"index": index, "code": code})
            now = SIMULATE_EPOCH if self.simulate_mode else None
            profile = embed_speaker(samples, self.encoder, now=now)
            self.store.save_profile(session_id, profile.to_dict())
            state.profile = profile
            return profile, warnings
        finally:
            state.lock.release()

    # -- the turn pipeline ---------------------------------------------------

    def process_turn(
        self,
        session_id: str,
        clip: AudioClip,
        transcript_hint: str | None = None,
    ) -> TurnOutcome:
        state = self.get_session(session_id)
        if not state.lock.acquire(blocking=False):
            raise SessionBusy(f"session {session_id} is handling another turn")
        try:
            return self._run_turn(state, clip, transcript_hint)
        finally:
            state.lock.release()

    def _run_turn(
        self,
        state: SessionState,
        clip: AudioClip,
        transcript_hint: str | None,
    ) -> TurnOutcome:
        sid = state.session_id
        timer = _StageTimer(zeroed=self.simulate_mode)

        if transcript_hint is not None and isinstance(self.stt, MockSpeechToText):
            self.stt.register(clip, transcript_hint)
        try:
            transcript = transcribe(clip, self.stt)
        except (SilentClip, EmptyTranscript) as exc:
            raise EmptyUtterance(str(exc)) from exc
        timer.lap("transcribe")
        self._emit(sid, {"type": "partial_transcript", "text": transcript})

        audio_fv = self.audio_features.extract(clip)
        try:
            text_fv = extract_text_features(transcript, self.valence, self.absolutes)
        except EmptyTranscript as exc:
            raise EmptyUtterance(str(exc)) from exc
        fused = fuse(audio_fv, text_fv)
        timer.lap("features")

        emotion = classify(fused, self.head)
        timer.lap("classify")
        self._emit(sid, {"type": "emotion", "emotion": emotion.to_dict()})

        history = state.history.with_open_plan(state.has_open_plan)
        strategy = select_strategy(
            emotion, state.buffer.content, history, self.strategies
        )
        timer.lap("strategy")

        reframed = reframe_absolutes(transcript, self.absolutes, self.substitutions)
        topic = next((p.description for p in state.plans if p.is_open), "")
        constraints = self.strategies.constraints_for(strategy.id)
        context = state.buffer.content[-MAX_CONTEXT_CHARS:]
        prompt = build_prompt(
            strategy,
            context,
            state.user_name,
            constraints,
            topic=topic,
            reframed_text=reframed,
        )
        plan = generate_response(
            prompt,
            self.llm,
            constraints,
            strategy_id=strategy.id,
            step_index=strategy.step_index,
            fallback_text=self.strategies.entry(strategy.id).fallback,
            valence=self.valence,
            absolutes=self.absolutes,
        )
        timer.lap("generate")
        self._emit(
            sid,
            {
                "type": "response_text",
                "text": plan.text,
                "strategy": {"id": strategy.id, "step": strategy.step_index},
                "used_fallback": plan.used_fallback,
            },
        )

        prosody = prosody_for_emotion(emotion, self.prosody_table)
        audio_ref = None
        if state.profile is not None:
            try:
                mel = synthesize(plan.text, state.profile, self.synth)
                voiced = vocode(mel, self.vocoder)
                shaped = apply_prosody(voiced, prosody)
                audio_ref = self.store.save_audio(sid, shaped)
            except InnerSelfError:
                # the text turn still lands; the record carries no audio
                audio_ref = None
        timer.lap("synthesize")
        if audio_ref is not None:
            self._emit(sid, {"type": "audio_ready", "audio_ref": audio_ref})

        user_index = state.next_index
        oversize = state.alpha * OVERSIZE_FACTOR
        for role, text in (("user", transcript), ("system", plan.text)):
            line = buffer_line(role, text)
            if len(line) > oversize:
                raise OversizeAppend(
                    f"turn text of {len(line)} chars exceeds {oversize}"
                )
        user_record = TurnRecord(
            session_id=sid,
            turn_index=user_index,
            role="user",
            text=transcript,
            timestamp=self._timestamp(user_index),
            emotion=emotion,
        )
        self._persist_turn(state, user_record)
        system_record = TurnRecord(
            session_id=sid,
            turn_index=user_index + 1,
            role="system",
            text=plan.text,
            timestamp=self._timestamp(user_index + 1),
            strategy=(strategy.id, strategy.step_index),
            prosody=prosody,
            audio_ref=audio_ref,
        )
        self._persist_turn(state, system_record)
        state.history = history.record(strategy)
        self._maybe_open_plan(state, strategy, transcript)
        timer.lap("persist")

        return TurnOutcome(
            turn_index=user_index,
            timestamp=user_record.timestamp,
            transcript=transcript,
            emotion=emotion,
            strategy=(strategy.id, strategy.step_index),
            response_text=plan.text,
            prosody=prosody,
            constraint_report=plan.constraint_report,
            used_fallback=plan.used_fallback,
            response_audio_ref=audio_ref,
            latency_ms=timer.laps,
        )

    def _persist_turn(self, state: SessionState, record: TurnRecord) -> None:
        self.store.append_turn(state.session_id, record.to_dict())
        state.next_index = record.turn_index + 1
        evicted = state.buffer.append(buffer_line(record.role, record.text))
        if evicted:
            try:
                state.flusher.flush([evicted])
            except StoreUnavailable:
                # kept in the pending queue; retried on the next eviction
                pass

    def _maybe_open_plan(
        self, state: SessionState, strategy, transcript: str
    ) -> None:
        if strategy.id != "cognitive_restructuring":
            return
        if strategy.step_index != strategy.final_step or state.has_open_plan:
            return
        summary = transcript.strip()
        if len(summary) > 60:
            summary = summary[:57] + "..."
        plan = ActionPlan(
            session_id=state.session_id,
            plan_id=f"plan-{state.next_index:05d}",
            description=f"Follow through on: {summary}",
            steps=tuple(PlanStep(text) for text in PLAN_STEP_TEXTS),
        )
        state.plans.append(plan)
        self.store.save_plans(
            state.session_id, [p.to_dict() for p in state.plans]
        )

    # -- read paths ----------------------------------------------------------

    def history_dicts(self, session_id: str) -> list[dict]:
        self.get_session(session_id)
        return [rec.to_dict() for rec in read_turns(session_id, self.store)]

    def trajectory_dicts(self, session_id: str) -> list[dict]:
        self.get_session(session_id)
        points = emotion_trajectory(session_id, self.store)
        turns = read_turns(session_id, self.store)
        user_turns = [rec for rec in turns if rec.role == "user"]
        return [
            {
                "turn_index": rec.turn_index,
                "timestamp": stamp,
                "text": rec.text,
                "emotion": result.to_dict(),
            }
            for rec, (stamp, result) in zip(user_turns, points)
        ]

    def export(self, session_id: str, include_audio: bool = False) -> dict:
        self.get_session(session_id)
        return export_session(session_id, self.store, include_audio=include_audio)

    def find_audio(self, ref: str) -> bytes | None:
        """Locate a content-addressed response WAV across sessions."""
        filename = ref if ref.endswith(".wav") else ref + ".wav"
        for sid in self.store.list_sessions():
            try:
                path = Path(self.store.audio_path(sid, filename))
            except ValueError:
                return None
            if path.exists():
                return path.read_bytes()
        return None

    # -- time ------------------------------------------------------------------

    def _timestamp(self, index: int) -> str:
        if self.simulate_mode:
            return f"turn-{index:05d}"
        return datetime.now(timezone.utc).isoformat()
