"""Turn engine orchestration: sessions, turns, enrollment, recovery."""

import numpy as np
import pytest

from innerself.audio import AudioClip
from innerself.emotion.classify import EmotionLabel
from innerself.errors import (
    AdapterUnavailable,
    EmptyUtterance,
    NoValidSamples,
    OversizeAppend,
    SessionBusy,
    UnknownSession,
)
from innerself.fixtures import (
    MIXED_TRANSCRIPT,
    enrollment_fixture,
    fixture_clip,
    fixture_transcript,
    mixed_clip,
)
from innerself.service.config import ServiceConfig
from innerself.service.engine import STAGES, TurnEngine
from innerself.storage.records import reconstruct_transcript

ANXIETY = EmotionLabel.ANXIETY
NEUTRAL = EmotionLabel.NEUTRAL


def run_label_turn(engine, sid, label, seed=0):
    return engine.process_turn(
        sid, fixture_clip(label, seed), transcript_hint=fixture_transcript(label)
    )


def run_mixed_turn(engine, sid, seed=0):
    return engine.process_turn(
        sid, mixed_clip(seed), transcript_hint=MIXED_TRANSCRIPT
    )


def enroll(engine, sid, n=3):
    return engine.enroll_voice(sid, [enrollment_fixture(i) for i in range(n)])


class TestSessionLifecycle:
    def test_create_returns_state(self, engine):
        state = engine.create_session(user_name="Ana", session_id="s1", alpha=50)
        assert state.session_id == "s1"
        assert state.user_name == "Ana"
        assert state.alpha == 50
        assert state.buffer.capacity == 50

    def test_defaults_from_config(self, engine):
        state = engine.create_session()
        assert state.user_name == "Friend"
        assert state.alpha == 600
        assert len(state.session_id) == 32  # uuid4 hex

    def test_duplicate_id_rejected(self, engine):
        engine.create_session(session_id="dup")
        with pytest.raises(ValueError):
            engine.create_session(session_id="dup")

    def test_unknown_session(self, engine):
        with pytest.raises(UnknownSession):
            engine.get_session("missing")

    def test_session_info_shape(self, engine):
        engine.create_session(user_name="Ana", session_id="s1", alpha=50)
        info = engine.session_info("s1")
        assert info["session_id"] == "s1"
        assert info["user_name"] == "Ana"
        assert info["alpha"] == 50
        assert info["enrolled"] is False
        assert info["turn_count"] == 0
        assert info["open_plans"] == []
        assert info["created_at"]


class TestProcessTurn:
    def test_confident_anxiety_turn(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        outcome = run_label_turn(sim_engine, "s1", ANXIETY)
        assert outcome.turn_index == 0
        assert outcome.timestamp == "turn-00000"
        assert outcome.transcript == fixture_transcript(ANXIETY)
        assert outcome.emotion.dominant is ANXIETY
        assert outcome.emotion.confidence >= 0.5
        assert outcome.strategy == ("immediate_reframe", 0)
        assert "more gently:" in outcome.response_text
        assert "CAN'T EVER" not in outcome.response_text
        assert not outcome.used_fallback
        assert all(outcome.constraint_report.values())
        assert outcome.response_audio_ref is None
        assert outcome.prosody.pitch_shift < 0

    def test_latency_keys_and_simulate_zeroing(self, engine, sim_engine):
        # both engines share the on-disk store, so the ids must differ
        for eng, sid, zeroed in (
            (engine, "wall-clock", False),
            (sim_engine, "simulated", True),
        ):
            eng.create_session(session_id=sid)
            outcome = run_label_turn(eng, sid, NEUTRAL)
            assert set(outcome.latency_ms) == set(STAGES)
            if zeroed:
                assert all(v == 0.0 for v in outcome.latency_ms.values())

    def test_turn_indices_advance_by_two(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        first = run_label_turn(sim_engine, "s1", NEUTRAL)
        second = run_label_turn(sim_engine, "s1", NEUTRAL, seed=1)
        assert (first.turn_index, second.turn_index) == (0, 2)
        assert second.timestamp == "turn-00002"
        assert sim_engine.session_info("s1")["turn_count"] == 4

    def test_history_carries_both_roles(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        run_label_turn(sim_engine, "s1", NEUTRAL)
        records = sim_engine.history_dicts("s1")
        assert [r["role"] for r in records] == ["user", "system"]
        assert records[0]["emotion"]["dominant"] == "neutral"
        assert records[1]["strategy"]["id"] == "small_talk"

    def test_outcome_serializes(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        doc = run_label_turn(sim_engine, "s1", ANXIETY).to_dict()
        assert doc["strategy"] == {"id": "immediate_reframe", "step": 0}
        assert doc["response_audio_ref"] is None
        assert set(doc["latency_ms"]) == set(STAGES)


class TestEmptyUtterance:
    def test_silent_clip(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        silent = AudioClip(np.zeros(16000), 16000)
        with pytest.raises(EmptyUtterance):
            sim_engine.process_turn("s1", silent, transcript_hint="ignored")
        assert sim_engine.history_dicts("s1") == []

    def test_unregistered_clip(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        with pytest.raises(EmptyUtterance):
            sim_engine.process_turn("s1", fixture_clip(NEUTRAL))

    def test_blank_transcript(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        with pytest.raises(EmptyUtterance):
            sim_engine.process_turn(
                "s1", fixture_clip(NEUTRAL), transcript_hint="   "
            )
        assert sim_engine.session_info("s1")["turn_count"] == 0


class TestBusyLock:
    def test_concurrent_turn_rejected(self, sim_engine):
        state = sim_engine.create_session(session_id="s1")
        assert state.lock.acquire(blocking=False)
        try:
            with pytest.raises(SessionBusy):
                run_label_turn(sim_engine, "s1", NEUTRAL)
            with pytest.raises(SessionBusy):
                enroll(sim_engine, "s1")
        finally:
            state.lock.release()
        run_label_turn(sim_engine, "s1", NEUTRAL)  # lock released, works again


class TestEnrollment:
    def test_clean_enrollment(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        profile, warnings = enroll(sim_engine, "s1")
        assert warnings == []
        assert profile.sample_count == 3
        assert sim_engine.session_info("s1")["enrolled"] is True
        assert sim_engine.store.load_profile("s1") is not None

    def test_partial_acceptance_warns(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        pairs = [enrollment_fixture(i) for i in range(3)]
        t = np.arange(4000) / 16000.0
        pairs.append((AudioClip(0.3 * np.sin(2 * np.pi * 200 * t), 16000), "too short"))
        profile, warnings = sim_engine.enroll_voice("s1", pairs)
        assert profile.sample_count == 3
        assert {"index": 3, "code": "TooShort"} in warnings

    def test_no_valid_samples(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        with pytest.raises(NoValidSamples):
            sim_engine.enroll_voice(
                "s1", [(AudioClip(np.zeros(16000), 16000), "")]
            )

    def test_enrolled_session_gets_audio(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        enroll(sim_engine, "s1")
        outcome = run_label_turn(sim_engine, "s1", ANXIETY)
        ref = outcome.response_audio_ref
        assert ref is not None and ref.endswith(".wav")
        assert sim_engine.find_audio(ref)[:4] == b"RIFF"
        records = sim_engine.history_dicts("s1")
        assert records[1]["audio_ref"] == ref

    def test_find_audio_misses(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        assert sim_engine.find_audio("zz") is None
        assert sim_engine.find_audio("0" * 64 + ".wav") is None


class TestSynthesisFailure:
    def test_turn_survives_audio_failure(self, sim_engine):
        class DownSynth:
            def synthesize(self, text, embedding, prosody=None):
                raise AdapterUnavailable("synth down")

        sim_engine.create_session(session_id="s1")
        enroll(sim_engine, "s1")
        sim_engine.synth = DownSynth()
        outcome = run_label_turn(sim_engine, "s1", ANXIETY)
        assert outcome.response_audio_ref is None
        assert outcome.response_text
        records = sim_engine.history_dicts("s1")
        assert len(records) == 2
        assert "audio_ref" not in records[1]


class TestEvents:
    def collect(self, engine):
        events = []
        engine.set_event_sink(lambda sid, event: events.append(event))
        return events

    def test_event_order_without_audio(self, sim_engine):
        events = self.collect(sim_engine)
        sim_engine.create_session(session_id="s1")
        run_label_turn(sim_engine, "s1", NEUTRAL)
        assert [e["type"] for e in events] == [
            "partial_transcript", "emotion", "response_text",
        ]
        assert events[1]["emotion"]["dominant"] == "neutral"

    def test_event_order_with_audio(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        enroll(sim_engine, "s1")
        events = self.collect(sim_engine)
        run_label_turn(sim_engine, "s1", ANXIETY)
        assert [e["type"] for e in events] == [
            "partial_transcript", "emotion", "response_text", "audio_ready",
        ]
        assert events[3]["audio_ref"].endswith(".wav")


class TestPlans:
    def drive_to_plan(self, engine, sid):
        for seed in range(4):
            outcome = run_mixed_turn(engine, sid, seed)
            assert outcome.strategy == ("cognitive_restructuring", seed)
        return engine.session_info(sid)["open_plans"]

    def test_plan_opens_at_final_step(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        for seed in range(3):
            run_mixed_turn(sim_engine, "s1", seed)
            assert sim_engine.session_info("s1")["open_plans"] == []
        run_mixed_turn(sim_engine, "s1", 3)
        plans = sim_engine.session_info("s1")["open_plans"]
        assert len(plans) == 1
        plan = plans[0]
        assert plan["plan_id"] == "plan-00008"
        assert plan["description"].startswith("Follow through on: ")
        assert len(plan["description"]) <= len("Follow through on: ") + 60
        assert len(plan["steps"]) == 3
        assert plan["status"] == "open"

    def test_no_second_plan_while_open(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        self.drive_to_plan(sim_engine, "s1")
        outcome = run_mixed_turn(sim_engine, "s1", 9)
        assert outcome.strategy == ("cognitive_restructuring", 3)
        assert len(sim_engine.session_info("s1")["open_plans"]) == 1

    def test_open_plan_routes_neutral_to_action(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        self.drive_to_plan(sim_engine, "s1")
        outcome = run_label_turn(sim_engine, "s1", NEUTRAL)
        assert outcome.strategy == ("action_plan", 0)
        assert "Follow through on:" in outcome.response_text


class TestOversizeTurn:
    def test_rejected_before_persisting(self, sim_engine):
        sim_engine.create_session(session_id="tiny", alpha=1)
        clip = fixture_clip(NEUTRAL)
        with pytest.raises(OversizeAppend):
            sim_engine.process_turn("tiny", clip, transcript_hint="x" * 50)
        assert sim_engine.history_dicts("tiny") == []


class TestRecovery:
    def fresh_engine(self, old):
        return TurnEngine(
            ServiceConfig(data_dir=old.config.data_dir, webapp_dir=None),
            simulate_mode=True,
        )

    def test_state_survives_restart(self, sim_engine):
        sim_engine.create_session(session_id="s1", alpha=50, user_name="Ana")
        enroll(sim_engine, "s1")
        run_label_turn(sim_engine, "s1", ANXIETY)
        run_mixed_turn(sim_engine, "s1", 0)
        old_state = sim_engine.get_session("s1")

        revived = self.fresh_engine(sim_engine)
        state = revived.get_session("s1")
        assert state.user_name == "Ana"
        assert state.alpha == 50
        assert state.next_index == old_state.next_index == 4
        assert state.buffer.content == old_state.buffer.content
        assert state.profile is not None
        assert revived.history_dicts("s1") == sim_engine.history_dicts("s1")

    def test_strategy_resumes_after_restart(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        outcome = run_mixed_turn(sim_engine, "s1", 0)
        assert outcome.strategy == ("cognitive_restructuring", 0)

        revived = self.fresh_engine(sim_engine)
        outcome = run_mixed_turn(revived, "s1", 1)
        assert outcome.strategy == ("cognitive_restructuring", 1)

    def test_transcript_reconstructs_after_restart(self, sim_engine):
        sim_engine.create_session(session_id="s1", alpha=40)
        for seed in range(3):
            run_mixed_turn(sim_engine, "s1", seed)
        expected = reconstruct_transcript("s1", sim_engine.store)

        revived = self.fresh_engine(sim_engine)
        revived.get_session("s1")
        assert reconstruct_transcript("s1", revived.store) == expected
        assert MIXED_TRANSCRIPT in expected


class TestReadPaths:
    def test_trajectory_dicts(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        run_label_turn(sim_engine, "s1", ANXIETY)
        run_label_turn(sim_engine, "s1", NEUTRAL)
        points = sim_engine.trajectory_dicts("s1")
        assert [p["turn_index"] for p in points] == [0, 2]
        assert points[0]["emotion"]["dominant"] == "anxiety"
        assert points[1]["text"] == fixture_transcript(NEUTRAL)

    def test_export_via_engine(self, sim_engine):
        sim_engine.create_session(session_id="s1")
        enroll(sim_engine, "s1")
        run_label_turn(sim_engine, "s1", ANXIETY)
        doc = sim_engine.export("s1")
        assert doc["schema"] == "innerself-export/1"
        assert "audio_ref" not in doc["turns"][1]
        with_audio = sim_engine.export("s1", include_audio=True)
        assert with_audio["turns"][1]["audio_ref"]
