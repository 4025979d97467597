#!/usr/bin/env python3
"""Regenerate the committed demo session under demo/.

Writes six emotion WAVs, three enrollment WAVs, and a ten-turn script
that walks through every dialogue strategy: a confident reframe, the
four-step Socratic sequence with its action plan, affirmations, small
talk, and a plan follow-up. Deterministic; running it twice is a no-op
apart from file mtimes.
"""

from __future__ import annotations

import json
from pathlib import Path

from innerself.audio import write_wav
from innerself.emotion.classify import EmotionLabel
from innerself.fixtures import (
    LABEL_TRANSCRIPTS,
    MIXED_TRANSCRIPT,
    enrollment_fixture,
    fixture_clip,
    mixed_clip,
)

DEMO_DIR = Path(__file__).resolve().parents[1] / "demo"
AUDIO_DIR = DEMO_DIR / "audio"
LABEL_SEED = 100  # held-out seed, verified by scripts/calibrate_head.py

LABEL_FILES = {
    EmotionLabel.ANXIETY: "anxious.wav",
    EmotionLabel.SADNESS: "sad.wav",
    EmotionLabel.SHAME_REGRET: "ashamed.wav",
    EmotionLabel.ANGER: "angry.wav",
    EmotionLabel.NEUTRAL: "neutral.wav",
}
MIXED_FILE = "mixed.wav"

TURN_ORDER = [
    EmotionLabel.ANXIETY,  # immediate_reframe, reproduces the pinned rewrite
    None,                  # cognitive_restructuring step 0 (None = mixed)
    None,                  # step 1
    EmotionLabel.SADNESS,  # affirmation_support
    EmotionLabel.NEUTRAL,  # small_talk, no plan open yet
    None,                  # step 2
    None,                  # step 3, opens the action plan
    EmotionLabel.NEUTRAL,  # action_plan
    EmotionLabel.ANGER,    # immediate_reframe
    EmotionLabel.SHAME_REGRET,  # affirmation_support
]


def main() -> None:
    AUDIO_DIR.mkdir(parents=True, exist_ok=True)
    for label, name in LABEL_FILES.items():
        write_wav(AUDIO_DIR / name, fixture_clip(label, LABEL_SEED))
    write_wav(AUDIO_DIR / MIXED_FILE, mixed_clip(0))
    enroll_entries = []
    for index in range(3):
        clip, transcript = enrollment_fixture(index)
        name = f"enroll_{index}.wav"
        write_wav(AUDIO_DIR / name, clip)
        enroll_entries.append({"audio": f"audio/{name}", "transcript": transcript})

    lines = [
        json.dumps(
            {
                "session": {"session_id": "demo", "user_name": "Ana", "alpha": 600},
                "enroll": enroll_entries,
            },
            ensure_ascii=False,
        )
    ]
    for label in TURN_ORDER:
        if label is None:
            entry = {"audio": f"audio/{MIXED_FILE}", "transcript": MIXED_TRANSCRIPT}
        else:
            entry = {
                "audio": f"audio/{LABEL_FILES[label]}",
                "transcript": LABEL_TRANSCRIPTS[label],
            }
        lines.append(json.dumps(entry, ensure_ascii=False))
    script_path = DEMO_DIR / "session.jsonl"
    script_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {script_path} and {len(list(AUDIO_DIR.glob('*.wav')))} wavs")


if __name__ == "__main__":
    main()
