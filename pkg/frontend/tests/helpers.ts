import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import type { EmotionPayload, SessionInfo, TurnOutcome } from '../src/types';
import { EMOTION_LABELS } from '../src/types';

const here = dirname(fileURLToPath(import.meta.url));

export const FRONTEND_ROOT = join(here, '..');
export const REPO_ROOT = join(here, '..', '..');

/** Mount the real page markup (minus the script tag) into the jsdom body. */
export function loadMarkup(): void {
  const html = readFileSync(join(FRONTEND_ROOT, 'index.html'), 'utf8');
  const body = html.replace(/^[\s\S]*<body>/, '').replace(/<\/body>[\s\S]*$/, '');
  document.body.innerHTML = body.replace(/<script[\s\S]*?<\/script>/g, '');
}

export function makeEmotion(dominant: string, confidence = 0.8): EmotionPayload {
  const rest = (1 - confidence) / (EMOTION_LABELS.length - 1);
  const probabilities: Record<string, number> = {};
  for (const label of EMOTION_LABELS) {
    probabilities[label] = label === dominant ? confidence : rest;
  }
  return { probabilities, dominant, confidence };
}

export function makeSession(over: Partial<SessionInfo> = {}): SessionInfo {
  return {
    session_id: 'a'.repeat(32),
    user_name: 'Ana',
    alpha: 3,
    created_at: '2026-01-01T00:00:00+00:00',
    enrolled: false,
    turn_count: 0,
    open_plans: [],
    ...over,
  };
}

export function makeOutcome(over: Partial<TurnOutcome> = {}): TurnOutcome {
  return {
    turn_index: 0,
    timestamp: '2026-01-01T00:00:10+00:00',
    transcript: 'i am so worried about tomorrow',
    emotion: makeEmotion('anxiety'),
    strategy: { id: 'grounding', step: 0 },
    response_text: 'Let us slow down together and take one breath.',
    prosody: { pitch_shift: -0.5, volume_gain: -2.0, rate: 0.95 },
    constraint_report: {
      absolutes: true,
      length: true,
      positive_affect: true,
      pronoun_person: true,
    },
    used_fallback: false,
    response_audio_ref: 'b'.repeat(32),
    latency_ms: {
      transcribe: 1,
      classify: 1,
      features: 1,
      strategy: 1,
      generate: 1,
      synthesize: 1,
      persist: 1,
    },
    ...over,
  };
}

/** Poll until `cond` returns true or the deadline passes. */
export async function waitFor(cond: () => boolean, timeoutMs = 10_000, label = 'condition'): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (cond()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error(`timed out waiting for ${label}`);
}
