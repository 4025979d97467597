// Wire types for the /v1 API. Kept in sync with the served OpenAPI
// document; the contract tests hold the two together.

export const EMOTION_LABELS = [
  'anger',
  'anxiety',
  'sadness',
  'shame_regret',
  'neutral',
] as const;

export type EmotionLabel = (typeof EMOTION_LABELS)[number];

export interface EmotionPayload {
  probabilities: Record<EmotionLabel, number>;
  dominant: EmotionLabel;
  confidence: number;
  logits: number[];
}

export interface StrategyPayload {
  id: string;
  step: number;
}

export interface ProsodyPayload {
  pitch_shift: number;
  volume_gain: number;
  rate: number;
}

export interface SessionInfo {
  session_id: string;
  user_name: string;
  alpha: number;
  created_at: string;
  enrolled: boolean;
  turn_count: number;
  open_plans: unknown[];
}

export interface TurnOutcome {
  turn_index: number;
  timestamp: string;
  transcript: string;
  emotion: EmotionPayload;
  strategy: StrategyPayload;
  response_text: string;
  prosody: ProsodyPayload;
  constraint_report: Record<string, boolean>;
  used_fallback: boolean;
  response_audio_ref: string | null;
  latency_ms: Record<string, number>;
}

export interface TurnRecord {
  session_id: string;
  turn_index: number;
  role: 'user' | 'system';
  text: string;
  timestamp: string;
  emotion?: EmotionPayload;
  strategy?: StrategyPayload;
  prosody?: ProsodyPayload;
  audio_ref?: string | null;
}

export interface HistoryDocument {
  session_id: string;
  turns: TurnRecord[];
}

export interface TrajectoryPoint {
  turn_index: number;
  timestamp: string;
  text: string;
  emotion: EmotionPayload;
}

export interface TrajectoryDocument {
  session_id: string;
  trajectory: TrajectoryPoint[];
}

export interface EnrollWarning {
  index: number;
  code: string;
}

export interface EnrollResult {
  profile: {
    sample_count: number;
    created_at: string;
    embedding_dim: number;
  };
  warnings: EnrollWarning[];
}

export type LiveEvent =
  | { type: 'partial_transcript'; text: string }
  | { type: 'emotion'; emotion: EmotionPayload }
  | {
      type: 'response_text';
      text: string;
      strategy: StrategyPayload;
      used_fallback: boolean;
    }
  | { type: 'audio_ready'; audio_ref: string };

export type LiveStatus = 'idle' | 'recording' | 'processing' | 'playing';
