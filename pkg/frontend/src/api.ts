// Thin fetch client for the /v1 API. base is '' in the served app
// (same origin) and an absolute http://host:port in tests.

import type {
  EnrollResult,
  HistoryDocument,
  SessionInfo,
  TrajectoryDocument,
  TurnOutcome,
} from './types';

export class ApiError extends Error {
  code: string;
  status: number;
  retryAfter?: number;

  constructor(code: string, message: string, status: number, retryAfter?: number) {
    super(message);
    this.name = 'ApiError';
    this.code = code;
    this.status = status;
    this.retryAfter = retryAfter;
  }
}

export interface EnrollUpload {
  name: string;
  bytes: ArrayBuffer;
  transcript: string;
}

// Multipart body built by hand so the exact same bytes go out in the
// browser and under the test runner. Samples and transcripts are paired
// by position.
export function buildMultipart(uploads: EnrollUpload[]): {
  body: Uint8Array<ArrayBuffer>;
  contentType: string;
} {
  const boundary =
    '----innerself' + Math.random().toString(16).slice(2) + Date.now().toString(16);
  const enc = new TextEncoder();
  const parts: Uint8Array<ArrayBuffer>[] = [];
  for (const u of uploads) {
    parts.push(
      enc.encode(
        `--${boundary}\r\n` +
          `Content-Disposition: form-data; name="samples"; filename="${u.name}"\r\n` +
          `Content-Type: audio/wav\r\n\r\n`,
      ),
    );
    parts.push(new Uint8Array(u.bytes));
    parts.push(enc.encode('\r\n'));
  }
  for (const u of uploads) {
    parts.push(
      enc.encode(
        `--${boundary}\r\nContent-Disposition: form-data; name="transcripts"\r\n\r\n` +
          u.transcript +
          '\r\n',
      ),
    );
  }
  parts.push(enc.encode(`--${boundary}--\r\n`));
  const total = parts.reduce((n, p) => n + p.length, 0);
  const body = new Uint8Array(total);
  let offset = 0;
  for (const p of parts) {
    body.set(p, offset);
    offset += p.length;
  }
  return { body, contentType: `multipart/form-data; boundary=${boundary}` };
}

async function raise(resp: Response): Promise<never> {
  let code = 'HTTP_' + resp.status;
  let message = resp.statusText || 'request failed';
  try {
    const payload = await resp.json();
    if (payload && payload.error) {
      code = payload.error.code ?? code;
      message = payload.error.message ?? message;
    } else if (payload && payload.detail) {
      message = JSON.stringify(payload.detail);
    }
  } catch {
    // non-JSON error body, keep the status text
  }
  const retryHeader = resp.headers.get('retry-after');
  const retryAfter = retryHeader ? Number(retryHeader) : undefined;
  throw new ApiError(code, message, resp.status, retryAfter);
}

export class ApiClient {
  readonly base: string;

  constructor(base = '') {
    this.base = base.replace(/\/$/, '');
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.base + path, init);
    if (!resp.ok) await raise(resp);
    return (await resp.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.json('/v1/health');
  }

  createSession(opts: { user_name?: string; alpha?: number } = {}): Promise<SessionInfo> {
    return this.json('/v1/sessions', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(opts),
    });
  }

  session(id: string): Promise<SessionInfo> {
    return this.json(`/v1/sessions/${id}`);
  }

  enroll(id: string, uploads: EnrollUpload[]): Promise<EnrollResult> {
    const { body, contentType } = buildMultipart(uploads);
    return this.json(`/v1/sessions/${id}/enroll`, {
      method: 'POST',
      headers: { 'content-type': contentType },
      body,
    });
  }

  turn(id: string, wav: ArrayBuffer, transcriptHint?: string): Promise<TurnOutcome> {
    const headers: Record<string, string> = { 'content-type': 'audio/wav' };
    if (transcriptHint !== undefined) {
      headers['x-innerself-transcript'] = transcriptHint;
    }
    return this.json(`/v1/sessions/${id}/turn`, {
      method: 'POST',
      headers,
      body: wav,
    });
  }

  history(id: string): Promise<HistoryDocument> {
    return this.json(`/v1/sessions/${id}/history`);
  }

  trajectory(id: string): Promise<TrajectoryDocument> {
    return this.json(`/v1/sessions/${id}/trajectory`);
  }

  // Response audio is played straight from this URL. Never fetch the
  // bytes to transcode or repackage them; the server's WAV is final.
  audioUrl(ref: string): string {
    return `${this.base}/v1/audio/${ref}`;
  }

  liveUrl(id: string): string {
    const path = `/v1/sessions/${id}/live`;
    if (this.base) {
      return this.base.replace(/^http/, 'ws') + path;
    }
    const proto = location.protocol === 'https:' ? 'wss:' : 'ws:';
    return `${proto}//${location.host}${path}`;
  }
}
