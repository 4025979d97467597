// Live event feed for one session.

import type { LiveEvent } from './types';

export type LiveHandler = (event: LiveEvent) => void;

export class LiveSocket {
  private ws: WebSocket | null = null;
  private lastFrame = '';

  constructor(
    private url: string,
    private handler: LiveHandler,
  ) {}

  connect(): void {
    if (this.ws) return;
    const ws = new WebSocket(this.url);
    ws.onmessage = (e) => {
      const frame = typeof e.data === 'string' ? e.data : '';
      if (!frame) return;
      // a reconnecting server may replay the last frame; consecutive
      // identical frames are dropped so handlers stay idempotent
      if (frame === this.lastFrame) return;
      this.lastFrame = frame;
      let event: LiveEvent;
      try {
        event = JSON.parse(frame) as LiveEvent;
      } catch {
        return;
      }
      this.handler(event);
    };
    ws.onclose = () => {
      if (this.ws === ws) this.ws = null;
    };
    this.ws = ws;
  }

  get connected(): boolean {
    return this.ws !== null && this.ws.readyState === WebSocket.OPEN;
  }

  close(): void {
    this.ws?.close();
    this.ws = null;
  }
}
