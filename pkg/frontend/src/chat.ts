// Chat transcript pane. User rows carry the dominant-emotion badge;
// the full distribution lives in the trajectory chart, not here.

import type { EmotionPayload } from './types';

export function emotionBadge(emotion: EmotionPayload): HTMLElement {
  const badge = document.createElement('span');
  badge.className = `badge badge-${emotion.dominant}`;
  const pct = Math.round(emotion.confidence * 100);
  badge.textContent = `${emotion.dominant.replace('_', '/')} ${pct}%`;
  badge.title = `dominant emotion, confidence ${pct}%`;
  return badge;
}

export class ChatPane {
  private list: HTMLElement;
  private partialRow: HTMLElement | null = null;

  constructor(
    root: HTMLElement,
    private audioUrl: (ref: string) => string,
    private onPlayState?: (playing: boolean) => void,
  ) {
    this.list = document.createElement('div');
    this.list.className = 'chat-list';
    root.appendChild(this.list);
  }

  get rows(): HTMLElement[] {
    return Array.from(this.list.querySelectorAll('.turn'));
  }

  addUserTurn(text: string, emotion: EmotionPayload): HTMLElement {
    this.clearPartial();
    const row = document.createElement('div');
    row.className = 'turn turn-user';
    const bubble = document.createElement('div');
    bubble.className = 'bubble';
    bubble.textContent = text;
    row.appendChild(bubble);
    row.appendChild(emotionBadge(emotion));
    this.list.appendChild(row);
    this.scrollDown();
    return row;
  }

  addSystemTurn(
    text: string,
    audioRef: string | null,
    usedFallback = false,
  ): HTMLElement {
    const row = document.createElement('div');
    row.className = 'turn turn-system';
    // the response text doubles as the caption for the played audio,
    // so it is always rendered
    const bubble = document.createElement('div');
    bubble.className = 'bubble';
    bubble.textContent = text;
    row.appendChild(bubble);
    if (usedFallback) {
      const note = document.createElement('span');
      note.className = 'fallback-note';
      note.textContent = 'scripted reply';
      row.appendChild(note);
    }
    if (audioRef) {
      // src points at the server WAV as delivered; no decoding or
      // re-encoding on this side, the element streams it directly
      const audio = document.createElement('audio');
      audio.controls = true;
      audio.src = this.audioUrl(audioRef);
      audio.addEventListener('play', () => this.onPlayState?.(true));
      audio.addEventListener('ended', () => this.onPlayState?.(false));
      audio.addEventListener('pause', () => this.onPlayState?.(false));
      row.appendChild(audio);
      try {
        void audio.play()?.catch?.(() => {
          // autoplay may be blocked; the controls stay available
        });
      } catch {
        // no playback backend (test DOM)
      }
    }
    this.list.appendChild(row);
    this.scrollDown();
    return row;
  }

  showPartial(text: string): void {
    if (!this.partialRow) {
      this.partialRow = document.createElement('div');
      this.partialRow.className = 'turn turn-partial';
      this.list.appendChild(this.partialRow);
    }
    this.partialRow.textContent = text;
    this.scrollDown();
  }

  clearPartial(): void {
    this.partialRow?.remove();
    this.partialRow = null;
  }

  private scrollDown(): void {
    this.list.scrollTop = this.list.scrollHeight;
  }
}
