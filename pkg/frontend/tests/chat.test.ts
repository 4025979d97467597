import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { ChatPane, emotionBadge } from '../src/chat';
import { showToast } from '../src/toast';
import { makeEmotion } from './helpers';

let root: HTMLElement;
let pane: ChatPane;
const played: boolean[] = [];

beforeEach(() => {
  document.body.innerHTML = '<div id="chat"></div>';
  root = document.getElementById('chat') as HTMLElement;
  played.length = 0;
  pane = new ChatPane(root, (ref) => `/v1/audio/${ref}`, (p) => played.push(p));
});

afterEach(() => {
  vi.useRealTimers();
});

describe('emotionBadge', () => {
  it('shows only the dominant label and confidence', () => {
    const badge = emotionBadge(makeEmotion('shame_regret', 0.62));
    expect(badge.textContent).toBe('shame/regret 62%');
    expect(badge.className).toBe('badge badge-shame_regret');
    // the distribution itself never appears on the badge
    expect(badge.textContent).not.toContain('anger');
  });
});

describe('ChatPane', () => {
  it('renders a user turn with bubble text and badge', () => {
    const row = pane.addUserTurn('i feel on edge', makeEmotion('anxiety', 0.8));
    expect(row.className).toBe('turn turn-user');
    expect(row.querySelector('.bubble')?.textContent).toBe('i feel on edge');
    expect(row.querySelector('.badge-anxiety')?.textContent).toBe('anxiety 80%');
    expect(pane.rows.length).toBe(1);
  });

  it('renders a system turn with caption and the audio element pointed at the server WAV', () => {
    const ref = 'c'.repeat(32);
    const row = pane.addSystemTurn('One breath at a time.', ref);
    const audio = row.querySelector('audio');
    expect(row.querySelector('.bubble')?.textContent).toBe('One breath at a time.');
    expect(audio).not.toBeNull();
    // exact server URL; the bytes are never transformed on this side
    expect(audio?.getAttribute('src')).toBe(`/v1/audio/${ref}`);
    expect(audio?.controls).toBe(true);
  });

  it('renders a text-only system turn without an audio element', () => {
    const row = pane.addSystemTurn('Text response only.', null);
    expect(row.querySelector('audio')).toBeNull();
    expect(row.querySelector('.bubble')?.textContent).toBe('Text response only.');
  });

  it('marks fallback replies', () => {
    const row = pane.addSystemTurn('Scripted fallback.', null, true);
    expect(row.querySelector('.fallback-note')?.textContent).toBe('scripted reply');
  });

  it('reports play state through the callback', () => {
    const row = pane.addSystemTurn('hello', 'd'.repeat(32));
    const audio = row.querySelector('audio') as HTMLAudioElement;
    audio.dispatchEvent(new Event('play'));
    audio.dispatchEvent(new Event('ended'));
    expect(played).toEqual([true, false]);
  });

  it('replaces and clears the partial transcript row', () => {
    pane.showPartial('i fee');
    pane.showPartial('i feel worri');
    expect(root.querySelectorAll('.turn-partial').length).toBe(1);
    expect(root.querySelector('.turn-partial')?.textContent).toBe('i feel worri');

    pane.addUserTurn('i feel worried', makeEmotion('anxiety'));
    expect(root.querySelector('.turn-partial')).toBeNull();
  });
});

describe('showToast', () => {
  it('stacks toasts without blocking and removes them after the ttl', () => {
    vi.useFakeTimers();
    const first = showToast('one');
    const second = showToast('two', 'error', 1000);
    const stack = document.getElementById('toasts');
    expect(stack?.children.length).toBe(2);
    expect(first.getAttribute('role')).toBe('status');
    expect(second.className).toBe('toast toast-error');
    // toasts never disable anything; there is no overlay element
    expect(document.querySelector('.overlay, [aria-modal]')).toBeNull();

    vi.advanceTimersByTime(1001);
    expect(stack?.contains(second)).toBe(false);
    expect(stack?.contains(first)).toBe(true);
    vi.advanceTimersByTime(4000);
    expect(stack?.contains(first)).toBe(false);
  });
});
