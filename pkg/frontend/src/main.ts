// App wiring. initApp binds to the ids in index.html and returns the
// handles the tests drive; boot.ts calls it with a same-origin client.

import { ApiClient, ApiError } from './api';
import { ChatPane } from './chat';
import { ENROLL_SENTENCES, EnrollmentWizard } from './enroll';
import { MicRecorder } from './recorder';
import { showToast } from './toast';
import { TrajectoryChart } from './trajectory';
import { carrierClip } from './wav';
import { LiveSocket } from './ws';
import type { LiveEvent, LiveStatus, SessionInfo, TurnOutcome } from './types';

export interface AppHandles {
  api: ApiClient;
  chat: ChatPane;
  chart: TrajectoryChart;
  wizard: EnrollmentWizard;
  liveEvents: LiveEvent[];
  session(): SessionInfo | null;
  status(): LiveStatus;
  startSession(userName?: string): Promise<SessionInfo>;
  submitClip(wav: ArrayBuffer, transcriptHint?: string): Promise<TurnOutcome | null>;
  sendText(text: string): Promise<TurnOutcome | null>;
  setTextOnly(on: boolean): void;
  reloadTrajectory(): Promise<void>;
  closeLive(): void;
}

function mustFind<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`markup is missing #${id}`);
  return el as T;
}

export function initApp(api: ApiClient): AppHandles {
  const startForm = mustFind<HTMLFormElement>('start-form');
  const nameInput = mustFind<HTMLInputElement>('user-name');
  const meta = mustFind('session-meta');
  const statusEl = mustFind('status');
  const mainEl = mustFind('main-ui');
  const chatRoot = mustFind('chat');
  const recordBtn = mustFind<HTMLButtonElement>('record-btn');
  const textForm = mustFind<HTMLFormElement>('text-form');
  const textInput = mustFind<HTMLInputElement>('text-input');
  const textOnlyBox = mustFind<HTMLInputElement>('text-only');
  const enrollOpen = mustFind<HTMLButtonElement>('enroll-open');
  const wizardRoot = mustFind('wizard');
  const chartRoot = mustFind('chart');
  const chartReload = mustFind<HTMLButtonElement>('chart-reload');

  let session: SessionInfo | null = null;
  let status: LiveStatus = 'idle';
  let inFlight = false;
  let textOnly = false;
  let live: LiveSocket | null = null;
  const liveEvents: LiveEvent[] = [];
  const recorder = new MicRecorder();

  function setStatus(next: LiveStatus): void {
    status = next;
    statusEl.textContent = next;
    statusEl.dataset.state = next;
  }

  function renderMeta(): void {
    if (!session) {
      meta.textContent = '';
      return;
    }
    const voice = session.enrolled ? 'voice ready' : 'text-only until enrolled';
    meta.textContent = `${session.user_name} | session ${session.session_id.slice(0, 8)} | ${voice}`;
  }

  const chart = new TrajectoryChart(chartRoot);
  const chat = new ChatPane(
    chatRoot,
    (ref) => api.audioUrl(ref),
    (playing) => setStatus(playing ? 'playing' : 'idle'),
  );

  function handleLive(event: LiveEvent): void {
    liveEvents.push(event);
    if (event.type === 'partial_transcript') {
      chat.showPartial(event.text);
    } else if (event.type === 'emotion') {
      chart.appendLive(event.emotion);
    }
  }

  async function recordTimedTake(ms: number): Promise<ArrayBuffer> {
    await recorder.start();
    setStatus('recording');
    return new Promise((resolve, reject) => {
      setTimeout(() => {
        try {
          resolve(recorder.stop());
        } catch (err) {
          reject(err);
        } finally {
          setStatus('idle');
        }
      }, ms);
    });
  }

  const wizard = new EnrollmentWizard(wizardRoot, {
    api,
    sessionId: () => session?.session_id ?? '',
    recordClip: () => recordTimedTake(4000),
    onEnrolled: (info) => {
      session = info;
      renderMeta();
      showToast(`Voice profile ready (${ENROLL_SENTENCES.length} samples).`);
    },
  });

  async function startSession(userName?: string): Promise<SessionInfo> {
    const name = (userName ?? nameInput.value).trim();
    session = await api.createSession(name ? { user_name: name } : {});
    renderMeta();
    startForm.hidden = true;
    mainEl.hidden = false;
    setStatus('idle');
    live = new LiveSocket(api.liveUrl(session.session_id), handleLive);
    live.connect();
    return session;
  }

  async function submitClip(
    wav: ArrayBuffer,
    transcriptHint?: string,
  ): Promise<TurnOutcome | null> {
    if (!session) {
      showToast('Start a session first.', 'error');
      return null;
    }
    if (inFlight) {
      showToast('Still working on the previous turn.', 'info');
      return null;
    }
    inFlight = true;
    recordBtn.disabled = true;
    setStatus('processing');
    try {
      const outcome = await api.turn(session.session_id, wav, transcriptHint);
      chat.addUserTurn(outcome.transcript, outcome.emotion);
      chat.addSystemTurn(
        outcome.response_text,
        outcome.response_audio_ref,
        outcome.used_fallback,
      );
      session.turn_count = outcome.turn_index + 2;
      renderMeta();
      if (!outcome.response_audio_ref) setStatus('idle');
      return outcome;
    } catch (err) {
      chat.clearPartial();
      setStatus('idle');
      if (err instanceof ApiError) {
        if (err.code === 'BUSY') {
          // server is still on the previous turn; nothing is lost,
          // recording stays available
          showToast('The companion is still answering. Try again in a moment.');
        } else {
          showToast(`${err.code}: ${err.message}`, 'error');
        }
        return null;
      }
      throw err;
    } finally {
      inFlight = false;
      recordBtn.disabled = textOnly;
    }
  }

  function sendText(text: string): Promise<TurnOutcome | null> {
    const trimmed = text.trim();
    if (!trimmed) return Promise.resolve(null);
    return submitClip(carrierClip(), trimmed);
  }

  function setTextOnly(on: boolean): void {
    textOnly = on;
    textOnlyBox.checked = on;
    recordBtn.disabled = on;
    if (on && recorder.active) {
      recorder.cancel();
      setStatus('idle');
    }
  }

  async function reloadTrajectory(): Promise<void> {
    if (!session) return;
    const doc = await api.trajectory(session.session_id);
    chart.setPoints(doc.trajectory);
  }

  // ---- event wiring ----

  startForm.addEventListener('submit', (e) => {
    e.preventDefault();
    startSession().catch((err) => showToast(String(err), 'error'));
  });

  recordBtn.addEventListener('click', () => {
    if (recorder.active) {
      recordBtn.textContent = 'Record';
      let wav: ArrayBuffer;
      try {
        wav = recorder.stop();
      } catch (err) {
        setStatus('idle');
        showToast(String(err), 'error');
        return;
      }
      void submitClip(wav);
    } else {
      recorder
        .start()
        .then(() => {
          setStatus('recording');
          recordBtn.textContent = 'Stop';
        })
        .catch((err) => {
          // no microphone, fall back to typing
          showToast('Microphone unavailable: ' + (err as Error).message, 'error');
          setTextOnly(true);
        });
    }
  });

  textForm.addEventListener('submit', (e) => {
    e.preventDefault();
    const text = textInput.value;
    textInput.value = '';
    void sendText(text);
  });

  textOnlyBox.addEventListener('change', () => setTextOnly(textOnlyBox.checked));
  enrollOpen.addEventListener('click', () => wizard.open());
  chartReload.addEventListener('click', () => {
    reloadTrajectory().catch((err) => showToast(String(err), 'error'));
  });

  setStatus('idle');

  return {
    api,
    chat,
    chart,
    wizard,
    liveEvents,
    session: () => session,
    status: () => status,
    startSession,
    submitClip,
    sendText,
    setTextOnly,
    reloadTrajectory,
    closeLive: () => live?.close(),
  };
}
