// Enrollment wizard. The user reads three displayed sentences, each
// take is validated by the server, and rejected takes can be re-recorded
// one by one. Closing the wizard early leaves the session text-only.

import { ApiClient, ApiError, EnrollUpload } from './api';
import { showToast } from './toast';
import type { EnrollResult, SessionInfo } from './types';

export const ENROLL_SENTENCES = [
  'My own voice can be a steady companion when the day gets loud.',
  'I am reading this sentence calmly so my voice can be learned well.',
  'Small steps still count, and I can take one more step today.',
];

const WARNING_TEXT: Record<string, string> = {
  TooShort: 'Take is under a second. Read the whole sentence.',
  TooLong: 'Take is over thirty seconds. Keep it to the sentence.',
  TooQuiet: 'Too quiet. Move closer to the microphone.',
  EmptyTranscript: 'No transcript was attached to this take.',
  InconsistentTranscript: 'Take length does not match the sentence.',
  Unreadable: 'The clip could not be decoded. Record it again.',
};

export interface WizardDeps {
  api: ApiClient;
  sessionId: () => string;
  recordClip: () => Promise<ArrayBuffer>;
  onEnrolled: (info: SessionInfo) => void;
}

interface Slot {
  bytes: ArrayBuffer | null;
  row: HTMLElement;
  status: HTMLElement;
  error: HTMLElement;
  button: HTMLButtonElement;
}

export class EnrollmentWizard {
  private slots: Slot[] = [];
  private submitBtn!: HTMLButtonElement;
  private confirmEl!: HTMLElement;

  constructor(
    private root: HTMLElement,
    private deps: WizardDeps,
  ) {
    this.root.hidden = true;
  }

  get opened(): boolean {
    return !this.root.hidden;
  }

  open(): void {
    this.root.innerHTML = '';
    this.slots = [];
    this.root.hidden = false;

    const heading = document.createElement('h2');
    heading.textContent = 'Set up your voice';
    const intro = document.createElement('p');
    intro.className = 'wizard-intro';
    intro.textContent =
      'Read each sentence aloud in a quiet room. The profile is built from your own voice only and stays on this server.';
    this.root.append(heading, intro);

    ENROLL_SENTENCES.forEach((sentence, index) => {
      const row = document.createElement('div');
      row.className = 'wizard-row';
      row.dataset.index = String(index);

      const text = document.createElement('div');
      text.className = 'wizard-sentence';
      text.textContent = `${index + 1}. ${sentence}`;

      const button = document.createElement('button');
      button.type = 'button';
      button.className = 'wizard-record';
      button.textContent = 'Record';
      button.addEventListener('click', () => void this.recordInto(index));

      const status = document.createElement('span');
      status.className = 'wizard-status';
      status.textContent = 'not recorded';

      const error = document.createElement('div');
      error.className = 'wizard-error';

      row.append(text, button, status, error);
      this.root.appendChild(row);
      this.slots.push({ bytes: null, row, status, error, button });
    });

    const controls = document.createElement('div');
    controls.className = 'wizard-controls';
    this.submitBtn = document.createElement('button');
    this.submitBtn.type = 'button';
    this.submitBtn.className = 'wizard-submit';
    this.submitBtn.textContent = 'Create voice profile';
    this.submitBtn.disabled = true;
    this.submitBtn.addEventListener('click', () => void this.submit());

    const cancel = document.createElement('button');
    cancel.type = 'button';
    cancel.className = 'wizard-cancel';
    cancel.textContent = 'Not now';
    cancel.addEventListener('click', () => this.abandon());

    controls.append(this.submitBtn, cancel);
    this.confirmEl = document.createElement('div');
    this.confirmEl.className = 'wizard-confirm';
    this.root.append(controls, this.confirmEl);
  }

  /** Attach a finished take to a slot (recorder callback and test seam). */
  attachSample(index: number, bytes: ArrayBuffer): void {
    const slot = this.slots[index];
    if (!slot) return;
    slot.bytes = bytes;
    slot.status.textContent = 'recorded';
    slot.error.textContent = '';
    slot.button.textContent = 'Re-record';
    this.submitBtn.disabled = this.slots.some((s) => s.bytes === null);
  }

  private async recordInto(index: number): Promise<void> {
    const slot = this.slots[index];
    slot.status.textContent = 'recording...';
    try {
      this.attachSample(index, await this.deps.recordClip());
    } catch (err) {
      slot.status.textContent = 'not recorded';
      showToast('Microphone unavailable: ' + (err as Error).message, 'error');
    }
  }

  async submit(): Promise<EnrollResult | null> {
    if (this.slots.some((s) => s.bytes === null)) return null;
    const uploads: EnrollUpload[] = this.slots.map((s, i) => ({
      name: `sample-${i}.wav`,
      bytes: s.bytes as ArrayBuffer,
      transcript: ENROLL_SENTENCES[i],
    }));
    this.submitBtn.disabled = true;
    let result: EnrollResult;
    try {
      result = await this.deps.api.enroll(this.deps.sessionId(), uploads);
    } catch (err) {
      this.submitBtn.disabled = false;
      if (err instanceof ApiError) {
        const note =
          err.code === 'NO_VALID_SAMPLES'
            ? 'None of the takes were usable. Re-record and try again.'
            : err.message;
        this.confirmEl.textContent = note;
        return null;
      }
      throw err;
    }

    for (const warning of result.warnings) {
      const slot = this.slots[warning.index];
      if (!slot) continue;
      slot.bytes = null;
      slot.status.textContent = 'rejected';
      slot.error.textContent = WARNING_TEXT[warning.code] ?? warning.code;
      slot.button.textContent = 'Re-record';
    }

    const info = await this.deps.api.session(this.deps.sessionId());
    if (info.enrolled && result.warnings.length === 0) {
      this.confirmEl.textContent = `Voice profile ready (${result.profile.sample_count} samples).`;
      this.deps.onEnrolled(info);
      return result;
    }
    this.submitBtn.disabled = this.slots.some((s) => s.bytes === null);
    if (result.warnings.length > 0) {
      this.confirmEl.textContent = 'Some takes were rejected. Fix them and submit again.';
    }
    return result;
  }

  /** Close without a profile; the session keeps working text-only. */
  abandon(): void {
    this.root.hidden = true;
    this.root.innerHTML = '';
    this.slots = [];
  }
}
