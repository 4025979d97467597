// Microphone capture straight to Float32 PCM. A ScriptProcessorNode is
// old API but it is the one path that hands us raw samples everywhere;
// MediaRecorder would yield webm/opus and the server only takes WAV.

import { chunksToWav } from './wav';

export class MicRecorder {
  private ctx: AudioContext | null = null;
  private stream: MediaStream | null = null;
  private proc: ScriptProcessorNode | null = null;
  private source: MediaStreamAudioSourceNode | null = null;
  private chunks: Float32Array[] = [];

  get active(): boolean {
    return this.ctx !== null;
  }

  async start(): Promise<void> {
    if (this.ctx) return;
    this.stream = await navigator.mediaDevices.getUserMedia({
      audio: { channelCount: 1, echoCancellation: true, noiseSuppression: true },
    });
    this.ctx = new AudioContext();
    this.chunks = [];
    this.source = this.ctx.createMediaStreamSource(this.stream);
    this.proc = this.ctx.createScriptProcessor(4096, 1, 1);
    this.proc.onaudioprocess = (e) => {
      // the buffer is reused by the audio thread, copy it out
      this.chunks.push(new Float32Array(e.inputBuffer.getChannelData(0)));
    };
    this.source.connect(this.proc);
    this.proc.connect(this.ctx.destination);
  }

  private teardown(): number {
    const rate = this.ctx ? this.ctx.sampleRate : 0;
    this.proc?.disconnect();
    this.source?.disconnect();
    this.stream?.getTracks().forEach((t) => t.stop());
    void this.ctx?.close();
    this.ctx = null;
    this.stream = null;
    this.proc = null;
    this.source = null;
    return rate;
  }

  /** Stop capturing and return the take as WAV PCM16 mono 16 kHz. */
  stop(): ArrayBuffer {
    if (!this.ctx) throw new Error('recorder is not running');
    const rate = this.teardown();
    const chunks = this.chunks;
    this.chunks = [];
    return chunksToWav(chunks, rate);
  }

  cancel(): void {
    if (!this.ctx) return;
    this.teardown();
    this.chunks = [];
  }
}
