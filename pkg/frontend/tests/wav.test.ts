import { describe, expect, it } from 'vitest';

import {
  TARGET_RATE,
  carrierClip,
  chunksToWav,
  downmixToMono,
  encodeWavPcm16,
  resampleLinear,
  sineWav,
} from '../src/wav';

function view(buf: ArrayBuffer): DataView {
  return new DataView(buf);
}

function ascii(buf: ArrayBuffer, off: number, len: number): string {
  return String.fromCharCode(...new Uint8Array(buf, off, len));
}

function decodeSamples(buf: ArrayBuffer): Float32Array {
  const dv = view(buf);
  const n = dv.getUint32(40, true) / 2;
  const out = new Float32Array(n);
  for (let i = 0; i < n; i++) {
    out[i] = dv.getInt16(44 + i * 2, true) / 32767;
  }
  return out;
}

describe('encodeWavPcm16', () => {
  it('writes a valid RIFF header for 16 kHz mono PCM16', () => {
    const buf = encodeWavPcm16(new Float32Array([0, 0.5, -0.5]), 16000);
    const dv = view(buf);
    expect(ascii(buf, 0, 4)).toBe('RIFF');
    expect(ascii(buf, 8, 4)).toBe('WAVE');
    expect(ascii(buf, 12, 4)).toBe('fmt ');
    expect(ascii(buf, 36, 4)).toBe('data');
    expect(dv.getUint32(4, true)).toBe(buf.byteLength - 8);
    expect(dv.getUint16(20, true)).toBe(1); // PCM
    expect(dv.getUint16(22, true)).toBe(1); // mono
    expect(dv.getUint32(24, true)).toBe(16000);
    expect(dv.getUint32(28, true)).toBe(32000); // byte rate
    expect(dv.getUint16(34, true)).toBe(16); // bits per sample
    expect(dv.getUint32(40, true)).toBe(6); // 3 samples * 2 bytes
    expect(buf.byteLength).toBe(44 + 6);
  });

  it('round-trips sample values and clamps out-of-range input', () => {
    const buf = encodeWavPcm16(new Float32Array([0, 1, -1, 2.5, -7]), 8000);
    const dv = view(buf);
    expect(dv.getInt16(44, true)).toBe(0);
    expect(dv.getInt16(46, true)).toBe(32767);
    expect(dv.getInt16(48, true)).toBe(-32767);
    expect(dv.getInt16(50, true)).toBe(32767);
    expect(dv.getInt16(52, true)).toBe(-32767);
  });
});

describe('resampleLinear', () => {
  it('returns the input untouched at equal rates', () => {
    const src = new Float32Array([0.1, 0.2, 0.3]);
    expect(resampleLinear(src, 16000, 16000)).toBe(src);
  });

  it('halves the sample count from 32 kHz to 16 kHz', () => {
    const src = new Float32Array(3200);
    const out = resampleLinear(src, 32000, 16000);
    expect(out.length).toBe(1600);
  });

  it('preserves endpoints and a constant level', () => {
    const src = new Float32Array(800).fill(0.25);
    src[0] = -0.5;
    src[src.length - 1] = 0.5;
    const out = resampleLinear(src, 8000, 16000);
    expect(out[0]).toBeCloseTo(-0.5, 5);
    expect(out[out.length - 1]).toBeCloseTo(0.5, 5);
    expect(out[Math.floor(out.length / 2)]).toBeCloseTo(0.25, 5);
  });
});

describe('downmixToMono', () => {
  it('passes a single channel through', () => {
    const ch = new Float32Array([0.1, -0.1]);
    expect(downmixToMono([ch])).toBe(ch);
  });

  it('averages two channels', () => {
    const out = downmixToMono([new Float32Array([1, 0]), new Float32Array([0, 0.5])]);
    expect(out[0]).toBeCloseTo(0.5, 6);
    expect(out[1]).toBeCloseTo(0.25, 6);
  });
});

describe('chunksToWav', () => {
  it('concatenates capture chunks and resamples to the wire rate', () => {
    const chunk = new Float32Array(4800).fill(0.2); // 100 ms at 48 kHz
    const buf = chunksToWav([chunk, chunk], 48000);
    const dv = view(buf);
    expect(dv.getUint32(24, true)).toBe(TARGET_RATE);
    const samples = decodeSamples(buf);
    expect(samples.length).toBe(3200); // 200 ms at 16 kHz
    expect(samples[100]).toBeCloseTo(0.2, 2);
  });
});

describe('generated clips', () => {
  it('sineWav produces the requested duration at 16 kHz', () => {
    const buf = sineWav(1.8, 200, 0.3);
    const samples = decodeSamples(buf);
    expect(samples.length).toBe(Math.round(1.8 * TARGET_RATE));
    const peak = samples.reduce((m, s) => Math.max(m, Math.abs(s)), 0);
    expect(peak).toBeGreaterThan(0.28);
    expect(peak).toBeLessThanOrEqual(0.31);
  });

  it('carrierClip is quiet but not silent', () => {
    const samples = decodeSamples(carrierClip());
    const peak = samples.reduce((m, s) => Math.max(m, Math.abs(s)), 0);
    expect(peak).toBeGreaterThan(0.05);
    expect(peak).toBeLessThan(0.2);
  });
});
