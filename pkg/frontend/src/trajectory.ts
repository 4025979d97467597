// Emotion trajectory chart. One line per category over user turns,
// drawn as plain SVG. Points arrive either from GET /trajectory or,
// on a live session, appended from WS emotion events.

import { EMOTION_LABELS, EmotionPayload, TrajectoryPoint } from './types';

const W = 640;
const H = 240;
const PAD = { left: 36, right: 14, top: 14, bottom: 26 };

const SVG_NS = 'http://www.w3.org/2000/svg';

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

export class TrajectoryChart {
  private points: TrajectoryPoint[] = [];
  private tooltip: HTMLElement;

  constructor(private root: HTMLElement) {
    this.tooltip = document.createElement('div');
    this.tooltip.className = 'chart-tooltip';
    this.tooltip.hidden = true;
    this.render();
  }

  get pointCount(): number {
    return this.points.length;
  }

  setPoints(points: TrajectoryPoint[]): void {
    this.points = points.slice();
    this.render();
  }

  /** Append one live point from a WS emotion event. */
  appendLive(emotion: EmotionPayload): void {
    const last = this.points[this.points.length - 1];
    this.points.push({
      turn_index: last ? last.turn_index + 2 : 0,
      timestamp: '',
      text: '',
      emotion,
    });
    this.render();
  }

  private x(i: number): number {
    const span = W - PAD.left - PAD.right;
    if (this.points.length <= 1) return PAD.left + span / 2;
    return PAD.left + (span * i) / (this.points.length - 1);
  }

  private y(p: number): number {
    const span = H - PAD.top - PAD.bottom;
    return PAD.top + span * (1 - p);
  }

  private render(): void {
    this.root.innerHTML = '';
    this.root.appendChild(this.tooltip);
    this.tooltip.hidden = true;

    if (this.points.length === 0) {
      const empty = document.createElement('div');
      empty.className = 'chart-empty';
      empty.textContent = 'No turns yet. The emotion trajectory appears after your first turn.';
      this.root.appendChild(empty);
      return;
    }

    const svg = svgEl('svg', {
      viewBox: `0 0 ${W} ${H}`,
      class: 'trajectory-svg',
      role: 'img',
    });

    // gridlines at p = 0, 0.5, 1
    for (const p of [0, 0.5, 1]) {
      svg.appendChild(
        svgEl('line', {
          x1: String(PAD.left),
          x2: String(W - PAD.right),
          y1: String(this.y(p)),
          y2: String(this.y(p)),
          class: 'grid',
        }),
      );
      const label = svgEl('text', {
        x: String(PAD.left - 6),
        y: String(this.y(p) + 4),
        class: 'axis-label',
        'text-anchor': 'end',
      });
      label.textContent = p.toFixed(1);
      svg.appendChild(label);
    }

    for (const label of EMOTION_LABELS) {
      const coords = this.points
        .map((pt, i) => `${this.x(i)},${this.y(pt.emotion.probabilities[label] ?? 0)}`)
        .join(' ');
      svg.appendChild(
        svgEl('polyline', {
          points: coords,
          class: `series series-${label}`,
          fill: 'none',
          'data-label': label,
        }),
      );
    }

    this.points.forEach((pt, i) => {
      const tick = svgEl('text', {
        x: String(this.x(i)),
        y: String(H - 8),
        class: 'axis-label',
        'text-anchor': 'middle',
      });
      tick.textContent = String(pt.turn_index);
      svg.appendChild(tick);

      // hover target per turn; reveals the turn's text
      const hit = svgEl('circle', {
        cx: String(this.x(i)),
        cy: String(this.y(pt.emotion.probabilities[pt.emotion.dominant] ?? 0)),
        r: '6',
        class: 'chart-point',
        'data-index': String(i),
      });
      hit.addEventListener('mouseenter', () => this.showTooltip(pt, i));
      hit.addEventListener('mouseleave', () => {
        this.tooltip.hidden = true;
      });
      svg.appendChild(hit);
    });

    this.root.appendChild(svg);

    const legend = document.createElement('div');
    legend.className = 'chart-legend';
    for (const label of EMOTION_LABELS) {
      const item = document.createElement('span');
      item.className = `legend-item legend-${label}`;
      item.textContent = label.replace('_', '/');
      legend.appendChild(item);
    }
    this.root.appendChild(legend);
  }

  private showTooltip(pt: TrajectoryPoint, i: number): void {
    const pct = Math.round(pt.emotion.confidence * 100);
    this.tooltip.textContent = pt.text
      ? `turn ${pt.turn_index}: "${pt.text}" (${pt.emotion.dominant} ${pct}%)`
      : `turn ${pt.turn_index}: ${pt.emotion.dominant} ${pct}%`;
    this.tooltip.style.left = `${(this.x(i) / W) * 100}%`;
    this.tooltip.hidden = false;
  }
}
