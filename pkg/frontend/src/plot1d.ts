// 1-D density overlays as standalone SVG, with an optional zoom inset.

import { writeFileSync } from 'node:fs';
import { basename } from 'node:path';

import { CURVE_COLORS } from './colors.js';
import { parseSolution, Solution, xColumn, ParseError } from './formats.js';
import { Plot1dSpec, outputName } from './spec.js';

const W = 860;
const H = 520;
const M = { left: 64, right: 20, top: 28, bottom: 44 };

function fmtTick(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
}

function ticks(lo: number, hi: number, n = 6): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const mult = [1, 2, 5, 10].find((m) => span / (step * m) <= n) ?? 10;
  const s = step * mult;
  const first = Math.ceil(lo / s) * s;
  const out: number[] = [];
  for (let v = first; v <= hi + 1e-12 * span; v += s) out.push(v);
  return out;
}

interface Frame {
  x0: number;
  y0: number;
  w: number;
  h: number;
  xlo: number;
  xhi: number;
  ylo: number;
  yhi: number;
}

function polyline(frame: Frame, xs: Float64Array, ys: Float64Array, color: string, width: number): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    if (xs[i] < frame.xlo || xs[i] > frame.xhi) continue;
    const px = frame.x0 + ((xs[i] - frame.xlo) / (frame.xhi - frame.xlo)) * frame.w;
    const py = frame.y0 + frame.h - ((ys[i] - frame.ylo) / (frame.yhi - frame.ylo)) * frame.h;
    pts.push(`${px.toFixed(2)},${py.toFixed(2)}`);
  }
  return `<polyline fill="none" stroke="${color}" stroke-width="${width}" points="${pts.join(' ')}"/>`;
}

export function renderPlot1d(spec: Plot1dSpec): { svg: string; out: string } {
  if (!spec.inputs.length) throw new ParseError('plot1d needs at least one input file');
  const sols: Solution[] = spec.inputs.map(parseSolution);
  const labels = spec.labels ?? spec.inputs.map((p) => basename(p).replace(/\.dat$/, ''));

  const xlo = Math.min(...sols.map((s) => xColumn(s)[0]));
  const xhi = Math.max(...sols.map((s) => xColumn(s)[xColumn(s).length - 1]));
  if (spec.zoom) {
    const [z0, z1] = spec.zoom;
    if (!(z0 < z1) || z0 < xlo - 1e-12 || z1 > xhi + 1e-12) {
      throw new ParseError(`zoom window [${z0}, ${z1}] outside the domain [${xlo}, ${xhi}]`);
    }
  }
  const rhos = sols.map((s) => {
    const r = s.data.get('rho');
    if (!r) throw new ParseError('solution has no rho column');
    return r;
  });
  let ylo = Infinity;
  let yhi = -Infinity;
  for (const r of rhos) {
    for (const v of r) {
      if (v < ylo) ylo = v;
      if (v > yhi) yhi = v;
    }
  }
  const pad = 0.05 * (yhi - ylo || 1);
  const frame: Frame = {
    x0: M.left, y0: M.top, w: W - M.left - M.right, h: H - M.top - M.bottom,
    xlo, xhi, ylo: ylo - pad, yhi: yhi + pad,
  };

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}">`);
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(`<rect x="${frame.x0}" y="${frame.y0}" width="${frame.w}" height="${frame.h}" fill="none" stroke="#333"/>`);
  for (const tx of ticks(frame.xlo, frame.xhi)) {
    const px = frame.x0 + ((tx - frame.xlo) / (frame.xhi - frame.xlo)) * frame.w;
    parts.push(`<line x1="${px}" y1="${frame.y0 + frame.h}" x2="${px}" y2="${frame.y0 + frame.h + 5}" stroke="#333"/>`);
    parts.push(`<text x="${px}" y="${frame.y0 + frame.h + 20}" font-size="12" text-anchor="middle">${fmtTick(tx)}</text>`);
  }
  for (const ty of ticks(frame.ylo, frame.yhi)) {
    const py = frame.y0 + frame.h - ((ty - frame.ylo) / (frame.yhi - frame.ylo)) * frame.h;
    parts.push(`<line x1="${frame.x0 - 5}" y1="${py}" x2="${frame.x0}" y2="${py}" stroke="#333"/>`);
    parts.push(`<text x="${frame.x0 - 9}" y="${py + 4}" font-size="12" text-anchor="end">${fmtTick(ty)}</text>`);
  }
  parts.push(`<text x="${frame.x0 + frame.w / 2}" y="${H - 8}" font-size="13" text-anchor="middle">x</text>`);
  parts.push(`<text x="16" y="${frame.y0 + frame.h / 2}" font-size="13" text-anchor="middle" transform="rotate(-90 16 ${frame.y0 + frame.h / 2})">density</text>`);
  const title = `${sols[0].meta.caseName}  t=${sols[0].meta.t}`;
  parts.push(`<text x="${frame.x0 + frame.w / 2}" y="18" font-size="14" text-anchor="middle">${title}</text>`);

  sols.forEach((s, i) => {
    parts.push(polyline(frame, xColumn(s), rhos[i], CURVE_COLORS[i % CURVE_COLORS.length], 1.6));
  });

  labels.forEach((lab, i) => {
    const ly = frame.y0 + 16 + 18 * i;
    parts.push(`<line x1="${frame.x0 + 10}" y1="${ly - 4}" x2="${frame.x0 + 38}" y2="${ly - 4}" stroke="${CURVE_COLORS[i % CURVE_COLORS.length]}" stroke-width="2"/>`);
    parts.push(`<text x="${frame.x0 + 44}" y="${ly}" font-size="12">${lab}</text>`);
  });

  if (spec.zoom) {
    const [z0, z1] = spec.zoom;
    let zlo = Infinity;
    let zhi = -Infinity;
    sols.forEach((s, i) => {
      const xs = xColumn(s);
      for (let k = 0; k < xs.length; k++) {
        if (xs[k] >= z0 && xs[k] <= z1) {
          zlo = Math.min(zlo, rhos[i][k]);
          zhi = Math.max(zhi, rhos[i][k]);
        }
      }
    });
    const zpad = 0.06 * (zhi - zlo || 1);
    const inset: Frame = {
      x0: frame.x0 + frame.w - 0.42 * frame.w - 8,
      y0: frame.y0 + 10,
      w: 0.42 * frame.w,
      h: 0.40 * frame.h,
      xlo: z0, xhi: z1, ylo: zlo - zpad, yhi: zhi + zpad,
    };
    parts.push(`<rect x="${inset.x0}" y="${inset.y0}" width="${inset.w}" height="${inset.h}" fill="white" stroke="#666"/>`);
    sols.forEach((s, i) => {
      parts.push(polyline(inset, xColumn(s), rhos[i], CURVE_COLORS[i % CURVE_COLORS.length], 1.2));
    });
    parts.push(`<text x="${inset.x0 + inset.w / 2}" y="${inset.y0 + inset.h + 14}" font-size="11" text-anchor="middle">zoom x in [${z0}, ${z1}]</text>`);
  }

  parts.push('</svg>');
  const svg = parts.join('\n');
  const out = outputName(spec, 'svg');
  return { svg, out };
}

export function plot1d(spec: Plot1dSpec): string {
  const { svg, out } = renderPlot1d(spec);
  writeFileSync(out, svg);
  return out;
}
