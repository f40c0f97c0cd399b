// Plot specifications and deterministic output naming.

import { createHash } from 'node:crypto';

export interface Plot1dSpec {
  kind: 'plot1d';
  inputs: string[];
  labels?: string[];
  /** optional zoom inset window [x0, x1] */
  zoom?: [number, number];
  out?: string;
}

export interface Plot2dSpec {
  kind: 'plot2d';
  input: string;
  /** pixels per cell */
  scale?: number;
  out?: string;
}

export interface RegionsSpec {
  kind: 'regions';
  input: string;
  direction: 'x' | 'y';
  /** solution file to cross-check the mesh against (optional) */
  solution?: string;
  scale?: number;
  out?: string;
}

export type PlotSpec = Plot1dSpec | Plot2dSpec | RegionsSpec;

/** Stable output name: content-addressed by the canonicalized spec. */
export function outputName(spec: PlotSpec, ext: string): string {
  if (spec.out) return spec.out;
  const canon = JSON.stringify(spec, Object.keys(spec as object).sort());
  const digest = createHash('sha256').update(canon).digest('hex').slice(0, 12);
  return `figure-${spec.kind}-${digest}.${ext}`;
}
