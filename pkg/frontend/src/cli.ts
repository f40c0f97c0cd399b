#!/usr/bin/env node
// Batch figure commands for solver artifacts:
//   plot1d  --input a.dat [--input b.dat ...] [--label name ...] [--zoom x0,x1] [--out fig.svg]
//   plot2d  --input sol2d.dat [--scale N] [--out fig.png]
//   regions --input regions.dat --direction x|y [--solution sol2d.dat] [--scale N] [--out fig.png]
// Without --out the file name is derived from a hash of the plot spec.

import { plot1d } from './plot1d.js';
import { plot2d, plotRegions } from './plot2d.js';
import { Plot1dSpec, Plot2dSpec, RegionsSpec } from './spec.js';

function collectArgs(argv: string[]): Map<string, string[]> {
  const out = new Map<string, string[]>();
  for (let i = 0; i < argv.length; i++) {
    if (!argv[i].startsWith('--')) throw new Error(`unexpected argument ${argv[i]}`);
    const key = argv[i].slice(2);
    const val = argv[i + 1];
    if (val === undefined || val.startsWith('--')) throw new Error(`--${key} needs a value`);
    out.set(key, [...(out.get(key) ?? []), val]);
    i++;
  }
  return out;
}

function one(args: Map<string, string[]>, key: string): string | undefined {
  const v = args.get(key);
  if (v && v.length > 1) throw new Error(`--${key} given more than once`);
  return v?.[0];
}

export function main(argv: string[]): number {
  const [cmd, ...rest] = argv;
  try {
    const args = collectArgs(rest);
    if (cmd === 'plot1d') {
      const spec: Plot1dSpec = {
        kind: 'plot1d',
        inputs: args.get('input') ?? [],
        labels: args.get('label'),
        out: one(args, 'out'),
      };
      const zoom = one(args, 'zoom');
      if (zoom) {
        const [a, b] = zoom.split(',').map(Number);
        spec.zoom = [a, b];
      }
      console.log(plot1d(spec));
      return 0;
    }
    if (cmd === 'plot2d') {
      const spec: Plot2dSpec = {
        kind: 'plot2d',
        input: one(args, 'input') ?? '',
        out: one(args, 'out'),
      };
      const scale = one(args, 'scale');
      if (scale) spec.scale = Number(scale);
      console.log(plot2d(spec));
      return 0;
    }
    if (cmd === 'regions') {
      const dir = one(args, 'direction');
      if (dir !== 'x' && dir !== 'y') throw new Error('--direction must be x or y');
      const spec: RegionsSpec = {
        kind: 'regions',
        input: one(args, 'input') ?? '',
        direction: dir,
        solution: one(args, 'solution'),
        out: one(args, 'out'),
      };
      const scale = one(args, 'scale');
      if (scale) spec.scale = Number(scale);
      console.log(plotRegions(spec));
      return 0;
    }
    console.error(`unknown command ${cmd}; use plot1d | plot2d | regions`);
    return 2;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

import { pathToFileURL } from 'node:url';

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exitCode = main(process.argv.slice(2));
}
