// 2-D density pseudocolor panels and three-color region maps as PNG.

import { writeFileSync } from 'node:fs';

import { colormap, TAG_COLORS } from './colors.js';
import { parseRegions, parseSolution, ParseError } from './formats.js';
import { encodePng } from './png.js';
import { Plot2dSpec, RegionsSpec, outputName } from './spec.js';

function paint(width: number, height: number, scale: number,
               pixel: (i: number, j: number) => [number, number, number]): Uint8Array {
  const rgb = new Uint8Array(width * scale * height * scale * 3);
  const wpx = width * scale;
  for (let j = 0; j < height; j++) {
    for (let i = 0; i < width; i++) {
      const c = pixel(i, j);
      for (let dy = 0; dy < scale; dy++) {
        // scanlines run top to bottom; logical j runs bottom to top
        const py = (height - 1 - j) * scale + dy;
        for (let dx = 0; dx < scale; dx++) {
          const off = (py * wpx + i * scale + dx) * 3;
          rgb[off] = c[0];
          rgb[off + 1] = c[1];
          rgb[off + 2] = c[2];
        }
      }
    }
  }
  return rgb;
}

export function renderPlot2d(spec: Plot2dSpec): { rgb: Uint8Array; width: number; height: number; out: string } {
  const sol = parseSolution(spec.input);
  const { nx, ny } = sol.meta;
  if (!ny) throw new ParseError(`${spec.input}: not a 2-D solution (no ny in header)`);
  const rho = sol.data.get('rho');
  if (!rho) throw new ParseError('solution has no rho column');
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of rho) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const span = hi - lo || 1;
  const scale = spec.scale ?? Math.max(1, Math.floor(600 / Math.max(nx, ny)));
  // file order is row-major with x outer: cell (i, j) sits at i*ny + j
  const rgb = paint(nx, ny, scale, (i, j) => colormap((rho[i * ny + j] - lo) / span));
  return { rgb, width: nx * scale, height: ny * scale, out: outputName(spec, 'png') };
}

export function plot2d(spec: Plot2dSpec): string {
  const { rgb, width, height, out } = renderPlot2d(spec);
  writeFileSync(out, encodePng(width, height, rgb));
  return out;
}

export function renderRegions(spec: RegionsSpec): { rgb: Uint8Array; width: number; height: number; out: string } {
  const regions = parseRegions(spec.input);
  const grid = regions[spec.direction];
  if (!grid) throw new ParseError(`${spec.input}: no ${spec.direction}-direction rows`);
  const nj = grid.length;
  const nk = grid[0].length;
  if (spec.solution) {
    const sol = parseSolution(spec.solution);
    const wantJ = spec.direction === 'x' ? sol.meta.nx + 1 : sol.meta.nx;
    const wantK = spec.direction === 'x' ? (sol.meta.ny ?? 1) : (sol.meta.ny ?? 1) + 1;
    if (nj !== wantJ || nk !== wantK) {
      throw new ParseError(
        `region map is ${nj}x${nk} but the solution mesh needs ${wantJ}x${wantK} ` +
        `${spec.direction}-interfaces`,
      );
    }
  }
  const scale = spec.scale ?? Math.max(1, Math.floor(600 / Math.max(nj, nk)));
  const rgb = paint(nj, nk, scale, (i, j) => TAG_COLORS[grid[i][j]]);
  return { rgb, width: nj * scale, height: nk * scale, out: outputName(spec, 'png') };
}

export function plotRegions(spec: RegionsSpec): string {
  const { rgb, width, height, out } = renderRegions(spec);
  writeFileSync(out, encodePng(width, height, rgb));
  return out;
}
