// Readers for the solver's plain-text artifact formats.
//
// Solution files: one `# columns: ...; case=..; t=..; nx=..[; ny=..]` header
// line, then one row of 17-significant-digit decimals per cell in row-major
// order (x outer, y inner in 2-D).
//
// Region-map files: a comment header, then rows `direction j k tag` with
// tags 0=smooth, 1=rough-contact, 2=rough-non-contact.

import { readFileSync } from 'node:fs';

export class ParseError extends Error {}

export interface SolutionMeta {
  columns: string[];
  caseName: string;
  t: number;
  nx: number;
  ny?: number;
}

export interface Solution {
  meta: SolutionMeta;
  /** column name -> values, one entry per cell in file order */
  data: Map<string, Float64Array>;
}

export function parseSolution(path: string): Solution {
  const text = readFileSync(path, 'utf8');
  const lines = text.split('\n');
  const header = lines[0] ?? '';
  if (!header.startsWith('# columns:')) {
    throw new ParseError(`${path}:1: missing "# columns:" solution header`);
  }
  const parts = header.slice(1).split(';').map((s) => s.trim());
  const columns = parts[0].slice('columns:'.length).trim().split(',').map((s) => s.trim());
  const meta: Partial<SolutionMeta> & { columns: string[] } = { columns };
  for (const part of parts.slice(1)) {
    const eq = part.indexOf('=');
    if (eq < 0) continue;
    const key = part.slice(0, eq).trim();
    const val = part.slice(eq + 1).trim();
    if (key === 'case') meta.caseName = val;
    else if (key === 't') meta.t = Number(val);
    else if (key === 'nx') meta.nx = Number(val);
    else if (key === 'ny') meta.ny = Number(val);
  }
  if (meta.caseName === undefined || meta.t === undefined || meta.nx === undefined) {
    throw new ParseError(`${path}:1: header lacks case/t/nx fields`);
  }
  const ncells = meta.nx * (meta.ny ?? 1);
  const cols = columns.map(() => new Float64Array(ncells));
  let row = 0;
  for (let li = 1; li < lines.length; li++) {
    const line = lines[li].trim();
    if (!line || line.startsWith('#')) continue;
    const fields = line.split(/\s+/);
    if (fields.length !== columns.length) {
      throw new ParseError(`${path}:${li + 1}: expected ${columns.length} columns, got ${fields.length}`);
    }
    if (row >= ncells) throw new ParseError(`${path}:${li + 1}: more rows than nx*ny cells`);
    for (let c = 0; c < fields.length; c++) {
      const v = Number(fields[c]);
      if (Number.isNaN(v)) throw new ParseError(`${path}:${li + 1}: bad number ${fields[c]}`);
      cols[c][row] = v;
    }
    row++;
  }
  if (row !== ncells) {
    throw new ParseError(`${path}: expected ${ncells} cell rows, found ${row}`);
  }
  const data = new Map<string, Float64Array>();
  columns.forEach((name, i) => data.set(name, cols[i]));
  return { meta: meta as SolutionMeta, data };
}

export interface RegionMap {
  /** x-direction tags indexed [j][k]: j = 0..nx interfaces, k = 0..ny-1 rows */
  x?: Int8Array[];
  /** y-direction tags indexed [j][k]: j = 0..nx-1 columns, k = 0..ny interfaces */
  y?: Int8Array[];
}

export function parseRegions(path: string): RegionMap {
  const text = readFileSync(path, 'utf8');
  const rows: Record<'x' | 'y', Array<[number, number, number]>> = { x: [], y: [] };
  const lines = text.split('\n');
  for (let li = 0; li < lines.length; li++) {
    const line = lines[li].trim();
    if (!line || line.startsWith('#')) continue;
    const f = line.split(/\s+/);
    if (f.length !== 4 || (f[0] !== 'x' && f[0] !== 'y')) {
      throw new ParseError(`${path}:${li + 1}: expected "direction j k tag"`);
    }
    const j = Number(f[1]);
    const k = Number(f[2]);
    const tag = Number(f[3]);
    if (!Number.isInteger(j) || !Number.isInteger(k) || ![0, 1, 2].includes(tag)) {
      throw new ParseError(`${path}:${li + 1}: bad indices or tag`);
    }
    rows[f[0] as 'x' | 'y'].push([j, k, tag]);
  }
  const out: RegionMap = {};
  for (const dir of ['x', 'y'] as const) {
    if (!rows[dir].length) continue;
    const nj = Math.max(...rows[dir].map((r) => r[0])) + 1;
    const nk = Math.max(...rows[dir].map((r) => r[1])) + 1;
    const grid: Int8Array[] = Array.from({ length: nj }, () => new Int8Array(nk));
    for (const [j, k, tag] of rows[dir]) grid[j][k] = tag;
    out[dir] = grid;
  }
  if (!out.x && !out.y) throw new ParseError(`${path}: no region rows found`);
  return out;
}

/** Cell-center x coordinates of a 1-D solution (from the stored column). */
export function xColumn(sol: Solution): Float64Array {
  const x = sol.data.get('x');
  if (!x) throw new ParseError('solution has no x column');
  return x;
}
