// Color mappings shared by the plot scripts.

export type Rgb = [number, number, number];

// Interface classes render with the fixed mapping 0=blue, 1=green, 2=red.
export const TAG_COLORS: Rgb[] = [
  [49, 99, 206],
  [60, 170, 85],
  [214, 58, 46],
];

// Small perceptual ramp for density pseudocolor (dark blue -> yellow).
const RAMP: Rgb[] = [
  [13, 8, 135],
  [84, 2, 163],
  [139, 10, 165],
  [185, 50, 137],
  [219, 92, 104],
  [244, 136, 73],
  [254, 188, 43],
  [240, 249, 33],
];

export function colormap(v: number): Rgb {
  const t = Math.min(1, Math.max(0, v)) * (RAMP.length - 1);
  const i = Math.min(RAMP.length - 2, Math.floor(t));
  const f = t - i;
  return [0, 1, 2].map((c) => Math.round(RAMP[i][c] * (1 - f) + RAMP[i + 1][c] * f)) as Rgb;
}

export const CURVE_COLORS = ['#1f4fd6', '#d63a2e', '#3caa55', '#8a53c2'];
