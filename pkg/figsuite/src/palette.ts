/** Fixed palette: computation red, communication white, idling black.
 *
 * White cells need a non-white canvas to stay visible, so all figure
 * backgrounds are light gray.
 */

import type { Image, RGB } from "./png.js";

export const COMPUTE: RGB = [255, 0, 0];
export const COMMUNICATE: RGB = [255, 255, 255];
export const IDLE: RGB = [0, 0, 0];
export const BACKGROUND: RGB = [217, 217, 217];

export const STATE_COLORS: Record<"I" | "C" | "M", RGB> = {
  I: IDLE,
  C: COMPUTE,
  M: COMMUNICATE,
};

export const TELEPORT_BAR: RGB = [200, 30, 40];
export const INTRA_BAR: RGB = [55, 90, 190];
export const AXIS: RGB = [0, 0, 0];

/** Sequential ramp for heat cells: near-white at 0 up to dark red at max. */
export function heatColor(value: number, max: number): RGB {
  const t = max > 0 ? value / max : 0;
  return [
    Math.round(250 - 115 * t),
    Math.round(245 - 215 * t),
    Math.round(240 - 215 * t),
  ];
}

export function annotationColor(cell: RGB): RGB {
  // relative luminance cutoff keeps digits readable on both ramp ends
  const lum = 0.299 * cell[0] + 0.587 * cell[1] + 0.114 * cell[2];
  return lum > 128 ? [0, 0, 0] : [255, 255, 255];
}

// 3x5 digit glyphs, one string per raster row, '#' = on.
const GLYPHS: Record<string, string[]> = {
  "0": ["###", "# #", "# #", "# #", "###"],
  "1": [" # ", "## ", " # ", " # ", "###"],
  "2": ["###", "  #", "###", "#  ", "###"],
  "3": ["###", "  #", "###", "  #", "###"],
  "4": ["# #", "# #", "###", "  #", "  #"],
  "5": ["###", "#  ", "###", "  #", "###"],
  "6": ["###", "#  ", "###", "# #", "###"],
  "7": ["###", "  #", "  #", "  #", "  #"],
  "8": ["###", "# #", "###", "# #", "###"],
  "9": ["###", "# #", "###", "  #", "###"],
};

export const GLYPH_W = 3;
export const GLYPH_H = 5;

/** Width in pixels of a number rendered at the given scale. */
export function numberWidth(value: number, scale: number): number {
  const digits = String(value).length;
  return digits * GLYPH_W * scale + (digits - 1) * scale;
}

export function drawNumber(img: Image, x: number, y: number, value: number, color: RGB, scale = 1): void {
  let cx = x;
  for (const ch of String(value)) {
    const glyph = GLYPHS[ch];
    if (!glyph) continue;
    for (let gy = 0; gy < GLYPH_H; gy++) {
      for (let gx = 0; gx < GLYPH_W; gx++) {
        if (glyph[gy]![gx] === "#") {
          img.fillRect(cx + gx * scale, y + gy * scale, scale, scale, color);
        }
      }
    }
    cx += (GLYPH_W + 1) * scale;
  }
}
