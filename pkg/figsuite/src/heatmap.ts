/** Inter-core traffic heatmap: n x n annotated cells, source row, destination column. */

import { readFileSync, writeFileSync } from "node:fs";

import { parseMatrixCsv } from "./csv.js";
import { annotationColor, drawNumber, heatColor, numberWidth, BACKGROUND, GLYPH_H } from "./palette.js";
import { Image } from "./png.js";
import { maxOf, parseFlags, runCli } from "./util.js";

export interface HeatmapFigure {
  image: Image;
  n: number;
  cellSize: number;
}

export function renderHeatmap(csvText: string, cellSize = 48): HeatmapFigure {
  const entries = parseMatrixCsv(csvText);
  if (entries.length === 0) {
    throw new Error("heatmap: empty matrix");
  }
  const n = maxOf(entries, (e) => Math.max(e.src, e.dst)) + 1;
  if (entries.length !== n * n) {
    throw new Error(`matrix is not square: ${entries.length} entries for n=${n}`);
  }
  const grid: number[][] = Array.from({ length: n }, () => Array(n).fill(-1));
  for (const e of entries) {
    if (grid[e.src]![e.dst] !== -1) throw new Error(`duplicate entry (${e.src},${e.dst})`);
    grid[e.src]![e.dst] = e.count;
  }
  const max = maxOf(entries, (e) => e.count);
  const image = new Image(n * cellSize, n * cellSize, BACKGROUND);
  for (let src = 0; src < n; src++) {
    for (let dst = 0; dst < n; dst++) {
      const count = grid[src]![dst]!;
      const color = heatColor(count, max);
      const x = dst * cellSize;
      const y = src * cellSize;
      image.fillRect(x, y, cellSize - 1, cellSize - 1, color); // 1px gap shows the grid
      const w = numberWidth(count, 1);
      drawNumber(
        image,
        x + Math.floor((cellSize - 1 - w) / 2),
        y + Math.floor((cellSize - 1 - GLYPH_H) / 2),
        count,
        annotationColor(color),
      );
    }
  }
  return { image, n, cellSize };
}

runCli(import.meta.url, () => {
  const flags = parseFlags(process.argv.slice(2), {
    in: { required: true },
    out: { required: true },
    cell: { default: "48" },
  });
  const fig = renderHeatmap(readFileSync(flags.in!, "utf8"), Number(flags.cell));
  writeFileSync(flags.out!, fig.image.encode());
  console.log(`wrote ${flags.out} (${fig.n}x${fig.n} cores)`);
});
