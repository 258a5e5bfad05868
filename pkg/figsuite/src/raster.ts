/** Activity raster: timestep on x, physical qubit on y, one cell per CSV row. */

import { readFileSync, writeFileSync } from "node:fs";

import { parseRasterCsv } from "./csv.js";
import { BACKGROUND, STATE_COLORS } from "./palette.js";
import { Image } from "./png.js";
import { maxOf, parseFlags, runCli } from "./util.js";

export interface RasterFigure {
  image: Image;
  rows: number; // physical qubits
  cols: number; // timesteps
  scale: number;
}

export function renderRaster(csvText: string, scale = 1): RasterFigure {
  if (scale < 1 || !Number.isInteger(scale)) {
    throw new Error(`scale must be a positive integer, got ${scale}`);
  }
  const cells = parseRasterCsv(csvText);
  if (cells.length === 0) {
    console.warn("raster: empty input, emitting an empty canvas");
    return { image: new Image(1, 1, BACKGROUND), rows: 0, cols: 0, scale };
  }
  const rows = maxOf(cells, (c) => c.pqubit) + 1;
  const cols = maxOf(cells, (c) => c.timestep) + 1;
  if (cells.length !== rows * cols) {
    throw new Error(`raster grid is ragged: ${cells.length} cells for ${rows}x${cols}`);
  }
  const image = new Image(cols * scale, rows * scale, BACKGROUND);
  for (const cell of cells) {
    image.fillRect(cell.timestep * scale, cell.pqubit * scale, scale, scale, STATE_COLORS[cell.state]);
  }
  return { image, rows, cols, scale };
}

runCli(import.meta.url, () => {
  const flags = parseFlags(process.argv.slice(2), {
    in: { required: true },
    out: { required: true },
    scale: { default: "1" },
  });
  const fig = renderRaster(readFileSync(flags.in!, "utf8"), Number(flags.scale));
  writeFileSync(flags.out!, fig.image.encode());
  console.log(`wrote ${flags.out} (${fig.rows} qubits x ${fig.cols} timesteps, scale ${fig.scale})`);
});
