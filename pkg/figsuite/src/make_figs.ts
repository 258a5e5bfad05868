/** Run all three renderers over an analysis export directory. */

import { readFileSync, writeFileSync, mkdirSync } from "node:fs";
import { join } from "node:path";

import { renderBars } from "./bars.js";
import { renderHeatmap } from "./heatmap.js";
import { renderRaster } from "./raster.js";
import { parseFlags, runCli } from "./util.js";

export function makeFigs(inDir: string, outDir: string, scale = 1): string[] {
  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];

  const raster = renderRaster(readFileSync(join(inDir, "raster.csv"), "utf8"), scale);
  const rasterPath = join(outDir, "raster.png");
  writeFileSync(rasterPath, raster.image.encode());
  written.push(rasterPath);

  const heatmap = renderHeatmap(readFileSync(join(inDir, "core_matrix.csv"), "utf8"));
  const heatmapPath = join(outDir, "core_matrix.png");
  writeFileSync(heatmapPath, heatmap.image.encode());
  written.push(heatmapPath);

  const bars = renderBars(readFileSync(join(inDir, "per_qubit.csv"), "utf8"));
  const barsPath = join(outDir, "per_qubit.png");
  writeFileSync(barsPath, bars.image.encode());
  written.push(barsPath);

  return written;
}

runCli(import.meta.url, () => {
  const flags = parseFlags(process.argv.slice(2), {
    in: { required: true },
    out: { required: true },
    scale: { default: "1" },
  });
  for (const path of makeFigs(flags.in!, flags.out!, Number(flags.scale))) {
    console.log(`wrote ${path}`);
  }
});
