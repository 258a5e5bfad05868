/** Per-qubit load bars: one group per virtual qubit, teleports next to intra-core ops. */

import { readFileSync, writeFileSync } from "node:fs";

import { parseQubitCsv } from "./csv.js";
import { AXIS, BACKGROUND, INTRA_BAR, TELEPORT_BAR } from "./palette.js";
import { Image } from "./png.js";
import { maxOf, parseFlags, runCli } from "./util.js";

export const BAR_WIDTH = 3;
export const GROUP_GAP = 3;
export const PLOT_HEIGHT = 120;

export interface BarsFigure {
  image: Image;
  groups: number;
  groupStride: number;
}

export function renderBars(csvText: string): BarsFigure {
  const loads = parseQubitCsv(csvText);
  if (loads.length === 0) {
    throw new Error("bars: no qubit rows");
  }
  loads.forEach((row, i) => {
    if (row.vqubit !== i) throw new Error(`qubit rows must be dense and ordered, got ${row.vqubit} at ${i}`);
  });
  const groups = loads.length;
  const stride = 2 * BAR_WIDTH + GROUP_GAP;
  const width = groups * stride - GROUP_GAP;
  const height = PLOT_HEIGHT + 1; // one extra row for the baseline
  const max = maxOf(loads, (r) => Math.max(r.teleports, r.intraOps));
  const image = new Image(width, height, BACKGROUND);
  image.fillRect(0, height - 1, width, 1, AXIS);
  loads.forEach((row, i) => {
    const x = i * stride;
    for (const [offset, value, color] of [
      [0, row.teleports, TELEPORT_BAR],
      [BAR_WIDTH, row.intraOps, INTRA_BAR],
    ] as const) {
      const h = max > 0 ? Math.round((value / max) * PLOT_HEIGHT) : 0;
      image.fillRect(x + offset, height - 1 - h, BAR_WIDTH, h, color);
    }
  });
  return { image, groups, groupStride: stride };
}

runCli(import.meta.url, () => {
  const flags = parseFlags(process.argv.slice(2), {
    in: { required: true },
    out: { required: true },
  });
  const fig = renderBars(readFileSync(flags.in!, "utf8"));
  writeFileSync(flags.out!, fig.image.encode());
  console.log(`wrote ${flags.out} (${fig.groups} qubits)`);
});
