import { describe, expect, it } from "vitest";

import { renderHeatmap } from "../src/heatmap.js";
import { heatColor } from "../src/palette.js";
import { decodePng } from "../src/png.js";

function matrixCsv(matrix: number[][]): string {
  const lines = ["src,dst,count"];
  matrix.forEach((row, src) => row.forEach((count, dst) => lines.push(`${src},${dst},${count}`)));
  return lines.join("\n") + "\n";
}

describe("renderHeatmap", () => {
  it("renders an all-zero matrix at the ramp minimum", () => {
    const fig = renderHeatmap(matrixCsv([[0, 0], [0, 0]]), 16);
    const img = decodePng(fig.image.encode());
    const minColor = heatColor(0, 0);
    for (const [x, y] of [[1, 1], [17, 1], [1, 17], [17, 17]] as const) {
      expect(img.get(x, y)).toEqual(minColor);
    }
  });

  it("highlights a single hot cell", () => {
    const fig = renderHeatmap(matrixCsv([[0, 1], [0, 0]]), 16);
    const img = decodePng(fig.image.encode());
    expect(img.get(17, 1)).toEqual(heatColor(1, 1)); // (src 0, dst 1)
    expect(img.get(1, 1)).toEqual(heatColor(0, 1));
  });

  it("has one cell per core pair", () => {
    const matrix = Array.from({ length: 8 }, () => Array(8).fill(2));
    const fig = renderHeatmap(matrixCsv(matrix), 48);
    expect(fig.n).toBe(8);
    expect(fig.image.width).toBe(8 * 48);
    expect(fig.image.height).toBe(8 * 48);
  });

  it("renders symmetric input as a transpose-symmetric cell grid", () => {
    const matrix = [
      [0, 3, 1],
      [3, 0, 2],
      [1, 2, 0],
    ];
    const fig = renderHeatmap(matrixCsv(matrix), 20);
    const img = decodePng(fig.image.encode());
    for (let i = 0; i < 3; i++) {
      for (let j = 0; j < 3; j++) {
        // sample cell corners, away from the centred annotations
        expect(img.get(j * 20 + 1, i * 20 + 1)).toEqual(img.get(i * 20 + 1, j * 20 + 1));
      }
    }
  });

  it("rejects non-square matrices", () => {
    expect(() => renderHeatmap("src,dst,count\n0,0,1\n0,1,2\n1,0,3\n")).toThrow(/not square/);
    expect(() => renderHeatmap("src,dst,count\n")).toThrow(/empty/);
  });
});
