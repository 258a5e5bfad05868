/** Thin deterministic wrapper around pngjs. */

import { PNG } from "pngjs";

export type RGB = readonly [number, number, number];

export class Image {
  readonly png: PNG;

  constructor(width: number, height: number, fill: RGB) {
    if (width < 1 || height < 1) {
      throw new Error(`image dimensions must be positive, got ${width}x${height}`);
    }
    this.png = new PNG({ width, height });
    this.fillRect(0, 0, width, height, fill);
  }

  get width(): number {
    return this.png.width;
  }

  get height(): number {
    return this.png.height;
  }

  set(x: number, y: number, c: RGB): void {
    const at = (y * this.png.width + x) * 4;
    this.png.data[at] = c[0];
    this.png.data[at + 1] = c[1];
    this.png.data[at + 2] = c[2];
    this.png.data[at + 3] = 255;
  }

  get(x: number, y: number): RGB {
    const at = (y * this.png.width + x) * 4;
    return [this.png.data[at]!, this.png.data[at + 1]!, this.png.data[at + 2]!];
  }

  fillRect(x: number, y: number, w: number, h: number, c: RGB): void {
    const x1 = Math.min(x + w, this.png.width);
    const y1 = Math.min(y + h, this.png.height);
    for (let yy = Math.max(y, 0); yy < y1; yy++) {
      for (let xx = Math.max(x, 0); xx < x1; xx++) {
        this.set(xx, yy, c);
      }
    }
  }

  encode(): Buffer {
    return PNG.sync.write(this.png, { deflateLevel: 9, deflateStrategy: 0 });
  }
}

export interface DecodedImage {
  width: number;
  height: number;
  get(x: number, y: number): RGB;
}

export function decodePng(buf: Buffer): DecodedImage {
  const png = PNG.sync.read(buf);
  return {
    width: png.width,
    height: png.height,
    get(x: number, y: number): RGB {
      const at = (y * png.width + x) * 4;
      return [png.data[at]!, png.data[at + 1]!, png.data[at + 2]!];
    },
  };
}

/** Count pixels whose colour matches exactly. */
export function countPixels(img: DecodedImage, c: RGB): number {
  let n = 0;
  for (let y = 0; y < img.height; y++) {
    for (let x = 0; x < img.width; x++) {
      const got = img.get(x, y);
      if (got[0] === c[0] && got[1] === c[1] && got[2] === c[2]) n++;
    }
  }
  return n;
}
