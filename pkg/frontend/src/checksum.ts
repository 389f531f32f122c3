import { createHash } from "node:crypto";

/**
 * SHA-256 over the IEEE-754 bytes of a sequence of numbers. Used to certify
 * that the values handed to the drawing layer are byte-for-byte the values
 * parsed from the CSV (the renderer never computes physics).
 */
export class NumberChecksum {
  private readonly hash = createHash("sha256");

  addSeries(label: string, x: number[], y: number[]): void {
    this.hash.update(label);
    this.hash.update(Buffer.from(Float64Array.from(x).buffer));
    this.hash.update(Buffer.from(Float64Array.from(y).buffer));
  }

  digest(): string {
    return this.hash.digest("hex");
  }
}
