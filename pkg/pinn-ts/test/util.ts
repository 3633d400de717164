import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

/** Write a problem bundle through the primary component's CLI. */
export function makeBundle(args: {
  N: number; M: number; noiseDelta?: number; seed?: number;
}): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "pinn-bundle-"));
  const cli = ["bundle", "--N", String(args.N), "--M", String(args.M),
    "--out-dir", dir];
  if (args.noiseDelta) {
    cli.push("--noise-delta", String(args.noiseDelta), "--seed", String(args.seed ?? 0));
  }
  execFileSync("invdiff", cli, { stdio: "pipe" });
  return dir;
}

export function exactU(x: number, t: number): number {
  return Math.exp(t) * Math.sin(Math.PI * x);
}

export function exactP(t: number): number {
  return Math.exp(-t);
}

/** Max-norm errors of sampled grids against the closed forms. */
export function gridErrors(
  uGrid: Float64Array, pGrid: Float64Array, N: number, M: number, h: number, tau: number,
): { erU: number; erP: number } {
  let erU = 0;
  for (let i = 0; i <= N; i++) {
    erU = Math.max(erU, Math.abs(uGrid[M * (N + 1) + i] - exactU(i * h, M * tau)));
  }
  let erP = 0;
  for (let k = 0; k <= M; k++) {
    erP = Math.max(erP, Math.abs(pGrid[k] - exactP(k * tau)));
  }
  return { erU, erP };
}
