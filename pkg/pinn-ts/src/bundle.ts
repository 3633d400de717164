/** Problem-bundle reader and CSV writers matching the invdiff conventions:
 * first line `# key=value;...`, then a header row, then data rows in
 * scientific notation with 12 decimal digits. */

import * as fs from "node:fs";
import * as path from "node:path";

export interface ProblemBundle {
  l: number;
  T: number;
  N: number;
  M: number;
  h: number;
  tau: number;
  phi: Float64Array;
  omega: Float64Array;
  omegaXx: Float64Array;
  g: Float64Array;
  gprime: Float64Array;
  /** f[k][i] = f(x_i, t_k); stored row-major (M+1) x (N+1). */
  f: Float64Array;
  meta: Record<string, string>;
}

export function formatFloat(v: number): string {
  // match the primary component's %.12e (two-digit exponent)
  const s = v.toExponential(12);
  return s.replace(/e([+-])(\d)$/, "e$10$2");
}

export function writeCsv(
  file: string, header: string[], rows: number[][], meta: Record<string, string | number>,
): void {
  const lines: string[] = [];
  const metaStr = Object.entries(meta).map(([k, v]) => `${k}=${v}`).join(";");
  lines.push(`# ${metaStr}`);
  lines.push(header.join(","));
  for (const row of rows) {
    lines.push(row.map(formatFloat).join(","));
  }
  fs.mkdirSync(path.dirname(file), { recursive: true });
  fs.writeFileSync(file, lines.join("\n") + "\n");
}

export function readCsv(file: string): {
  meta: Record<string, string>; header: string[]; data: number[][];
} {
  const lines = fs.readFileSync(file, "utf8").split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) throw new Error(`${file}: empty file`);
  const meta: Record<string, string> = {};
  let start = 0;
  if (lines[0].startsWith("#")) {
    for (const item of lines[0].replace(/^#\s*/, "").split(";")) {
      const eq = item.indexOf("=");
      if (eq > 0) meta[item.slice(0, eq)] = item.slice(eq + 1);
    }
    start = 1;
  }
  const header = lines[start].split(",");
  const data = lines.slice(start + 1).map((l) => l.split(",").map(Number));
  return { meta, header, data };
}

function columnOf(dir: string, name: string): Float64Array {
  const { data } = readCsv(path.join(dir, `${name}.csv`));
  return Float64Array.from(data.map((row) => row[0]));
}

export function loadBundle(dir: string): ProblemBundle {
  for (const name of ["grid", "phi", "omega", "omega_xx", "g", "f"]) {
    if (!fs.existsSync(path.join(dir, `${name}.csv`))) {
      throw new Error(`problem bundle is missing ${name}.csv`);
    }
  }
  const grid = readCsv(path.join(dir, "grid.csv"));
  const [l, T, N, M] = grid.data[0];
  const phi = columnOf(dir, "phi");
  const omega = columnOf(dir, "omega");
  const omegaXx = columnOf(dir, "omega_xx");
  const g = columnOf(dir, "g");
  const tau = T / M;
  let gprime: Float64Array;
  if (fs.existsSync(path.join(dir, "gprime.csv"))) {
    gprime = columnOf(dir, "gprime");
  } else {
    // second-order differences (same fallback as the primary component)
    gprime = new Float64Array(M + 1);
    if (M === 1) {
      gprime.fill((g[1] - g[0]) / tau);
    } else {
      for (let k = 1; k < M; k++) gprime[k] = (g[k + 1] - g[k - 1]) / (2 * tau);
      gprime[0] = (-3 * g[0] + 4 * g[1] - g[2]) / (2 * tau);
      gprime[M] = (3 * g[M] - 4 * g[M - 1] + g[M - 2]) / (2 * tau);
    }
  }
  const fTable = readCsv(path.join(dir, "f.csv"));
  const f = new Float64Array((M + 1) * (N + 1));
  for (let k = 0; k <= M; k++) {
    for (let i = 0; i <= N; i++) f[k * (N + 1) + i] = fTable.data[k][i];
  }
  return {
    l, T, N: Math.round(N), M: Math.round(M), h: l / N, tau,
    phi, omega, omegaXx, g, gprime, f, meta: grid.meta,
  };
}
