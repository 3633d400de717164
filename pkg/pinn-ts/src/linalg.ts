/** Dense helpers over Float64Array. Batch matrices are stored feature-major:
 * A[i*cols + b] holds feature i of column (sample) b, so the innermost loops
 * run contiguously over samples. The 4-way unrolled row updates matter: these
 * three kernels dominate training time. */

/** out(m x B) = W(m x n) * A(n x B). */
export function matmul(
  out: Float64Array, W: Float64Array, A: Float64Array,
  m: number, n: number, B: number,
): void {
  out.fill(0, 0, m * B);
  for (let j = 0; j < m; j++) {
    const outRow = j * B;
    const wRow = j * n;
    let i = 0;
    for (; i + 3 < n; i += 4) {
      const w0 = W[wRow + i];
      const w1 = W[wRow + i + 1];
      const w2 = W[wRow + i + 2];
      const w3 = W[wRow + i + 3];
      const r0 = i * B;
      const r1 = r0 + B;
      const r2 = r1 + B;
      const r3 = r2 + B;
      for (let b = 0; b < B; b++) {
        out[outRow + b] += w0 * A[r0 + b] + w1 * A[r1 + b] + w2 * A[r2 + b] + w3 * A[r3 + b];
      }
    }
    for (; i < n; i++) {
      const w = W[wRow + i];
      const r = i * B;
      for (let b = 0; b < B; b++) out[outRow + b] += w * A[r + b];
    }
  }
}

/** out(n x B) = W^T(n x m) * Z(m x B) for W stored (m x n). */
export function matmulT(
  out: Float64Array, W: Float64Array, Z: Float64Array,
  m: number, n: number, B: number,
): void {
  out.fill(0, 0, n * B);
  for (let i = 0; i < n; i++) {
    const outRow = i * B;
    let j = 0;
    for (; j + 3 < m; j += 4) {
      const w0 = W[j * n + i];
      const w1 = W[(j + 1) * n + i];
      const w2 = W[(j + 2) * n + i];
      const w3 = W[(j + 3) * n + i];
      const r0 = j * B;
      const r1 = r0 + B;
      const r2 = r1 + B;
      const r3 = r2 + B;
      for (let b = 0; b < B; b++) {
        out[outRow + b] += w0 * Z[r0 + b] + w1 * Z[r1 + b] + w2 * Z[r2 + b] + w3 * Z[r3 + b];
      }
    }
    for (; j < m; j++) {
      const w = W[j * n + i];
      const r = j * B;
      for (let b = 0; b < B; b++) out[outRow + b] += w * Z[r + b];
    }
  }
}

/** Wbar(m x n) += Z(m x B) * A(n x B)^T. */
export function accumOuter(
  Wbar: Float64Array, Z: Float64Array, A: Float64Array,
  m: number, n: number, B: number,
): void {
  for (let j = 0; j < m; j++) {
    const zRow = j * B;
    const wRow = j * n;
    let i = 0;
    for (; i + 1 < n; i += 2) {
      const r0 = i * B;
      const r1 = r0 + B;
      let acc0 = 0;
      let acc1 = 0;
      for (let b = 0; b < B; b++) {
        const z = Z[zRow + b];
        acc0 += z * A[r0 + b];
        acc1 += z * A[r1 + b];
      }
      Wbar[wRow + i] += acc0;
      Wbar[wRow + i + 1] += acc1;
    }
    for (; i < n; i++) {
      const r = i * B;
      let acc = 0;
      for (let b = 0; b < B; b++) acc += Z[zRow + b] * A[r + b];
      Wbar[wRow + i] += acc;
    }
  }
}

export function dot(a: Float64Array, b: Float64Array): number {
  let acc = 0;
  for (let i = 0; i < a.length; i++) acc += a[i] * b[i];
  return acc;
}

export function axpy(y: Float64Array, alpha: number, x: Float64Array): void {
  for (let i = 0; i < y.length; i++) y[i] += alpha * x[i];
}

export function norm2(a: Float64Array): number {
  return Math.sqrt(dot(a, a));
}
