/** Limited-memory BFGS with Armijo backtracking.
 *
 * Every accepted step satisfies the sufficient-decrease condition, so the
 * recorded loss sequence is non-increasing by construction. Curvature pairs
 * are kept only when s.y is safely positive, preserving a positive-definite
 * implicit Hessian without a full Wolfe search.
 */

import { axpy, dot, norm2 } from "./linalg.js";

export interface LbfgsResult {
  iterations: number;
  finalLoss: number;
  converged: boolean;
}

export interface LbfgsOptions {
  maxIter: number;
  memory?: number;
  gradTol?: number;
  c1?: number;
  maxBacktracks?: number;
  onAccept?: (iter: number, loss: number) => void;
}

export function lbfgs(
  params: Float64Array,
  evaluate: (p: Float64Array, grad: Float64Array) => number,
  opts: LbfgsOptions,
): LbfgsResult {
  const n = params.length;
  const memory = opts.memory ?? 25;
  const gradTol = opts.gradTol ?? 1e-10;
  const c1 = opts.c1 ?? 1e-4;
  const maxBacktracks = opts.maxBacktracks ?? 30;

  const grad = new Float64Array(n);
  let loss = evaluate(params, grad);
  if (!Number.isFinite(loss)) {
    throw new Error("non-finite loss at the L-BFGS starting point");
  }

  const sList: Float64Array[] = [];
  const yList: Float64Array[] = [];
  const rhoList: number[] = [];
  const direction = new Float64Array(n);
  const trial = new Float64Array(n);
  const gradTrial = new Float64Array(n);
  const alpha = new Float64Array(memory);

  for (let iter = 0; iter < opts.maxIter; iter++) {
    const gnorm = norm2(grad);
    if (gnorm <= gradTol * Math.max(1, norm2(params))) {
      return { iterations: iter, finalLoss: loss, converged: true };
    }

    // two-loop recursion
    direction.set(grad);
    const k = sList.length;
    for (let i = k - 1; i >= 0; i--) {
      alpha[i] = rhoList[i] * dot(sList[i], direction);
      axpy(direction, -alpha[i], yList[i]);
    }
    if (k > 0) {
      const sy = dot(sList[k - 1], yList[k - 1]);
      const yy = dot(yList[k - 1], yList[k - 1]);
      const scale = sy / yy;
      for (let j = 0; j < n; j++) direction[j] *= scale;
    }
    for (let i = 0; i < k; i++) {
      const beta = rhoList[i] * dot(yList[i], direction);
      axpy(direction, alpha[i] - beta, sList[i]);
    }
    for (let j = 0; j < n; j++) direction[j] = -direction[j];

    let dg = dot(direction, grad);
    if (dg >= 0) {
      // fall back to steepest descent if the model direction is uphill
      for (let j = 0; j < n; j++) direction[j] = -grad[j];
      dg = -dot(grad, grad);
    }

    // Armijo backtracking with quadratic interpolation; the very first step
    // is scaled by the gradient norm since no curvature is known yet
    let step = k === 0 && iter === 0 ? Math.min(1.0, 1.0 / gnorm) : 1.0;
    let accepted = false;
    let trialLoss = loss;
    for (let bt = 0; bt < maxBacktracks; bt++) {
      for (let j = 0; j < n; j++) trial[j] = params[j] + step * direction[j];
      trialLoss = evaluate(trial, gradTrial);
      if (Number.isFinite(trialLoss) && trialLoss <= loss + c1 * step * dg) {
        accepted = true;
        break;
      }
      let next = step * 0.5;
      if (Number.isFinite(trialLoss)) {
        // minimizer of the quadratic through (0, loss), (step, trialLoss), slope dg
        const denom = 2 * (trialLoss - loss - dg * step);
        if (denom > 0) {
          const q = (-dg * step * step) / denom;
          if (q > 0.1 * step && q < 0.9 * step) next = q;
        }
      }
      step = next;
    }
    if (!accepted) {
      return { iterations: iter, finalLoss: loss, converged: false };
    }

    const s = new Float64Array(n);
    const y = new Float64Array(n);
    for (let j = 0; j < n; j++) {
      s[j] = trial[j] - params[j];
      y[j] = gradTrial[j] - grad[j];
    }
    const sy = dot(s, y);
    if (sy > 1e-12 * norm2(s) * norm2(y)) {
      sList.push(s);
      yList.push(y);
      rhoList.push(1 / sy);
      if (sList.length > memory) {
        sList.shift();
        yList.shift();
        rhoList.shift();
      }
    }

    params.set(trial);
    grad.set(gradTrial);
    loss = trialLoss;
    opts.onAccept?.(iter, loss);
  }
  return { iterations: opts.maxIter, finalLoss: loss, converged: false };
}
