/** Residual and measurement losses with exact parameter gradients.
 *
 * The residual at a collocation point (x, t) with trial function
 * u = (1-t) phi + w N (w = x(1-x)t) expands to
 *
 *   r = u_t - u_xx + p(t) u - f
 *     = [-phi + w_t N + w N_t]
 *     - [(1-t) phi'' + w_xx N + 2 w_x N_x + w N_xx]
 *     + p u - f,
 *
 * so r is linear in the network channels (N, N_x, N_xx, N_t) with
 * coefficients depending only on the point and on p(t), and dr/dp = u.
 */

import { Mlp } from "./mlp.js";
import { ProblemBundle } from "./bundle.js";
import { Rng } from "./rng.js";
import { secondDerivative, trialWeight } from "./trial.js";

export interface CollocationBatch {
  B: number;
  /** (2 x 4B) input with derivative seed channels. */
  X4: Float64Array;
  x: Float64Array;
  t: Float64Array;
  phi: Float64Array;
  phiXx: Float64Array;
  f: Float64Array;
  /** index into the unique time-node list for the coefficient net */
  tIndex: Int32Array;
  /** (1 x Bt) unique time nodes */
  tUnique: Float64Array;
}

export interface ConstraintBatch {
  /** number of time nodes */
  nG: number;
  /** node count across space (N+1) */
  nX: number;
  /** (2 x nX*nG) network input, sample order (j outer, i inner) */
  X: Float64Array;
  /** physical spatial nodes (length nX) and time nodes (length nG) */
  xNodes: Float64Array;
  tNodes: Float64Array;
  /** trial weight w(x_i, t_j) per sample */
  w: Float64Array;
  /** (1-t_j) phi(x_i) per sample */
  base: Float64Array;
  /** trapezoid weight h * c_i * omega_i per x node */
  quad: Float64Array;
  g: Float64Array;
}

/** Mean squared residual given field samples; shared by tests and training. */
export function pdeLossFromFields(
  ut: ArrayLike<number>, uxx: ArrayLike<number>, u: ArrayLike<number>,
  p: ArrayLike<number>, f: ArrayLike<number>,
): number {
  let acc = 0;
  for (let i = 0; i < ut.length; i++) {
    const r = ut[i] - uxx[i] + p[i] * u[i] - f[i];
    acc += r * r;
  }
  return acc / ut.length;
}

/** Mean squared measurement mismatch given u samples per (node, time node). */
export function integralLossFromValues(
  uValues: ArrayLike<number>, quad: ArrayLike<number>, g: ArrayLike<number>,
): number {
  const nX = quad.length;
  const nG = g.length;
  let acc = 0;
  for (let j = 0; j < nG; j++) {
    let I = 0;
    for (let i = 0; i < nX; i++) I += quad[i] * uValues[j * nX + i];
    const m = I - g[j];
    acc += m * m;
  }
  return acc / nG;
}

/** Sample interior collocation points from the bundle's grid nodes.
 * phi'' is needed by the residual, so x stays two nodes away from the
 * boundary where the wide difference stencil is exact enough. */
export function sampleCollocation(bundle: ProblemBundle, nF: number, rng: Rng): CollocationBatch {
  const { N, M, h, tau } = bundle;
  if (N < 5 || M < 1) throw new Error("bundle grid too small for collocation sampling");
  const phiXxAll = secondDerivative(bundle.phi, h);
  const x = new Float64Array(nF);
  const t = new Float64Array(nF);
  const phi = new Float64Array(nF);
  const phiXx = new Float64Array(nF);
  const f = new Float64Array(nF);
  const tIndex = new Int32Array(nF);
  const usedT = new Map<number, number>();
  const tUniqueList: number[] = [];
  for (let b = 0; b < nF; b++) {
    const i = 2 + rng.int(N - 3); // 2 .. N-2
    const k = 1 + rng.int(M); // 1 .. M
    x[b] = i * h;
    t[b] = k * tau;
    phi[b] = bundle.phi[i];
    phiXx[b] = phiXxAll[i];
    f[b] = bundle.f[k * (N + 1) + i];
    let idx = usedT.get(k);
    if (idx === undefined) {
      idx = tUniqueList.length;
      usedT.set(k, idx);
      tUniqueList.push(k * tau);
    }
    tIndex[b] = idx;
  }
  // network inputs live on [-1, 1]; the chain rule is carried by the
  // derivative seeds (d/dx of the input map is 2, second derivative 0)
  const X4 = new Float64Array(2 * 4 * nF);
  const W = 4 * nF;
  for (let b = 0; b < nF; b++) {
    X4[b] = 2 * x[b] - 1;    // value, input 0
    X4[W + b] = 2 * t[b] - 1; // value, input 1
    X4[nF + b] = 2;          // d/dx seeds
    X4[W + nF + b] = 0;
    X4[2 * nF + b] = 0;      // d2/dx2 seeds
    X4[W + 2 * nF + b] = 0;
    X4[3 * nF + b] = 0;      // d/dt seeds
    X4[W + 3 * nF + b] = 2;
  }
  return { B: nF, X4, x, t, phi, phiXx, f, tIndex, tUnique: Float64Array.from(tUniqueList) };
}

/** Uniform-in-index subset of the grid's time levels plus the x-trapezoid. */
export function buildConstraint(bundle: ProblemBundle, nG: number): ConstraintBatch {
  const { N, M, h, tau } = bundle;
  const count = Math.min(nG, M + 1);
  const nX = N + 1;
  const xNodes = new Float64Array(nX);
  for (let i = 0; i < nX; i++) xNodes[i] = i * h;
  const tNodes = new Float64Array(count);
  const X = new Float64Array(2 * nX * count);
  const w = new Float64Array(nX * count);
  const base = new Float64Array(nX * count);
  const quad = new Float64Array(nX);
  const g = new Float64Array(count);
  for (let i = 0; i < nX; i++) {
    const c = i === 0 || i === N ? 0.5 : 1.0;
    quad[i] = h * c * bundle.omega[i];
  }
  const total = nX * count;
  for (let j = 0; j < count; j++) {
    const k = count === 1 ? M : Math.round((j * M) / (count - 1));
    const tj = k * tau;
    tNodes[j] = tj;
    g[j] = bundle.g[k];
    for (let i = 0; i < nX; i++) {
      const s = j * nX + i;
      const xi = i * h;
      X[s] = 2 * xi - 1;
      X[total + s] = 2 * tj - 1;
      w[s] = trialWeight(xi, tj);
      base[s] = (1 - tj) * bundle.phi[i];
    }
  }
  return { nG: count, nX, X, xNodes, tNodes, w, base, quad, g };
}

export interface LossParts {
  pde: number;
  integral: number;
  total: number;
}

/** Full loss and gradient at the given parameter vector. */
export function lossAndGrad(
  params: Float64Array, grad: Float64Array | null,
  uNet: Mlp, pNet: Mlp, pOffset: number,
  colloc: CollocationBatch, constraint: ConstraintBatch, lambda: number,
): LossParts {
  const B = colloc.B;
  if (grad) grad.fill(0);

  // residual loss
  const uState = uNet.forwardDeriv(params, 0, colloc.X4, B);
  const tB = colloc.tUnique.length;
  const pState = pNet.forwardValue(params, pOffset, colloc.tUnique, tB);
  const out = uState.out;
  let pdeAcc = 0;
  const outBar = grad ? new Float64Array(4 * B) : null;
  const pBar = grad ? new Float64Array(tB) : null;
  for (let b = 0; b < B; b++) {
    const xv = colloc.x[b];
    const tv = colloc.t[b];
    const wv = xv * (1 - xv) * tv;
    const wx = (1 - 2 * xv) * tv;
    const wt = xv * (1 - xv);
    const wxx = -2 * tv;
    const p = pState.out[colloc.tIndex[b]];
    const Nv = out[b];
    const Nx = out[B + b];
    const Nxx = out[2 * B + b];
    const Nt = out[3 * B + b];
    const u = (1 - tv) * colloc.phi[b] + wv * Nv;
    const ut = -colloc.phi[b] + wt * Nv + wv * Nt;
    const uxx = (1 - tv) * colloc.phiXx[b] + wxx * Nv + 2 * wx * Nx + wv * Nxx;
    const r = ut - uxx + p * u - colloc.f[b];
    pdeAcc += r * r;
    if (outBar && pBar) {
      const rBar = (2 * r) / B;
      outBar[b] = rBar * (wt - wxx + p * wv);
      outBar[B + b] = rBar * (-2 * wx);
      outBar[2 * B + b] = rBar * (-wv);
      outBar[3 * B + b] = rBar * wv;
      pBar[colloc.tIndex[b]] += rBar * u;
    }
  }
  const pde = pdeAcc / B;
  if (grad && outBar && pBar) {
    uNet.backpropDeriv(params, 0, uState, outBar, grad, B);
    pNet.backpropValue(params, pOffset, pState, pBar, grad);
  }

  // measurement loss
  const S = constraint.nX * constraint.nG;
  const cState = uNet.forwardValue(params, 0, constraint.X, S);
  let intAcc = 0;
  const cBar = grad ? new Float64Array(S) : null;
  for (let j = 0; j < constraint.nG; j++) {
    let I = 0;
    for (let i = 0; i < constraint.nX; i++) {
      const s = j * constraint.nX + i;
      I += constraint.quad[i] * (constraint.base[s] + constraint.w[s] * cState.out[s]);
    }
    const m = I - constraint.g[j];
    intAcc += m * m;
    if (cBar) {
      const mBar = (lambda * 2 * m) / constraint.nG;
      for (let i = 0; i < constraint.nX; i++) {
        const s = j * constraint.nX + i;
        cBar[s] = mBar * constraint.quad[i] * constraint.w[s];
      }
    }
  }
  const integral = intAcc / constraint.nG;
  if (grad && cBar) {
    uNet.backpropValue(params, 0, cState, cBar, grad);
  }
  return { pde, integral, total: pde + lambda * integral };
}
