/** Two-phase training (Adam exploration, L-BFGS refinement) of the joint
 * state/coefficient model, and grid sampling of the result. */

import * as path from "node:path";

import { Adam } from "./adam.js";
import { ProblemBundle, writeCsv } from "./bundle.js";
import { DEFAULT_CONFIG, PinnConfig, validateConfig } from "./config.js";
import { lbfgs } from "./lbfgs.js";
import { buildConstraint, lossAndGrad, sampleCollocation } from "./losses.js";
import { Mlp } from "./mlp.js";
import { Rng } from "./rng.js";
import { trialSolution } from "./trial.js";

export interface LossRecord {
  phase: "adam" | "lbfgs";
  iteration: number;
  loss: number;
}

export interface TrainResult {
  config: PinnConfig;
  /** (M+1) x (N+1), row-major */
  uGrid: Float64Array;
  pGrid: Float64Array;
  lossHistory: LossRecord[];
  finalLoss: number;
  finalParts: { pde: number; integral: number; total: number };
  params: Float64Array;
  uNet: Mlp;
  pNet: Mlp;
  pOffset: number;
  bundle: ProblemBundle;
}

export function train(bundle: ProblemBundle, overrides: Partial<PinnConfig> = {}): TrainResult {
  const config: PinnConfig = { ...DEFAULT_CONFIG, ...overrides };
  validateConfig(config);

  const uNet = new Mlp({ inputs: 2, hidden: config.uHidden, activation: config.activation });
  const pNet = new Mlp({ inputs: 1, hidden: config.pHidden, activation: config.activation });
  const pOffset = uNet.paramCount;
  const params = new Float64Array(uNet.paramCount + pNet.paramCount);

  const rng = new Rng(config.seed);
  uNet.init(params, 0, rng);
  pNet.init(params, pOffset, rng);
  const colloc = sampleCollocation(bundle, config.nF, rng);
  const constraint = buildConstraint(bundle, config.nG);

  const lossHistory: LossRecord[] = [];
  const grad = new Float64Array(params.length);

  const evalAt = (p: Float64Array, g: Float64Array): number =>
    lossAndGrad(p, g, uNet, pNet, pOffset, colloc, constraint, config.lambda).total;

  const adam = new Adam(params.length, { lr: config.adamLr });
  for (let epoch = 0; epoch < config.adamEpochs; epoch++) {
    const loss = evalAt(params, grad);
    if (!Number.isFinite(loss)) {
      throw new Error(`non-finite loss in adam phase at epoch ${epoch}`);
    }
    lossHistory.push({ phase: "adam", iteration: epoch, loss });
    adam.step(params, grad);
  }

  const result = lbfgs(params, (p, g) => {
    const loss = lossAndGrad(p, g, uNet, pNet, pOffset, colloc, constraint, config.lambda).total;
    return loss;
  }, {
    maxIter: config.lbfgsMaxIter,
    onAccept: (iter, loss) => {
      if (!Number.isFinite(loss)) {
        throw new Error(`non-finite loss in lbfgs phase at iteration ${iter}`);
      }
      lossHistory.push({ phase: "lbfgs", iteration: iter, loss });
    },
  });

  const finalParts = lossAndGrad(params, null, uNet, pNet, pOffset, colloc,
    constraint, config.lambda);
  const { uGrid, pGrid } = sampleOnGrid(params, uNet, pNet, pOffset, bundle);
  return {
    config, uGrid, pGrid, lossHistory, finalLoss: result.finalLoss, finalParts,
    params, uNet, pNet, pOffset, bundle,
  };
}

export function sampleOnGrid(
  params: Float64Array, uNet: Mlp, pNet: Mlp, pOffset: number, bundle: ProblemBundle,
): { uGrid: Float64Array; pGrid: Float64Array } {
  const { N, M, h, tau } = bundle;
  const nX = N + 1;
  const S = nX * (M + 1);
  const X = new Float64Array(2 * S);
  for (let k = 0; k <= M; k++) {
    for (let i = 0; i <= N; i++) {
      const s = k * nX + i;
      X[s] = 2 * i * h - 1;
      X[S + s] = 2 * k * tau - 1;
    }
  }
  const netOut = uNet.forwardValue(params, 0, X, S).out;
  const uGrid = new Float64Array(S);
  for (let k = 0; k <= M; k++) {
    for (let i = 0; i <= N; i++) {
      const s = k * nX + i;
      uGrid[s] = trialSolution(i * h, k * tau, netOut[s], bundle.phi[i]);
    }
  }
  const tNodes = new Float64Array(M + 1);
  for (let k = 0; k <= M; k++) tNodes[k] = k * tau;
  const pGrid = Float64Array.from(pNet.forwardValue(params, pOffset, tNodes, M + 1).out);
  return { uGrid, pGrid };
}

/** Write u/p samples and the loss history in the shared CSV conventions. */
export function writeResult(outDir: string, result: TrainResult): void {
  const { bundle, config } = result;
  const meta: Record<string, string | number> = {
    artifact: "invdiff-pinn",
    version: "0.1.0",
    l: bundle.l, T: bundle.T, N: bundle.N, M: bundle.M,
    n_f: config.nF, n_g: config.nG, lambda: config.lambda,
    u_hidden: config.uHidden.join("x"), p_hidden: config.pHidden.join("x"),
    adam_epochs: config.adamEpochs, adam_lr: config.adamLr,
    lbfgs_max_iter: config.lbfgsMaxIter, seed: config.seed,
  };
  const nX = bundle.N + 1;
  const surfaceHeader = ["t", ...Array.from({ length: nX }, (_, i) => `u_${i}`)];
  const surfaceRows: number[][] = [];
  for (let k = 0; k <= bundle.M; k++) {
    const row = [k * bundle.tau];
    for (let i = 0; i < nX; i++) row.push(result.uGrid[k * nX + i]);
    surfaceRows.push(row);
  }
  writeCsv(path.join(outDir, "u_surface.csv"), surfaceHeader, surfaceRows, meta);

  const traceRows: number[][] = [];
  for (let k = 0; k <= bundle.M; k++) {
    traceRows.push([k * bundle.tau, result.pGrid[k]]);
  }
  writeCsv(path.join(outDir, "p_trace.csv"), ["t", "p_numeric"], traceRows, meta);

  const historyRows = result.lossHistory.map((r) => [
    r.phase === "adam" ? 0 : 1, r.iteration, r.loss,
  ]);
  writeCsv(path.join(outDir, "loss_history.csv"),
    ["phase", "iteration", "loss"], historyRows, meta);
}
