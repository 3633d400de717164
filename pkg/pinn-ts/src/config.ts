/** Training configuration. Defaults are declared here and echoed into the
 * output metadata; every field is CLI-overridable. */

export interface PinnConfig {
  /** Interior collocation count for the residual loss. */
  nF: number;
  /** Constraint time-node count for the measurement loss. */
  nG: number;
  /** Penalty weight on the measurement loss. */
  lambda: number;
  uHidden: number[];
  pHidden: number[];
  activation: "tanh";
  adamEpochs: number;
  adamLr: number;
  lbfgsMaxIter: number;
  seed: number;
}

export const DEFAULT_CONFIG: PinnConfig = {
  nF: 1000,
  nG: 50,
  lambda: 10,
  uHidden: [64, 64],
  pHidden: [32, 32],
  activation: "tanh",
  adamEpochs: 5000,
  adamLr: 1e-3,
  lbfgsMaxIter: 2000,
  seed: 0,
};

export function validateConfig(cfg: PinnConfig): void {
  if (cfg.nF < 1) throw new Error("need at least one collocation point");
  if (cfg.nG < 1) throw new Error("need at least one constraint time node");
  if (!(cfg.lambda > 0)) throw new Error("penalty weight must be positive");
  for (const v of [cfg.adamEpochs, cfg.lbfgsMaxIter]) {
    if (v < 0 || !Number.isInteger(v)) throw new Error("iteration counts must be nonnegative integers");
  }
  if (!(cfg.adamLr > 0)) throw new Error("learning rate must be positive");
  if (cfg.activation !== "tanh") throw new Error("only tanh networks are supported");
}
