export { Adam } from "./adam.js";
export { formatFloat, loadBundle, readCsv, writeCsv } from "./bundle.js";
export type { ProblemBundle } from "./bundle.js";
export { DEFAULT_CONFIG, validateConfig } from "./config.js";
export type { PinnConfig } from "./config.js";
export { lbfgs } from "./lbfgs.js";
export {
  buildConstraint, integralLossFromValues, lossAndGrad, pdeLossFromFields,
  sampleCollocation,
} from "./losses.js";
export type { CollocationBatch, ConstraintBatch } from "./losses.js";
export { Mlp } from "./mlp.js";
export { Rng } from "./rng.js";
export { sampleOnGrid, train, writeResult } from "./train.js";
export type { LossRecord, TrainResult } from "./train.js";
export { secondDerivative, trialSolution, trialWeight } from "./trial.js";
