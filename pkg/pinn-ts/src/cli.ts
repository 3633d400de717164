#!/usr/bin/env node
/** Command line: train on a problem bundle, write u/p samples and the loss
 * history. Flags mirror the training configuration. */

import { parseArgs } from "node:util";

import { loadBundle } from "./bundle.js";
import { DEFAULT_CONFIG, PinnConfig } from "./config.js";
import { train, writeResult } from "./train.js";

function intList(value: string): number[] {
  return value.split(",").map((v) => parseInt(v, 10));
}

export function main(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      bundle: { type: "string" },
      "out-dir": { type: "string", default: "pinn-out" },
      "n-f": { type: "string" },
      "n-g": { type: "string" },
      lambda: { type: "string" },
      "u-hidden": { type: "string" },
      "p-hidden": { type: "string" },
      "adam-epochs": { type: "string" },
      "adam-lr": { type: "string" },
      "lbfgs-max-iter": { type: "string" },
      seed: { type: "string" },
      help: { type: "boolean", default: false },
    },
  });
  if (values.help || !values.bundle) {
    console.log(
      "usage: invdiff-pinn --bundle <dir> [--out-dir <dir>] [--n-f n] [--n-g n]\n" +
      "       [--lambda x] [--u-hidden 64,64] [--p-hidden 32,32]\n" +
      "       [--adam-epochs n] [--adam-lr x] [--lbfgs-max-iter n] [--seed n]",
    );
    return values.help ? 0 : 2;
  }
  const overrides: Partial<PinnConfig> = {};
  if (values["n-f"]) overrides.nF = parseInt(values["n-f"], 10);
  if (values["n-g"]) overrides.nG = parseInt(values["n-g"], 10);
  if (values.lambda) overrides.lambda = parseFloat(values.lambda);
  if (values["u-hidden"]) overrides.uHidden = intList(values["u-hidden"]);
  if (values["p-hidden"]) overrides.pHidden = intList(values["p-hidden"]);
  if (values["adam-epochs"]) overrides.adamEpochs = parseInt(values["adam-epochs"], 10);
  if (values["adam-lr"]) overrides.adamLr = parseFloat(values["adam-lr"]);
  if (values["lbfgs-max-iter"]) overrides.lbfgsMaxIter = parseInt(values["lbfgs-max-iter"], 10);
  if (values.seed) overrides.seed = parseInt(values.seed, 10);

  try {
    const bundle = loadBundle(values.bundle);
    const t0 = Date.now();
    const result = train(bundle, overrides);
    writeResult(values["out-dir"]!, result);
    const secs = ((Date.now() - t0) / 1000).toFixed(1);
    console.log(
      `trained in ${secs}s; final loss ${result.finalLoss.toExponential(3)}; ` +
      `results in ${values["out-dir"]}`,
    );
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

const isMain = process.argv[1] && import.meta.url.endsWith(
  process.argv[1].split("/").pop() ?? "",
);
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
