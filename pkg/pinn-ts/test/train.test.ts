import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { describe, expect, it } from "vitest";

import { loadBundle, readCsv } from "../src/bundle.js";
import { train, writeResult } from "../src/train.js";
import { gridErrors, makeBundle } from "./util.js";

const SMALL = {
  nF: 120,
  nG: 12,
  uHidden: [12, 12],
  pHidden: [8, 8],
  adamEpochs: 150,
  lbfgsMaxIter: 60,
  seed: 0,
};

describe("training", () => {
  it("is bitwise reproducible for a fixed seed", { timeout: 120_000 }, () => {
    const dir = makeBundle({ N: 30, M: 20 });
    const bundle = loadBundle(dir);
    const a = train(bundle, SMALL);
    const b = train(bundle, SMALL);
    expect(a.lossHistory.length).toBe(b.lossHistory.length);
    for (let i = 0; i < a.lossHistory.length; i++) {
      expect(a.lossHistory[i].loss).toBe(b.lossHistory[i].loss);
    }
    expect(Array.from(a.params)).toEqual(Array.from(b.params));
  });

  it("satisfies the hard constraints exactly after training", { timeout: 120_000 }, () => {
    const dir = makeBundle({ N: 30, M: 20 });
    const bundle = loadBundle(dir);
    const result = train(bundle, { ...SMALL, seed: 3 });
    const nX = bundle.N + 1;
    for (let i = 0; i < nX; i++) {
      expect(result.uGrid[i]).toBe(bundle.phi[i]); // t = 0 row
    }
    for (let k = 0; k <= bundle.M; k++) {
      expect(result.uGrid[k * nX]).toBe(0);
      expect(result.uGrid[k * nX + bundle.N]).toBe(0);
    }
  });

  it("decreases the loss and keeps the refinement phase monotone", { timeout: 120_000 }, () => {
    const dir = makeBundle({ N: 30, M: 20 });
    const bundle = loadBundle(dir);
    const result = train(bundle, SMALL);
    const first = result.lossHistory[0].loss;
    expect(result.finalLoss).toBeLessThan(first / 10);
    const refine = result.lossHistory.filter((r) => r.phase === "lbfgs");
    for (let i = 1; i < refine.length; i++) {
      expect(refine[i].loss).toBeLessThanOrEqual(refine[i - 1].loss);
    }
  });

  it("aborts with diagnostics when the loss blows up", { timeout: 60_000 }, () => {
    const dir = makeBundle({ N: 30, M: 20 });
    const bundle = loadBundle(dir);
    expect(() => train(bundle, { ...SMALL, lambda: 1e308, adamEpochs: 3 }))
      .toThrow(/non-finite loss/);
  });

  it("leaves the coefficient unidentified without the measurement term",
    { timeout: 300_000 }, () => {
      // vanishing penalty: residual alone cannot pin p(t)
      const dir = makeBundle({ N: 50, M: 25 });
      const bundle = loadBundle(dir);
      const cfg = { ...SMALL, nF: 250, adamEpochs: 500, lbfgsMaxIter: 150 };
      const constrained = train(bundle, cfg);
      const ablated = train(bundle, { ...cfg, lambda: 1e-12 });
      const conErr = gridErrors(constrained.uGrid, constrained.pGrid,
        bundle.N, bundle.M, bundle.h, bundle.tau);
      const ablErr = gridErrors(ablated.uGrid, ablated.pGrid,
        bundle.N, bundle.M, bundle.h, bundle.tau);
      expect(ablErr.erP).toBeGreaterThan(3 * conErr.erP);
    });

  it("writes u/p samples and the loss history as CSV artifacts", { timeout: 120_000 }, () => {
    const dir = makeBundle({ N: 30, M: 20 });
    const bundle = loadBundle(dir);
    const result = train(bundle, SMALL);
    const out = fs.mkdtempSync(path.join(os.tmpdir(), "pinn-out-"));
    writeResult(out, result);

    const surface = readCsv(path.join(out, "u_surface.csv"));
    expect(surface.header.length).toBe(bundle.N + 2);
    expect(surface.data.length).toBe(bundle.M + 1);
    expect(surface.meta.n_f).toBe(String(SMALL.nF));

    const trace = readCsv(path.join(out, "p_trace.csv"));
    expect(trace.header).toEqual(["t", "p_numeric"]);
    expect(trace.data.length).toBe(bundle.M + 1);

    const history = readCsv(path.join(out, "loss_history.csv"));
    expect(history.header).toEqual(["phase", "iteration", "loss"]);
    expect(history.data.length).toBe(result.lossHistory.length);
  });
});
