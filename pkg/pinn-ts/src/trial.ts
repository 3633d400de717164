/** Trial solution with hard-wired initial and boundary conditions:
 *
 *   u(x,t) = (1 - t) phi(x) + x (1 - x) t N(x,t)
 *
 * At t=0 the second term vanishes and u equals phi exactly; at x=0 and x=1
 * both terms vanish, so the Dirichlet values hold for any network output.
 */

export function trialSolution(x: number, t: number, netOutput: number, phiAtX: number): number {
  return (1 - t) * phiAtX + x * (1 - x) * t * netOutput;
}

/** Multiplier of the network output inside the trial function. */
export function trialWeight(x: number, t: number): number {
  return x * (1 - x) * t;
}

/** Second derivative of grid samples by finite differences: fourth-order
 * centered in the interior (second-order at the first/last interior node),
 * accurate far below the training error floor for smooth phi. */
export function secondDerivative(samples: Float64Array, h: number): Float64Array {
  const n = samples.length;
  const out = new Float64Array(n);
  const h2 = h * h;
  for (let i = 2; i <= n - 3; i++) {
    out[i] = (-samples[i - 2] + 16 * samples[i - 1] - 30 * samples[i]
      + 16 * samples[i + 1] - samples[i + 2]) / (12 * h2);
  }
  if (n >= 3) {
    out[1] = (samples[0] - 2 * samples[1] + samples[2]) / h2;
    out[n - 2] = (samples[n - 3] - 2 * samples[n - 2] + samples[n - 1]) / h2;
    out[0] = (2 * samples[0] - 5 * samples[1] + 4 * samples[2] - samples[3]) / h2;
    out[n - 1] = (2 * samples[n - 1] - 5 * samples[n - 2] + 4 * samples[n - 3] - samples[n - 4]) / h2;
  }
  return out;
}
