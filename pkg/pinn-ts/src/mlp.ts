/** Fully connected tanh networks with an analytic derivative-channel forward
 * pass and hand-derived backprop.
 *
 * Batches are stacked feature-major (see linalg). The derivative pass for
 * 2-input nets propagates four channels per sample — value, d/dx, d2/dx2,
 * d/dt — stored as four contiguous column blocks of one width-4B batch, so
 * every linear layer is a single matmul. Only the pointwise tanh mixes
 * channels:
 *
 *   a    = tanh(z)                    d := 1 - a^2
 *   a_x  = d z_x
 *   a_xx = d z_xx - 2 a d z_x^2
 *   a_t  = d z_t
 *
 * The backward pass reverses exactly this computation, so parameter
 * gradients of any linear combination of (N, N_x, N_xx, N_t) are exact.
 */

import { accumOuter, matmul, matmulT } from "./linalg.js";
import { Rng } from "./rng.js";

export interface MlpSpec {
  inputs: number;
  hidden: number[];
  activation: "tanh";
}

interface LayerShape {
  rows: number;
  cols: number;
  wOffset: number;
  bOffset: number;
}

export interface PassState {
  /** Post-GEMM pre-activation per layer (hidden layers only). */
  Z: Float64Array[];
  /** Post-activation per layer, plus the input batch at index -1 handled separately. */
  A: Float64Array[];
  input: Float64Array;
  width: number;
  /** Output row(s): length width. */
  out: Float64Array;
}

export class Mlp {
  readonly spec: MlpSpec;
  readonly layers: LayerShape[] = [];
  readonly paramCount: number;
  /** reused batch workspaces, keyed by role/layer/width */
  private pool = new Map<string, Float64Array>();

  constructor(spec: MlpSpec) {
    if (spec.hidden.length < 1 || spec.hidden.some((w) => w < 1)) {
      throw new Error("network needs at least one hidden layer of width >= 1");
    }
    if (spec.activation !== "tanh") {
      throw new Error(`unsupported activation ${spec.activation}`);
    }
    this.spec = spec;
    let offset = 0;
    let fanIn = spec.inputs;
    for (const width of spec.hidden) {
      this.layers.push({ rows: width, cols: fanIn, wOffset: offset, bOffset: offset + width * fanIn });
      offset += width * fanIn + width;
      fanIn = width;
    }
    // linear output row
    this.layers.push({ rows: 1, cols: fanIn, wOffset: offset, bOffset: offset + fanIn });
    offset += fanIn + 1;
    this.paramCount = offset;
  }

  private buf(key: string, size: number): Float64Array {
    let b = this.pool.get(key);
    if (!b || b.length !== size) {
      b = new Float64Array(size);
      this.pool.set(key, b);
    }
    return b;
  }

  /** Glorot-uniform weights, zero biases, written into params[offset..]. */
  init(params: Float64Array, offset: number, rng: Rng): void {
    for (const layer of this.layers) {
      const scale = Math.sqrt(6.0 / (layer.rows + layer.cols));
      for (let i = 0; i < layer.rows * layer.cols; i++) {
        params[offset + layer.wOffset + i] = rng.uniform(-scale, scale);
      }
      for (let i = 0; i < layer.rows; i++) {
        params[offset + layer.bOffset + i] = 0;
      }
    }
  }

  /** Value-only forward. X is (inputs x B). Returns state for backprop. */
  forwardValue(params: Float64Array, offset: number, X: Float64Array, B: number): PassState {
    const Z: Float64Array[] = [];
    const A: Float64Array[] = [];
    let act = X;
    for (let l = 0; l < this.layers.length - 1; l++) {
      const { rows, cols, wOffset, bOffset } = this.layers[l];
      const z = this.buf(`vz${l}:${B}`, rows * B);
      matmul(z, params.subarray(offset + wOffset) as Float64Array, act, rows, cols, B);
      for (let j = 0; j < rows; j++) {
        const bias = params[offset + bOffset + j];
        const row = j * B;
        for (let b = 0; b < B; b++) z[row + b] += bias;
      }
      const a = this.buf(`va${l}:${B}`, rows * B);
      for (let i = 0; i < z.length; i++) a[i] = Math.tanh(z[i]);
      Z.push(z);
      A.push(a);
      act = a;
    }
    const outLayer = this.layers[this.layers.length - 1];
    const out = this.buf(`vout:${B}`, B);
    matmul(out, params.subarray(offset + outLayer.wOffset) as Float64Array, act, 1, outLayer.cols, B);
    const bias = params[offset + outLayer.bOffset];
    for (let b = 0; b < B; b++) out[b] += bias;
    return { Z, A, input: X, width: B, out };
  }

  /** Backprop of sum_b outBar[b] * out[b] through a value pass. */
  backpropValue(
    params: Float64Array, offset: number, state: PassState,
    outBar: Float64Array, grad: Float64Array,
  ): void {
    const B = state.width;
    const outLayer = this.layers[this.layers.length - 1];
    const last = state.A[state.A.length - 1];
    // output layer
    for (let i = 0; i < outLayer.cols; i++) {
      let acc = 0;
      const row = i * B;
      for (let b = 0; b < B; b++) acc += outBar[b] * last[row + b];
      grad[offset + outLayer.wOffset + i] += acc;
    }
    let acc = 0;
    for (let b = 0; b < B; b++) acc += outBar[b];
    grad[offset + outLayer.bOffset] += acc;

    let aBar = this.buf(`vabar:${B}`, outLayer.cols * B);
    const w3 = params.subarray(offset + outLayer.wOffset) as Float64Array;
    for (let i = 0; i < outLayer.cols; i++) {
      const row = i * B;
      for (let b = 0; b < B; b++) aBar[row + b] = w3[i] * outBar[b];
    }

    for (let l = this.layers.length - 2; l >= 0; l--) {
      const { rows, cols, wOffset, bOffset } = this.layers[l];
      const a = state.A[l];
      const zBar = this.buf(`vzbar${l}:${B}`, rows * B);
      for (let i = 0; i < zBar.length; i++) {
        const av = a[i];
        zBar[i] = aBar[i] * (1 - av * av);
      }
      const below = l === 0 ? state.input : state.A[l - 1];
      accumOuter(grad.subarray(offset + wOffset) as Float64Array, zBar, below, rows, cols, B);
      for (let j = 0; j < rows; j++) {
        let s = 0;
        const row = j * B;
        for (let b = 0; b < B; b++) s += zBar[row + b];
        grad[offset + bOffset + j] += s;
      }
      if (l > 0) {
        const nextBar = this.buf(`vnbar${l}:${B}`, cols * B);
        matmulT(nextBar, params.subarray(offset + wOffset) as Float64Array, zBar, rows, cols, B);
        aBar = nextBar;
      }
    }
  }

  /** Four-channel forward for 2-input nets. X4 is (inputs x 4B): column
   * blocks [value | d/dx | d2/dx2 | d/dt]. Bias enters the value block only.
   * Output rows: out[c*B + b] is channel c of sample b. */
  forwardDeriv(params: Float64Array, offset: number, X4: Float64Array, B: number): PassState {
    if (this.spec.inputs !== 2) throw new Error("derivative pass requires 2 inputs");
    const W = 4 * B;
    const Z: Float64Array[] = [];
    const A: Float64Array[] = [];
    let act = X4;
    for (let l = 0; l < this.layers.length - 1; l++) {
      const { rows, cols, wOffset, bOffset } = this.layers[l];
      const z = this.buf(`dz${l}:${W}`, rows * W);
      matmul(z, params.subarray(offset + wOffset) as Float64Array, act, rows, cols, W);
      for (let j = 0; j < rows; j++) {
        const bias = params[offset + bOffset + j];
        const row = j * W;
        for (let b = 0; b < B; b++) z[row + b] += bias; // value block only
      }
      const a = this.buf(`da${l}:${W}`, rows * W);
      for (let j = 0; j < rows; j++) {
        const row = j * W;
        for (let b = 0; b < B; b++) {
          const zv = z[row + b];
          const zx = z[row + B + b];
          const zxx = z[row + 2 * B + b];
          const zt = z[row + 3 * B + b];
          const av = Math.tanh(zv);
          const d = 1 - av * av;
          a[row + b] = av;
          a[row + B + b] = d * zx;
          a[row + 2 * B + b] = d * zxx - 2 * av * d * zx * zx;
          a[row + 3 * B + b] = d * zt;
        }
      }
      Z.push(z);
      A.push(a);
      act = a;
    }
    const outLayer = this.layers[this.layers.length - 1];
    const out = this.buf(`dout:${W}`, W);
    matmul(out, params.subarray(offset + outLayer.wOffset) as Float64Array, act, 1, outLayer.cols, W);
    const bias = params[offset + outLayer.bOffset];
    for (let b = 0; b < B; b++) out[b] += bias;
    return { Z, A, input: X4, width: W, out };
  }

  /** Backprop of sum_{b,c} outBar[c*B+b] * out_c[b] through a derivative pass. */
  backpropDeriv(
    params: Float64Array, offset: number, state: PassState,
    outBar: Float64Array, grad: Float64Array, B: number,
  ): void {
    const W = 4 * B;
    const outLayer = this.layers[this.layers.length - 1];
    const last = state.A[state.A.length - 1];
    for (let i = 0; i < outLayer.cols; i++) {
      let acc = 0;
      const row = i * W;
      for (let k = 0; k < W; k++) acc += outBar[k] * last[row + k];
      grad[offset + outLayer.wOffset + i] += acc;
    }
    let acc = 0;
    for (let b = 0; b < B; b++) acc += outBar[b]; // bias feeds value channel
    grad[offset + outLayer.bOffset] += acc;

    let aBar = this.buf(`dabar:${W}`, outLayer.cols * W);
    const w3 = params.subarray(offset + outLayer.wOffset) as Float64Array;
    for (let i = 0; i < outLayer.cols; i++) {
      const row = i * W;
      for (let k = 0; k < W; k++) aBar[row + k] = w3[i] * outBar[k];
    }

    for (let l = this.layers.length - 2; l >= 0; l--) {
      const { rows, cols, wOffset, bOffset } = this.layers[l];
      const a = state.A[l];
      const z = state.Z[l];
      const zBar = this.buf(`dzbar${l}:${W}`, rows * W);
      for (let j = 0; j < rows; j++) {
        const row = j * W;
        for (let b = 0; b < B; b++) {
          const av = a[row + b];
          const d = 1 - av * av;
          const zx = z[row + B + b];
          const zxx = z[row + 2 * B + b];
          const zt = z[row + 3 * B + b];
          const bv = aBar[row + b];
          const bx = aBar[row + B + b];
          const bxx = aBar[row + 2 * B + b];
          const bt = aBar[row + 3 * B + b];
          zBar[row + b] = bv * d
            + bx * (-2 * av * d * zx)
            + bt * (-2 * av * d * zt)
            + bxx * (-2 * av * d * zxx - 2 * d * (1 - 3 * av * av) * zx * zx);
          zBar[row + B + b] = bx * d + bxx * (-4 * av * d * zx);
          zBar[row + 2 * B + b] = bxx * d;
          zBar[row + 3 * B + b] = bt * d;
        }
      }
      const below = l === 0 ? state.input : state.A[l - 1];
      accumOuter(grad.subarray(offset + wOffset) as Float64Array, zBar, below, rows, cols, W);
      for (let j = 0; j < rows; j++) {
        let s = 0;
        const row = j * W;
        for (let b = 0; b < B; b++) s += zBar[row + b]; // value block only
        grad[offset + bOffset + j] += s;
      }
      if (l > 0) {
        const nextBar = this.buf(`dnbar${l}:${W}`, cols * W);
        matmulT(nextBar, params.subarray(offset + wOffset) as Float64Array, zBar, rows, cols, W);
        aBar = nextBar;
      }
    }
  }
}
