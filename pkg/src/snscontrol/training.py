"""Supervised learning of network parameters by backpropagation through time.

Sequences are regression targets: two constant feature series are clamped
onto the input neurons and the output neuron's activity, expressed in mV
(i.e. its potential clipped to the activation range), is compared against
a constant label series under mean squared error.  Gradients flow through
the full four-stage update including the quotient rule through the
``1 + V phi`` denominators.  A central-finite-difference oracle with kink
detection guards the reverse-mode implementation.

A compact MLP baseline shares the activation, the readout convention, the
optimizer and the loss so the two model families are directly comparable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import NetworkParams, activation, activation_slope_mask
from .errors import InvalidParameterError, TrainingDivergedError
from .subnets import ideal_op

__all__ = [
    "Dataset",
    "TrainConfig",
    "LossCurve",
    "Grads",
    "AdamState",
    "gen_dataset",
    "mse_loss",
    "bptt_grad",
    "finite_diff_grad",
    "adam_step",
    "train",
    "MlpParams",
    "build_mlp",
    "mlp_eval",
    "mlp_train",
    "write_loss_csv",
    "read_loss_csv",
]

OPS = ("add", "sub", "div", "mul")


@dataclass
class Dataset:
    """Constant-feature regression set.

    features : (N, 2, T) mV, constant along the last axis
    labels   : (N, T) mV, constant along the last axis
    """

    features: np.ndarray
    labels: np.ndarray
    dt: float
    seed: int
    op: str = ""

    @property
    def n_examples(self) -> int:
        return self.features.shape[0]

    @property
    def T(self) -> int:
        return self.features.shape[2]


@dataclass
class TrainConfig:
    epochs: int = 300
    batch_size: int = 32
    learning_rate: float = 1e-2
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    output_neuron: int = -1
    # first steps excluded from the loss; 2 covers the structural
    # information delay of the deepest (two-synapse) subnetwork
    warmup_mask: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise InvalidParameterError("epochs must be >= 1")
        if not (0 < self.beta1 < 1 and 0 < self.beta2 < 1):
            raise InvalidParameterError("Adam betas must lie in (0, 1)")


@dataclass
class LossCurve:
    """Per-epoch training MSE (mV^2) and wall-clock seconds."""

    mse: np.ndarray
    seconds: np.ndarray

    def __len__(self):
        return len(self.mse)


@dataclass
class Grads:
    W: np.ndarray
    V: np.ndarray
    tau: np.ndarray
    b: np.ndarray


def gen_dataset(op: str, n: int, T: int, dt: float, seed: int) -> Dataset:
    """Draw n examples with both features uniform on [0, 20] mV."""
    if n < 1 or T < 1:
        raise InvalidParameterError("need n >= 1 and T >= 1")
    rng = np.random.default_rng(seed)
    ab = rng.uniform(0.0, 20.0, size=(n, 2))
    labels = ideal_op(op, ab[:, 0], ab[:, 1])
    features = np.repeat(ab[:, :, None], T, axis=2)
    return Dataset(features=features,
                   labels=np.repeat(labels[:, None], T, axis=1),
                   dt=dt, seed=seed, op=op)


def mse_loss(pred: np.ndarray, label: np.ndarray, warmup: int = 0) -> float:
    """Mean squared error over steps warmup..T-1."""
    pred = np.asarray(pred, dtype=float)
    label = np.asarray(label, dtype=float)
    if pred.shape != label.shape:
        raise InvalidParameterError("pred and label must have equal shapes")
    if warmup >= pred.shape[-1]:
        raise InvalidParameterError("warmup must leave at least one step")
    d = pred[..., warmup:] - label[..., warmup:]
    return float(np.mean(d * d))


# ---------------------------------------------------------------------------
# batched forward/backward through the unrolled dynamics
# ---------------------------------------------------------------------------

def _clamped_array(params: NetworkParams) -> np.ndarray:
    return np.array(sorted(params.clamped), dtype=int)


def _forward_batch(params: NetworkParams, features: np.ndarray, T: int):
    """Unroll T steps for a batch of constant clamped inputs.

    features: (B, k) mV for the sorted clamped indices.
    Returns a cache dict with every intermediate needed by the backward
    pass plus int8 region codes (0 below band, 1 inside, 2 above) for the
    presynaptic potentials and the output readout.
    """
    n = params.n
    B = features.shape[0]
    clamped = _clamped_array(params)
    slope = 1.0 / (params.e_hi - params.e_lo)

    hs = np.zeros((T + 1, B, n))
    ps = np.empty((T, B, n))
    phis = np.empty((T, B, n))
    dens = np.empty((T, B, n))
    h_hats = np.empty((T, B, n))
    tau_hats = np.empty((T, B, n))
    zs = np.empty((T, B, n))
    codes = np.empty((T, B, n), dtype=np.int8)

    Wt = params.W.T
    Vt = params.V.T
    for t in range(T):
        p = hs[t].copy()
        if clamped.size:
            p[:, clamped] = features
        phi = activation(p, params.e_lo, params.e_hi)
        code = np.where(p <= params.e_lo, 0, np.where(p >= params.e_hi, 2, 1)).astype(np.int8)
        den = 1.0 + phi @ Vt
        num = params.b + phi @ Wt
        h_hat = num / den
        tau_hat = params.tau / den
        z = params.dt / (tau_hat + params.dt)
        h = (1.0 - z) * p + z * h_hat
        if clamped.size:
            h[:, clamped] = p[:, clamped]
        ps[t], phis[t], dens[t], h_hats[t], tau_hats[t], zs[t] = p, phi, den, h_hat, tau_hat, z
        codes[t] = code
        hs[t + 1] = h
    if not np.all(np.isfinite(hs[-1])):
        raise TrainingDivergedError("non-finite state in forward pass")
    return {
        "hs": hs, "ps": ps, "phis": phis, "dens": dens, "h_hats": h_hats,
        "tau_hats": tau_hats, "zs": zs, "codes": codes, "slope": slope,
        "clamped": clamped,
    }


def _readout(params: NetworkParams, cache, output: int):
    """Output activity in mV: the potential clipped to the activation band."""
    u = cache["hs"][1:, :, output]
    r = np.clip(u, params.e_lo, params.e_hi)
    rcode = np.where(u <= params.e_lo, 0, np.where(u >= params.e_hi, 2, 1)).astype(np.int8)
    return r, rcode


def _loss_from_cache(params: NetworkParams, cache, labels: np.ndarray,
                     output: int, warmup: int) -> float:
    r, _ = _readout(params, cache, output)
    return mse_loss(r.T, labels, warmup)


def bptt_grad(params: NetworkParams, features: np.ndarray, labels: np.ndarray,
              output: int | None = None, warmup: int = 0,
              w_mask: np.ndarray | None = None,
              v_mask: np.ndarray | None = None) -> tuple[Grads, float]:
    """Exact reverse-mode gradients of the batch-mean MSE.

    features: (B, k) constant clamped inputs; labels: (B, T).
    Gradients are zeroed outside the per-matrix learnability masks
    (defaulting to params.mask for both) and for clamped rows.
    """
    features = np.atleast_2d(np.asarray(features, dtype=float))
    labels = np.atleast_2d(np.asarray(labels, dtype=float))
    if features.shape[0] != labels.shape[0]:
        raise InvalidParameterError("batch sizes of features and labels differ")
    B, T = labels.shape
    n = params.n
    out = params.n - 1 if output is None else (output % n)
    w_mask = params.mask if w_mask is None else np.asarray(w_mask, dtype=bool)
    v_mask = params.mask if v_mask is None else np.asarray(v_mask, dtype=bool)

    cache = _forward_batch(params, features, T)
    r, rcode = _readout(params, cache, out)
    steps = T - warmup
    coef = 2.0 / (B * steps)
    loss = mse_loss(r.T, labels, warmup)

    gW = np.zeros((n, n))
    gV = np.zeros((n, n))
    gtau = np.zeros(n)
    gb = np.zeros(n)
    gh = np.zeros((B, n))
    clamped = cache["clamped"]
    slope = cache["slope"]

    for t in range(T - 1, -1, -1):
        if t >= warmup:
            gh[:, out] += coef * (r[t] - labels[:, t]) * (rcode[t] == 1)
        if clamped.size:
            gh[:, clamped] = 0.0
        p, phi, den = cache["ps"][t], cache["phis"][t], cache["dens"][t]
        h_hat, tau_hat, z = cache["h_hats"][t], cache["tau_hats"][t], cache["zs"][t]

        gz = gh * (h_hat - p)
        gh_hat = gh * z
        gp = gh * (1.0 - z)
        gtau_hat = gz * (-z * z / params.dt)
        gtau += (gtau_hat / den).sum(axis=0)
        gden = -(gtau_hat * tau_hat + gh_hat * h_hat) / den
        gnum = gh_hat / den
        gb += gnum.sum(axis=0)
        gW += gnum.T @ phi
        gV += gden.T @ phi
        gphi = gnum @ params.W + gden @ params.V
        gp += gphi * (cache["codes"][t] == 1) * slope
        if clamped.size:
            gp[:, clamped] = 0.0
        gh = gp

    gW[~w_mask] = 0.0
    gV[~v_mask] = 0.0
    if clamped.size:
        gW[clamped, :] = 0.0
        gV[clamped, :] = 0.0
        gtau[clamped] = 0.0
        gb[clamped] = 0.0
    return Grads(W=gW, V=gV, tau=gtau, b=gb), loss


def finite_diff_grad(params: NetworkParams, features: np.ndarray, labels: np.ndarray,
                     eps: float = 1e-5, output: int | None = None, warmup: int = 0,
                     w_mask: np.ndarray | None = None,
                     v_mask: np.ndarray | None = None,
                     return_kink_mask: bool = False):
    """Central differences of the same loss, parameter by parameter.

    With ``return_kink_mask=True`` also returns a Grads-shaped boolean
    structure marking entries whose +/-eps evaluations stayed in the same
    activation regions (kink-free, safe to compare against reverse mode).
    """
    if not eps > 0:
        raise InvalidParameterError("eps must be > 0")
    features = np.atleast_2d(np.asarray(features, dtype=float))
    labels = np.atleast_2d(np.asarray(labels, dtype=float))
    T = labels.shape[1]
    n = params.n
    out = params.n - 1 if output is None else (output % n)
    w_mask = params.mask if w_mask is None else np.asarray(w_mask, dtype=bool)
    v_mask = params.mask if v_mask is None else np.asarray(v_mask, dtype=bool)
    clamped = set(params.clamped)

    def region_sig(cache, rcode):
        return cache["codes"].tobytes() + rcode.tobytes()

    def eval_loss(p: NetworkParams):
        cache = _forward_batch(p, features, T)
        r, rcode = _readout(p, cache, out)
        return mse_loss(r.T, labels, warmup), region_sig(cache, rcode)

    grads = Grads(W=np.zeros((n, n)), V=np.zeros((n, n)), tau=np.zeros(n), b=np.zeros(n))
    clean = Grads(W=np.zeros((n, n), dtype=bool), V=np.zeros((n, n), dtype=bool),
                  tau=np.zeros(n, dtype=bool), b=np.zeros(n, dtype=bool))
    _, base_sig = eval_loss(params)

    def probe(get_arr, idx):
        work = params.copy()
        arr = get_arr(work)
        orig = arr[idx]
        arr[idx] = orig + eps
        try:
            lp, sp = eval_loss(work)
            arr[idx] = orig - eps
            lm, sm = eval_loss(work)
        except TrainingDivergedError:
            return 0.0, False
        return (lp - lm) / (2 * eps), (sp == sm == base_sig)

    for i in range(n):
        if i in clamped:
            continue
        for j in range(n):
            if w_mask[i, j]:
                g, ok = probe(lambda p: p.W, (i, j))
                grads.W[i, j], clean.W[i, j] = g, ok
            if v_mask[i, j] and params.V[i, j] - eps >= 0.0:
                # the -eps probe must not leave the V >= 0 domain
                g, ok = probe(lambda p: p.V, (i, j))
                grads.V[i, j], clean.V[i, j] = g, ok
        if params.tau[i] - eps >= 0.0:
            g, ok = probe(lambda p: p.tau, i)
            grads.tau[i], clean.tau[i] = g, ok
        g, ok = probe(lambda p: p.b, i)
        grads.b[i], clean.b[i] = g, ok

    if return_kink_mask:
        return grads, clean
    return grads


# ---------------------------------------------------------------------------
# optimizer
# ---------------------------------------------------------------------------

@dataclass
class AdamState:
    step: int = 0
    m: dict = field(default_factory=dict)
    v: dict = field(default_factory=dict)

    @classmethod
    def zeros_like(cls, params: NetworkParams) -> "AdamState":
        shapes = {"W": params.W, "V": params.V, "tau": params.tau, "b": params.b}
        return cls(step=0,
                   m={k: np.zeros_like(a) for k, a in shapes.items()},
                   v={k: np.zeros_like(a) for k, a in shapes.items()})


def _adam_update(m, v, g, t, lr, beta1, beta2, eps):
    m[:] = beta1 * m + (1 - beta1) * g
    v[:] = beta2 * v + (1 - beta2) * g * g
    mhat = m / (1 - beta1 ** t)
    vhat = v / (1 - beta2 ** t)
    return lr * mhat / (np.sqrt(vhat) + eps)


def adam_step(opt: AdamState, params: NetworkParams, grads: Grads,
              lr: float = 1e-2, beta1: float = 0.9, beta2: float = 0.999,
              eps: float = 1e-8, w_mask: np.ndarray | None = None,
              v_mask: np.ndarray | None = None) -> tuple[AdamState, NetworkParams]:
    """Bias-corrected Adam followed by projection onto the feasible set.

    V and tau are projected onto >= 0 and the learnability masks are
    re-applied, making the overall scheme projected gradient descent.
    """
    w_mask = params.mask if w_mask is None else np.asarray(w_mask, dtype=bool)
    v_mask = params.mask if v_mask is None else np.asarray(v_mask, dtype=bool)
    out = params.copy()
    opt.step += 1
    t = opt.step
    out.W -= _adam_update(opt.m["W"], opt.v["W"], grads.W, t, lr, beta1, beta2, eps)
    out.V -= _adam_update(opt.m["V"], opt.v["V"], grads.V, t, lr, beta1, beta2, eps)
    out.tau -= _adam_update(opt.m["tau"], opt.v["tau"], grads.tau, t, lr, beta1, beta2, eps)
    out.b -= _adam_update(opt.m["b"], opt.v["b"], grads.b, t, lr, beta1, beta2, eps)
    np.maximum(out.V, 0.0, out=out.V)
    np.maximum(out.tau, 0.0, out=out.tau)
    out.W[~w_mask] = 0.0
    out.V[~v_mask] = 0.0
    return opt, out


def _apply_sign_constraints(W: np.ndarray, signs: np.ndarray | None):
    # signs: +1 nonneg, -1 nonpos, 0 free
    if signs is None:
        return
    pos = signs > 0
    neg = signs < 0
    W[pos] = np.maximum(W[pos], 0.0)
    W[neg] = np.minimum(W[neg], 0.0)


def train(topology, dataset: Dataset, config: TrainConfig) -> tuple[NetworkParams, LossCurve]:
    """Minibatch BPTT with Adam; returns the best-loss parameters and the curve.

    Deterministic for a fixed config seed: the shuffle generator, the batch
    order and the summed reductions are all fixed.
    """
    params = topology.build_params()
    w_mask, v_mask = topology.w_mask, topology.v_mask
    opt = AdamState.zeros_like(params)
    rng = np.random.default_rng(config.seed)
    N = dataset.n_examples
    T = dataset.T
    feats = dataset.features[:, :, 0]
    labels = dataset.labels
    out = config.output_neuron % params.n

    mses = np.empty(config.epochs)
    secs = np.empty(config.epochs)
    best = (np.inf, params.copy())
    for epoch in range(config.epochs):
        t0 = time.perf_counter()
        order = rng.permutation(N)
        total = 0.0
        for lo in range(0, N, config.batch_size):
            idx = order[lo:lo + config.batch_size]
            grads, loss = bptt_grad(params, feats[idx], labels[idx],
                                    output=out, warmup=config.warmup_mask,
                                    w_mask=w_mask, v_mask=v_mask)
            if not np.isfinite(loss):
                raise TrainingDivergedError(f"loss diverged at epoch {epoch}", epoch=epoch)
            total += loss * len(idx)
            opt, params = adam_step(opt, params, grads,
                                    lr=config.learning_rate, beta1=config.beta1,
                                    beta2=config.beta2, eps=config.eps,
                                    w_mask=w_mask, v_mask=v_mask)
            _apply_sign_constraints(params.W, getattr(topology, "w_signs", None))
        mses[epoch] = total / N
        secs[epoch] = time.perf_counter() - t0
        if mses[epoch] < best[0]:
            best = (mses[epoch], params.copy())
    return best[1], LossCurve(mse=mses, seconds=secs)


# ---------------------------------------------------------------------------
# compact MLP baseline
# ---------------------------------------------------------------------------

@dataclass
class MlpParams:
    """Feedforward net sharing the activation and mV readout conventions.

    weights[l] has shape (n_out, n_in); inputs pass through the activation
    first, hidden potentials pass through it between layers, and the final
    potential is read out clipped to [e_lo, e_hi].
    """

    weights: list
    biases: list
    e_lo: float = 0.0
    e_hi: float = 20.0

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return tuple(w.shape[0] for w in self.weights)


def build_mlp(op: str, seed: int = 0) -> MlpParams:
    """Baseline sizes: (2->1) for add/sub/div, (2->2->1) for mul."""
    if op not in OPS:
        raise InvalidParameterError(f"unknown operation {op!r}")
    sizes = [2, 2, 1] if op == "mul" else [2, 1]
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for n_in, n_out in zip(sizes[:-1], sizes[1:]):
        weights.append(rng.uniform(0.0, 10.0, size=(n_out, n_in)))
        biases.append(np.full(n_out, 2.0))
    biases[-1][:] = 0.0
    return MlpParams(weights=weights, biases=biases)


def _mlp_forward(mlp: MlpParams, ab: np.ndarray):
    """ab: (B, 2) mV. Returns (pred (B,), per-layer caches)."""
    x = activation(ab, mlp.e_lo, mlp.e_hi)
    caches = [(ab, x)]
    for l, (W, c) in enumerate(zip(mlp.weights, mlp.biases)):
        u = x @ W.T + c
        if l < len(mlp.weights) - 1:
            x = activation(u, mlp.e_lo, mlp.e_hi)
        else:
            x = np.clip(u, mlp.e_lo, mlp.e_hi)
        caches.append((u, x))
    return x[:, 0], caches


def mlp_eval(mlp: MlpParams, a: float, b: float) -> float:
    pred, _ = _mlp_forward(mlp, np.array([[a, b]], dtype=float))
    return float(pred[0])


def _mlp_grad(mlp: MlpParams, ab: np.ndarray, y: np.ndarray):
    pred, caches = _mlp_forward(mlp, ab)
    B = ab.shape[0]
    loss = float(np.mean((pred - y) ** 2))
    slope = 1.0 / (mlp.e_hi - mlp.e_lo)
    u_out = caches[-1][0]
    g = (2.0 / B) * (pred - y)[:, None] * activation_slope_mask(u_out, mlp.e_lo, mlp.e_hi)
    gws, gcs = [], []
    for l in range(len(mlp.weights) - 1, -1, -1):
        x_in = caches[l][1]
        gws.append(g.T @ x_in)
        gcs.append(g.sum(axis=0))
        if l > 0:
            u_in = caches[l][0]
            g = (g @ mlp.weights[l]) * activation_slope_mask(u_in, mlp.e_lo, mlp.e_hi) * slope
    return list(reversed(gws)), list(reversed(gcs)), loss


def mlp_train(mlp: MlpParams, dataset: Dataset, config: TrainConfig) -> tuple[MlpParams, LossCurve]:
    """Plain backprop with the same Adam and loss.

    Features and labels are constant over the sequence, so the static
    per-example squared error equals the sequence-mean loss.
    """
    mlp = MlpParams([w.copy() for w in mlp.weights], [c.copy() for c in mlp.biases],
                    mlp.e_lo, mlp.e_hi)
    rng = np.random.default_rng(config.seed)
    feats = dataset.features[:, :, 0]
    labels = dataset.labels[:, 0]
    N = dataset.n_examples
    ms = [np.zeros_like(w) for w in mlp.weights] + [np.zeros_like(c) for c in mlp.biases]
    vs = [np.zeros_like(a) for a in ms]
    step = 0
    mses = np.empty(config.epochs)
    secs = np.empty(config.epochs)
    best = (np.inf, None)
    for epoch in range(config.epochs):
        t0 = time.perf_counter()
        order = rng.permutation(N)
        total = 0.0
        for lo in range(0, N, config.batch_size):
            idx = order[lo:lo + config.batch_size]
            gws, gcs, loss = _mlp_grad(mlp, feats[idx], labels[idx])
            if not np.isfinite(loss):
                raise TrainingDivergedError(f"loss diverged at epoch {epoch}", epoch=epoch)
            total += loss * len(idx)
            step += 1
            grads = gws + gcs
            tensors = mlp.weights + mlp.biases
            for k, (arr, g) in enumerate(zip(tensors, grads)):
                arr -= _adam_update(ms[k], vs[k], g, step, config.learning_rate,
                                    config.beta1, config.beta2, config.eps)
        mses[epoch] = total / N
        secs[epoch] = time.perf_counter() - t0
        if mses[epoch] < best[0]:
            best = (mses[epoch], MlpParams([w.copy() for w in mlp.weights],
                                           [c.copy() for c in mlp.biases],
                                           mlp.e_lo, mlp.e_hi))
    return best[1], LossCurve(mse=mses, seconds=secs)


# ---------------------------------------------------------------------------
# gradient-check suite
# ---------------------------------------------------------------------------

def _relative_error(a: float, b: float, floor: float = 1e-6) -> float:
    return abs(a - b) / max(floor, abs(a), abs(b))


def gradcheck_suite(n_nets: int = 100, n_neurons: int = 4, T: int = 10,
                    batch: int = 3, seed: int = 0, eps: float = 1e-5,
                    corrupt: bool = False) -> tuple[float, float]:
    """Reverse-mode vs central-difference comparison over random networks.

    Returns (max relative error over kink-free parameters, skipped fraction).
    Perturbations that cross an activation kink are detected by comparing
    region codes of the two probe runs and excluded.  ``corrupt`` is a test
    hook that injects a deliberate error into the reverse-mode result.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    checked = 0
    skipped = 0
    for _ in range(n_nets):
        n = n_neurons
        clamped = (0,) if n > 1 else ()
        mask = rng.random((n, n)) < 0.6
        mask[list(clamped), :] = False
        W = np.where(mask, rng.uniform(-15.0, 15.0, (n, n)), 0.0)
        V = np.where(mask, rng.uniform(0.1, 2.0, (n, n)), 0.0)
        params = NetworkParams(W=W, V=V,
                               tau=rng.uniform(0.02, 0.2, n),
                               b=rng.uniform(-2.0, 8.0, n),
                               dt=0.1, mask=mask, clamped=clamped)
        feats = rng.uniform(0.0, 20.0, (batch, len(clamped)))
        labels = rng.uniform(0.0, 20.0, (batch, T))
        exact, _ = bptt_grad(params, feats, labels)
        if corrupt:
            exact.b = exact.b + 1e-2
        approx, clean = finite_diff_grad(params, feats, labels, eps=eps,
                                         return_kink_mask=True)
        for name in ("W", "V", "tau", "b"):
            g1 = np.atleast_1d(getattr(exact, name)).ravel()
            g2 = np.atleast_1d(getattr(approx, name)).ravel()
            ok = np.atleast_1d(getattr(clean, name)).ravel()
            live = np.ones_like(ok)
            if name == "W":
                live = params.mask.ravel()
            elif name == "V":
                live = params.mask.ravel()
            elif name in ("tau", "b"):
                live = np.ones(params.n, dtype=bool)
                live[list(clamped)] = False
            for k in np.flatnonzero(live):
                if ok[k]:
                    checked += 1
                    worst = max(worst, _relative_error(g1[k], g2[k]))
                else:
                    skipped += 1
    total = checked + skipped
    return worst, (skipped / total if total else 0.0)


# ---------------------------------------------------------------------------
# loss-curve CSV
# ---------------------------------------------------------------------------

def write_loss_csv(path, curve: LossCurve):
    with open(path, "w") as fh:
        fh.write("epoch,mse,seconds\n")
        for i, (m, s) in enumerate(zip(curve.mse, curve.seconds)):
            fh.write(f"{i},{float(m)!r},{float(s)!r}\n")


def read_loss_csv(path) -> LossCurve:
    mses, secs = [], []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "epoch,mse,seconds":
            raise InvalidParameterError(f"unexpected loss CSV header: {header}")
        for line in fh:
            _, m, s = line.strip().split(",")
            mses.append(float(m))
            secs.append(float(s))
    return LossCurve(mse=np.array(mses), seconds=np.array(secs))
