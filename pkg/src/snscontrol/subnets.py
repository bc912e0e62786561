"""Factories for the four arithmetic subnetwork topologies.

Each topology is a tiny feedforward wiring pattern over the shunting
dynamics: two clamped input neurons, an optional interneuron, and one
output neuron.  Learnability is tracked with separate masks for the
transmission matrix W and the shunting matrix V (a synapse may learn one,
the other, or both); the union of the two is the synapse-existence mask
stored on NetworkParams.

  add : input1 -> output and input2 -> output transmission (W only)
  sub : same wiring; learning drives the second weight negative
  div : input1 -> output transmission (W), input2 -> output shunt (V)
  mul : input1 -> output transmission, input2 -> interneuron transmission
        (initialized inhibitory), interneuron -> output shunt

The multiplication interneuron starts tonically active (positive bias);
with a purely inhibitory drive and a zero bias it would sit permanently
below the activation band where the kink subgradient is zero and no
gradient could ever reach it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import NetworkParams, params_from_json, params_to_json, steady_state
from .errors import InvalidParameterError

__all__ = [
    "Topology",
    "build_topology",
    "ideal_op",
    "eval_contour",
    "contour_grid",
    "write_contour_csv",
    "classify_synapses",
    "topology_to_json",
    "topology_from_json",
    "OPS",
]

OPS = ("add", "sub", "div", "mul")


def ideal_op(op: str, a, b):
    """Ground-truth arithmetic targets in mV on the [0, 20] operating range.

    Activities cannot be negative and saturate at the upper threshold, so
    add and sub are clipped to [0, 20] (sub is rectified); div is the
    shunting identity a / (1 + b); mul is a*b rescaled into range.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if op == "add":
        return np.clip(a + b, 0.0, 20.0)
    if op == "sub":
        return np.clip(a - b, 0.0, 20.0)
    if op == "div":
        return a / (1.0 + b)
    if op == "mul":
        return a * b / 20.0
    raise InvalidParameterError(f"unknown operation {op!r}")


@dataclass
class Topology:
    """Named sparse wiring pattern with initial values and constraints.

    w_signs entries: +1 constrain nonnegative, -1 nonpositive, 0 free.
    """

    name: str
    n: int
    inputs: tuple[int, int]
    output: int
    w_mask: np.ndarray
    v_mask: np.ndarray
    w_init: np.ndarray
    v_init: np.ndarray
    tau_init: np.ndarray
    b_init: np.ndarray
    w_signs: np.ndarray | None = None
    init_seed: int = 0
    dt: float = 0.1
    e_lo: float = 0.0
    e_hi: float = 20.0

    @property
    def mask(self) -> np.ndarray:
        """Synapse-existence mask: union of the W and V learnability masks."""
        return self.w_mask | self.v_mask

    def build_params(self) -> NetworkParams:
        return NetworkParams(
            W=self.w_init.copy(), V=self.v_init.copy(),
            tau=self.tau_init.copy(), b=self.b_init.copy(),
            dt=self.dt, e_lo=self.e_lo, e_hi=self.e_hi,
            mask=self.mask.copy(), clamped=self.inputs)


def build_topology(op: str, seed: int = 0, mul_inhibitory_init: bool = True) -> Topology:
    """Construct the wiring pattern and seeded initial values for one op."""
    if op not in OPS:
        raise InvalidParameterError(f"unknown operation {op!r}")
    rng = np.random.default_rng(seed)
    n = 4 if op == "mul" else 3
    out = n - 1
    w_mask = np.zeros((n, n), dtype=bool)
    v_mask = np.zeros((n, n), dtype=bool)
    W = np.zeros((n, n))
    V = np.zeros((n, n))
    b = np.zeros(n)
    tau = np.zeros(n)
    tau[2:] = 0.05

    if op in ("add", "sub"):
        w_mask[out, 0] = w_mask[out, 1] = True
        W[out, 0] = rng.uniform(0.0, 10.0)
        W[out, 1] = rng.uniform(0.0, 10.0)
    elif op == "div":
        w_mask[out, 0] = True
        v_mask[out, 1] = True
        W[out, 0] = rng.uniform(0.0, 10.0)
        V[out, 1] = rng.uniform(0.0, 1.0)
    else:  # mul: inputs 0, 1; interneuron 2; output 3
        w_mask[out, 0] = True
        w_mask[2, 1] = True
        v_mask[out, 2] = True
        W[out, 0] = rng.uniform(0.0, 10.0)
        if mul_inhibitory_init:
            W[2, 1] = rng.uniform(-10.0, -1.0)
        else:
            W[2, 1] = rng.uniform(-10.0, 10.0)
        V[out, 2] = rng.uniform(0.0, 1.0)
        b[2] = 10.0  # tonically active interneuron; see module docstring

    return Topology(name=op, n=n, inputs=(0, 1), output=out,
                    w_mask=w_mask, v_mask=v_mask,
                    w_init=W, v_init=V, tau_init=tau, b_init=b,
                    w_signs=np.zeros((n, n), dtype=int), init_seed=seed)


def contour_grid(grid_n: int) -> np.ndarray:
    return np.linspace(0.0, 20.0, grid_n)


def eval_contour(params: NetworkParams, grid_n: int, output: int | None = None,
                 tol: float = 1e-10) -> np.ndarray:
    """Steady-state output activity (mV) over a uniform [0, 20]^2 input grid.

    Entry [i, j] is the settled response to (a_i, b_j); non-convergence
    errors are re-raised with the grid coordinates attached.
    """
    if grid_n < 2:
        raise InvalidParameterError("grid_n must be >= 2")
    out = params.n - 1 if output is None else output
    ins = sorted(params.clamped)
    if len(ins) != 2:
        raise InvalidParameterError("contour evaluation expects exactly 2 clamped inputs")
    axis = contour_grid(grid_n)
    surface = np.empty((grid_n, grid_n))
    for i, a in enumerate(axis):
        for j, bb in enumerate(axis):
            try:
                state, _ = steady_state(params, {ins[0]: a, ins[1]: bb}, tol=tol)
            except Exception as err:
                raise type(err)(f"steady state failed at grid point a={a}, b={bb}: {err}") from err
            surface[i, j] = np.clip(state.h[out], params.e_lo, params.e_hi)
    return surface


def write_contour_csv(path, surface: np.ndarray, op: str):
    """Plot-ready rows `a,b,sns,ideal` over the evaluation grid."""
    axis = contour_grid(surface.shape[0])
    with open(path, "w") as fh:
        fh.write("a,b,sns,ideal\n")
        for i, a in enumerate(axis):
            for j, b in enumerate(axis):
                ref = float(ideal_op(op, a, b))
                fh.write(f"{a!r},{b!r},{surface[i, j]!r},{ref!r}\n")


def classify_synapses(params: NetworkParams, tol: float = 1e-6) -> dict[tuple[int, int], str]:
    """Label every synapse by its learned character.

    (post, pre) -> 'excitatory' (W > 0), 'inhibitory' (W < 0) or
    'shunting' (V > 0 with negligible W); silent synapses are skipped.
    """
    kinds = {}
    post_idx, pre_idx = np.nonzero(params.mask)
    for i, j in zip(post_idx, pre_idx):
        w, v = params.W[i, j], params.V[i, j]
        if v > tol and abs(w) <= tol:
            kinds[(int(i), int(j))] = "shunting"
        elif w > tol:
            kinds[(int(i), int(j))] = "excitatory"
        elif w < -tol:
            kinds[(int(i), int(j))] = "inhibitory"
    return kinds


def topology_to_json(topology: Topology, params: NetworkParams) -> str:
    """NetworkParams document plus a topology header block."""
    doc = json.loads(params_to_json(params))
    doc["topology"] = {
        "name": topology.name,
        "inputs": list(topology.inputs),
        "output": topology.output,
        "w_mask": topology.w_mask.astype(int).tolist(),
        "v_mask": topology.v_mask.astype(int).tolist(),
        "w_signs": topology.w_signs.tolist() if topology.w_signs is not None else None,
        "init_seed": topology.init_seed,
    }
    return json.dumps(doc, indent=1)


def topology_from_json(text: str) -> tuple[Topology, NetworkParams]:
    doc = json.loads(text)
    head = doc.get("topology")
    if head is None:
        raise InvalidParameterError("document has no topology header block")
    params = params_from_json(json.dumps({k: v for k, v in doc.items() if k != "topology"}))
    topo = Topology(
        name=head["name"], n=params.n,
        inputs=tuple(head["inputs"]), output=int(head["output"]),
        w_mask=np.array(head["w_mask"], dtype=bool),
        v_mask=np.array(head["v_mask"], dtype=bool),
        w_init=params.W.copy(), v_init=params.V.copy(),
        tau_init=params.tau.copy(), b_init=params.b.copy(),
        w_signs=None if head.get("w_signs") is None else np.array(head["w_signs"], dtype=int),
        init_seed=int(head.get("init_seed", 0)),
        dt=params.dt, e_lo=params.e_lo, e_hi=params.e_hi)
    return topo, params
