"""Discretized non-spiking conductance-based neuron dynamics.

The reduced state update for a network of n neurons with membrane
potentials ``h`` (mV) is a four-stage semi-implicit Euler step:

    tau_hat = tau / (1 + V phi(h))          # shunting shortens time constants
    z       = dt / (tau_hat + dt)           # per-neuron blend factor, in (0, 1]
    h_hat   = (b + W phi(h)) / (1 + V phi(h))
    h'      = (1 - z) * h + z * h_hat

``phi`` is a piecewise-linear activation mapping potentials to activities
in [0, 1].  Setting ``V = 0`` recovers a semi-implicit CTRNN; additionally
setting ``tau = 0`` recovers a vanilla RNN.  All divisions are elementwise
and all denominators are >= 1 because V is constrained nonnegative.

Input neurons are *clamped*: their potential is overwritten with the
externally supplied stimulus both before the activation is evaluated and
after the state update, so downstream neurons always see the stimulus of
the previous step and clamped neurons never integrate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .errors import ConvergenceError, InvalidParameterError, NumericalFaultError

__all__ = [
    "NetworkParams",
    "BiophysicalNeuron",
    "NeuronState",
    "activation",
    "activation_slope_mask",
    "from_biophysical",
    "step",
    "ctrnn_step",
    "vanilla_step",
    "simulate",
    "steady_state",
    "params_to_json",
    "params_from_json",
]


def activation(u, e_lo: float, e_hi: float):
    """Piecewise-linear activation: clamp to [e_lo, e_hi], rescale to [0, 1].

    Monotone nondecreasing with slope 1/(e_hi - e_lo) strictly inside
    (e_lo, e_hi) and slope 0 outside.
    """
    if not e_lo < e_hi:
        raise InvalidParameterError(f"activation thresholds require e_lo < e_hi, got {e_lo} >= {e_hi}")
    return (np.clip(u, e_lo, e_hi) - e_lo) / (e_hi - e_lo)


def activation_slope_mask(u, e_lo: float, e_hi: float):
    """1.0 where the activation is strictly inside its linear band, else 0.0.

    The subgradient at the kinks (u == e_lo or u == e_hi) is taken as 0.
    """
    return ((u > e_lo) & (u < e_hi)).astype(float)


@dataclass
class NetworkParams:
    """Reduced parameter set of a network; single source of truth for dynamics.

    W    : (n, n) transmission weights, W[i, j] = g_ij * E_ij / g_m_i (mV per unit activity)
    V    : (n, n) shunting weights, V[i, j] = g_ij / g_m_i, all entries >= 0
    tau  : (n,) membrane time constants in seconds, >= 0
    b    : (n,) bias in mV (resting potential with injected current folded in)
    dt   : integration timestep in seconds, > 0
    e_lo, e_hi : activation thresholds in mV
    mask : (n, n) bool synapse-existence pattern; entries of W and V outside
           the mask are exactly 0 and stay 0 through training
    clamped : indices of input neurons whose potential is externally held
    """

    W: np.ndarray
    V: np.ndarray
    tau: np.ndarray
    b: np.ndarray
    dt: float
    e_lo: float = 0.0
    e_hi: float = 20.0
    mask: np.ndarray | None = None
    clamped: tuple[int, ...] = ()

    def __post_init__(self):
        self.W = np.asarray(self.W, dtype=float)
        self.V = np.asarray(self.V, dtype=float)
        self.tau = np.asarray(self.tau, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        self.clamped = tuple(int(i) for i in self.clamped)
        if self.mask is None:
            self.mask = (self.W != 0.0) | (self.V != 0.0)
        self.mask = np.asarray(self.mask, dtype=bool)
        self.validate()

    @property
    def n(self) -> int:
        return self.b.shape[0]

    def validate(self):
        n = self.n
        if self.W.shape != (n, n) or self.V.shape != (n, n) or self.mask.shape != (n, n):
            raise InvalidParameterError("W, V and mask must be n x n")
        if self.tau.shape != (n,):
            raise InvalidParameterError("tau must have length n")
        if not self.dt > 0:
            raise InvalidParameterError(f"dt must be > 0, got {self.dt}")
        if not self.e_lo < self.e_hi:
            raise InvalidParameterError(f"require e_lo < e_hi, got {self.e_lo}, {self.e_hi}")
        if np.any(self.V < 0):
            raise InvalidParameterError("V entries must be nonnegative")
        if np.any(self.tau < 0):
            raise InvalidParameterError("tau entries must be nonnegative")
        if np.any(self.W[~self.mask] != 0.0) or np.any(self.V[~self.mask] != 0.0):
            raise InvalidParameterError("W/V entries outside the mask must be exactly 0")
        if any(i < 0 or i >= n for i in self.clamped):
            raise InvalidParameterError("clamped indices out of range")

    def copy(self) -> "NetworkParams":
        return replace(
            self,
            W=self.W.copy(),
            V=self.V.copy(),
            tau=self.tau.copy(),
            b=self.b.copy(),
            mask=self.mask.copy(),
        )


@dataclass
class BiophysicalNeuron:
    """Membrane-level description of one neuron.

    c_m    : membrane capacitance in nF, > 0
    g_m    : membrane conductance in uS, > 0
    e_r    : resting potential in mV
    i_bias : injected current in nA
    synapses : sequence of (presynaptic index, g in uS >= 0, E reversal in mV)
    """

    c_m: float
    g_m: float
    e_r: float = 0.0
    i_bias: float = 0.0
    synapses: Sequence[tuple[int, float, float]] = field(default_factory=tuple)


@dataclass
class NeuronState:
    """Membrane potentials (mV) plus the integer step index."""

    h: np.ndarray
    t: int = 0

    def __post_init__(self):
        self.h = np.asarray(self.h, dtype=float)

    def copy(self) -> "NeuronState":
        return NeuronState(self.h.copy(), self.t)


def from_biophysical(neurons: Sequence[BiophysicalNeuron], dt: float,
                     e_lo: float = 0.0, e_hi: float = 20.0) -> NetworkParams:
    """Convert membrane parameters to the reduced form.

    tau_i = c_m / g_m (converted from nF/uS, i.e. ms, to seconds),
    w_ij = g_ij * E_ij / g_m_i, v_ij = g_ij / g_m_i, and the resting
    potential is folded into the bias: b_i = e_r_i + i_bias_i / g_m_i.
    """
    n = len(neurons)
    W = np.zeros((n, n))
    V = np.zeros((n, n))
    tau = np.zeros(n)
    b = np.zeros(n)
    mask = np.zeros((n, n), dtype=bool)
    for i, neu in enumerate(neurons):
        if not neu.c_m > 0 or not neu.g_m > 0:
            raise InvalidParameterError(f"neuron {i}: c_m and g_m must be positive")
        tau[i] = 1e-3 * neu.c_m / neu.g_m
        b[i] = neu.e_r + neu.i_bias / neu.g_m
        for (j, g, e_rev) in neu.synapses:
            if g < 0:
                raise InvalidParameterError(f"neuron {i}: synaptic conductance must be >= 0")
            W[i, j] = g * e_rev / neu.g_m
            V[i, j] = g / neu.g_m
            mask[i, j] = True
    return NetworkParams(W=W, V=V, tau=tau, b=b, dt=dt, e_lo=e_lo, e_hi=e_hi, mask=mask)


def _substitute_inputs(params: NetworkParams, h: np.ndarray,
                       inputs: Mapping[int, float] | None) -> np.ndarray:
    p = np.array(h, dtype=float, copy=True)
    if inputs:
        clamped = set(params.clamped)
        for i, u in inputs.items():
            if i not in clamped:
                raise InvalidParameterError(f"input supplied for non-clamped neuron {i}")
            p[i] = u
    return p


def _finish(params: NetworkParams, p: np.ndarray, h_new: np.ndarray, t_new: int) -> NeuronState:
    if params.clamped:
        idx = list(params.clamped)
        h_new[idx] = p[idx]
    if not np.all(np.isfinite(h_new)):
        bad = int(np.flatnonzero(~np.isfinite(h_new))[0])
        raise NumericalFaultError(f"non-finite potential at neuron {bad}, step {t_new}",
                                  index=bad, step=t_new)
    return NeuronState(h_new, t_new)


def step(params: NetworkParams, state: NeuronState,
         inputs: Mapping[int, float] | None = None) -> NeuronState:
    """One update of the full shunting dynamics."""
    p = _substitute_inputs(params, state.h, inputs)
    phi = activation(p, params.e_lo, params.e_hi)
    den = 1.0 + params.V @ phi
    tau_hat = params.tau / den
    z = params.dt / (tau_hat + params.dt)
    if not np.all((z > 0.0) & (z <= 1.0)):
        bad = int(np.flatnonzero(~((z > 0.0) & (z <= 1.0)))[0])
        raise NumericalFaultError(f"blend factor left (0, 1] at neuron {bad}",
                                  index=bad, step=state.t + 1)
    h_hat = (params.b + params.W @ phi) / den
    h_new = (1.0 - z) * p + z * h_hat
    return _finish(params, p, h_new, state.t + 1)


def ctrnn_step(params: NetworkParams, state: NeuronState,
               inputs: Mapping[int, float] | None = None) -> NeuronState:
    """Degenerate form with the shunting term removed (V ignored)."""
    p = _substitute_inputs(params, state.h, inputs)
    phi = activation(p, params.e_lo, params.e_hi)
    z = params.dt / (params.tau + params.dt)
    h_hat = params.b + params.W @ phi
    h_new = (1.0 - z) * p + z * h_hat
    return _finish(params, p, h_new, state.t + 1)


def vanilla_step(params: NetworkParams, state: NeuronState,
                 inputs: Mapping[int, float] | None = None) -> NeuronState:
    """Degenerate form with V and tau both removed."""
    p = _substitute_inputs(params, state.h, inputs)
    phi = activation(p, params.e_lo, params.e_hi)
    h_new = params.b + params.W @ phi
    return _finish(params, p, h_new, state.t + 1)


def simulate(params: NetworkParams, input_series: np.ndarray | None = None,
             h0: np.ndarray | None = None, T: int | None = None,
             stepper=step) -> np.ndarray:
    """Iterate the dynamics for T steps; row t is the state after t+1 steps.

    ``input_series`` has shape (T, len(clamped)) with columns matching the
    sorted clamped indices; pass None for an autonomous network (then T is
    required).
    """
    clamped = sorted(params.clamped)
    if input_series is not None:
        input_series = np.asarray(input_series, dtype=float)
        if input_series.ndim != 2 or input_series.shape[1] != len(clamped):
            raise InvalidParameterError(
                f"input_series must have shape (T, {len(clamped)})")
        T = input_series.shape[0]
    if T is None or T < 1:
        raise InvalidParameterError("simulate requires T >= 1")
    h = np.zeros(params.n) if h0 is None else np.asarray(h0, dtype=float)
    state = NeuronState(h.copy(), 0)
    out = np.empty((T, params.n))
    for t in range(T):
        inputs = None
        if input_series is not None and clamped:
            inputs = {i: input_series[t, k] for k, i in enumerate(clamped)}
        try:
            state = stepper(params, state, inputs)
        except NumericalFaultError as err:
            err.step = t + 1
            raise
        out[t] = state.h
    return out


def steady_state(params: NetworkParams, inputs: Mapping[int, float] | None = None,
                 tol: float = 1e-9, max_iter: int = 100_000,
                 h0: np.ndarray | None = None) -> tuple[NeuronState, int]:
    """Iterate until the update moves every potential by less than tol.

    Returns the settled state and the number of iterations used.
    """
    if not tol > 0:
        raise InvalidParameterError("tol must be > 0")
    h = np.zeros(params.n) if h0 is None else np.asarray(h0, dtype=float)
    state = NeuronState(h.copy(), 0)
    for it in range(1, max_iter + 1):
        nxt = step(params, state, inputs)
        resid = float(np.max(np.abs(nxt.h - state.h))) if params.n else 0.0
        state = nxt
        if resid < tol:
            return state, it
    raise ConvergenceError(
        f"no fixed point within {max_iter} iterations (residual {resid:.3e})",
        residual=resid, iterations=max_iter)


def params_to_json(params: NetworkParams) -> str:
    """Serialize to the canonical JSON document (value-exact round trip)."""
    doc = {
        "n": params.n,
        "dt": params.dt,
        "e_lo": params.e_lo,
        "e_hi": params.e_hi,
        "tau": params.tau.tolist(),
        "b": params.b.tolist(),
        "W": params.W.tolist(),
        "V": params.V.tolist(),
        "mask": params.mask.astype(int).tolist(),
        "clamped": list(params.clamped),
    }
    return json.dumps(doc, indent=1)


def params_from_json(text: str) -> NetworkParams:
    doc = json.loads(text)
    params = NetworkParams(
        W=np.array(doc["W"], dtype=float),
        V=np.array(doc["V"], dtype=float),
        tau=np.array(doc["tau"], dtype=float),
        b=np.array(doc["b"], dtype=float),
        dt=float(doc["dt"]),
        e_lo=float(doc["e_lo"]),
        e_hi=float(doc["e_hi"]),
        mask=np.array(doc["mask"], dtype=bool),
        clamped=tuple(doc["clamped"]),
    )
    if params.n != int(doc["n"]):
        raise InvalidParameterError("inconsistent neuron count in JSON document")
    return params
