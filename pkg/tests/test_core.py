"""Dynamics-core tests: activations, reductions, steps, steady states, JSON."""

import json

import numpy as np
import pytest

from snscontrol.core import (
    BiophysicalNeuron,
    NetworkParams,
    NeuronState,
    activation,
    ctrnn_step,
    from_biophysical,
    params_from_json,
    params_to_json,
    simulate,
    steady_state,
    step,
    vanilla_step,
)
from snscontrol.errors import (
    ConvergenceError,
    InvalidParameterError,
    NumericalFaultError,
)


# ---------------------------------------------------------------------------
# independent oracle: a literal, loop-based transcription of the update
# equations, sharing no code with the package
# ---------------------------------------------------------------------------

def oracle_phi(u, e_lo, e_hi):
    if u < e_lo:
        u = e_lo
    if u > e_hi:
        u = e_hi
    return (u - e_lo) / (e_hi - e_lo)


def oracle_step(W, V, tau, b, dt, e_lo, e_hi, h_prev, clamps):
    n = len(b)
    p = [clamps.get(i, h_prev[i]) for i in range(n)]
    phi = [oracle_phi(p[i], e_lo, e_hi) for i in range(n)]
    h_new = [0.0] * n
    for i in range(n):
        s_v = sum(V[i][j] * phi[j] for j in range(n))
        s_w = sum(W[i][j] * phi[j] for j in range(n))
        den = 1.0 + s_v
        tau_hat = tau[i] / den
        z = dt / (tau_hat + dt)
        h_hat = (b[i] + s_w) / den
        h_new[i] = (1.0 - z) * p[i] + z * h_hat
    for i in clamps:
        h_new[i] = clamps[i]
    return h_new


def random_params(rng, n, clamped=(), scale=10.0, dt=0.01):
    W = rng.uniform(-scale, scale, (n, n))
    V = rng.uniform(0.0, scale, (n, n))
    tau = rng.uniform(0.0, 0.2, n)
    b = rng.uniform(-scale, scale, n)
    return NetworkParams(W=W, V=V, tau=tau, b=b, dt=dt, clamped=clamped)


def eq11_params(tau=0.0):
    """Three-neuron shunting divider: clamp neurons 0 and 1, read neuron 2."""
    W = np.zeros((3, 3))
    V = np.zeros((3, 3))
    W[2, 0] = 20.0
    V[2, 1] = 20.0
    return NetworkParams(W=W, V=V, tau=np.full(3, tau), b=np.zeros(3),
                         dt=0.1, clamped=(0, 1))


# ---------------------------------------------------------------------------
# activation
# ---------------------------------------------------------------------------

def test_activation_boundary_midpoint_saturation():
    assert activation(0.0, 0.0, 20.0) == 0.0
    assert activation(10.0, 0.0, 20.0) == 0.5
    assert activation(35.0, 0.0, 20.0) == 1.0


def test_activation_monotone_and_bounded():
    u = np.linspace(-30, 50, 401)
    y = activation(u, 0.0, 20.0)
    assert np.all(np.diff(y) >= 0)
    assert y.min() == 0.0 and y.max() == 1.0
    inside = (u > 0) & (u < 20)
    slopes = np.gradient(y, u)
    assert np.allclose(slopes[inside][2:-2], 1 / 20, atol=1e-9)


def test_activation_rejects_bad_thresholds():
    with pytest.raises(InvalidParameterError):
        activation(1.0, 5.0, 5.0)
    with pytest.raises(InvalidParameterError):
        activation(1.0, 7.0, 3.0)


# ---------------------------------------------------------------------------
# biophysical reduction
# ---------------------------------------------------------------------------

def test_reduction_unit_conductance():
    neurons = [
        BiophysicalNeuron(c_m=5.0, g_m=1.0, synapses=[(1, 1.0, 40.0)]),
        BiophysicalNeuron(c_m=5.0, g_m=1.0),
    ]
    p = from_biophysical(neurons, dt=0.001)
    assert p.tau[0] == pytest.approx(0.005)  # 5 ms
    assert p.W[0, 1] == pytest.approx(40.0)
    assert p.V[0, 1] == pytest.approx(1.0)
    assert p.b[0] == 0.0
    assert p.mask[0, 1] and not p.mask[1, 0]


def test_reduction_bias_current():
    p = from_biophysical([BiophysicalNeuron(c_m=5.0, g_m=2.0, i_bias=4.0)], dt=0.001)
    assert p.tau[0] == pytest.approx(0.0025)
    assert p.b[0] == pytest.approx(2.0)


def test_reduction_resting_potential_is_fixed_point():
    p = from_biophysical([BiophysicalNeuron(c_m=5.0, g_m=1.0, e_r=-60.0)], dt=0.001)
    assert p.b[0] == pytest.approx(-60.0)
    state, _ = steady_state(p, tol=1e-12)
    assert state.h[0] == pytest.approx(-60.0, abs=1e-9)


def test_reduction_rejects_bad_membrane():
    with pytest.raises(InvalidParameterError):
        from_biophysical([BiophysicalNeuron(c_m=0.0, g_m=1.0)], dt=0.001)
    with pytest.raises(InvalidParameterError):
        from_biophysical([BiophysicalNeuron(c_m=1.0, g_m=-1.0)], dt=0.001)


# ---------------------------------------------------------------------------
# step and degenerate forms
# ---------------------------------------------------------------------------

def test_origin_is_fixed_point_when_unbiased():
    p = NetworkParams(W=np.zeros((3, 3)), V=np.zeros((3, 3)),
                      tau=np.full(3, 0.07), b=np.zeros(3), dt=0.01)
    nxt = step(p, NeuronState(np.zeros(3)))
    assert np.all(nxt.h == 0.0)


def test_shunting_division_single_step():
    # one step of the divider with tau = 0 lands on a / (1 + b) exactly
    p = eq11_params()
    nxt = step(p, NeuronState(np.zeros(3)), {0: 10.0, 1: 4.0})
    assert nxt.h[2] == pytest.approx(2.0, abs=1e-12)
    assert nxt.h[0] == 10.0 and nxt.h[1] == 4.0


def test_step_matches_independent_reimplementation():
    rng = np.random.default_rng(7)
    p = random_params(rng, 5, clamped=(0,))
    h = rng.uniform(-5, 5, 5)
    state = NeuronState(h.copy())
    h_ref = list(h)
    for k in range(20):
        stim = {0: 3.0 + 0.1 * k}
        state = step(p, state, stim)
        h_ref = oracle_step(p.W.tolist(), p.V.tolist(), p.tau.tolist(),
                            p.b.tolist(), p.dt, p.e_lo, p.e_hi, h_ref, stim)
        assert np.max(np.abs(state.h - np.array(h_ref))) <= 1e-12


def test_ctrnn_equals_step_without_shunting():
    rng = np.random.default_rng(11)
    for _ in range(5):
        p = random_params(rng, 6)
        p.V[:] = 0.0
        p.mask = p.W != 0
        h = rng.uniform(-10, 10, 6)
        a = step(p, NeuronState(h.copy()))
        b = ctrnn_step(p, NeuronState(h.copy()))
        assert np.max(np.abs(a.h - b.h)) <= 1e-12


def test_vanilla_is_zero_tau_limit():
    rng = np.random.default_rng(13)
    p = random_params(rng, 4)
    p.V[:] = 0.0
    p.tau[:] = 0.0
    p.mask = p.W != 0
    h = rng.uniform(-10, 10, 4)
    assert np.max(np.abs(step(p, NeuronState(h.copy())).h
                         - vanilla_step(p, NeuronState(h.copy())).h)) <= 1e-12
    assert np.max(np.abs(ctrnn_step(p, NeuronState(h.copy())).h
                         - vanilla_step(p, NeuronState(h.copy())).h)) <= 1e-12


def test_vanilla_trivialities():
    p = NetworkParams(W=np.zeros((2, 2)), V=np.zeros((2, 2)),
                      tau=np.zeros(2), b=np.zeros(2), dt=0.1)
    assert np.all(vanilla_step(p, NeuronState(np.array([3.0, -1.0]))).h == 0.0)
    # identity transmission on the linear segment
    p2 = NetworkParams(W=np.eye(2) * 20.0, V=np.zeros((2, 2)),
                       tau=np.zeros(2), b=np.zeros(2), dt=0.1)
    h = np.array([5.0, 17.0])
    assert np.allclose(vanilla_step(p2, NeuronState(h.copy())).h, h, atol=1e-12)


def test_ctrnn_large_tau_freezes_state():
    p = NetworkParams(W=np.zeros((2, 2)), V=np.zeros((2, 2)),
                      tau=np.full(2, 1e6), b=np.full(2, 50.0), dt=0.1)
    h = np.array([4.0, -3.0])
    nxt = ctrnn_step(p, NeuronState(h.copy()))
    # z = dt / (tau + dt) = 1e-7: relative motion bounded accordingly
    assert np.all(np.abs(nxt.h - h) <= np.abs(50.0 - h) * 1.1e-7 + 1e-4)


def test_shunting_shortens_time_constants_and_z_in_unit_interval():
    rng = np.random.default_rng(17)
    p = random_params(rng, 8)
    h = rng.uniform(0, 20, 8)
    phi = activation(h, p.e_lo, p.e_hi)
    den = 1.0 + p.V @ phi
    tau_hat = p.tau / den
    z = p.dt / (tau_hat + p.dt)
    assert np.all(tau_hat <= p.tau + 1e-15)
    assert np.all((z > 0) & (z <= 1))


def test_step_propagates_numerical_fault_with_index():
    p = NetworkParams(W=np.zeros((2, 2)), V=np.zeros((2, 2)),
                      tau=np.zeros(2), b=np.array([0.0, np.nan]), dt=0.1)
    with pytest.raises(NumericalFaultError) as exc:
        step(p, NeuronState(np.zeros(2)))
    assert exc.value.index == 1


def test_determinism_bit_identical():
    rng = np.random.default_rng(23)
    p = random_params(rng, 6, clamped=(0, 1))
    series = rng.uniform(0, 20, (50, 2))
    t1 = simulate(p, series)
    t2 = simulate(p, series)
    assert np.array_equal(t1, t2)


# ---------------------------------------------------------------------------
# simulate / steady state
# ---------------------------------------------------------------------------

def test_simulate_single_step_reduces_to_step():
    rng = np.random.default_rng(29)
    p = random_params(rng, 4, clamped=(0,))
    traj = simulate(p, np.array([[7.0]]))
    direct = step(p, NeuronState(np.zeros(4)), {0: 7.0})
    assert np.array_equal(traj[0], direct.h)


def test_simulate_divider_converges_to_analytic_fixed_point():
    p = eq11_params(tau=0.5)
    series = np.tile([12.0, 6.0], (500, 1))
    traj = simulate(p, series)
    assert traj[-1, 2] == pytest.approx(12.0 / (1.0 + 6.0), abs=1e-6)


def test_simulate_autonomous_without_clamped():
    p = NetworkParams(W=np.zeros((2, 2)), V=np.zeros((2, 2)),
                      tau=np.full(2, 0.05), b=np.array([3.0, -2.0]), dt=0.1)
    traj = simulate(p, T=200)
    assert np.allclose(traj[-1], [3.0, -2.0], atol=1e-6)


def test_steady_state_leak_neuron_lands_on_bias():
    p = NetworkParams(W=np.zeros((1, 1)), V=np.zeros((1, 1)),
                      tau=np.array([0.05]), b=np.array([7.0]), dt=0.1)
    state, iters = steady_state(p, tol=1e-12)
    assert state.h[0] == pytest.approx(7.0, abs=1e-9)
    assert iters >= 1


def test_steady_state_pure_transmission():
    state, _ = steady_state(eq11_params(), {0: 20.0, 1: 0.0}, tol=1e-12)
    assert state.h[2] == pytest.approx(20.0, abs=1e-9)


def test_steady_state_divider_grid():
    p = eq11_params()
    for a in np.linspace(0, 20, 5):
        for b in np.linspace(0, 20, 5):
            state, _ = steady_state(p, {0: a, 1: b}, tol=1e-12)
            assert state.h[2] == pytest.approx(a / (1.0 + b), abs=1e-9)


def test_steady_state_nonconvergence_reports_residual():
    # undamped flip-flop: neuron drives itself to the opposite rail each step
    p = NetworkParams(W=np.array([[-40.0]]), V=np.zeros((1, 1)),
                      tau=np.zeros(1), b=np.array([30.0]), dt=0.1)
    with pytest.raises(ConvergenceError) as exc:
        steady_state(p, tol=1e-9, max_iter=50)
    assert exc.value.residual > 1.0


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_json_round_trip_value_exact():
    rng = np.random.default_rng(31)
    p = random_params(rng, 5, clamped=(1, 3))
    # awkward values that expose lossy encodings
    p.W[p.mask][:1] = 0.1 + 2e-17
    p.b[0] = 1.0 / 3.0
    p.tau[1] = 5e-324  # smallest subnormal
    text = params_to_json(p)
    q = params_from_json(text)
    assert np.array_equal(p.W, q.W)
    assert np.array_equal(p.V, q.V)
    assert np.array_equal(p.tau, q.tau)
    assert np.array_equal(p.b, q.b)
    assert np.array_equal(p.mask, q.mask)
    assert p.clamped == q.clamped
    assert (p.dt, p.e_lo, p.e_hi) == (q.dt, q.e_lo, q.e_hi)
    # document structure matches the frozen schema
    doc = json.loads(text)
    assert set(doc) == {"n", "dt", "e_lo", "e_hi", "tau", "b", "W", "V", "mask", "clamped"}


def test_params_validation_rejects_violations():
    with pytest.raises(InvalidParameterError):
        NetworkParams(W=np.zeros((2, 2)), V=-np.ones((2, 2)),
                      tau=np.zeros(2), b=np.zeros(2), dt=0.1)
    with pytest.raises(InvalidParameterError):
        NetworkParams(W=np.zeros((2, 2)), V=np.zeros((2, 2)),
                      tau=np.zeros(2), b=np.zeros(2), dt=0.0)
    with pytest.raises(InvalidParameterError):
        NetworkParams(W=np.ones((2, 2)), V=np.zeros((2, 2)),
                      tau=np.zeros(2), b=np.zeros(2), dt=0.1,
                      mask=np.zeros((2, 2), dtype=bool))
