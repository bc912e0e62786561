"""Non-spiking conductance-based neural networks for arithmetic and control.

The package is organized around a small dynamics core:

  core       discretized shunting dynamics and its degenerate forms
  training   backpropagation through time, Adam, finite-difference oracle,
             and a compact MLP baseline
  subnets    arithmetic subnetwork topologies and contour evaluation
  controller hierarchical pick-and-place network assembly
  gantry     kinematic gantry/grasper simulator and the episode runner
  protocol   text-line device protocol with a loopback device
  cli        command-line harness tying everything together
"""

__version__ = "0.1.0"

from .core import (
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
from .subnets import Topology, build_topology, eval_contour, ideal_op
from .training import (
    Dataset,
    LossCurve,
    TrainConfig,
    adam_step,
    bptt_grad,
    finite_diff_grad,
    gen_dataset,
    mlp_eval,
    mlp_train,
    mse_loss,
    train,
)

__all__ = [
    "__version__",
    "BiophysicalNeuron", "NetworkParams", "NeuronState", "activation",
    "ctrnn_step", "from_biophysical", "params_from_json", "params_to_json",
    "simulate", "steady_state", "step", "vanilla_step",
    "Topology", "build_topology", "eval_contour", "ideal_op",
    "Dataset", "LossCurve", "TrainConfig", "adam_step", "bptt_grad",
    "finite_diff_grad", "gen_dataset", "mlp_eval", "mlp_train", "mse_loss",
    "train",
]
