from .autodiff import Node, backward, ops
from .params import ParamVector, LayoutBuilder
from .layers import MlpSpec, LstmState, forward_mlp, lstm_step, init_mlp_params, init_lstm_params
from .optim import AdamState, adam_update, copy_to_target
from .rng import CounterRng
from .checkpoint import save_checkpoint, load_checkpoint

__all__ = [
    "Node", "backward", "ops",
    "ParamVector", "LayoutBuilder",
    "MlpSpec", "LstmState", "forward_mlp", "lstm_step",
    "init_mlp_params", "init_lstm_params",
    "AdamState", "adam_update", "copy_to_target",
    "CounterRng",
    "save_checkpoint", "load_checkpoint",
]
