"""Dense networks and an LSTM cell over ParamVector segments.

Both layers run in two modes through the same code path: called with plain
ndarrays they are pure numpy (used in rollouts), called with Nodes they build
the autodiff tape (used in learner updates).  Values agree bitwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from .autodiff import Node, ops
from .params import LayoutBuilder, ParamVector
from .rng import CounterRng

_ACTIVATIONS = {"tanh": ops.tanh, "relu": ops.relu, "identity": lambda x: x}


@dataclass(frozen=True)
class MlpSpec:
    """Shape of a dense network: input -> hidden (width, activation)* -> linear output."""

    input_dim: int
    hidden: tuple[tuple[int, str], ...]
    output_dim: int
    name: str = "mlp"

    def __post_init__(self):
        if self.input_dim < 1 or self.output_dim < 1:
            raise ConfigError("mlp dims must be >= 1")
        if len(self.hidden) > 8:
            raise ConfigError("at most 8 hidden layers")
        for width, act in self.hidden:
            if width < 1:
                raise ConfigError("hidden width must be >= 1")
            if act not in _ACTIVATIONS:
                raise ConfigError(f"unknown activation '{act}'")

    def layer_dims(self) -> list[tuple[int, int]]:
        dims = [self.input_dim] + [w for w, _ in self.hidden] + [self.output_dim]
        return list(zip(dims[:-1], dims[1:]))

    def declare(self, builder: LayoutBuilder) -> None:
        for i, (fan_in, fan_out) in enumerate(self.layer_dims()):
            builder.add(f"{self.name}.l{i}.W", (fan_in, fan_out))
            builder.add(f"{self.name}.l{i}.b", (fan_out,))


def init_mlp_params(spec: MlpSpec, rng: CounterRng, scale: float = 1.0) -> ParamVector:
    """Orthogonal-ish init: Gaussian / sqrt(fan_in), zero bias."""
    builder = LayoutBuilder()
    spec.declare(builder)
    pv = builder.build()
    for i, (fan_in, _) in enumerate(spec.layer_dims()):
        W = pv.view(f"{spec.name}.l{i}.W")
        W[...] = rng.normal(W.shape) * (scale / np.sqrt(fan_in))
    return pv


def forward_mlp(spec: MlpSpec, params, x):
    """Apply the network. `params` is a ParamVector or a dict of Nodes.

    `x` is (batch, input_dim) or (input_dim,); Nodes anywhere switch the call
    into traced mode.
    """
    getter = params.view if isinstance(params, ParamVector) else params.__getitem__
    traced = isinstance(x, Node) or not isinstance(params, ParamVector)
    xv = x.value if isinstance(x, Node) else np.asarray(x, dtype=np.float64)
    if xv.shape[-1] != spec.input_dim:
        raise ConfigError(f"{spec.name}: input dim {xv.shape[-1]} != spec {spec.input_dim}")
    squeeze = xv.ndim == 1
    if squeeze:
        if traced:
            raise ConfigError(f"{spec.name}: traced mode requires a batch dimension")
        x = xv[None, :]

    h = x
    acts = [act for _, act in spec.hidden] + ["identity"]
    for i, act in enumerate(acts):
        W = getter(f"{spec.name}.l{i}.W")
        b = getter(f"{spec.name}.l{i}.b")
        h = ops.add(ops.matmul(h, W), b)
        h = _ACTIVATIONS[act](h)
    if squeeze:
        return h[0]
    return h


@dataclass
class LstmState:
    """Hidden and cell vectors; batch leading dimension optional."""

    hidden: np.ndarray
    cell: np.ndarray

    def __post_init__(self):
        if np.shape(self.hidden) != np.shape(self.cell):
            raise ConfigError("lstm hidden and cell shapes differ")

    @classmethod
    def zeros(cls, size: int, batch: int | None = None) -> "LstmState":
        shape = (size,) if batch is None else (batch, size)
        return cls(np.zeros(shape), np.zeros(shape))

    def copy(self) -> "LstmState":
        return LstmState(np.array(self.hidden), np.array(self.cell))


def declare_lstm(builder: LayoutBuilder, name: str, input_dim: int, state_size: int) -> None:
    builder.add(f"{name}.Wx", (input_dim, 4 * state_size))
    builder.add(f"{name}.Wh", (state_size, 4 * state_size))
    builder.add(f"{name}.b", (4 * state_size,))


def init_lstm_params(name: str, input_dim: int, state_size: int,
                     rng: CounterRng) -> ParamVector:
    builder = LayoutBuilder()
    declare_lstm(builder, name, input_dim, state_size)
    pv = builder.build()
    pv.view(f"{name}.Wx")[...] = rng.normal((input_dim, 4 * state_size)) / np.sqrt(input_dim)
    pv.view(f"{name}.Wh")[...] = rng.normal((state_size, 4 * state_size)) / np.sqrt(state_size)
    return pv


def lstm_step(params, name: str, state, x, state_size: int):
    """One LSTM step with standard sigmoid/tanh gating (i, f, g, o order).

    `state` is (h, c) as arrays or Nodes with batch dim; returns
    (output, (h', c')) where output is h'.
    """
    getter = params.view if isinstance(params, ParamVector) else params.__getitem__
    h, c = state
    Wx = getter(f"{name}.Wx")
    wx_in = (Wx.value if isinstance(Wx, Node) else Wx).shape[0]
    xdim = (x.value if isinstance(x, Node) else np.asarray(x)).shape[-1]
    if wx_in != xdim:
        raise ConfigError(f"{name}: lstm input dim {xdim}, weights expect {wx_in}")

    gates = ops.add(ops.add(ops.matmul(x, Wx),
                            ops.matmul(h, getter(f"{name}.Wh"))),
                    getter(f"{name}.b"))
    n = state_size
    i = ops.sigmoid(ops.slice_cols(gates, 0, n))
    f = ops.sigmoid(ops.slice_cols(gates, n, 2 * n))
    g = ops.tanh(ops.slice_cols(gates, 2 * n, 3 * n))
    o = ops.sigmoid(ops.slice_cols(gates, 3 * n, 4 * n))
    c_next = ops.add(ops.mul(f, c), ops.mul(i, g))
    h_next = ops.mul(o, ops.tanh(c_next))
    return h_next, (h_next, c_next)
