"""Adam optimizer and target-network snapshots."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import NumericError
from .params import ParamVector


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    step: int = 0
    lr: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def for_params(cls, params: ParamVector, lr: float = 1e-4, **kw) -> "AdamState":
        return cls(m=np.zeros(params.size), v=np.zeros(params.size), lr=lr, **kw)


def adam_update(state: AdamState, params: ParamVector,
                grad: np.ndarray) -> tuple[ParamVector, AdamState]:
    """Standard Adam with bias correction; returns new params and state."""
    grad = np.asarray(grad, dtype=np.float64)
    if grad.shape != params.values.shape:
        raise NumericError(f"grad shape {grad.shape} != params {params.values.shape}")
    if not np.all(np.isfinite(grad)):
        raise NumericError("non-finite gradient passed to adam_update")
    t = state.step + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * grad
    v = state.beta2 * state.v + (1.0 - state.beta2) * grad * grad
    m_hat = m / (1.0 - state.beta1 ** t)
    v_hat = v / (1.0 - state.beta2 ** t)
    new_values = params.values - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    new_params = ParamVector(new_values, params.layout, params.version)
    new_state = AdamState(m=m, v=v, step=t, lr=state.lr, beta1=state.beta1,
                          beta2=state.beta2, eps=state.eps)
    return new_params, new_state


def copy_to_target(params: ParamVector) -> ParamVector:
    """Deep snapshot for target networks; bumps the snapshot counter."""
    return ParamVector(params.values.copy(), params.layout, params.version + 1)
