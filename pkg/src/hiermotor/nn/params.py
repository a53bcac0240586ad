"""Flat float64 parameter vectors with named, contiguous segments."""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from .autodiff import Node


class ParamVector:
    """All weights of one network as a single flat array.

    ``layout`` maps segment name -> (offset, shape); segments are contiguous,
    non-overlapping, and cover the whole array.  ``version`` counts snapshot
    copies (see :func:`hiermotor.nn.optim.copy_to_target`).
    """

    def __init__(self, values: np.ndarray, layout: dict[str, tuple[int, tuple[int, ...]]],
                 version: int = 0):
        self.values = np.asarray(values, dtype=np.float64)
        self.layout = layout
        self.version = version
        total = sum(int(np.prod(shape)) for _, shape in layout.values())
        if total != self.values.size:
            raise ConfigError(
                f"layout covers {total} values but vector has {self.values.size}")

    def view(self, name: str) -> np.ndarray:
        """Writable reshaped view of one segment."""
        offset, shape = self.layout[name]
        size = int(np.prod(shape))
        return self.values[offset:offset + size].reshape(shape)

    def nodes(self) -> dict[str, Node]:
        """Fresh leaf Nodes over every segment, for one traced loss."""
        return {name: Node(self.view(name)) for name in self.layout}

    def gather_grad(self, nodes: dict[str, Node]) -> np.ndarray:
        """Assemble a flat gradient matching this vector from traced leaf nodes."""
        grad = np.zeros_like(self.values)
        for name, node in nodes.items():
            offset, shape = self.layout[name]
            size = int(np.prod(shape))
            if node.grad is not None:
                grad[offset:offset + size] = np.asarray(node.grad).reshape(size)
        return grad

    def copy(self) -> "ParamVector":
        return ParamVector(self.values.copy(), self.layout, self.version)

    @property
    def size(self) -> int:
        return self.values.size

    def check_finite(self) -> None:
        if not np.all(np.isfinite(self.values)):
            raise ConfigError("parameter vector contains non-finite values")


class LayoutBuilder:
    """Accumulates named segments, then allocates one ParamVector."""

    def __init__(self):
        self._segments: list[tuple[str, tuple[int, ...]]] = []

    def add(self, name: str, shape: tuple[int, ...]) -> "LayoutBuilder":
        if any(name == existing for existing, _ in self._segments):
            raise ConfigError(f"duplicate parameter segment '{name}'")
        self._segments.append((name, tuple(int(s) for s in shape)))
        return self

    def build(self, init=None) -> ParamVector:
        """Allocate; `init(name, shape) -> ndarray` fills segments, else zeros."""
        layout = {}
        offset = 0
        for name, shape in self._segments:
            layout[name] = (offset, shape)
            offset += int(np.prod(shape))
        values = np.zeros(offset, dtype=np.float64)
        pv = ParamVector(values, layout)
        if init is not None:
            for name, shape in self._segments:
                pv.view(name)[...] = init(name, shape)
        return pv
