"""SGD with momentum and optional weight decay."""

from __future__ import annotations

import numpy as np

from .network import DenseSynapses


class SgdMomentum:
    """v <- momentum*v + grad + weight_decay*w;  w <- w - lr*v."""

    def __init__(self, lr: float, momentum: float = 0.0, weight_decay: float = 0.0):
        if lr < 0 or momentum < 0 or weight_decay < 0:
            raise ValueError("optimizer hyperparameters must be non-negative")
        self.lr = lr
        self.momentum = momentum
        self.weight_decay = weight_decay

    def step(self, synapses: list[DenseSynapses], grads: list[np.ndarray]) -> None:
        if len(synapses) != len(grads):
            raise ValueError("one gradient block per synapse block required")
        for syn, g in zip(synapses, grads):
            if g.shape != syn.weights.shape:
                raise ValueError(f"grad shape {g.shape} != weights {syn.weights.shape}")
            if not np.all(np.isfinite(g)):
                raise ValueError("non-finite gradient rejected")
            v = syn.momentum
            v *= self.momentum
            v += g
            if self.weight_decay:
                v += self.weight_decay * syn.weights
            syn.weights -= self.lr * v
