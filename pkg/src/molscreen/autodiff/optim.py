"""Adaptive-moment optimiser with decoupled weight decay."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensor import ShapeMismatch, Tensor


@dataclass
class OptimizerState:
    learning_rate: float = 1e-3
    weight_decay: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step_count: int = 0
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)


class AdamW:
    """Moment updates with bias correction; decay applied to the parameters
    themselves, not folded into the gradient."""

    def __init__(
        self,
        params: dict[str, Tensor],
        learning_rate: float = 1e-3,
        weight_decay: float = 1e-4,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.params = params
        self.state = OptimizerState(learning_rate, weight_decay, beta1, beta2, eps)

    def zero_grad(self):
        for p in self.params.values():
            p.grad = None

    def step(self):
        s = self.state
        s.step_count += 1
        t = s.step_count
        bc1 = 1.0 - s.beta1 ** t
        bc2 = 1.0 - s.beta2 ** t
        for name in sorted(self.params):
            p = self.params[name]
            g = p.grad
            if g is None:
                g = np.zeros_like(p.data)
            if g.shape != p.data.shape:
                raise ShapeMismatch(
                    f"gradient shape {g.shape} != parameter shape {p.data.shape}"
                )
            m = s.m.get(name)
            v = s.v.get(name)
            if m is None:
                m = np.zeros_like(p.data)
                v = np.zeros_like(p.data)
            m = s.beta1 * m + (1.0 - s.beta1) * g
            v = s.beta2 * v + (1.0 - s.beta2) * g * g
            s.m[name] = m
            s.v[name] = v
            m_hat = m / bc1
            v_hat = v / bc2
            p.data = (
                p.data
                - s.learning_rate * m_hat / (np.sqrt(v_hat) + s.eps)
                - s.learning_rate * s.weight_decay * p.data
            )


def adamw_step(state: OptimizerState, params: dict[str, Tensor], grads: dict[str, np.ndarray]):
    """Single functional update; same math as AdamW.step with given grads."""
    opt = AdamW.__new__(AdamW)
    opt.params = params
    opt.state = state
    for name, p in params.items():
        p.grad = grads.get(name)
    opt.step()
