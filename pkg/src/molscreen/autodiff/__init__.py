"""Minimal reverse-mode autodiff: tensors, ops, losses, optimiser, sampler."""

from .losses import BadBeta, BadEpsilon, cross_entropy_smoothed, huber_loss
from .optim import AdamW, OptimizerState, adamw_step
from .sampling import EmptyClass, weighted_sampler
from .tensor import (
    NonFiniteValue,
    NotScalarLoss,
    ShapeMismatch,
    Tape,
    Tensor,
    add,
    concat,
    div,
    dropout,
    exp,
    gather,
    log,
    matmul,
    mul,
    narrow,
    reduce_mean,
    reduce_sum,
    relu,
    reshape,
    scatter_add,
    segment_softmax,
    sigmoid,
    sqrt,
    square,
    sub,
    tanh,
)

__all__ = [
    "AdamW",
    "BadBeta",
    "BadEpsilon",
    "EmptyClass",
    "NonFiniteValue",
    "NotScalarLoss",
    "OptimizerState",
    "ShapeMismatch",
    "Tape",
    "Tensor",
    "adamw_step",
    "add",
    "concat",
    "cross_entropy_smoothed",
    "div",
    "dropout",
    "exp",
    "gather",
    "huber_loss",
    "log",
    "matmul",
    "mul",
    "narrow",
    "reduce_mean",
    "reduce_sum",
    "relu",
    "reshape",
    "scatter_add",
    "segment_softmax",
    "sigmoid",
    "sqrt",
    "square",
    "sub",
    "tanh",
    "weighted_sampler",
]
