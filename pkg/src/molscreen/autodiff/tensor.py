"""Reverse-mode automatic differentiation over numpy arrays.

Ops run eagerly and, when a Tape is active, record backward closures.
Tape.backward walks the record in reverse, accumulating gradients into
every requires_grad tensor.  64-bit floats by default (finite-difference
tests need the precision); pass dtype=np.float32 for speed.
"""

from __future__ import annotations

import numpy as np


class ShapeMismatch(ValueError):
    pass


class NonFiniteValue(FloatingPointError):
    pass


class NotScalarLoss(ValueError):
    pass


_ACTIVE_TAPE: "Tape | None" = None


class Tape:
    """Ordered op record for one forward pass; context manager activates it."""

    def __init__(self):
        self.nodes: list[tuple[Tensor, object]] = []

    def __enter__(self):
        global _ACTIVE_TAPE
        self._prev = _ACTIVE_TAPE
        _ACTIVE_TAPE = self
        return self

    def __exit__(self, *exc):
        global _ACTIVE_TAPE
        _ACTIVE_TAPE = self._prev
        return False

    def backward(self, loss: "Tensor"):
        """Accumulate d loss / d tensor into .grad for every recorded parent."""
        if loss.data.size != 1:
            raise NotScalarLoss(f"loss must be scalar, got shape {loss.data.shape}")
        loss.grad = np.ones_like(loss.data)
        for out, backward in reversed(self.nodes):
            if backward is not None and out.grad is not None:
                backward(out.grad)


class Tensor:
    __slots__ = ("data", "grad", "requires_grad")

    def __init__(self, data, requires_grad: bool = False, dtype=np.float64):
        self.data = np.asarray(data, dtype=dtype)
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad

    @property
    def shape(self):
        return self.data.shape

    def zero_grad(self):
        self.grad = None

    def item(self) -> float:
        return float(self.data)

    def __repr__(self):
        return f"Tensor(shape={self.data.shape}, requires_grad={self.requires_grad})"

    # operator sugar
    def __add__(self, other):
        return add(self, _as_tensor(other))

    def __radd__(self, other):
        return add(_as_tensor(other), self)

    def __sub__(self, other):
        return sub(self, _as_tensor(other))

    def __rsub__(self, other):
        return sub(_as_tensor(other), self)

    def __mul__(self, other):
        return mul(self, _as_tensor(other))

    def __rmul__(self, other):
        return mul(_as_tensor(other), self)

    def __truediv__(self, other):
        return div(self, _as_tensor(other))

    def __matmul__(self, other):
        return matmul(self, other)

    def __neg__(self):
        return mul(self, _as_tensor(np.asarray(-1.0)))


def _as_tensor(x) -> Tensor:
    if isinstance(x, Tensor):
        return x
    return Tensor(np.asarray(x, dtype=np.float64))


def _accumulate(t: Tensor, g: np.ndarray):
    if not t.requires_grad:
        return
    if t.grad is None:
        t.grad = np.zeros_like(t.data)
    t.grad += g


def _emit(data: np.ndarray, parents: tuple[Tensor, ...], backward) -> Tensor:
    if not np.all(np.isfinite(data)):
        raise NonFiniteValue("non-finite value in forward pass")
    requires = any(p.requires_grad for p in parents)
    out = Tensor(data, requires_grad=requires, dtype=data.dtype)
    if _ACTIVE_TAPE is not None and requires:
        _ACTIVE_TAPE.nodes.append((out, backward))
    return out


def _unbroadcast(g: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for axis, s in enumerate(shape):
        if s == 1 and g.shape[axis] != 1:
            g = g.sum(axis=axis, keepdims=True)
    return g


# ---------------------------------------------------------------- basic ops

def add(a: Tensor, b: Tensor) -> Tensor:
    data = a.data + b.data

    def backward(g):
        _accumulate(a, _unbroadcast(g, a.data.shape))
        _accumulate(b, _unbroadcast(g, b.data.shape))

    return _emit(data, (a, b), backward)


def sub(a: Tensor, b: Tensor) -> Tensor:
    data = a.data - b.data

    def backward(g):
        _accumulate(a, _unbroadcast(g, a.data.shape))
        _accumulate(b, _unbroadcast(-g, b.data.shape))

    return _emit(data, (a, b), backward)


def mul(a: Tensor, b: Tensor) -> Tensor:
    data = a.data * b.data

    def backward(g):
        _accumulate(a, _unbroadcast(g * b.data, a.data.shape))
        _accumulate(b, _unbroadcast(g * a.data, b.data.shape))

    return _emit(data, (a, b), backward)


def div(a: Tensor, b: Tensor) -> Tensor:
    data = a.data / b.data

    def backward(g):
        _accumulate(a, _unbroadcast(g / b.data, a.data.shape))
        _accumulate(b, _unbroadcast(-g * a.data / (b.data * b.data), b.data.shape))

    return _emit(data, (a, b), backward)


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.data.ndim != 2 or b.data.ndim != 2 or a.data.shape[1] != b.data.shape[0]:
        raise ShapeMismatch(f"matmul shapes {a.data.shape} x {b.data.shape}")
    data = a.data @ b.data

    def backward(g):
        _accumulate(a, g @ b.data.T)
        _accumulate(b, a.data.T @ g)

    return _emit(data, (a, b), backward)


def relu(x: Tensor) -> Tensor:
    data = np.maximum(x.data, 0.0)

    def backward(g):
        _accumulate(x, g * (x.data > 0))

    return _emit(data, (x,), backward)


def sigmoid(x: Tensor) -> Tensor:
    data = 1.0 / (1.0 + np.exp(-np.clip(x.data, -60, 60)))

    def backward(g):
        _accumulate(x, g * data * (1.0 - data))

    return _emit(data, (x,), backward)


def tanh(x: Tensor) -> Tensor:
    data = np.tanh(x.data)

    def backward(g):
        _accumulate(x, g * (1.0 - data * data))

    return _emit(data, (x,), backward)


def exp(x: Tensor) -> Tensor:
    data = np.exp(x.data)

    def backward(g):
        _accumulate(x, g * data)

    return _emit(data, (x,), backward)


def log(x: Tensor) -> Tensor:
    data = np.log(x.data)

    def backward(g):
        _accumulate(x, g / x.data)

    return _emit(data, (x,), backward)


def sqrt(x: Tensor) -> Tensor:
    data = np.sqrt(x.data)

    def backward(g):
        _accumulate(x, g * 0.5 / data)

    return _emit(data, (x,), backward)


def square(x: Tensor) -> Tensor:
    data = x.data * x.data

    def backward(g):
        _accumulate(x, g * 2.0 * x.data)

    return _emit(data, (x,), backward)


def reduce_sum(x: Tensor, axis=None, keepdims: bool = False) -> Tensor:
    data = x.data.sum(axis=axis, keepdims=keepdims)

    def backward(g):
        if axis is None:
            _accumulate(x, np.broadcast_to(g, x.data.shape).copy())
        else:
            gg = g if keepdims else np.expand_dims(g, axis)
            _accumulate(x, np.broadcast_to(gg, x.data.shape).copy())

    return _emit(np.asarray(data), (x,), backward)


def reduce_mean(x: Tensor, axis=None, keepdims: bool = False) -> Tensor:
    count = x.data.size if axis is None else x.data.shape[axis]
    data = x.data.mean(axis=axis, keepdims=keepdims)

    def backward(g):
        if axis is None:
            _accumulate(x, np.broadcast_to(g / count, x.data.shape).copy())
        else:
            gg = g if keepdims else np.expand_dims(g, axis)
            _accumulate(x, np.broadcast_to(gg / count, x.data.shape).copy())

    return _emit(np.asarray(data), (x,), backward)


def concat(tensors: list[Tensor], axis: int = 0) -> Tensor:
    data = np.concatenate([t.data for t in tensors], axis=axis)
    offsets = np.cumsum([0] + [t.data.shape[axis] for t in tensors])

    def backward(g):
        for t, lo, hi in zip(tensors, offsets[:-1], offsets[1:]):
            idx = [slice(None)] * g.ndim
            idx[axis] = slice(lo, hi)
            _accumulate(t, g[tuple(idx)])

    return _emit(data, tuple(tensors), backward)


def narrow(x: Tensor, key) -> Tensor:
    """Basic slicing; gradients scatter back into the source shape."""
    data = x.data[key]

    def backward(g):
        full = np.zeros_like(x.data)
        np.add.at(full, key, g)
        _accumulate(x, full)

    return _emit(np.asarray(data), (x,), backward)


def reshape(x: Tensor, shape) -> Tensor:
    data = x.data.reshape(shape)

    def backward(g):
        _accumulate(x, g.reshape(x.data.shape))

    return _emit(data, (x,), backward)


# ------------------------------------------------------------ indexed ops

def gather(x: Tensor, index: np.ndarray) -> Tensor:
    """Row lookup: out[k] = x[index[k]]."""
    index = np.asarray(index, dtype=np.int64)
    data = x.data[index]

    def backward(g):
        full = np.zeros_like(x.data)
        np.add.at(full, index, g)
        _accumulate(x, full)

    return _emit(data, (x,), backward)


def scatter_add(x: Tensor, index: np.ndarray, n_out: int) -> Tensor:
    """Row aggregation: out[j] = sum of x[k] where index[k] == j."""
    index = np.asarray(index, dtype=np.int64)
    if index.shape[0] != x.data.shape[0]:
        raise ShapeMismatch("index length must match first axis")
    data = np.zeros((n_out,) + x.data.shape[1:], dtype=x.data.dtype)
    np.add.at(data, index, x.data)

    def backward(g):
        _accumulate(x, g[index])

    return _emit(data, (x,), backward)


def segment_softmax(logits: Tensor, segment: np.ndarray, n_segments: int) -> Tensor:
    """Softmax across rows sharing a segment id (per trailing column).

    Rows of each segment sum to 1; empty segments contribute nothing.
    """
    segment = np.asarray(segment, dtype=np.int64)
    if segment.shape[0] != logits.data.shape[0]:
        raise ShapeMismatch("segment length must match first axis")
    tail = logits.data.shape[1:]
    peak = np.full((n_segments,) + tail, -np.inf, dtype=logits.data.dtype)
    np.maximum.at(peak, segment, logits.data)
    shifted = logits.data - peak[segment]
    e = np.exp(shifted)
    denom = np.zeros((n_segments,) + tail, dtype=logits.data.dtype)
    np.add.at(denom, segment, e)
    y = e / denom[segment]

    def backward(g):
        weighted = np.zeros((n_segments,) + tail, dtype=g.dtype)
        np.add.at(weighted, segment, g * y)
        _accumulate(logits, y * (g - weighted[segment]))

    return _emit(y, (logits,), backward)


def dropout(x: Tensor, p: float, rng: np.random.Generator, training: bool) -> Tensor:
    """Inverted dropout; identity when not training or p == 0."""
    if not training or p <= 0.0:
        return x
    if not 0.0 <= p < 1.0:
        raise ValueError(f"dropout probability must be in [0, 1), got {p}")
    mask = (rng.random(x.data.shape) >= p) / (1.0 - p)
    data = x.data * mask

    def backward(g):
        _accumulate(x, g * mask)

    return _emit(data, (x,), backward)
