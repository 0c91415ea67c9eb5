"""Numpy multilayer perceptron: ReLU hidden layers, linear output, inverted dropout, Adam."""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from proxiskin.stages.pss_map.schema import MlpModel

Params = Tuple[List[np.ndarray], List[np.ndarray]]


@dataclass
class ForwardCache:
    activations: List[np.ndarray]
    pre_activations: List[np.ndarray]
    masks: List[Optional[np.ndarray]]
    keep_prob: float


def init_parameters(layer_sizes: Sequence[int], rng: np.random.Generator) -> Params:
    """He-normal weights, zero biases."""
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        weights.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def forward(
    weights: Sequence[np.ndarray],
    biases: Sequence[np.ndarray],
    X: np.ndarray,
    dropout_rate: float = 0.0,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, ForwardCache]:
    """
    Batched forward pass.

    Dropout is applied to hidden activations only when both ``dropout_rate > 0``
    and ``rng`` are given; kept units are rescaled by ``1 / (1 - rate)``.
    """
    keep = 1.0 - dropout_rate
    train = rng is not None and dropout_rate > 0.0
    a = np.asarray(X, dtype=float)
    cache = ForwardCache(activations=[a], pre_activations=[], masks=[], keep_prob=keep)
    last = len(weights) - 1
    for i, (W, b) in enumerate(zip(weights, biases)):
        z = a @ W + b
        cache.pre_activations.append(z)
        if i == last:
            return z, cache
        a = np.maximum(z, 0.0)
        mask = None
        if train:
            mask = (rng.random(a.shape) < keep) / keep
            a = a * mask
        cache.masks.append(mask)
        cache.activations.append(a)
    raise ValueError("network has no layers")


def backward(
    weights: Sequence[np.ndarray], cache: ForwardCache, grad_out: np.ndarray
) -> Params:
    """Gradients of the loss w.r.t. every weight and bias given dL/d(output)."""
    n_layers = len(weights)
    grad_w: List[np.ndarray] = [None] * n_layers  # type: ignore[list-item]
    grad_b: List[np.ndarray] = [None] * n_layers  # type: ignore[list-item]
    delta = grad_out
    for i in range(n_layers - 1, -1, -1):
        grad_w[i] = cache.activations[i].T @ delta
        grad_b[i] = delta.sum(axis=0)
        if i == 0:
            break
        delta = delta @ weights[i].T
        mask = cache.masks[i - 1]
        if mask is not None:
            delta = delta * mask
        delta = delta * (cache.pre_activations[i - 1] > 0.0)
    return grad_w, grad_b


def mse_loss(pred: np.ndarray, target: np.ndarray) -> Tuple[float, np.ndarray]:
    """Mean squared error over all elements and its gradient w.r.t. ``pred``."""
    diff = pred - target
    return float(np.mean(diff**2)), 2.0 * diff / diff.size


def loss_and_gradients(
    weights: Sequence[np.ndarray],
    biases: Sequence[np.ndarray],
    X: np.ndarray,
    Y: np.ndarray,
    dropout_rate: float = 0.0,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[float, List[np.ndarray], List[np.ndarray]]:
    pred, cache = forward(weights, biases, X, dropout_rate, rng)
    loss, grad_out = mse_loss(pred, Y)
    grad_w, grad_b = backward(weights, cache, grad_out)
    return loss, grad_w, grad_b


@dataclass
class AdamOptimizer:
    """Adaptive moment estimation with bias-corrected first and second moments."""

    learning_rate: float = 1.0e-4
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1.0e-8
    t: int = 0
    m: List[np.ndarray] = field(default_factory=list)
    v: List[np.ndarray] = field(default_factory=list)

    def step(self, params: List[np.ndarray], grads: List[np.ndarray]) -> None:
        """Update ``params`` in place."""
        if not self.m:
            self.m = [np.zeros_like(p) for p in params]
            self.v = [np.zeros_like(p) for p in params]
        self.t += 1
        c1 = 1.0 - self.beta1**self.t
        c2 = 1.0 - self.beta2**self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= self.learning_rate * (m / c1) / (np.sqrt(v / c2) + self.epsilon)


def to_model(weights: Sequence[np.ndarray], biases: Sequence[np.ndarray], dropout_rate: float) -> MlpModel:
    sizes = [weights[0].shape[0]] + [W.shape[1] for W in weights]
    return MlpModel(
        layer_sizes=sizes,
        weights=[W.copy() for W in weights],
        biases=[b.copy() for b in biases],
        dropout_rate=dropout_rate,
    )


def mlp_predict(model: MlpModel, X: np.ndarray) -> np.ndarray:
    """Inference pass, dropout disabled."""
    out, _ = forward(model.weights, model.biases, X)
    return out
