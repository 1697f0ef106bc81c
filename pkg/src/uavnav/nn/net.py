"""Minimal dense feed-forward networks with inverted dropout.

A DenseNet is an immutable stack of (weights, bias, activation) layers.
Dropout applies to the post-activation output of every layer whose index is
in `dropout_sites`, using inverted scaling so deterministic inference needs
no rescaling. All math runs in float64 through the kernel backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .. import kernels
from ..errors import NonFiniteValue, ShapeMismatch

ACTIVATIONS = ("relu", "tanh", "identity")


@dataclass(frozen=True)
class DenseLayer:
    weights: np.ndarray  # (n_out, n_in)
    bias: np.ndarray  # (n_out,)
    activation: str = "identity"

    @property
    def n_in(self) -> int:
        return self.weights.shape[1]

    @property
    def n_out(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class DenseNet:
    layers: tuple[DenseLayer, ...]
    dropout_rate: float = 0.0
    dropout_sites: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.layers:
            raise ShapeMismatch("a DenseNet needs at least one layer")
        for i, layer in enumerate(self.layers):
            if layer.activation not in ACTIVATIONS:
                raise ShapeMismatch(f"layer {i}: unknown activation {layer.activation!r}")
            if layer.weights.ndim != 2 or layer.bias.ndim != 1:
                raise ShapeMismatch(f"layer {i}: weights must be 2-D and bias 1-D")
            if layer.bias.shape[0] != layer.n_out:
                raise ShapeMismatch(f"layer {i}: bias length {layer.bias.shape[0]} != {layer.n_out}")
            if i > 0 and layer.n_in != self.layers[i - 1].n_out:
                raise ShapeMismatch(
                    f"layer {i} expects {layer.n_in} inputs but layer {i - 1} emits "
                    f"{self.layers[i - 1].n_out}"
                )
            if not (np.isfinite(layer.weights).all() and np.isfinite(layer.bias).all()):
                raise NonFiniteValue(f"layer {i} has non-finite parameters", where=f"layer{i}")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ShapeMismatch(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")
        for site in self.dropout_sites:
            if not 0 <= site < len(self.layers):
                raise ShapeMismatch(f"dropout site {site} out of range")

    @property
    def n_in(self) -> int:
        return self.layers[0].n_in

    @property
    def n_out(self) -> int:
        return self.layers[-1].n_out


def init_dense_net(
    sizes: list[int] | tuple[int, ...],
    activations: list[str] | tuple[str, ...],
    seed,
    dropout_rate: float = 0.0,
    dropout_sites=(),
) -> DenseNet:
    """Seeded uniform fan-in (He-style) initialization, zero biases.

    `sizes` is [n_in, h1, ..., n_out]; `activations` has one entry per layer.
    `seed` may be an int or a numpy SeedSequence/Generator.
    """
    if len(activations) != len(sizes) - 1:
        raise ShapeMismatch("need one activation per layer")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    layers = []
    for n_in, n_out, act in zip(sizes[:-1], sizes[1:], activations):
        limit = np.sqrt(6.0 / n_in)
        w = rng.uniform(-limit, limit, size=(n_out, n_in))
        layers.append(DenseLayer(w, np.zeros(n_out), act))
    return DenseNet(tuple(layers), dropout_rate, frozenset(dropout_sites))


def draw_dropout_masks(net: DenseNet, batch: int, rng: np.random.Generator) -> dict[int, np.ndarray]:
    """Per-sample inverted-dropout masks for every dropout site, in site order."""
    p = net.dropout_rate
    masks = {}
    for site in sorted(net.dropout_sites):
        width = net.layers[site].n_out
        if p == 0.0:
            masks[site] = np.ones((batch, width))
        else:
            keep = rng.random((batch, width)) >= p
            masks[site] = keep / (1.0 - p)
    return masks


def _check_finite(arr: np.ndarray, layer_index: int):
    if not np.isfinite(arr).all():
        raise NonFiniteValue(
            f"non-finite activations at layer {layer_index}", where=f"layer{layer_index}"
        )


def forward_batch(net: DenseNet, x: np.ndarray, masks: dict[int, np.ndarray] | None = None) -> np.ndarray:
    """Forward pass over a (batch, n_in) array; masks enable dropout sites."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != net.n_in:
        raise ShapeMismatch(f"expected input shape (batch, {net.n_in}), got {x.shape}")
    a = x
    for i, layer in enumerate(net.layers):
        z = kernels.affine(a, layer.weights, layer.bias)
        a = kernels.activation(z, kernels.ACTIVATION_CODES[layer.activation])
        if masks is not None and i in masks:
            a = a * masks[i]
        _check_finite(a, i)
    return a


def forward(net: DenseNet, x: np.ndarray, mode: str = "deterministic", rng=None) -> np.ndarray:
    """Single-vector forward pass.

    `mode` is "deterministic" or "dropout"; dropout mode requires `rng` and
    multiplies activations at the dropout sites by Bernoulli(1-p)/(1-p) masks.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ShapeMismatch(f"forward takes a 1-D input, got shape {x.shape}")
    if mode == "deterministic":
        masks = None
    elif mode == "dropout":
        if rng is None:
            raise ShapeMismatch("dropout mode requires an rng")
        masks = draw_dropout_masks(net, 1, rng)
    else:
        raise ShapeMismatch(f"unknown forward mode {mode!r}")
    return forward_batch(net, x[None, :], masks)[0]


@dataclass
class ForwardCache:
    """Intermediate values needed to backpropagate one forward pass."""

    inputs: list[np.ndarray]  # input to each affine (post-mask output of previous layer)
    preacts: list[np.ndarray]  # z of each layer
    masks: dict[int, np.ndarray] | None
    output: np.ndarray


def forward_cached(net: DenseNet, x: np.ndarray, masks: dict[int, np.ndarray] | None = None) -> ForwardCache:
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != net.n_in:
        raise ShapeMismatch(f"expected input shape (batch, {net.n_in}), got {x.shape}")
    inputs, preacts = [], []
    a = x
    for i, layer in enumerate(net.layers):
        inputs.append(a)
        z = kernels.affine(a, layer.weights, layer.bias)
        preacts.append(z)
        a = kernels.activation(z, kernels.ACTIVATION_CODES[layer.activation])
        if masks is not None and i in masks:
            a = a * masks[i]
        _check_finite(a, i)
    return ForwardCache(inputs, preacts, masks, a)


def backprop(net: DenseNet, cache: ForwardCache, grad_out: np.ndarray):
    """Reverse pass. Returns (param_grads, grad_input).

    param_grads is [dW0, db0, dW1, db1, ...] aligned with `net_params`.
    """
    grads: list[np.ndarray | None] = [None] * (2 * len(net.layers))
    g = grad_out
    for i in range(len(net.layers) - 1, -1, -1):
        layer = net.layers[i]
        if cache.masks is not None and i in cache.masks:
            g = g * cache.masks[i]
        dz = kernels.activation_backward(
            cache.preacts[i], kernels.ACTIVATION_CODES[layer.activation], g
        )
        g, dw, db = kernels.affine_backward(cache.inputs[i], layer.weights, dz)
        if not (np.isfinite(dw).all() and np.isfinite(db).all()):
            raise NonFiniteValue(f"non-finite gradient in layer {i}", where=f"layer{i}")
        grads[2 * i] = dw
        grads[2 * i + 1] = db
    return grads, g


def net_params(net: DenseNet) -> list[np.ndarray]:
    """Flat parameter list [W0, b0, W1, b1, ...] (views, do not mutate)."""
    out = []
    for layer in net.layers:
        out.append(layer.weights)
        out.append(layer.bias)
    return out


def with_params(net: DenseNet, params: list[np.ndarray]) -> DenseNet:
    """A copy of `net` carrying `params` (same layout as `net_params`)."""
    if len(params) != 2 * len(net.layers):
        raise ShapeMismatch("parameter list length mismatch")
    layers = []
    for i, layer in enumerate(net.layers):
        w, b = params[2 * i], params[2 * i + 1]
        if w.shape != layer.weights.shape or b.shape != layer.bias.shape:
            raise ShapeMismatch(f"layer {i}: parameter shape mismatch")
        layers.append(replace(layer, weights=w, bias=b))
    return replace(net, layers=tuple(layers))
