"""Layered spiking networks: windowed execution and backprop through time.

A network is a feedforward stack of LIF layers joined by dense synapses.
A layer may read the upstream layer at several time offsets (``taps``);
the cerebellar Purkinje stage uses taps ``(0, 1)`` to see both the current
and the previous granule spike vector.

Execution is rate-coded: the input current is held for ``T`` steps, every
layer advances once per step (cascaded within the step), and the decoded
output is the membrane potential of the final non-spiking layer at the
last step.  ``run_window`` records a :class:`WindowTape`;
``backprop_window`` replays it backwards.

Two gradient modes exist:

* ``spiking`` (production): forward used the step function; the backward
  pass substitutes the scaled-sigmoid surrogate derivative and detaches
  the reset branch.
* ``smooth``: forward replaced the step function by the sigmoid itself
  (graded spikes, soft reset); the backward pass is then the exact
  gradient of the executed map, which is what finite differences check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .neurons import LifParams, SurrogateConfig, sigmoid


@dataclass(frozen=True)
class LayerSpec:
    """One layer: size, neuron parameters, upstream time offsets."""

    size: int
    params: LifParams
    taps: tuple[int, ...] = (0,)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("layer size must be >= 1")
        if not self.taps or any(d < 0 for d in self.taps):
            raise ValueError(f"taps must be non-negative offsets (got {self.taps})")


@dataclass
class DenseSynapses:
    """Dense connection (post x pre) with its momentum buffer."""

    weights: np.ndarray
    momentum: np.ndarray

    @classmethod
    def create(cls, n_post: int, n_pre: int, rng: np.random.Generator) -> "DenseSynapses":
        bound = 1.0 / np.sqrt(n_pre)
        w = rng.uniform(-bound, bound, size=(n_post, n_pre))
        return cls(weights=w, momentum=np.zeros_like(w))


class Network:
    """Dense-synapse LIF stack executed over rate-coding windows."""

    def __init__(self, input_size: int, layers: list[LayerSpec], synapses: list[DenseSynapses]):
        if len(synapses) != len(layers):
            raise ValueError("need one synapse block per layer")
        widths = [input_size] + [spec.size for spec in layers]
        for i, (spec, syn) in enumerate(zip(layers, synapses)):
            expect = widths[i] * len(spec.taps)
            if syn.weights.shape != (spec.size, expect):
                raise ValueError(
                    f"layer {i}: weights {syn.weights.shape} != {(spec.size, expect)}"
                )
        self.input_size = input_size
        self.layers = layers
        self.synapses = synapses

    @classmethod
    def create(
        cls, input_size: int, layers: list[LayerSpec], rng: np.random.Generator
    ) -> "Network":
        """Uniform +-1/sqrt(fan_in) initialization, fan-in counting all taps."""
        widths = [input_size] + [spec.size for spec in layers]
        synapses = [
            DenseSynapses.create(spec.size, widths[i] * len(spec.taps), rng)
            for i, spec in enumerate(layers)
        ]
        return cls(input_size, layers, synapses)

    @property
    def output_size(self) -> int:
        return self.layers[-1].size

    def weight_arrays(self) -> list[np.ndarray]:
        return [syn.weights for syn in self.synapses]


@dataclass
class WindowTape:
    """Per-step record of one window: synapse inputs, potentials, spikes."""

    T: int
    batch: int
    batched: bool
    smooth: bool
    nu: float
    x_seq: list[np.ndarray] = field(default_factory=list)      # (T, B, in_width)
    u_pre_seq: list[np.ndarray] = field(default_factory=list)  # (T, B, size)
    spike_seq: list[np.ndarray] = field(default_factory=list)  # (T, B, size)


def _tap_concat(seq: np.ndarray, t: int, taps: tuple[int, ...]) -> np.ndarray:
    """Concatenate upstream outputs at offsets ``t - d``; before t=0 reads zero."""
    parts = []
    for d in taps:
        if t - d >= 0:
            parts.append(seq[t - d])
        else:
            parts.append(np.zeros_like(seq[0]))
    return parts[0] if len(parts) == 1 else np.concatenate(parts, axis=-1)


def run_window(
    net: Network,
    inputs: np.ndarray,
    T: int | None = None,
    smooth: bool = False,
    cfg: SurrogateConfig | None = None,
) -> tuple[np.ndarray, WindowTape]:
    """Execute ``T`` steps and decode the final output-layer potentials.

    ``inputs`` may be a constant current vector ``(n_in,)``, a per-step
    drive ``(T, n_in)``, or a batch ``(B, T, n_in)``.
    """
    x = np.asarray(inputs, dtype=float)
    batched = x.ndim == 3
    if x.ndim == 1:
        if T is None or T < 1:
            raise ValueError("constant input needs an explicit window length T >= 1")
        x = np.tile(x, (T, 1))
    if x.ndim == 2:
        x = x[:, None, :]  # (T, 1, n_in)
    else:
        x = np.moveaxis(x, 0, 1)  # (B, T, n) -> (T, B, n)
    T_run, B, n_in = x.shape
    if T is not None and T != T_run:
        raise ValueError(f"input provides {T_run} steps but T={T}")
    if n_in != net.input_size:
        raise ValueError(f"input width {n_in} != network input size {net.input_size}")
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite network input")
    nu = cfg.nu if cfg is not None else 5.0

    tape = WindowTape(T=T_run, batch=B, batched=batched, smooth=smooth, nu=nu)
    upstream = x  # (T, B, width) output sequence of the previous stage
    out_potentials = None
    for spec, syn in zip(net.layers, net.synapses):
        p = spec.params
        x_seq = np.stack([_tap_concat(upstream, t, spec.taps) for t in range(T_run)])
        currents = x_seq @ syn.weights.T  # (T, B, size)
        u = np.full((B, spec.size), p.u_reset)
        u_pre_seq = np.empty((T_run, B, spec.size))
        spike_seq = np.zeros((T_run, B, spec.size))
        leak = 1.0 - 1.0 / p.tau_mb
        gain = p.r_mem / p.tau_mb
        for t in range(T_run):
            u_pre = u * leak + p.u_reset / p.tau_mb + gain * currents[t]
            u_pre_seq[t] = u_pre
            if p.spiking:
                if smooth:
                    s = sigmoid(u_pre - p.u_fire, nu)
                    u = u_pre - s * (u_pre - p.u_reset)
                else:
                    s = (u_pre >= p.u_fire).astype(float)
                    u = np.where(s > 0.0, p.u_reset, u_pre)
                spike_seq[t] = s
            else:
                u = u_pre
        tape.x_seq.append(x_seq)
        tape.u_pre_seq.append(u_pre_seq)
        tape.spike_seq.append(spike_seq)
        if p.spiking:
            upstream = spike_seq
        else:
            upstream = u_pre_seq
        out_potentials = u
    outputs = out_potentials if batched else out_potentials[0]
    return outputs, tape


def backprop_window(
    net: Network,
    tape: WindowTape,
    output_grad: np.ndarray,
    cfg: SurrogateConfig | None = None,
) -> list[np.ndarray]:
    """Gradients of ``sum(output_grad * outputs)`` w.r.t. every synapse block.

    ``output_grad`` matches the decoded output shape; batched decodes sum
    gradients over the batch.  In spiking mode the spike derivative is the
    scaled sigmoid and the reset branch is treated as constant; in smooth
    mode the exact gradient of the soft forward map is returned.
    """
    nu = cfg.nu if cfg is not None else tape.nu
    g_out = np.asarray(output_grad, dtype=float)
    if g_out.ndim == 1:
        g_out = g_out[None, :]
    if g_out.shape != (tape.batch, net.output_size):
        raise ValueError(
            f"output_grad shape {output_grad.shape} incompatible with "
            f"batch {tape.batch} x output {net.output_size}"
        )

    n_layers = len(net.layers)
    # Gradient w.r.t. each layer's per-step OUTPUT (spikes, or potentials
    # for non-spiking layers), filled in by downstream layers.
    g_out_seq = [np.zeros_like(tape.spike_seq[i]) for i in range(n_layers)]
    grads = [np.zeros_like(syn.weights) for syn in net.synapses]

    for li in range(n_layers - 1, -1, -1):
        spec, syn = net.layers[li], net.synapses[li]
        p = spec.params
        T, B = tape.T, tape.batch
        u_pre = tape.u_pre_seq[li]
        s = tape.spike_seq[li]
        leak = 1.0 - 1.0 / p.tau_mb
        gain = p.r_mem / p.tau_mb

        gu_pre_seq = np.empty((T, B, spec.size))
        g_carry = np.zeros((B, spec.size))  # d/d u_post(t) from step t+1
        for t in range(T - 1, -1, -1):
            gu_post = g_carry.copy()
            if li == n_layers - 1 and t == T - 1:
                gu_post += g_out  # decode reads final potentials
            if not p.spiking:
                gu_post += g_out_seq[li][t]
                gu_pre = gu_post
            else:
                gs = g_out_seq[li][t]
                if tape.smooth:
                    ds = nu * s[t] * (1.0 - s[t])
                    gs = gs - gu_post * (u_pre[t] - p.u_reset)  # reset branch
                    gu_pre = gu_post * (1.0 - s[t]) + gs * ds
                else:
                    sg = sigmoid(u_pre[t] - p.u_fire, nu)
                    ds = nu * sg * (1.0 - sg)
                    gu_pre = gu_post * (1.0 - s[t]) + gs * ds
            gu_pre_seq[t] = gu_pre
            g_carry = gu_pre * leak
        gI = gain * gu_pre_seq  # (T, B, size)
        grads[li] = np.einsum("tbo,tbi->oi", gI, tape.x_seq[li])
        gx = gI @ syn.weights  # (T, B, in_width)
        if li > 0:
            width = net.layers[li - 1].size
            for k, d in enumerate(spec.taps):
                part = gx[..., k * width : (k + 1) * width]
                if d == 0:
                    g_out_seq[li - 1] += part
                else:
                    g_out_seq[li - 1][: T - d] += part[d:]
    return grads
