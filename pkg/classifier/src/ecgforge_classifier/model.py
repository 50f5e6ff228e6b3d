"""1-D residual network for heartbeat classification.

Three residual blocks (128, 64, 32 channels), each holding three
ConvBlocks (conv k=5 same-padding -> batch norm -> swish) and a max pool
of kernel 2.  The skip adds ConvBlock 1's post-batch-norm output to
ConvBlock 3's post-batch-norm output before ConvBlock 3's activation.
Head: adaptive average pool over time -> dense 32->5 -> softmax.  This
configuration has exactly 269,061 trainable parameters
(165,632 + 82,496 + 20,768 + 165).
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from torch import nn


class ConfigMismatch(ValueError):
    """Channel progression breaks the skip connection's shape equality."""


@dataclass
class ModelConfig:
    # Per block: an int (all convs share it) or a per-conv tuple.
    blocks: tuple = (128, 64, 32)
    convs_per_block: int = 3
    kernel_size: int = 5
    pool_kernel: int = 2
    swish_beta: float = 1.0
    in_channels: int = 1
    n_classes: int = 5
    include_head: bool = True

    def block_channel_lists(self) -> list[tuple[int, ...]]:
        out = []
        for spec in self.blocks:
            if isinstance(spec, int):
                out.append((spec,) * self.convs_per_block)
            else:
                channels = tuple(int(c) for c in spec)
                if len(channels) != self.convs_per_block:
                    raise ConfigMismatch(
                        f"block spec {spec} must list {self.convs_per_block} channels"
                    )
                out.append(channels)
        return out


class Swish(nn.Module):
    def __init__(self, beta: float = 1.0):
        super().__init__()
        self.beta = beta  # fixed, not trainable

    def forward(self, x):
        return x * torch.sigmoid(self.beta * x)


class ConvBlock(nn.Module):
    """conv (same padding, bias) -> batch norm -> swish."""

    def __init__(self, in_channels, out_channels, kernel_size, beta):
        super().__init__()
        self.conv = nn.Conv1d(
            in_channels, out_channels, kernel_size,
            padding=kernel_size // 2, bias=True,
        )
        self.bn = nn.BatchNorm1d(out_channels)
        self.act = Swish(beta)

    def pre_activation(self, x):
        return self.bn(self.conv(x))

    def forward(self, x):
        return self.act(self.pre_activation(x))


class ResidualBlock(nn.Module):
    """Three ConvBlocks with a post-batch-norm skip and a max pool."""

    def __init__(self, in_channels, channels, kernel_size, pool_kernel, beta):
        super().__init__()
        if channels[0] != channels[-1]:
            raise ConfigMismatch(
                f"skip needs ConvBlock 1 and {len(channels)} to share channels, "
                f"got {channels[0]} vs {channels[-1]}"
            )
        widths = [in_channels, *channels]
        self.convs = nn.ModuleList(
            ConvBlock(widths[i], widths[i + 1], kernel_size, beta)
            for i in range(len(channels))
        )
        self.pool = nn.MaxPool1d(pool_kernel)

    def forward(self, x):
        skip = self.convs[0].pre_activation(x)
        x = self.convs[0].act(skip)
        for block in self.convs[1:-1]:
            x = block(x)
        joined = skip + self.convs[-1].pre_activation(x)
        return self.pool(self.convs[-1].act(joined))


class HeartbeatResNet(nn.Module):
    def __init__(self, cfg: ModelConfig | None = None):
        super().__init__()
        self.cfg = cfg or ModelConfig()
        block_channels = self.cfg.block_channel_lists()
        blocks = []
        in_channels = self.cfg.in_channels
        for channels in block_channels:
            blocks.append(
                ResidualBlock(
                    in_channels, channels,
                    self.cfg.kernel_size, self.cfg.pool_kernel, self.cfg.swish_beta,
                )
            )
            in_channels = channels[-1]
        self.blocks = nn.ModuleList(blocks)
        self.avg_pool = nn.AdaptiveAvgPool1d(1)
        self.head = (
            nn.Linear(in_channels, self.cfg.n_classes)
            if self.cfg.include_head and block_channels
            else None
        )

    def logits(self, x):
        """x: (batch, 1, length) -> (batch, n_classes); any length >= 8."""
        for block in self.blocks:
            x = block(x)
        x = self.avg_pool(x).squeeze(-1)
        if self.head is None:
            return x
        return self.head(x)

    def forward(self, x):
        """Class probabilities; rows sum to one."""
        return torch.softmax(self.logits(x), dim=-1)


def build_model(cfg: ModelConfig | None = None) -> HeartbeatResNet:
    return HeartbeatResNet(cfg)


def count_params(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters() if p.requires_grad)


def analytic_param_count(cfg: ModelConfig | None = None) -> int:
    """Layer-by-layer arithmetic, kept separate from count_params so the
    two can cross-check each other."""
    cfg = cfg or ModelConfig()
    total = 0
    in_channels = cfg.in_channels
    for channels in cfg.block_channel_lists():
        widths = [in_channels, *channels]
        for i, out_channels in enumerate(channels):
            total += (widths[i] * cfg.kernel_size + 1) * out_channels  # conv + bias
            total += 2 * out_channels                                  # bn affine
        in_channels = channels[-1]
    if cfg.include_head and cfg.blocks:
        total += (in_channels + 1) * cfg.n_classes
    return total
