"""Pipeline configuration: defaults, JSON config files, flag overrides."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .curve import DEFAULT_PVE_CUTOFF
from .errors import ConfigError
from .segment import DEFAULT_WINDOW
from .smoothing import DEFAULT_SPAR
from .stats import DEFAULT_ALPHA
from .synth import SynthConfig


@dataclass(frozen=True)
class PipelineConfig:
    window: int = DEFAULT_WINDOW
    spar: float = DEFAULT_SPAR
    pve_cutoff: float = DEFAULT_PVE_CUTOFF
    alpha: float = DEFAULT_ALPHA
    synth: SynthConfig = field(default_factory=SynthConfig)
    io: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.window < 2:
            raise ConfigError("window must be at least 2")
        if not 0.0 < self.pve_cutoff < 1.0:
            raise ConfigError("pve_cutoff must lie in (0, 1)")
        if not 0.0 <= self.spar <= 1.5:
            raise ConfigError("spar must lie in [0, 1.5]")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError("alpha must lie in (0, 1)")


def load_config(path) -> PipelineConfig:
    """PipelineConfig from a JSON file; unknown keys are rejected."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(doc)
    if "synth" in kwargs:
        synth_doc = kwargs["synth"]
        if not isinstance(synth_doc, dict):
            raise ConfigError("config key 'synth' must be an object")
        synth_known = {f.name for f in fields(SynthConfig)}
        synth_unknown = set(synth_doc) - synth_known
        if synth_unknown:
            raise ConfigError(f"unknown synth config keys: {sorted(synth_unknown)}")
        try:
            kwargs["synth"] = SynthConfig(**synth_doc)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    try:
        return PipelineConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def apply_overrides(
    config: PipelineConfig,
    window=None,
    spar=None,
    pve_cutoff=None,
    seed=None,
    alpha=None,
) -> PipelineConfig:
    """New config with any explicitly given flag values swapped in."""
    updates = {}
    if window is not None:
        updates["window"] = window
    if spar is not None:
        updates["spar"] = spar
    if pve_cutoff is not None:
        updates["pve_cutoff"] = pve_cutoff
    if alpha is not None:
        updates["alpha"] = alpha
    if seed is not None:
        updates["synth"] = replace(config.synth, seed=seed)
    return replace(config, **updates) if updates else config
