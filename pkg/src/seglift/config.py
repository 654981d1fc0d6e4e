"""Pipeline configuration: strict JSON with unknown keys rejected.

Flag values passed on the command line override config-file values,
which override the built-in defaults.  All paths are resolved against
the config file's directory before any work starts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ConfigError
from .thresholding import THRESHOLD_MODES, ThresholdConfig

REFINEMENT_SCHEMES = ("majority", "distance_weighted", "confidence_avg")
LIFT_SAMPLING = ("nearest", "bilinear")
TIE_BREAKS = ("lowest", "keep")


@dataclass(frozen=True)
class RefinementConfig:
    scheme: str = "confidence_avg"
    k: int = 19
    include_self: bool = True
    tie_break: str = "lowest"


@dataclass(frozen=True)
class AugmentationConfig:
    jitter_range_m: float = 0.5
    squeeze_range: tuple[float, float] = (0.9, 1.1)


@dataclass(frozen=True)
class PipelineConfig:
    dataset_root: str | None = None
    output_root: str | None = None
    class_map: str | None = None
    remap: str | None = None
    cameras: tuple[int, ...] = (2,)
    image_size: tuple[int, int] | None = None
    lift_sampling: str = "nearest"
    refinement: RefinementConfig = field(default_factory=RefinementConfig)
    threshold: ThresholdConfig = field(default_factory=lambda: ThresholdConfig(0.8, 0.95))
    augmentation: AugmentationConfig = field(default_factory=AugmentationConfig)
    seed: int = 0
    jobs: int = 1


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def _type_ok(value, types) -> bool:
    # bool is an int subclass; only accept it where bool is listed.
    if not isinstance(types, tuple):
        types = (types,)
    if isinstance(value, bool):
        return bool in types
    return isinstance(value, types)


def _take(raw: dict, section: str, allowed: dict) -> dict:
    """Pop known keys with type checks; reject anything left over."""
    out = {}
    for key, (types, check, why) in allowed.items():
        if key not in raw:
            continue
        value = raw.pop(key)
        _expect(_type_ok(value, types), f"{section}.{key}: wrong type")
        if check is not None:
            _expect(check(value), f"{section}.{key}: {why}")
        out[key] = value
    _expect(not raw, f"{section}: unknown key(s) {sorted(raw)}")
    return out


def _parse_threshold(raw: dict) -> ThresholdConfig:
    mode = raw.pop("mode", "class_balanced")
    _expect(mode in THRESHOLD_MODES, f"threshold.mode: must be one of {THRESHOLD_MODES}")
    if mode == "static":
        vals = _take(raw, "threshold", {
            "tau": ((int, float), lambda v: 0.0 <= v <= 1.0, "must lie in [0, 1]"),
        })
        _expect("tau" in vals, "threshold: static mode needs 'tau'")
        return ThresholdConfig.static(float(vals["tau"]))
    vals = _take(raw, "threshold", {
        "tau_min": ((int, float), lambda v: 0.0 <= v <= 1.0, "must lie in [0, 1]"),
        "tau_max": ((int, float), lambda v: 0.0 <= v <= 1.0, "must lie in [0, 1]"),
    })
    tau_min = float(vals.get("tau_min", 0.8))
    tau_max = float(vals.get("tau_max", 0.95))
    _expect(tau_min <= tau_max, "threshold: need tau_min <= tau_max")
    return ThresholdConfig(tau_min, tau_max, "class_balanced")


def _parse_refinement(raw: dict) -> RefinementConfig:
    vals = _take(raw, "refinement", {
        "scheme": (str, lambda v: v in REFINEMENT_SCHEMES, f"must be one of {REFINEMENT_SCHEMES}"),
        "k": (int, lambda v: v >= 1 and v % 2 == 1, "must be an odd integer >= 1"),
        "include_self": (bool, None, ""),
        "tie_break": (str, lambda v: v in TIE_BREAKS, f"must be one of {TIE_BREAKS}"),
    })
    return RefinementConfig(**vals)


def _parse_augmentation(raw: dict) -> AugmentationConfig:
    vals = _take(raw, "augmentation", {
        "jitter_range_m": ((int, float), lambda v: v >= 0, "must be >= 0"),
        "squeeze_range": (list, lambda v: len(v) == 2 and 0 < v[0] <= v[1], "must be [low, high] with 0 < low <= high"),
    })
    if "squeeze_range" in vals:
        vals["squeeze_range"] = tuple(float(x) for x in vals["squeeze_range"])
    if "jitter_range_m" in vals:
        vals["jitter_range_m"] = float(vals["jitter_range_m"])
    return AugmentationConfig(**vals)


def parse_config(raw: dict, base_dir: Path | None = None) -> PipelineConfig:
    """Validate a config dict; `base_dir` anchors relative paths."""
    _expect(isinstance(raw, dict), "config root must be a JSON object")
    raw = dict(raw)

    sections = {}
    for name, parser in (("threshold", _parse_threshold),
                         ("refinement", _parse_refinement),
                         ("augmentation", _parse_augmentation)):
        if name in raw:
            section = raw.pop(name)
            _expect(isinstance(section, dict), f"{name}: must be a JSON object")
            sections[name] = parser(dict(section))

    vals = _take(raw, "config", {
        "dataset_root": (str, None, ""),
        "output_root": (str, None, ""),
        "class_map": (str, None, ""),
        "remap": (str, None, ""),
        "cameras": (list, lambda v: bool(v) and all(isinstance(c, int) and not isinstance(c, bool) and c >= 0 for c in v), "must be a non-empty list of camera ids"),
        "image_size": (list, lambda v: len(v) == 2 and all(isinstance(x, int) and x > 0 for x in v), "must be [width, height] of positive ints"),
        "lift_sampling": (str, lambda v: v in LIFT_SAMPLING, f"must be one of {LIFT_SAMPLING}"),
        "seed": (int, lambda v: v >= 0, "must be >= 0"),
        "jobs": (int, lambda v: v >= 1, "must be >= 1"),
    })
    if "cameras" in vals:
        vals["cameras"] = tuple(vals["cameras"])
    if "image_size" in vals:
        vals["image_size"] = tuple(vals["image_size"])
    if base_dir is not None:
        for key in ("dataset_root", "output_root", "class_map", "remap"):
            if key in vals:
                vals[key] = str((base_dir / vals[key]).resolve())

    return PipelineConfig(**vals, **sections)


def read_config(path) -> PipelineConfig:
    """Load and validate a JSON config file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    try:
        return parse_config(raw, base_dir=path.parent)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def override(cfg: PipelineConfig, **updates) -> PipelineConfig:
    """Apply non-None keyword overrides onto a config."""
    clean = {k: v for k, v in updates.items() if v is not None}
    return replace(cfg, **clean) if clean else cfg
