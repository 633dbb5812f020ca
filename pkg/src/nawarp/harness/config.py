"""Scenario configuration loading and validation.

One structured text file (YAML or JSON, decided by extension) holds a
list of scenarios.  Unknown keys are rejected everywhere, every scenario
needs an explicit random seed, and defaults are filled in for the
optional parameter blocks.
"""

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

import yaml

MODULES = ("algebra", "coupling", "core", "qm", "moyal", "fock", "wedge", "all")

_SCENARIO_KEYS = {
    "name",
    "module",
    "seed",
    "m",
    "coupling",
    "theta",
    "instances",
    "dim",
    "epsilons",
    "grid",
    "z",
    "fock",
    "wedge",
    "tolerances",
}

_DEFAULT_GRID = {"n": 2, "N": 64, "L": 10.0, "width": 1.0, "refine_from": 32}
_DEFAULT_FOCK = {"mass": 1.0, "momenta": [-1.5, -0.5, 0.5, 1.5], "ncut": 3}
_DEFAULT_WEDGE = {
    "mass": 1.0,
    "f": {"center": [0.0, 0.65], "scale": 0.3},
    "g": {"center": [0.0, -0.65], "scale": 0.3},
    "beta": 0.3,
    "window": 8.0,
    "points": 2000,
    "quad_order": 2048,
}
_DEFAULT_Z = {
    "value": ["x1", "x2"],
    "jacobian": [["1", "0"], ["0", "1"]],
}


class ConfigError(ValueError):
    """Any parse or schema problem with a config file."""


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    module: str
    seed: int
    m: int = 2
    coupling: dict = field(default_factory=lambda: {"kind": "vector", "Y": [0.0, 0.0, 1.0]})
    theta: dict = field(default_factory=lambda: {"lam": 0.4})
    instances: int = 100
    dim: int = 6
    epsilons: tuple = (0.2, 0.1, 0.05, 0.02, 0.01)
    grid: dict = field(default_factory=lambda: dict(_DEFAULT_GRID))
    z: dict = field(default_factory=lambda: copy.deepcopy(_DEFAULT_Z))
    fock: dict = field(default_factory=lambda: dict(_DEFAULT_FOCK))
    wedge: dict = field(default_factory=lambda: copy.deepcopy(_DEFAULT_WEDGE))
    tolerances: dict = field(default_factory=dict)


def _merge_defaults(block, defaults, context):
    if block is None:
        return copy.deepcopy(defaults)
    if not isinstance(block, dict):
        raise ConfigError(f"{context} must be a mapping")
    unknown = set(block) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown keys in {context}: {sorted(unknown)}")
    merged = copy.deepcopy(defaults)
    for key, val in block.items():
        if isinstance(defaults.get(key), dict):
            merged[key] = _merge_defaults(val, defaults[key], f"{context}.{key}")
        else:
            merged[key] = val
    return merged


def _parse_scenario(raw, pos):
    if not isinstance(raw, dict):
        raise ConfigError(f"scenario #{pos} must be a mapping")
    unknown = set(raw) - _SCENARIO_KEYS
    if unknown:
        raise ConfigError(f"unknown keys in scenario #{pos}: {sorted(unknown)}")
    for key in ("name", "module"):
        if key not in raw:
            raise ConfigError(f"scenario #{pos} is missing {key!r}")
    if "seed" not in raw:
        raise ConfigError(f"scenario {raw['name']!r} is missing the mandatory seed")
    if raw["module"] not in MODULES:
        raise ConfigError(
            f"scenario {raw['name']!r}: module must be one of {MODULES}"
        )
    if not isinstance(raw["seed"], int):
        raise ConfigError(f"scenario {raw['name']!r}: seed must be an integer")

    kwargs = {
        "name": raw["name"],
        "module": raw["module"],
        "seed": raw["seed"],
        "m": int(raw.get("m", 2)),
        "instances": int(raw.get("instances", 100)),
        "dim": int(raw.get("dim", 6)),
        "grid": _merge_defaults(raw.get("grid"), _DEFAULT_GRID, "grid"),
        "z": _merge_defaults(raw.get("z"), _DEFAULT_Z, "z"),
        "fock": _merge_defaults(raw.get("fock"), _DEFAULT_FOCK, "fock"),
        "wedge": _merge_defaults(raw.get("wedge"), _DEFAULT_WEDGE, "wedge"),
    }
    if "epsilons" in raw:
        kwargs["epsilons"] = tuple(float(e) for e in raw["epsilons"])
    coupling = raw.get("coupling", {"kind": "vector", "Y": [0.0, 0.0, 1.0]})
    if not isinstance(coupling, dict) or set(coupling) != {"kind", "Y"}:
        raise ConfigError(
            f"scenario {raw['name']!r}: coupling needs exactly the keys kind and Y"
        )
    kwargs["coupling"] = coupling
    theta = raw.get("theta", {"lam": 0.4})
    if not isinstance(theta, dict) or not (
        set(theta) <= {"lam", "eta"} or set(theta) == {"matrix"}
    ):
        raise ConfigError(
            f"scenario {raw['name']!r}: theta needs lam (and optional eta) or matrix"
        )
    kwargs["theta"] = theta
    tolerances = raw.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise ConfigError(f"scenario {raw['name']!r}: tolerances must be a mapping")
    kwargs["tolerances"] = {str(k): float(v) for k, v in tolerances.items()}
    return ScenarioConfig(**kwargs)


def load_config(path):
    """Parse and validate a config file into a list of scenarios."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    text = path.read_text()
    try:
        if path.suffix in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        elif path.suffix == ".json":
            data = json.loads(text)
        else:
            raise ConfigError(f"unsupported config extension {path.suffix!r}")
    except (yaml.YAMLError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")
    unknown = set(data) - {"scenarios"}
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    raw_list = data.get("scenarios")
    if not raw_list:
        raise ConfigError("no scenarios")
    if not isinstance(raw_list, list):
        raise ConfigError("scenarios must be a list")

    scenarios = [_parse_scenario(raw, pos) for pos, raw in enumerate(raw_list)]
    names = [s.name for s in scenarios]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise ConfigError(f"duplicate scenario names: {sorted(dupes)}")
    return scenarios
