"""Config-driven scenario harness: load, run, report."""

from nawarp.harness.config import ConfigError, ScenarioConfig, load_config
from nawarp.harness.runner import run, emit_report

__all__ = ["ConfigError", "ScenarioConfig", "load_config", "run", "emit_report"]
