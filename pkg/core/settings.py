import json
import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path

# Directory paths
project_dir = Path(__file__).resolve().parent.parent
config_dir = project_dir / 'config'


@dataclass(frozen=True)
class Limits:
    """Resource caps shared by every computation on a theory."""

    max_order: int = 250_000
    max_lattice_nodes: int = 100_000
    max_candidates: int = 100_000
    object_cap: int = 64
    exhaustive_limit: int = 1_000_000
    sample_size: int = 10_000
    seed: int = 0

    def override(self, values):
        """Return a copy with the known keys of ``values`` replaced.

        Args:
            values (dict | None): mapping of limit names to integers; unknown keys are rejected.

        Returns:
            Limits: the updated limits.
        """
        if not values:
            return self
        known = {f.name for f in fields(self)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ValueError(f"Unknown limit(s): {', '.join(unknown)}")
        for key, value in values.items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError(f"Limit {key} must be a non-negative integer, got {value!r}")
        return replace(self, **values)


def load_config(config_file=None):
    """Load the engine configuration and return its limits section"""
    config_file = Path(config_file) if config_file else config_dir / 'engine_config.json'
    with open(config_file, 'r', encoding='utf-8') as f:
        config = json.load(f)

    limits = config.get('limits')
    if limits is None:
        raise ValueError(f"limits section not found in {config_file.name}")
    return limits


def load_limits(config_file=None):
    """Build ``Limits`` from the configuration file, falling back to the built-in defaults"""
    try:
        return Limits().override(load_config(config_file))
    except FileNotFoundError:
        logging.warning(f"No engine configuration at {config_file or config_dir / 'engine_config.json'}, using defaults")
        return Limits()


LIMITS = load_limits()
