"""
Resource caps shared by the exhaustive searches.
"""

from dataclasses import dataclass, fields, replace
from typing import Any, Dict


@dataclass(frozen=True)
class Caps:
    """Upper bounds for every exponential enumeration in the package."""

    matchings: int = 100000
    odd_cycles: int = 10000
    flowers: int = 100000
    mis_vertex_limit: int = 32
    independent_sets: int = 2000000
    odd_cycle_vertex_limit: int = 24
    oracle_vertex_limit: int = 14

    @classmethod
    def from_config(cls, config: Dict[str, Any] = None) -> "Caps":
        """Build caps from the ``caps`` section of a loaded config."""
        section = (config or {}).get('caps', {}) or {}
        known = {f.name for f in fields(cls)}
        values = {key: int(value) for key, value in section.items() if key in known}
        return cls(**values)

    def override(self, **values: Any) -> "Caps":
        """Return a copy with the non-None values replaced."""
        return replace(self, **{k: int(v) for k, v in values.items() if v is not None})


DEFAULT_CAPS = Caps()
