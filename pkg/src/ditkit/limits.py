"""Size caps for the exhaustive parts of the toolkit.

Everything here exists to keep brute-force enumeration at desk scale.
The algebraic operations themselves are pure and uncapped; the caps are
enforced at the enumeration and search entry points and by the CLI.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Mapping


@dataclass(frozen=True)
class Limits:
    # Largest universe the CLI accepts for relation-level work.
    max_relation_n: int = 12
    # Largest universe for full-lattice enumeration; Bell numbers grow fast.
    max_lattice_n: int = 10
    # Variable cap for truth-table checking.
    max_truth_vars: int = 16
    # Per-universe assignment budget for subset/partition validity search.
    max_search_assignments: int = 10_000
    # switch_partition builds a partition on 2**k elements; cap on k.
    max_switch_bits: int = 10

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{field.name} must be a positive integer, got {value!r}")

    def replaced(self, **overrides: int) -> "Limits":
        return dataclasses.replace(self, **overrides)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int]) -> "Limits":
        known = {field.name for field in dataclasses.fields(cls)}
        unknown = sorted(set(mapping) - known)
        if unknown:
            raise ValueError(f"unknown limit keys: {unknown}")
        return cls(**dict(mapping))


DEFAULT_LIMITS = Limits()
