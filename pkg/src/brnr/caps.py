"""Size caps for the various enumerations and solvers.

Every potentially explosive operation checks one of these before doing
work.  Defaults are sized for desk-scale groups; all of them can be
overridden per job through the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    table_group: int = 4096          # largest group stored as a full table
    closure: int = 10**6             # permutation-closure enumeration bound
    h2_dense_group: int = 24         # largest base group for the dense bar-resolution H^2
    h2_group: int = 256              # largest base group for any H^2 computation
    class_module_unknowns: int = 200_000
    nonabelian_enum: int = 10**7     # candidate tables |G|^#generators
    element_scan: int = 2**16        # exhaustive element scans in quotient modules
    local_tuples: int = 10**4        # rows enumerated in a Brauer-Manin tuple table

    def with_overrides(self, overrides: dict[str, int]) -> "Caps":
        unknown = set(overrides) - set(self.__dataclass_fields__)
        if unknown:
            raise KeyError(f"unknown cap name(s): {sorted(unknown)}")
        return replace(self, **overrides)


DEFAULT_CAPS = Caps()
