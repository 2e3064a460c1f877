"""Built-in detectors, one module per vulnerability class."""

from . import (approve_race, array_length, hardcoded_gas, locked_ether,
               unchecked_send)

BUILTIN_DETECTORS = (
    array_length.make,
    hardcoded_gas.make,
    approve_race.make,
    locked_ether.make,
    unchecked_send.make,
)

__all__ = ["BUILTIN_DETECTORS"]
