"""qu5it: SO(5) Agassi-model dynamics on arrays of five-level qudits."""

__version__ = "0.4.0"
