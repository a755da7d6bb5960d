"""Named real-valued parameters."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

from .errors import SymbolicDiagram


@dataclass(frozen=True, order=True)
class Symbol:
    name: str

    def __repr__(self):
        return self.name


def is_symbolic(p) -> bool:
    return isinstance(p, Symbol)


def resolve(p, bindings):
    """Replace ``p`` by its binding if it is a bound symbol."""
    if isinstance(p, Symbol) and p in bindings:
        return float(bindings[p])
    return p


def numeric(p) -> complex | float:
    if isinstance(p, Symbol):
        raise SymbolicDiagram(f"unbound symbol {p.name}")
    if not isinstance(p, Number):
        raise TypeError(f"parameter must be a number or Symbol, got {p!r}")
    return p


def normalize_bindings(bindings) -> dict:
    """Accept ``{Symbol: x}``, ``{"name": x}`` or pairs; key by Symbol."""
    if not isinstance(bindings, dict):
        bindings = dict(bindings)
    return {(k if isinstance(k, Symbol) else Symbol(str(k))): v for k, v in bindings.items()}
